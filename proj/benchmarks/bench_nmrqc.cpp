// Copyright 2026 The nmrqc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "nmrqc/gate_compiler.hpp"
#include "nmrqc/product_operator.hpp"
#include "nmrqc/pulse_ir.hpp"
#include "nmrqc/spin_simulator.hpp"
#include "nmrqc/verifier.hpp"

namespace {

using namespace nmrqc;

Circuit toffoli_circuit() {
  Circuit c;
  c.n = 3;
  c.gates.push_back({GateKind::Toffoli, {0, 1, 2}, {}});
  return c;
}

void BM_CompileToffoli(benchmark::State& state) {
  const Circuit c = toffoli_circuit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_circuit(c));
  }
}
BENCHMARK(BM_CompileToffoli);

void BM_ToffoliSequenceUnitary(benchmark::State& state) {
  const PulseSequence seq = compile_circuit(toffoli_circuit());
  for (auto _ : state) {
    benchmark::DoNotOptimize(sequence_unitary(seq));
  }
}
BENCHMARK(BM_ToffoliSequenceUnitary);

void BM_VerifyToffoli(benchmark::State& state) {
  const Gate g{GateKind::Toffoli, {0, 1, 2}, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_gate(g, 3, {}));
  }
}
BENCHMARK(BM_VerifyToffoli);

void BM_Decompose3Spins(benchmark::State& state) {
  const Eigen::MatrixXcd rho = thermal_state(3).rho;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(rho, 3));
  }
}
BENCHMARK(BM_Decompose3Spins);

void BM_SerializeParseRoundTrip(benchmark::State& state) {
  const PulseSequence seq = compile_circuit(toffoli_circuit());
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_pulse_sequence(serialize(seq)));
  }
}
BENCHMARK(BM_SerializeParseRoundTrip);

}  // namespace

BENCHMARK_MAIN();
