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

#include "nmrqc/verifier.hpp"

#include <cmath>
#include <stdexcept>

namespace nmrqc {

VerificationReport compare_unitaries(const std::string& id, const Unitary& u,
                                     const Unitary& ideal, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  VerificationReport report;
  report.id = id;
  report.fidelity = fidelity(u, ideal);
  const PhaseMatch match = equal_up_to_global_phase(u, ideal, tol);
  report.equivalent = match.equivalent;
  report.global_phase = match.phase;
  report.max_deviation = match.max_deviation;
  // The max-entry and fidelity tests must agree for unitary inputs; a
  // disagreement means the comparison itself is broken.
  const bool fidelity_agrees = (report.fidelity >= 1.0 - tol);
  if (fidelity_agrees != report.equivalent) {
    throw std::logic_error(
        "internal error: fidelity and max-deviation tests disagree for '" +
        id + "'");
  }
  return report;
}

VerificationReport verify_gate(const Gate& g, int n, const LowerOptions& opt,
                               double tol) {
  const PulseSequence seq = lower_gate(g, n, opt);
  return compare_unitaries(gate_to_string(g), sequence_unitary(seq),
                           gate_matrix(g, n), tol);
}

VerificationReport verify_circuit(const Circuit& c, const LowerOptions& opt,
                                  double tol) {
  const PulseSequence seq = compile_circuit(c, opt);
  return compare_unitaries("circuit", sequence_unitary(seq),
                           circuit_matrix(c), tol);
}

VerificationReport verify_against(const Circuit& c, const PulseSequence& seq,
                                  double tol) {
  if (c.n != seq.n) {
    throw std::invalid_argument(
        "circuit and pulse sequence spin counts differ");
  }
  return compare_unitaries("sequence vs circuit", sequence_unitary(seq),
                           circuit_matrix(c), tol);
}

bool approximate_toffoli_pattern(const Unitary& u, double tol) {
  if (u.rows() != 8 || u.cols() != 8) {
    throw std::invalid_argument("pattern test requires an 8x8 matrix");
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const bool on_support =
          (i == j && i < 6) || (i == 6 && j == 7) || (i == 7 && j == 6);
      const double magnitude = std::abs(u(i, j));
      if (on_support ? magnitude <= tol : magnitude > tol) return false;
    }
  }
  return true;
}

}  // namespace nmrqc
