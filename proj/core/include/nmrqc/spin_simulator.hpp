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

#pragma once

#include <string_view>

#include "nmrqc/operator_core.hpp"
#include "nmrqc/pulse_ir.hpp"

namespace nmrqc {

// An NMR state: either a trace-1 density matrix (pure/pseudo-pure) or a
// traceless thermal deviation.  Observables are unchanged by adding
// multiples of the identity, so both kinds evolve identically; the flag
// only records which normalization the matrix carries.
struct DeviationMatrix {
  Eigen::MatrixXcd rho;
  int n = 0;
  bool normalized = false;  // true: trace 1; false: traceless deviation

  // Throws std::invalid_argument unless rho is Hermitian (1e-12), has
  // dimension 2^n, and its trace matches the flag (1e-12).
  void validate() const;
};

// A normalized pure state |psi>; mostly a convenience for building
// projectors.
struct PureStateVector {
  Eigen::VectorXcd amplitudes;

  DeviationMatrix projector() const;  // |psi><psi|, trace 1
};

// The high-temperature thermal deviation sum_k Iz(k); diag(1, 0, 0, -1) for
// n = 2.  Traceless.
DeviationMatrix thermal_state(int n);

// |bits><bits| for a string over {0,1}; trace 1.
DeviationMatrix pure_state(std::string_view bits);

// Pseudo-pure preparation by temporal averaging, n = 2 only: the average of
// three experiments whose thermal populations on {|01>,|10>,|11>} are
// cyclically permuted (explicit permutation matrices, not pulse networks).
// Equals (4 |00><00| - E)/3 = diag(1, -1/3, -1/3, -1/3): traceless, with
// traceless part proportional to that of |00><00|.
DeviationMatrix pseudo_pure_temporal(int n);

// Evolve through the sequence: rho -> U rho U^dag per unitary event; a Crush
// event zeroes every matrix element whose coherence order is outside the
// allowed set.  Crush sets must contain 0 (trace preservation) and be
// symmetric about 0 (Hermiticity preservation); violations throw
// std::invalid_argument.
DeviationMatrix apply_sequence(const DeviationMatrix& rho,
                               const PulseSequence& seq);

struct Magnetization {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// (tr(rho Ix), tr(rho Iy), tr(rho Iz)) for the given spin.
Magnetization magnetization(const DeviationMatrix& rho, int spin);

}  // namespace nmrqc
