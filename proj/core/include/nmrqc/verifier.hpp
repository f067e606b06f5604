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

#include <optional>
#include <string>

#include "nmrqc/gate_compiler.hpp"
#include "nmrqc/operator_core.hpp"
#include "nmrqc/pulse_ir.hpp"

namespace nmrqc {

inline constexpr double kDefaultVerifyTol = 1e-10;

struct VerificationReport {
  std::string id;          // gate or circuit label
  double fidelity = 0.0;   // |tr(U^dag V)| / dim
  bool equivalent = false;
  std::optional<double> global_phase;  // radians; absent when not equivalent
  double max_deviation = 0.0;          // after phase removal
};

// Compare a synthesized unitary against an ideal one.  `equivalent` is
// decided by the max-entry test; the fidelity test must agree (they do for
// unitary inputs), and any disagreement is flagged as an internal error
// (std::logic_error).
VerificationReport compare_unitaries(const std::string& id, const Unitary& u,
                                     const Unitary& ideal,
                                     double tol = kDefaultVerifyTol);

// Lower one gate and verify it against its ideal matrix.
VerificationReport verify_gate(const Gate& g, int n, const LowerOptions& opt,
                               double tol = kDefaultVerifyTol);

// Compile the whole circuit and verify it against the product of its gate
// matrices.
VerificationReport verify_circuit(const Circuit& c, const LowerOptions& opt,
                                  double tol = kDefaultVerifyTol);

// Verify an externally supplied pulse sequence against a circuit's ideal
// matrix.  This is how a hand-written (or mis-ordered) sequence is checked:
// a sequence that leaves a conditional phase, such as diag-block(I, -X) in
// place of a CNOT, is not equivalent and must be rejected.
VerificationReport verify_against(const Circuit& c, const PulseSequence& seq,
                                  double tol = kDefaultVerifyTol);

// True iff |U_ij| > tol exactly on the support of the Toffoli permutation
// (diagonal on the first six states plus the swap of the last two) and
// <= tol elsewhere.  Moduli need not be 1 or equal: this recognizes
// approximate Toffoli-like gates by shape alone.  U must be 8x8.
bool approximate_toffoli_pattern(const Unitary& u, double tol);

}  // namespace nmrqc
