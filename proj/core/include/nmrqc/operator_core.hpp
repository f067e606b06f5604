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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <utility>

namespace nmrqc {

// Dense complex matrices throughout: the library is capped at 4 spins
// (dim <= 16), so there is nothing to gain from sparse machinery.
using Complex = std::complex<double>;
using Unitary = Eigen::MatrixXcd;

inline constexpr int kMaxSpins = 4;

// Throws std::invalid_argument unless 1 <= n <= kMaxSpins.
void check_spin_count(int n);

enum class Axis { X, Y, Z };

// Pauli matrix for the given axis (sigma, not sigma/2).
Eigen::Matrix2cd pauli(Axis axis);

// Kronecker product, with A's index most significant.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Embed a single-spin operator at position `spin` of an n-spin register.
// Spin 0 is the most significant bit of the basis-state index.
Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd& op, int spin, int n);

// A single-spin angular momentum operator I_axis = sigma_axis / 2 embedded
// in an n-spin register.
struct SpinOperator {
  int spin = 0;
  Axis axis = Axis::Z;
  int n = 1;

  Eigen::MatrixXcd matrix() const;
};

// exp(-i * angle * (axis . (Ix, Iy, Iz))) on the given spin, identity on the
// rest.  The rotation sense is exp(-i theta G) with G = (axis . sigma)/2;
// a pi rotation about +x maps to [[0,-i],[-i,0]].
//
// `axis` must be a unit vector to 1e-12.
Unitary rotation_unitary(int spin, const Eigen::Vector3d& axis, double angle,
                         int n);

// exp(-i * angle * 2 Iz Sz) on the given pair of spins: a diagonal matrix
// with entries exp(-i angle/2) where the two bits agree and exp(+i angle/2)
// where they differ.
Unitary coupling_unitary(std::pair<int, int> pair, double angle, int n);

// Result of a global-phase-insensitive comparison.  `phase` is the phi such
// that U ~ exp(i phi) V, extracted at the largest-magnitude entry of V (an
// entry of a unitary is at least dim^{-1/2} in magnitude, so the division is
// safe).  `max_deviation` is max_ij |U - exp(i phi) V| for that phi, and
// `equivalent` is max_deviation <= tol.  `phase` is absent when the matrices
// are not equivalent.
struct PhaseMatch {
  bool equivalent = false;
  std::optional<double> phase;
  double max_deviation = 0.0;
};

PhaseMatch equal_up_to_global_phase(const Unitary& u, const Unitary& v,
                                    double tol);

// |tr(U^dag V)| / dim, in [0, 1]; equals 1 exactly when U and V agree up to
// a global phase.
double fidelity(const Unitary& u, const Unitary& v);

}  // namespace nmrqc
