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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmrqc/operator_core.hpp"

namespace nmrqc {

// One factor of a product operator: identity or a Cartesian spin component.
enum class Factor : std::uint8_t { E, X, Y, Z };

// A product-operator basis element over n spins.  The realized matrix is
//
//   B = 2^{k-1} * (f_0 (x) f_1 (x) ... (x) f_{n-1})
//
// where f_i is identity for E and sigma/2 otherwise, and k is the number of
// non-E factors.  The formula covers k = 0 too: the identity term is E/2 for
// every n.  This normalization makes tr(B B') = 2^{n-2} delta_{BB'} uniform
// across all terms, so decomposition is a single scaled trace.  The price is
// that for n > 2 the coefficient of the identity term is not tr(rho);
// recompose() is the ground truth.
struct ProductOperatorTerm {
  std::vector<Factor> factors;  // index = spin

  int spins() const { return static_cast<int>(factors.size()); }

  // Number of non-E factors.
  int weight() const;

  // True when every factor is E or Z.
  bool z_only() const;

  // Display name: the identity term is "½E"; otherwise the 2^{k-1} prefix
  // followed by letter/axis pairs such as "Iz", "2IzSz", "4IzRzSz".  Spins
  // are lettered I, S, R, T by ascending index and the pairs are listed
  // alphabetically by letter.
  std::string name() const;

  Eigen::MatrixXcd matrix() const;

  auto operator<=>(const ProductOperatorTerm&) const = default;
};

// All 4^n basis terms in a deterministic order: lexicographic in
// (E, x, y, z) per spin, spin 0 most significant.
std::vector<ProductOperatorTerm> basis_terms(int n);

// A Hermitian matrix expressed in the product-operator basis.  Coefficients
// are stored for every basis term, aligned with basis_terms(n).
struct Decomposition {
  int n = 0;
  std::vector<double> coefficients;

  // Coefficient looked up by canonical term name; throws std::out_of_range
  // for a name that is not a basis term of this n.
  double coefficient(std::string_view name) const;

  // Terms with |coefficient| > tol, in basis order.
  std::vector<std::pair<ProductOperatorTerm, double>> nonzero(
      double tol = 1e-12) const;
};

// Coefficients c_t = tr(B_t rho) / 2^{n-2}.  `rho` must be Hermitian to
// 1e-12 and of dimension 2^n.
Decomposition decompose(const Eigen::MatrixXcd& rho, int n);

// Sum of c_t B_t.
Eigen::MatrixXcd recompose(const Decomposition& d);

// Distribution of the traceless part of recompose(d) over coherence orders.
// The order of a matrix element <a|rho|b> is popcount(b) - popcount(a); the
// weight at order p is the squared Frobenius norm of the projection of the
// traceless part onto elements of that order.  Weights sum to the squared
// norm of the traceless part; populations sit at order 0.  Orders with zero
// weight are omitted.
std::map<int, double> coherence_orders(const Decomposition& d);

// Write a diagonal unitary as U = exp(-i sum_t theta_t B_t) with B_t ranging
// over the z/E-only basis terms.  Every diagonal phase is taken in (-pi, pi]
// (U_jj = exp(-i phi_j)), which makes the angles unique.  The result lists
// all 2^n z/E-only terms in basis order, zeros included.
//
// Throws std::invalid_argument unless U is diagonal with unit-modulus
// entries (to 1e-12).
std::vector<std::pair<ProductOperatorTerm, double>> decompose_diagonal_phase(
    const Unitary& u, int n);

}  // namespace nmrqc
