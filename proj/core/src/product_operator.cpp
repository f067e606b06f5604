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

#include "nmrqc/product_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmrqc {

namespace {

constexpr Complex kI{0.0, 1.0};

// Spin letters by ascending index.
constexpr char kSpinLetters[] = {'I', 'S', 'R', 'T'};

char axis_char(Factor f) {
  switch (f) {
    case Factor::X:
      return 'x';
    case Factor::Y:
      return 'y';
    case Factor::Z:
      return 'z';
    case Factor::E:
      break;
  }
  throw std::logic_error("axis_char on identity factor");
}

void check_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols() ||
      (m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
}

}  // namespace

int ProductOperatorTerm::weight() const {
  return static_cast<int>(
      std::count_if(factors.begin(), factors.end(),
                    [](Factor f) { return f != Factor::E; }));
}

bool ProductOperatorTerm::z_only() const {
  return std::all_of(factors.begin(), factors.end(), [](Factor f) {
    return f == Factor::E || f == Factor::Z;
  });
}

std::string ProductOperatorTerm::name() const {
  const int k = weight();
  if (k == 0) return "½E";  // "½E"
  std::vector<std::string> parts;
  for (int s = 0; s < spins(); ++s) {
    if (factors[s] == Factor::E) continue;
    parts.push_back(std::string(1, kSpinLetters[s]) +
                    axis_char(factors[s]));
  }
  // Listed alphabetically by spin letter (I < R < S < T), the conventional
  // print order.
  std::sort(parts.begin(), parts.end());
  std::string out = k >= 2 ? std::to_string(1 << (k - 1)) : "";
  for (const auto& p : parts) out += p;
  return out;
}

Eigen::MatrixXcd ProductOperatorTerm::matrix() const {
  const int n = spins();
  check_spin_count(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (Factor f : factors) {
    m = (f == Factor::E)
            ? kron(m, Eigen::MatrixXcd::Identity(2, 2))
            : kron(m, 0.5 * pauli(f == Factor::X   ? Axis::X
                                  : f == Factor::Y ? Axis::Y
                                                   : Axis::Z));
  }
  // 2^{k-1} for weight k, which is 1/2 at k = 0: the identity term is E/2.
  return std::ldexp(1.0, weight() - 1) * m;
}

std::vector<ProductOperatorTerm> basis_terms(int n) {
  check_spin_count(n);
  const int count = 1 << (2 * n);
  std::vector<ProductOperatorTerm> terms;
  terms.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    ProductOperatorTerm t;
    t.factors.resize(n);
    for (int s = 0; s < n; ++s) {
      t.factors[s] = static_cast<Factor>((idx >> (2 * (n - 1 - s))) & 3);
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

double Decomposition::coefficient(std::string_view name) const {
  const auto terms = basis_terms(n);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].name() == name) return coefficients[i];
  }
  throw std::out_of_range("no basis term named '" + std::string(name) +
                          "' for " + std::to_string(n) + " spins");
}

std::vector<std::pair<ProductOperatorTerm, double>> Decomposition::nonzero(
    double tol) const {
  std::vector<std::pair<ProductOperatorTerm, double>> out;
  const auto terms = basis_terms(n);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (std::abs(coefficients[i]) > tol) {
      out.emplace_back(terms[i], coefficients[i]);
    }
  }
  return out;
}

Decomposition decompose(const Eigen::MatrixXcd& rho, int n) {
  check_spin_count(n);
  if (rho.rows() != (1 << n) || rho.cols() != (1 << n)) {
    throw std::invalid_argument("matrix dimension does not match spin count");
  }
  check_hermitian(rho, 1e-12);
  Decomposition d;
  d.n = n;
  // tr(B^2) = 2^{n-2} uniformly, so every coefficient is a single scaled
  // trace.
  const double inv_norm = std::ldexp(1.0, 2 - n);
  for (const auto& t : basis_terms(n)) {
    d.coefficients.push_back(
        (t.matrix() * rho).trace().real() * inv_norm);
  }
  return d;
}

Eigen::MatrixXcd recompose(const Decomposition& d) {
  check_spin_count(d.n);
  const auto terms = basis_terms(d.n);
  if (terms.size() != d.coefficients.size()) {
    throw std::invalid_argument(
        "coefficient count does not match basis size");
  }
  const int dim = 1 << d.n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (d.coefficients[i] != 0.0) {
      out += d.coefficients[i] * terms[i].matrix();
    }
  }
  return out;
}

std::map<int, double> coherence_orders(const Decomposition& d) {
  const Eigen::MatrixXcd m = recompose(d);
  const int dim = static_cast<int>(m.rows());
  // Distribution of the traceless part: multiples of the identity carry no
  // coherence information.
  const Eigen::MatrixXcd m0 =
      m - (m.trace() / static_cast<double>(dim)) *
              Eigen::MatrixXcd::Identity(dim, dim);
  std::map<int, double> weights;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const double w = std::norm(m0(a, b));
      if (w == 0.0) continue;
      const int p = std::popcount(static_cast<unsigned>(b)) -
                    std::popcount(static_cast<unsigned>(a));
      weights[p] += w;
    }
  }
  std::erase_if(weights, [](const auto& kv) { return kv.second <= 1e-24; });
  return weights;
}

std::vector<std::pair<ProductOperatorTerm, double>> decompose_diagonal_phase(
    const Unitary& u, int n) {
  check_spin_count(n);
  const int dim = 1 << n;
  if (u.rows() != dim || u.cols() != dim) {
    throw std::invalid_argument("matrix dimension does not match spin count");
  }
  Eigen::VectorXd phi(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i != j && std::abs(u(i, j)) > 1e-12) {
        throw std::invalid_argument("matrix is not diagonal");
      }
    }
    if (std::abs(std::abs(u(i, i)) - 1.0) > 1e-12) {
      throw std::invalid_argument("diagonal entries must have unit modulus");
    }
    // U_jj = exp(-i phi_j) with phi_j in (-pi, pi].
    double p = -std::arg(u(i, i));
    if (p == -std::numbers::pi) p = std::numbers::pi;
    phi(i) = p;
  }
  std::vector<std::pair<ProductOperatorTerm, double>> out;
  const double inv_norm = std::ldexp(1.0, 2 - n);
  for (const auto& t : basis_terms(n)) {
    if (!t.z_only()) continue;
    const Eigen::MatrixXcd b = t.matrix();
    double theta = 0.0;
    for (int i = 0; i < dim; ++i) theta += phi(i) * b(i, i).real();
    out.emplace_back(t, theta * inv_norm);
  }
  return out;
}

}  // namespace nmrqc
