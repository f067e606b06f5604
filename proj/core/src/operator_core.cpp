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

#include "nmrqc/operator_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nmrqc {

namespace {
constexpr Complex kI{0.0, 1.0};
}  // namespace

void check_spin_count(int n) {
  if (n < 1 || n > kMaxSpins) {
    throw std::invalid_argument("spin count must be in [1, " +
                                std::to_string(kMaxSpins) + "], got " +
                                std::to_string(n));
  }
}

Eigen::Matrix2cd pauli(Axis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, -kI, kI, 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd& op, int spin, int n) {
  check_spin_count(n);
  if (spin < 0 || spin >= n) {
    throw std::invalid_argument("spin index " + std::to_string(spin) +
                                " out of range for " + std::to_string(n) +
                                " spins");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    out = (k == spin) ? kron(out, op)
                      : kron(out, Eigen::MatrixXcd::Identity(2, 2));
  }
  return out;
}

Eigen::MatrixXcd SpinOperator::matrix() const {
  return embed_single(0.5 * pauli(axis), spin, n);
}

Unitary rotation_unitary(int spin, const Eigen::Vector3d& axis, double angle,
                         int n) {
  const double norm = axis.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("rotation axis must be a unit vector");
  }
  // exp(-i theta (axis.sigma)/2) = cos(theta/2) I - i sin(theta/2) axis.sigma
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Eigen::Matrix2cd u =
      c * Eigen::Matrix2cd::Identity() -
      kI * s *
          (axis.x() * pauli(Axis::X) + axis.y() * pauli(Axis::Y) +
           axis.z() * pauli(Axis::Z));
  return embed_single(u, spin, n);
}

Unitary coupling_unitary(std::pair<int, int> pair, double angle, int n) {
  check_spin_count(n);
  const auto [a, b] = pair;
  if (a == b) {
    throw std::invalid_argument("coupling requires two distinct spins");
  }
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw std::invalid_argument("coupling spin index out of range");
  }
  const int dim = 1 << n;
  Unitary u = Unitary::Zero(dim, dim);
  const Complex same = std::exp(-kI * (angle / 2.0));
  const Complex diff = std::exp(kI * (angle / 2.0));
  for (int j = 0; j < dim; ++j) {
    const int bit_a = (j >> (n - 1 - a)) & 1;
    const int bit_b = (j >> (n - 1 - b)) & 1;
    u(j, j) = (bit_a == bit_b) ? same : diff;
  }
  return u;
}

PhaseMatch equal_up_to_global_phase(const Unitary& u, const Unitary& v,
                                    double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("dimension mismatch in phase comparison");
  }
  // Extract the candidate phase at the largest-magnitude entry of v
  // (row-major, first strict maximum), where the division is best
  // conditioned.
  Eigen::Index r = 0, c = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const double m = std::abs(v(i, j));
      if (m > best) {
        best = m;
        r = i;
        c = j;
      }
    }
  }
  PhaseMatch out;
  const double phi = std::arg(u(r, c) * std::conj(v(r, c)));
  out.max_deviation =
      (u - std::exp(kI * phi) * v).cwiseAbs().maxCoeff();
  out.equivalent = out.max_deviation <= tol;
  if (out.equivalent) out.phase = phi;
  return out;
}

double fidelity(const Unitary& u, const Unitary& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("dimension mismatch in fidelity");
  }
  const double f =
      std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
  return std::min(f, 1.0);  // clip roundoff above 1
}

}  // namespace nmrqc
