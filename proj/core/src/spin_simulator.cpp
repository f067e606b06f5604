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

#include "nmrqc/spin_simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nmrqc {

void DeviationMatrix::validate() const {
  check_spin_count(n);
  const int dim = 1 << n;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("state dimension does not match spin count");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("state must be Hermitian");
  }
  const double trace = rho.trace().real();
  const double expected = normalized ? 1.0 : 0.0;
  if (std::abs(trace - expected) > 1e-12) {
    throw std::invalid_argument(
        normalized ? "normalized state must have trace 1"
                   : "deviation state must be traceless");
  }
}

DeviationMatrix PureStateVector::projector() const {
  const Eigen::Index dim = amplitudes.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("state vector must be normalized");
  }
  DeviationMatrix out;
  out.rho = amplitudes * amplitudes.adjoint();
  out.n = n;
  out.normalized = true;
  return out;
}

DeviationMatrix thermal_state(int n) {
  check_spin_count(n);
  const int dim = 1 << n;
  DeviationMatrix out;
  out.rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < n; ++s) {
    out.rho += SpinOperator{s, Axis::Z, n}.matrix();
  }
  out.n = n;
  out.normalized = false;
  return out;
}

DeviationMatrix pure_state(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  check_spin_count(n);
  int index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') {
      throw std::invalid_argument("state bits must be 0 or 1, got '" +
                                  std::string(bits) + "'");
    }
    index = (index << 1) | (b - '0');
  }
  const int dim = 1 << n;
  DeviationMatrix out;
  out.rho = Eigen::MatrixXcd::Zero(dim, dim);
  out.rho(index, index) = 1.0;
  out.n = n;
  out.normalized = true;
  return out;
}

DeviationMatrix pseudo_pure_temporal(int n) {
  if (n != 2) {
    throw std::invalid_argument(
        "temporal averaging is implemented for 2 spins only");
  }
  // Three experiments: thermal populations with {|01>,|10>,|11>} cyclically
  // permuted.  P1 sends position 1 -> 2 -> 3 -> 1; P2 is its inverse.
  Eigen::Matrix4cd p1 = Eigen::Matrix4cd::Zero();
  p1(0, 0) = 1;
  p1(2, 1) = 1;
  p1(3, 2) = 1;
  p1(1, 3) = 1;
  const Eigen::Matrix4cd p2 = p1.transpose();
  const Eigen::MatrixXcd thermal = thermal_state(2).rho;
  DeviationMatrix out;
  out.rho = (thermal + p1 * thermal * p1.adjoint() +
             p2 * thermal * p2.adjoint()) /
            3.0;
  out.n = 2;
  out.normalized = false;  // average of traceless matrices is traceless
  return out;
}

namespace {

Eigen::MatrixXcd apply_crush(const Eigen::MatrixXcd& rho,
                             const Crush& crush) {
  Eigen::MatrixXcd out = rho;
  const int dim = static_cast<int>(rho.rows());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const int p = std::popcount(static_cast<unsigned>(b)) -
                    std::popcount(static_cast<unsigned>(a));
      if (!crush.orders.count(p)) out(a, b) = 0.0;
    }
  }
  return out;
}

}  // namespace

DeviationMatrix apply_sequence(const DeviationMatrix& rho,
                               const PulseSequence& seq) {
  if (rho.n != seq.n) {
    throw std::invalid_argument("state and sequence spin counts differ");
  }
  DeviationMatrix out = rho;
  for (const auto& event : seq.events) {
    if (const auto* crush = std::get_if<Crush>(&event)) {
      if (!crush->orders.count(0)) {
        throw std::invalid_argument(
            "crush must allow coherence order 0 (trace preservation)");
      }
      for (int p : crush->orders) {
        if (!crush->orders.count(-p)) {
          throw std::invalid_argument(
              "crush order set must be symmetric about 0 (Hermiticity)");
        }
      }
      out.rho = apply_crush(out.rho, *crush);
    } else {
      const Unitary u = event_unitary(event, seq.n);
      out.rho = u * out.rho * u.adjoint();
    }
  }
  return out;
}

Magnetization magnetization(const DeviationMatrix& rho, int spin) {
  if (spin < 0 || spin >= rho.n) {
    throw std::invalid_argument("spin index out of range");
  }
  Magnetization m;
  m.x = (rho.rho * SpinOperator{spin, Axis::X, rho.n}.matrix())
            .trace()
            .real();
  m.y = (rho.rho * SpinOperator{spin, Axis::Y, rho.n}.matrix())
            .trace()
            .real();
  m.z = (rho.rho * SpinOperator{spin, Axis::Z, rho.n}.matrix())
            .trace()
            .real();
  return m;
}

}  // namespace nmrqc
