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

#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <numbers>
#include <random>

#include "nmrqc/operator_core.hpp"
#include "oracles.hpp"

namespace nmrqc {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Eigen::Matrix2cd matrix2(Complex a, Complex b, Complex c, Complex d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return m;
}

TEST_CASE("pauli matrices", "[operator_core]") {
  CHECK(pauli(Axis::X) == matrix2(0, 1, 1, 0));
  CHECK(pauli(Axis::Y) == matrix2(0, -kI, kI, 0));
  CHECK(pauli(Axis::Z) == matrix2(1, 0, 0, -1));
}

TEST_CASE("kron ordering and embedding", "[operator_core]") {
  // A's index is most significant: (A (x) B)_{(a1 b1),(a2 b2)}.
  Eigen::MatrixXcd k = kron(pauli(Axis::Z), pauli(Axis::X));
  CHECK(k(0, 1) == Complex(1));
  CHECK(k(2, 3) == Complex(-1));

  // Spin 0 is the most significant bit.
  Eigen::MatrixXcd left = embed_single(pauli(Axis::X), 0, 2);
  CHECK(left == kron(pauli(Axis::X), Eigen::Matrix2cd::Identity()));
  Eigen::MatrixXcd right = embed_single(pauli(Axis::X), 1, 2);
  CHECK(right == kron(Eigen::Matrix2cd::Identity(), pauli(Axis::X)));
}

TEST_CASE("spin operator matrices", "[operator_core]") {
  SpinOperator iz{0, Axis::Z, 2};
  Eigen::MatrixXcd m = iz.matrix();
  CHECK(m.isApprox(0.5 * embed_single(pauli(Axis::Z), 0, 2), 1e-15));
  CHECK(std::abs(m.trace()) == 0.0);
  CHECK(m.adjoint() == m);
}

TEST_CASE("pinned rotation matrices", "[operator_core]") {
  SECTION("180 about +x is [[0,-i],[-i,0]]") {
    Unitary u = rotation_unitary(0, Eigen::Vector3d::UnitX(), kPi, 1);
    CHECK((u - matrix2(0, -kI, -kI, 0)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("180 about +y is [[0,-1],[1,0]]") {
    Unitary u = rotation_unitary(0, Eigen::Vector3d::UnitY(), kPi, 1);
    CHECK((u - matrix2(0, -1, 1, 0)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("180 about the tilted (x+z)/sqrt2 axis") {
    const double s = 1.0 / std::sqrt(2.0);
    Unitary u =
        rotation_unitary(0, Eigen::Vector3d(s, 0.0, s).normalized(), kPi, 1);
    CHECK((u - (-kI * s) * matrix2(1, 1, 1, -1)).cwiseAbs().maxCoeff() <
          1e-15);
  }
  SECTION("zero angle is the identity") {
    Unitary u = rotation_unitary(0, Eigen::Vector3d::UnitZ(), 0.0, 1);
    CHECK(u == Eigen::MatrixXcd::Identity(2, 2));
  }
}

TEST_CASE("rotation matches the spectral exponential", "[operator_core]") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> angle(-8.0, 8.0);
  for (int n = 1; n <= 4; ++n) {
    std::uniform_int_distribution<int> spin(0, n - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const int s = spin(rng);
      const Eigen::Vector3d axis = oracle::random_axis(rng);
      const double theta = angle(rng);
      Eigen::MatrixXcd gen = axis.x() * SpinOperator{s, Axis::X, n}.matrix() +
                             axis.y() * SpinOperator{s, Axis::Y, n}.matrix() +
                             axis.z() * SpinOperator{s, Axis::Z, n}.matrix();
      Unitary expected = oracle::exp_minus_i(gen, theta);
      Unitary got = rotation_unitary(s, axis, theta, n);
      CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("rotation group properties", "[operator_core]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(-8.0, 8.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Vector3d axis = oracle::random_axis(rng);
    const double theta = angle(rng);
    Unitary u = rotation_unitary(0, axis, theta, 2);

    // Unitarity and inverse.
    CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    Unitary v = rotation_unitary(0, axis, -theta, 2);
    CHECK((u * v - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-14);

    // Spin-1/2 periodicity: 4pi returns, 2pi flips the sign.
    Unitary w = rotation_unitary(0, axis, theta + 4.0 * kPi, 2);
    CHECK((w - u).cwiseAbs().maxCoeff() < 1e-13);
    Unitary f = rotation_unitary(0, axis, theta + 2.0 * kPi, 2);
    CHECK((f + u).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("coupling unitary", "[operator_core]") {
  SECTION("pinned -90 degree evolution") {
    Unitary u = coupling_unitary({0, 1}, -kPi / 2.0, 2);
    const Complex plus = std::exp(kI * kPi / 4.0);
    const Complex minus = std::exp(-kI * kPi / 4.0);
    Eigen::Vector4cd expected(plus, minus, minus, plus);
    CHECK((u - Eigen::MatrixXcd(expected.asDiagonal())).cwiseAbs().maxCoeff() <
          1e-15);
  }
  SECTION("zero angle is the identity; 2pi is -identity") {
    CHECK(coupling_unitary({0, 1}, 0.0, 2) ==
          Eigen::MatrixXcd::Identity(4, 4));
    Unitary full = coupling_unitary({0, 1}, 2.0 * kPi, 2);
    CHECK((full + Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-15);
  }
  SECTION("matches the spectral exponential of 2 Iz Sz") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> angle(-8.0, 8.0);
    for (int n = 2; n <= 4; ++n) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          const double theta = angle(rng);
          Eigen::MatrixXcd gen = 2.0 *
                                 SpinOperator{a, Axis::Z, n}.matrix() *
                                 SpinOperator{b, Axis::Z, n}.matrix();
          Unitary expected = oracle::exp_minus_i(gen, theta);
          Unitary got = coupling_unitary({a, b}, theta, n);
          CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-13);
        }
      }
    }
  }
  SECTION("commutes with z rotations on its spins") {
    Unitary j = coupling_unitary({0, 1}, 1.1, 2);
    Unitary z = rotation_unitary(1, Eigen::Vector3d::UnitZ(), 0.7, 2);
    CHECK((j * z - z * j).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("pair order does not matter") {
    CHECK(coupling_unitary({0, 2}, 0.9, 3) == coupling_unitary({2, 0}, 0.9, 3));
  }
}

TEST_CASE("argument validation", "[operator_core]") {
  CHECK_THROWS_AS(check_spin_count(0), std::invalid_argument);
  CHECK_THROWS_AS(check_spin_count(5), std::invalid_argument);
  CHECK_THROWS_AS(rotation_unitary(0, Eigen::Vector3d(1, 1, 0), kPi, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(rotation_unitary(2, Eigen::Vector3d::UnitX(), kPi, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(coupling_unitary({1, 1}, kPi, 2), std::invalid_argument);
  CHECK_THROWS_AS(coupling_unitary({0, 2}, kPi, 2), std::invalid_argument);
}

TEST_CASE("equal_up_to_global_phase", "[operator_core]") {
  Unitary not_gate = matrix2(0, 1, 1, 0);
  Unitary pulse = rotation_unitary(0, Eigen::Vector3d::UnitX(), kPi, 1);

  SECTION("a 180 x pulse is a NOT with phase -pi/2") {
    PhaseMatch m = equal_up_to_global_phase(pulse, not_gate, 1e-10);
    REQUIRE(m.equivalent);
    REQUIRE(m.phase.has_value());
    CHECK(std::abs(*m.phase + kPi / 2.0) < 1e-12);
    CHECK(m.max_deviation < 1e-15);
  }
  SECTION("identical matrices have zero phase and zero deviation") {
    PhaseMatch m = equal_up_to_global_phase(not_gate, not_gate, 1e-10);
    REQUIRE(m.equivalent);
    CHECK(*m.phase == 0.0);
    CHECK(m.max_deviation == 0.0);
  }
  SECTION("explicit phase multiples are recovered") {
    for (double phi : {0.3, -2.5, 3.0, kPi / 2.0}) {
      Unitary v = std::exp(kI * phi) * not_gate;
      PhaseMatch m = equal_up_to_global_phase(v, not_gate, 1e-10);
      REQUIRE(m.equivalent);
      CHECK(std::abs(*m.phase - phi) < 1e-12);
    }
  }
  SECTION("a 180 y pulse is not a NOT up to global phase") {
    Unitary ypulse = rotation_unitary(0, Eigen::Vector3d::UnitY(), kPi, 1);
    PhaseMatch m = equal_up_to_global_phase(ypulse, not_gate, 1e-10);
    CHECK_FALSE(m.equivalent);
    CHECK_FALSE(m.phase.has_value());
    CHECK(m.max_deviation > 1.0);
  }
  SECTION("dimension mismatch throws") {
    CHECK_THROWS_AS(
        equal_up_to_global_phase(not_gate, Eigen::MatrixXcd::Identity(4, 4),
                                 1e-10),
        std::invalid_argument);
  }
}

TEST_CASE("fidelity", "[operator_core]") {
  Unitary not_gate = matrix2(0, 1, 1, 0);
  Unitary pulse = rotation_unitary(0, Eigen::Vector3d::UnitX(), kPi, 1);

  CHECK(fidelity(not_gate, not_gate) == 1.0);
  CHECK(fidelity(pulse, not_gate) == Catch::Approx(1.0).margin(1e-15));
  CHECK(fidelity(Eigen::MatrixXcd::Identity(2, 2), not_gate) == 0.0);

  // Phase-insensitive by construction.
  Unitary v = std::exp(kI * 1.234) * not_gate;
  CHECK(fidelity(v, not_gate) == Catch::Approx(1.0).margin(1e-15));

  // Partial overlap: |tr(I . Rz(theta))|/2 = |cos(theta/2)|.
  Unitary rz = rotation_unitary(0, Eigen::Vector3d::UnitZ(), 1.0, 1);
  CHECK(fidelity(Eigen::MatrixXcd::Identity(2, 2), rz) ==
        Catch::Approx(std::cos(0.5)).margin(1e-14));
}

}  // namespace
}  // namespace nmrqc
