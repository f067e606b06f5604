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
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nmrqc/product_operator.hpp"
#include "oracles.hpp"

namespace nmrqc {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// tr(A B) without forming the product.
Complex product_trace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.transpose().cwiseProduct(b).sum();
}

TEST_CASE("basis term inventory", "[product_operator]") {
  CHECK(basis_terms(1).size() == 4);
  CHECK(basis_terms(2).size() == 16);
  CHECK(basis_terms(3).size() == 64);
  CHECK(basis_terms(4).size() == 256);

  // Lexicographic in (E, x, y, z) per spin, spin 0 most significant.
  auto one = basis_terms(1);
  CHECK(one[0].name() == "½E");
  CHECK(one[1].name() == "Ix");
  CHECK(one[2].name() == "Iy");
  CHECK(one[3].name() == "Iz");

  auto two = basis_terms(2);
  CHECK(two[0].name() == "½E");
  CHECK(two[1].name() == "Sx");   // (E, X)
  CHECK(two[4].name() == "Ix");   // (X, E)
  CHECK(two[15].name() == "2IzSz");
  CHECK(two[5].name() == "2IxSx");
  CHECK(two[10].name() == "2IySy");
}

TEST_CASE("term names letter spins I, S, R, T", "[product_operator]") {
  ProductOperatorTerm iz_sz{{Factor::Z, Factor::Z, Factor::E}};
  CHECK(iz_sz.name() == "2IzSz");
  ProductOperatorTerm iz_rz{{Factor::Z, Factor::E, Factor::Z}};
  CHECK(iz_rz.name() == "2IzRz");
  ProductOperatorTerm rz_sz{{Factor::E, Factor::Z, Factor::Z}};
  CHECK(rz_sz.name() == "2RzSz");
  ProductOperatorTerm triple{{Factor::Z, Factor::Z, Factor::Z}};
  CHECK(triple.name() == "4IzRzSz");
  ProductOperatorTerm quad{
      {Factor::X, Factor::Y, Factor::Z, Factor::Z}};
  CHECK(quad.name() == "8IxRzSyTz");

  CHECK(triple.weight() == 3);
  CHECK(triple.z_only());
  CHECK_FALSE(quad.z_only());
  ProductOperatorTerm identity3{{Factor::E, Factor::E, Factor::E}};
  CHECK(identity3.name() == "½E");
  CHECK(identity3.weight() == 0);
  CHECK(identity3.z_only());
}

TEST_CASE("basis is trace-orthogonal with uniform norm", "[product_operator]") {
  // tr(B_s B_t) = 2^{n-2} delta_{st}, for every n up to the register cap.
  for (int n = 1; n <= 4; ++n) {
    auto terms = basis_terms(n);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(terms.size());
    for (const auto& t : terms) mats.push_back(t.matrix());

    const double norm = std::ldexp(1.0, n - 2);
    double worst = 0.0;
    for (std::size_t s = 0; s < mats.size(); ++s) {
      for (std::size_t t = s; t < mats.size(); ++t) {
        const Complex tr = product_trace(mats[s], mats[t]);
        const double expected = (s == t) ? norm : 0.0;
        worst = std::max(worst, std::abs(tr - Complex(expected)));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("pinned decompositions of simple states", "[product_operator]") {
  SECTION("|0><0| on one spin") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    rho(0, 0) = 1.0;
    Decomposition d = decompose(rho, 1);
    CHECK(d.coefficient("½E") == Catch::Approx(1.0).margin(1e-12));
    CHECK(d.coefficient("Iz") == Catch::Approx(1.0).margin(1e-12));
    CHECK(d.coefficient("Ix") == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.nonzero().size() == 2);
  }
  SECTION("|00><00|") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(0, 0) = 1.0;
    Decomposition d = decompose(rho, 2);
    for (const char* name : {"½E", "Iz", "Sz", "2IzSz"}) {
      CHECK(d.coefficient(name) == Catch::Approx(0.5).margin(1e-12));
    }
    CHECK(d.nonzero().size() == 4);
  }
  SECTION("(|00> + |01>)/sqrt2") {
    Eigen::Vector4cd psi(1.0, 1.0, 0.0, 0.0);
    psi /= std::sqrt(2.0);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Decomposition d = decompose(rho, 2);
    for (const char* name : {"½E", "Iz", "Sx", "2IzSx"}) {
      CHECK(d.coefficient(name) == Catch::Approx(0.5).margin(1e-12));
    }
    CHECK(d.nonzero().size() == 4);
  }
  SECTION("Bell state (|00> + |11>)/sqrt2") {
    Eigen::Vector4cd psi(1.0, 0.0, 0.0, 1.0);
    psi /= std::sqrt(2.0);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Decomposition d = decompose(rho, 2);
    CHECK(d.coefficient("½E") == Catch::Approx(0.5).margin(1e-12));
    CHECK(d.coefficient("2IxSx") == Catch::Approx(0.5).margin(1e-12));
    CHECK(d.coefficient("2IySy") == Catch::Approx(-0.5).margin(1e-12));
    CHECK(d.coefficient("2IzSz") == Catch::Approx(0.5).margin(1e-12));
    CHECK(d.nonzero().size() == 4);
  }
  SECTION("identity coefficient is not the trace for n = 3") {
    // The uniform normalization prices the identity term at 2^{n-2}
    // per unit trace; recompose() is the ground truth.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(8, 8);
    rho(0, 0) = 1.0;
    Decomposition d = decompose(rho, 3);
    CHECK(d.coefficient("½E") == Catch::Approx(0.25).margin(1e-12));
    CHECK((recompose(d) - rho).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("decompose/recompose round-trip", "[product_operator]") {
  std::mt19937 rng(42);
  for (int n = 1; n <= 3; ++n) {
    const int dim = 1 << n;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXcd rho = oracle::random_hermitian(dim, rng);
      Decomposition d = decompose(rho, n);
      worst = std::max(worst,
                       (recompose(d) - rho).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("decompose is linear", "[product_operator]") {
  std::mt19937 rng(43);
  Eigen::MatrixXcd a = oracle::random_hermitian(4, rng);
  Eigen::MatrixXcd b = oracle::random_hermitian(4, rng);
  Decomposition da = decompose(a, 2);
  Decomposition db = decompose(b, 2);
  Decomposition dsum = decompose(2.0 * a + 3.0 * b, 2);
  for (std::size_t t = 0; t < dsum.coefficients.size(); ++t) {
    CHECK(dsum.coefficients[t] ==
          Catch::Approx(2.0 * da.coefficients[t] + 3.0 * db.coefficients[t])
              .margin(1e-12));
  }
}

TEST_CASE("decompose input validation", "[product_operator]") {
  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(decompose(nonherm, 1), std::invalid_argument);
  CHECK_THROWS_AS(decompose(Eigen::MatrixXcd::Identity(4, 4), 1),
                  std::invalid_argument);

  Decomposition d = decompose(Eigen::MatrixXcd::Identity(2, 2), 1);
  CHECK_THROWS_AS(d.coefficient("Qz"), std::out_of_range);
  CHECK_THROWS_AS(d.coefficient("2IzSz"), std::out_of_range);
}

TEST_CASE("coherence order distribution", "[product_operator]") {
  SECTION("longitudinal terms sit at order zero") {
    ProductOperatorTerm iz{{Factor::Z}};
    Decomposition d = decompose(iz.matrix(), 1);
    auto orders = coherence_orders(d);
    REQUIRE(orders.size() == 1);
    CHECK(orders.at(0) == Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("transverse terms split evenly over +-1") {
    ProductOperatorTerm ix{{Factor::X}};
    auto orders = coherence_orders(decompose(ix.matrix(), 1));
    REQUIRE(orders.size() == 2);
    CHECK(orders.at(1) == Catch::Approx(0.25).margin(1e-12));
    CHECK(orders.at(-1) == Catch::Approx(0.25).margin(1e-12));
  }
  SECTION("Bell state carries double-quantum order") {
    Eigen::Vector4cd psi(1.0, 0.0, 0.0, 1.0);
    psi /= std::sqrt(2.0);
    auto orders = coherence_orders(decompose(psi * psi.adjoint(), 2));
    REQUIRE(orders.size() == 3);
    CHECK(orders.count(-2) == 1);
    CHECK(orders.count(0) == 1);
    CHECK(orders.count(2) == 1);
    CHECK(orders.at(2) == Catch::Approx(0.25).margin(1e-12));
    CHECK(orders.at(-2) == Catch::Approx(0.25).margin(1e-12));
  }
  SECTION("weights sum to the squared norm of the traceless part") {
    std::mt19937 rng(99);
    Eigen::MatrixXcd rho = oracle::random_hermitian(8, rng);
    Eigen::MatrixXcd traceless =
        rho - (rho.trace() / 8.0) * Eigen::MatrixXcd::Identity(8, 8);
    auto orders = coherence_orders(decompose(rho, 3));
    double total = 0.0;
    for (const auto& [p, w] : orders) total += w;
    CHECK(total ==
          Catch::Approx(traceless.squaredNorm()).margin(1e-10));
  }
}

TEST_CASE("diagonal phase decomposition", "[product_operator]") {
  SECTION("conditional pi phase gate") {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
    u(3, 3) = -1.0;
    auto angles = decompose_diagonal_phase(u, 2);
    REQUIRE(angles.size() == 4);  // all z/E-only terms, zeros included
    std::map<std::string, double> by_name;
    for (const auto& [term, theta] : angles) by_name[term.name()] = theta;
    CHECK(by_name.at("½E") == Catch::Approx(kPi / 2).margin(1e-12));
    CHECK(by_name.at("Iz") == Catch::Approx(-kPi / 2).margin(1e-12));
    CHECK(by_name.at("Sz") == Catch::Approx(-kPi / 2).margin(1e-12));
    CHECK(by_name.at("2IzSz") == Catch::Approx(kPi / 2).margin(1e-12));
  }
  SECTION("conditional pi/2 phase gate") {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
    u(3, 3) = kI;
    auto angles = decompose_diagonal_phase(u, 2);
    std::map<std::string, double> by_name;
    for (const auto& [term, theta] : angles) by_name[term.name()] = theta;
    CHECK(by_name.at("½E") == Catch::Approx(-kPi / 4).margin(1e-12));
    CHECK(by_name.at("Iz") == Catch::Approx(kPi / 4).margin(1e-12));
    CHECK(by_name.at("Sz") == Catch::Approx(kPi / 4).margin(1e-12));
    CHECK(by_name.at("2IzSz") == Catch::Approx(-kPi / 4).margin(1e-12));
  }
  SECTION("doubly-controlled Z needs the three-spin z-string") {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
    u(7, 7) = -1.0;
    auto angles = decompose_diagonal_phase(u, 3);
    REQUIRE(angles.size() == 8);
    std::map<std::string, double> by_name;
    for (const auto& [term, theta] : angles) by_name[term.name()] = theta;
    CHECK(by_name.at("½E") == Catch::Approx(kPi / 4).margin(1e-12));
    for (const char* name : {"Iz", "Sz", "Rz"}) {
      CHECK(by_name.at(name) == Catch::Approx(-kPi / 4).margin(1e-12));
    }
    for (const char* name : {"2IzSz", "2IzRz", "2RzSz"}) {
      CHECK(by_name.at(name) == Catch::Approx(kPi / 4).margin(1e-12));
    }
    CHECK(by_name.at("4IzRzSz") == Catch::Approx(-kPi / 4).margin(1e-12));
  }
  SECTION("identity decomposes to all zeros") {
    auto angles = decompose_diagonal_phase(Eigen::MatrixXcd::Identity(4, 4), 2);
    for (const auto& [term, theta] : angles) CHECK(theta == 0.0);
  }
  SECTION("re-exponentiation reproduces random diagonal unitaries") {
    std::mt19937 rng(1234);
    for (int n = 1; n <= 3; ++n) {
      const int dim = 1 << n;
      for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd u = oracle::random_diagonal_unimodular(dim, rng);
        auto angles = decompose_diagonal_phase(u, n);
        Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& [term, theta] : angles) {
          gen += theta * term.matrix();
        }
        Eigen::MatrixXcd rebuilt = oracle::exp_minus_i(gen, 1.0);
        CHECK((rebuilt - u).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SECTION("rejects non-diagonal and non-unimodular input") {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    CHECK_THROWS_AS(decompose_diagonal_phase(x, 1), std::invalid_argument);
    Eigen::MatrixXcd stretched = Eigen::MatrixXcd::Identity(2, 2);
    stretched(0, 0) = 2.0;
    CHECK_THROWS_AS(decompose_diagonal_phase(stretched, 1),
                    std::invalid_argument);
  }
}

}  // namespace
}  // namespace nmrqc
