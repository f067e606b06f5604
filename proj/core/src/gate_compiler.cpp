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

#include "nmrqc/gate_compiler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nmrqc/product_operator.hpp"

namespace nmrqc {

namespace {

constexpr Complex kI{0.0, 1.0};

struct KindInfo {
  const char* name;
  int operands;
  bool has_angle;
};

KindInfo kind_info(GateKind k) {
  switch (k) {
    case GateKind::Not:
      return {"not", 1, false};
    case GateKind::V:
      return {"v", 1, false};
    case GateKind::Vdag:
      return {"vdag", 1, false};
    case GateKind::H:
      return {"hadamard", 1, false};
    case GateKind::PseudoH:
      return {"h", 1, false};
    case GateKind::PseudoHdag:
      return {"hd", 1, false};
    case GateKind::Rx:
      return {"rx", 1, true};
    case GateKind::Ry:
      return {"ry", 1, true};
    case GateKind::Rz:
      return {"rz", 1, true};
    case GateKind::CPhase:
      return {"cphase", 2, true};
    case GateKind::Cnot:
      return {"cnot", 2, false};
    case GateKind::CV:
      return {"cv", 2, false};
    case GateKind::CVdag:
      return {"cvdag", 2, false};
    case GateKind::Toffoli:
      return {"toffoli", 3, false};
    case GateKind::Swap:
      return {"swap", 2, false};
  }
  throw std::logic_error("unknown gate kind");
}

void check_gate(const Gate& g, int n) {
  check_spin_count(n);
  const KindInfo info = kind_info(g.kind);
  if (static_cast<int>(g.operands.size()) != info.operands) {
    throw std::invalid_argument(std::string(info.name) + " takes " +
                                std::to_string(info.operands) + " operand(s)");
  }
  for (int q : g.operands) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("qubit q" + std::to_string(q) +
                                  " out of range");
    }
  }
  auto ops = g.operands;
  std::sort(ops.begin(), ops.end());
  if (std::adjacent_find(ops.begin(), ops.end()) != ops.end()) {
    throw std::invalid_argument("gate operands must be distinct");
  }
  if (info.has_angle != g.angle.has_value()) {
    throw std::invalid_argument(std::string(info.name) +
                                (info.has_angle ? " requires an angle"
                                                : " takes no angle"));
  }
}

// Embed a 2^k x 2^k matrix acting on the listed qubits (first listed = most
// significant sub-index) into the full register.
Unitary embed_gate(const Eigen::MatrixXcd& small,
                   const std::vector<int>& qubits, int n) {
  const int k = static_cast<int>(qubits.size());
  const int dim = 1 << n;
  Unitary u = Unitary::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      // Spectator bits must agree.
      bool spectators_match = true;
      for (int b = 0; b < n; ++b) {
        if (std::find(qubits.begin(), qubits.end(), b) != qubits.end()) {
          continue;
        }
        if (((i >> (n - 1 - b)) & 1) != ((j >> (n - 1 - b)) & 1)) {
          spectators_match = false;
          break;
        }
      }
      if (!spectators_match) continue;
      int row = 0, col = 0;
      for (int b = 0; b < k; ++b) {
        row = (row << 1) | ((i >> (n - 1 - qubits[b])) & 1);
        col = (col << 1) | ((j >> (n - 1 - qubits[b])) & 1);
      }
      u(i, j) = small(row, col);
    }
  }
  return u;
}

Eigen::Matrix2cd ideal_v() {
  Eigen::Matrix2cd v;
  v << Complex(1, 1), Complex(1, -1), Complex(1, -1), Complex(1, 1);
  return 0.5 * v;
}

Eigen::Matrix2cd ideal_h() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

Eigen::Matrix2cd pseudo_h() {
  Eigen::Matrix2cd h;
  h << 1, 1, -1, 1;
  return h / std::numbers::sqrt2;
}

Eigen::Matrix2cd rotation2(Axis axis, double angle) {
  return std::cos(angle / 2.0) * Eigen::Matrix2cd::Identity() -
         kI * std::sin(angle / 2.0) * pauli(axis);
}

Eigen::MatrixXcd small_gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::Not:
      return pauli(Axis::X);
    case GateKind::V:
      return ideal_v();
    case GateKind::Vdag:
      return ideal_v().adjoint();
    case GateKind::H:
      return ideal_h();
    case GateKind::PseudoH:
      return pseudo_h();
    case GateKind::PseudoHdag:
      return pseudo_h().adjoint();
    case GateKind::Rx:
      return rotation2(Axis::X, *g.angle);
    case GateKind::Ry:
      return rotation2(Axis::Y, *g.angle);
    case GateKind::Rz:
      return rotation2(Axis::Z, *g.angle);
    case GateKind::CPhase: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = std::exp(kI * *g.angle);
      return m;
    }
    case GateKind::Cnot: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case GateKind::CV: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m.block<2, 2>(2, 2) = ideal_v();
      return m;
    }
    case GateKind::CVdag: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m.block<2, 2>(2, 2) = ideal_v().adjoint();
      return m;
    }
    case GateKind::Toffoli: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
      m(6, 6) = m(7, 7) = 0;
      m(6, 7) = m(7, 6) = 1;
      return m;
    }
    case GateKind::Swap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      return m;
    }
  }
  throw std::logic_error("unknown gate kind");
}

void append(PulseSequence& seq, const PulseSequence& tail) {
  seq.events.insert(seq.events.end(), tail.events.begin(),
                    tail.events.end());
}

// The bare lowering, before any composite-z expansion.
PulseSequence lower_plain(const Gate& g, int n, HadamardStyle hadamard) {
  const double quarter = radians_from_degrees(90.0);
  const double half = radians_from_degrees(180.0);
  const double eighth = radians_from_degrees(45.0);
  PulseSequence seq;
  seq.n = n;
  const auto& q = g.operands;
  switch (g.kind) {
    case GateKind::Not:
      seq.events.push_back(RfPulse{{q[0]}, {1, 0, 0}, half});
      return seq;
    case GateKind::V:
      seq.events.push_back(RfPulse{{q[0]}, {1, 0, 0}, quarter});
      return seq;
    case GateKind::Vdag:
      seq.events.push_back(RfPulse{{q[0]}, {1, 0, 0}, -quarter});
      return seq;
    case GateKind::H:
      if (hadamard == HadamardStyle::Tilted) {
        seq.events.push_back(
            RfPulse{{q[0]}, Eigen::Vector3d{1, 0, 1}.normalized(), half});
      } else {
        seq.events.push_back(RfPulse{{q[0]}, {0, 1, 0}, eighth});
        seq.events.push_back(RfPulse{{q[0]}, {1, 0, 0}, half});
        seq.events.push_back(RfPulse{{q[0]}, {0, -1, 0}, eighth});
      }
      return seq;
    case GateKind::PseudoH:
      seq.events.push_back(RfPulse{{q[0]}, {0, 1, 0}, -quarter});
      return seq;
    case GateKind::PseudoHdag:
      seq.events.push_back(RfPulse{{q[0]}, {0, 1, 0}, quarter});
      return seq;
    case GateKind::Rx:
      seq.events.push_back(RfPulse{{q[0]}, {1, 0, 0}, *g.angle});
      return seq;
    case GateKind::Ry:
      seq.events.push_back(RfPulse{{q[0]}, {0, 1, 0}, *g.angle});
      return seq;
    case GateKind::Rz:
      seq.events.push_back(ZRot{q[0], *g.angle});
      return seq;
    case GateKind::CPhase: {
      // diag(1,1,1,e^{i phi}) = e^{-i phi/4} exp(-i (phi/2)(Iz + Sz - 2IzSz))
      const double phi = *g.angle;
      seq.events.push_back(ZRot{q[0], phi / 2});
      seq.events.push_back(ZRot{q[1], phi / 2});
      seq.events.push_back(Coupling{{q[0], q[1]}, -phi / 2});
      return seq;
    }
    case GateKind::Cnot: {
      // h on the target, conditional pi phase, then the inverse h.  This
      // order produces diag-block(I, X); the reverse order leaves the
      // conditional phase diag-block(I, -X).
      append(seq, lower_plain({GateKind::PseudoH, {q[1]}, {}}, n, hadamard));
      append(seq, lower_plain(
                      {GateKind::CPhase, q, std::numbers::pi}, n, hadamard));
      append(seq,
             lower_plain({GateKind::PseudoHdag, {q[1]}, {}}, n, hadamard));
      return seq;
    }
    case GateKind::CV:
    case GateKind::CVdag: {
      const double phi = g.kind == GateKind::CV ? std::numbers::pi / 2
                                                : -std::numbers::pi / 2;
      append(seq, lower_plain({GateKind::PseudoH, {q[1]}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::CPhase, q, phi}, n, hadamard));
      append(seq,
             lower_plain({GateKind::PseudoHdag, {q[1]}, {}}, n, hadamard));
      return seq;
    }
    case GateKind::Toffoli: {
      const int a = q[0], b = q[1], t = q[2];
      append(seq, lower_plain({GateKind::CV, {b, t}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::Cnot, {a, b}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::CVdag, {b, t}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::Cnot, {a, b}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::CV, {a, t}, {}}, n, hadamard));
      return seq;
    }
    case GateKind::Swap: {
      const int a = q[0], b = q[1];
      append(seq, lower_plain({GateKind::Cnot, {a, b}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::Cnot, {b, a}, {}}, n, hadamard));
      append(seq, lower_plain({GateKind::Cnot, {a, b}, {}}, n, hadamard));
      return seq;
    }
  }
  throw std::logic_error("unknown gate kind");
}

}  // namespace

NoDirectHamiltonian::NoDirectHamiltonian(const std::string& what)
    : std::runtime_error(what) {}

Unitary gate_matrix(const Gate& g, int n) {
  check_gate(g, n);
  return embed_gate(small_gate_matrix(g), g.operands, n);
}

PulseSequence lower_gate(const Gate& g, int n, const LowerOptions& opt) {
  check_gate(g, n);
  PulseSequence seq = lower_plain(g, n, opt.hadamard);
  if (opt.z == ZStyle::Composite) seq = expand_composite_z(seq);
  return seq;
}

PulseSequence compile_circuit(const Circuit& c, const LowerOptions& opt) {
  check_spin_count(c.n);
  PulseSequence seq;
  seq.n = c.n;
  for (const auto& g : c.gates) append(seq, lower_gate(g, c.n, opt));
  return seq;
}

Unitary circuit_matrix(const Circuit& c) {
  check_spin_count(c.n);
  const int dim = 1 << c.n;
  Unitary u = Unitary::Identity(dim, dim);
  for (const auto& g : c.gates) u = gate_matrix(g, c.n) * u;
  return u;
}

PulseSequence lower_diagonal_phase(const Unitary& u, int n,
                                   const LowerOptions& opt) {
  PulseSequence seq;
  seq.n = n;
  for (const auto& [term, theta] : decompose_diagonal_phase(u, n)) {
    if (std::abs(theta) <= 1e-12) continue;
    const int k = term.weight();
    if (k == 0) continue;  // identity component: a global phase, dropped
    if (k > 2) {
      throw NoDirectHamiltonian(
          "no single coupling term realizes exp(-i theta " + term.name() +
          "); decompose through two-spin gates instead");
    }
    std::vector<int> spins;
    for (int s = 0; s < n; ++s) {
      if (term.factors[s] == Factor::Z) spins.push_back(s);
    }
    if (k == 1) {
      seq.events.push_back(ZRot{spins[0], theta});
    } else {
      seq.events.push_back(Coupling{{spins[0], spins[1]}, theta});
    }
  }
  if (opt.z == ZStyle::Composite) seq = expand_composite_z(seq);
  return seq;
}

std::string gate_to_string(const Gate& g) {
  std::string out = kind_info(g.kind).name;
  for (int q : g.operands) out += " q" + std::to_string(q);
  if (g.angle) {
    out += " " + to_shortest_string(degrees_from_radians(*g.angle));
  }
  return out;
}

std::string serialize(const Circuit& c) {
  check_spin_count(c.n);
  std::string out = "qubits " + std::to_string(c.n) + "\n";
  for (const auto& g : c.gates) {
    check_gate(g, c.n);
    out += gate_to_string(g) + "\n";
  }
  return out;
}

namespace {

std::optional<GateKind> kind_from_name(const std::string& name) {
  static const std::pair<const char*, GateKind> kNames[] = {
      {"not", GateKind::Not},          {"v", GateKind::V},
      {"vdag", GateKind::Vdag},        {"hadamard", GateKind::H},
      {"h", GateKind::PseudoH},        {"hd", GateKind::PseudoHdag},
      {"rx", GateKind::Rx},            {"ry", GateKind::Ry},
      {"rz", GateKind::Rz},            {"cphase", GateKind::CPhase},
      {"cnot", GateKind::Cnot},        {"cv", GateKind::CV},
      {"cvdag", GateKind::CVdag},      {"toffoli", GateKind::Toffoli},
      {"swap", GateKind::Swap},
  };
  for (const auto& [n, k] : kNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens[0] != "qubits" || tokens.size() != 2) {
        throw ParseError(line_no, "expected header 'qubits <n>'");
      }
      const char* begin = tokens[1].c_str();
      char* end = nullptr;
      const long n = std::strtol(begin, &end, 10);
      if (end != begin + tokens[1].size()) {
        throw ParseError(line_no, "bad qubit count '" + tokens[1] + "'");
      }
      c.n = static_cast<int>(n);
      try {
        check_spin_count(c.n);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      have_header = true;
      continue;
    }
    const auto kind = kind_from_name(tokens[0]);
    if (!kind) {
      throw ParseError(line_no, "unknown gate '" + tokens[0] + "'");
    }
    const KindInfo info = kind_info(*kind);
    const size_t expected = 1 + info.operands + (info.has_angle ? 1 : 0);
    if (tokens.size() != expected) {
      throw ParseError(line_no, std::string("'") + info.name + "' takes " +
                                    std::to_string(info.operands) +
                                    " qubit(s)" +
                                    (info.has_angle ? " and an angle" : ""));
    }
    Gate g;
    g.kind = *kind;
    for (int i = 0; i < info.operands; ++i) {
      const std::string& tok = tokens[1 + i];
      if (tok.size() < 2 || tok[0] != 'q') {
        throw ParseError(line_no, "expected a qubit like q0, got '" + tok +
                                      "'");
      }
      const char* begin = tok.c_str() + 1;
      char* end = nullptr;
      const long q = std::strtol(begin, &end, 10);
      if (end != begin + tok.size() - 1) {
        throw ParseError(line_no, "bad qubit '" + tok + "'");
      }
      g.operands.push_back(static_cast<int>(q));
    }
    if (info.has_angle) {
      const std::string& tok = tokens.back();
      const char* begin = tok.c_str();
      char* end = nullptr;
      const double deg = std::strtod(begin, &end);
      if (end != begin + tok.size()) {
        throw ParseError(line_no, "bad angle '" + tok + "'");
      }
      g.angle = radians_from_degrees(deg);
    }
    try {
      check_gate(g, c.n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    c.gates.push_back(std::move(g));
  }
  if (!have_header) throw ParseError(line_no, "missing 'qubits <n>' header");
  return c;
}

}  // namespace nmrqc
