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

#include "nmrqc/pulse_ir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace nmrqc {

namespace {

constexpr double kPiOver180 = std::numbers::pi / 180.0;
constexpr double k180OverPi = 180.0 / std::numbers::pi;

const Eigen::Vector3d kXAxis{1, 0, 0};
const Eigen::Vector3d kYAxis{0, 1, 0};

void check_index(int spin, int n) {
  if (spin < 0 || spin >= n) {
    throw std::invalid_argument("spin index q" + std::to_string(spin) +
                                " out of range for " + std::to_string(n) +
                                " spins");
  }
}

void check_event(const PulseEvent& event, int n) {
  if (const auto* rf = std::get_if<RfPulse>(&event)) {
    if (rf->targets.empty()) {
      throw std::invalid_argument("pulse must have at least one target");
    }
    for (size_t i = 0; i < rf->targets.size(); ++i) {
      check_index(rf->targets[i], n);
      if (i > 0 && rf->targets[i] <= rf->targets[i - 1]) {
        throw std::invalid_argument(
            "pulse targets must be sorted and distinct");
      }
    }
  } else if (const auto* z = std::get_if<ZRot>(&event)) {
    check_index(z->target, n);
  } else if (const auto* c = std::get_if<Coupling>(&event)) {
    check_index(c->pair.first, n);
    check_index(c->pair.second, n);
    if (c->pair.first == c->pair.second) {
      throw std::invalid_argument("coupling requires two distinct spins");
    }
  } else if (const auto* cr = std::get_if<Crush>(&event)) {
    if (!cr->orders.count(0)) {
      throw std::invalid_argument(
          "crush must allow coherence order 0 (trace preservation)");
    }
    for (int p : cr->orders) {
      if (!cr->orders.count(-p)) {
        throw std::invalid_argument(
            "crush order set must be symmetric about 0 (Hermiticity)");
      }
    }
  }
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

Unitary event_unitary(const PulseEvent& event, int n) {
  check_spin_count(n);
  check_event(event, n);
  if (const auto* rf = std::get_if<RfPulse>(&event)) {
    Unitary u = Unitary::Identity(1 << n, 1 << n);
    // Distinct targets, identical rotations: the embedded factors commute,
    // so a plain product realizes the tensor product.
    for (int t : rf->targets) {
      u = rotation_unitary(t, rf->axis, rf->flip, n) * u;
    }
    return u;
  }
  if (const auto* z = std::get_if<ZRot>(&event)) {
    return rotation_unitary(z->target, Eigen::Vector3d{0, 0, 1}, z->angle, n);
  }
  if (const auto* c = std::get_if<Coupling>(&event)) {
    return coupling_unitary(c->pair, c->angle, n);
  }
  throw std::invalid_argument("crush event has no unitary");
}

Unitary sequence_unitary(const PulseSequence& seq) {
  check_spin_count(seq.n);
  Unitary u = Unitary::Identity(1 << seq.n, 1 << seq.n);
  for (const auto& event : seq.events) {
    u = event_unitary(event, seq.n) * u;  // first in time applied first
  }
  return u;
}

PulseSequence expand_composite_z(const PulseSequence& seq) {
  // Rz(theta) = Rx(pi/2) Ry(theta) Rx(-pi/2) as a matrix product, i.e.
  // time order (-x, 90), (y, theta), (x, 90); the identity is exact, not
  // merely up to phase.
  const double quarter = radians_from_degrees(90.0);
  PulseSequence out;
  out.n = seq.n;
  for (const auto& event : seq.events) {
    if (const auto* z = std::get_if<ZRot>(&event)) {
      out.events.push_back(RfPulse{{z->target}, -kXAxis, quarter});
      out.events.push_back(RfPulse{{z->target}, kYAxis, z->angle});
      out.events.push_back(RfPulse{{z->target}, kXAxis, quarter});
    } else {
      out.events.push_back(event);
    }
  }
  return out;
}

double JTable::lookup(int a, int b) const {
  auto it = hz.find({a, b});
  if (it == hz.end()) it = hz.find({b, a});
  return it == hz.end() ? 0.0 : it->second;
}

double radians_from_degrees(double degrees) { return degrees * kPiOver180; }

double degrees_from_radians(double radians) {
  if (radians == 0.0) return 0.0;
  const double d0 = radians * k180OverPi;
  // Prefer an integral number of degrees when it reproduces the value.
  const double snapped = std::nearbyint(d0);
  if (radians_from_degrees(snapped) == radians) return snapped;
  if (radians_from_degrees(d0) == radians) return d0;
  // The degree grid is slightly coarser than the radian grid in places;
  // search the neighbors for an exact preimage.
  double up = d0, down = d0;
  for (int i = 0; i < 4; ++i) {
    up = std::nextafter(up, HUGE_VAL);
    if (radians_from_degrees(up) == radians) return up;
    down = std::nextafter(down, -HUGE_VAL);
    if (radians_from_degrees(down) == radians) return down;
  }
  return d0;  // no exact preimage exists; nearest is within 1 ulp
}

std::string to_shortest_string(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  // Integral values print without an exponent ("90", not "9e+01").
  if (x == std::nearbyint(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string format_degrees(double radians) {
  return to_shortest_string(degrees_from_radians(radians));
}

std::string format_axis(const Eigen::Vector3d& a) {
  if (a == kXAxis) return "x";
  if (a == -kXAxis) return "-x";
  if (a == kYAxis) return "y";
  if (a == -kYAxis) return "-y";
  return "(" + to_shortest_string(a.x()) + "," + to_shortest_string(a.y()) +
         "," + to_shortest_string(a.z()) + ")";
}

std::string coupling_annotation(const Coupling& c, const JTable& j) {
  const double hz = j.lookup(c.pair.first, c.pair.second);
  if (hz <= 0.0 || c.angle == 0.0) return "";
  // Free evolution under 2 Iz Sz for time t accumulates angle pi J t.
  const double t_ms = std::abs(c.angle) / (std::numbers::pi * hz) * 1e3;
  std::string note = "  # t = " + to_shortest_string(t_ms) + " ms (J = " +
                     to_shortest_string(hz) + " Hz)";
  if (c.angle < 0.0) {
    note += ", negative evolution: requires a refocusing construction";
  }
  return note;
}

}  // namespace

std::string serialize(const PulseSequence& seq, const JTable* j) {
  check_spin_count(seq.n);
  std::string out = "spins " + std::to_string(seq.n) + "\n";
  for (const auto& event : seq.events) {
    check_event(event, seq.n);
    if (const auto* rf = std::get_if<RfPulse>(&event)) {
      out += "pulse ";
      for (size_t i = 0; i < rf->targets.size(); ++i) {
        out += (i ? ",q" : "q") + std::to_string(rf->targets[i]);
      }
      out += " axis=" + format_axis(rf->axis) +
             " flip=" + format_degrees(rf->flip) + "\n";
    } else if (const auto* z = std::get_if<ZRot>(&event)) {
      out += "zrot q" + std::to_string(z->target) +
             " angle=" + format_degrees(z->angle) + "\n";
    } else if (const auto* c = std::get_if<Coupling>(&event)) {
      out += "couple q" + std::to_string(c->pair.first) + " q" +
             std::to_string(c->pair.second) +
             " angle=" + format_degrees(c->angle);
      if (j != nullptr) out += coupling_annotation(*c, *j);
      out += "\n";
    } else if (const auto* cr = std::get_if<Crush>(&event)) {
      out += "crush orders=";
      bool first = true;
      for (int p : cr->orders) {
        if (!first) out += ",";
        out += std::to_string(p);
        first = false;
      }
      out += "\n";
    }
  }
  return out;
}

namespace {

// Splits into non-empty whitespace-separated tokens after stripping any
// '#' comment.
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

double parse_double(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size() || text.empty()) {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, int line) {
  const double v = parse_double(text, line);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ParseError(line, "expected an integer, got '" + text + "'");
  }
  return i;
}

int parse_spin(const std::string& token, int line) {
  if (token.size() < 2 || token[0] != 'q') {
    throw ParseError(line, "expected a spin reference like q0, got '" +
                               token + "'");
  }
  return parse_int(token.substr(1), line);
}

// Returns the value part of a "key=value" token, checking the key.
std::string key_value(const std::string& token, const std::string& key,
                      int line) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError(line, "expected " + prefix + "..., got '" + token + "'");
  }
  return token.substr(prefix.size());
}

Eigen::Vector3d parse_axis(const std::string& text, int line) {
  if (text == "x") return {1, 0, 0};
  if (text == "-x") return {-1, 0, 0};
  if (text == "y") return {0, 1, 0};
  if (text == "-y") return {0, -1, 0};
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError(line, "bad axis '" + text + "'");
  }
  std::istringstream in(text.substr(1, text.size() - 2));
  std::string part;
  std::vector<double> comps;
  while (std::getline(in, part, ',')) {
    comps.push_back(parse_double(part, line));
  }
  if (comps.size() != 3) {
    throw ParseError(line, "axis needs three components: '" + text + "'");
  }
  Eigen::Vector3d a{comps[0], comps[1], comps[2]};
  const double norm = a.norm();
  if (norm == 0.0) throw ParseError(line, "axis must be nonzero");
  // Keep unit vectors bit-exact (round-trip); normalize anything else.
  if (std::abs(norm - 1.0) > 1e-12) a /= norm;
  return a;
}

}  // namespace

PulseSequence parse_pulse_sequence(const std::string& text) {
  PulseSequence seq;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens[0] != "spins" || tokens.size() != 2) {
        throw ParseError(line_no, "expected header 'spins <n>'");
      }
      seq.n = parse_int(tokens[1], line_no);
      try {
        check_spin_count(seq.n);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      have_header = true;
      continue;
    }
    if (tokens[0] == "pulse") {
      if (tokens.size() != 4) {
        throw ParseError(line_no,
                         "expected 'pulse q<i>[,q<j>...] axis=... flip=...'");
      }
      RfPulse rf;
      std::istringstream targets(tokens[1]);
      std::string t;
      while (std::getline(targets, t, ',')) {
        rf.targets.push_back(parse_spin(t, line_no));
      }
      std::sort(rf.targets.begin(), rf.targets.end());
      rf.axis = parse_axis(key_value(tokens[2], "axis", line_no), line_no);
      rf.flip = radians_from_degrees(
          parse_double(key_value(tokens[3], "flip", line_no), line_no));
      seq.events.push_back(rf);
    } else if (tokens[0] == "zrot") {
      if (tokens.size() != 3) {
        throw ParseError(line_no, "expected 'zrot q<i> angle=...'");
      }
      ZRot z;
      z.target = parse_spin(tokens[1], line_no);
      z.angle = radians_from_degrees(
          parse_double(key_value(tokens[2], "angle", line_no), line_no));
      seq.events.push_back(z);
    } else if (tokens[0] == "couple") {
      if (tokens.size() != 4) {
        throw ParseError(line_no, "expected 'couple q<i> q<j> angle=...'");
      }
      Coupling c;
      c.pair.first = parse_spin(tokens[1], line_no);
      c.pair.second = parse_spin(tokens[2], line_no);
      c.angle = radians_from_degrees(
          parse_double(key_value(tokens[3], "angle", line_no), line_no));
      seq.events.push_back(c);
    } else if (tokens[0] == "crush") {
      if (tokens.size() != 2) {
        throw ParseError(line_no, "expected 'crush orders=...'");
      }
      Crush cr;
      std::istringstream orders(key_value(tokens[1], "orders", line_no));
      std::string p;
      while (std::getline(orders, p, ',')) {
        cr.orders.insert(parse_int(p, line_no));
      }
      seq.events.push_back(cr);
    } else {
      throw ParseError(line_no, "unknown event '" + tokens[0] + "'");
    }
    try {
      check_event(seq.events.back(), seq.n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'spins <n>' header");
  return seq;
}

JTable parse_j_table(const std::string& text) {
  JTable j;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) {
      throw ParseError(line_no, "expected '<spin> <spin> <hertz>'");
    }
    const int a = parse_int(tokens[0], line_no);
    const int b = parse_int(tokens[1], line_no);
    const double hz = parse_double(tokens[2], line_no);
    if (a == b) throw ParseError(line_no, "coupling spins must differ");
    if (hz <= 0.0) throw ParseError(line_no, "coupling must be positive Hz");
    j.hz[{a, b}] = hz;
  }
  return j;
}

}  // namespace nmrqc
