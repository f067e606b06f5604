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

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nmrqc/operator_core.hpp"

namespace nmrqc {

// Events carry rotation angles, not durations: evolutions are specified as
// angles, and physical delays (via pi J t) are an annotation concern, not IR
// semantics.  All angles are radians in memory and degrees in text.

// A hard RF rotation of one or more spins about a fixed axis.  Multi-target
// pulses act as the tensor product of identical single-spin rotations.
struct RfPulse {
  std::vector<int> targets;  // sorted, distinct, non-empty
  Eigen::Vector3d axis;      // unit vector
  double flip = 0.0;         // radians

  bool operator==(const RfPulse& o) const {
    return targets == o.targets && axis == o.axis && flip == o.flip;
  }
};

// A z-rotation of a single spin (a frame rotation or a composite sandwich,
// chosen at realization time).
struct ZRot {
  int target = 0;
  double angle = 0.0;  // radians

  bool operator==(const ZRot&) const = default;
};

// Scalar-coupling evolution exp(-i angle 2 Iz Sz) on a pair of spins.
struct Coupling {
  std::pair<int, int> pair{0, 1};  // distinct
  double angle = 0.0;              // radians

  bool operator==(const Coupling&) const = default;
};

// Non-unitary crusher marker: the simulator projects the state onto matrix
// elements whose coherence order lies in `orders`.  Order 0 must be allowed
// (trace preservation) and the set must be symmetric about 0 (Hermiticity).
struct Crush {
  std::set<int> orders;

  bool operator==(const Crush&) const = default;
};

using PulseEvent = std::variant<RfPulse, ZRot, Coupling, Crush>;

struct PulseSequence {
  int n = 0;                      // spin count
  std::vector<PulseEvent> events;  // index 0 executes first in time

  bool operator==(const PulseSequence&) const = default;
};

// Thrown by the text readers, with a 1-based line number in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// The unitary realized by a single event; Crush has none and throws
// std::invalid_argument.
Unitary event_unitary(const PulseEvent& event, int n);

// Product of the event unitaries, first-in-time applied first
// (U = U_k ... U_2 U_1).  Throws std::invalid_argument if the sequence
// contains a Crush event.
Unitary sequence_unitary(const PulseSequence& seq);

// Replace every ZRot{t, theta} in place by the three-pulse sandwich
// (-x, pi/2), (y, theta), (x, pi/2) on t, which synthesizes the same unitary
// exactly (not merely up to phase).  Other events are untouched.
PulseSequence expand_composite_z(const PulseSequence& seq);

// Optional serialization extras: a scalar-coupling table (Hz per spin pair)
// causes `couple` lines to carry delay annotations t = |angle| / (pi J).
// Negative coupling angles are annotated as requiring a refocusing
// construction, which this library does not synthesize.
struct JTable {
  std::map<std::pair<int, int>, double> hz;

  // Looks up (a,b) in either order; 0 when absent.
  double lookup(int a, int b) const;
};

// Line-oriented text form, one event per line after a `spins <n>` header:
//
//   pulse q<i>[,q<j>...] axis=<x|y|-x|-y|(ax,ay,az)> flip=<degrees>
//   zrot q<i> angle=<degrees>
//   couple q<i> q<j> angle=<degrees>
//   crush orders=<p1,p2,...>
//
// `#` starts a comment and blank lines are ignored.
std::string serialize(const PulseSequence& seq, const JTable* j = nullptr);
PulseSequence parse_pulse_sequence(const std::string& text);

// Reads a coupling table: lines `<spin> <spin> <hertz>`, `#` comments.
JTable parse_j_table(const std::string& text);

// --- angle/number helpers used by the text formats ---------------------

// degrees -> radians, a single multiplication by fl(pi/180).
double radians_from_degrees(double degrees);

// The canonical degree preimage of a radian value: the double d closest to
// rad * 180/pi with radians_from_degrees(d) == rad, preferring an integral
// d when one qualifies.  Angles born in degrees (every parsed or compiled
// sequence) round-trip bitwise through serialize/parse; a radian value with
// no exact preimage (possible: the degree grid is ~1.12x coarser in places)
// falls back to the nearest double, within 1 ulp.
double degrees_from_radians(double radians);

// Shortest decimal string that parses back to exactly x ("-0" normalized
// to "0").
std::string to_shortest_string(double x);

}  // namespace nmrqc
