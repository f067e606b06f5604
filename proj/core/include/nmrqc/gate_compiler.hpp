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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmrqc/operator_core.hpp"
#include "nmrqc/pulse_ir.hpp"

namespace nmrqc {

// Gate inventory.  V is the square root of NOT; h is the pseudo-Hadamard
// (a 90-degree y-family rotation, not self-inverse).  Rx/Ry/Rz and CPhase
// carry an angle.
enum class GateKind {
  Not,
  V,
  Vdag,
  H,
  PseudoH,
  PseudoHdag,
  Rx,
  Ry,
  Rz,
  CPhase,
  Cnot,
  CV,
  CVdag,
  Toffoli,
  Swap,
};

struct Gate {
  GateKind kind = GateKind::Not;
  std::vector<int> operands;    // 1-3 distinct qubits; controls first
  std::optional<double> angle;  // radians; Rx/Ry/Rz/CPhase only

  bool operator==(const Gate&) const = default;
};

struct Circuit {
  int n = 0;                // qubit count, <= 4
  std::vector<Gate> gates;  // first executes first in time

  bool operator==(const Circuit&) const = default;
};

enum class HadamardStyle { Tilted, Sandwich };
enum class ZStyle { ZRot, Composite };

struct LowerOptions {
  HadamardStyle hadamard = HadamardStyle::Tilted;
  ZStyle z = ZStyle::ZRot;
};

// Thrown when a diagonal phase would need a three-or-more-spin z-string
// generator, which has no single coupling term to realize it.
class NoDirectHamiltonian : public std::runtime_error {
 public:
  explicit NoDirectHamiltonian(const std::string& what);
};

// The ideal gate matrix (not the pulse implementation's phase-shifted
// variant), embedded on the operand qubits of an n-qubit register with
// qubit 0 as the most significant bit.  Conventions pinned by tests:
// NOT = [[0,1],[1,0]], V = [[1+i,1-i],[1-i,1+i]]/2, h = [[1,1],[-1,1]]/sqrt2,
// CPHASE(phi) = diag(1,1,1,e^{i phi}), CNOT flips the target when the
// control is |1>.
Unitary gate_matrix(const Gate& g, int n);

// Lower one gate to pulses.  The synthesized unitary equals gate_matrix(g)
// up to a global phase.  Identities used:
//   NOT   -> 180(x);  V -> 90(x);  Vdag -> -90(x)
//   H     -> one 180 pulse about (x+z)/sqrt2, or the sandwich
//            45(y), 180(x), 45(-y)
//   h     -> -90(y);  hdag -> 90(y)
//   CPHASE(phi) -> ZRot(c, phi/2), ZRot(t, phi/2), Coupling((c,t), -phi/2)
//   CNOT(c,t)   -> h(t), CPHASE(pi), hdag(t)
//   CV/CVdag    -> same sandwich with CPHASE(+-pi/2)
//   TOFFOLI(a,b,t) -> CV(b,t), CNOT(a,b), CVdag(b,t), CNOT(a,b), CV(a,t)
//   SWAP(a,b)   -> CNOT(a,b), CNOT(b,a), CNOT(a,b)
// The pseudo-Hadamard pair around a controlled phase is ordered so the
// compiled CNOT equals diag-block(I, X); the reverse order would leave the
// conditional (observable) phase diag-block(I, -X).
// With ZStyle::Composite every ZRot is expanded to its three-pulse sandwich.
PulseSequence lower_gate(const Gate& g, int n, const LowerOptions& opt = {});

// Concatenation of the lowered gates in time order.
PulseSequence compile_circuit(const Circuit& c, const LowerOptions& opt = {});

// The ideal whole-circuit unitary: the product of gate matrices in time
// order.
Unitary circuit_matrix(const Circuit& c);

// Lower a diagonal unitary to ZRot/Coupling events via its z-string
// decomposition.  The identity component is a global phase and is dropped.
// Throws NoDirectHamiltonian if any weight-3+ z-string coefficient is
// nonzero (e.g. the doubly-controlled-Z diagonal needs a 4IzRzSz term).
PulseSequence lower_diagonal_phase(const Unitary& u, int n,
                                   const LowerOptions& opt = {});

// Circuit text: a `qubits <n>` header, then one gate per line:
//   not q0 | v q1 | vdag q1 | hadamard q0 | h q0 | hd q0 | rx q0 <deg>
//   | ry q0 <deg> | rz q0 <deg> | cphase q0 q1 <deg> | cnot q0 q1
//   | cv q0 q1 | cvdag q0 q1 | toffoli q0 q1 q2 | swap q0 q1
// `h` is the pseudo-Hadamard and `hd` its inverse; `hadamard` is the true
// self-inverse gate.  `#` starts a comment; blank lines are ignored.
Circuit parse_circuit(const std::string& text);
std::string serialize(const Circuit& c);

// One-line display form, identical to the circuit-file syntax
// (e.g. "cnot q0 q1", "rx q0 60").
std::string gate_to_string(const Gate& g);

}  // namespace nmrqc
