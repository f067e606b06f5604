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
//
// nmrqc: compile small quantum circuits to idealized NMR pulse sequences,
// simulate them on spin density matrices, and verify the compilation
// against the ideal gate matrices up to global phase.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "nmrqc/gate_compiler.hpp"
#include "nmrqc/operator_core.hpp"
#include "nmrqc/product_operator.hpp"
#include "nmrqc/pulse_ir.hpp"
#include "nmrqc/spin_simulator.hpp"
#include "nmrqc/verifier.hpp"

namespace {

using nmrqc::Circuit;
using nmrqc::DeviationMatrix;
using nmrqc::LowerOptions;
using nmrqc::PulseSequence;
using nmrqc::VerificationReport;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;

// All quantities are rounded to 12 significant digits at display time, in
// both output modes, so the text and JSON forms show the same numbers.
std::string format_quantity(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

double round_quantity(double x) {
  return std::strtod(format_quantity(x).c_str(), nullptr);
}

// State observables (populations, magnetizations) are reported as physical
// quantities, so rounding dust below the decomposition display threshold is
// shown as the zero it represents.  Verification diagnostics such as
// max-deviation are NOT snapped: there the tiny residual is the datum.
double snap_tiny(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CommonOptions {
  std::string input;
  std::string format = "text";
  std::string hadamard = "tilted";
  std::string z = "zrot";
};

LowerOptions lower_options(const CommonOptions& common) {
  LowerOptions opt;
  opt.hadamard = common.hadamard == "sandwich"
                     ? nmrqc::HadamardStyle::Sandwich
                     : nmrqc::HadamardStyle::Tilted;
  opt.z = common.z == "composite" ? nmrqc::ZStyle::Composite
                                  : nmrqc::ZStyle::ZRot;
  return opt;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool lowering) {
  cmd->add_option("input", common.input,
                  "input file, or '-' for standard input")
      ->required();
  cmd->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  if (lowering) {
    cmd->add_option("--hadamard", common.hadamard,
                    "Hadamard realization style")
        ->check(CLI::IsMember({"tilted", "sandwich"}))
        ->capture_default_str();
    cmd->add_option("--z", common.z, "z-rotation realization")
        ->check(CLI::IsMember({"zrot", "composite"}))
        ->capture_default_str();
  }
}

// ---- compile -----------------------------------------------------------

ordered_json event_to_json(const nmrqc::PulseEvent& event,
                           const nmrqc::JTable* j) {
  ordered_json out;
  if (const auto* rf = std::get_if<nmrqc::RfPulse>(&event)) {
    out["type"] = "pulse";
    out["targets"] = rf->targets;
    if (rf->axis == Eigen::Vector3d{1, 0, 0}) {
      out["axis"] = "x";
    } else if (rf->axis == Eigen::Vector3d{-1, 0, 0}) {
      out["axis"] = "-x";
    } else if (rf->axis == Eigen::Vector3d{0, 1, 0}) {
      out["axis"] = "y";
    } else if (rf->axis == Eigen::Vector3d{0, -1, 0}) {
      out["axis"] = "-y";
    } else {
      out["axis"] = {rf->axis.x(), rf->axis.y(), rf->axis.z()};
    }
    out["flip"] = nmrqc::degrees_from_radians(rf->flip);
  } else if (const auto* z = std::get_if<nmrqc::ZRot>(&event)) {
    out["type"] = "zrot";
    out["target"] = z->target;
    out["angle"] = nmrqc::degrees_from_radians(z->angle);
  } else if (const auto* c = std::get_if<nmrqc::Coupling>(&event)) {
    out["type"] = "couple";
    out["pair"] = {c->pair.first, c->pair.second};
    out["angle"] = nmrqc::degrees_from_radians(c->angle);
    if (j != nullptr) {
      const double hz = j->lookup(c->pair.first, c->pair.second);
      if (hz > 0.0 && c->angle != 0.0) {
        out["j_hz"] = hz;
        out["t_ms"] = round_quantity(std::abs(c->angle) /
                                     (std::numbers::pi * hz) * 1e3);
        if (c->angle < 0.0) out["requires_refocusing"] = true;
      }
    }
  } else if (const auto* cr = std::get_if<nmrqc::Crush>(&event)) {
    out["type"] = "crush";
    out["orders"] = cr->orders;
  }
  return out;
}

int cmd_compile(const CommonOptions& common, bool expand_z,
                const std::string& j_path) {
  const Circuit circuit = nmrqc::parse_circuit(read_input(common.input));
  PulseSequence seq = nmrqc::compile_circuit(circuit, lower_options(common));
  if (expand_z) seq = nmrqc::expand_composite_z(seq);
  std::optional<nmrqc::JTable> j;
  if (!j_path.empty()) j = nmrqc::parse_j_table(read_input(j_path));
  if (common.format == "json") {
    ordered_json out;
    out["spins"] = seq.n;
    out["events"] = ordered_json::array();
    for (const auto& event : seq.events) {
      out["events"].push_back(event_to_json(event, j ? &*j : nullptr));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << nmrqc::serialize(seq, j ? &*j : nullptr);
  }
  return kExitOk;
}

// ---- simulate ----------------------------------------------------------

DeviationMatrix initial_state(const std::string& init, int n) {
  if (init == "thermal") return nmrqc::thermal_state(n);
  if (init == "pseudopure") return nmrqc::pseudo_pure_temporal(n);
  if (init.rfind("ket:", 0) == 0) {
    const std::string bits = init.substr(4);
    if (static_cast<int>(bits.size()) != n) {
      throw std::runtime_error("'" + init + "' does not match " +
                               std::to_string(n) + " qubit(s)");
    }
    return nmrqc::pure_state(bits);
  }
  throw std::runtime_error("unknown initial state '" + init +
                           "' (thermal, pseudopure, or ket:<bits>)");
}

std::string basis_label(int index, int n) {
  std::string bits;
  for (int b = n - 1; b >= 0; --b) bits += ((index >> b) & 1) ? '1' : '0';
  return "|" + bits + ">";
}

void render_state_text(std::ostream& os, const DeviationMatrix& state) {
  const int dim = 1 << state.n;
  os << "populations:\n";
  for (int i = 0; i < dim; ++i) {
    os << "  " << basis_label(i, state.n) << " "
       << format_quantity(snap_tiny(state.rho(i, i).real())) << "\n";
  }
  os << "decomposition:\n";
  for (const auto& [term, coeff] :
       nmrqc::decompose(state.rho, state.n).nonzero()) {
    os << "  " << term.name() << " " << format_quantity(coeff) << "\n";
  }
  os << "magnetization:\n";
  for (int s = 0; s < state.n; ++s) {
    const auto m = nmrqc::magnetization(state, s);
    os << "  q" << s << " Ix=" << format_quantity(snap_tiny(m.x))
       << " Iy=" << format_quantity(snap_tiny(m.y))
       << " Iz=" << format_quantity(snap_tiny(m.z)) << "\n";
  }
}

ordered_json state_to_json(const DeviationMatrix& state) {
  ordered_json out;
  const int dim = 1 << state.n;
  ordered_json populations = ordered_json::array();
  for (int i = 0; i < dim; ++i) {
    populations.push_back(round_quantity(snap_tiny(state.rho(i, i).real())));
  }
  out["populations"] = populations;
  ordered_json decomposition = ordered_json::array();
  for (const auto& [term, coeff] :
       nmrqc::decompose(state.rho, state.n).nonzero()) {
    decomposition.push_back(
        {{"term", term.name()}, {"coefficient", round_quantity(coeff)}});
  }
  out["decomposition"] = decomposition;
  ordered_json magnetization = ordered_json::array();
  for (int s = 0; s < state.n; ++s) {
    const auto m = nmrqc::magnetization(state, s);
    magnetization.push_back({{"spin", s},
                             {"Ix", round_quantity(snap_tiny(m.x))},
                             {"Iy", round_quantity(snap_tiny(m.y))},
                             {"Iz", round_quantity(snap_tiny(m.z))}});
  }
  out["magnetization"] = magnetization;
  return out;
}

int cmd_simulate(const CommonOptions& common, const std::string& init) {
  const Circuit circuit = nmrqc::parse_circuit(read_input(common.input));
  const PulseSequence seq =
      nmrqc::compile_circuit(circuit, lower_options(common));
  const DeviationMatrix state =
      nmrqc::apply_sequence(initial_state(init, circuit.n), seq);
  if (common.format == "json") {
    ordered_json out;
    out["spins"] = state.n;
    out["init"] = init;
    out.update(state_to_json(state));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "spins: " << state.n << "\n" << "init: " << init << "\n";
    render_state_text(std::cout, state);
  }
  return kExitOk;
}

// ---- verify ------------------------------------------------------------

std::string report_line(const VerificationReport& report) {
  std::string out = report.equivalent ? "equivalent" : "not equivalent";
  out += " fidelity=" + format_quantity(report.fidelity);
  if (report.global_phase) {
    out += " phase=" +
           format_quantity(nmrqc::degrees_from_radians(*report.global_phase)) +
           " deg";
  }
  out += " max-deviation=" + format_quantity(report.max_deviation);
  return out;
}

ordered_json report_to_json(const VerificationReport& report) {
  ordered_json out;
  out["id"] = report.id;
  out["equivalent"] = report.equivalent;
  out["fidelity"] = round_quantity(report.fidelity);
  if (report.global_phase) {
    out["phase_deg"] =
        round_quantity(nmrqc::degrees_from_radians(*report.global_phase));
  } else {
    out["phase_deg"] = nullptr;
  }
  out["max_deviation"] = round_quantity(report.max_deviation);
  return out;
}

int cmd_verify(const CommonOptions& common, const std::string& against_path,
               double tol) {
  const Circuit circuit = nmrqc::parse_circuit(read_input(common.input));
  const LowerOptions opt = lower_options(common);
  std::vector<VerificationReport> gate_reports;
  VerificationReport total;
  if (against_path.empty()) {
    for (const auto& g : circuit.gates) {
      gate_reports.push_back(nmrqc::verify_gate(g, circuit.n, opt, tol));
    }
    total = nmrqc::verify_circuit(circuit, opt, tol);
  } else {
    const PulseSequence seq =
        nmrqc::parse_pulse_sequence(read_input(against_path));
    total = nmrqc::verify_against(circuit, seq, tol);
  }
  bool pass = total.equivalent;
  for (const auto& r : gate_reports) pass = pass && r.equivalent;
  if (common.format == "json") {
    ordered_json out;
    out["qubits"] = circuit.n;
    ordered_json gates = ordered_json::array();
    for (const auto& r : gate_reports) gates.push_back(report_to_json(r));
    out["gates"] = gates;
    out["circuit"] = report_to_json(total);
    out["pass"] = pass;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "qubits: " << circuit.n << "\n";
    for (size_t i = 0; i < gate_reports.size(); ++i) {
      std::cout << "gate " << (i + 1) << ": " << gate_reports[i].id << " | "
                << report_line(gate_reports[i]) << "\n";
    }
    std::cout << "circuit: " << report_line(total) << "\n"
              << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---- decompose ---------------------------------------------------------

Eigen::MatrixXcd matrix_from_json(const std::string& text, int& n) {
  const auto doc = nlohmann::json::parse(text);
  n = doc.at("spins").get<int>();
  const auto& rows = doc.at("matrix");
  const int dim = 1 << n;
  if (static_cast<int>(rows.size()) != dim) {
    throw std::runtime_error("matrix must have " + std::to_string(dim) +
                             " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != dim) {
      throw std::runtime_error("matrix row " + std::to_string(i) +
                               " must have " + std::to_string(dim) +
                               " entries");
    }
    for (int j = 0; j < dim; ++j) {
      const auto& entry = row.at(j);
      if (entry.is_array()) {
        // [re, im]
        m(i, j) = nmrqc::Complex(entry.at(0).get<double>(),
                                 entry.at(1).get<double>());
      } else {
        m(i, j) = entry.get<double>();
      }
    }
  }
  return m;
}

int cmd_decompose(const CommonOptions& common, bool with_orders) {
  int n = 0;
  const Eigen::MatrixXcd m = matrix_from_json(read_input(common.input), n);
  const nmrqc::Decomposition d = nmrqc::decompose(m, n);
  if (common.format == "json") {
    ordered_json out;
    out["spins"] = n;
    ordered_json decomposition = ordered_json::array();
    for (const auto& [term, coeff] : d.nonzero()) {
      decomposition.push_back(
          {{"term", term.name()}, {"coefficient", round_quantity(coeff)}});
    }
    out["decomposition"] = decomposition;
    if (with_orders) {
      ordered_json orders = ordered_json::array();
      for (const auto& [order, weight] : nmrqc::coherence_orders(d)) {
        orders.push_back(
            {{"order", order}, {"weight", round_quantity(weight)}});
      }
      out["coherence_orders"] = orders;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "spins: " << n << "\n" << "decomposition:\n";
    for (const auto& [term, coeff] : d.nonzero()) {
      std::cout << "  " << term.name() << " " << format_quantity(coeff)
                << "\n";
    }
    if (with_orders) {
      std::cout << "coherence orders:\n";
      for (const auto& [order, weight] : nmrqc::coherence_orders(d)) {
        std::cout << "  " << order << " " << format_quantity(weight) << "\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nmrqc: quantum circuits to idealized NMR pulse sequences (<= 4 "
      "spins)"};
  app.require_subcommand(1);

  CommonOptions compile_common;
  bool expand_z = false;
  std::string j_path;
  auto* compile =
      app.add_subcommand("compile", "lower a circuit to a pulse sequence");
  add_common(compile, compile_common, /*lowering=*/true);
  compile->add_flag("--expand-z", expand_z,
                    "replace z-rotations by composite pulse sandwiches");
  compile->add_option("--j", j_path,
                      "coupling table (Hz); annotates couple lines with "
                      "delays");

  CommonOptions simulate_common;
  std::string init = "thermal";
  auto* simulate = app.add_subcommand(
      "simulate", "compile a circuit and evolve an initial state");
  add_common(simulate, simulate_common, /*lowering=*/true);
  simulate->add_option("--init", init,
                       "initial state: thermal, pseudopure, or ket:<bits>")
      ->capture_default_str();

  CommonOptions verify_common;
  std::string against_path;
  double tol = nmrqc::kDefaultVerifyTol;
  auto* verify = app.add_subcommand(
      "verify", "check compiled pulses against the ideal gate matrices");
  add_common(verify, verify_common, /*lowering=*/true);
  verify->add_option("--against", against_path,
                     "verify this pulse file instead of the compiled "
                     "sequence");
  verify->add_option("--tol", tol, "equivalence tolerance")
      ->capture_default_str();

  CommonOptions decompose_common;
  bool with_orders = false;
  auto* decompose = app.add_subcommand(
      "decompose", "product-operator decomposition of a Hermitian matrix");
  add_common(decompose, decompose_common, /*lowering=*/false);
  decompose->add_flag("--orders", with_orders,
                      "include the coherence-order histogram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (compile->parsed()) {
      return cmd_compile(compile_common, expand_z, j_path);
    }
    if (simulate->parsed()) return cmd_simulate(simulate_common, init);
    if (verify->parsed()) {
      return cmd_verify(verify_common, against_path, tol);
    }
    if (decompose->parsed()) {
      return cmd_decompose(decompose_common, with_orders);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
