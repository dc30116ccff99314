#include "qedacvc/circuit.hpp"

#include <set>
#include <string>

#include "qedacvc/error.hpp"

namespace qedacvc {

void ParamCircuit::bind_param(int param_index, SlotRef slot) {
  param_slots.emplace_back(param_index, slot);
  if (param_index >= n_params) n_params = param_index + 1;
}

void ParamCircuit::bind_input(int input_index, SlotRef slot) {
  input_slots.emplace_back(input_index, slot);
  if (input_index >= n_inputs) n_inputs = input_index + 1;
}

void ParamCircuit::validate() const {
  std::set<std::pair<int, int>> seen;
  auto check = [&](const std::pair<int, SlotRef>& entry, const char* what) {
    const auto& [index, slot] = entry;
    if (index < 0) raise(errc::config, std::string(what) + " index is negative");
    if (slot.gate < 0 || slot.gate >= static_cast<int>(gates.size())) {
      raise(errc::config, std::string(what) + " slot addresses missing gate " +
                              std::to_string(slot.gate));
    }
    const auto& g = gates[slot.gate];
    if (slot.angle < 0 || slot.angle >= gate_param_count(g.kind)) {
      raise(errc::config, std::string(what) + " slot addresses missing angle " +
                              std::to_string(slot.angle) + " of gate " + gate_name(g.kind));
    }
    if (!seen.insert({slot.gate, slot.angle}).second) {
      raise(errc::config, std::string(what) + " slot (" + std::to_string(slot.gate) + ", " +
                              std::to_string(slot.angle) + ") is bound twice");
    }
  };
  for (const auto& e : param_slots) check(e, "param");
  for (const auto& e : input_slots) check(e, "input");
  for (const auto& g : gates) {
    for (int w : g.wires) {
      if (w < 0 || w >= n_wires) {
        raise(errc::wiring, std::string(gate_name(g.kind)) + " addresses wire " +
                                std::to_string(w) + " outside a " + std::to_string(n_wires) +
                                "-wire circuit");
      }
    }
  }
}

StateVector run_circuit(const ParamCircuit& c, std::span<const double> params,
                        std::span<const double> inputs, StateVector state0) {
  if (static_cast<int>(params.size()) != c.n_params) {
    raise(errc::shape, "expected " + std::to_string(c.n_params) + " parameters, got " +
                           std::to_string(params.size()));
  }
  if (static_cast<int>(inputs.size()) != c.n_inputs) {
    raise(errc::shape, "expected " + std::to_string(c.n_inputs) + " inputs, got " +
                           std::to_string(inputs.size()));
  }
  auto gates = c.gates;
  for (const auto& [index, slot] : c.param_slots) gates[slot.gate].params[slot.angle] = params[index];
  for (const auto& [index, slot] : c.input_slots) gates[slot.gate].params[slot.angle] = inputs[index];
  for (const auto& g : gates) state0.apply(g);
  return state0;
}

std::vector<double> circuit_expectations(const ParamCircuit& c, std::span<const double> params,
                                         std::span<const double> inputs,
                                         std::span<const int> observable_wires) {
  StateVector s = run_circuit(c, params, inputs, StateVector(c.n_wires));
  std::vector<double> out;
  out.reserve(observable_wires.size());
  for (int w : observable_wires) out.push_back(s.expectation_z(w));
  return out;
}

}  // namespace qedacvc
