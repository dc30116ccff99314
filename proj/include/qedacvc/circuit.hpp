#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qedacvc/statevector.hpp"

namespace qedacvc {

// Addresses one angle of one gate inside a circuit.
struct SlotRef {
  int gate = 0;
  int angle = 0;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

// Ordered gate list plus registries binding trainable parameters and
// data-encoding inputs to gate angles. One parameter may feed several slots
// (weight sharing); each slot is bound at most once. Replaying with the same
// vectors is bit-identical.
struct ParamCircuit {
  int n_wires = 0;
  std::vector<GateSpec> gates;
  std::vector<std::pair<int, SlotRef>> param_slots;
  std::vector<std::pair<int, SlotRef>> input_slots;
  int n_params = 0;
  int n_inputs = 0;

  void add_gate(GateSpec g) { gates.push_back(std::move(g)); }
  void bind_param(int param_index, SlotRef slot);
  void bind_input(int input_index, SlotRef slot);
  void validate() const;
};

// Binds angles into slots and applies the gates in order. This path goes
// through GateSpec::matrix and StateVector::apply only, independent of the
// compiled gradient tape.
StateVector run_circuit(const ParamCircuit& c, std::span<const double> params,
                        std::span<const double> inputs, StateVector state0);

// Convenience: run from |0...0> and read <Z> on the given wires.
std::vector<double> circuit_expectations(const ParamCircuit& c, std::span<const double> params,
                                         std::span<const double> inputs,
                                         std::span<const int> observable_wires);

}  // namespace qedacvc
