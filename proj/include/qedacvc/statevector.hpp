#pragma once

#include <span>
#include <vector>

#include "qedacvc/gates.hpp"

namespace qedacvc {

inline constexpr int kMaxWires = 10;

// Dense statevector over up to kMaxWires qubit wires. Wire 0 is the most
// significant bit of the basis index. Wires can be removed from the active
// set (deferred-measurement discard): amplitudes are untouched but the wire
// may no longer carry gates or be measured.
class StateVector {
public:
  explicit StateVector(int n_wires);  // |0...0>, all wires active

  int n_wires() const { return n_wires_; }
  const std::vector<int>& active_wires() const { return active_; }
  std::span<const cplx> amplitudes() const { return amp_; }
  std::span<cplx> mutable_amplitudes() { return amp_; }

  bool is_active(int wire) const;
  int bit_of(int wire) const { return n_wires_ - 1 - wire; }

  void apply(const GateSpec& gate);
  double expectation_z(int wire) const;
  void deactivate(int wire);
  double norm() const;

private:
  void require_active(int wire, const char* what) const;

  int n_wires_;
  std::vector<int> active_;
  std::vector<cplx> amp_;
};

// Value-semantics wrappers over the in-place operations.
StateVector new_state(int n_wires);
StateVector apply_gate(StateVector state, const GateSpec& gate);
StateVector deactivate_wire(StateVector state, int wire);
double expectation_z(const StateVector& state, int wire);

}  // namespace qedacvc
