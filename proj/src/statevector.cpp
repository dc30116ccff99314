#include "qedacvc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels.hpp"
#include "qedacvc/error.hpp"

namespace qedacvc {

StateVector::StateVector(int n_wires) : n_wires_(n_wires) {
  if (n_wires < 1 || n_wires > kMaxWires) {
    raise(errc::config, "wire count must be in [1, " + std::to_string(kMaxWires) + "], got " +
                            std::to_string(n_wires));
  }
  active_.resize(n_wires);
  for (int w = 0; w < n_wires; ++w) active_[w] = w;
  amp_.assign(size_t{1} << n_wires, cplx(0.0, 0.0));
  amp_[0] = cplx(1.0, 0.0);
}

bool StateVector::is_active(int wire) const {
  return std::find(active_.begin(), active_.end(), wire) != active_.end();
}

void StateVector::require_active(int wire, const char* what) const {
  if (wire < 0 || wire >= n_wires_) {
    raise(errc::wiring, std::string(what) + ": wire " + std::to_string(wire) + " out of range");
  }
  if (!is_active(wire)) {
    raise(errc::wiring, std::string(what) + ": wire " + std::to_string(wire) + " is not active");
  }
}

void StateVector::apply(const GateSpec& gate) {
  for (int w : gate.wires) require_active(w, gate_name(gate.kind));
  const auto m = gate.matrix();
  if (gate.wires.size() == 1) {
    std::array<cplx, 4> m2;
    std::copy_n(m.begin(), 4, m2.begin());
    detail::apply1(amp_, bit_of(gate.wires[0]), m2);
  } else {
    std::array<cplx, 16> m4;
    std::copy_n(m.begin(), 16, m4.begin());
    detail::apply2(amp_, bit_of(gate.wires[0]), bit_of(gate.wires[1]), m4);
  }
}

double StateVector::expectation_z(int wire) const {
  require_active(wire, "expectation_z");
  return detail::expect_z(amp_, bit_of(wire));
}

void StateVector::deactivate(int wire) {
  require_active(wire, "deactivate");
  active_.erase(std::remove(active_.begin(), active_.end(), wire), active_.end());
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector new_state(int n_wires) { return StateVector(n_wires); }

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  state.apply(gate);
  return state;
}

StateVector deactivate_wire(StateVector state, int wire) {
  state.deactivate(wire);
  return state;
}

double expectation_z(const StateVector& state, int wire) { return state.expectation_z(wire); }

}  // namespace qedacvc
