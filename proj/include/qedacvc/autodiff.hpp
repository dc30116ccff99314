#pragma once

#include <memory>
#include <span>
#include <vector>

#include "qedacvc/circuit.hpp"

namespace qedacvc {

// Row-major dense matrix, rows = observables, cols = parameters or inputs.
struct GradMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  GradMatrix() = default;
  GradMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

struct CircuitGrads {
  std::vector<double> values;  // <Z> per observable at the unshifted angles
  GradMatrix by_param;         // observables x n_params
  GradMatrix by_input;         // observables x n_inputs
};

// A ParamCircuit compiled for the two-term pi/2 shift rule. Composite gates
// with bound angles are expanded into rotations whose generators have
// eigenvalues +-1/2 (U3 -> RZ RY RZ, CU3 -> CNOT-conjugated half-angle
// rotations plus a control phase), so every shifted evaluation is exact.
// Compile once, evaluate many times.
class CompiledCircuit {
public:
  explicit CompiledCircuit(ParamCircuit circuit);
  CompiledCircuit(CompiledCircuit&&) noexcept;
  CompiledCircuit& operator=(CompiledCircuit&&) noexcept;
  ~CompiledCircuit();

  const ParamCircuit& circuit() const;

  std::vector<double> run(std::span<const double> params, std::span<const double> inputs,
                          std::span<const int> observable_wires) const;

  CircuitGrads jacobians(std::span<const double> params, std::span<const double> inputs,
                         std::span<const int> observable_wires, bool want_params = true,
                         bool want_inputs = true) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Exact gradient of the wire-wise <Z> readout by the parameter-shift rule:
// entry (o, p) = (f(theta_p + pi/2) - f(theta_p - pi/2)) / 2 summed over the
// slots the parameter feeds.
GradMatrix param_shift_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires);

// Same rule applied to the data-encoding angles.
GradMatrix input_shift_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires);

// Central finite differences over the forward path only; the test oracle for
// the shift rule.
GradMatrix finite_diff_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires, double step);

}  // namespace qedacvc
