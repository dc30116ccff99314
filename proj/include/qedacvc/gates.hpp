#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qedacvc {

using cplx = std::complex<double>;

enum class GateKind : uint8_t { U3, RY, H, CNOT, RXX, RYY, RZZ, CU3 };

int gate_arity(GateKind k);
int gate_param_count(GateKind k);
const char* gate_name(GateKind k);

// One named unitary bound to target wires. Angle lists are radians:
// 3 for U3/CU3, 1 for RY and the Ising couplings, 0 for H/CNOT.
// Two-wire gates with a control list the control wire first (CNOT, CU3).
struct GateSpec {
  GateKind kind = GateKind::H;
  std::vector<double> params;
  std::vector<int> wires;

  // Dense row-major matrix, 2x2 or 4x4 depending on arity. For two-wire
  // gates the first listed wire is the high bit of the 4-dim basis.
  std::vector<cplx> matrix() const;
};

// Validates arity and parameter count against the kind.
GateSpec build_gate(GateKind kind, std::vector<double> params, std::vector<int> wires);

}  // namespace qedacvc
