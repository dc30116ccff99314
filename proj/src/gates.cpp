#include "qedacvc/gates.hpp"

#include <cmath>
#include <string>

#include "qedacvc/error.hpp"

namespace qedacvc {

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::U3:
    case GateKind::RY:
    case GateKind::H:
      return 1;
    default:
      return 2;
  }
}

int gate_param_count(GateKind k) {
  switch (k) {
    case GateKind::U3:
    case GateKind::CU3:
      return 3;
    case GateKind::RY:
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
      return 1;
    default:
      return 0;
  }
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::U3: return "U3";
    case GateKind::RY: return "RY";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CU3: return "CU3";
  }
  return "?";
}

namespace {

std::vector<cplx> u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {
      cplx(c, 0.0), -std::polar(s, lambda),
      std::polar(s, phi), std::polar(c, phi + lambda),
  };
}

}  // namespace

std::vector<cplx> GateSpec::matrix() const {
  const cplx one(1.0, 0.0), zero(0.0, 0.0);
  switch (kind) {
    case GateKind::U3:
      return u3_matrix(params[0], params[1], params[2]);
    case GateKind::RY: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {cplx(r, 0), cplx(r, 0), cplx(r, 0), cplx(-r, 0)};
    }
    case GateKind::CNOT:
      return {one, zero, zero, zero,  zero, one, zero, zero,
              zero, zero, zero, one,  zero, zero, one, zero};
    case GateKind::RXX: {
      const cplx c(std::cos(params[0] / 2), 0.0);
      const cplx ms(0.0, -std::sin(params[0] / 2));
      return {c, zero, zero, ms,  zero, c, ms, zero,
              zero, ms, c, zero,  ms, zero, zero, c};
    }
    case GateKind::RYY: {
      const cplx c(std::cos(params[0] / 2), 0.0);
      const cplx ms(0.0, -std::sin(params[0] / 2));
      const cplx ps(0.0, std::sin(params[0] / 2));
      return {c, zero, zero, ps,  zero, c, ms, zero,
              zero, ms, c, zero,  ps, zero, zero, c};
    }
    case GateKind::RZZ: {
      const cplx e0 = std::polar(1.0, -params[0] / 2);
      const cplx e1 = std::polar(1.0, params[0] / 2);
      return {e0, zero, zero, zero,  zero, e1, zero, zero,
              zero, zero, e1, zero,  zero, zero, zero, e0};
    }
    case GateKind::CU3: {
      auto u = u3_matrix(params[0], params[1], params[2]);
      return {one, zero, zero, zero,  zero, one, zero, zero,
              zero, zero, u[0], u[1],  zero, zero, u[2], u[3]};
    }
  }
  raise(errc::config, "unknown gate kind");
}

GateSpec build_gate(GateKind kind, std::vector<double> params, std::vector<int> wires) {
  const int arity = gate_arity(kind);
  if (static_cast<int>(wires.size()) != arity) {
    raise(errc::config, std::string(gate_name(kind)) + ": expected " + std::to_string(arity) +
                            " wire(s), got " + std::to_string(wires.size()));
  }
  if (static_cast<int>(params.size()) != gate_param_count(kind)) {
    raise(errc::config, std::string(gate_name(kind)) + ": expected " +
                            std::to_string(gate_param_count(kind)) + " angle(s), got " +
                            std::to_string(params.size()));
  }
  if (arity == 2 && wires[0] == wires[1]) {
    raise(errc::config, std::string(gate_name(kind)) + ": wires must be distinct");
  }
  GateSpec g;
  g.kind = kind;
  g.params = std::move(params);
  g.wires = std::move(wires);
  return g;
}

}  // namespace qedacvc
