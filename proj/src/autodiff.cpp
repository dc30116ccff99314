#include "qedacvc/autodiff.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "kernels.hpp"
#include "qedacvc/error.hpp"

namespace qedacvc {

namespace {

constexpr double kShift = std::numbers::pi / 2;

enum class OpKind : uint8_t { ry, rz, rxx, ryy, rzz, h, cnot, dense1, dense2 };

struct AngleTerm {
  bool is_input;
  int index;
  double coeff;
};

struct TapeOp {
  OpKind kind;
  int b0 = 0, b1 = 0;  // bit positions
  double const_angle = 0.0;
  std::vector<AngleTerm> terms;
  int dense_slot = -1;  // constant dense pool index
};

struct TapeGroup {
  int first = 0;
  int count = 0;
  bool has_terms = false;
  int gate = -1;
  int bind_dense_slot = -1;  // rebuilt at bind time for expanded composites
  int arity = 1;
  int b0 = 0, b1 = 0;
};

// Where each original gate angle takes its value from.
struct AngleSource {
  bool bound = false;
  bool is_input = false;
  int index = 0;
  double value = 0.0;  // used when unbound
};

}  // namespace

struct CompiledCircuit::Impl {
  ParamCircuit circ;
  std::vector<TapeOp> ops;
  std::vector<TapeGroup> groups;
  std::vector<std::array<cplx, 4>> const_d1;
  std::vector<std::array<cplx, 16>> const_d2;
  std::vector<std::array<AngleSource, 3>> gate_sources;
  int n_bind_dense1 = 0;
  int n_bind_dense2 = 0;

  int bit_of(int wire) const { return circ.n_wires - 1 - wire; }

  void compile();
  void add_rot(OpKind kind, int bit0, int bit1, int gate,
               std::initializer_list<std::pair<int, double>> contributions);

  struct Bound {
    std::vector<double> op_angle;
    std::vector<std::array<cplx, 4>> d1;
    std::vector<std::array<cplx, 16>> d2;
  };
  void bind(std::span<const double> params, std::span<const double> inputs, Bound& out) const;

  void apply_op(std::span<cplx> amp, const TapeOp& op, double angle) const;
  void apply_group(std::span<cplx> amp, const TapeGroup& g, const Bound& bound) const;
  void apply_groups_from(std::span<cplx> amp, size_t gi, const Bound& bound) const;
};

void CompiledCircuit::Impl::add_rot(OpKind kind, int bit0, int bit1, int gate,
                                    std::initializer_list<std::pair<int, double>> contributions) {
  TapeOp op;
  op.kind = kind;
  op.b0 = bit0;
  op.b1 = bit1;
  for (const auto& [angle_index, coeff] : contributions) {
    const AngleSource& src = gate_sources[gate][angle_index];
    if (src.bound) {
      op.terms.push_back({src.is_input, src.index, coeff});
    } else {
      op.const_angle += coeff * src.value;
    }
  }
  ops.push_back(std::move(op));
}

void CompiledCircuit::Impl::compile() {
  circ.validate();
  gate_sources.assign(circ.gates.size(), {});
  for (size_t g = 0; g < circ.gates.size(); ++g) {
    for (int a = 0; a < gate_param_count(circ.gates[g].kind); ++a) {
      gate_sources[g][a] = {false, false, 0, circ.gates[g].params[a]};
    }
  }
  auto bind_source = [&](const std::pair<int, SlotRef>& entry, bool is_input) {
    gate_sources[entry.second.gate][entry.second.angle] = {true, is_input, entry.first, 0.0};
  };
  for (const auto& e : circ.param_slots) bind_source(e, false);
  for (const auto& e : circ.input_slots) bind_source(e, true);

  for (size_t g = 0; g < circ.gates.size(); ++g) {
    const GateSpec& gate = circ.gates[g];
    const int gi = static_cast<int>(g);
    bool any_bound = false;
    for (int a = 0; a < gate_param_count(gate.kind); ++a) any_bound |= gate_sources[g][a].bound;

    TapeGroup group;
    group.first = static_cast<int>(ops.size());
    group.gate = gi;
    group.arity = gate_arity(gate.kind);
    group.b0 = bit_of(gate.wires[0]);
    group.b1 = group.arity == 2 ? bit_of(gate.wires[1]) : 0;

    if (!any_bound) {
      // Fixed gate: H and CNOT keep their fast kernels, everything else
      // becomes one constant dense op.
      TapeOp op;
      op.b0 = group.b0;
      op.b1 = group.b1;
      switch (gate.kind) {
        case GateKind::H:
          op.kind = OpKind::h;
          break;
        case GateKind::CNOT:
          op.kind = OpKind::cnot;
          break;
        default: {
          const auto m = gate.matrix();
          if (group.arity == 1) {
            op.kind = OpKind::dense1;
            op.dense_slot = static_cast<int>(const_d1.size());
            std::array<cplx, 4> a;
            std::copy_n(m.begin(), 4, a.begin());
            const_d1.push_back(a);
          } else {
            op.kind = OpKind::dense2;
            op.dense_slot = static_cast<int>(const_d2.size());
            std::array<cplx, 16> a;
            std::copy_n(m.begin(), 16, a.begin());
            const_d2.push_back(a);
          }
        }
      }
      ops.push_back(std::move(op));
    } else {
      switch (gate.kind) {
        case GateKind::RY:
          add_rot(OpKind::ry, group.b0, 0, gi, {{0, 1.0}});
          break;
        case GateKind::RXX:
          add_rot(OpKind::rxx, group.b0, group.b1, gi, {{0, 1.0}});
          break;
        case GateKind::RYY:
          add_rot(OpKind::ryy, group.b0, group.b1, gi, {{0, 1.0}});
          break;
        case GateKind::RZZ:
          add_rot(OpKind::rzz, group.b0, group.b1, gi, {{0, 1.0}});
          break;
        case GateKind::U3: {
          // U3(theta, phi, lambda) = phase * RZ(phi) RY(theta) RZ(lambda)
          const int t = group.b0;
          add_rot(OpKind::rz, t, 0, gi, {{2, 1.0}});
          add_rot(OpKind::ry, t, 0, gi, {{0, 1.0}});
          add_rot(OpKind::rz, t, 0, gi, {{1, 1.0}});
          group.bind_dense_slot = n_bind_dense1++;
          break;
        }
        case GateKind::CU3: {
          // Controlled version via half-angle rotations conjugated by CNOTs,
          // plus an RZ on the control carrying the (phi + lambda)/2 phase.
          const int c = group.b0, t = group.b1;
          auto cnot = [&] {
            TapeOp op;
            op.kind = OpKind::cnot;
            op.b0 = c;
            op.b1 = t;
            ops.push_back(std::move(op));
          };
          add_rot(OpKind::rz, t, 0, gi, {{2, 0.5}});
          cnot();
          add_rot(OpKind::rz, t, 0, gi, {{2, -0.5}});
          cnot();
          add_rot(OpKind::ry, t, 0, gi, {{0, 0.5}});
          cnot();
          add_rot(OpKind::ry, t, 0, gi, {{0, -0.5}});
          cnot();
          add_rot(OpKind::rz, t, 0, gi, {{1, 0.5}});
          cnot();
          add_rot(OpKind::rz, t, 0, gi, {{1, -0.5}});
          cnot();
          add_rot(OpKind::rz, c, 0, gi, {{1, 0.5}, {2, 0.5}});
          group.bind_dense_slot = n_bind_dense2++;
          break;
        }
        default:
          raise(errc::differentiation,
                std::string("gate ") + gate_name(gate.kind) + " has a bound angle but no shift rule");
      }
      group.has_terms = true;
    }
    group.count = static_cast<int>(ops.size()) - group.first;
    groups.push_back(group);
  }
}

void CompiledCircuit::Impl::bind(std::span<const double> params, std::span<const double> inputs,
                                 Bound& out) const {
  if (static_cast<int>(params.size()) != circ.n_params) {
    raise(errc::shape, "expected " + std::to_string(circ.n_params) + " parameters, got " +
                           std::to_string(params.size()));
  }
  if (static_cast<int>(inputs.size()) != circ.n_inputs) {
    raise(errc::shape, "expected " + std::to_string(circ.n_inputs) + " inputs, got " +
                           std::to_string(inputs.size()));
  }
  out.op_angle.resize(ops.size());
  for (size_t i = 0; i < ops.size(); ++i) {
    double a = ops[i].const_angle;
    for (const auto& t : ops[i].terms) a += t.coeff * (t.is_input ? inputs[t.index] : params[t.index]);
    out.op_angle[i] = a;
  }
  out.d1.resize(n_bind_dense1);
  out.d2.resize(n_bind_dense2);
  for (const auto& g : groups) {
    if (g.bind_dense_slot < 0) continue;
    GateSpec gate = circ.gates[g.gate];
    for (int a = 0; a < gate_param_count(gate.kind); ++a) {
      const AngleSource& src = gate_sources[g.gate][a];
      if (src.bound) gate.params[a] = src.is_input ? inputs[src.index] : params[src.index];
    }
    const auto m = gate.matrix();
    if (g.arity == 1) {
      std::copy_n(m.begin(), 4, out.d1[g.bind_dense_slot].begin());
    } else {
      std::copy_n(m.begin(), 16, out.d2[g.bind_dense_slot].begin());
    }
  }
}

void CompiledCircuit::Impl::apply_op(std::span<cplx> amp, const TapeOp& op, double angle) const {
  switch (op.kind) {
    case OpKind::ry: detail::apply_ry(amp, op.b0, angle); break;
    case OpKind::rz: detail::apply_rz(amp, op.b0, angle); break;
    case OpKind::rxx: detail::apply_rxx(amp, op.b0, op.b1, angle); break;
    case OpKind::ryy: detail::apply_ryy(amp, op.b0, op.b1, angle); break;
    case OpKind::rzz: detail::apply_rzz(amp, op.b0, op.b1, angle); break;
    case OpKind::h: detail::apply_h(amp, op.b0); break;
    case OpKind::cnot: detail::apply_cnot(amp, op.b0, op.b1); break;
    case OpKind::dense1: detail::apply1(amp, op.b0, const_d1[op.dense_slot]); break;
    case OpKind::dense2: detail::apply2(amp, op.b0, op.b1, const_d2[op.dense_slot]); break;
  }
}

void CompiledCircuit::Impl::apply_group(std::span<cplx> amp, const TapeGroup& g,
                                        const Bound& bound) const {
  if (g.bind_dense_slot >= 0) {
    // The dense composite differs from its expansion by a global phase only.
    if (g.arity == 1) {
      detail::apply1(amp, g.b0, bound.d1[g.bind_dense_slot]);
    } else {
      detail::apply2(amp, g.b0, g.b1, bound.d2[g.bind_dense_slot]);
    }
    return;
  }
  for (int j = g.first; j < g.first + g.count; ++j) apply_op(amp, ops[j], bound.op_angle[j]);
}

void CompiledCircuit::Impl::apply_groups_from(std::span<cplx> amp, size_t gi,
                                              const Bound& bound) const {
  for (size_t k = gi; k < groups.size(); ++k) apply_group(amp, groups[k], bound);
}

CompiledCircuit::CompiledCircuit(ParamCircuit circuit) : impl_(std::make_unique<Impl>()) {
  impl_->circ = std::move(circuit);
  impl_->compile();
}

CompiledCircuit::CompiledCircuit(CompiledCircuit&&) noexcept = default;
CompiledCircuit& CompiledCircuit::operator=(CompiledCircuit&&) noexcept = default;
CompiledCircuit::~CompiledCircuit() = default;

const ParamCircuit& CompiledCircuit::circuit() const { return impl_->circ; }

namespace {

std::vector<int> obs_bits(const ParamCircuit& c, std::span<const int> wires) {
  std::vector<int> bits;
  bits.reserve(wires.size());
  for (int w : wires) {
    if (w < 0 || w >= c.n_wires) raise(errc::wiring, "observable wire out of range");
    bits.push_back(c.n_wires - 1 - w);
  }
  return bits;
}

}  // namespace

std::vector<double> CompiledCircuit::run(std::span<const double> params,
                                         std::span<const double> inputs,
                                         std::span<const int> observable_wires) const {
  Impl::Bound bound;
  impl_->bind(params, inputs, bound);
  std::vector<cplx> amp(size_t{1} << impl_->circ.n_wires, cplx(0, 0));
  amp[0] = cplx(1, 0);
  impl_->apply_groups_from(amp, 0, bound);
  const auto bits = obs_bits(impl_->circ, observable_wires);
  std::vector<double> out(bits.size());
  detail::expect_z_multi(amp, bits, out);
  return out;
}

CircuitGrads CompiledCircuit::jacobians(std::span<const double> params,
                                        std::span<const double> inputs,
                                        std::span<const int> observable_wires, bool want_params,
                                        bool want_inputs) const {
  const Impl& im = *impl_;
  Impl::Bound bound;
  im.bind(params, inputs, bound);
  const auto bits = obs_bits(im.circ, observable_wires);
  const int n_obs = static_cast<int>(bits.size());

  CircuitGrads out;
  out.by_param = GradMatrix(n_obs, im.circ.n_params);
  out.by_input = GradMatrix(n_obs, im.circ.n_inputs);

  const size_t dim = size_t{1} << im.circ.n_wires;
  std::vector<cplx> state(dim, cplx(0, 0));
  state[0] = cplx(1, 0);
  std::vector<cplx> base(dim), branch(dim);
  std::vector<double> fplus(n_obs), fminus(n_obs);

  auto selected = [&](const TapeOp& op) {
    for (const auto& t : op.terms) {
      if (t.is_input ? want_inputs : want_params) return true;
    }
    return false;
  };

  for (size_t gi = 0; gi < im.groups.size(); ++gi) {
    const TapeGroup& g = im.groups[gi];
    if (g.has_terms) {
      for (int j = g.first; j < g.first + g.count; ++j) {
        const TapeOp& op = im.ops[j];
        if (op.terms.empty() || !selected(op)) continue;
        base = state;
        for (int k = g.first; k < j; ++k) im.apply_op(base, im.ops[k], bound.op_angle[k]);
        for (int sign = 0; sign < 2; ++sign) {
          branch = base;
          const double shifted = bound.op_angle[j] + (sign == 0 ? kShift : -kShift);
          im.apply_op(branch, op, shifted);
          for (int k = j + 1; k < g.first + g.count; ++k) {
            im.apply_op(branch, im.ops[k], bound.op_angle[k]);
          }
          im.apply_groups_from(branch, gi + 1, bound);
          detail::expect_z_multi(branch, bits, sign == 0 ? fplus : fminus);
        }
        for (const auto& t : op.terms) {
          GradMatrix& m = t.is_input ? out.by_input : out.by_param;
          if (t.is_input ? !want_inputs : !want_params) continue;
          for (int o = 0; o < n_obs; ++o) {
            m.at(o, t.index) += t.coeff * 0.5 * (fplus[o] - fminus[o]);
          }
        }
      }
    }
    im.apply_group(state, g, bound);
  }

  out.values.resize(n_obs);
  detail::expect_z_multi(state, bits, out.values);
  return out;
}

GradMatrix param_shift_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires) {
  CompiledCircuit cc(c);
  return cc.jacobians(params, inputs, observable_wires, true, false).by_param;
}

GradMatrix input_shift_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires) {
  CompiledCircuit cc(c);
  return cc.jacobians(params, inputs, observable_wires, false, true).by_input;
}

GradMatrix finite_diff_grad(const ParamCircuit& c, std::span<const double> params,
                            std::span<const double> inputs,
                            std::span<const int> observable_wires, double step) {
  if (!(step > 0)) raise(errc::config, "finite-difference step must be positive");
  c.validate();
  GradMatrix out(static_cast<int>(observable_wires.size()), c.n_params);
  std::vector<double> p(params.begin(), params.end());
  for (int i = 0; i < c.n_params; ++i) {
    p[i] = params[i] + step;
    const auto fp = circuit_expectations(c, p, inputs, observable_wires);
    p[i] = params[i] - step;
    const auto fm = circuit_expectations(c, p, inputs, observable_wires);
    p[i] = params[i];
    for (int o = 0; o < out.rows; ++o) out.at(o, i) = (fp[o] - fm[o]) / (2 * step);
  }
  return out;
}

}  // namespace qedacvc
