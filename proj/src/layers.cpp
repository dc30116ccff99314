#include "qedacvc/layers.hpp"

#include <cmath>
#include <string>

#include "qedacvc/error.hpp"

namespace qedacvc {

void CircuitFragment::bind_param(int index, SlotRef slot) {
  param_slots.emplace_back(index, slot);
  if (index >= n_params) n_params = index + 1;
}

void CircuitFragment::bind_input(int index, SlotRef slot) {
  input_slots.emplace_back(index, slot);
  if (index >= n_inputs) n_inputs = index + 1;
}

void append_fragment(ParamCircuit& c, const CircuitFragment& f, int param_offset,
                     int input_offset) {
  const int gate_offset = static_cast<int>(c.gates.size());
  for (const auto& g : f.gates) c.gates.push_back(g);
  for (const auto& [index, slot] : f.param_slots) {
    c.bind_param(index + param_offset, {slot.gate + gate_offset, slot.angle});
  }
  for (const auto& [index, slot] : f.input_slots) {
    c.bind_input(index + input_offset, {slot.gate + gate_offset, slot.angle});
  }
}

std::vector<std::pair<int, int>> conv_pairs(std::span<const int> active) {
  const int k = static_cast<int>(active.size());
  if (k < 2) raise(errc::architecture, "convolution needs at least 2 active wires");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < k; i += 2) pairs.emplace_back(active[i], active[i + 1]);
  for (int i = 1; i < k; i += 2) {
    if (i + 1 < k) {
      pairs.emplace_back(active[i], active[i + 1]);
    } else if (k % 2 == 0) {
      pairs.emplace_back(active[i], active[0]);  // circular wrap
    }
  }
  return pairs;
}

std::vector<std::pair<int, int>> pool_pairs(std::span<const int> active) {
  const int k = static_cast<int>(active.size());
  if (k < 2 || k % 2 != 0) {
    raise(errc::architecture,
          "pooling needs an even active wire count, got " + std::to_string(k));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; i += 2) pairs.emplace_back(active[i], active[i + 1]);
  return pairs;
}

CircuitFragment encode_fragment(std::span<const int> wires) {
  CircuitFragment f;
  for (size_t i = 0; i < wires.size(); ++i) {
    f.add(build_gate(GateKind::RY, {0.0}, {wires[i]}));
    f.bind_input(static_cast<int>(i), {static_cast<int>(f.gates.size()) - 1, 0});
  }
  return f;
}

namespace {

void add_u3(CircuitFragment& f, int wire, int p0) {
  f.add(build_gate(GateKind::U3, {0.0, 0.0, 0.0}, {wire}));
  const int g = static_cast<int>(f.gates.size()) - 1;
  f.bind_param(p0, {g, 0});
  f.bind_param(p0 + 1, {g, 1});
  f.bind_param(p0 + 2, {g, 2});
}

void add_ising(CircuitFragment& f, int a, int b, int p0) {
  for (GateKind kind : {GateKind::RXX, GateKind::RYY, GateKind::RZZ}) {
    f.add(build_gate(kind, {0.0}, {a, b}));
    f.bind_param(p0++, {static_cast<int>(f.gates.size()) - 1, 0});
  }
}

}  // namespace

CircuitFragment conv_fragment(std::span<const int> active) {
  CircuitFragment f;
  for (const auto& [a, b] : conv_pairs(active)) {
    add_u3(f, a, 0);
    add_u3(f, b, 3);
    add_ising(f, a, b, 6);
    add_u3(f, a, 9);
    add_u3(f, b, 12);
  }
  f.n_params = 15;
  return f;
}

CircuitFragment pool_fragment(std::span<const int> active) {
  CircuitFragment f;
  for (const auto& [keep, drop] : pool_pairs(active)) {
    f.add(build_gate(GateKind::CU3, {0.0, 0.0, 0.0}, {drop, keep}));
    const int g = static_cast<int>(f.gates.size()) - 1;
    f.bind_param(0, {g, 0});
    f.bind_param(1, {g, 1});
    f.bind_param(2, {g, 2});
  }
  f.n_params = 3;
  return f;
}

CircuitFragment dense_fragment(std::span<const int> active) {
  const int k = static_cast<int>(active.size());
  CircuitFragment f;
  switch (k) {
    case 1:
      add_u3(f, active[0], 0);
      break;
    case 2: {
      add_u3(f, active[0], 0);
      add_u3(f, active[1], 3);
      add_ising(f, active[0], active[1], 6);
      add_u3(f, active[0], 9);
      add_u3(f, active[1], 12);
      break;
    }
    case 3: {
      int p = 0;
      for (int w = 0; w < 3; ++w, p += 3) add_u3(f, active[w], p);
      for (int round = 0; round < 3; ++round) {
        add_ising(f, active[0], active[1], p);
        p += 3;
        add_ising(f, active[1], active[2], p);
        p += 3;
        add_ising(f, active[0], active[2], p);
        p += 3;
        for (int w = 0; w < 3; ++w, p += 3) add_u3(f, active[w], p);
      }
      break;
    }
    default:
      raise(errc::architecture,
            "dense layer supports 1 to 3 active wires, got " + std::to_string(k));
  }
  return f;
}

CircuitFragment projection_fragment(int n_wires) {
  std::vector<int> wires(n_wires);
  for (int i = 0; i < n_wires; ++i) wires[i] = i;
  CircuitFragment f = encode_fragment(wires);
  for (int i = 0; i < n_wires; ++i) add_u3(f, i, 3 * i);
  return f;
}

CircuitFragment variational_fragment(int n_wires) {
  std::vector<int> wires(n_wires);
  for (int i = 0; i < n_wires; ++i) wires[i] = i;
  CircuitFragment f = encode_fragment(wires);
  for (int i = 0; i < n_wires; ++i) f.add(build_gate(GateKind::H, {}, {i}));
  for (int i = 0; i < n_wires; ++i) {
    f.add(build_gate(GateKind::RY, {0.0}, {i}));
    f.bind_param(i, {static_cast<int>(f.gates.size()) - 1, 0});
  }
  for (int i = 0; i + 1 < n_wires; ++i) f.add(build_gate(GateKind::CNOT, {}, {i, i + 1}));
  return f;
}

namespace {

// Binds fragment-local parameters/inputs and applies the gates in order.
void apply_fragment(StateVector& state, const CircuitFragment& f, std::span<const double> params,
                    std::span<const double> inputs) {
  if (static_cast<int>(params.size()) != f.n_params) {
    raise(errc::shape, "fragment expects " + std::to_string(f.n_params) + " parameters, got " +
                           std::to_string(params.size()));
  }
  if (static_cast<int>(inputs.size()) != f.n_inputs) {
    raise(errc::shape, "fragment expects " + std::to_string(f.n_inputs) + " inputs, got " +
                           std::to_string(inputs.size()));
  }
  auto gates = f.gates;
  for (const auto& [i, slot] : f.param_slots) gates[slot.gate].params[slot.angle] = params[i];
  for (const auto& [i, slot] : f.input_slots) gates[slot.gate].params[slot.angle] = inputs[i];
  for (const auto& g : gates) state.apply(g);
}

}  // namespace

StateVector angle_encode(std::span<const double> features, int n_wires) {
  if (static_cast<int>(features.size()) != n_wires) {
    raise(errc::shape, "angle encoding expects " + std::to_string(n_wires) + " features, got " +
                           std::to_string(features.size()));
  }
  StateVector state(n_wires);
  std::vector<int> wires(n_wires);
  for (int i = 0; i < n_wires; ++i) wires[i] = i;
  apply_fragment(state, encode_fragment(wires), {}, features);
  return state;
}

StateVector qconv_layer(StateVector state, const ConvBlockParams& params) {
  apply_fragment(state, conv_fragment(state.active_wires()), params.angles, {});
  return state;
}

StateVector qpool_layer(StateVector state, const PoolParams& params) {
  const auto pairs = pool_pairs(state.active_wires());
  apply_fragment(state, pool_fragment(state.active_wires()), params.angles, {});
  for (const auto& [keep, drop] : pairs) state.deactivate(drop);
  return state;
}

StateVector qdense(StateVector state, std::span<const double> params) {
  apply_fragment(state, dense_fragment(state.active_wires()), params, {});
  return state;
}

std::vector<double> qvariational(std::span<const double> features,
                                 const VariationalParams& params) {
  const int n = static_cast<int>(features.size());
  if (static_cast<int>(params.angles.size()) != n) {
    raise(errc::shape, "variational layer expects one angle per wire");
  }
  StateVector state(n);
  apply_fragment(state, variational_fragment(n), params.angles, features);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = state.expectation_z(i);
  return out;
}

VecSeq attention_mix(const VecSeq& queries, const VecSeq& keys, const VecSeq& values,
                     const Mask& mask, VecSeq* weights_out) {
  const size_t t_count = queries.size();
  if (keys.size() != t_count || values.size() != t_count || mask.size() != t_count) {
    raise(errc::shape, "attention inputs must have one entry per token");
  }
  const size_t d = queries.empty() ? 0 : queries[0].size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  bool any_unmasked = false;
  for (auto m : mask) any_unmasked |= (m == 0);
  if (!any_unmasked) raise(errc::attention, "every attention position is masked");

  VecSeq outputs(t_count, Vec(d, 0.0));
  if (weights_out) weights_out->assign(t_count, Vec(t_count, 0.0));

  std::vector<double> scores(t_count);
  for (size_t t = 0; t < t_count; ++t) {
    double best = -1e300;
    for (size_t u = 0; u < t_count; ++u) {
      if (mask[u]) continue;
      double s = 0;
      for (size_t i = 0; i < d; ++i) s += queries[t][i] * keys[u][i];
      scores[u] = s * scale;
      best = std::max(best, scores[u]);
    }
    double z = 0;
    for (size_t u = 0; u < t_count; ++u) {
      if (mask[u]) continue;
      scores[u] = std::exp(scores[u] - best);
      z += scores[u];
    }
    for (size_t u = 0; u < t_count; ++u) {
      if (mask[u]) continue;
      const double w = scores[u] / z;
      if (weights_out) (*weights_out)[t][u] = w;
      for (size_t i = 0; i < d; ++i) outputs[t][i] += w * values[u][i];
    }
  }
  return outputs;
}

AttentionTrace qattention_trace(const VecSeq& token_reps, const AttentionParams& params,
                                const Mask& mask) {
  const size_t t_count = token_reps.size();
  if (mask.size() != t_count) raise(errc::shape, "attention mask must cover every token");
  const int d = t_count == 0 ? 0 : static_cast<int>(token_reps[0].size());
  for (const auto* angles : {&params.query_angles, &params.key_angles, &params.value_angles}) {
    if (static_cast<int>(angles->size()) != 3 * d) {
      raise(errc::shape, "projection circuits expect 3 angles per wire");
    }
  }

  const CircuitFragment proj = projection_fragment(d);
  auto project = [&](const Vec& rep, std::span<const double> angles) {
    StateVector s(d);
    apply_fragment(s, proj, angles, rep);
    Vec out(d);
    for (int i = 0; i < d; ++i) out[i] = s.expectation_z(i);
    return out;
  };

  AttentionTrace trace;
  trace.q.reserve(t_count);
  for (const auto& rep : token_reps) {
    trace.q.push_back(project(rep, params.query_angles));
    trace.k.push_back(project(rep, params.key_angles));
    trace.v.push_back(project(rep, params.value_angles));
  }
  trace.outputs = attention_mix(trace.q, trace.k, trace.v, mask, &trace.weights);
  return trace;
}

VecSeq qattention(const VecSeq& token_reps, const AttentionParams& params, const Mask& mask) {
  return qattention_trace(token_reps, params, mask).outputs;
}

}  // namespace qedacvc
