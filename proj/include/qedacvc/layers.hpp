#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qedacvc/circuit.hpp"
#include "qedacvc/common.hpp"

namespace qedacvc {

// One two-qubit convolution block: leading U3 pair (6), Ising XX/YY/ZZ
// couplings (3), trailing U3 pair (6). Shared across every pair position
// within a layer.
struct ConvBlockParams {
  std::array<double, 15> angles{};
};

// One conditional U3 per pooling pair, shared across pairs.
struct PoolParams {
  std::array<double, 3> angles{};
};

// Per-wire U3 angles for the query/key/value projection circuits.
struct AttentionParams {
  std::vector<double> query_angles;
  std::vector<double> key_angles;
  std::vector<double> value_angles;
};

// One RY per wire.
struct VariationalParams {
  std::vector<double> angles;
};

// A gate sequence with fragment-local parameter and input bindings; the
// model concatenates fragments into full circuits with offset indices.
struct CircuitFragment {
  std::vector<GateSpec> gates;
  std::vector<std::pair<int, SlotRef>> param_slots;
  std::vector<std::pair<int, SlotRef>> input_slots;
  int n_params = 0;
  int n_inputs = 0;

  void add(GateSpec g) { gates.push_back(std::move(g)); }
  void bind_param(int index, SlotRef slot);
  void bind_input(int index, SlotRef slot);
};

// Appends a fragment to a circuit, shifting slot indices by the offsets.
void append_fragment(ParamCircuit& c, const CircuitFragment& f, int param_offset,
                     int input_offset);

// Convolution pair plan over the ordered active wires: even-offset adjacent
// pairs first, then odd-offset pairs with a circular wrap when the count is
// even.
std::vector<std::pair<int, int>> conv_pairs(std::span<const int> active);

// Pooling pair plan: adjacent (keep, drop) pairs, lower-indexed wire kept.
std::vector<std::pair<int, int>> pool_pairs(std::span<const int> active);

CircuitFragment encode_fragment(std::span<const int> wires);
CircuitFragment conv_fragment(std::span<const int> active);
CircuitFragment pool_fragment(std::span<const int> active);
CircuitFragment dense_fragment(std::span<const int> active);
// Angle encoding followed by one U3 per wire.
CircuitFragment projection_fragment(int n_wires);
// Angle encoding, H on every wire, RY per wire, CNOT chain.
CircuitFragment variational_fragment(int n_wires);

// Layer operations over statevectors.
StateVector angle_encode(std::span<const double> features, int n_wires);
StateVector qconv_layer(StateVector state, const ConvBlockParams& params);
StateVector qpool_layer(StateVector state, const PoolParams& params);
StateVector qdense(StateVector state, std::span<const double> params);
std::vector<double> qvariational(std::span<const double> features, const VariationalParams& params);

// Scaled-dot softmax mixing of extracted vectors; rows are queries. Masked
// positions are excluded from every softmax; a row with no unmasked keys is
// an error. weights_out, when given, receives the full weight matrix.
VecSeq attention_mix(const VecSeq& queries, const VecSeq& keys, const VecSeq& values,
                     const Mask& mask, VecSeq* weights_out = nullptr);

struct AttentionTrace {
  VecSeq q, k, v;
  VecSeq weights;
  VecSeq outputs;
};

AttentionTrace qattention_trace(const VecSeq& token_reps, const AttentionParams& params,
                                const Mask& mask);
VecSeq qattention(const VecSeq& token_reps, const AttentionParams& params, const Mask& mask);

}  // namespace qedacvc
