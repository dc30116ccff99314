#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qedacvc/autodiff.hpp"
#include "qedacvc/error.hpp"
#include "qedacvc/layers.hpp"

using namespace qedacvc;
constexpr double pi = std::numbers::pi;

namespace {

StateVector random_state(std::mt19937_64& rng, int n_wires, int n_gates = 12) {
  auto s = new_state(n_wires);
  for (int i = 0; i < n_gates; ++i) s.apply(oracles::random_gate(rng, n_wires));
  return s;
}

std::vector<double> random_angles(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-pi, pi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("angle encoding of zeros is the ground state") {
  std::vector<double> f(8, 0.0);
  auto s = angle_encode(f, 8);
  CHECK(std::abs(s.amplitudes()[0] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("angle pi on one wire flips exactly that wire") {
  std::vector<double> f(4, 0.0);
  f[2] = pi;
  auto s = angle_encode(f, 4);
  const size_t index = size_t{1} << (4 - 1 - 2);
  CHECK(std::abs(s.amplitudes()[index] - cplx(1, 0)) < 1e-12);
}

TEST_CASE("encoded <Z_i> equals cos of the feature") {
  std::mt19937_64 rng(7);
  auto f = random_angles(rng, 6);
  auto s = angle_encode(f, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(s.expectation_z(i) == doctest::Approx(std::cos(f[i])).epsilon(1e-12));
  }
}

TEST_CASE("angle encoding rejects a feature-count mismatch") {
  std::vector<double> f(3, 0.0);
  CHECK_THROWS_AS(angle_encode(f, 4), Error);
}

TEST_CASE("convolution pair plan covers even then odd offsets with wrap") {
  const int w8[] = {0, 1, 2, 3, 4, 5, 6, 7};
  auto pairs = conv_pairs(w8);
  const std::vector<std::pair<int, int>> expected{{0, 1}, {2, 3}, {4, 5}, {6, 7},
                                                  {1, 2}, {3, 4}, {5, 6}, {7, 0}};
  CHECK(pairs == expected);

  const int w3[] = {0, 1, 2};
  auto pairs3 = conv_pairs(w3);
  const std::vector<std::pair<int, int>> expected3{{0, 1}, {1, 2}};  // no wrap at odd counts
  CHECK(pairs3 == expected3);
}

TEST_CASE("zero-angle convolution is the identity") {
  std::mt19937_64 rng(11);
  auto s = random_state(rng, 4);
  const std::vector<cplx> before(s.amplitudes().begin(), s.amplitudes().end());
  auto t = qconv_layer(std::move(s), ConvBlockParams{});
  const std::vector<cplx> after(t.amplitudes().begin(), t.amplitudes().end());
  CHECK(oracles::max_abs_diff(before, after) < 1e-12);
}

TEST_CASE("convolution preserves the norm for random angles") {
  std::mt19937_64 rng(13);
  ConvBlockParams p;
  for (auto& a : p.angles) a = random_angles(rng, 1)[0];
  auto s = qconv_layer(new_state(8), p);
  CHECK(std::abs(s.norm() - 1.0) < 1e-12);
}

TEST_CASE("4-wire convolution matches the full-matrix product of its gate list") {
  std::mt19937_64 rng(17);
  ConvBlockParams p;
  for (auto& a : p.angles) a = random_angles(rng, 1)[0];

  // rebuild the same sequence independently: even pairs then odd with wrap
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {2, 3}, {1, 2}, {3, 0}};
  std::vector<GateSpec> gates;
  for (const auto& [a, b] : pairs) {
    gates.push_back(build_gate(GateKind::U3, {p.angles[0], p.angles[1], p.angles[2]}, {a}));
    gates.push_back(build_gate(GateKind::U3, {p.angles[3], p.angles[4], p.angles[5]}, {b}));
    gates.push_back(build_gate(GateKind::RXX, {p.angles[6]}, {a, b}));
    gates.push_back(build_gate(GateKind::RYY, {p.angles[7]}, {a, b}));
    gates.push_back(build_gate(GateKind::RZZ, {p.angles[8]}, {a, b}));
    gates.push_back(build_gate(GateKind::U3, {p.angles[9], p.angles[10], p.angles[11]}, {a}));
    gates.push_back(build_gate(GateKind::U3, {p.angles[12], p.angles[13], p.angles[14]}, {b}));
  }
  const auto expected = oracles::full_matrix_run(gates, 4);

  auto s = qconv_layer(new_state(4), p);
  const std::vector<cplx> actual(s.amplitudes().begin(), s.amplitudes().end());
  CHECK(oracles::max_abs_diff(expected, actual) < 1e-12);
}

TEST_CASE("convolution requires at least two active wires") {
  auto s = new_state(2);
  s.deactivate(1);
  CHECK_THROWS_AS(qconv_layer(std::move(s), ConvBlockParams{}), Error);
}

TEST_CASE("pooling halves the active wires for every even count") {
  for (int k : {2, 4, 6, 8}) {
    auto s = new_state(k);
    auto t = qpool_layer(std::move(s), PoolParams{});
    CHECK(static_cast<int>(t.active_wires().size()) == k / 2);
  }
  auto s8 = qpool_layer(new_state(8), PoolParams{{0.3, -0.2, 0.9}});
  CHECK(s8.active_wires() == std::vector<int>{0, 2, 4, 6});
  auto s4 = qpool_layer(std::move(s8), PoolParams{{0.3, -0.2, 0.9}});
  CHECK(s4.active_wires() == std::vector<int>{0, 4});
}

TEST_CASE("pooling rejects an odd active count") {
  auto s = new_state(3);
  CHECK_THROWS_AS(qpool_layer(std::move(s), PoolParams{}), Error);
}

TEST_CASE("a control in |0> leaves the kept wire untouched") {
  // wire 1 (the drop side) stays |0>, so the conditional U3 never fires
  auto s = new_state(2);
  s.apply(build_gate(GateKind::RY, {0.8}, {0}));
  const double before = s.expectation_z(0);
  auto t = qpool_layer(std::move(s), PoolParams{{1.1, 0.4, -0.7}});
  CHECK(t.expectation_z(0) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("deferred pooling equals the measurement-branch average") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(rng, 2);
    const std::vector<cplx> psi(s.amplitudes().begin(), s.amplitudes().end());
    PoolParams p;
    for (auto& a : p.angles) a = random_angles(rng, 1)[0];

    // explicit branches: measure wire 1 (bit 0 of the index), condition the U3
    const auto u = build_gate(GateKind::U3, {p.angles[0], p.angles[1], p.angles[2]}, {0}).matrix();
    double expected = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
      // amplitudes of wire0 given wire1 == outcome; index = 2*b0 + b1
      cplx a0 = psi[0 + outcome], a1 = psi[2 + outcome];
      const double prob = std::norm(a0) + std::norm(a1);
      if (prob < 1e-18) continue;
      if (outcome == 1) {
        const cplx b0 = u[0] * a0 + u[1] * a1;
        const cplx b1 = u[2] * a0 + u[3] * a1;
        a0 = b0;
        a1 = b1;
      }
      expected += std::norm(a0) - std::norm(a1);  // unnormalized branch * prob cancels
    }

    auto t = qpool_layer(std::move(s), p);
    CHECK(std::abs(t.expectation_z(0) - expected) < 1e-12);
  }
}

TEST_CASE("zero-parameter dense layer is the identity") {
  std::mt19937_64 rng(29);
  for (int k : {1, 2, 3}) {
    auto s = random_state(rng, k);
    const std::vector<cplx> before(s.amplitudes().begin(), s.amplitudes().end());
    std::vector<double> zeros((1 << (2 * k)) - 1, 0.0);
    auto t = qdense(std::move(s), zeros);
    const std::vector<cplx> after(t.amplitudes().begin(), t.amplitudes().end());
    CHECK(oracles::max_abs_diff(before, after) < 1e-12);
  }
}

TEST_CASE("dense layer preserves the norm and checks its parameter count") {
  std::mt19937_64 rng(31);
  auto params = random_angles(rng, 15);
  auto s = qdense(new_state(2), params);
  CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(qdense(new_state(2), std::vector<double>(7, 0.0)), Error);
  CHECK_THROWS_AS(qdense(new_state(4), std::vector<double>(255, 0.0)), Error);
}

TEST_CASE("single-wire dense layer realizes U3 exactly") {
  std::mt19937_64 rng(37);
  const auto p = random_angles(rng, 3);
  auto s = random_state(rng, 1, 4);
  const std::vector<cplx> amps(s.amplitudes().begin(), s.amplitudes().end());
  const auto u = build_gate(GateKind::U3, {p[0], p[1], p[2]}, {0}).matrix();
  const std::vector<cplx> expected{u[0] * amps[0] + u[1] * amps[1],
                                   u[2] * amps[0] + u[3] * amps[1]};
  auto t = qdense(std::move(s), p);
  const std::vector<cplx> actual(t.amplitudes().begin(), t.amplitudes().end());
  CHECK(oracles::max_abs_diff(expected, actual) < 1e-12);
}

TEST_CASE("variational layer on zeros returns all-zero expectations") {
  std::vector<double> f(8, 0.0);
  VariationalParams p;
  p.angles.assign(8, 0.0);
  for (double z : qvariational(f, p)) CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("variational outputs stay in [-1, 1] and match the dense oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4;
    auto f = random_angles(rng, n);
    VariationalParams p;
    p.angles = random_angles(rng, n);

    std::vector<GateSpec> gates;
    for (int i = 0; i < n; ++i) gates.push_back(build_gate(GateKind::RY, {f[i]}, {i}));
    for (int i = 0; i < n; ++i) gates.push_back(build_gate(GateKind::H, {}, {i}));
    for (int i = 0; i < n; ++i) gates.push_back(build_gate(GateKind::RY, {p.angles[i]}, {i}));
    for (int i = 0; i + 1 < n; ++i) gates.push_back(build_gate(GateKind::CNOT, {}, {i, i + 1}));
    const auto amp = oracles::full_matrix_run(gates, n);

    const auto out = qvariational(f, p);
    for (int i = 0; i < n; ++i) {
      CHECK(out[i] >= -1.0 - 1e-12);
      CHECK(out[i] <= 1.0 + 1e-12);
      CHECK(std::abs(out[i] - oracles::expect_z_from(amp, n, i)) < 1e-12);
    }
  }
}

TEST_CASE("attention over a single token returns its value vector") {
  std::mt19937_64 rng(43);
  AttentionParams p;
  p.query_angles = random_angles(rng, 12);
  p.key_angles = random_angles(rng, 12);
  p.value_angles = random_angles(rng, 12);
  VecSeq reps{Vec{0.1, -0.4, 0.9, 0.0}};
  auto trace = qattention_trace(reps, p, Mask{0});
  CHECK(trace.outputs.size() == 1);
  for (int i = 0; i < 4; ++i) {
    CHECK(trace.outputs[0][i] == doctest::Approx(trace.v[0][i]).epsilon(1e-12));
  }
  CHECK(trace.weights[0][0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical tokens attract uniform weights") {
  std::mt19937_64 rng(47);
  AttentionParams p;
  p.query_angles = random_angles(rng, 12);
  p.key_angles = random_angles(rng, 12);
  p.value_angles = random_angles(rng, 12);
  const Vec rep{0.3, -0.2, 0.5, 0.8};
  VecSeq reps{rep, rep, rep};
  auto trace = qattention_trace(reps, p, Mask{0, 0, 0});
  for (const auto& row : trace.weights) {
    for (double w : row) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("attention weight rows sum to one and are non-negative") {
  std::mt19937_64 rng(53);
  AttentionParams p;
  p.query_angles = random_angles(rng, 12);
  p.key_angles = random_angles(rng, 12);
  p.value_angles = random_angles(rng, 12);
  VecSeq reps;
  for (int t = 0; t < 5; ++t) reps.push_back(random_angles(rng, 4));
  Mask mask{0, 0, 1, 0, 1};
  auto trace = qattention_trace(reps, p, mask);
  for (const auto& row : trace.weights) {
    double sum = 0;
    for (double w : row) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
  // masked keys get zero weight everywhere
  for (const auto& row : trace.weights) {
    CHECK(row[2] == 0.0);
    CHECK(row[4] == 0.0);
  }
}

TEST_CASE("two-token attention matches the direct scaled-softmax computation") {
  std::mt19937_64 rng(59);
  AttentionParams p;
  p.query_angles = random_angles(rng, 12);
  p.key_angles = random_angles(rng, 12);
  p.value_angles = random_angles(rng, 12);
  VecSeq reps{random_angles(rng, 4), random_angles(rng, 4)};
  auto trace = qattention_trace(reps, p, Mask{0, 0});

  const double scale = 1.0 / std::sqrt(4.0);
  for (int t = 0; t < 2; ++t) {
    double s0 = 0, s1 = 0;
    for (int i = 0; i < 4; ++i) {
      s0 += trace.q[t][i] * trace.k[0][i];
      s1 += trace.q[t][i] * trace.k[1][i];
    }
    const double e0 = std::exp(s0 * scale), e1 = std::exp(s1 * scale);
    const double w0 = e0 / (e0 + e1), w1 = e1 / (e0 + e1);
    for (int i = 0; i < 4; ++i) {
      const double expected = w0 * trace.v[0][i] + w1 * trace.v[1][i];
      CHECK(trace.outputs[t][i] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("a fully masked sequence is an attention error") {
  AttentionParams p;
  p.query_angles.assign(6, 0.0);
  p.key_angles.assign(6, 0.0);
  p.value_angles.assign(6, 0.0);
  VecSeq reps{Vec{0, 0}, Vec{0, 0}};
  CHECK_THROWS_AS(qattention(reps, p, Mask{1, 1}), Error);
}

TEST_CASE("layer blocks are exactly shift-differentiable") {
  // encode -> conv -> pool -> dense on 4 wires, composed as one circuit
  std::mt19937_64 rng(61);
  const std::vector<int> full{0, 1, 2, 3};
  const std::vector<int> half{0, 2};

  ParamCircuit c;
  c.n_wires = 4;
  int p_off = 0;
  append_fragment(c, encode_fragment(full), 0, 0);
  const auto conv = conv_fragment(full);
  append_fragment(c, conv, p_off, 0);
  p_off += conv.n_params;
  const auto pool = pool_fragment(full);
  append_fragment(c, pool, p_off, 0);
  p_off += pool.n_params;
  const auto dense = dense_fragment(half);
  append_fragment(c, dense, p_off, 0);
  p_off += dense.n_params;
  c.validate();
  CHECK(c.n_params == 15 + 3 + 15);
  CHECK(c.n_inputs == 4);

  const auto params = random_angles(rng, c.n_params);
  const auto inputs = random_angles(rng, c.n_inputs);
  const int obs[] = {0, 2};
  auto shift = param_shift_grad(c, params, inputs, obs);
  auto fd = finite_diff_grad(c, params, inputs, obs, 1e-4);
  double worst = 0;
  for (size_t i = 0; i < shift.data.size(); ++i) {
    worst = std::max(worst, std::abs(shift.data[i] - fd.data[i]));
  }
  CHECK(worst < 1e-6);

  // variational and projection fragments as well
  for (const auto& frag : {variational_fragment(4), projection_fragment(4)}) {
    ParamCircuit vc;
    vc.n_wires = 4;
    append_fragment(vc, frag, 0, 0);
    vc.validate();
    const auto vp = random_angles(rng, vc.n_params);
    const auto vi = random_angles(rng, vc.n_inputs);
    auto vshift = param_shift_grad(vc, vp, vi, full);
    auto vfd = finite_diff_grad(vc, vp, vi, full, 1e-4);
    double vworst = 0;
    for (size_t i = 0; i < vshift.data.size(); ++i) {
      vworst = std::max(vworst, std::abs(vshift.data[i] - vfd.data[i]));
    }
    CHECK(vworst < 1e-6);
  }
}
