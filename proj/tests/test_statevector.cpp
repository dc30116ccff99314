#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qedacvc/error.hpp"
#include "qedacvc/statevector.hpp"

using namespace qedacvc;
constexpr double pi = std::numbers::pi;

TEST_CASE("new_state returns |0...0> with all wires active") {
  auto s1 = new_state(1);
  CHECK(s1.amplitudes().size() == 2);
  CHECK(s1.amplitudes()[0] == cplx(1, 0));
  CHECK(s1.amplitudes()[1] == cplx(0, 0));

  auto s2 = new_state(2);
  CHECK(s2.amplitudes().size() == 4);
  CHECK(s2.amplitudes()[0] == cplx(1, 0));
  for (int i = 1; i < 4; ++i) CHECK(s2.amplitudes()[i] == cplx(0, 0));

  auto s8 = new_state(8);
  CHECK(s8.amplitudes().size() == 256);
  CHECK(s8.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s8.active_wires().size() == 8);
}

TEST_CASE("new_state rejects out-of-range wire counts") {
  CHECK_THROWS_AS(new_state(0), Error);
  CHECK_THROWS_AS(new_state(11), Error);
  try {
    new_state(0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::config);
  }
}

TEST_CASE("wire 0 is the most significant bit of the basis index") {
  auto s = apply_gate(new_state(2), build_gate(GateKind::RY, {pi}, {0}));
  // flipping wire 0 of |00> lands on index 2, not 1
  CHECK(std::abs(s.amplitudes()[2] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()[1]) < 1e-12);
}

TEST_CASE("build_gate validates arity and angle counts") {
  CHECK_THROWS_AS(build_gate(GateKind::U3, {0.1}, {0}), Error);
  CHECK_THROWS_AS(build_gate(GateKind::CNOT, {}, {0}), Error);
  CHECK_THROWS_AS(build_gate(GateKind::RXX, {0.5}, {1, 1}), Error);
  CHECK_NOTHROW(build_gate(GateKind::CU3, {0.1, 0.2, 0.3}, {0, 1}));
}

TEST_CASE("U3(0,0,0) is the identity") {
  auto m = build_gate(GateKind::U3, {0, 0, 0}, {0}).matrix();
  CHECK(std::abs(m[0] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(m[1]) < 1e-15);
  CHECK(std::abs(m[2]) < 1e-15);
  CHECK(std::abs(m[3] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("RY(pi) maps |0> to |1> exactly") {
  auto m = build_gate(GateKind::RY, {pi}, {0}).matrix();
  CHECK(std::abs(m[0]) < 1e-15);
  CHECK(std::abs(m[1] - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(m[2] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(m[3]) < 1e-15);
  auto s = apply_gate(new_state(1), build_gate(GateKind::RY, {pi}, {0}));
  CHECK(std::abs(s.amplitudes()[1] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("RZZ matches the matrix-exponential series of its generator") {
  const double theta = 1.2345;
  // generator: -i theta/2 * Z (x) Z
  oracles::Mat gen(16, cplx(0, 0));
  const double diag[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) gen[i * 4 + i] = cplx(0, -theta / 2) * diag[i];
  const auto expected = oracles::mat_exp_series(gen, 4);
  const auto actual = build_gate(GateKind::RZZ, {theta}, {0, 1}).matrix();
  double worst = 0;
  for (int i = 0; i < 16; ++i) worst = std::max(worst, std::abs(expected[i] - actual[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("RXX and RYY match their matrix-exponential series") {
  const double theta = -0.7;
  // X (x) X swaps all bits; Y (x) Y adds signs on the anti-diagonal.
  oracles::Mat genx(16, cplx(0, 0)), geny(16, cplx(0, 0));
  genx[0 * 4 + 3] = genx[1 * 4 + 2] = genx[2 * 4 + 1] = genx[3 * 4 + 0] = cplx(0, -theta / 2);
  geny[0 * 4 + 3] = geny[3 * 4 + 0] = cplx(0, -theta / 2) * cplx(-1, 0);
  geny[1 * 4 + 2] = geny[2 * 4 + 1] = cplx(0, -theta / 2);
  const auto ex = oracles::mat_exp_series(genx, 4);
  const auto ey = oracles::mat_exp_series(geny, 4);
  const auto ax = build_gate(GateKind::RXX, {theta}, {0, 1}).matrix();
  const auto ay = build_gate(GateKind::RYY, {theta}, {0, 1}).matrix();
  for (int i = 0; i < 16; ++i) {
    CHECK(std::abs(ex[i] - ax[i]) < 1e-12);
    CHECK(std::abs(ey[i] - ay[i]) < 1e-12);
  }
}

TEST_CASE("H then CNOT prepares the Bell state") {
  auto s = new_state(2);
  s.apply(build_gate(GateKind::H, {}, {0}));
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(s.amplitudes()[0] - cplx(r, 0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()[2] - cplx(r, 0)) < 1e-12);

  s.apply(build_gate(GateKind::CNOT, {}, {0, 1}));
  CHECK(std::abs(s.amplitudes()[0] - cplx(r, 0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()[3] - cplx(r, 0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()[1]) < 1e-12);
  CHECK(std::abs(s.amplitudes()[2]) < 1e-12);
}

TEST_CASE("RY(pi/3) on |0> gives (sqrt(3)/2, 1/2)") {
  auto s = apply_gate(new_state(1), build_gate(GateKind::RY, {pi / 3}, {0}));
  CHECK(std::abs(s.amplitudes()[0] - cplx(std::sqrt(3.0) / 2, 0)) < 1e-12);
  CHECK(std::abs(s.amplitudes()[1] - cplx(0.5, 0)) < 1e-12);
}

TEST_CASE("gates on inactive or out-of-range wires are rejected") {
  auto s = new_state(3);
  s.deactivate(1);
  CHECK_THROWS_AS(s.apply(build_gate(GateKind::H, {}, {1})), Error);
  CHECK_THROWS_AS(s.apply(build_gate(GateKind::H, {}, {5})), Error);
  try {
    s.apply(build_gate(GateKind::H, {}, {1}));
  } catch (const Error& e) {
    CHECK(e.code() == errc::wiring);
  }
}

TEST_CASE("expectation_z on computational and rotated states") {
  auto s = new_state(1);
  CHECK(s.expectation_z(0) == doctest::Approx(1.0));
  s.apply(build_gate(GateKind::RY, {pi}, {0}));
  CHECK(s.expectation_z(0) == doctest::Approx(-1.0));

  auto t = apply_gate(new_state(1), build_gate(GateKind::RY, {0.7}, {0}));
  CHECK(t.expectation_z(0) == doctest::Approx(std::cos(0.7)).epsilon(1e-12));
}

TEST_CASE("expectation on a deactivated wire is rejected") {
  auto s = new_state(2);
  s.deactivate(1);
  CHECK_THROWS_AS(s.expectation_z(1), Error);
}

TEST_CASE("deactivation removes exactly one wire and keeps amplitudes") {
  auto s = new_state(8);
  s.apply(build_gate(GateKind::RY, {0.3}, {2}));
  const double before = s.expectation_z(2);
  s.deactivate(5);
  CHECK(s.active_wires().size() == 7);
  CHECK(s.expectation_z(2) == doctest::Approx(before).epsilon(1e-15));
  CHECK_THROWS_AS(s.deactivate(5), Error);
}

TEST_CASE("pairwise keep-lower pooling plan leaves wires 0,2,4,6 of 8") {
  // enumerate the plan: adjacent pairs, lower index kept
  std::vector<int> active{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> expected_kept, dropped;
  for (size_t i = 0; i + 1 < active.size(); i += 2) {
    expected_kept.push_back(active[i]);
    dropped.push_back(active[i + 1]);
  }
  auto s = new_state(8);
  for (int w : dropped) s.deactivate(w);
  CHECK(s.active_wires() == expected_kept);
  CHECK(expected_kept == std::vector<int>{0, 2, 4, 6});
}

TEST_CASE("norm is preserved over 500 random gates") {
  std::mt19937_64 rng(12345);
  for (int n_wires : {2, 5, 8}) {
    auto s = new_state(n_wires);
    for (int i = 0; i < 500; ++i) s.apply(oracles::random_gate(rng, n_wires));
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("every realized gate matrix is unitary over random draws") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  for (GateKind kind : {GateKind::U3, GateKind::RY, GateKind::H, GateKind::CNOT, GateKind::RXX,
                        GateKind::RYY, GateKind::RZZ, GateKind::CU3}) {
    for (int draw = 0; draw < 100; ++draw) {
      std::vector<double> params;
      for (int i = 0; i < gate_param_count(kind); ++i) params.push_back(angle(rng));
      std::vector<int> wires = gate_arity(kind) == 1 ? std::vector<int>{0} : std::vector<int>{0, 1};
      const auto m = build_gate(kind, params, wires).matrix();
      const int dim = gate_arity(kind) == 1 ? 2 : 4;
      double worst = 0;
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          cplx acc(0, 0);
          for (int k = 0; k < dim; ++k) {
            acc += std::conj(m[static_cast<size_t>(k) * dim + i]) * m[static_cast<size_t>(k) * dim + j];
          }
          worst = std::max(worst, std::abs(acc - (i == j ? cplx(1, 0) : cplx(0, 0))));
        }
      }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("H and CNOT are involutions") {
  std::mt19937_64 rng(42);
  auto s = new_state(3);
  for (int i = 0; i < 20; ++i) s.apply(oracles::random_gate(rng, 3));
  const std::vector<cplx> before(s.amplitudes().begin(), s.amplitudes().end());

  s.apply(build_gate(GateKind::H, {}, {1}));
  s.apply(build_gate(GateKind::H, {}, {1}));
  s.apply(build_gate(GateKind::CNOT, {}, {2, 0}));
  s.apply(build_gate(GateKind::CNOT, {}, {2, 0}));

  const std::vector<cplx> after(s.amplitudes().begin(), s.amplitudes().end());
  CHECK(oracles::max_abs_diff(before, after) < 1e-12);
}

TEST_CASE("stencil application matches the full-matrix oracle on up to 4 wires") {
  std::mt19937_64 rng(2024);
  for (int n_wires = 1; n_wires <= 4; ++n_wires) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<GateSpec> gates;
      for (int i = 0; i < 30; ++i) gates.push_back(oracles::random_gate(rng, n_wires));
      auto s = new_state(n_wires);
      for (const auto& g : gates) s.apply(g);
      const auto expected = oracles::full_matrix_run(gates, n_wires);
      const std::vector<cplx> actual(s.amplitudes().begin(), s.amplitudes().end());
      CHECK(oracles::max_abs_diff(expected, actual) < 1e-12);
    }
  }
}
