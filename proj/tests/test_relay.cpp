#include "doctest.h"
#include "qbc/relay.hpp"
#include "test_util.hpp"

using namespace qbc;

namespace {

RelayOptions quick_relay() {
  RelayOptions o;
  o.restarts = 4;
  o.nm_iters = 200;
  o.t_dim = 2;
  o.workers = 2;
  return o;
}

// broadcast with trivial B1 and the input routed to B2
BroadcastChannel route_to_b2(int d = 2) {
  QuantumChannel ch;
  ch.in_dims = {d};
  ch.in_labels = {"A"};
  ch.out_dims = {1, d};
  ch.out_labels = {"B1", "B2"};
  ch.kraus = {Matrix::Identity(d, d)};
  return make_broadcast(std::move(ch));
}

// random broadcast channel 2 -> (2,2) from a Haar-ish isometry
BroadcastChannel random_broadcast(std::uint64_t stream) {
  auto rng = derive_rng(777, stream);
  Matrix g(8, 2);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = qr.householderQ() * Matrix::Identity(8, 2);
  QuantumChannel ch;
  ch.in_dims = {2};
  ch.in_labels = {"A"};
  ch.out_dims = {2, 2};
  ch.out_labels = {"B1", "B2"};
  for (int e = 0; e < 2; ++e) {
    Matrix k(4, 2);
    for (int o = 0; o < 4; ++o)
      for (int a = 0; a < 2; ++a) k(o, a) = v(o * 2 + e, a);
    ch.kraus.push_back(std::move(k));
  }
  return make_broadcast(std::move(ch));
}

}  // namespace

TEST_CASE("teleportation and super-dense conversions are exact") {
  CHECK(teleport_convert(1.0) == 0.5);
  CHECK(teleport_convert(0.0) == 0.0);
  CHECK(superdense_convert(0.0) == 0.0);
  CHECK(superdense_convert(teleport_convert(0.7)) == 0.7);
  CHECK_THROWS_AS(teleport_convert(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(superdense_convert(-1.0), std::invalid_argument);
}

TEST_CASE("repeater chain bottleneck") {
  CHECK(repeater_chain({0.7}, {}) == 0.7);
  CHECK(repeater_chain({1.0, 1.0}, {0.5}) == 0.5);
  CHECK(repeater_chain({0.8, 0.6, 0.9}, {0.7, 0.5}) == 0.5);
  CHECK_THROWS_AS(repeater_chain({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(repeater_chain({1.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("decode-forward on routing channels") {
  auto o = quick_relay();
  // all capacity behind the relay link: value = CQ12
  auto b1 = route_to_b1(Matrix::Identity(2, 2) / 2.0);
  auto r = decode_forward(b1, 0.5, o);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
  // no conferencing: only the direct B2 term remains
  auto r0 = decode_forward(b1, 0.0, o);
  CHECK(r0.value == doctest::Approx(0.0).epsilon(1e-6));

  auto b2 = route_to_b2();
  auto rr = decode_forward(b2, 0.0, o);
  CHECK(rr.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("decode-forward grid: monotone and saturating") {
  auto bc = erasure_broadcast(0.25, 0.75);
  auto o = quick_relay();
  std::vector<double> grid = {0.0, 0.2, 0.4, 0.6, 0.9};
  auto res = decode_forward_grid(bc, grid, o);
  REQUIRE(res.size() == grid.size());
  for (std::size_t i = 1; i < res.size(); ++i)
    CHECK(res[i].value >= res[i - 1].value - 1e-12);
  // the best witness's I(A1>B1) is at most 1-2e1 = 0.5; beyond it the curve
  // must be flat
  for (std::size_t i = 0; i < res.size(); ++i)
    if (grid[i] > res.back().i1 + 1e-6)
      CHECK(res[i].value == doctest::Approx(res.back().value).epsilon(1e-9));
  // witnesses reproduce their reported values
  for (std::size_t i = 0; i < res.size(); ++i) {
    auto e = detail::df_eval(res[i].witness, bc, 2, grid[i]);
    CHECK(e.value == doctest::Approx(res[i].value).epsilon(1e-9));
  }
}

TEST_CASE("cutset on routing channels") {
  auto o = quick_relay();
  // trivial B1: both cuts coincide at I(A>B2)
  auto b2 = route_to_b2();
  auto r = cutset(b2, 0.0, o);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));

  // identity to B1, constant B2: first cut pins the value at CQ12
  auto b1 = route_to_b1(Matrix::Identity(2, 2) / 2.0);
  auto df = decode_forward(b1, 0.5, o);
  auto cs = cutset(b1, 0.5, o, &df);
  CHECK(cs.value == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(df.value <= cs.value + 1e-6);
}

TEST_CASE("decode-forward never exceeds cutset on random channels") {
  auto o = quick_relay();
  o.restarts = 3;
  for (int c = 0; c < 3; ++c) {
    auto bc = random_broadcast(c);
    for (double cq : {0.0, 0.5}) {
      auto df = decode_forward(bc, cq, o);
      auto cs = cutset(bc, cq, o, &df);
      CHECK(df.value <= cs.value + 1e-6);
    }
  }
}

TEST_CASE("entanglement-formation lower bound") {
  auto bc = qubit_dephasing_broadcast(0.1, 0.1);
  RelayOptions o = quick_relay();
  o.restarts = 3;
  o.nm_iters = 120;

  // slack constraint: the identity simulation is feasible, so the bound
  // reaches I(A>B1B2) of the maximally entangled input
  Vector phi = max_entangled(2).vector;
  Matrix joint = apply_to_last_raw(bc.channel, phi * phi.adjoint(), 2);
  double h_b1b2 = entropy_raw(partial_trace_raw(joint, {2, 2, 2}, {1, 2}));
  double i_ab1b2 = h_b1b2 - entropy_raw(joint);
  auto slack = eof_lower(bc, 1.0, o);
  CHECK(slack.feasible);
  CHECK(slack.value >= i_ab1b2 - 0.05);
  CHECK(slack.eof <= 1.0 + 1e-6);

  // zero conferencing forces a decoupled simulation; this coincides with
  // the decode-forward value at CQ12 = 0
  auto zero = eof_lower(bc, 0.0, o);
  CHECK(zero.feasible);
  CHECK(zero.eof <= 1e-4);
  auto df0 = decode_forward(bc, 0.0, o);
  CHECK(zero.value >= df0.value - 0.05);
}
