#include "doctest.h"
#include "qbc/channel.hpp"
#include "test_util.hpp"

using namespace qbc;
using testutil::random_density_raw;

namespace {

QuantumChannel dephasing(double p) {
  QuantumChannel ch;
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  ch.kraus = {std::sqrt(1 - p) * Matrix::Identity(2, 2), std::sqrt(p) * z};
  ch.in_dims = {2};
  ch.out_dims = {2};
  ch.in_labels = {"A"};
  ch.out_labels = {"B"};
  return ch;
}

Matrix plus_state() {
  Vector v(2);
  v << 1, 1;
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

// P(y1,y2|x) = BSC(q1)(y1|x) * BSC(q2)(y2|y1): a physically degraded cascade
Eigen::MatrixXd bsc_cascade_kernel(double q1, double q2) {
  Eigen::MatrixXd k(2, 4);
  for (int x = 0; x < 2; ++x)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int y2 = 0; y2 < 2; ++y2) {
        double p1 = (y1 == x) ? 1 - q1 : q1;
        double p2 = (y2 == y1) ? 1 - q2 : q2;
        k(x, y1 * 2 + y2) = p1 * p2;
      }
  return k;
}

}  // namespace

TEST_CASE("channel validation and apply") {
  auto id = identity_channel(3);
  id.validate();
  auto rng = derive_rng(300, 0);
  Matrix rho = random_density_raw(3, rng);
  CHECK((apply_raw(id, rho) - rho).cwiseAbs().maxCoeff() < 1e-14);

  auto deph = dephasing(0.2);
  deph.validate();
  Matrix out = apply_raw(deph, plus_state());
  // off-diagonal contracts by 1-2p
  CHECK(out(0, 1).real() == doctest::Approx(0.5 * (1 - 2 * 0.2)).epsilon(1e-12));
  CHECK(out(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

  QuantumChannel bad = deph;
  bad.kraus[0] *= 1.01;
  CHECK_THROWS_AS(bad.validate(), invalid_channel_error);
}

TEST_CASE("apply preserves trace and positivity") {
  auto deph = dephasing(0.3);
  for (int t = 0; t < 10; ++t) {
    auto rng = derive_rng(301, t);
    DensityOperator rho(random_density_raw(2, rng), {2}, {"A"});
    auto out = apply(deph, rho);  // constructor re-validates
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("apply to trailing subsystem and data processing") {
  auto deph = dephasing(0.25);
  for (int t = 0; t < 6; ++t) {
    auto rng = derive_rng(302, t);
    Matrix rho = random_density_raw(4, rng);
    Matrix out = apply_to_last_raw(deph, rho, 2);
    DensityOperator before(rho, {2, 2}, {"R", "B"}, false);
    DensityOperator after(out, {2, 2}, {"R", "B"}, false);
    // channel on B never increases I(R;B)
    CHECK(mutual_information(after, {"R"}, {"B"}) <=
          mutual_information(before, {"R"}, {"B"}) + 1e-9);
    // and leaves the R marginal untouched
    CHECK((partial_trace(after, {"R"}).matrix() - partial_trace(before, {"R"}).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("stinespring dilation") {
  auto deph = dephasing(0.35);
  auto ext = stinespring(deph);
  CHECK((ext.isometry.adjoint() * ext.isometry - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
  auto rng = derive_rng(303, 0);
  Matrix rho = random_density_raw(2, rng);
  Matrix big = ext.isometry * rho * ext.isometry.adjoint();
  Matrix back = partial_trace_raw(big, {2, ext.env_dim}, {0});
  CHECK((back - apply_raw(deph, rho)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("complementary channel") {
  auto deph = dephasing(0.35);
  auto comp = complementary(deph);
  comp.validate();
  // for a pure input the output and environment have equal entropy
  Vector psi(2);
  psi << std::sqrt(0.3), std::sqrt(0.7);
  Matrix rho = psi * psi.adjoint();
  CHECK(entropy_raw(apply_raw(comp, rho)) ==
        doctest::Approx(entropy_raw(apply_raw(deph, rho))).epsilon(1e-9));
}

TEST_CASE("kraus trimming") {
  // pad the identity with redundant operators; trimming recovers one operator
  QuantumChannel padded;
  padded.kraus = {Matrix::Identity(2, 2) / std::sqrt(2.0),
                  Matrix::Identity(2, 2) / std::sqrt(2.0)};
  padded.in_dims = {2};
  padded.out_dims = {2};
  padded.in_labels = {"A"};
  padded.out_labels = {"B"};
  auto trimmed = trim_kraus(padded);
  CHECK(trimmed.kraus.size() == 1);
  trimmed.validate();
  auto rng = derive_rng(304, 0);
  Matrix rho = random_density_raw(2, rng);
  CHECK((apply_raw(trimmed, rho) - apply_raw(padded, rho)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("broadcast marginals agree with partial trace") {
  auto bc = qubit_dephasing_broadcast(0.2, 0.4);
  for (int t = 0; t < 8; ++t) {
    auto rng = derive_rng(305, t);
    Matrix rho = random_density_raw(2, rng);
    Matrix full = apply_raw(bc.channel, rho);
    Matrix m1 = partial_trace_raw(full, {2, 2}, {0});
    Matrix m2 = partial_trace_raw(full, {2, 2}, {1});
    CHECK((apply_raw(bc.marginal1, rho) - m1).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((apply_raw(bc.marginal2, rho) - m2).cwiseAbs().maxCoeff() < 1e-9);
  }
  // B1 marginal is exactly dephasing(p1)
  Matrix out = apply_raw(bc.marginal1, plus_state());
  CHECK(out(0, 1).real() == doctest::Approx(0.5 * (1 - 2 * 0.2)).epsilon(1e-9));
}

TEST_CASE("classical broadcast builder") {
  auto bc = classical_broadcast(bsc_cascade_kernel(0.1, 0.15), 2, 2);
  CHECK(bc.is_classical);
  // diagonal input maps to the kernel distribution on the diagonal
  Matrix in = Matrix::Zero(2, 2);
  in(0, 0) = 1.0;
  Matrix out = apply_raw(bc.channel, in);
  for (int y = 0; y < 4; ++y)
    CHECK(out(y, y).real() == doctest::Approx(bc.kernel(0, y)).epsilon(1e-12));
  CHECK(out.cwiseAbs().sum() == doctest::Approx(out.diagonal().cwiseAbs().sum()));

  Eigen::MatrixXd badk(1, 4);
  badk << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(classical_broadcast(badk, 2, 2), invalid_channel_error);
}

TEST_CASE("erasure broadcast builder") {
  CHECK_THROWS_AS(erasure_broadcast(0.2, 0.3), invalid_channel_error);
  auto bc = erasure_broadcast(0.25, 0.75);
  bc.channel.validate();
  auto rng = derive_rng(306, 0);
  Matrix rho = random_density_raw(2, rng);
  Matrix m1 = apply_raw(bc.marginal1, rho);
  // B1 keeps the state with probability 1-e1, flags erasure otherwise
  CHECK(m1(2, 2).real() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK((m1.topLeftCorner(2, 2) - 0.75 * rho).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("routing broadcast builder") {
  Matrix sigma = Matrix::Identity(2, 2) / 2.0;
  auto bc = route_to_b1(sigma);
  auto rng = derive_rng(307, 0);
  Matrix rho = random_density_raw(2, rng);
  CHECK((apply_raw(bc.marginal1, rho) - rho).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((apply_raw(bc.marginal2, rho) - sigma).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hadamard builder carries a working degrading map") {
  std::vector<Matrix> povm = {plus_state(), Matrix::Identity(2, 2) - plus_state()};
  Matrix s0 = Matrix::Zero(2, 2), s1 = Matrix::Zero(2, 2);
  s0(0, 0) = 0.8;
  s0(1, 1) = 0.2;
  s1(0, 0) = 0.3;
  s1(1, 1) = 0.7;
  auto bc = hadamard_broadcast(povm, {s0, s1});
  CHECK(bc.is_hadamard);
  bc.channel.validate();
  REQUIRE(bc.known_degrading.has_value());
  auto check = check_degraded(bc);
  CHECK(check.found);
  CHECK(check.residual <= 1e-8);  // certificate is exact by construction
}

TEST_CASE("degraded detection on a classical cascade") {
  auto bc = classical_broadcast(bsc_cascade_kernel(0.1, 0.2), 2, 2);
  auto check = check_degraded(bc);
  CHECK(check.found);
  CHECK(check.residual <= 1e-6);
  // the certificate is itself a valid channel
  check.certificate.validate();
}

TEST_CASE("non-degraded channel comes back not-found") {
  // independent noise with B2 strictly cleaner than B1: no channel can
  // degrade B1 into B2
  Eigen::MatrixXd k(2, 4);
  for (int x = 0; x < 2; ++x)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int y2 = 0; y2 < 2; ++y2)
        k(x, y1 * 2 + y2) =
            ((y1 == x) ? 0.7 : 0.3) * ((y2 == x) ? 0.95 : 0.05);
  auto bc = classical_broadcast(k, 2, 2);
  DegradedOptions opts;
  opts.restarts = 6;
  auto check = check_degraded(bc, opts);
  CHECK_FALSE(check.found);
  CHECK(check.searched);
  CHECK(check.residual > 1e-3);
}

TEST_CASE("product channel") {
  auto deph = dephasing(0.2);
  auto two = product_channel(deph, 2);
  two.validate();
  CHECK(two.in_dim() == 4);
  auto rng = derive_rng(308, 0);
  Matrix a = random_density_raw(2, rng), b = random_density_raw(2, rng);
  Matrix expect = kron(apply_raw(deph, a), apply_raw(deph, b));
  CHECK((apply_raw(two, kron(a, b)) - expect).cwiseAbs().maxCoeff() < 1e-9);
}
