#include "doctest.h"
#include "qbc/state.hpp"
#include "test_util.hpp"

using namespace qbc;
using testutil::random_density_raw;
using testutil::random_pure_raw;
using testutil::random_unitary;

namespace {

DensityOperator maximally_mixed(int d, const std::string& label) {
  return DensityOperator(Matrix::Identity(d, d) / double(d), {d}, {label});
}

DensityOperator basis_state(int d, int i, const std::string& label) {
  return DensityOperator::from_pure(basis_vector(d, i), {d}, {label});
}

// independent oracle: Shannon entropy of a probability vector
double shannon(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

}  // namespace

TEST_CASE("tensor products") {
  auto a = maximally_mixed(2, "A");
  auto b = maximally_mixed(2, "B");
  auto ab = tensor(a, b);
  CHECK(ab.dim() == 4);
  CHECK((ab.matrix() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(ab.dims() == std::vector<int>{2, 2});

  auto z0 = basis_state(2, 0, "A");
  auto z1 = basis_state(2, 1, "B");
  auto prod = tensor(z0, z1);
  CHECK(std::abs(prod.matrix()(1, 1).real() - 1.0) < 1e-14);  // |01><01|

  auto phi = max_entangled(2, "A", "B").to_density();
  auto big = tensor(phi, basis_state(2, 0, "C"));
  CHECK(std::abs(big.matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("partial trace") {
  auto phi = max_entangled(2, "A", "B").to_density();
  auto ma = partial_trace(phi, {"A"});
  CHECK((ma.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

  auto rng = derive_rng(11, 0);
  Matrix ra = random_density_raw(2, rng), sb = random_density_raw(3, rng);
  DensityOperator rho(ra, {2}, {"A"});
  DensityOperator sig(sb, {3}, {"B"});
  auto joint = tensor(rho, sig);
  auto back = partial_trace(joint, {"A"});
  CHECK((back.matrix() - ra).cwiseAbs().maxCoeff() < 1e-12);

  // keep everything: unchanged
  auto same = partial_trace(joint, {"A", "B"});
  CHECK((same.matrix() - joint.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(partial_trace(joint, {"Z"}), std::invalid_argument);
}

TEST_CASE("entropy") {
  CHECK(entropy(maximally_mixed(2, "A")).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy(max_entangled(2, "A", "B").to_density()).value ==
        doctest::Approx(0.0).epsilon(1e-9));

  Matrix d2(2, 2);
  d2.setZero();
  d2(0, 0) = 0.25;
  d2(1, 1) = 0.75;
  double oracle = shannon({0.25, 0.75});
  CHECK(entropy(DensityOperator(d2, {2}, {"A"})).value ==
        doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(0.8112781244591328).epsilon(1e-12));

  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(entropy_report_raw(bad), invalid_state_error);
}

TEST_CASE("mutual and coherent information") {
  auto phi = max_entangled(2, "A", "B").to_density();
  CHECK(mutual_information(phi, {"A"}, {"B"}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(coherent_information(phi, {"A"}, {"B"}) == doctest::Approx(1.0).epsilon(1e-9));

  auto rng = derive_rng(12, 0);
  auto rho = DensityOperator(random_density_raw(2, rng), {2}, {"A"});
  auto sig = DensityOperator(random_density_raw(2, rng), {2}, {"B"});
  auto prod = tensor(rho, sig);
  CHECK(mutual_information(prod, {"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(coherent_information(prod, {"A"}, {"B"}) ==
        doctest::Approx(-entropy(rho).value).epsilon(1e-9));

  // classically correlated pair: oracle from the three classical entropies
  Matrix cc = Matrix::Zero(4, 4);
  cc(0, 0) = 0.5;
  cc(3, 3) = 0.5;
  DensityOperator corr(cc, {2, 2}, {"A", "B"});
  double h_a = shannon({0.5, 0.5});
  double i_oracle = h_a + h_a - shannon({0.5, 0.5});
  CHECK(mutual_information(corr, {"A"}, {"B"}) == doctest::Approx(i_oracle).epsilon(1e-9));
  CHECK(coherent_information(corr, {"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(mutual_information(corr, {"A"}, {"A"}), std::invalid_argument);
}

TEST_CASE("trace distance") {
  auto z0 = basis_state(2, 0, "A");
  auto z1 = basis_state(2, 1, "A");
  CHECK(trace_distance(z0, z0) == doctest::Approx(0.0));
  CHECK(trace_distance(z0, z1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(z0, maximally_mixed(2, "A")) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(z0, maximally_mixed(3, "A")), std::invalid_argument);
}

TEST_CASE("entropy invariants on random states") {
  for (int t = 0; t < 25; ++t) {
    auto rng = derive_rng(100, t);
    Matrix rho = random_density_raw(4, rng);
    Matrix u = random_unitary(4, rng);
    CHECK(std::abs(entropy_raw(u * rho * u.adjoint()) - entropy_raw(rho)) < 1e-9);

    DensityOperator ab(rho, {2, 2}, {"A", "B"});
    double h_ab = entropy(ab).value;
    double h_a = entropy(partial_trace(ab, {"A"})).value;
    double h_b = entropy(partial_trace(ab, {"B"})).value;
    CHECK(h_ab <= h_a + h_b + 1e-9);                       // subadditivity
    CHECK(mutual_information(ab, {"A"}, {"B"}) >= -1e-9);  // nonnegativity
    CHECK(coherent_information(ab, {"A"}, {"B"}) <= h_b + 1e-9);
  }
}

TEST_CASE("trace distance triangle inequality") {
  for (int t = 0; t < 25; ++t) {
    auto rng = derive_rng(101, t);
    Matrix a = random_density_raw(3, rng);
    Matrix b = random_density_raw(3, rng);
    Matrix c = random_density_raw(3, rng);
    CHECK(trace_distance_raw(a, c) <=
          trace_distance_raw(a, b) + trace_distance_raw(b, c) + 1e-9);
  }
}

TEST_CASE("density operator validation") {
  Matrix bad = Matrix::Identity(2, 2);  // trace 2
  CHECK_THROWS_AS(DensityOperator(bad, {2}, {"A"}), invalid_state_error);
  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(4, 4) / 4.0, {2}, {"A"}),
                  std::invalid_argument);
}
