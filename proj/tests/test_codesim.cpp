#include "doctest.h"
#include "oracles.hpp"
#include "qbc/codesim.hpp"
#include "test_util.hpp"

using namespace qbc;
using testutil::bsc_cascade_kernel;

namespace {

Eigen::MatrixXd diag_pmf(double p0 = 0.5) {
  // x1 deterministically equals x0
  Eigen::MatrixXd pmf = Eigen::MatrixXd::Zero(2, 2);
  pmf(0, 0) = p0;
  pmf(1, 1) = 1.0 - p0;
  return pmf;
}

Eigen::MatrixXd noiseless_kernel() {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(2, 4);
  k(0, 0) = 1.0;  // x=0 -> (y1,y2)=(0,0)
  k(1, 3) = 1.0;  // x=1 -> (y1,y2)=(1,1)
  return k;
}

}  // namespace

TEST_CASE("codebook bin arithmetic") {
  auto pmf = Eigen::MatrixXd::Constant(2, 2, 0.25);

  // n R0 = 2 messages split into 2^{n C12} = 2 bins of 2
  auto cb = build_codebook(pmf, 4, 0.5, 0.25, 0.25, 3);
  CHECK(cb.m0_count == 4);
  CHECK(cb.m1_count == 2);
  CHECK(cb.bin_count == 2);
  CHECK(cb.bin_size == 2);
  CHECK(cb.bin_of(0) == 0);
  CHECK(cb.bin_of(1) == 0);
  CHECK(cb.bin_of(2) == 1);
  CHECK(cb.bin_of(3) == 1);
  CHECK(cb.r0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cb.c12 == doctest::Approx(0.25).epsilon(1e-12));

  // C12 = R0: singleton bins, the forwarded index pins the message
  auto cb1 = build_codebook(pmf, 4, 0.5, 0.0, 0.5, 3);
  CHECK(cb1.bin_count == cb1.m0_count);
  CHECK(cb1.bin_size == 1);
  CHECK(cb1.m1_count == 1);

  // C12 = 0: a single bin covering everything
  auto cb0 = build_codebook(pmf, 4, 0.5, 0.25, 0.0, 3);
  CHECK(cb0.bin_count == 1);
  CHECK(cb0.bin_size == cb0.m0_count);

  // conferencing beyond R0 is clamped: bins cannot outnumber messages
  auto cb2 = build_codebook(pmf, 4, 0.25, 0.0, 2.0, 3);
  CHECK(cb2.bin_count == cb2.m0_count);

  // memory guard
  CHECK_THROWS_AS(build_codebook(pmf, 40, 0.5, 0.5, 0.0, 3), guard_error);
}

TEST_CASE("codebook sampling is deterministic and on-distribution") {
  auto pmf = diag_pmf(0.3);
  auto a = build_codebook(pmf, 8, 0.25, 0.25, 0.25, 11);
  auto b = build_codebook(pmf, 8, 0.25, 0.25, 0.25, 11);
  CHECK(a.x0_words == b.x0_words);
  CHECK(a.x1_words == b.x1_words);
  auto c = build_codebook(pmf, 8, 0.25, 0.25, 0.25, 12);
  CHECK(a.x0_words != c.x0_words);
  // deterministic satellite: x1 word must copy the cloud word
  for (int m0 = 0; m0 < a.m0_count; ++m0)
    for (int m1 = 0; m1 < a.m1_count; ++m1) CHECK(a.x1_words[m0][m1] == a.x0_words[m0]);
}

TEST_CASE("noiseless channel with singleton bins decodes perfectly") {
  auto bc = classical_broadcast(noiseless_kernel(), 2, 2);
  auto cb = build_codebook(diag_pmf(), 8, 0.25, 0.0, 0.25, 21);
  // distinct cloud words are required for exact decoding; this seed gives them
  for (int i = 0; i < cb.m0_count; ++i)
    for (int j = i + 1; j < cb.m0_count; ++j) REQUIRE(cb.x0_words[i] != cb.x0_words[j]);
  auto rep = simulate_classical(bc, cb, 400, "ml", 5, 2);
  CHECK(rep.errors == 0);
  CHECK(rep.e2 == 0);
  CHECK(rep.e3 == 0);
  CHECK(rep.e4 == 0);
  CHECK(rep.empirical_error == 0.0);
}

TEST_CASE("simulation determinism and event accounting") {
  auto bc = classical_broadcast(bsc_cascade_kernel(0.1, 0.15), 2, 2);
  auto cb = build_codebook(diag_pmf(), 10, 0.2, 0.1, 0.1, 7);
  for (const std::string& dec : {std::string("ml"), std::string("jt")}) {
    auto r1 = simulate_classical(bc, cb, 600, dec, 9, 2);
    auto r2 = simulate_classical(bc, cb, 600, dec, 9, 1);  // worker invariance
    CHECK(r1.e1 == r2.e1);
    CHECK(r1.e2 == r2.e2);
    CHECK(r1.e3 == r2.e3);
    CHECK(r1.e4 == r2.e4);
    CHECK(r1.errors == r2.errors);
    // the error event is exactly the union of E2, E3, E4
    CHECK(r1.errors <= r1.e2 + r1.e3 + r1.e4);
    CHECK(r1.errors >= r1.e2);
    CHECK(r1.errors >= r1.e3);
    CHECK(r1.errors >= r1.e4);
    CHECK(r1.empirical_error == doctest::Approx(double(r1.errors) / 600).epsilon(1e-12));
  }
  CHECK_THROWS_AS(simulate_classical(bc, cb, 10, "bogus", 1, 1), std::invalid_argument);
  auto qb = qubit_dephasing_broadcast(0.1, 0.1);
  CHECK_THROWS_AS(simulate_classical(qb, cb, 10, "ml", 1, 1), std::invalid_argument);
}

TEST_CASE("error decreases with blocklength inside the region") {
  // BSC cascade with modest rates well inside the achievable region
  auto bc = classical_broadcast(bsc_cascade_kernel(0.02, 0.02), 2, 2);
  double prev = 1.0;
  int better = 0;
  for (int n : {6, 12}) {
    auto cb = build_codebook(diag_pmf(), n, 2.0 / n, 0.0, 2.0 / n, 31);
    auto rep = simulate_classical(bc, cb, 2000, "ml", 13, 2);
    if (rep.empirical_error <= prev) ++better;
    prev = rep.empirical_error;
  }
  CHECK(better >= 1);
}

TEST_CASE("cq simulation guards") {
  auto bc = qubit_dephasing_broadcast(0.1, 0.1);
  auto cb = build_codebook(diag_pmf(), 8, 0.125, 0.0, 0.125, 3);
  CHECK_THROWS_AS(simulate_cq(bc, cb, 10), guard_error);  // n = 8 too large
  auto er = erasure_broadcast(0.5, 0.5);                  // qutrit outputs
  auto cb3 = build_codebook(diag_pmf(), 3, 1.0 / 3, 0.0, 1.0 / 3, 3);
  CHECK_THROWS_AS(simulate_cq(er, cb3, 10), guard_error);
}

TEST_CASE("cq simulation agrees with the classical embedding") {
  // commuting case: the square-root measurement built from typical
  // projectors reduces to a uniform choice among typicality candidates,
  // which is exactly the jt decoder
  auto bc = classical_broadcast(bsc_cascade_kernel(0.1, 0.15), 2, 2);
  auto cb = build_codebook(diag_pmf(), 3, 1.0 / 3, 1.0 / 3, 0.0, 17);
  const int trials = 1500;
  auto cls = simulate_classical(bc, cb, trials, "jt", 23, 2);
  CqSimOptions o;
  o.seed = 29;
  o.workers = 2;
  auto cq = simulate_cq(bc, cb, trials, o);
  double sigma = std::sqrt(0.5 / trials);  // conservative binomial bound
  CHECK(std::abs(cq.empirical_error - cls.empirical_error) <= 3 * sigma + 1e-12);

  // determinism of the quantum path
  auto cq2 = simulate_cq(bc, cb, 200, o);
  auto cq3 = simulate_cq(bc, cb, 200, o);
  CHECK(cq2.errors == cq3.errors);
  CHECK(cq2.e2 == cq3.e2);
  CHECK(cq2.e4 == cq3.e4);
}

TEST_CASE("cq simulation on a genuinely quantum broadcast") {
  auto bc = qubit_dephasing_broadcast(0.05, 0.05);
  auto cb = build_codebook(diag_pmf(), 3, 1.0 / 3, 0.0, 1.0 / 3, 41);
  CqSimOptions o;
  o.seed = 43;
  o.workers = 2;
  auto rep = simulate_cq(bc, cb, 400, o);
  CHECK(rep.trials == 400);
  CHECK(rep.empirical_error >= 0.0);
  CHECK(rep.empirical_error <= 1.0);
  CHECK(rep.errors <= rep.e2 + rep.e3 + rep.e4);
}
