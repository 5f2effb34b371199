#ifndef QBC_CODESIM_HPP
#define QBC_CODESIM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/optim.hpp"
#include "qbc/rng.hpp"
#include "qbc/state.hpp"

namespace qbc {

struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Superposition codebook with binning: cloud centers x0^n(m0), satellites
// x1^n(m0,m1), and the m0 index set partitioned into equal bins.
struct Codebook {
  int n = 0;
  double r0 = 0, r1 = 0, c12 = 0;  // actual rates after integer rounding
  int m0_count = 0, m1_count = 0, bin_count = 0, bin_size = 0;
  std::vector<std::vector<int>> x0_words;               // [m0][i]
  std::vector<std::vector<std::vector<int>>> x1_words;  // [m0][m1][i]
  Eigen::MatrixXd pmf;                                  // p(x0, x1)
  std::uint64_t seed = 0;

  int bin_of(int m0) const { return m0 / bin_size; }
};

inline Codebook build_codebook(const Eigen::MatrixXd& pmf, int n, double r0, double r1,
                               double c12, std::uint64_t seed) {
  if (std::abs(pmf.sum() - 1.0) > 1e-9 || pmf.minCoeff() < -1e-12)
    throw std::invalid_argument("pmf is not a distribution");
  Codebook cb;
  cb.n = n;
  cb.pmf = pmf;
  cb.seed = seed;
  if (n * r0 > 30 || n * r1 > 30 || n * c12 > 30)
    throw guard_error("codebook exceeds 2^20 words");
  // message counts round 2^{nR}; bins partition the m0 index set into runs
  // of (near-)equal size 2^{n(R0 - C12)}
  cb.m0_count = std::max(1, static_cast<int>(std::lround(std::exp2(n * r0))));
  cb.m1_count = std::max(1, static_cast<int>(std::lround(std::exp2(n * r1))));
  int bins = std::max(1, static_cast<int>(std::lround(std::exp2(n * c12))));
  bins = std::min(bins, cb.m0_count);  // more bins than messages is vacuous
  cb.bin_size = (cb.m0_count + bins - 1) / bins;
  cb.bin_count = (cb.m0_count + cb.bin_size - 1) / cb.bin_size;
  cb.r0 = std::log2(double(cb.m0_count)) / n;
  cb.r1 = std::log2(double(cb.m1_count)) / n;
  cb.c12 = std::log2(double(cb.bin_count)) / n;
  const long total_words =
      long(cb.m0_count) + long(cb.m0_count) * cb.m1_count;
  if (total_words > (1L << 20)) throw guard_error("codebook exceeds 2^20 words");

  const int nx0 = static_cast<int>(pmf.rows());
  const int nx1 = static_cast<int>(pmf.cols());
  std::vector<double> p0(nx0);
  for (int a = 0; a < nx0; ++a) p0[a] = pmf.row(a).sum();
  auto sample = [](const double* p, int k, double u) {
    double acc = 0;
    for (int i = 0; i < k; ++i) {
      acc += p[i];
      if (u <= acc) return i;
    }
    return k - 1;
  };
  cb.x0_words.assign(cb.m0_count, std::vector<int>(n));
  cb.x1_words.assign(cb.m0_count,
                     std::vector<std::vector<int>>(cb.m1_count, std::vector<int>(n)));
  for (int m0 = 0; m0 < cb.m0_count; ++m0) {
    auto rng = derive_rng(seed, static_cast<std::uint64_t>(m0));
    for (int i = 0; i < n; ++i) cb.x0_words[m0][i] = sample(p0.data(), nx0, uniform01(rng));
    for (int m1 = 0; m1 < cb.m1_count; ++m1)
      for (int i = 0; i < n; ++i) {
        int x0 = cb.x0_words[m0][i];
        std::vector<double> cond(nx1);
        for (int b = 0; b < nx1; ++b)
          cond[b] = p0[x0] > 0 ? pmf(x0, b) / p0[x0] : 1.0 / nx1;
        cb.x1_words[m0][m1][i] = sample(cond.data(), nx1, uniform01(rng));
      }
  }
  return cb;
}

struct SimReport {
  int n = 0, trials = 0;
  double r0 = 0, r1 = 0, c12 = 0;
  // event counts: e1 atypical source pair, e2 Bob1 wrong m0, e3 Bob1 wrong
  // m1 (m0 right), e4 Bob2 wrong m0
  long e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  long errors = 0;
  double empirical_error = 0;
  std::uint64_t seed = 0;
  std::string decoder;
};

namespace detail {

// conditional entropy-typicality: the quantum-compatible criterion that the
// log-likelihood of the received word sits delta-close to the mean entropy
// of the per-letter output distributions
inline bool cond_typical(const std::vector<int>& xs, const std::vector<int>& ys,
                         const Eigen::MatrixXd& w, double delta) {
  double ll = 0, hh = 0;
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) {
    double p = w(xs[i], ys[i]);
    if (p <= 0) return false;
    ll -= std::log2(p);
    for (int y = 0; y < w.cols(); ++y)
      if (w(xs[i], y) > 0) hh -= w(xs[i], y) * std::log2(w(xs[i], y));
  }
  return std::abs(ll - hh) <= delta * n;
}

inline double loglik(const std::vector<int>& xs, const std::vector<int>& ys,
                     const Eigen::MatrixXd& w) {
  double ll = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double p = w(xs[i], ys[i]);
    ll += p > 0 ? std::log2(p) : -1e9;
  }
  return ll;
}

}  // namespace detail

// Monte-Carlo run of the superposition-with-binning scheme over a classical
// broadcast kernel. decoder: "ml" (two-stage maximum likelihood) or "jt"
// (conditional typicality with uniform tie-break, mirroring the
// square-root-measurement behaviour in the commuting case).
inline SimReport simulate_classical(const BroadcastChannel& bc, const Codebook& cb,
                                    int trials, const std::string& decoder = "ml",
                                    std::uint64_t seed = 1, int workers = 1) {
  if (!bc.is_classical) throw std::invalid_argument("channel is not classical");
  if (decoder != "ml" && decoder != "jt")
    throw std::invalid_argument("decoder must be ml or jt");
  const int nx = static_cast<int>(bc.kernel.rows());
  if (static_cast<int>(cb.pmf.cols()) != nx)
    throw std::invalid_argument("codebook x1 alphabet must match channel input");
  const int ny1 = bc.ny1, ny2 = bc.ny2;
  const int n = cb.n;
  const double delta = std::pow(double(n), -1.0 / 3.0);

  // per-letter kernels: w1(x,y1), w2(x,y2); cloud kernels q1(x0,y1), q2(x0,y2)
  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(nx, ny1), w2 = Eigen::MatrixXd::Zero(nx, ny2);
  for (int x = 0; x < nx; ++x)
    for (int y1 = 0; y1 < ny1; ++y1)
      for (int y2 = 0; y2 < ny2; ++y2) {
        w1(x, y1) += bc.kernel(x, y1 * ny2 + y2);
        w2(x, y2) += bc.kernel(x, y1 * ny2 + y2);
      }
  const int nx0 = static_cast<int>(cb.pmf.rows());
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(nx0, ny1), q2 = Eigen::MatrixXd::Zero(nx0, ny2);
  for (int a = 0; a < nx0; ++a) {
    double pa = cb.pmf.row(a).sum();
    for (int b = 0; b < nx; ++b) {
      double c = pa > 0 ? cb.pmf(a, b) / pa : 1.0 / nx;
      q1.row(a) += c * w1.row(b);
      q2.row(a) += c * w2.row(b);
    }
  }
  // source joint-typicality reference (event E1)
  double h01 = 0;
  for (int a = 0; a < nx0; ++a)
    for (int b = 0; b < nx; ++b)
      if (cb.pmf(a, b) > 0) h01 -= cb.pmf(a, b) * std::log2(cb.pmf(a, b));

  SimReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.r0 = cb.r0;
  rep.r1 = cb.r1;
  rep.c12 = cb.c12;
  rep.seed = seed;
  rep.decoder = decoder;
  std::vector<std::array<long, 5>> acc(trials);
  parallel_for(trials, workers, [&](int t) {
    auto rng = derive_rng(seed, static_cast<std::uint64_t>(t));
    int m0 = static_cast<int>(uniform01(rng) * cb.m0_count);
    int m1 = static_cast<int>(uniform01(rng) * cb.m1_count);
    m0 = std::min(m0, cb.m0_count - 1);
    m1 = std::min(m1, cb.m1_count - 1);
    const auto& x0s = cb.x0_words[m0];
    const auto& x1s = cb.x1_words[m0][m1];
    std::vector<int> y1(n), y2(n);
    for (int i = 0; i < n; ++i) {
      double u = uniform01(rng), accp = 0;
      int pick = ny1 * ny2 - 1;
      for (int y = 0; y < ny1 * ny2; ++y) {
        accp += bc.kernel(x1s[i], y);
        if (u <= accp) {
          pick = y;
          break;
        }
      }
      y1[i] = pick / ny2;
      y2[i] = pick % ny2;
    }

    // E1: source pair atypical at delta/2
    double ll01 = 0;
    for (int i = 0; i < n; ++i) {
      double p = cb.pmf(x0s[i], x1s[i]);
      ll01 -= p > 0 ? std::log2(p) : 1e9;
    }
    bool e1 = std::abs(ll01 - n * h01) > 0.5 * delta * n;

    int hat_m0 = 0, hat_m1 = 0, tilde_m0 = 0;
    if (decoder == "ml") {
      double best = -1e18;
      for (int m = 0; m < cb.m0_count; ++m) {
        double v = detail::loglik(cb.x0_words[m], y1, q1);
        if (v > best) {
          best = v;
          hat_m0 = m;
        }
      }
      best = -1e18;
      for (int m = 0; m < cb.m1_count; ++m) {
        double v = detail::loglik(cb.x1_words[hat_m0][m], y1, w1);
        if (v > best) {
          best = v;
          hat_m1 = m;
        }
      }
    } else {
      std::vector<int> cand;
      for (int m = 0; m < cb.m0_count; ++m)
        if (detail::cond_typical(cb.x0_words[m], y1, q1, delta)) cand.push_back(m);
      hat_m0 = cand.empty()
                   ? 0
                   : cand[std::min<std::size_t>(cand.size() - 1,
                                                static_cast<std::size_t>(
                                                    uniform01(rng) * cand.size()))];
      cand.clear();
      for (int m = 0; m < cb.m1_count; ++m)
        if (detail::cond_typical(cb.x1_words[hat_m0][m], y1, w1, delta)) cand.push_back(m);
      hat_m1 = cand.empty()
                   ? 0
                   : cand[std::min<std::size_t>(cand.size() - 1,
                                                static_cast<std::size_t>(
                                                    uniform01(rng) * cand.size()))];
    }

    // forwarded bin of the decoded cloud index; Bob 2 searches that bin
    const int g = cb.bin_of(hat_m0);
    const int lo = g * cb.bin_size;
    const int hi = std::min(lo + cb.bin_size, cb.m0_count);
    if (decoder == "ml") {
      double best = -1e18;
      for (int m = lo; m < hi; ++m) {
        double v = detail::loglik(cb.x0_words[m], y2, q2);
        if (v > best) {
          best = v;
          tilde_m0 = m;
        }
      }
    } else {
      std::vector<int> cand;
      for (int m = lo; m < hi; ++m)
        if (detail::cond_typical(cb.x0_words[m], y2, q2, delta)) cand.push_back(m);
      tilde_m0 = cand.empty()
                     ? lo
                     : cand[std::min<std::size_t>(cand.size() - 1,
                                                  static_cast<std::size_t>(
                                                      uniform01(rng) * cand.size()))];
    }

    auto& a = acc[t];
    a = {0, 0, 0, 0, 0};
    if (e1) a[0] = 1;
    if (hat_m0 != m0) a[1] = 1;
    if (hat_m0 == m0 && hat_m1 != m1) a[2] = 1;
    if (tilde_m0 != m0) a[3] = 1;
    if (hat_m0 != m0 || hat_m1 != m1 || tilde_m0 != m0) a[4] = 1;
  });
  for (const auto& a : acc) {
    rep.e1 += a[0];
    rep.e2 += a[1];
    rep.e3 += a[2];
    rep.e4 += a[3];
    rep.errors += a[4];
  }
  rep.empirical_error = trials > 0 ? double(rep.errors) / trials : 0.0;
  return rep;
}

namespace detail {

// diagonal of the square-root-measurement elements in a product eigenbasis:
// typical projector per message, normalized by the summed projector
struct PgmDiag {
  // eigenbasis per letter (columns) and the per-message typical flags over
  // product eigenvalue index
  std::vector<Matrix> basis;         // [letter] d x d eigenvectors
  std::vector<std::vector<char>> typ;  // [message][product index]
  std::vector<double> counts;          // summed projector diagonal
};

inline std::vector<int> product_digits(int idx, int n, int d) {
  std::vector<int> digits(n);
  for (int i = n - 1; i >= 0; --i) {
    digits[i] = idx % d;
    idx /= d;
  }
  return digits;
}

}  // namespace detail

struct CqSimOptions {
  std::uint64_t seed = 1;
  int workers = 1;
  double delta = 0;  // 0 -> n^{-1/3}
  long dim_guard = 1L << 21;
};

// Toy-scale simulation of the cq coding scheme with square-root
// measurements built from delta-typical projectors. The global output is
// kept as a pure vector through the channel dilation; Bob 1's two
// sequential measurements update it, then Bob 2 measures his half.
inline SimReport simulate_cq(const BroadcastChannel& bc, const Codebook& cb, int trials,
                             const CqSimOptions& opts = {}) {
  const int din = bc.in_dim(), d1 = bc.d1(), d2 = bc.d2();
  const int n = cb.n;
  if (n > 6) throw guard_error("cq simulation limited to n <= 6");
  if (d1 > 2 || d2 > 2) throw guard_error("cq simulation limited to qubit outputs");
  if (static_cast<int>(cb.pmf.cols()) != din)
    throw std::invalid_argument("codebook x1 alphabet must match channel input");
  auto ext = stinespring(bc.channel);
  const int env = ext.env_dim;
  double total = std::pow(double(d1) * d2 * env, n);
  if (total > double(opts.dim_guard)) throw guard_error("cq state dimension guard");
  const double delta = opts.delta > 0 ? opts.delta : std::pow(double(n), -1.0 / 3.0);

  // per-symbol pure dilation vectors and marginal output states
  std::vector<Vector> dil(din);
  std::vector<Matrix> s1(din), s2(din);
  for (int x = 0; x < din; ++x) {
    dil[x] = ext.isometry * basis_vector(din, x);  // on (B1 B2 E) per letter
    Matrix rho = dil[x] * dil[x].adjoint();
    s1[x] = partial_trace_raw(rho, {d1, d2, env}, {0});
    s2[x] = partial_trace_raw(rho, {d1, d2, env}, {1});
  }
  const int nx0 = static_cast<int>(cb.pmf.rows());
  std::vector<Matrix> c1(nx0, Matrix::Zero(d1, d1)), c2(nx0, Matrix::Zero(d2, d2));
  for (int a = 0; a < nx0; ++a) {
    double pa = cb.pmf.row(a).sum();
    for (int b = 0; b < din; ++b) {
      double c = pa > 0 ? cb.pmf(a, b) / pa : 1.0 / din;
      c1[a] += c * s1[b];
      c2[a] += c * s2[b];
    }
  }

  // square-root measurement over codewords of per-letter states sigma[x]:
  // build in the product eigenbasis of the letters actually used
  struct Pgm {
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eig;  // per symbol
    int d, n;
  };
  auto typical_flags = [&](const std::vector<int>& word,
                           const std::vector<Eigen::SelfAdjointEigenSolver<Matrix>>& eig,
                           int d) {
    // mean entropy of the word's letters
    double hbar = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) {
        double l = eig[word[i]].eigenvalues()(k);
        if (l > 1e-15) hbar -= l * std::log2(l);
      }
    }
    const int prod = static_cast<int>(std::lround(std::pow(double(d), n)));
    std::vector<char> fl(prod, 0);
    for (int idx = 0; idx < prod; ++idx) {
      auto digits = detail::product_digits(idx, n, d);
      double ll = 0;
      bool dead = false;
      for (int i = 0; i < n; ++i) {
        double l = eig[word[i]].eigenvalues()(digits[i]);
        if (l <= 1e-15) {
          dead = true;
          break;
        }
        ll -= std::log2(l);
      }
      if (!dead && std::abs(ll - hbar) <= delta * n) fl[idx] = 1;
    }
    return fl;
  };
  // measurement operator in the computational basis for a given word and
  // product-eigenvalue weights
  auto build_op = [&](const std::vector<int>& word,
                      const std::vector<Eigen::SelfAdjointEigenSolver<Matrix>>& eig,
                      int d, const std::vector<double>& wts) {
    const int prod = static_cast<int>(wts.size());
    Matrix op = Matrix::Zero(prod, prod);
    for (int idx = 0; idx < prod; ++idx) {
      if (wts[idx] == 0) continue;
      auto digits = detail::product_digits(idx, n, d);
      Vector v = Vector::Ones(1);
      for (int i = 0; i < n; ++i)
        v = kron_vec(v, eig[word[i]].eigenvectors().col(digits[i]));
      op += wts[idx] * v * v.adjoint();
    }
    return op;
  };
  auto sqrt_psd = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Matrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
  };
  auto inv_sqrt_psd = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      ev(i) = ev(i) > 1e-12 ? 1.0 / std::sqrt(ev(i)) : 0.0;
    return Matrix(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
  };
  // SRM elements for a message list: Lambda_m = S^{-1/2} Pi_m S^{-1/2}
  auto srm = [&](const std::vector<std::vector<int>>& words,
                 const std::vector<Matrix>& sigma, int d) {
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eig;
    for (const auto& s : sigma) eig.emplace_back(s);
    const int prod = static_cast<int>(std::lround(std::pow(double(d), n)));
    std::vector<Matrix> pis;
    Matrix ssum = Matrix::Zero(prod, prod);
    for (const auto& w : words) {
      auto fl = typical_flags(w, eig, d);
      std::vector<double> wts(fl.begin(), fl.end());
      Matrix pi = build_op(w, eig, d, wts);
      ssum += pi;
      pis.push_back(std::move(pi));
    }
    Matrix isq = inv_sqrt_psd(ssum);
    std::vector<Matrix> lam;
    for (auto& pi : pis) lam.push_back(isq * pi * isq);
    return lam;
  };

  // Bob 1 cloud SRM over all m0; Bob 1 satellite SRMs per m0; Bob 2 SRMs
  // per bin. Precompute them once.
  std::vector<std::vector<int>> cloud_words(cb.x0_words.begin(), cb.x0_words.end());
  auto lam0 = srm(cloud_words, c1, d1);
  std::vector<std::vector<Matrix>> lam1(cb.m0_count);
  for (int m0 = 0; m0 < cb.m0_count; ++m0) lam1[m0] = srm(cb.x1_words[m0], s1, d1);
  std::vector<std::vector<Matrix>> gam(cb.bin_count);
  std::vector<std::vector<int>> binwords;
  for (int g = 0; g < cb.bin_count; ++g) {
    int hi = std::min((g + 1) * cb.bin_size, cb.m0_count);
    binwords.assign(cb.x0_words.begin() + g * cb.bin_size, cb.x0_words.begin() + hi);
    gam[g] = srm(binwords, c2, d2);
  }

  // permutations for matricization
  std::vector<int> letter_dims;
  for (int i = 0; i < n; ++i) {
    letter_dims.push_back(d1);
    letter_dims.push_back(d2);
    letter_dims.push_back(env);
  }
  std::vector<int> b1_first, b2_first;
  for (int i = 0; i < n; ++i) b1_first.push_back(3 * i);
  for (int i = 0; i < n; ++i)
    for (int j : {1, 2}) b1_first.push_back(3 * i + j);
  for (int i = 0; i < n; ++i) b2_first.push_back(3 * i + 1);
  for (int i = 0; i < n; ++i)
    for (int j : {0, 2}) b2_first.push_back(3 * i + j);

  const int db1 = static_cast<int>(std::lround(std::pow(double(d1), n)));
  const int db2 = static_cast<int>(std::lround(std::pow(double(d2), n)));
  const int ntot = static_cast<int>(std::lround(total));

  SimReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.r0 = cb.r0;
  rep.r1 = cb.r1;
  rep.c12 = cb.c12;
  rep.seed = opts.seed;
  rep.decoder = "srm";
  std::vector<std::array<long, 5>> acc(trials);
  parallel_for(trials, opts.workers, [&](int t) {
    auto rng = derive_rng(opts.seed, static_cast<std::uint64_t>(t));
    int m0 = std::min(static_cast<int>(uniform01(rng) * cb.m0_count), cb.m0_count - 1);
    int m1 = std::min(static_cast<int>(uniform01(rng) * cb.m1_count), cb.m1_count - 1);
    const auto& x1s = cb.x1_words[m0][m1];
    Vector psi = Vector::Ones(1);
    for (int i = 0; i < n; ++i) psi = kron_vec(psi, dil[x1s[i]]);

    // measure a SRM family on the chosen half, collapse, return outcome
    auto measure = [&](Vector& state, const std::vector<Matrix>& lam,
                      const std::vector<int>& order, int dhalf) {
      Vector p = permute_subsystems_vec(state, letter_dims, order);
      Eigen::Map<const Matrix> m(p.data(), ntot / dhalf, dhalf);
      // Gram of the measured half: G(i,j) = <i| Tr_rest |psi><psi| |j>
      Matrix g = m.transpose() * m.conjugate();
      double u = uniform01(rng), cum = 0;
      int pick = -1;
      for (std::size_t k = 0; k < lam.size(); ++k) {
        cum += std::max(0.0, (lam[k].transpose() * g).trace().real());
        if (u <= cum) {
          pick = static_cast<int>(k);
          break;
        }
      }
      Matrix kr;
      if (pick < 0) {  // residual outcome: I - sum Lambda
        Matrix res = Matrix::Identity(dhalf, dhalf);
        for (const auto& l : lam) res -= l;
        kr = sqrt_psd(res);
        pick = 0;  // deterministic fallback message
      } else {
        kr = sqrt_psd(lam[pick]);
      }
      Matrix upd = m * kr.transpose();
      Vector flat = Eigen::Map<Vector>(upd.data(), ntot);
      // invert the permutation
      std::vector<int> inv(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
      std::vector<int> pdims(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) pdims[i] = letter_dims[order[i]];
      state = permute_subsystems_vec(flat, pdims, inv);
      double nn = state.norm();
      if (nn > 1e-12) state /= nn;
      return pick;
    };

    int hat_m0 = measure(psi, lam0, b1_first, db1);
    int hat_m1 = measure(psi, lam1[hat_m0], b1_first, db1);
    int g = cb.bin_of(hat_m0);
    int tilde_local = measure(psi, gam[g], b2_first, db2);
    int tilde_m0 = g * cb.bin_size + tilde_local;

    auto& a = acc[t];
    a = {0, 0, 0, 0, 0};
    if (hat_m0 != m0) a[1] = 1;
    if (hat_m0 == m0 && hat_m1 != m1) a[2] = 1;
    if (tilde_m0 != m0) a[3] = 1;
    if (hat_m0 != m0 || hat_m1 != m1 || tilde_m0 != m0) a[4] = 1;
  });
  for (const auto& a : acc) {
    rep.e1 += a[0];
    rep.e2 += a[1];
    rep.e3 += a[2];
    rep.e4 += a[3];
    rep.errors += a[4];
  }
  rep.empirical_error = trials > 0 ? double(rep.errors) / trials : 0.0;
  return rep;
}

}  // namespace qbc

#endif  // QBC_CODESIM_HPP
