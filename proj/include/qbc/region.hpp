#ifndef QBC_REGION_HPP
#define QBC_REGION_HPP

#include <optional>
#include <string>
#include <vector>

#include "qbc/channel.hpp"
#include "qbc/hull.hpp"
#include "qbc/optim.hpp"
#include "qbc/state.hpp"

namespace qbc {

// Classical-message input: a pmf over (x0, x1) with a pure channel input
// attached to every symbol pair.
struct InputEnsemble {
  Eigen::MatrixXd pmf;                       // card0 x card1
  std::vector<std::vector<Vector>> states;   // [x0][x1], channel-input kets
  int card0 = 0, card1 = 0;

  void validate(int in_dim) const {
    if (pmf.rows() != card0 || pmf.cols() != card1)
      throw std::invalid_argument("ensemble pmf shape mismatch");
    if (std::abs(pmf.sum() - 1.0) > 1e-12 || pmf.minCoeff() < -1e-14)
      throw std::invalid_argument("ensemble pmf is not a distribution");
    for (const auto& row : states)
      for (const auto& s : row)
        if (s.size() != in_dim || std::abs(s.norm() - 1.0) > 1e-9)
          throw std::invalid_argument("ensemble state invalid");
  }
};

// Cardinality caps sufficient for the classical-conferencing objectives.
inline int card0_cap(int d) { return d * d + 2; }
inline int card1_cap(int d) { return (d * d + 2) * d * d + 1; }

struct ClassicalBounds {
  double r0 = 0, r1 = 0, sum = 0;
};

struct RatePoint {
  double x = 0, y = 0;       // (R0,R1) or (Q1,Q2)
  double b0 = 0, b1 = 0, bsum = 0;
  std::optional<InputEnsemble> ens;  // classical witness
  Matrix state;                      // quantum witness (density operator)
  std::vector<int> state_dims;
  double i1 = 0, i2 = 0;  // coherent informations of the quantum witness
};

struct RateRegion {
  std::string kind = "inner";
  double conferencing = 0;
  std::vector<RatePoint> points;
  std::vector<Point2> hull;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
};

struct RegionOptions {
  int weights = 33;
  int restarts = 8;
  int nm_iters = 300;
  int card0 = 0, card1 = 0;  // 0 -> min(cap, 4)
  int ref_dim = 0;           // quantum reference dims; 0 -> channel input dim
  int t_dim = 4;             // auxiliary system cap for the outer bound
  int workers = 1;
  std::uint64_t seed = 11;
};

// Three right-hand sides of the conferencing region: I(X0;B2)+C12,
// I(X1;B1|X0), I(X0 X1;B1), from the cq state of the ensemble.
inline ClassicalBounds eval_classical_point(const InputEnsemble& ens,
                                            const BroadcastChannel& bc, double c12) {
  ens.validate(bc.in_dim());
  const int d1 = bc.d1(), d2 = bc.d2();
  Matrix rho_b1 = Matrix::Zero(d1, d1), rho_b2 = Matrix::Zero(d2, d2);
  double h_b1_given_x = 0;   // H(B1|X0 X1)
  double h_b1_given_x0 = 0;  // H(B1|X0)
  double h_b2_given_x0 = 0;  // H(B2|X0)
  for (int x0 = 0; x0 < ens.card0; ++x0) {
    double px0 = ens.pmf.row(x0).sum();
    Matrix c_b1 = Matrix::Zero(d1, d1), c_b2 = Matrix::Zero(d2, d2);
    for (int x1 = 0; x1 < ens.card1; ++x1) {
      double p = ens.pmf(x0, x1);
      if (p <= 1e-15) continue;
      Matrix theta = ens.states[x0][x1] * ens.states[x0][x1].adjoint();
      Matrix o1 = apply_raw(bc.marginal1, theta);
      Matrix o2 = apply_raw(bc.marginal2, theta);
      c_b1 += p * o1;
      c_b2 += p * o2;
      h_b1_given_x += p * entropy_raw(o1);
    }
    rho_b1 += c_b1;
    rho_b2 += c_b2;
    if (px0 > 1e-15) {
      h_b1_given_x0 += px0 * entropy_raw(c_b1 / px0);
      h_b2_given_x0 += px0 * entropy_raw(c_b2 / px0);
    }
  }
  ClassicalBounds b;
  b.r0 = entropy_raw(rho_b2) - h_b2_given_x0 + c12;
  b.r1 = h_b1_given_x0 - h_b1_given_x;
  b.sum = entropy_raw(rho_b1) - h_b1_given_x;
  return b;
}

namespace detail {

inline InputEnsemble decode_ensemble(const std::vector<double>& z, int c0, int c1,
                                     int din) {
  InputEnsemble ens;
  ens.card0 = c0;
  ens.card1 = c1;
  std::vector<double> logits(z.begin(), z.begin() + c0 * c1);
  auto p = softmax(logits);
  ens.pmf.resize(c0, c1);
  ens.states.assign(c0, std::vector<Vector>(c1));
  std::size_t off = static_cast<std::size_t>(c0) * c1;
  for (int a = 0; a < c0; ++a)
    for (int b = 0; b < c1; ++b) {
      ens.pmf(a, b) = p[a * c1 + b];
      Vector v(din);
      for (int i = 0; i < din; ++i) {
        v(i) = Complex(z[off], z[off + 1]);
        off += 2;
      }
      double n = v.norm();
      if (n < 1e-12) {
        v = basis_vector(din, (a * c1 + b) % din);
      } else {
        v /= n;
      }
      ens.states[a][b] = v;
    }
  return ens;
}

inline std::vector<double> ensemble_start(int c0, int c1, int din, int restart,
                                          std::mt19937_64& rng) {
  std::vector<double> z(static_cast<std::size_t>(c0) * c1 * (1 + 2 * din), 0.0);
  if (restart <= 1) {
    // deterministic starts: uniform pmf with basis-state inputs driven by
    // x1 (restart 0) or by x0 (restart 1)
    std::size_t off = static_cast<std::size_t>(c0) * c1;
    for (int a = 0; a < c0; ++a)
      for (int b = 0; b < c1; ++b) {
        int idx = restart == 0 ? (a * c1 + b) % din : (b * c0 + a) % din;
        z[off + 2 * idx] = 1.0;
        off += 2 * static_cast<std::size_t>(din);
      }
  } else {
    for (auto& v : z) v = normal(rng);
  }
  return z;
}

// Scalarization weights; mu endpoints get a lexicographic nudge so flat
// frontier segments resolve toward the larger other coordinate.
inline Point2 weight_pair(int wi, int n_weights) {
  double mu = n_weights == 1 ? 0.5 : double(wi) / (n_weights - 1);
  double wx = mu, wy = 1.0 - mu;
  if (wi == 0) wx = 1e-6;
  if (wi == n_weights - 1) wy = 1e-6;
  return {wx, wy};
}

inline Point2 best_vertex(const std::vector<Point2>& verts, double wx, double wy) {
  Point2 best = {0, 0};
  double bestv = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) {
    double s = wx * v[0] + wy * v[1];
    if (s > bestv + 1e-12 ||
        (s > bestv - 1e-12 && v[0] + v[1] > best[0] + best[1] + 1e-12)) {
      bestv = s;
      best = v;
    }
  }
  return best;
}

}  // namespace detail

// Scalarized multi-start search over ensembles under the cardinality caps;
// the region is the hull of all per-weight constraint polytopes.
inline RateRegion classical_region(const BroadcastChannel& bc, double c12,
                                   const RegionOptions& opts = {}) {
  const int din = bc.in_dim();
  const int c0 = opts.card0 > 0 ? opts.card0 : std::min(card0_cap(din), 4);
  const int c1 = opts.card1 > 0 ? opts.card1 : std::min(card1_cap(din), 4);
  const int nparam = c0 * c1 * (1 + 2 * din);

  const int tasks = opts.weights * opts.restarts;
  std::vector<double> scores(tasks, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> sols(tasks);
  parallel_for(tasks, opts.workers, [&](int t) {
    const int wi = t / opts.restarts, s = t % opts.restarts;
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    auto obj = [&](const std::vector<double>& z) {
      auto ens = detail::decode_ensemble(z, c0, c1, din);
      auto b = eval_classical_point(ens, bc, c12);
      auto verts = bound_triple_vertices(b.r0, b.r1, b.sum);
      auto v = detail::best_vertex(verts, wx, wy);
      return -(wx * v[0] + wy * v[1]);
    };
    auto rng = derive_rng(opts.seed, static_cast<std::uint64_t>(t));
    std::vector<double> z = detail::ensemble_start(c0, c1, din, s, rng);
    (void)nparam;
    NelderMeadOptions nm;
    nm.max_iters = opts.nm_iters;
    nm.init_step = 0.4;
    double f = nelder_mead(obj, z, nm);
    scores[t] = -f;
    sols[t] = std::move(z);
  });

  RateRegion region;
  region.kind = "inner";
  region.conferencing = c12;
  region.seed = opts.seed;
  std::vector<Point2> cloud;
  for (int wi = 0; wi < opts.weights; ++wi) {
    int best = wi * opts.restarts;
    for (int s = 1; s < opts.restarts; ++s)
      if (scores[wi * opts.restarts + s] > scores[best]) best = wi * opts.restarts + s;
    auto ens = detail::decode_ensemble(sols[best], c0, c1, din);
    auto b = eval_classical_point(ens, bc, c12);
    auto verts = bound_triple_vertices(b.r0, b.r1, b.sum);
    cloud.insert(cloud.end(), verts.begin(), verts.end());
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    RatePoint pt;
    auto v = detail::best_vertex(verts, wx, wy);
    pt.x = v[0];
    pt.y = v[1];
    pt.b0 = b.r0;
    pt.b1 = b.r1;
    pt.bsum = b.sum;
    pt.ens = std::move(ens);
    region.points.push_back(std::move(pt));
  }
  region.hull = downward_hull(cloud);
  return region;
}

// k-letter evaluation, normalized by k. Guarded: k in {1,2}, k=2 only for
// qubit-sized inputs.
inline RateRegion multi_letter_classical_region(const BroadcastChannel& bc, double c12,
                                                int k, const RegionOptions& opts = {}) {
  if (k < 1 || k > 2) throw std::invalid_argument("k must be 1 or 2");
  if (k == 1) return classical_region(bc, c12, opts);
  if (bc.in_dim() > 2)
    throw std::invalid_argument("k=2 limited to input dimension <= 2");
  BroadcastChannel prod;
  QuantumChannel ch2 = product_channel(bc.channel, 2);
  // regroup outputs as (B1 B1', B2 B2')
  const int d1 = bc.d1(), d2 = bc.d2();
  QuantumChannel grouped = ch2;
  grouped.out_dims = {d1 * d1, d2 * d2};
  grouped.out_labels = {"B1", "B2"};
  std::vector<int> perm_dims = {d1, d2, d1, d2};
  for (auto& kmat : grouped.kraus) {
    Matrix nk(kmat.rows(), kmat.cols());
    // permute output order (B1 B2 B1' B2') -> (B1 B1' B2 B2')
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b)
        for (int c = 0; c < d1; ++c)
          for (int d = 0; d < d2; ++d) {
            int src = ((a * d2 + b) * d1 + c) * d2 + d;
            int dst = ((a * d1 + c) * d2 + b) * d2 + d;
            nk.row(dst) = kmat.row(src);
          }
    kmat = nk;
  }
  prod = make_broadcast(std::move(grouped));
  prod.is_classical = bc.is_classical;
  RegionOptions o2 = opts;
  const int d2in = bc.in_dim() * bc.in_dim();
  // per-letter cardinalities square under the product alphabet
  o2.card0 = std::min(card0_cap(d2in), opts.card0 > 0 ? opts.card0 * opts.card0 : 4);
  o2.card1 = std::min(card1_cap(d2in), opts.card1 > 0 ? opts.card1 * opts.card1 : 4);
  RateRegion r = classical_region(prod, 2 * c12, o2);
  r.conferencing = c12;
  r.hull = scale_hull(r.hull, 0.5);
  for (auto& p : r.points) {
    p.x *= 0.5;
    p.y *= 0.5;
    p.b0 *= 0.5;
    p.b1 *= 0.5;
    p.bsum *= 0.5;
  }
  r.notes.push_back("k=2 evaluation normalized per channel use");
  return r;
}

// Best single-user Holevo information of a point-to-point channel; used as
// an oracle-style reference for saturated conferencing.
inline double single_user_holevo(const QuantumChannel& ch, const RegionOptions& opts = {}) {
  const int din = ch.in_dim();
  const int card = std::min(din * din + 1, 5);
  auto obj = [&](const std::vector<double>& z) {
    std::vector<double> logits(z.begin(), z.begin() + card);
    auto p = softmax(logits);
    Matrix avg = Matrix::Zero(ch.out_dim(), ch.out_dim());
    double cond = 0;
    std::size_t off = card;
    for (int i = 0; i < card; ++i) {
      Vector v(din);
      for (int d = 0; d < din; ++d) {
        v(d) = Complex(z[off], z[off + 1]);
        off += 2;
      }
      if (v.norm() < 1e-12) v = basis_vector(din, i % din);
      v /= v.norm();
      Matrix out = apply_raw(ch, v * v.adjoint());
      avg += p[i] * out;
      cond += p[i] * entropy_raw(out);
    }
    return -(entropy_raw(avg) - cond);
  };
  double best = 0;
  for (int s = 0; s < std::max(2, opts.restarts); ++s) {
    auto rng = derive_rng(opts.seed ^ 0x51u, static_cast<std::uint64_t>(s));
    std::vector<double> z(card * (1 + 2 * din), 0.0);
    if (s == 0) {
      std::size_t off = card;
      for (int i = 0; i < card; ++i) {
        z[off + 2 * (i % din)] = 1.0;
        off += 2 * static_cast<std::size_t>(din);
      }
    } else {
      for (auto& v : z) v = normal(rng);
    }
    NelderMeadOptions nm;
    nm.max_iters = opts.nm_iters;
    best = std::max(best, -nelder_mead(obj, z, nm));
  }
  return best;
}

// --- quantum regions ---

struct QuantumBounds {
  double q1 = 0, q2 = 0, sum = 0;
  double i1 = 0, i2 = 0;  // I(A1>B1), I(A2>B2) of the evaluated state
};

inline QuantumBounds quantum_inner_point(const DensityOperator& rho,
                                         const BroadcastChannel& bc, double cq12) {
  const auto& dims = rho.dims();
  if (dims.size() != 3 || dims[2] != bc.in_dim())
    throw std::invalid_argument("state must live on {A1, A2, A'} with A' = input");
  Matrix out = apply_to_last_raw(bc.channel, rho.matrix(), dims[0] * dims[1]);
  DensityOperator joint(out, {dims[0], dims[1], bc.d1(), bc.d2()},
                        {"A1", "A2", "B1", "B2"}, false);
  QuantumBounds b;
  b.i1 = coherent_information(joint, {"A1"}, {"B1"});
  b.i2 = coherent_information(joint, {"A2"}, {"B2"});
  b.q1 = b.i1;
  b.q2 = b.i2 + cq12;
  b.sum = b.i1 + b.i2;
  return b;
}

namespace detail {

inline DensityOperator state_from_params(const std::vector<double>& z,
                                         const std::vector<int>& dims,
                                         const std::vector<std::string>& labels) {
  const int dim = product_of(dims);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(z[2 * i], z[2 * i + 1]);
  if (v.norm() < 1e-12) v = basis_vector(dim, 0);
  v /= v.norm();
  return DensityOperator::from_pure(v, dims, labels);
}

}  // namespace detail

// Inner region: hull over scalarized optima of the constraint triples plus
// the two corner points each optimum induces.
inline RateRegion quantum_inner_region(const BroadcastChannel& bc, double cq12,
                                       const RegionOptions& opts = {}) {
  const int din = bc.in_dim();
  const int r = opts.ref_dim > 0 ? opts.ref_dim : din;
  const std::vector<int> dims = {r, r, din};
  const std::vector<std::string> labels = {"A1", "A2", "A'"};
  const int nparam = 2 * r * r * din;

  const int tasks = opts.weights * opts.restarts;
  std::vector<double> scores(tasks, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> sols(tasks);
  parallel_for(tasks, opts.workers, [&](int t) {
    const int wi = t / opts.restarts, s = t % opts.restarts;
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    auto obj = [&](const std::vector<double>& z) {
      auto rho = detail::state_from_params(z, dims, labels);
      auto b = quantum_inner_point(rho, bc, cq12);
      auto verts = bound_triple_vertices(b.q1, b.q2, b.sum);
      auto v = detail::best_vertex(verts, wx, wy);
      return -(wx * v[0] + wy * v[1]);
    };
    auto rng = derive_rng(opts.seed ^ 0x71u, static_cast<std::uint64_t>(t));
    std::vector<double> z(nparam);
    if (s == 0) {
      // maximally entangled A1:A' start
      std::fill(z.begin(), z.end(), 0.0);
      for (int j = 0; j < std::min(r, din); ++j)
        z[2 * ((j * r + 0) * din + j)] = 1.0;
    } else if (s == 1) {
      std::fill(z.begin(), z.end(), 0.0);
      for (int j = 0; j < std::min(r, din); ++j)
        z[2 * ((0 * r + j) * din + j)] = 1.0;  // A2:A' entangled
    } else {
      for (auto& v : z) v = normal(rng);
    }
    NelderMeadOptions nm;
    nm.max_iters = opts.nm_iters;
    nm.init_step = 0.4;
    scores[t] = -nelder_mead(obj, z, nm);
    sols[t] = std::move(z);
  });

  RateRegion region;
  region.kind = "inner";
  region.conferencing = cq12;
  region.seed = opts.seed;
  std::vector<Point2> cloud;
  for (int wi = 0; wi < opts.weights; ++wi) {
    int best = wi * opts.restarts;
    for (int s = 1; s < opts.restarts; ++s)
      if (scores[wi * opts.restarts + s] > scores[best]) best = wi * opts.restarts + s;
    auto rho = detail::state_from_params(sols[best], dims, labels);
    auto b = quantum_inner_point(rho, bc, cq12);
    auto verts = bound_triple_vertices(b.q1, b.q2, b.sum);
    cloud.insert(cloud.end(), verts.begin(), verts.end());
    // corner points induced by the optimum: (I1, I2) and (I1 - CQ12, I2 + CQ12)
    Point2 corner1 = {std::max(0.0, b.i1), std::max(0.0, b.i2)};
    Point2 corner2 = {std::max(0.0, b.i1 - cq12), std::max(0.0, b.i2 + cq12)};
    if (b.i1 >= 0 && b.i2 >= 0) cloud.push_back(corner1);
    if (b.i1 - cq12 >= 0 && b.i2 + cq12 >= 0) cloud.push_back(corner2);
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    RatePoint pt;
    auto v = detail::best_vertex(verts, wx, wy);
    pt.x = v[0];
    pt.y = v[1];
    pt.b0 = b.q1;
    pt.b1 = b.q2;
    pt.bsum = b.sum;
    pt.i1 = b.i1;
    pt.i2 = b.i2;
    pt.state = rho.matrix();
    pt.state_dims = dims;
    region.points.push_back(std::move(pt));
  }
  region.hull = downward_hull(cloud);
  return region;
}

inline QuantumBounds quantum_outer_point(const DensityOperator& rho,
                                         const BroadcastChannel& bc, double cq12) {
  const auto& dims = rho.dims();  // {T, A1, A2, A'}
  if (dims.size() != 4 || dims[3] != bc.in_dim())
    throw std::invalid_argument("state must live on {T, A1, A2, A'}");
  Matrix out = apply_to_last_raw(bc.channel, rho.matrix(), dims[0] * dims[1] * dims[2]);
  DensityOperator joint(out, {dims[0], dims[1], dims[2], bc.d1(), bc.d2()},
                        {"T", "A1", "A2", "B1", "B2"}, false);
  QuantumBounds b;
  b.i1 = coherent_information(joint, {"A1"}, {"B1"});
  b.i2 = coherent_information(joint, {"A2"}, {"B2"});
  b.q1 = b.i1;
  b.q2 = coherent_information(joint, {"A2", "T"}, {"B2"}) + cq12;
  b.sum = b.i1 + coherent_information(joint, {"A2"}, {"B1", "B2"});
  return b;
}

// Single-letter evaluation of the outer bound with a capped auxiliary
// system; seeded with the inner region's witnesses so ordering inner <=
// outer is respected by construction.
inline RateRegion quantum_outer_region_single_letter(const BroadcastChannel& bc,
                                                     double cq12,
                                                     const RegionOptions& opts = {},
                                                     const RateRegion* inner_seed = nullptr) {
  const int din = bc.in_dim();
  const int r = opts.ref_dim > 0 ? opts.ref_dim : din;
  const int td = std::max(1, opts.t_dim);
  const std::vector<int> dims = {td, r, r, din};
  const std::vector<std::string> labels = {"T", "A1", "A2", "A'"};
  const int nparam = 2 * td * r * r * din;

  // inner witnesses embedded with trivial (pure) T
  std::vector<std::vector<double>> seeds;
  if (inner_seed) {
    for (const auto& pt : inner_seed->points) {
      if (pt.state.size() == 0) {
        seeds.emplace_back();
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(pt.state);
      Eigen::Index top;
      es.eigenvalues().maxCoeff(&top);
      Vector psi = es.eigenvectors().col(top);  // witnesses are pure states
      std::vector<double> z(nparam, 0.0);
      for (int i = 0; i < psi.size() && i < r * r * din; ++i) {
        z[2 * i] = psi(i).real();
        z[2 * i + 1] = psi(i).imag();
      }
      seeds.push_back(std::move(z));
    }
  }

  const int tasks = opts.weights * opts.restarts;
  std::vector<double> scores(tasks, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> sols(tasks);
  parallel_for(tasks, opts.workers, [&](int t) {
    const int wi = t / opts.restarts, s = t % opts.restarts;
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    auto obj = [&](const std::vector<double>& z) {
      auto rho = detail::state_from_params(z, dims, labels);
      auto b = quantum_outer_point(rho, bc, cq12);
      auto verts = bound_triple_vertices(b.q1, b.q2, b.sum);
      auto v = detail::best_vertex(verts, wx, wy);
      return -(wx * v[0] + wy * v[1]);
    };
    auto rng = derive_rng(opts.seed ^ 0x93u, static_cast<std::uint64_t>(t));
    std::vector<double> z;
    // restart 0 reuses this weight's inner witness so inner <= outer holds
    // pointwise along every scalarization direction
    if (s == 0 && wi < static_cast<int>(seeds.size()) && !seeds[wi].empty()) {
      z = seeds[wi];
    } else {
      z.resize(nparam);
      for (auto& v : z) v = normal(rng);
    }
    NelderMeadOptions nm;
    nm.max_iters = opts.nm_iters;
    nm.init_step = 0.4;
    scores[t] = -nelder_mead(obj, z, nm);
    sols[t] = std::move(z);
  });

  RateRegion region;
  region.kind = "outer";
  region.conferencing = cq12;
  region.seed = opts.seed;
  region.notes.push_back("heuristic cap on T (dim " + std::to_string(td) + ")");
  region.notes.push_back("single-letter evaluation of a regularized expression");
  std::vector<Point2> cloud;
  for (int wi = 0; wi < opts.weights; ++wi) {
    int best = wi * opts.restarts;
    for (int s = 1; s < opts.restarts; ++s)
      if (scores[wi * opts.restarts + s] > scores[best]) best = wi * opts.restarts + s;
    auto rho = detail::state_from_params(sols[best], dims, labels);
    auto b = quantum_outer_point(rho, bc, cq12);
    auto verts = bound_triple_vertices(b.q1, b.q2, b.sum);
    cloud.insert(cloud.end(), verts.begin(), verts.end());
    auto [wx, wy] = detail::weight_pair(wi, opts.weights);
    RatePoint pt;
    auto v = detail::best_vertex(verts, wx, wy);
    pt.x = v[0];
    pt.y = v[1];
    pt.b0 = b.q1;
    pt.b1 = b.q2;
    pt.bsum = b.sum;
    pt.i1 = b.i1;
    pt.i2 = b.i2;
    pt.state = rho.matrix();
    pt.state_dims = dims;
    region.points.push_back(std::move(pt));
  }
  region.hull = downward_hull(cloud);
  return region;
}

}  // namespace qbc

#endif  // QBC_REGION_HPP
