#ifndef QBC_CHANNEL_HPP
#define QBC_CHANNEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "qbc/optim.hpp"
#include "qbc/rng.hpp"
#include "qbc/state.hpp"

namespace qbc {

constexpr double kTpTol = 1e-9;
constexpr double kKrausTrimTol = 1e-10;

struct invalid_channel_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CPTP map held as a Kraus-operator list.
struct QuantumChannel {
  std::vector<Matrix> kraus;
  std::vector<int> in_dims, out_dims;
  std::vector<std::string> in_labels, out_labels;

  int in_dim() const { return product_of(in_dims); }
  int out_dim() const { return product_of(out_dims); }

  void validate() const {
    if (kraus.empty()) throw invalid_channel_error("empty Kraus list");
    for (const auto& k : kraus)
      if (k.rows() != out_dim() || k.cols() != in_dim())
        throw invalid_channel_error("Kraus shape mismatch");
    Matrix s = Matrix::Zero(in_dim(), in_dim());
    for (const auto& k : kraus) s += k.adjoint() * k;
    double dev = (s - Matrix::Identity(in_dim(), in_dim())).cwiseAbs().maxCoeff();
    if (dev > kTpTol)
      throw invalid_channel_error("not trace preserving: deviation " + std::to_string(dev));
  }
};

inline Matrix apply_raw(const QuantumChannel& ch, const Matrix& rho) {
  Matrix out = Matrix::Zero(ch.out_dim(), ch.out_dim());
  for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

inline DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.in_dim())
    throw std::invalid_argument("apply: input dimension mismatch");
  return DensityOperator(apply_raw(ch, rho.matrix()), ch.out_dims, ch.out_labels, false);
}

// Apply the channel to the trailing tensor factor of a larger state,
// identity on the leading ref_dim factor.
inline Matrix apply_to_last_raw(const QuantumChannel& ch, const Matrix& rho, int ref_dim) {
  const int di = ch.in_dim(), dout = ch.out_dim();
  Matrix out = Matrix::Zero(ref_dim * dout, ref_dim * dout);
  // (I (x) K) rho (I (x) K)^+ blockwise over the ref index
  for (const auto& k : ch.kraus) {
    for (int r = 0; r < ref_dim; ++r)
      for (int c = 0; c < ref_dim; ++c)
        out.block(r * dout, c * dout, dout, dout) +=
            k * rho.block(r * di, c * di, di, di) * k.adjoint();
  }
  return out;
}

// Choi matrix with (in, out) leg ordering: C = sum_j vec(K_j) vec(K_j)^+,
// vec stacking K(b,a) at index a*out_dim + b.
inline Matrix choi_matrix(const QuantumChannel& ch) {
  const int di = ch.in_dim(), dout = ch.out_dim();
  Matrix c = Matrix::Zero(di * dout, di * dout);
  for (const auto& k : ch.kraus) {
    Vector v(di * dout);
    for (int a = 0; a < di; ++a)
      for (int b = 0; b < dout; ++b) v(a * dout + b) = k(b, a);
    c += v * v.adjoint();
  }
  return c;
}

// Minimal Kraus set via Choi eigendecomposition; drops modes below the
// trimming threshold so env_dim is stable.
inline QuantumChannel trim_kraus(const QuantumChannel& ch) {
  const int di = ch.in_dim(), dout = ch.out_dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi_matrix(ch));
  QuantumChannel out = ch;
  out.kraus.clear();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l <= kKrausTrimTol) continue;
    Matrix k(dout, di);
    for (int a = 0; a < di; ++a)
      for (int b = 0; b < dout; ++b) k(b, a) = std::sqrt(l) * es.eigenvectors()(a * dout + b, i);
    out.kraus.push_back(std::move(k));
  }
  return out;
}

struct IsometricExtension {
  Matrix isometry;  // (out_dim * env_dim) x in_dim, row index = out*env + e
  int env_dim = 0;
};

inline IsometricExtension stinespring(const QuantumChannel& ch_in) {
  QuantumChannel ch = trim_kraus(ch_in);
  const int di = ch.in_dim(), dout = ch.out_dim();
  const int env = static_cast<int>(ch.kraus.size());
  Matrix v = Matrix::Zero(dout * env, di);
  for (int j = 0; j < env; ++j)
    for (int b = 0; b < dout; ++b)
      for (int a = 0; a < di; ++a) v(b * env + j, a) = ch.kraus[j](b, a);
  return {std::move(v), env};
}

// Channel to the environment of the canonical trimmed dilation.
inline QuantumChannel complementary(const QuantumChannel& ch) {
  IsometricExtension ext = stinespring(ch);
  const int di = ch.in_dim(), dout = ch.out_dim(), env = ext.env_dim;
  QuantumChannel comp;
  comp.in_dims = ch.in_dims;
  comp.in_labels = ch.in_labels;
  comp.out_dims = {env};
  comp.out_labels = {"E"};
  for (int b = 0; b < dout; ++b) {
    Matrix k(env, di);
    for (int j = 0; j < env; ++j)
      for (int a = 0; a < di; ++a) k(j, a) = ext.isometry(b * env + j, a);
    comp.kraus.push_back(std::move(k));
  }
  return trim_kraus(comp);
}

inline QuantumChannel identity_channel(int d, const std::string& label = "B") {
  QuantumChannel ch;
  ch.kraus = {Matrix::Identity(d, d)};
  ch.in_dims = {d};
  ch.out_dims = {d};
  ch.in_labels = {"A"};
  ch.out_labels = {label};
  return ch;
}

// k-fold product channel N^(x)k.
inline QuantumChannel product_channel(const QuantumChannel& ch, int k) {
  QuantumChannel out = ch;
  for (int i = 1; i < k; ++i) {
    QuantumChannel next;
    for (const auto& a : out.kraus)
      for (const auto& b : ch.kraus) next.kraus.push_back(kron(a, b));
    next.in_dims = out.in_dims;
    next.in_dims.insert(next.in_dims.end(), ch.in_dims.begin(), ch.in_dims.end());
    next.out_dims = out.out_dims;
    next.out_dims.insert(next.out_dims.end(), ch.out_dims.begin(), ch.out_dims.end());
    for (std::size_t j = 0; j < out.in_labels.size(); ++j)
      next.in_labels.push_back(out.in_labels[j]);
    for (std::size_t j = 0; j < ch.in_labels.size(); ++j)
      next.in_labels.push_back(ch.in_labels[j] + "_" + std::to_string(i));
    for (std::size_t j = 0; j < out.out_labels.size(); ++j)
      next.out_labels.push_back(out.out_labels[j]);
    for (std::size_t j = 0; j < ch.out_labels.size(); ++j)
      next.out_labels.push_back(ch.out_labels[j] + "_" + std::to_string(i));
    out = trim_kraus(next);
  }
  return out;
}

// --- broadcast channel ---

struct BroadcastChannel {
  QuantumChannel channel;    // out_labels = {B1, B2}
  QuantumChannel marginal1;  // A -> B1
  QuantumChannel marginal2;  // A -> B2
  bool is_classical = false;
  bool is_hadamard = false;
  std::string kind = "generic";
  std::vector<double> params;
  // builder-provided degrading map B1 -> B2, when known by construction
  std::optional<QuantumChannel> known_degrading;
  // classical kernel, kept when is_classical: kernel(x, y1*ny2+y2)
  Eigen::MatrixXd kernel;
  int ny1 = 0, ny2 = 0;

  int in_dim() const { return channel.in_dim(); }
  int d1() const { return channel.out_dims[0]; }
  int d2() const { return channel.out_dims[1]; }
};

inline QuantumChannel marginal(const BroadcastChannel& bc, int which) {
  const auto& ch = bc.channel;
  if (ch.out_dims.size() != 2) throw invalid_channel_error("broadcast needs 2 outputs");
  const int da = ch.out_dims[0], db = ch.out_dims[1];
  QuantumChannel m;
  m.in_dims = ch.in_dims;
  m.in_labels = ch.in_labels;
  if (which == 1) {
    m.out_dims = {da};
    m.out_labels = {ch.out_labels[0]};
    for (const auto& k : ch.kraus)
      for (int y = 0; y < db; ++y) {
        Matrix kk(da, ch.in_dim());
        for (int b = 0; b < da; ++b) kk.row(b) = k.row(b * db + y);
        m.kraus.push_back(std::move(kk));
      }
  } else if (which == 2) {
    m.out_dims = {db};
    m.out_labels = {ch.out_labels[1]};
    for (const auto& k : ch.kraus)
      for (int y = 0; y < da; ++y) {
        Matrix kk(db, ch.in_dim());
        for (int b = 0; b < db; ++b) kk.row(b) = k.row(y * db + b);
        m.kraus.push_back(std::move(kk));
      }
  } else {
    throw std::invalid_argument("marginal: which must be 1 or 2");
  }
  return trim_kraus(m);
}

inline BroadcastChannel make_broadcast(QuantumChannel ch) {
  ch.validate();
  BroadcastChannel bc;
  bc.channel = std::move(ch);
  bc.marginal1 = marginal(bc, 1);
  bc.marginal2 = marginal(bc, 2);
  return bc;
}

// --- builders ---

// kernel(x, y1*ny2 + y2) = P(y1,y2|x)
inline BroadcastChannel classical_broadcast(const Eigen::MatrixXd& kernel, int ny1, int ny2) {
  const int nx = static_cast<int>(kernel.rows());
  if (kernel.cols() != ny1 * ny2) throw invalid_channel_error("kernel shape mismatch");
  for (int x = 0; x < nx; ++x) {
    if (kernel.row(x).minCoeff() < -1e-12 || std::abs(kernel.row(x).sum() - 1.0) > 1e-9)
      throw invalid_channel_error("kernel rows must be probability vectors");
  }
  QuantumChannel ch;
  ch.in_dims = {nx};
  ch.in_labels = {"A"};
  ch.out_dims = {ny1, ny2};
  ch.out_labels = {"B1", "B2"};
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny1 * ny2; ++y) {
      double p = kernel(x, y);
      if (p <= 0) continue;
      Matrix k = Matrix::Zero(ny1 * ny2, nx);
      k(y, x) = std::sqrt(p);
      ch.kraus.push_back(std::move(k));
    }
  BroadcastChannel bc = make_broadcast(std::move(ch));
  bc.is_classical = true;
  bc.kind = "classical";
  bc.kernel = kernel;
  bc.ny1 = ny1;
  bc.ny2 = ny2;
  return bc;
}

// Measure-and-prepare: Y1 stores the POVM outcome, B2 gets the prepared state.
inline BroadcastChannel hadamard_broadcast(const std::vector<Matrix>& povm,
                                           const std::vector<Matrix>& preps) {
  if (povm.size() != preps.size() || povm.empty())
    throw invalid_channel_error("POVM/preparation count mismatch");
  const int di = static_cast<int>(povm[0].rows());
  const int ny1 = static_cast<int>(povm.size());
  const int d2 = static_cast<int>(preps[0].rows());
  QuantumChannel ch;
  ch.in_dims = {di};
  ch.in_labels = {"A"};
  ch.out_dims = {ny1, d2};
  ch.out_labels = {"B1", "B2"};

  QuantumChannel degrading;  // Y1 -> B2: measure basis, prepare
  degrading.in_dims = {ny1};
  degrading.in_labels = {"B1"};
  degrading.out_dims = {d2};
  degrading.out_labels = {"B2"};

  for (int m = 0; m < ny1; ++m) {
    Eigen::SelfAdjointEigenSolver<Matrix> mes(povm[m]);
    Eigen::SelfAdjointEigenSolver<Matrix> pes(preps[m]);
    for (Eigen::Index i = 0; i < mes.eigenvalues().size(); ++i) {
      double w = mes.eigenvalues()(i);
      if (w <= 1e-14) continue;
      for (Eigen::Index kk = 0; kk < pes.eigenvalues().size(); ++kk) {
        double s = pes.eigenvalues()(kk);
        if (s <= 1e-14) continue;
        Matrix k = Matrix::Zero(ny1 * d2, di);
        Vector outv = Vector::Zero(ny1 * d2);
        for (int b = 0; b < d2; ++b) outv(m * d2 + b) = pes.eigenvectors()(b, kk);
        Vector meas = std::sqrt(w) * mes.eigenvectors().col(i);
        k = std::sqrt(s) * outv * meas.adjoint();
        ch.kraus.push_back(std::move(k));
      }
    }
    for (Eigen::Index kk = 0; kk < pes.eigenvalues().size(); ++kk) {
      double s = pes.eigenvalues()(kk);
      if (s <= 1e-14) continue;
      Matrix k = std::sqrt(s) * pes.eigenvectors().col(kk) *
                 basis_vector(ny1, m).adjoint();
      degrading.kraus.push_back(std::move(k));
    }
  }
  BroadcastChannel bc = make_broadcast(std::move(ch));
  bc.is_hadamard = true;
  bc.kind = "hadamard";
  degrading.validate();
  bc.known_degrading = trim_kraus(degrading);
  return bc;
}

// B1 receives the input through dephasing with parameter p1; B2 receives the
// environment of that dephasing, itself dephased with parameter p2.
inline BroadcastChannel qubit_dephasing_broadcast(double p1, double p2) {
  if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1)
    throw invalid_channel_error("dephasing parameters must be in [0,1]");
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  // dilation of dephasing-p1: |psi> -> sqrt(1-p1)|psi>|0> + sqrt(p1) Z|psi>|1>
  Matrix v = Matrix::Zero(4, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      v(b * 2 + 0, a) += std::sqrt(1.0 - p1) * (a == b ? 1.0 : 0.0);
      v(b * 2 + 1, a) += std::sqrt(p1) * z(b, a) * (a == b ? 1.0 : 0.0);
    }
  }
  QuantumChannel ch;
  ch.in_dims = {2};
  ch.in_labels = {"A"};
  ch.out_dims = {2, 2};
  ch.out_labels = {"B1", "B2"};
  Matrix l0 = std::sqrt(1.0 - p2) * Matrix::Identity(2, 2);
  Matrix l1 = std::sqrt(p2) * z;
  ch.kraus.push_back(kron(Matrix::Identity(2, 2), l0) * v);
  ch.kraus.push_back(kron(Matrix::Identity(2, 2), l1) * v);
  BroadcastChannel bc = make_broadcast(std::move(ch));
  bc.kind = "dephasing";
  bc.params = {p1, p2};
  return bc;
}

// Qubit erasure pair: input delivered intact to B1 w.p. 1-e1, to B2 w.p. 1-e2,
// both erased otherwise (requires e1+e2 >= 1). Outputs are qutrits with |2>
// as the erasure flag.
inline BroadcastChannel erasure_broadcast(double e1, double e2) {
  if (e1 < 0 || e1 > 1 || e2 < 0 || e2 > 1)
    throw invalid_channel_error("erasure parameters must be in [0,1]");
  if (e1 + e2 < 1.0 - 1e-12)
    throw invalid_channel_error("erasure_broadcast requires e1+e2 >= 1 (no cloning)");
  QuantumChannel ch;
  ch.in_dims = {2};
  ch.in_labels = {"A"};
  ch.out_dims = {3, 3};
  ch.out_labels = {"B1", "B2"};
  auto out_idx = [](int b1, int b2) { return b1 * 3 + b2; };
  if (1.0 - e1 > 1e-14) {
    Matrix k = Matrix::Zero(9, 2);
    for (int x = 0; x < 2; ++x) k(out_idx(x, 2), x) = std::sqrt(1.0 - e1);
    ch.kraus.push_back(std::move(k));
  }
  if (1.0 - e2 > 1e-14) {
    Matrix k = Matrix::Zero(9, 2);
    for (int x = 0; x < 2; ++x) k(out_idx(2, x), x) = std::sqrt(1.0 - e2);
    ch.kraus.push_back(std::move(k));
  }
  double both = e1 + e2 - 1.0;
  if (both > 1e-14) {
    for (int x = 0; x < 2; ++x) {
      Matrix k = Matrix::Zero(9, 2);
      k(out_idx(2, 2), x) = std::sqrt(both);
      ch.kraus.push_back(std::move(k));
    }
  }
  BroadcastChannel bc = make_broadcast(std::move(ch));
  bc.kind = "erasure";
  bc.params = {e1, e2};
  return bc;
}

// Routes the input unchanged to B1; B2 receives the fixed state sigma.
inline BroadcastChannel route_to_b1(const Matrix& sigma_b2, int in_dim = 2) {
  const int d2 = static_cast<int>(sigma_b2.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma_b2);
  QuantumChannel ch;
  ch.in_dims = {in_dim};
  ch.in_labels = {"A"};
  ch.out_dims = {in_dim, d2};
  ch.out_labels = {"B1", "B2"};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double s = es.eigenvalues()(i);
    if (s <= 1e-14) continue;
    Matrix k = Matrix::Zero(in_dim * d2, in_dim);
    for (int a = 0; a < in_dim; ++a)
      for (int b = 0; b < d2; ++b) k(a * d2 + b, a) = std::sqrt(s) * es.eigenvectors()(b, i);
    ch.kraus.push_back(std::move(k));
  }
  BroadcastChannel bc = make_broadcast(std::move(ch));
  bc.kind = "route_b1";
  return bc;
}

// --- degradability check ---

struct DegradedOptions {
  double tol = 1e-6;
  int restarts = 16;
  int env_dim = 0;  // 0 -> d1 * d2 (Choi-rank sufficient)
  int workers = 1;
  std::uint64_t seed = 5;
  int nm_iters = 600;
};

struct DegradedCheck {
  bool found = false;
  QuantumChannel certificate;
  double residual = std::numeric_limits<double>::infinity();
  bool searched = false;  // not-found after numerical search is NOT a proof
};

// Tomographically complete probe states on dimension d.
inline std::vector<Matrix> probe_states(int d) {
  std::vector<Matrix> probes;
  for (int i = 0; i < d; ++i) {
    Vector v = basis_vector(d, i);
    probes.push_back(v * v.adjoint());
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vector v = (basis_vector(d, i) + basis_vector(d, j)) / std::sqrt(2.0);
      probes.push_back(v * v.adjoint());
      Vector w = (basis_vector(d, i) + Complex(0, 1) * basis_vector(d, j)) / std::sqrt(2.0);
      probes.push_back(w * w.adjoint());
    }
  return probes;
}

namespace detail {

inline QuantumChannel channel_from_isometry_params(const std::vector<double>& x, int din,
                                                   int dout, int env) {
  Matrix g(dout * env, din);
  for (int c = 0, idx = 0; c < din; ++c)
    for (int r = 0; r < dout * env; ++r, ++idx)
      g(r, c) = Complex(x[2 * idx], x[2 * idx + 1]);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = qr.householderQ() * Matrix::Identity(dout * env, din);
  QuantumChannel ch;
  ch.in_dims = {din};
  ch.in_labels = {"B1"};
  ch.out_dims = {dout};
  ch.out_labels = {"B2"};
  for (int e = 0; e < env; ++e) {
    Matrix k(dout, din);
    for (int b = 0; b < dout; ++b)
      for (int a = 0; a < din; ++a) k(b, a) = v(b * env + e, a);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

}  // namespace detail

// Searches for a degrading channel P: B1 -> B2 with P o N1 ~ N2. A not-found
// result is not a proof of non-degradedness.
inline DegradedCheck check_degraded(const BroadcastChannel& bc,
                                    const DegradedOptions& opts = {}) {
  const int din = bc.d1(), dout = bc.d2();
  auto probes = probe_states(bc.in_dim());
  std::vector<Matrix> out1, out2;
  for (const auto& p : probes) {
    out1.push_back(apply_raw(bc.marginal1, p));
    out2.push_back(apply_raw(bc.marginal2, p));
  }
  auto residual_of = [&](const QuantumChannel& cand) {
    double worst = 0.0;
    for (std::size_t i = 0; i < out1.size(); ++i)
      worst = std::max(worst, trace_distance_raw(apply_raw(cand, out1[i]), out2[i]));
    return worst;
  };

  DegradedCheck best;
  if (bc.known_degrading) {
    double r = residual_of(*bc.known_degrading);
    if (r < best.residual) {
      best.residual = r;
      best.certificate = *bc.known_degrading;
    }
  }
  // identity candidate when dims allow (covers marginal2 == marginal1)
  if (din == dout) {
    QuantumChannel id = identity_channel(din, "B2");
    double r = residual_of(id);
    if (r < best.residual) {
      best.residual = r;
      best.certificate = id;
    }
  }
  if (best.residual <= opts.tol) {
    best.found = true;
    return best;
  }

  if (bc.is_classical) {
    // restrict to classical degrading kernels Q(y2|y1); far smaller search
    auto kernel_channel = [&](const std::vector<double>& z) {
      QuantumChannel cand;
      cand.in_dims = {din};
      cand.in_labels = {"B1"};
      cand.out_dims = {dout};
      cand.out_labels = {"B2"};
      for (int y1 = 0; y1 < din; ++y1) {
        std::vector<double> row(z.begin() + y1 * dout, z.begin() + (y1 + 1) * dout);
        auto q = softmax(row);
        for (int y2 = 0; y2 < dout; ++y2) {
          if (q[y2] <= 1e-15) continue;
          Matrix k = Matrix::Zero(dout, din);
          k(y2, y1) = std::sqrt(q[y2]);
          cand.kraus.push_back(std::move(k));
        }
      }
      return cand;
    };
    for (int s = 0; s < std::max(4, opts.restarts / 2); ++s) {
      auto rng = derive_rng(opts.seed ^ 0x9e37u, static_cast<std::uint64_t>(s));
      std::vector<double> z(static_cast<std::size_t>(din) * dout);
      for (auto& v : z) v = normal(rng);
      auto obj = [&](const std::vector<double>& p) { return residual_of(kernel_channel(p)); };
      nelder_mead(obj, z, {800, 1.0, 1e-12});
      double r = pattern_search(obj, z, 0.5, 1e-7, 400);
      if (r < best.residual) {
        best.residual = r;
        best.certificate = kernel_channel(z);
      }
    }
    best.searched = true;
    if (best.residual <= opts.tol) {
      best.found = true;
      return best;
    }
  }

  const int env = opts.env_dim > 0 ? opts.env_dim : din * dout;
  const int nparam = 2 * din * dout * env;
  std::vector<double> results(opts.restarts,
                              std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> points(opts.restarts);
  parallel_for(opts.restarts, opts.workers, [&](int s) {
    auto rng = derive_rng(opts.seed, static_cast<std::uint64_t>(s));
    std::vector<double> x(nparam);
    for (auto& v : x) v = normal(rng);
    NelderMeadOptions nm;
    nm.max_iters = opts.nm_iters;
    nm.init_step = 0.3;
    double r = nelder_mead(
        [&](const std::vector<double>& p) {
          return residual_of(detail::channel_from_isometry_params(p, din, dout, env));
        },
        x, nm);
    results[s] = r;
    points[s] = std::move(x);
  });
  for (int s = 0; s < opts.restarts; ++s) {
    if (results[s] < best.residual) {
      best.residual = results[s];
      best.certificate = detail::channel_from_isometry_params(points[s], din, dout, env);
    }
  }
  best.searched = true;
  best.found = best.residual <= opts.tol;
  if (best.found) best.certificate = trim_kraus(best.certificate);
  return best;
}

}  // namespace qbc

#endif  // QBC_CHANNEL_HPP
