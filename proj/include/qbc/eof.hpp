#ifndef QBC_EOF_HPP
#define QBC_EOF_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "qbc/rng.hpp"
#include "qbc/state.hpp"

namespace qbc {

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Wootters closed form for two-qubit states. Exact; also serves as the
// cross-check for the numeric minimizer.
inline double concurrence_two_qubit(const Matrix& rho) {
  Matrix sy2(4, 4);
  sy2.setZero();
  // sigma_y (x) sigma_y in the computational basis
  sy2(0, 3) = Complex(-1, 0);
  sy2(1, 2) = Complex(1, 0);
  sy2(2, 1) = Complex(1, 0);
  sy2(3, 0) = Complex(-1, 0);
  Matrix rho_tilde = sy2 * rho.conjugate() * sy2;
  Eigen::ComplexEigenSolver<Matrix> es(rho * rho_tilde, false);
  std::vector<double> lam;
  for (int i = 0; i < 4; ++i)
    lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline double eof_from_concurrence(double c) {
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

struct EofOptions {
  int decomposition_size = 0;  // 0 -> rank(rho)^2
  int restarts = 32;
  int max_sweeps = 80;
  double tol = 1e-10;
  std::uint64_t seed = 7;
  bool two_qubit_closed_form = true;  // exact fast path for 2 (x) 2
};

struct EofResult {
  double value = 0.0;
  bool converged = true;  // false: value is only an upper bound on EoF
  bool closed_form = false;
};

namespace detail {

// p * H(marginal/p) for an unnormalized decomposition vector w on A (x) B.
inline double weighted_marginal_entropy(const Vector& w, int da, int db) {
  double p = w.squaredNorm();
  if (p < 1e-15) return 0.0;
  Matrix m(da, da);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 <= a; ++a2) {
      Complex s = 0.0;
      for (int b = 0; b < db; ++b) s += w(a * db + b) * std::conj(w(a2 * db + b));
      m(a, a2) = s;
      m(a2, a) = std::conj(s);
    }
  m /= p;
  double h = (da == 2) ? entropy_qubit_raw(m) : entropy_raw(m);
  return p * h;
}

struct EofProblem {
  std::vector<Vector> roots;  // sqrt(lambda_i) * eigvec_i, one per nonzero eigenvalue
  int da = 0, db = 0;

  double objective(const std::vector<Vector>& w) const {
    double s = 0.0;
    for (const auto& wj : w) s += weighted_marginal_entropy(wj, da, db);
    return s;
  }
};

// One multi-start instance of the decomposition search: vectors w_j are rows of
// U * roots with U an m x r isometry-transpose; pairwise 2x2 rotations preserve
// the completeness constraint sum_j |w_j><w_j| = rho.
inline double eof_single_start(const EofProblem& pb, int m, std::mt19937_64& rng,
                               int max_sweeps, double tol, bool* converged) {
  const int r = static_cast<int>(pb.roots.size());
  const int dim = pb.da * pb.db;

  // random m x r matrix with orthonormal columns
  Matrix g(m, r);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ() * Matrix::Identity(m, r);

  std::vector<Vector> w(m, Vector::Zero(dim));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < r; ++i) w[j] += u(j, i) * pb.roots[i];
  }

  auto pair_cost = [&](const Vector& a, const Vector& b) {
    return weighted_marginal_entropy(a, pb.da, pb.db) +
           weighted_marginal_entropy(b, pb.da, pb.db);
  };

  double total = pb.objective(w);
  *converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double improved = 0.0;
    for (int j = 0; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        double base = pair_cost(w[j], w[k]);
        double best = base, best_th = 0.0, best_ph = 0.0;
        // coarse grid, then local refinement
        for (int it = 1; it <= 5; ++it) {
          double th = it * (M_PI / 12.0);
          double c = std::cos(th), s = std::sin(th);
          for (int ip = 0; ip < 8; ++ip) {
            double ph = ip * (M_PI / 4.0);
            Complex e(std::cos(ph), std::sin(ph));
            double v = pair_cost(c * w[j] + s * e * w[k],
                                 -s * std::conj(e) * w[j] + c * w[k]);
            if (v < best) {
              best = v;
              best_th = th;
              best_ph = ph;
            }
          }
        }
        // coordinate refinement around the best grid point
        double step_th = M_PI / 24.0, step_ph = M_PI / 8.0;
        for (int it = 0; it < 18; ++it) {
          bool moved = false;
          for (int dir = -1; dir <= 1; dir += 2) {
            double th = best_th + dir * step_th;
            Complex e(std::cos(best_ph), std::sin(best_ph));
            double v = pair_cost(std::cos(th) * w[j] + std::sin(th) * e * w[k],
                                 -std::sin(th) * std::conj(e) * w[j] +
                                     std::cos(th) * w[k]);
            if (v < best - 1e-14) {
              best = v;
              best_th = th;
              moved = true;
            }
          }
          for (int dir = -1; dir <= 1; dir += 2) {
            double ph = best_ph + dir * step_ph;
            Complex e(std::cos(ph), std::sin(ph));
            double c = std::cos(best_th), s = std::sin(best_th);
            double v = pair_cost(c * w[j] + s * e * w[k],
                                 -s * std::conj(e) * w[j] + c * w[k]);
            if (v < best - 1e-14) {
              best = v;
              best_ph = ph;
              moved = true;
            }
          }
          if (!moved) {
            step_th *= 0.5;
            step_ph *= 0.5;
          }
          if (step_th < 1e-7) break;
        }
        if (best < base - 1e-13) {
          double c = std::cos(best_th), s = std::sin(best_th);
          Complex e(std::cos(best_ph), std::sin(best_ph));
          Vector nj = c * w[j] + s * e * w[k];
          Vector nk = -s * std::conj(e) * w[j] + c * w[k];
          w[j] = std::move(nj);
          w[k] = std::move(nk);
          improved += base - best;
        }
      }
    }
    total = pb.objective(w);
    if (improved < tol) {
      *converged = true;
      break;
    }
  }
  return total;
}

}  // namespace detail

// Numeric minimization over pure-state decompositions; always an upper bound
// on the true infimum.
inline EofResult eof_numeric(const Matrix& rho, int da, int db, const EofOptions& opts) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  detail::EofProblem pb;
  pb.da = da;
  pb.db = db;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > kEigClamp)
      pb.roots.push_back(std::sqrt(l) * es.eigenvectors().col(i));
  }
  const int r = static_cast<int>(pb.roots.size());
  if (r == 0) throw invalid_state_error("eof of zero operator");
  if (r == 1) {
    // pure state: decomposition unique, EoF = marginal entropy
    Vector w = pb.roots[0];
    EofResult res;
    res.value = detail::weighted_marginal_entropy(w, da, db);
    return res;
  }
  int m = opts.decomposition_size > 0 ? std::max(opts.decomposition_size, r) : r * r;

  EofResult res;
  res.value = std::numeric_limits<double>::infinity();
  res.converged = false;
  for (int start = 0; start < opts.restarts; ++start) {
    auto rng = derive_rng(opts.seed, static_cast<std::uint64_t>(start));
    bool conv = false;
    double v = detail::eof_single_start(pb, m, rng, opts.max_sweeps, opts.tol, &conv);
    if (v < res.value) {
      res.value = v;
      res.converged = conv;
    }
  }
  if (res.value < 0.0) res.value = 0.0;
  return res;
}

// EoF of rho across the bipartition cut_a | rest.
inline EofResult entanglement_of_formation(const DensityOperator& rho,
                                           const std::vector<std::string>& cut_a,
                                           const EofOptions& opts = {}) {
  // reorder subsystems: cut_a factors first
  std::vector<int> order;
  int da = 1, db = 1;
  for (const auto& l : cut_a) {
    int p = rho.subsystems().index_of(l);
    order.push_back(p);
    da *= rho.dims()[p];
  }
  for (std::size_t p = 0; p < rho.dims().size(); ++p) {
    bool in_a = false;
    for (int q : order)
      if (q == static_cast<int>(p)) in_a = true;
    if (!in_a) {
      order.push_back(static_cast<int>(p));
      db *= rho.dims()[p];
    }
  }
  Matrix m = permute_subsystems_mat(rho.matrix(), rho.dims(), order);

  double purity = (m * m).trace().real();
  if (purity > 1.0 - 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::Index imax;
    es.eigenvalues().maxCoeff(&imax);
    Vector psi = es.eigenvectors().col(imax);
    EofResult res;
    res.value = detail::weighted_marginal_entropy(psi, da, db);
    return res;
  }
  if (da == 2 && db == 2 && opts.two_qubit_closed_form) {
    EofResult res;
    res.value = eof_from_concurrence(concurrence_two_qubit(m));
    res.closed_form = true;
    return res;
  }
  return eof_numeric(m, da, db, opts);
}

}  // namespace qbc

#endif  // QBC_EOF_HPP
