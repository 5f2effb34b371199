#ifndef QBC_OPTIM_HPP
#define QBC_OPTIM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "qbc/rng.hpp"

namespace qbc {

// Static task partitioning with results written into index slots, so the
// aggregate is identical for any worker count.
inline void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n_tasks; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct NelderMeadOptions {
  int max_iters = 400;
  double init_step = 0.5;
  double ftol = 1e-10;
};

// Minimizes f over R^n. Plain Nelder-Mead; good enough for the smooth
// low-dimensional objectives used here.
inline double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double>& x, const NelderMeadOptions& opts = {}) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> simplex(n + 1, x);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += opts.init_step;
  for (int i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  auto order = [&] {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (int i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(fv[i]);
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  for (int it = 0; it < opts.max_iters; ++it) {
    order();
    if (std::abs(fv[n] - fv[0]) < opts.ftol) break;
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;

    auto mix = [&](double t) {
      std::vector<double> p(n);
      for (int j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return p;
    };

    auto xr = mix(-1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      auto xe = mix(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      auto xc = mix(fr < fv[n] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  order();
  x = simplex[0];
  return fv[0];
}

// Coordinate pattern search with shrinking step; scales to higher dimension
// than Nelder-Mead at some cost in polish.
inline double pattern_search(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double>& x, double step = 0.5,
                             double min_step = 1e-4, int max_sweeps = 200) {
  double fx = f(x);
  const int n = static_cast<int>(x.size());
  for (int sweep = 0; sweep < max_sweeps && step > min_step; ++sweep) {
    bool moved = false;
    for (int j = 0; j < n; ++j) {
      for (int dir = -1; dir <= 1; dir += 2) {
        double old = x[j];
        x[j] = old + dir * step;
        double v = f(x);
        if (v < fx - 1e-13) {
          fx = v;
          moved = true;
          break;
        }
        x[j] = old;
      }
    }
    if (!moved) step *= 0.5;
  }
  return fx;
}

inline std::vector<double> softmax(const std::vector<double>& z) {
  double m = *std::max_element(z.begin(), z.end());
  std::vector<double> p(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - m);
    s += p[i];
  }
  for (auto& v : p) v /= s;
  return p;
}

}  // namespace qbc

#endif  // QBC_OPTIM_HPP
