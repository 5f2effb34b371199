#ifndef QBC_TEST_ORACLES_HPP
#define QBC_TEST_ORACLES_HPP

#include <vector>

#include "qbc/hull.hpp"
#include "qbc/region.hpp"

namespace qbc::testutil {

// Shannon entropy of a probability vector.
inline double shannon(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 1e-15) h -= x * std::log2(x);
  return h;
}

// Probability-space evaluation of the three conferencing bounds for a binary
// classical broadcast kernel W(y1,y2|x), auxiliary U->X structure:
// p(u), p(x=1|u=0)=a, p(x=1|u=1)=b.
struct ClassicalTriple {
  double r0, r1, sum;
};

inline ClassicalTriple classical_bounds_ux(const Eigen::MatrixXd& kernel, int ny1,
                                           int ny2, double pu1, double a, double b,
                                           double c12) {
  // joint p(u, x, y1, y2)
  double pu[2] = {1 - pu1, pu1};
  double px_u[2][2] = {{1 - a, a}, {1 - b, b}};
  std::vector<double> py2(ny2, 0.0), py1(ny1, 0.0);
  std::vector<std::vector<double>> py2_u(2, std::vector<double>(ny2, 0.0));
  std::vector<std::vector<double>> py1_u(2, std::vector<double>(ny1, 0.0));
  double h_y1_ux = 0;  // H(Y1|U,X) weighted
  for (int u = 0; u < 2; ++u)
    for (int x = 0; x < 2; ++x) {
      double pux = pu[u] * px_u[u][x];
      if (pux < 1e-15) continue;
      std::vector<double> w1(ny1, 0.0);
      for (int y1 = 0; y1 < ny1; ++y1)
        for (int y2 = 0; y2 < ny2; ++y2) {
          double w = kernel(x, y1 * ny2 + y2);
          py2[y2] += pux * w;
          py2_u[u][y2] += pux * w;
          py1[y1] += pux * w;
          py1_u[u][y1] += pux * w;
          w1[y1] += w;
        }
      h_y1_ux += pux * shannon(w1);
    }
  double h_y2_u = 0, h_y1_u = 0;
  for (int u = 0; u < 2; ++u) {
    if (pu[u] < 1e-15) continue;
    std::vector<double> c2 = py2_u[u], c1 = py1_u[u];
    for (auto& v : c2) v /= pu[u];
    for (auto& v : c1) v /= pu[u];
    h_y2_u += pu[u] * shannon(c2);
    h_y1_u += pu[u] * shannon(c1);
  }
  ClassicalTriple t;
  t.r0 = shannon(py2) - h_y2_u + c12;   // I(U;Y2) + C12
  t.r1 = h_y1_u - h_y1_ux;              // I(X;Y1|U)
  t.sum = shannon(py1) - h_y1_ux;       // I(U X;Y1) = I(X;Y1) here
  return t;
}

// Exhaustive-grid region oracle for a binary-input classical broadcast
// channel under the (U, X) superposition structure.
inline std::vector<Point2> classical_region_oracle(const Eigen::MatrixXd& kernel,
                                                   int ny1, int ny2, double c12,
                                                   int steps = 25) {
  std::vector<Point2> cloud;
  for (int iu = 0; iu <= steps; ++iu)
    for (int ia = 0; ia <= steps; ++ia)
      for (int ib = 0; ib <= steps; ++ib) {
        auto t = classical_bounds_ux(kernel, ny1, ny2, double(iu) / steps,
                                     double(ia) / steps, double(ib) / steps, c12);
        auto verts = bound_triple_vertices(t.r0, t.r1, t.sum);
        cloud.insert(cloud.end(), verts.begin(), verts.end());
      }
  return downward_hull(cloud);
}

// BSC cascade kernel: x -> y1 via BSC(q1), y1 -> y2 via BSC(q2).
inline Eigen::MatrixXd bsc_cascade_kernel(double q1, double q2) {
  Eigen::MatrixXd k(2, 4);
  for (int x = 0; x < 2; ++x)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int y2 = 0; y2 < 2; ++y2)
        k(x, y1 * 2 + y2) =
            ((y1 == x) ? 1 - q1 : q1) * ((y2 == y1) ? 1 - q2 : q2);
  return k;
}

}  // namespace qbc::testutil

#endif
