#ifndef QBC_TEST_UTIL_HPP
#define QBC_TEST_UTIL_HPP

#include <random>

#include "qbc/rng.hpp"
#include "qbc/state.hpp"

namespace qbc::testutil {

inline Matrix random_density_raw(int d, std::mt19937_64& rng, int rank = 0) {
  if (rank <= 0) rank = d;
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline Vector random_pure_raw(int d, std::mt19937_64& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(normal(rng), normal(rng));
  v /= v.norm();
  return v;
}

inline Matrix random_unitary(int d, std::mt19937_64& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // fix phases for determinism of the distribution
  Matrix r = q.adjoint() * g;
  for (int j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

}  // namespace qbc::testutil

#endif
