#ifndef QBC_STATE_HPP
#define QBC_STATE_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct invalid_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdSlack = 1e-10;
constexpr double kEigClamp = 1e-12;

inline double log2_safe(double x) { return std::log2(x); }

inline int product_of(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Labeled tensor factorization shared by states and pure vectors.
// Subsystem order matches index order: index = i_0 * (d_1*...*d_{k-1}) + ...
struct Subsystems {
  std::vector<int> dims;
  std::vector<std::string> labels;

  int total_dim() const { return product_of(dims); }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown subsystem label: " + label);
  }

  bool has(const std::string& label) const {
    for (const auto& l : labels)
      if (l == label) return true;
    return false;
  }
};

// Hermitian PSD unit-trace matrix over a labeled tensor factorization.
class DensityOperator {
 public:
  DensityOperator() = default;

  DensityOperator(Matrix m, std::vector<int> dims, std::vector<std::string> labels,
                  bool validate_input = true)
      : matrix_(std::move(m)), sys_{std::move(dims), std::move(labels)} {
    if (sys_.labels.size() != sys_.dims.size())
      throw std::invalid_argument("dims/labels size mismatch");
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != sys_.total_dim())
      throw std::invalid_argument("matrix side does not match product of dims");
    if (validate_input) validate();
  }

  static DensityOperator from_pure(const Vector& psi, std::vector<int> dims,
                                   std::vector<std::string> labels) {
    Matrix m = psi * psi.adjoint();
    return DensityOperator(std::move(m), std::move(dims), std::move(labels), false);
  }

  const Matrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return sys_.dims; }
  const std::vector<std::string>& labels() const { return sys_.labels; }
  const Subsystems& subsystems() const { return sys_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  void validate() const {
    double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol)
      throw invalid_state_error("not Hermitian: max deviation " + std::to_string(herm));
    double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
      throw invalid_state_error("trace != 1: " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw invalid_state_error("not PSD: min eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }

 private:
  Matrix matrix_;
  Subsystems sys_;
};

struct PureState {
  Vector vector;
  std::vector<int> dims;
  std::vector<std::string> labels;

  PureState(Vector v, std::vector<int> d, std::vector<std::string> l)
      : vector(std::move(v)), dims(std::move(d)), labels(std::move(l)) {
    if (std::abs(vector.norm() - 1.0) > 1e-12)
      throw invalid_state_error("pure state not normalized");
  }

  DensityOperator to_density() const {
    return DensityOperator::from_pure(vector, dims, labels);
  }
};

struct EntropyReport {
  double value = 0.0;     // bits
  int eigen_floor_hits = 0;
};

// --- raw-matrix helpers (hot paths avoid the wrapper) ---

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Partial trace keeping the subsystem positions in `keep` (ascending order kept).
inline Matrix partial_trace_raw(const Matrix& rho, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int p : keep) kept[p] = true;

  std::vector<int> keep_dims, tr_dims, keep_pos, tr_pos;
  for (int p = 0; p < k; ++p) {
    if (kept[p]) {
      keep_dims.push_back(dims[p]);
      keep_pos.push_back(p);
    } else {
      tr_dims.push_back(dims[p]);
      tr_pos.push_back(p);
    }
  }
  const int dk = product_of(keep_dims);
  const int dt = product_of(tr_dims);

  // strides of each subsystem in the full index
  std::vector<int> stride(k, 1);
  for (int p = k - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

  auto full_index = [&](int ik, int it) {
    int idx = 0;
    int rem = ik;
    for (int a = static_cast<int>(keep_pos.size()) - 1; a >= 0; --a) {
      idx += (rem % keep_dims[a]) * stride[keep_pos[a]];
      rem /= keep_dims[a];
    }
    rem = it;
    for (int a = static_cast<int>(tr_pos.size()) - 1; a >= 0; --a) {
      idx += (rem % tr_dims[a]) * stride[tr_pos[a]];
      rem /= tr_dims[a];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (int t = 0; t < dt; ++t) s += rho(full_index(i, t), full_index(j, t));
      out(i, j) = s;
    }
  return out;
}

// Permute subsystem order of a pure-state vector: order[i] = old position that
// moves to new slot i.
inline Vector permute_subsystems_vec(const Vector& v, const std::vector<int>& dims,
                                     const std::vector<int>& order) {
  const int k = static_cast<int>(dims.size());
  std::vector<int> stride(k, 1);
  for (int p = k - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];
  std::vector<int> new_dims(k);
  for (int i = 0; i < k; ++i) new_dims[i] = dims[order[i]];

  Vector out(v.size());
  std::vector<int> digits(k, 0);
  const int n = static_cast<int>(v.size());
  for (int ni = 0; ni < n; ++ni) {
    // decompose ni in the new dims, map back to old index
    int rem = ni, old = 0;
    for (int a = k - 1; a >= 0; --a) {
      digits[a] = rem % new_dims[a];
      rem /= new_dims[a];
    }
    for (int a = 0; a < k; ++a) old += digits[a] * stride[order[a]];
    out(ni) = v(old);
  }
  return out;
}

inline Matrix permute_subsystems_mat(const Matrix& m, const std::vector<int>& dims,
                                     const std::vector<int>& order) {
  const int k = static_cast<int>(dims.size());
  std::vector<int> stride(k, 1);
  for (int p = k - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];
  std::vector<int> new_dims(k);
  for (int i = 0; i < k; ++i) new_dims[i] = dims[order[i]];
  const int n = static_cast<int>(m.rows());

  std::vector<int> map(n);
  std::vector<int> digits(k, 0);
  for (int ni = 0; ni < n; ++ni) {
    int rem = ni, old = 0;
    for (int a = k - 1; a >= 0; --a) {
      digits[a] = rem % new_dims[a];
      rem /= new_dims[a];
    }
    for (int a = 0; a < k; ++a) old += digits[a] * stride[order[a]];
    map[ni] = old;
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

inline Eigen::VectorXd eigenvalues_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline EntropyReport entropy_report_raw(const Matrix& rho) {
  EntropyReport rep;
  Eigen::VectorXd ev = eigenvalues_hermitian(rho);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double l = ev(i);
    if (l < -1e-8) throw invalid_state_error("entropy of non-PSD operator");
    if (l < kEigClamp) {
      ++rep.eigen_floor_hits;
      continue;  // 0 log 0 = 0
    }
    rep.value -= l * log2_safe(l);
  }
  if (rep.value < 0.0 && rep.value > -1e-9) rep.value = 0.0;
  return rep;
}

inline double entropy_raw(const Matrix& rho) { return entropy_report_raw(rho).value; }

// Entropy of a 2x2 Hermitian PSD matrix without an eigensolver.
inline double entropy_qubit_raw(const Matrix& rho) {
  double t = rho.trace().real();
  double d = (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0)).real();
  double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
  double l1 = 0.5 * (t + disc), l2 = 0.5 * (t - disc);
  double h = 0.0;
  if (l1 > kEigClamp) h -= l1 * std::log2(l1);
  if (l2 > kEigClamp) h -= l2 * std::log2(l2);
  return h;
}

// --- public operations on DensityOperator ---

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims), std::move(labels),
                         false);
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::string>& keep) {
  std::vector<int> keep_pos;
  for (const auto& l : keep) keep_pos.push_back(rho.subsystems().index_of(l));
  std::sort(keep_pos.begin(), keep_pos.end());
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (int p : keep_pos) {
    dims.push_back(rho.dims()[p]);
    labels.push_back(rho.labels()[p]);
  }
  Matrix out = partial_trace_raw(rho.matrix(), rho.dims(), keep_pos);
  return DensityOperator(std::move(out), std::move(dims), std::move(labels), false);
}

inline EntropyReport entropy(const DensityOperator& rho) {
  EntropyReport rep = entropy_report_raw(rho.matrix());
  double cap = std::log2(static_cast<double>(rho.dim())) + 1e-9;
  if (rep.value > cap) throw invalid_state_error("entropy above log2(dim)");
  return rep;
}

namespace detail {
inline void check_disjoint(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) throw std::invalid_argument("overlapping subsystem sets");
}
}  // namespace detail

inline double mutual_information(const DensityOperator& rho,
                                 const std::vector<std::string>& part_a,
                                 const std::vector<std::string>& part_b) {
  detail::check_disjoint(part_a, part_b);
  std::vector<std::string> ab = part_a;
  ab.insert(ab.end(), part_b.begin(), part_b.end());
  DensityOperator rho_ab = partial_trace(rho, ab);
  double h_a = entropy(partial_trace(rho_ab, part_a)).value;
  double h_b = entropy(partial_trace(rho_ab, part_b)).value;
  double h_ab = entropy(rho_ab).value;
  return h_a + h_b - h_ab;
}

// I(A>B) = H(B) - H(AB)
inline double coherent_information(const DensityOperator& rho,
                                   const std::vector<std::string>& part_a,
                                   const std::vector<std::string>& part_b) {
  detail::check_disjoint(part_a, part_b);
  std::vector<std::string> ab = part_a;
  ab.insert(ab.end(), part_b.begin(), part_b.end());
  DensityOperator rho_ab = partial_trace(rho, ab);
  double h_b = entropy(partial_trace(rho_ab, part_b)).value;
  double h_ab = entropy(rho_ab).value;
  return h_b - h_ab;
}

inline double trace_distance_raw(const Matrix& a, const Matrix& b) {
  Eigen::VectorXd ev = eigenvalues_hermitian(a - b);
  return 0.5 * ev.cwiseAbs().sum();
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dim mismatch");
  return trace_distance_raw(rho.matrix(), sigma.matrix());
}

// Maximally entangled state |Phi> = (1/sqrt(D)) sum |jj> on labels {la, lb}.
inline PureState max_entangled(int d, const std::string& la = "A",
                               const std::string& lb = "B") {
  Vector v = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(v), {d, d}, {la, lb});
}

inline Vector basis_vector(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace qbc

#endif  // QBC_STATE_HPP
