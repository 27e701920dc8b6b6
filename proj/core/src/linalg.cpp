#include "nyskit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace nyskit {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LandmarkSubset::LandmarkSubset(std::vector<int> indices, int ambient_order)
    : indices_(std::move(indices)), ambient_(ambient_order) {
  if (indices_.empty()) throw InvalidSubsetError("LandmarkSubset: empty subset");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= ambient_)
      throw InvalidSubsetError("LandmarkSubset: index out of range");
    if (i > 0 && indices_[i] == indices_[i - 1])
      throw InvalidSubsetError("LandmarkSubset: duplicate index");
  }
}

std::vector<int> LandmarkSubset::complement() const {
  std::vector<int> out;
  out.reserve(ambient_ - size());
  std::size_t p = 0;
  for (int i = 0; i < ambient_; ++i) {
    if (p < indices_.size() && indices_[p] == i) {
      ++p;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

bool KernelMatrix::is_psd(double tol) const {
  Spectrum s = eigh(base_);
  if (s.eigenvalues.size() == 0) return true;
  double lmax = std::max(s.eigenvalues(0), 0.0);
  return s.eigenvalues(s.eigenvalues.size() - 1) >= -tol * std::max(lmax, 1.0);
}

Spectrum eigh(const SymmetricMatrix& q) {
  const MatrixXd& m = q.mat();
  if (!m.allFinite()) throw ParameterError("eigh: non-finite entries");
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw EigenSolverError("eigh: eigensolver failed to converge on order-" +
                           std::to_string(q.order()) + " matrix");
  const int n = q.order();
  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order; reverse to non-increasing.
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  // Sign convention: largest-magnitude entry positive, ties by lowest index.
  for (int i = 0; i < n; ++i) {
    int arg = 0;
    double best = std::abs(out.eigenvectors(0, i));
    for (int r = 1; r < n; ++r) {
      double v = std::abs(out.eigenvectors(r, i));
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    if (out.eigenvectors(arg, i) < 0.0) out.eigenvectors.col(i) = -out.eigenvectors.col(i);
  }
  return out;
}

MatrixXd submatrix(const MatrixXd& a, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
  MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

KernelPartition partition(const KernelMatrix& q, const LandmarkSubset& j) {
  if (j.ambient() != q.order())
    throw InvalidSubsetError("partition: subset ambient order mismatch");
  const std::vector<int>& sel = j.indices();
  std::vector<int> rest = j.complement();
  KernelPartition p;
  p.landmark_block = submatrix(q.mat(), sel, sel);
  p.cross = submatrix(q.mat(), sel, rest);
  p.rest = submatrix(q.mat(), rest, rest);
  return p;
}

MatrixXd pseudo_inverse_psd(const SymmetricMatrix& a, double rtol) {
  Spectrum s = eigh(a);
  const int n = a.order();
  double lmax = n > 0 ? std::max(s.eigenvalues(0), 0.0) : 0.0;
  double thresh = rtol * lmax;
  VectorXd inv(n);
  for (int i = 0; i < n; ++i)
    inv(i) = s.eigenvalues(i) > thresh ? 1.0 / s.eigenvalues(i) : 0.0;
  return s.eigenvectors * inv.asDiagonal() * s.eigenvectors.transpose();
}

SymmetricMatrix schur_complement(const KernelMatrix& q, const LandmarkSubset& j,
                                 double rtol) {
  if (rtol <= 0.0) throw ParameterError("schur_complement: rtol must be positive");
  KernelPartition p = partition(q, j);
  if (p.rest.rows() == 0) return SymmetricMatrix(MatrixXd(0, 0));
  MatrixXd pinv = pseudo_inverse_psd(SymmetricMatrix(p.landmark_block), rtol);
  return SymmetricMatrix(p.rest - p.cross.transpose() * pinv * p.cross);
}

double trace_norm(const MatrixXd& m) {
  if (!m.allFinite()) throw ParameterError("trace_norm: non-finite entries");
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::BDCSVD<MatrixXd> svd(m);
  return svd.singularValues().sum();
}

double logdet_psd(const SymmetricMatrix& a) {
  const MatrixXd& m = a.mat();
  if (!m.allFinite()) throw ParameterError("logdet_psd: non-finite entries");
  const int n = a.order();
  if (n == 0) return 0.0;
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  const double tol = 1e-12 * std::max(1.0, max_diag);
  // Unblocked Cholesky, accumulating log pivots.
  MatrixXd l = MatrixXd::Zero(n, n);
  double acc = 0.0;
  for (int jcol = 0; jcol < n; ++jcol) {
    double pivot = m(jcol, jcol);
    for (int t = 0; t < jcol; ++t) pivot -= l(jcol, t) * l(jcol, t);
    if (pivot <= tol) return kNegInf;
    acc += std::log(pivot);
    const double root = std::sqrt(pivot);
    l(jcol, jcol) = root;
    for (int i = jcol + 1; i < n; ++i) {
      double v = m(i, jcol);
      for (int t = 0; t < jcol; ++t) v -= l(i, t) * l(jcol, t);
      l(i, jcol) = v / root;
    }
  }
  return acc;
}

double tridiagonal_logdet_approx(const SymmetricMatrix& a) {
  const MatrixXd& m = a.mat();
  if (!m.allFinite())
    throw ParameterError("tridiagonal_logdet_approx: non-finite entries");
  const int n = a.order();
  if (n == 0) return 0.0;
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m(i, i)));
  const double tol = 1e-12 * std::max(1.0, max_diag);
  // Pivot form of the continuant recurrence: r_i = a_i - b_{i-1}^2 / r_{i-1}.
  double acc = 0.0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = m(i, i);
    if (i > 0) {
      double b = m(i, i - 1);
      r -= b * b / prev;
    }
    if (r <= tol) return kNegInf;
    acc += std::log(r);
    prev = r;
  }
  return acc;
}

}  // namespace nyskit
