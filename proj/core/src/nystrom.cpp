#include "nyskit/nystrom.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace nyskit {

NystromApprox nystrom_extend(const KernelMatrix& q, const LandmarkSubset& j,
                             double rtol) {
  const int n = q.order();
  const int k = j.size();
  if (j.ambient() != n)
    throw InvalidSubsetError("nystrom_extend: subset ambient order mismatch");
  if (k >= n)
    throw InvalidSubsetError("nystrom_extend: subset must be a proper subset");
  KernelPartition p = partition(q, j);
  Spectrum s = eigh(SymmetricMatrix(p.landmark_block));
  double lmax = std::max(s.eigenvalues(0), 0.0);
  double thresh = rtol * lmax;
  VectorXd inv(k);
  for (int i = 0; i < k; ++i)
    inv(i) = s.eigenvalues(i) > thresh ? 1.0 / s.eigenvalues(i) : 0.0;
  MatrixXd bottom = p.cross.transpose() * s.eigenvectors * inv.asDiagonal();

  NystromApprox out{j, p.landmark_block, p.cross, s.eigenvalues, MatrixXd(n, k)};
  const std::vector<int>& sel = j.indices();
  std::vector<int> rest = j.complement();
  for (int r = 0; r < k; ++r) out.eigenvectors.row(sel[r]) = s.eigenvectors.row(r);
  for (std::size_t r = 0; r < rest.size(); ++r)
    out.eigenvectors.row(rest[r]) = bottom.row(static_cast<int>(r));
  return out;
}

KernelMatrix reconstruct(const NystromApprox& approx) {
  const int n = approx.subset.ambient();
  const int k = approx.subset.size();
  MatrixXd pinv = pseudo_inverse_psd(SymmetricMatrix(approx.landmark_block));
  MatrixXd lower = approx.cross.transpose() * pinv * approx.cross;
  MatrixXd full(n, n);
  const std::vector<int>& sel = approx.subset.indices();
  std::vector<int> rest = approx.subset.complement();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) full(sel[a], sel[b]) = approx.landmark_block(a, b);
    for (std::size_t b = 0; b < rest.size(); ++b) {
      full(sel[a], rest[b]) = approx.cross(a, b);
      full(rest[b], sel[a]) = approx.cross(a, b);
    }
  }
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = 0; b < rest.size(); ++b) full(rest[a], rest[b]) = lower(a, b);
  return KernelMatrix(std::move(full));
}

MatrixXd orthogonalized_eigenvectors(const NystromApprox& approx) {
  const int k = approx.subset.size();
  // Prune columns whose eigenvalue was treated as null.
  std::vector<int> keep;
  double lmax = std::max(approx.eigenvalues(0), 0.0);
  for (int i = 0; i < k; ++i)
    if (approx.eigenvalues(i) > 1e-12 * lmax) keep.push_back(i);
  MatrixXd cols(approx.eigenvectors.rows(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    cols.col(i) = approx.eigenvectors.col(keep[i]);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(cols);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  MatrixXd qfull = qr.householderQ() * MatrixXd::Identity(cols.rows(), rank);
  return qfull;
}

double nystrom_error_trace(const KernelMatrix& q, const LandmarkSubset& j,
                           double rtol) {
  if (j.size() == q.order()) return 0.0;  // |J| = n limiting case
  KernelPartition p = partition(q, j);
  MatrixXd pinv = pseudo_inverse_psd(SymmetricMatrix(p.landmark_block), rtol);
  double captured = (pinv * (p.cross * p.cross.transpose())).trace();
  return std::max(0.0, p.rest.trace() - captured);
}

double optimal_rank_k_error(const KernelMatrix& q, int k) {
  const int n = q.order();
  if (k < 0 || k > n) throw ParameterError("optimal_rank_k_error: k out of range");
  Spectrum s = eigh(q.base());
  double acc = 0.0;
  for (int i = k; i < n; ++i) acc += s.eigenvalues(i);
  return std::max(0.0, acc);
}

double regression_residual_error(const MatrixXd& x, const LandmarkSubset& j) {
  if (j.ambient() != x.cols())
    throw InvalidSubsetError("regression_residual_error: subset/column mismatch");
  const std::vector<int>& sel = j.indices();
  std::vector<int> rest = j.complement();
  MatrixXd xj(x.rows(), sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) xj.col(i) = x.col(sel[i]);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(xj);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  MatrixXd basis = qr.householderQ() * MatrixXd::Identity(x.rows(), rank);
  double acc = 0.0;
  for (int c : rest) {
    VectorXd v = x.col(c);
    VectorXd resid = v - basis * (basis.transpose() * v);
    acc += resid.squaredNorm();
  }
  return acc;
}

double normalized_error(const KernelMatrix& q, const LandmarkSubset& j,
                        double rtol) {
  if (q.trace() <= 0.0)
    throw ParameterError("normalized_error: kernel trace must be positive");
  double v = nystrom_error_trace(q, j, rtol) / q.trace();
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace nyskit
