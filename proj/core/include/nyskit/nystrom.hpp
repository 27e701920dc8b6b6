#pragma once

#include "nyskit/linalg.hpp"
#include "nyskit/types.hpp"

namespace nyskit {

// Factorized low-rank completion anchored on a landmark subset. Approximate
// eigenvector rows are stored in the original index order; the J-induced
// permutation is applied internally and never leaks out.
struct NystromApprox {
  LandmarkSubset subset;
  MatrixXd landmark_block;     // Q_J, k x k
  MatrixXd cross;              // Y = Q[J x Jc], k x (n-k)
  VectorXd eigenvalues;        // Lambda_J, non-increasing
  MatrixXd eigenvectors;       // n x k, original index order
};

// Approximate eigensystem: Lambda_J and [U_J ; Y^T U_J Lambda_J^+], with
// rows of Lambda_J^+ zeroed for eigenvalues below the pseudo-inverse threshold.
NystromApprox nystrom_extend(const KernelMatrix& q, const LandmarkSubset& j,
                             double rtol = 1e-12);

// Materializes the completed kernel in original index order.
KernelMatrix reconstruct(const NystromApprox& approx);

// Orthonormal basis for the span of the approximate eigenvectors after
// pruning null-eigenvalue columns. A rank-deficient input yields fewer
// columns than k.
MatrixXd orthogonalized_eigenvectors(const NystromApprox& approx);

// tr(Z) - tr(Y^T Q_J^+ Y), the trace-norm error of the completion, computed
// without materializing the approximant.
double nystrom_error_trace(const KernelMatrix& q, const LandmarkSubset& j,
                           double rtol = 1e-12);

// Exact-decomposition baseline: sum of the n-k smallest eigenvalues.
double optimal_rank_k_error(const KernelMatrix& q, int k);

// Residual sum-of-squares of projecting columns of X_Jc onto span(X_J),
// for Q = X^T X. Equals nystrom_error_trace(X^T X, j).
double regression_residual_error(const MatrixXd& x, const LandmarkSubset& j);

// nystrom_error_trace / tr(Q), clamped to [0, 1].
double normalized_error(const KernelMatrix& q, const LandmarkSubset& j,
                        double rtol = 1e-12);

}  // namespace nyskit
