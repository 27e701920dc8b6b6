#pragma once

#include "nyskit/types.hpp"

namespace nyskit {

// Eigendecomposition of a symmetric matrix. Eigenvalues sorted
// non-increasing; deterministic sign convention (largest-magnitude entry of
// each eigenvector positive, ties by lowest index).
Spectrum eigh(const SymmetricMatrix& q);

// Blocks Q_J, Y = Q[J x Jc], Z = Q[Jc x Jc]; |J| may equal n (empty Z).
KernelPartition partition(const KernelMatrix& q, const LandmarkSubset& j);

// Z - Y^T Q_J^+ Y with an eigenvalue-thresholded pseudo-inverse
// (eigenvalues below rtol * lambda_max zeroed). Singularity is handled, not raised.
SymmetricMatrix schur_complement(const KernelMatrix& q, const LandmarkSubset& j,
                                 double rtol = 1e-12);

// Sum of singular values.
double trace_norm(const MatrixXd& m);
// PSD specialization: the trace itself.
inline double trace_norm(const KernelMatrix& q) { return q.trace(); }

// log det(A) via Cholesky; -infinity when a pivot falls at or below
// tolerance. Throws on non-finite entries.
double logdet_psd(const SymmetricMatrix& a);

// Log-determinant of the tridiagonal truncation of A (diagonal plus first
// off-diagonal), by the three-term continuant recurrence in O(k).
double tridiagonal_logdet_approx(const SymmetricMatrix& a);

// Eigenvalue-thresholded pseudo-inverse of a symmetric PSD matrix.
MatrixXd pseudo_inverse_psd(const SymmetricMatrix& a, double rtol = 1e-12);

// Submatrix A[rows x cols].
MatrixXd submatrix(const MatrixXd& a, const std::vector<int>& rows,
                   const std::vector<int>& cols);

}  // namespace nyskit
