#pragma once

#include "nyskit/types.hpp"

namespace nyskit {

// N samples by n features, one point per row. Optional per-point tag columns
// carry synthetic ground truth (e.g. the curve parameter of a generator).
struct PointCloud {
  MatrixXd points;  // N x n
  MatrixXd tags;    // N x t, or 0 x 0 when absent

  int count() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }

  void validate() const {
    if (points.rows() < 2) throw ParameterError("PointCloud: need at least 2 points");
    if (!points.allFinite()) throw ParameterError("PointCloud: non-finite entries");
  }
};

struct DegreeVector {
  VectorXd d;
};

// Q_ij = exp(-||x_i - x_j||^2 / 2 sigma^2); unit diagonal.
KernelMatrix rbf_kernel(const PointCloud& x, double sigma);

// Mutual-or k-NN graph with RBF edge weights; zero diagonal.
KernelMatrix knn_graph_kernel(const PointCloud& x, int k_nn, double sigma);

// Row sums D_ii = sum_j Q_ij.
DegreeVector degree(const KernelMatrix& q);

// P = D^-1 Q, row-stochastic. Throws on a zero degree, naming the index.
MatrixXd markov_matrix(const KernelMatrix& q);

// D^-1/2 Q D^-1/2; same eigenvalues as the Markov matrix.
KernelMatrix symmetric_normalization(const KernelMatrix& q);

// L = D - Q.
KernelMatrix combinatorial_laplacian(const KernelMatrix& q);

// Feature-space covariance kernel: centre each feature, Q = Xc^T Xc (n x n).
KernelMatrix covariance_kernel(const PointCloud& x);

// Inner-product kernel Q_ij = <x_i, x_j> (N x N).
KernelMatrix gram_kernel(const PointCloud& x);

// Per-feature standardization (zero mean, unit variance; variance step
// skipped for constant features).
PointCloud standardize(const PointCloud& x);

}  // namespace nyskit
