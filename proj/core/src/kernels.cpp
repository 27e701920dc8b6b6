#include "nyskit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace nyskit {

namespace {

MatrixXd squared_distances(const MatrixXd& pts) {
  const int n = static_cast<int>(pts.rows());
  VectorXd sq = pts.rowwise().squaredNorm();
  MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
                2.0 * pts * pts.transpose();
  return d2.cwiseMax(0.0);
}

VectorXd degrees_checked(const KernelMatrix& q, const char* who) {
  VectorXd d = q.mat().rowwise().sum();
  for (int i = 0; i < d.size(); ++i) {
    if (d(i) <= 0.0)
      throw DegenerateKernelError(std::string(who) + ": zero degree at index " +
                                  std::to_string(i));
  }
  return d;
}

}  // namespace

KernelMatrix rbf_kernel(const PointCloud& x, double sigma) {
  x.validate();
  if (sigma <= 0.0) throw ParameterError("rbf_kernel: sigma must be positive");
  MatrixXd q = (-squared_distances(x.points) / (2.0 * sigma * sigma)).array().exp();
  q.diagonal().setOnes();
  return KernelMatrix(std::move(q));
}

KernelMatrix knn_graph_kernel(const PointCloud& x, int k_nn, double sigma) {
  x.validate();
  if (sigma <= 0.0) throw ParameterError("knn_graph_kernel: sigma must be positive");
  const int n = x.count();
  if (k_nn < 1 || k_nn >= n)
    throw ParameterError("knn_graph_kernel: k_nn must be in [1, N)");
  MatrixXd d2 = squared_distances(x.points);
  // Edge iff j among the k_nn nearest to i, or vice-versa. Ties by lower index.
  Eigen::MatrixX<bool> edge = Eigen::MatrixX<bool>::Constant(n, n, false);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::partial_sort(order.begin(), order.begin() + k_nn, order.end(),
                      [&](int a, int b) {
                        if (d2(i, a) != d2(i, b)) return d2(i, a) < d2(i, b);
                        return a < b;
                      });
    for (int t = 0; t < k_nn; ++t) {
      int j = order[t];
      edge(i, j) = true;
      edge(j, i) = true;
    }
  }
  MatrixXd q = MatrixXd::Zero(n, n);
  const double denom = 2.0 * sigma * sigma;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (edge(i, j) && i != j) q(i, j) = std::exp(-d2(i, j) / denom);
  return KernelMatrix(std::move(q));
}

DegreeVector degree(const KernelMatrix& q) {
  return DegreeVector{q.mat().rowwise().sum()};
}

MatrixXd markov_matrix(const KernelMatrix& q) {
  VectorXd d = degrees_checked(q, "markov_matrix");
  return d.cwiseInverse().asDiagonal() * q.mat();
}

KernelMatrix symmetric_normalization(const KernelMatrix& q) {
  VectorXd d = degrees_checked(q, "symmetric_normalization");
  VectorXd dm12 = d.cwiseSqrt().cwiseInverse();
  return KernelMatrix(dm12.asDiagonal() * q.mat() * dm12.asDiagonal());
}

KernelMatrix combinatorial_laplacian(const KernelMatrix& q) {
  // The diagonal is the off-diagonal row sum accumulated in index order, so
  // L * ones vanishes exactly when evaluated in the same order.
  const int n = q.order();
  MatrixXd l = -q.mat();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) acc += q.mat()(i, j);
    l(i, i) = acc;
  }
  return KernelMatrix(std::move(l));
}

KernelMatrix covariance_kernel(const PointCloud& x) {
  x.validate();
  MatrixXd centred = x.points.rowwise() - x.points.colwise().mean();
  return KernelMatrix(centred.transpose() * centred);
}

KernelMatrix gram_kernel(const PointCloud& x) {
  x.validate();
  return KernelMatrix(x.points * x.points.transpose());
}

PointCloud standardize(const PointCloud& x) {
  x.validate();
  const int n = x.count();
  MatrixXd centred = x.points.rowwise() - x.points.colwise().mean();
  PointCloud out;
  out.points = centred;
  out.tags = x.tags;
  for (int f = 0; f < out.dim(); ++f) {
    double var = centred.col(f).squaredNorm() / n;
    if (var > 0.0) out.points.col(f) /= std::sqrt(var);
  }
  return out;
}

}  // namespace nyskit
