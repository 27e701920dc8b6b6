#include "nyskit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "nyskit/linalg.hpp"
#include "nyskit/nystrom.hpp"

namespace nyskit {

namespace {

int component_count(const MatrixXd& q) {
  const int n = static_cast<int>(q.rows());
  std::vector<int> label(n, -1);
  int comps = 0;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    ++comps;
    std::deque<int> frontier{start};
    label[start] = comps;
    while (!frontier.empty()) {
      int i = frontier.front();
      frontier.pop_front();
      for (int j = 0; j < n; ++j) {
        if (j != i && label[j] < 0 && q(i, j) != 0.0) {
          label[j] = comps;
          frontier.push_back(j);
        }
      }
    }
  }
  return comps;
}

double column_variance(const VectorXd& v) {
  double mean = v.mean();
  return (v.array() - mean).square().sum() / v.size();
}

}  // namespace

Embedding pca_embed(const PointCloud& x, int d) {
  x.validate();
  if (d < 1 || d > x.dim()) throw ParameterError("pca_embed: d out of range");
  MatrixXd centred = x.points.rowwise() - x.points.colwise().mean();
  Spectrum s = eigh(SymmetricMatrix(centred.transpose() * centred));
  Embedding out;
  out.method = "pca";
  out.coordinates = centred * s.eigenvectors.leftCols(d);
  out.eigenvalues = s.eigenvalues.head(d);
  return out;
}

Embedding diffusion_maps_embed(const PointCloud& x, double sigma, int d, int m) {
  x.validate();
  const int n = x.count();
  if (d < 1 || d > n - 1) throw ParameterError("diffusion_maps_embed: d out of range");
  if (m < 1) throw ParameterError("diffusion_maps_embed: m must be >= 1");
  KernelMatrix q = rbf_kernel(x, sigma);
  VectorXd deg = degree(q).d;
  KernelMatrix qn = symmetric_normalization(q);
  Spectrum s = eigh(qn.base());
  // The trivial eigenpair of P is (1, constant); in the conjugate basis it is
  // (1, D^{1/2} 1). Multiplicity above 1 means a disconnected kernel.
  int multiplicity = 0;
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) > 1.0 - 1e-8) ++multiplicity;
  if (multiplicity > 1)
    throw DegenerateKernelError(
        "diffusion_maps_embed: eigenvalue 1 has multiplicity " +
        std::to_string(multiplicity) + " (disconnected kernel)");
  VectorXd dm12 = deg.cwiseSqrt().cwiseInverse();
  Embedding out;
  out.method = "diffusion_maps";
  out.trivial_pair_dropped = true;
  out.coordinates.resize(n, d);
  out.eigenvalues.resize(d);
  for (int c = 0; c < d; ++c) {
    double lambda = s.eigenvalues(c + 1);
    VectorXd u = dm12.asDiagonal() * s.eigenvectors.col(c + 1);
    out.coordinates.col(c) = u * std::pow(lambda, m);
    out.eigenvalues(c) = lambda;
  }
  return out;
}

Embedding laplacian_eigenmaps_embed(const PointCloud& x, int k_nn, double sigma,
                                    int d) {
  x.validate();
  const int n = x.count();
  if (d < 1 || d > n - 1)
    throw ParameterError("laplacian_eigenmaps_embed: d out of range");
  KernelMatrix q = knn_graph_kernel(x, k_nn, sigma);
  int comps = component_count(q.mat());
  if (comps > 1)
    throw DegenerateKernelError("laplacian_eigenmaps_embed: graph has " +
                                std::to_string(comps) + " components");
  VectorXd deg = degree(q).d;
  KernelMatrix lap = combinatorial_laplacian(q);
  VectorXd dm12 = deg.cwiseSqrt().cwiseInverse();
  SymmetricMatrix norm_lap(dm12.asDiagonal() * lap.mat() * dm12.asDiagonal());
  Spectrum s = eigh(norm_lap);  // non-increasing; smallest at the end
  Embedding out;
  out.method = "laplacian_eigenmaps";
  out.trivial_pair_dropped = true;
  out.coordinates.resize(n, d);
  out.eigenvalues.resize(d);
  for (int c = 0; c < d; ++c) {
    // Skip the lambda = 0 constant solution at position n-1.
    int pos = n - 2 - c;
    VectorXd vt = s.eigenvectors.col(pos);  // unit norm, so ||D^{1/2} v|| = 1
    out.coordinates.col(c) = dm12.asDiagonal() * vt;
    out.eigenvalues(c) = s.eigenvalues(pos);
  }
  return out;
}

Embedding nystrom_diffusion_embed(const PointCloud& x, double sigma,
                                  const LandmarkSubset& j, int d, int m) {
  x.validate();
  const int n = x.count();
  if (j.ambient() != n)
    throw InvalidSubsetError("nystrom_diffusion_embed: subset ambient mismatch");
  if (j.size() <= d)
    throw InvalidSubsetError(
        "nystrom_diffusion_embed: need at least d+1 landmarks");
  if (m < 1) throw ParameterError("nystrom_diffusion_embed: m must be >= 1");
  KernelMatrix q = rbf_kernel(x, sigma);
  VectorXd deg = degree(q).d;
  KernelMatrix qn = symmetric_normalization(q);
  VectorXd dm12 = deg.cwiseSqrt().cwiseInverse();

  VectorXd evals;
  MatrixXd evecs;
  if (j.size() == n) {
    Spectrum s = eigh(qn.base());
    evals = s.eigenvalues;
    evecs = s.eigenvectors;
  } else {
    // Exact eigensystem of the rank-limited approximant: with F = U~ L^{1/2},
    // the approximant is F F^T and its orthonormalized eigenpairs come from
    // the k x k problem F^T F = V S V^T, U' = F V S^{-1/2}.
    NystromApprox approx = nystrom_extend(qn, j);
    const int k = j.size();
    double lmax = std::max(approx.eigenvalues(0), 0.0);
    VectorXd roots(k);
    for (int i = 0; i < k; ++i)
      roots(i) = approx.eigenvalues(i) > 1e-12 * lmax
                     ? std::sqrt(approx.eigenvalues(i))
                     : 0.0;
    MatrixXd f = approx.eigenvectors * roots.asDiagonal();
    Spectrum inner = eigh(SymmetricMatrix(f.transpose() * f));
    std::vector<int> keep;
    double smax = std::max(inner.eigenvalues(0), 0.0);
    for (int i = 0; i < k; ++i)
      if (inner.eigenvalues(i) > 1e-12 * smax) keep.push_back(i);
    evals.resize(keep.size());
    evecs.resize(n, keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      double sv = inner.eigenvalues(keep[i]);
      evals(i) = sv;
      evecs.col(i) = f * inner.eigenvectors.col(keep[i]) / std::sqrt(sv);
    }
  }

  const int avail = static_cast<int>(evals.size());
  if (avail < d + 1)
    throw DegenerateKernelError(
        "nystrom_diffusion_embed: approximate spectrum has fewer than d+1 "
        "usable eigenpairs");
  // Identify the approximate trivial pair: eigenvalue nearest 1, breaking
  // near-ties by minimal coordinate variance of the mapped-back vector.
  int trivial = 0;
  double best_gap = std::abs(evals(0) - 1.0);
  for (int i = 1; i < avail; ++i) {
    double gap = std::abs(evals(i) - 1.0);
    if (gap < best_gap - 1e-9) {
      best_gap = gap;
      trivial = i;
    } else if (gap < best_gap + 1e-9) {
      VectorXd cand = dm12.asDiagonal() * evecs.col(i);
      VectorXd cur = dm12.asDiagonal() * evecs.col(trivial);
      if (column_variance(cand) < column_variance(cur)) trivial = i;
    }
  }

  Embedding out;
  out.method = "nystrom_diffusion_maps";
  out.trivial_pair_dropped = true;
  out.coordinates.resize(n, d);
  out.eigenvalues.resize(d);
  int c = 0;
  for (int i = 0; i < avail && c < d; ++i) {
    if (i == trivial) continue;
    VectorXd u = dm12.asDiagonal() * evecs.col(i);
    out.coordinates.col(c) = u * std::pow(evals(i), m);
    out.eigenvalues(c) = evals(i);
    ++c;
  }
  return out;
}

}  // namespace nyskit
