#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nyskit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Bad arguments (ranges, shapes, configuration).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Subset is empty, full, or otherwise unusable for the requested operation.
class InvalidSubsetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Kernel is numerically degenerate for the requested operation
// (zero degree, all-singular submatrices, disconnected graph, ...).
class DegenerateKernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Greedy selection ran out of rank before reaching the requested size.
class RankExhaustedError : public std::runtime_error {
 public:
  RankExhaustedError(const std::string& msg, int achieved)
      : std::runtime_error(msg), achieved_size(achieved) {}
  int achieved_size;
};

// Seed plus stream index; identical (seed, stream) reproduces identical draws.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Dense symmetric matrix; symmetrized as (M + M^T)/2 at construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(MatrixXd m) {
    if (m.rows() != m.cols())
      throw ParameterError("SymmetricMatrix: matrix must be square");
    m_ = 0.5 * (m + m.transpose().eval());
  }

  int order() const { return static_cast<int>(m_.rows()); }
  const MatrixXd& mat() const { return m_; }

 private:
  MatrixXd m_;
};

// Symmetric PSD kernel with cached trace. PSD-ness is validated on demand
// (per-construction validation would be O(n^3)).
class KernelMatrix {
 public:
  explicit KernelMatrix(SymmetricMatrix base)
      : base_(std::move(base)), trace_(base_.mat().trace()) {}
  explicit KernelMatrix(MatrixXd m) : KernelMatrix(SymmetricMatrix(std::move(m))) {}

  int order() const { return base_.order(); }
  double trace() const { return trace_; }
  const MatrixXd& mat() const { return base_.mat(); }
  const SymmetricMatrix& base() const { return base_; }

  // Smallest eigenvalue >= -tol * lambda_max.
  bool is_psd(double tol = 1e-10) const;

 private:
  SymmetricMatrix base_;
  double trace_;
};

// Eigenvalues sorted non-increasing; eigenvector column i pairs with
// eigenvalue i. Sign convention: the largest-magnitude entry of each
// eigenvector is positive, ties broken by lowest index.
struct Spectrum {
  VectorXd eigenvalues;
  MatrixXd eigenvectors;
};

// Strictly increasing index set J of size k >= 1 within an ambient range [0, n).
class LandmarkSubset {
 public:
  LandmarkSubset(std::vector<int> indices, int ambient_order);

  int size() const { return static_cast<int>(indices_.size()); }
  int ambient() const { return ambient_; }
  const std::vector<int>& indices() const { return indices_; }

  // Complement in increasing order.
  std::vector<int> complement() const;

  bool operator==(const LandmarkSubset& o) const {
    return ambient_ == o.ambient_ && indices_ == o.indices_;
  }

 private:
  std::vector<int> indices_;
  int ambient_;
};

// Blocks of Q under the J-induced permutation: Q_J = Q[JxJ] (k x k),
// cross = Q[J x Jc] (k x (n-k)), rest = Q[Jc x Jc].
struct KernelPartition {
  MatrixXd landmark_block;
  MatrixXd cross;
  MatrixXd rest;
};

}  // namespace nyskit
