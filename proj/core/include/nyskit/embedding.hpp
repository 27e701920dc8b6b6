#pragma once

#include <string>

#include "nyskit/kernels.hpp"
#include "nyskit/types.hpp"

namespace nyskit {

struct Embedding {
  MatrixXd coordinates;   // N x d
  VectorXd eigenvalues;   // the d retained eigenvalues
  std::string method;
  bool trivial_pair_dropped = false;
};

// Top-d principal component coordinates of the centred cloud.
Embedding pca_embed(const PointCloud& x, int d);

// Diffusion maps: RBF kernel, Markov normalization via the symmetric
// conjugate, trivial eigenpair dropped, coordinates u_i * lambda_i^m.
Embedding diffusion_maps_embed(const PointCloud& x, double sigma, int d, int m);

// Laplacian eigenmaps on the k-NN graph: smallest nontrivial generalized
// eigenvectors of L = D - Q through the normalized-Laplacian conjugation.
Embedding laplacian_eigenmaps_embed(const PointCloud& x, int k_nn, double sigma,
                                    int d);

// Nystrom-accelerated diffusion maps: the symmetric-normalized kernel is
// extended from landmark subset J, the approximate eigensystem is
// orthogonalized, and the approximate trivial pair (eigenvalue nearest 1,
// lowest coordinate variance) is dropped. J equal to the full index set
// reproduces the exact embedding.
Embedding nystrom_diffusion_embed(const PointCloud& x, double sigma,
                                  const LandmarkSubset& j, int d, int m);

}  // namespace nyskit
