#pragma once

#include <map>
#include <vector>

#include "nyskit/rng.hpp"
#include "nyskit/types.hpp"

namespace nyskit {

struct SamplerDiagnostics {
  long steps = 0;
  long accepted = 0;
  double acceptance_rate = 0.0;
  double final_logdet = 0.0;
  bool tridiagonal_target = false;
};

struct DetmcOptions {
  double s = 1.0;
  long steps = 1;
  // Use the O(k) tridiagonal log-determinant in the acceptance ratio.
  // Changes the stationary distribution to the tridiagonal surrogate.
  bool tridiagonal_logdet = false;
};

// Uniform k-subset via partial Fisher-Yates.
LandmarkSubset uniform_subset(int n, int k, RandomSeed seed);
LandmarkSubset uniform_subset(int n, int k, Rng& rng);

// k distinct indices drawn sequentially without replacement, probabilities
// proportional to Q_ii^2 among the remaining indices.
LandmarkSubset diag_squared_subset(const KernelMatrix& q, int k, RandomSeed seed);

// p^s(J) proportional to det(Q_J)^s over all C(n,k) subsets, exhaustively.
// Guarded to C(n,k) <= 1e6.
std::map<std::vector<int>, double> exact_subset_distribution(const KernelMatrix& q,
                                                             int k, double s);

// Metropolis chain over k-subsets: single-index swap proposal, acceptance
// min(1, exp(s * (logdet' - logdet))). Returns the final state.
std::pair<LandmarkSubset, SamplerDiagnostics> detmc_subset(const KernelMatrix& q,
                                                           int k,
                                                           const DetmcOptions& opts,
                                                           RandomSeed seed);

// One long chain: burn-in, then `count` states taken every `thin` steps.
std::vector<LandmarkSubset> detmc_sample_stream(const KernelMatrix& q, int k,
                                                double s, long count, long burn_in,
                                                long thin, RandomSeed seed);

// Default burn-in for streaming use: max(10k, 500).
inline long detmc_default_burn_in(int k) { return std::max(10L * k, 500L); }

// Best of `trials` uniform draws by det(Q_J); ties keep the first found.
LandmarkSubset det_max_random_search(const KernelMatrix& q, int k, long trials,
                                     RandomSeed seed);

// Greedy determinant maximization: grow J by the index maximizing the Schur
// complement diagonal; deterministic, ties by lowest index.
LandmarkSubset det_max_greedy(const KernelMatrix& q, int k);

// Exact expectation sum_J p^s(J) * nystrom_error_trace(Q, J); p^0 is uniform.
double expected_error_exact(const KernelMatrix& q, int k, double s);

// Subset maximizing det(Q_J) by exhaustive enumeration (same C(n,k) guard).
LandmarkSubset exhaustive_det_max(const KernelMatrix& q, int k);

}  // namespace nyskit
