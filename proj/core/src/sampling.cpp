#include "nyskit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nyskit/linalg.hpp"
#include "nyskit/nystrom.hpp"

namespace nyskit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double binom(int n, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= static_cast<double>(n - i) / (i + 1);
  return acc;
}

void check_enumeration_guard(int n, int k, const char* who) {
  if (k < 0 || k > n) throw ParameterError(std::string(who) + ": k out of range");
  if (binom(n, k) > 1e6)
    throw ParameterError(std::string(who) + ": C(n,k) exceeds enumeration guard");
}

// Visit all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int t = pos + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

double subset_logdet(const MatrixXd& q, const std::vector<int>& idx) {
  return logdet_psd(SymmetricMatrix(submatrix(q, idx, idx)));
}

double subset_logdet_tridiag(const MatrixXd& q, const std::vector<int>& idx) {
  return tridiagonal_logdet_approx(SymmetricMatrix(submatrix(q, idx, idx)));
}

}  // namespace

LandmarkSubset uniform_subset(int n, int k, Rng& rng) {
  if (k < 1 || k >= n) throw ParameterError("uniform_subset: need 1 <= k < n");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i)
    std::swap(pool[i], pool[i + rng.uniform_int(n - i)]);
  pool.resize(k);
  return LandmarkSubset(std::move(pool), n);
}

LandmarkSubset uniform_subset(int n, int k, RandomSeed seed) {
  Rng rng(seed);
  return uniform_subset(n, k, rng);
}

LandmarkSubset diag_squared_subset(const KernelMatrix& q, int k, RandomSeed seed) {
  const int n = q.order();
  if (k < 1 || k > n) throw ParameterError("diag_squared_subset: k out of range");
  VectorXd w = q.mat().diagonal().array().square();
  int positive = 0;
  for (int i = 0; i < n; ++i)
    if (w(i) > 0.0) ++positive;
  if (positive < k)
    throw DegenerateKernelError(
        "diag_squared_subset: fewer than k indices with positive diagonal");
  Rng rng(seed);
  std::vector<int> chosen;
  std::vector<bool> taken(n, false);
  for (int draw = 0; draw < k; ++draw) {
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      if (!taken[i]) total += w(i);
    double u = rng.uniform() * total;
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (taken[i] || w(i) <= 0.0) continue;
      u -= w(i);
      if (u <= 0.0) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {  // guard against roundoff at the tail
      for (int i = n - 1; i >= 0; --i)
        if (!taken[i] && w(i) > 0.0) {
          pick = i;
          break;
        }
    }
    taken[pick] = true;
    chosen.push_back(pick);
  }
  return LandmarkSubset(std::move(chosen), n);
}

std::map<std::vector<int>, double> exact_subset_distribution(const KernelMatrix& q,
                                                             int k, double s) {
  const int n = q.order();
  check_enumeration_guard(n, k, "exact_subset_distribution");
  if (s < 0.0) throw ParameterError("exact_subset_distribution: s must be >= 0");
  std::map<std::vector<int>, double> logp;
  double max_lp = kNegInf;
  for_each_subset(n, k, [&](const std::vector<int>& idx) {
    double ld = subset_logdet(q.mat(), idx);
    double lp = (s == 0.0) ? 0.0 : s * ld;  // s = 0 is uniform, singular or not
    logp.emplace(idx, lp);
    max_lp = std::max(max_lp, lp);
  });
  if (max_lp == kNegInf)
    throw DegenerateKernelError(
        "exact_subset_distribution: all subset determinants are zero");
  double z = 0.0;
  for (auto& [idx, lp] : logp) z += std::exp(lp - max_lp);
  std::map<std::vector<int>, double> out;
  for (auto& [idx, lp] : logp)
    out.emplace(idx, std::exp(lp - max_lp) / z);
  return out;
}

namespace {

struct ChainState {
  std::vector<int> members;      // sorted
  std::vector<bool> is_member;   // size n
  double logdet;
};

double state_logdet(const MatrixXd& q, const std::vector<int>& members,
                    bool tridiag) {
  return tridiag ? subset_logdet_tridiag(q, members) : subset_logdet(q, members);
}

// One Metropolis step; returns true if the proposal was accepted.
bool chain_step(const MatrixXd& q, int n, int k, double s, bool tridiag,
                ChainState& st, Rng& rng) {
  int out_pos = rng.uniform_int(k);
  int in_rank = rng.uniform_int(n - k);
  int in_idx = -1;
  for (int i = 0, seen = 0; i < n; ++i) {
    if (!st.is_member[i]) {
      if (seen == in_rank) {
        in_idx = i;
        break;
      }
      ++seen;
    }
  }
  int out_idx = st.members[out_pos];
  std::vector<int> proposal = st.members;
  proposal[out_pos] = in_idx;
  std::sort(proposal.begin(), proposal.end());
  double ld = state_logdet(q, proposal, tridiag);

  bool accept;
  if (s == 0.0) {
    accept = true;
  } else if (ld == kNegInf) {
    accept = false;
  } else if (st.logdet == kNegInf) {
    accept = true;
  } else {
    double log_ratio = s * (ld - st.logdet);
    accept = log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio);
  }
  if (accept) {
    st.members = std::move(proposal);
    st.is_member[out_idx] = false;
    st.is_member[in_idx] = true;
    st.logdet = ld;
  }
  return accept;
}

ChainState chain_init(const MatrixXd& q, int n, int k, double s, bool tridiag,
                      Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    LandmarkSubset j = uniform_subset(n, k, rng);
    double ld = state_logdet(q, j.indices(), tridiag);
    if (s == 0.0 || ld > kNegInf) {
      ChainState st{j.indices(), std::vector<bool>(n, false), ld};
      for (int i : st.members) st.is_member[i] = true;
      return st;
    }
  }
  throw DegenerateKernelError(
      "detmc_subset: could not find a nonsingular initial subset in 100 draws");
}

}  // namespace

std::pair<LandmarkSubset, SamplerDiagnostics> detmc_subset(const KernelMatrix& q,
                                                           int k,
                                                           const DetmcOptions& opts,
                                                           RandomSeed seed) {
  const int n = q.order();
  if (k < 1 || k >= n) throw ParameterError("detmc_subset: need 1 <= k < n");
  if (opts.steps < 1) throw ParameterError("detmc_subset: steps must be >= 1");
  if (opts.s < 0.0) throw ParameterError("detmc_subset: s must be >= 0");
  Rng rng(seed);
  ChainState st = chain_init(q.mat(), n, k, opts.s, opts.tridiagonal_logdet, rng);
  SamplerDiagnostics diag;
  diag.tridiagonal_target = opts.tridiagonal_logdet;
  for (long t = 0; t < opts.steps; ++t) {
    if (chain_step(q.mat(), n, k, opts.s, opts.tridiagonal_logdet, st, rng))
      ++diag.accepted;
    ++diag.steps;
  }
  diag.acceptance_rate =
      static_cast<double>(diag.accepted) / static_cast<double>(diag.steps);
  diag.final_logdet = st.logdet;
  return {LandmarkSubset(st.members, n), diag};
}

std::vector<LandmarkSubset> detmc_sample_stream(const KernelMatrix& q, int k,
                                                double s, long count, long burn_in,
                                                long thin, RandomSeed seed) {
  const int n = q.order();
  if (k < 1 || k >= n) throw ParameterError("detmc_sample_stream: need 1 <= k < n");
  if (count < 1 || thin < 1 || burn_in < 0)
    throw ParameterError("detmc_sample_stream: bad count/burn_in/thin");
  Rng rng(seed);
  ChainState st = chain_init(q.mat(), n, k, s, false, rng);
  for (long t = 0; t < burn_in; ++t) chain_step(q.mat(), n, k, s, false, st, rng);
  std::vector<LandmarkSubset> out;
  out.reserve(count);
  for (long c = 0; c < count; ++c) {
    for (long t = 0; t < thin; ++t) chain_step(q.mat(), n, k, s, false, st, rng);
    out.emplace_back(st.members, n);
  }
  return out;
}

LandmarkSubset det_max_random_search(const KernelMatrix& q, int k, long trials,
                                     RandomSeed seed) {
  if (trials < 1) throw ParameterError("det_max_random_search: trials must be >= 1");
  Rng rng(seed);
  LandmarkSubset best = uniform_subset(q.order(), k, rng);
  double best_ld = subset_logdet(q.mat(), best.indices());
  for (long t = 1; t < trials; ++t) {
    LandmarkSubset cand = uniform_subset(q.order(), k, rng);
    double ld = subset_logdet(q.mat(), cand.indices());
    if (ld > best_ld) {
      best = cand;
      best_ld = ld;
    }
  }
  return best;
}

LandmarkSubset det_max_greedy(const KernelMatrix& q, int k) {
  const int n = q.order();
  if (k < 1 || k >= n) throw ParameterError("det_max_greedy: need 1 <= k < n");
  MatrixXd resid = q.mat();
  double max_diag0 = resid.diagonal().maxCoeff();
  const double tol = 1e-12 * std::max(1.0, max_diag0);
  std::vector<bool> taken(n, false);
  std::vector<int> chosen;
  for (int step = 0; step < k; ++step) {
    int arg = -1;
    double best = tol;
    for (int i = 0; i < n; ++i) {
      if (!taken[i] && resid(i, i) > best) {
        best = resid(i, i);
        arg = i;
      }
    }
    if (arg < 0)
      throw RankExhaustedError(
          "det_max_greedy: kernel rank exhausted at size " + std::to_string(step),
          step);
    taken[arg] = true;
    chosen.push_back(arg);
    resid -= (resid.col(arg) * resid.row(arg)) / resid(arg, arg);
  }
  return LandmarkSubset(std::move(chosen), n);
}

double expected_error_exact(const KernelMatrix& q, int k, double s) {
  auto dist = exact_subset_distribution(q, k, s);
  double acc = 0.0;
  for (const auto& [idx, p] : dist) {
    if (p == 0.0) continue;
    acc += p * nystrom_error_trace(q, LandmarkSubset(idx, q.order()));
  }
  return acc;
}

LandmarkSubset exhaustive_det_max(const KernelMatrix& q, int k) {
  const int n = q.order();
  check_enumeration_guard(n, k, "exhaustive_det_max");
  std::vector<int> best;
  double best_ld = kNegInf;
  bool first = true;
  for_each_subset(n, k, [&](const std::vector<int>& idx) {
    double ld = subset_logdet(q.mat(), idx);
    if (first || ld > best_ld) {
      best = idx;
      best_ld = ld;
      first = false;
    }
  });
  return LandmarkSubset(best, n);
}

}  // namespace nyskit
