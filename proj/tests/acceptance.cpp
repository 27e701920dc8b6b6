// Acceptance suite: one pass/fail line per criterion. Each criterion can be
// run alone by passing its number; with no arguments all ten run in order.
// Criterion 10 shells out to the CLI binary named by NYSBENCH_BIN.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "nyskit/datasets.hpp"
#include "nyskit/embedding.hpp"
#include "nyskit/kernels.hpp"
#include "nyskit/linalg.hpp"
#include "nyskit/nystrom.hpp"
#include "nyskit/sampling.hpp"

using namespace nyskit;
using nyskit::testing::median;
using nyskit::testing::random_psd;
using nyskit::testing::random_psd_rank;
using nyskit::testing::spearman;

namespace {

// 1. The closed-form trace error matches the trace norm of the residual of
// the materialized completion.
bool error_identity() {
  Rng rng(RandomSeed{101, 0});
  for (int c = 0; c < 200; ++c) {
    int n = 5 + rng.uniform_int(26);
    int k = 1 + rng.uniform_int(std::min(5, n - 1));
    KernelMatrix q = random_psd(n, rng);
    LandmarkSubset j = uniform_subset(n, k, rng);
    double fast = nystrom_error_trace(q, j);
    KernelMatrix qh = reconstruct(nystrom_extend(q, j));
    double direct = trace_norm(MatrixXd(q.mat() - qh.mat()));
    if (std::abs(fast - direct) > 1e-8 * std::max({1.0, fast, direct})) {
      std::cerr << "  mismatch at case " << c << ": " << fast << " vs " << direct
                << "\n";
      return false;
    }
  }
  return true;
}

// 2. A rank-k kernel is completed exactly from any nonsingular size-k subset.
bool perfect_reconstruction() {
  Rng rng(RandomSeed{102, 0});
  for (int c = 0; c < 50; ++c) {
    KernelMatrix q = random_psd_rank(50, 5, rng);
    LandmarkSubset j = det_max_greedy(q, 5);
    double err = nystrom_error_trace(q, j);
    if (err > 1e-8 * q.trace()) {
      std::cerr << "  residual " << err << " exceeds tolerance at case " << c
                << "\n";
      return false;
    }
  }
  return true;
}

// Shared sweep for the three expectation/maximizer bound criteria.
bool bound_sweep(const std::function<bool(const KernelMatrix&, const Spectrum&,
                                          int, int)>& check) {
  Rng rng(RandomSeed{103, 0});
  for (int n : {6, 9, 12}) {
    for (int inst = 0; inst < 3; ++inst) {
      KernelMatrix q = random_psd(n, rng);
      Spectrum s = eigh(q.base());
      for (int k = 1; k < n; ++k)
        if (!check(q, s, n, k)) return false;
    }
  }
  return true;
}

// 3. Expected uniform-subset error is at most (n-k)/n tr(Q), with equality
// on diagonal kernels.
bool uniform_expectation_bound() {
  bool ok = bound_sweep([](const KernelMatrix& q, const Spectrum&, int n, int k) {
    double lhs = expected_error_exact(q, k, 0.0);
    double rhs = (n - k) / static_cast<double>(n) * q.trace();
    if (lhs > rhs + 1e-10) {
      std::cerr << "  violated at n=" << n << " k=" << k << ": " << lhs << " > "
                << rhs << "\n";
      return false;
    }
    return true;
  });
  if (!ok) return false;
  Rng rng(RandomSeed{103, 1});
  for (int n : {6, 9, 12}) {
    VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = 0.1 + rng.uniform();
    KernelMatrix q{MatrixXd(d.asDiagonal())};
    for (int k = 1; k < n; ++k) {
      double lhs = expected_error_exact(q, k, 0.0);
      double rhs = (n - k) / static_cast<double>(n) * q.trace();
      if (std::abs(lhs - rhs) > 1e-10) {
        std::cerr << "  diagonal equality failed at n=" << n << " k=" << k << "\n";
        return false;
      }
    }
  }
  return true;
}

// 4. Expected error under the determinant-weighted distribution is at most
// (k+1) times the optimal rank-k error.
bool determinantal_expectation_bound() {
  return bound_sweep([](const KernelMatrix& q, const Spectrum& s, int n, int k) {
    double lhs = expected_error_exact(q, k, 1.0);
    double opt = 0.0;
    for (int i = k; i < n; ++i) opt += s.eigenvalues(i);
    double rhs = (k + 1) * opt;
    if (lhs > rhs + 1e-10) {
      std::cerr << "  violated at n=" << n << " k=" << k << ": " << lhs << " > "
                << rhs << "\n";
      return false;
    }
    return true;
  });
}

// 5. Error at the determinant-maximizing subset is at most
// (k+1)(n-k) lambda_{k+1}.
bool detmax_bound() {
  return bound_sweep([](const KernelMatrix& q, const Spectrum& s, int n, int k) {
    double lhs = nystrom_error_trace(q, exhaustive_det_max(q, k));
    double rhs = (k + 1) * (n - k) * s.eigenvalues(k);
    if (lhs > rhs + 1e-10) {
      std::cerr << "  violated at n=" << n << " k=" << k << ": " << lhs << " > "
                << rhs << "\n";
      return false;
    }
    return true;
  });
}

// 6. The Metropolis chain reproduces the exhaustively enumerated subset
// distribution in total variation.
bool sampler_fidelity() {
  Rng rng(RandomSeed{106, 0});
  KernelMatrix q = random_psd(8, rng);
  const int k = 3;
  const long count = 100000;
  int si = 0;
  for (double s : {0.5, 1.0, 2.0}) {
    auto exact = exact_subset_distribution(q, k, s);
    std::map<std::vector<int>, long> counts;
    auto draws = detmc_sample_stream(q, k, s, count, detmc_default_burn_in(k), 3,
                                     RandomSeed{106, static_cast<std::uint64_t>(
                                                          1 + si++)});
    for (const LandmarkSubset& j : draws) ++counts[j.indices()];
    double tv = 0.0;
    for (const auto& [subset, p] : exact) {
      auto it = counts.find(subset);
      double emp = it == counts.end() ? 0.0 : it->second / double(count);
      tv += std::abs(emp - p);
    }
    tv *= 0.5;
    if (tv > 0.05) {
      std::cerr << "  total variation " << tv << " at s=" << s << "\n";
      return false;
    }
  }
  return true;
}

// 7. On the capped-sphere benchmark, the determinant-weighted sampler never
// loses to uniform in mean normalized error, and uniform is strictly worst
// among the three stochastic methods at nearly every rank.
bool error_curve_ordering() {
  PointCloud x = fishbowl(200, 0.6, RandomSeed{107, 0});
  KernelMatrix q = rbf_kernel(x, 0.7);
  const long trials = 500;
  int detmc_wins = 0, uniform_worst = 0, ranks = 0;
  for (int k = 2; k <= 20; ++k) {
    double mean_u = 0, mean_d = 0, mean_r = 0;
    for (long t = 0; t < trials; ++t) {
      std::uint64_t base = static_cast<std::uint64_t>(k) * 1000003ULL + t * 3ULL;
      mean_u += normalized_error(q, uniform_subset(200, k, RandomSeed{107, base}));
      mean_d += normalized_error(
          q, detmc_subset(q, k, DetmcOptions{1.0, 300, false},
                          RandomSeed{107, base + 1})
                 .first);
      mean_r += normalized_error(
          q, det_max_random_search(q, k, 50, RandomSeed{107, base + 2}));
    }
    mean_u /= trials;
    mean_d /= trials;
    mean_r /= trials;
    ++ranks;
    if (mean_d <= mean_u) ++detmc_wins;
    if (mean_u > mean_d && mean_u > mean_r) ++uniform_worst;
  }
  std::cerr << "  detmc <= uniform at " << detmc_wins << "/" << ranks
            << " ranks; uniform strictly worst at " << uniform_worst << "/"
            << ranks << "\n";
  return detmc_wins == ranks && uniform_worst >= 15;
}

// 8. On the unevenly sampled segment, the determinant-weighted landmark
// embedding recovers the ordering parameter at least as well as uniform
// landmarks (median absolute rank correlation over paired trials).
bool embedding_parameter_recovery() {
  PointCloud x = uneven_line(150, RandomSeed{108, 0});
  const double sigma = 0.2;
  const int k = 12;
  KernelMatrix qn = symmetric_normalization(rbf_kernel(x, sigma));
  std::vector<double> tag;
  for (int i = 0; i < x.count(); ++i) tag.push_back(x.tags(i, 0));
  auto rho = [&](const LandmarkSubset& j) {
    Embedding e = nystrom_diffusion_embed(x, sigma, j, 1, 1);
    std::vector<double> c;
    for (int i = 0; i < x.count(); ++i) c.push_back(e.coordinates(i, 0));
    return std::abs(spearman(c, tag));
  };
  std::vector<double> rho_u, rho_d;
  for (long t = 0; t < 100; ++t) {
    std::uint64_t base = 2ULL * t;
    rho_u.push_back(rho(uniform_subset(150, k, RandomSeed{108, base})));
    rho_d.push_back(rho(detmc_subset(qn, k, DetmcOptions{1.0, 500, false},
                                     RandomSeed{108, base + 1})
                            .first));
  }
  double mu = median(rho_u), md = median(rho_d);
  std::cerr << "  median |spearman|: detmc " << md << ", uniform " << mu << "\n";
  return md >= mu;
}

// 9. Stochastic-matrix invariants: the trivial eigenpair of the normalized
// kernel, spectrum agreement between the Markov matrix and its symmetric
// conjugate, and the Laplacian annihilating the constant vector.
bool embedding_invariants() {
  PointCloud x = fishbowl(50, 0.6, RandomSeed{109, 0});
  KernelMatrix q = rbf_kernel(x, 0.7);
  const int n = q.order();

  KernelMatrix qn = symmetric_normalization(q);
  Spectrum s = eigh(qn.base());
  if (std::abs(s.eigenvalues(0) - 1.0) > 1e-10) {
    std::cerr << "  top normalized eigenvalue " << s.eigenvalues(0) << "\n";
    return false;
  }
  VectorXd sqrt_d = degree(q).d.cwiseSqrt();
  VectorXd trivial = sqrt_d / sqrt_d.norm();
  if ((s.eigenvectors.col(0) - trivial).cwiseAbs().maxCoeff() > 1e-10) {
    std::cerr << "  trivial eigenvector mismatch\n";
    return false;
  }

  MatrixXd p = markov_matrix(q);
  Eigen::EigenSolver<MatrixXd> es(p);
  std::vector<double> markov_spec;
  for (int i = 0; i < n; ++i) markov_spec.push_back(es.eigenvalues()(i).real());
  std::sort(markov_spec.begin(), markov_spec.end(), std::greater<>());
  for (int i = 0; i < n; ++i)
    if (std::abs(markov_spec[static_cast<std::size_t>(i)] - s.eigenvalues(i)) >
        1e-10) {
      std::cerr << "  spectra differ at position " << i << "\n";
      return false;
    }

  KernelMatrix l = combinatorial_laplacian(q);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) acc += l.mat()(i, j);
    acc += l.mat()(i, i);
    if (acc != 0.0) {
      std::cerr << "  (L * ones)(" << i << ") = " << acc << "\n";
      return false;
    }
  }
  return true;
}

// 10. Each CLI subcommand is byte-for-byte deterministic under a fixed config.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run_cmd(const std::string& cmd) {
  int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return rc == 0;
}

bool cli_determinism() {
  const char* bin = std::getenv("NYSBENCH_BIN");
  if (!bin) {
    std::cerr << "  NYSBENCH_BIN is not set\n";
    return false;
  }
  const std::string b = bin;
  {
    std::ofstream cfg("acc_err.cfg");
    cfg << "dataset = fishbowl\ndataset.n = 60\ndataset.cap_z = 0.6\n"
           "dataset.seed = 7\nkernel = rbf\nkernel.sigma = 0.7\n"
           "methods = uniform, detmc(s=1,steps=100), detmax_greedy\n"
           "rank.min = 2\nrank.max = 5\ntrials = 10\nseed = 42\n";
  }
  {
    std::ofstream cfg("acc_emb.cfg");
    cfg << "dataset = uneven_line\ndataset.n = 60\ndataset.seed = 3\n"
           "kernel = rbf\nkernel.sigma = 0.2\n"
           "methods = uniform, detmc(s=1,steps=100)\n"
           "embed.dim = 1\nembed.m = 1\nembed.rank = 8\nembed.trials = 5\n"
           "seed = 11\n";
  }
  struct Run {
    std::string cmd;
    std::vector<std::string> suffixes;
  };
  std::vector<Run> runs = {
      {" error-curve --config acc_err.cfg --out acc",
       {"_errors.csv", "_meta.json"}},
      {" embed --config acc_emb.cfg --out acc",
       {"_exact.csv", "_uniform.csv", "_summary.csv", "_meta.json"}},
      {" verify-bounds --n 7 --k-max 3 --instances 3 --seed 1 --out acc",
       {"_bounds.csv"}},
  };
  for (const Run& r : runs) {
    if (!run_cmd(b + r.cmd)) {
      std::cerr << "  command failed:" << r.cmd << "\n";
      return false;
    }
    std::vector<std::string> first;
    for (const std::string& sfx : r.suffixes) first.push_back(slurp("acc" + sfx));
    if (!run_cmd(b + r.cmd)) {
      std::cerr << "  command failed on rerun:" << r.cmd << "\n";
      return false;
    }
    for (std::size_t i = 0; i < r.suffixes.size(); ++i) {
      if (slurp("acc" + r.suffixes[i]) != first[i]) {
        std::cerr << "  outputs differ:" << r.suffixes[i] << " for" << r.cmd
                  << "\n";
        return false;
      }
    }
  }
  return true;
}

struct Criterion {
  int id;
  std::string name;
  std::function<bool()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "trace error identity", error_identity},
      {2, "low-rank perfect reconstruction", perfect_reconstruction},
      {3, "uniform expected-error bound", uniform_expectation_bound},
      {4, "determinantal expected-error bound", determinantal_expectation_bound},
      {5, "determinant-maximizer error bound", detmax_bound},
      {6, "sampler distribution fidelity", sampler_fidelity},
      {7, "error-curve method ordering", error_curve_ordering},
      {8, "embedding parameter recovery", embedding_parameter_recovery},
      {9, "embedding invariants", embedding_invariants},
      {10, "cli determinism", cli_determinism},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      std::cerr << "  exception: " << e.what() << "\n";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": "
              << c.name << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
