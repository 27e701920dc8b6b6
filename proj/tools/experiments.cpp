#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "nyskit/datasets.hpp"
#include "nyskit/embedding.hpp"
#include "nyskit/linalg.hpp"
#include "nyskit/nystrom.hpp"
#include "nyskit/sampling.hpp"

namespace nysbench {

using namespace nyskit;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ParameterError("cannot open output file " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

PointCloud load_csv_points(const ExperimentConfig& cfg) {
  std::ifstream in(cfg.dataset_path);
  if (!in)
    throw ParameterError("dataset: cannot open " + cfg.dataset_path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool skip = cfg.csv_header;
  while (std::getline(in, line)) {
    if (skip) {
      skip = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParameterError("dataset: bad numeric cell in " + cfg.dataset_path);
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw ParameterError("dataset: need at least 2 points");
  std::size_t width = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != width)
      throw ParameterError("dataset: ragged rows in " + cfg.dataset_path);
  int feat = static_cast<int>(width) - (cfg.csv_tag ? 1 : 0);
  if (feat < 1) throw ParameterError("dataset: no feature columns");
  PointCloud x;
  x.points.resize(rows.size(), feat);
  if (cfg.csv_tag) x.tags.resize(rows.size(), 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int f = 0; f < feat; ++f) x.points(i, f) = rows[i][f];
    if (cfg.csv_tag) x.tags(i, 0) = rows[i][width - 1];
  }
  x.validate();
  return x;
}

// Draw one subset according to the method; degenerate draws surface as
// exceptions handled by the caller.
LandmarkSubset draw_subset(const MethodSpec& m, const KernelMatrix& q, int k,
                           RandomSeed seed) {
  if (m.name == "uniform") return uniform_subset(q.order(), k, seed);
  if (m.name == "diag2") return diag_squared_subset(q, k, seed);
  if (m.name == "detmc")
    return detmc_subset(q, k, DetmcOptions{m.s, m.steps, false}, seed).first;
  if (m.name == "detmax_random")
    return det_max_random_search(q, k, m.search_trials, seed);
  if (m.name == "detmax_greedy") return det_max_greedy(q, k);
  throw ParameterError("unknown method " + m.name);
}

std::vector<double> ranks_of(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman_abs(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> ra = ranks_of(a), rb = ranks_of(b);
  const std::size_t n = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  if (da == 0.0 || db == 0.0) return 0.0;
  return std::abs(num / std::sqrt(da * db));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::nan("");
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_embedding_csv(const std::string& path, const Embedding& e,
                         const PointCloud& x) {
  CsvWriter csv(path);
  std::vector<std::string> header{"point_id"};
  for (int c = 0; c < e.coordinates.cols(); ++c)
    header.push_back("coord_" + std::to_string(c + 1));
  header.push_back("tag");
  csv.row(header);
  for (int i = 0; i < e.coordinates.rows(); ++i) {
    std::vector<std::string> cells{std::to_string(i)};
    for (int c = 0; c < e.coordinates.cols(); ++c)
      cells.push_back(fmt17(e.coordinates(i, c)));
    cells.push_back(x.tags.size() > 0 ? fmt17(x.tags(i, 0)) : "");
    csv.row(cells);
  }
}

}  // namespace

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char c : label)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

PointCloud load_dataset(const ExperimentConfig& cfg) {
  PointCloud x;
  if (cfg.dataset == "fishbowl") {
    x = fishbowl(cfg.dataset_n, cfg.cap_z, RandomSeed{cfg.dataset_seed, 0});
  } else if (cfg.dataset == "uneven_line") {
    x = uneven_line(cfg.dataset_n, RandomSeed{cfg.dataset_seed, 0});
  } else if (cfg.dataset == "csv") {
    x = load_csv_points(cfg);
  } else {
    throw ParameterError("config: unknown dataset " + cfg.dataset);
  }
  if (cfg.standardize_points) x = standardize(x);
  return x;
}

KernelMatrix build_kernel(const ExperimentConfig& cfg, const PointCloud& x) {
  if (cfg.kernel == "rbf") return rbf_kernel(x, cfg.sigma);
  if (cfg.kernel == "knn") return knn_graph_kernel(x, cfg.k_nn, cfg.sigma);
  throw ParameterError("config: unknown kernel " + cfg.kernel);
}

ErrorCurve run_error_experiment(const ExperimentConfig& cfg, const PointCloud& x,
                                const KernelMatrix& q) {
  validate_error_config(cfg, x.count());
  Spectrum spec = eigh(q.base());
  ErrorCurve curve;
  for (int k = cfg.rank_min; k <= cfg.rank_max; ++k) {
    double baseline = 0.0;
    for (int i = k; i < q.order(); ++i) baseline += spec.eigenvalues(i);
    baseline = std::max(0.0, baseline) / q.trace();
    for (const MethodSpec& m : cfg.methods) {
      long trials = m.deterministic() ? 1 : cfg.trials;
      double sum = 0.0, sumsq = 0.0;
      long ok = 0, skipped = 0;
      for (long t = 0; t < trials; ++t) {
        RandomSeed seed{cfg.seed, trial_stream(m.label, k, t)};
        try {
          LandmarkSubset j = draw_subset(m, q, k, seed);
          double e = normalized_error(q, j);
          sum += e;
          sumsq += e * e;
          ++ok;
        } catch (const DegenerateKernelError&) {
          ++skipped;
        } catch (const RankExhaustedError&) {
          ++skipped;
        }
      }
      ErrorCurvePoint pt;
      pt.method = m.label;
      pt.k = k;
      pt.trials = ok;
      pt.skipped = skipped;
      pt.baseline = baseline;
      if (ok > 0) {
        pt.mean_error = sum / ok;
        double var = ok > 1 ? (sumsq - sum * sum / ok) / (ok - 1) : 0.0;
        pt.std_err = ok > 1 ? std::sqrt(std::max(0.0, var) / ok) : 0.0;
      } else {
        pt.mean_error = std::nan("");
        pt.std_err = std::nan("");
      }
      curve.points.push_back(pt);
    }
  }
  return curve;
}

void write_error_curve_csv(const std::string& path, const ErrorCurve& curve) {
  CsvWriter csv(path);
  csv.row({"method", "k", "mean_error", "std_err", "trials", "baseline"});
  for (const ErrorCurvePoint& p : curve.points)
    csv.row({p.method, std::to_string(p.k), fmt17(p.mean_error), fmt17(p.std_err),
             std::to_string(p.trials), fmt17(p.baseline)});
}

void run_embedding_experiment(const ExperimentConfig& cfg, const PointCloud& x) {
  validate_embed_config(cfg, x.count());
  Embedding exact = diffusion_maps_embed(x, cfg.sigma, cfg.embed_dim, cfg.embed_m);
  write_embedding_csv(cfg.out + "_exact.csv", exact, x);

  KernelMatrix qn = symmetric_normalization(rbf_kernel(x, cfg.sigma));
  bool have_tags = x.tags.size() > 0;
  std::vector<double> tag;
  std::vector<double> exact_coord;
  if (have_tags) {
    for (int i = 0; i < x.count(); ++i) {
      tag.push_back(x.tags(i, 0));
      exact_coord.push_back(exact.coordinates(i, 0));
    }
  }

  CsvWriter summary(cfg.out + "_summary.csv");
  summary.row({"method", "trials", "skipped", "median_abs_spearman",
               "mean_abs_spearman"});
  if (have_tags)
    summary.row({"exact", "1", "0", fmt17(spearman_abs(exact_coord, tag)),
                 fmt17(spearman_abs(exact_coord, tag))});

  for (const MethodSpec& m : cfg.methods) {
    long trials = m.deterministic() ? 1 : cfg.embed_trials;
    std::vector<double> rho;
    long skipped = 0;
    bool wrote_first = false;
    for (long t = 0; t < trials; ++t) {
      RandomSeed seed{cfg.seed, trial_stream(m.label, cfg.embed_rank, t)};
      try {
        LandmarkSubset j = draw_subset(m, qn, cfg.embed_rank, seed);
        Embedding e =
            nystrom_diffusion_embed(x, cfg.sigma, j, cfg.embed_dim, cfg.embed_m);
        if (!wrote_first) {
          write_embedding_csv(cfg.out + "_" + sanitize_label(m.label) + ".csv", e, x);
          wrote_first = true;
        }
        if (have_tags) {
          std::vector<double> coord;
          for (int i = 0; i < x.count(); ++i) coord.push_back(e.coordinates(i, 0));
          rho.push_back(spearman_abs(coord, tag));
        }
      } catch (const DegenerateKernelError&) {
        ++skipped;
      } catch (const RankExhaustedError&) {
        ++skipped;
      }
    }
    double mean = std::nan("");
    if (!rho.empty()) {
      mean = 0.0;
      for (double r : rho) mean += r;
      mean /= rho.size();
    }
    summary.row({m.label, std::to_string(trials - skipped), std::to_string(skipped),
                 fmt17(median_of(rho)), fmt17(mean)});
  }
}

std::vector<BoundCheck> verify_bounds(int n, int k_max, long instances,
                                      std::uint64_t seed) {
  if (n < 2 || k_max < 1 || k_max >= n || instances < 1)
    throw ParameterError("verify-bounds: bad n/k_max/instances");
  // Enumeration guard across the sweep.
  double binom = 1.0;
  double worst = 0.0;
  for (int i = 0; i < k_max; ++i) {
    binom *= static_cast<double>(n - i) / (i + 1);
    worst = std::max(worst, binom);
  }
  if (worst > 1e6)
    throw ParameterError("verify-bounds: C(n,k) exceeds enumeration guard");

  std::vector<BoundCheck> out;
  for (long inst = 0; inst < instances; ++inst) {
    Rng rng(RandomSeed{seed, static_cast<std::uint64_t>(inst)});
    MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    KernelMatrix q(MatrixXd(g.transpose() * g));
    Spectrum s = eigh(q.base());
    for (int k = 1; k <= k_max; ++k) {
      double opt = 0.0;
      for (int i = k; i < n; ++i) opt += s.eigenvalues(i);
      {
        double lhs = expected_error_exact(q, k, 0.0);
        double rhs = (n - k) / static_cast<double>(n) * q.trace();
        out.push_back({"uniform_expected", inst, k, lhs, rhs, rhs - lhs,
                       lhs <= rhs + 1e-10});
      }
      {
        double lhs = expected_error_exact(q, k, 1.0);
        double rhs = (k + 1) * opt;
        out.push_back({"determinantal_expected", inst, k, lhs, rhs, rhs - lhs,
                       lhs <= rhs + 1e-10});
      }
      {
        double lhs = nystrom_error_trace(q, exhaustive_det_max(q, k));
        double rhs = (k + 1) * (n - k) * s.eigenvalues(k);
        out.push_back({"detmax", inst, k, lhs, rhs, rhs - lhs, lhs <= rhs + 1e-10});
      }
    }
  }
  return out;
}

void write_bounds_csv(const std::string& path, const std::vector<BoundCheck>& rows) {
  CsvWriter csv(path);
  csv.row({"bound", "instance", "k", "lhs", "rhs", "slack", "pass"});
  for (const BoundCheck& b : rows)
    csv.row({b.bound, std::to_string(b.instance), std::to_string(b.k), fmt17(b.lhs),
             fmt17(b.rhs), fmt17(b.slack), b.pass ? "true" : "false"});
}

void write_metadata(const std::string& path, const ExperimentConfig& cfg,
                    const std::string& command,
                    const std::map<std::string, std::string>& extra) {
  ordered_json j;
  j["tool"] = "nysbench";
  j["version"] = "0.1.0";
  j["command"] = command;
  ordered_json c;
  c["dataset"] = cfg.dataset;
  c["dataset.n"] = cfg.dataset_n;
  c["dataset.cap_z"] = cfg.cap_z;
  c["dataset.seed"] = cfg.dataset_seed;
  if (!cfg.dataset_path.empty()) c["dataset.path"] = cfg.dataset_path;
  c["standardize"] = cfg.standardize_points;
  c["kernel"] = cfg.kernel;
  c["kernel.sigma"] = cfg.sigma;
  if (cfg.kernel == "knn") c["kernel.knn"] = cfg.k_nn;
  ordered_json methods = ordered_json::array();
  for (const MethodSpec& m : cfg.methods) methods.push_back(m.label);
  c["methods"] = methods;
  c["rank.min"] = cfg.rank_min;
  c["rank.max"] = cfg.rank_max;
  c["trials"] = cfg.trials;
  c["embed.dim"] = cfg.embed_dim;
  c["embed.m"] = cfg.embed_m;
  c["embed.rank"] = cfg.embed_rank;
  c["embed.trials"] = cfg.embed_trials;
  c["seed"] = cfg.seed;
  c["out"] = cfg.out;
  j["config"] = c;
  // The error normalization is mean of (trace-norm Nystrom error / tr(Q)).
  j["error_normalization"] = "nystrom_error_trace / trace(Q)";
  for (const auto& [k, v] : extra) j[k] = v;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open output file " + path);
  out << j.dump(2) << '\n';
}

}  // namespace nysbench
