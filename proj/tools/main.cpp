#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "nyskit/types.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<int> rank_min;
  std::optional<int> rank_max;
  std::optional<std::string> out;
  bool csv_header = false;
};

nysbench::ExperimentConfig resolve(const std::string& config_path,
                                   const Overrides& ov) {
  nysbench::ExperimentConfig cfg = nysbench::load_config(config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.rank_min) cfg.rank_min = *ov.rank_min;
  if (ov.rank_max) cfg.rank_max = *ov.rank_max;
  if (ov.out) cfg.out = *ov.out;
  if (ov.csv_header) cfg.csv_header = true;
  return cfg;
}

void add_overrides(CLI::App* cmd, std::string& config_path, Overrides& ov,
                   bool config_required = true) {
  auto* opt = cmd->add_option("--config", config_path, "experiment config file");
  if (config_required) opt->required();
  cmd->add_option("--seed", ov.seed, "override the base seed");
  cmd->add_option("--trials", ov.trials, "override the trial count");
  cmd->add_option("--rank-min", ov.rank_min, "override rank.min");
  cmd->add_option("--rank-max", ov.rank_max, "override rank.max");
  cmd->add_option("--out", ov.out, "override the output prefix");
  cmd->add_flag("--header", ov.csv_header,
                "csv dataset ingestion skips one header line");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nystrom landmark-selection benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;

  CLI::App* error_cmd = app.add_subcommand(
      "error-curve", "mean normalized completion error per method and rank");
  add_overrides(error_cmd, config_path, ov);

  CLI::App* embed_cmd = app.add_subcommand(
      "embed", "exact and landmark-accelerated diffusion embeddings");
  add_overrides(embed_cmd, config_path, ov);

  CLI::App* bounds_cmd = app.add_subcommand(
      "verify-bounds", "expected-error and determinant-maximizer bound checks "
                       "on random Wishart kernels");
  std::optional<int> vb_n;
  std::optional<int> vb_kmax;
  std::optional<long> vb_instances;
  bounds_cmd->add_option("--config", config_path, "experiment config file");
  bounds_cmd->add_option("--n", vb_n, "kernel order");
  bounds_cmd->add_option("--k-max", vb_kmax, "largest subset size checked");
  bounds_cmd->add_option("--instances", vb_instances, "random kernels drawn");
  bounds_cmd->add_option("--seed", ov.seed, "base seed");
  bounds_cmd->add_option("--out", ov.out, "output prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (error_cmd->parsed()) {
      nysbench::ExperimentConfig cfg = resolve(config_path, ov);
      nyskit::PointCloud x = nysbench::load_dataset(cfg);
      nyskit::KernelMatrix q = nysbench::build_kernel(cfg, x);
      nysbench::ErrorCurve curve = nysbench::run_error_experiment(cfg, x, q);
      nysbench::write_error_curve_csv(cfg.out + "_errors.csv", curve);
      long skipped = 0;
      for (const auto& p : curve.points) skipped += p.skipped;
      nysbench::write_metadata(cfg.out + "_meta.json", cfg, "error-curve",
                               {{"skipped_trials", std::to_string(skipped)}});
      std::cout << "wrote " << cfg.out << "_errors.csv (" << curve.points.size()
                << " rows, " << skipped << " degenerate trials skipped)\n";
    } else if (embed_cmd->parsed()) {
      nysbench::ExperimentConfig cfg = resolve(config_path, ov);
      nyskit::PointCloud x = nysbench::load_dataset(cfg);
      nysbench::run_embedding_experiment(cfg, x);
      nysbench::write_metadata(cfg.out + "_meta.json", cfg, "embed", {});
      std::cout << "wrote " << cfg.out << "_summary.csv and per-method "
                << "embedding coordinates\n";
    } else if (bounds_cmd->parsed()) {
      nysbench::ExperimentConfig cfg = config_path.empty()
                                           ? nysbench::ExperimentConfig{}
                                           : resolve(config_path, ov);
      if (config_path.empty()) {
        if (ov.seed) cfg.seed = *ov.seed;
        if (ov.out) cfg.out = *ov.out;
      }
      if (vb_n) cfg.bounds_n = *vb_n;
      if (vb_kmax) cfg.bounds_k_max = *vb_kmax;
      if (vb_instances) cfg.bounds_instances = *vb_instances;
      auto rows = nysbench::verify_bounds(cfg.bounds_n, cfg.bounds_k_max,
                                          cfg.bounds_instances, cfg.seed);
      nysbench::write_bounds_csv(cfg.out + "_bounds.csv", rows);
      long failures = 0;
      for (const auto& b : rows)
        if (!b.pass) ++failures;
      std::cout << "checked " << rows.size() << " bound instances, " << failures
                << " violations\n";
      if (failures > 0) return 1;
    }
  } catch (const nyskit::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nyskit::DegenerateKernelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const nyskit::RankExhaustedError& e) {
    std::cerr << "error: " << e.what() << " (achieved size " << e.achieved_size
              << ")\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
