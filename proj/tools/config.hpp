#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nysbench {

// One subset-selection method token, e.g. "uniform", "diag2",
// "detmc(s=1,steps=500)", "detmax_random(trials=2500)", "detmax_greedy".
struct MethodSpec {
  std::string name;
  double s = 1.0;
  long steps = 500;
  long search_trials = 2500;
  std::string label;  // normalized token, used in output and seeding

  bool deterministic() const { return name == "detmax_greedy"; }
};

MethodSpec parse_method(const std::string& token);

struct ExperimentConfig {
  // dataset
  std::string dataset = "fishbowl";  // fishbowl | uneven_line | csv
  int dataset_n = 200;
  double cap_z = 0.6;
  std::uint64_t dataset_seed = 1;
  std::string dataset_path;
  bool csv_header = false;
  bool csv_tag = false;
  bool standardize_points = false;
  // kernel
  std::string kernel = "rbf";  // rbf | knn
  double sigma = 1.0;
  int k_nn = 8;
  // error-curve experiment
  std::vector<MethodSpec> methods;
  int rank_min = 2;
  int rank_max = 20;
  long trials = 500;
  // embedding experiment
  int embed_dim = 1;
  int embed_m = 1;
  int embed_rank = 12;
  long embed_trials = 100;
  // bound-verification experiment
  int bounds_n = 8;
  int bounds_k_max = 4;
  long bounds_instances = 20;
  // common
  std::uint64_t seed = 0;
  std::string out = "results";
};

// Flat key = value file; '#' starts a comment. Unknown keys are an error.
ExperimentConfig load_config(const std::string& path);

void validate_error_config(const ExperimentConfig& cfg, int n_points);
void validate_embed_config(const ExperimentConfig& cfg, int n_points);

// Stream index for trial t of method `label` at rank k (FNV-1a over the
// tuple), so methods and trials see independent randomness.
std::uint64_t trial_stream(const std::string& label, int k, long t);

}  // namespace nysbench
