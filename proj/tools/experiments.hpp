#pragma once

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "nyskit/kernels.hpp"

namespace nysbench {

struct ErrorCurvePoint {
  std::string method;
  int k;
  double mean_error;
  double std_err;
  long trials;       // successful trials averaged
  double baseline;   // optimal rank-k error / tr(Q)
  long skipped;      // degenerate trials recorded and excluded
};

struct ErrorCurve {
  std::vector<ErrorCurvePoint> points;
};

nyskit::PointCloud load_dataset(const ExperimentConfig& cfg);
nyskit::KernelMatrix build_kernel(const ExperimentConfig& cfg,
                                  const nyskit::PointCloud& x);

ErrorCurve run_error_experiment(const ExperimentConfig& cfg,
                                const nyskit::PointCloud& x,
                                const nyskit::KernelMatrix& q);

// Writes <out>_exact.csv, one <out>_<method>.csv per method (first trial),
// and <out>_summary.csv with per-method Spearman statistics against the
// ground-truth tag when tags are present.
void run_embedding_experiment(const ExperimentConfig& cfg,
                              const nyskit::PointCloud& x);

struct BoundCheck {
  std::string bound;
  long instance;
  int k;
  double lhs;
  double rhs;
  double slack;
  bool pass;
};

std::vector<BoundCheck> verify_bounds(int n, int k_max, long instances,
                                      std::uint64_t seed);

void write_error_curve_csv(const std::string& path, const ErrorCurve& curve);
void write_bounds_csv(const std::string& path, const std::vector<BoundCheck>& rows);
void write_metadata(const std::string& path, const ExperimentConfig& cfg,
                    const std::string& command,
                    const std::map<std::string, std::string>& extra);

std::string sanitize_label(const std::string& label);

}  // namespace nysbench
