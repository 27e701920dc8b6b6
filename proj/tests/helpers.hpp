#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nyskit/rng.hpp"
#include "nyskit/types.hpp"

namespace nyskit::testing {

inline MatrixXd random_matrix(int rows, int cols, Rng& rng) {
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline SymmetricMatrix random_symmetric(int n, Rng& rng) {
  return SymmetricMatrix(random_matrix(n, n, rng));
}

// Random PSD matrix of full rank (Gram of a square Gaussian factor).
inline KernelMatrix random_psd(int n, Rng& rng) {
  MatrixXd g = random_matrix(n, n, rng);
  return KernelMatrix(g.transpose() * g);
}

// Random PSD matrix of rank exactly r.
inline KernelMatrix random_psd_rank(int n, int r, Rng& rng) {
  MatrixXd g = random_matrix(r, n, rng);
  return KernelMatrix(g.transpose() * g);
}

inline bool close_rel(double a, double b, double rtol, double floor = 1e-12) {
  double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) <= rtol * scale;
}

inline std::vector<double> ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
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

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> ra = ranks(a), rb = ranks(b);
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
  return num / std::sqrt(da * db);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace nyskit::testing
