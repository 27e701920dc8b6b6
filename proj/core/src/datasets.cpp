#include "nyskit/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nyskit {

PointCloud fishbowl(int n, double cap_z, RandomSeed seed) {
  if (n < 4) throw ParameterError("fishbowl: need at least 4 points");
  if (cap_z <= 0.0 || cap_z >= 1.0)
    throw ParameterError("fishbowl: cap_z must be in (0, 1)");
  Rng rng(seed);
  PointCloud out;
  out.points.resize(n, 3);
  out.tags.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    // z uniform in (-1, cap_z) is uniform-on-sphere restricted to the cap cut.
    double z = -1.0 + rng.uniform() * (cap_z + 1.0);
    double azimuth = 2.0 * M_PI * rng.uniform();
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.points(i, 0) = r * std::cos(azimuth);
    out.points(i, 1) = r * std::sin(azimuth);
    out.points(i, 2) = z;
    out.tags(i, 0) = azimuth;
    out.tags(i, 1) = std::acos(std::clamp(z, -1.0, 1.0));
  }
  return out;
}

PointCloud uneven_line(int n, RandomSeed seed) {
  if (n < 4) throw ParameterError("uneven_line: need at least 4 points");
  Rng rng(seed);
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) {
    double g1 = rng.gamma_int(2);
    double g2 = rng.gamma_int(5);
    t[i] = g1 / (g1 + g2);  // Beta(2, 5)
  }
  std::sort(t.begin(), t.end());
  const Eigen::Vector3d a(0.0, 0.0, 0.0);
  const Eigen::Vector3d b(1.0, 1.0, 1.0);
  const double noise_sd = 1e-3 * (b - a).norm();
  PointCloud out;
  out.points.resize(n, 3);
  out.tags.resize(n, 1);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d p = a + t[i] * (b - a);
    for (int c = 0; c < 3; ++c) out.points(i, c) = p(c) + noise_sd * rng.normal();
    out.tags(i, 0) = t[i];
  }
  return out;
}

}  // namespace nyskit
