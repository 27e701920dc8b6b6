#pragma once

#include "nyskit/kernels.hpp"
#include "nyskit/rng.hpp"

namespace nyskit {

// Uniform sample of the unit sphere conditioned on z < cap_z (sphere with the
// top cap removed). Tags: (azimuth, polar angle).
PointCloud fishbowl(int n, double cap_z, RandomSeed seed);

// Straight segment in R^3 sampled at Beta(2,5)-distributed parameter values,
// sorted, with isotropic noise of standard deviation 1e-3 of the segment
// length. Tag: the curve parameter t.
PointCloud uneven_line(int n, RandomSeed seed);

}  // namespace nyskit
