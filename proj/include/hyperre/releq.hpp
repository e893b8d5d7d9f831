#pragma once

// Shared machinery for checking candidate relative equilibria: closed-form
// orbit samples and their equation-of-motion defects.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hyperre/geometry.hpp"

namespace hyperre {

/// Positions, velocities and accelerations of all bodies at one instant of a
/// closed-form orbit.
struct OrbitSample {
  std::vector<MinkowskiVec> positions;
  std::vector<MinkowskiVec> velocities;
  std::vector<MinkowskiVec> accelerations;
};

struct ResidualReport {
  /// Max-norm of the equation-of-motion defect per body over the sampled times.
  std::vector<double> per_body_residual;
  /// n-gon case only: the z-balance sum for body 1 and its bracket terms.
  double zsum = 0.0;
  std::vector<double> term_signs;

  double max() const;
};

/// R_i = q_i'' - RHS_i(q, q') for every body. Throws CollisionError.
std::vector<MinkowskiVec> re_defect_l2(const OrbitSample& sample, std::span<const double> masses);

using OrbitFunction = std::function<OrbitSample(double)>;

ResidualReport full_re_residual_l2(const OrbitFunction& orbit, std::span<const double> masses,
                                   std::span<const double> times);

std::vector<double> linspace(double lo, double hi, std::size_t count);
std::vector<double> logspace(double lo, double hi, std::size_t count);

}  // namespace hyperre
