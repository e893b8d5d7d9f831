#include "hyperre/releq.hpp"

#include <algorithm>
#include <cmath>

#include "hyperre/dynamics.hpp"
#include "hyperre/error.hpp"

namespace hyperre {

double ResidualReport::max() const {
  double r = 0.0;
  for (double x : per_body_residual) r = std::max(r, x);
  return r;
}

std::vector<MinkowskiVec> re_defect_l2(const OrbitSample& sample, std::span<const double> masses) {
  const std::size_t n = sample.positions.size();
  if (sample.velocities.size() != n || sample.accelerations.size() != n || masses.size() != n)
    throw InvalidArgument("orbit sample and masses must have equal lengths");
  const auto rhs = accel_l2(masses, sample.positions, sample.velocities);
  std::vector<MinkowskiVec> defect(n);
  for (std::size_t i = 0; i < n; ++i) defect[i] = sample.accelerations[i] - rhs[i];
  return defect;
}

ResidualReport full_re_residual_l2(const OrbitFunction& orbit, std::span<const double> masses,
                                   std::span<const double> times) {
  ResidualReport report;
  report.per_body_residual.assign(masses.size(), 0.0);
  for (double t : times) {
    const auto defect = re_defect_l2(orbit(t), masses);
    for (std::size_t i = 0; i < defect.size(); ++i)
      report.per_body_residual[i] = std::max(report.per_body_residual[i], max_abs(defect[i]));
  }
  return report;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw InvalidArgument("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  v.back() = hi;
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidArgument("log-spaced grid needs positive bounds");
  auto v = linspace(std::log(lo), std::log(hi), count);
  for (double& x : v) x = std::exp(x);
  v.front() = lo;
  if (count > 1) v.back() = hi;
  return v;
}

}  // namespace hyperre
