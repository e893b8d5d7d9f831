#include "hyperre/ngon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperre/dynamics.hpp"
#include "hyperre/error.hpp"

namespace hyperre {
namespace {

double vertex_angle(int i, int n) { return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n); }

std::vector<MinkowskiVec> initial_vectors(int n, double r) {
  const double z = std::sqrt(1.0 + r * r);
  std::vector<MinkowskiVec> q;
  q.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phi = vertex_angle(i, n);
    q.push_back({-r * std::sin(phi), r * std::cos(phi), z});
  }
  return q;
}

double mass_of(std::span<const double> masses, std::size_t j) { return masses.empty() ? 1.0 : masses[j]; }

}  // namespace

double NGonParams::z() const { return std::sqrt(1.0 + r * r); }

void NGonParams::validate() const {
  if (n < 2) throw InvalidArgument("n-gon needs n >= 2");
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("n-gon radius must be positive");
  if (omega == 0.0 || !std::isfinite(omega)) throw InvalidArgument("omega must be non-zero");
}

std::vector<HyperboloidPoint> ngon_initial(int n, double r) {
  NGonParams{n, r, 1.0}.validate();
  std::vector<HyperboloidPoint> pts;
  for (const auto& v : initial_vectors(n, r)) pts.emplace_back(v);
  return pts;
}

OrbitSample ngon_orbit(const NGonParams& p, double t) {
  p.validate();
  const LorentzTransform b = boost_matrix(p.omega * t);
  const double w = p.omega, w2 = p.omega * p.omega;
  OrbitSample s;
  for (const auto& q0 : initial_vectors(p.n, p.r)) {
    const MinkowskiVec q = b.apply(q0);
    s.positions.push_back(q);
    s.velocities.push_back({0.0, w * q.z, w * q.y});
    s.accelerations.push_back({0.0, w2 * q.y, w2 * q.z});
  }
  return s;
}

OrbitSample elliptic_ngon_orbit(const NGonParams& p, double t) {
  p.validate();
  const LorentzTransform a = elliptic_matrix(p.omega * t);
  const double w = p.omega, w2 = p.omega * p.omega;
  OrbitSample s;
  for (const auto& q0 : initial_vectors(p.n, p.r)) {
    const MinkowskiVec q = a.apply(q0);
    s.positions.push_back(q);
    s.velocities.push_back({-w * q.y, w * q.x, 0.0});
    s.accelerations.push_back({-w2 * q.x, -w2 * q.y, 0.0});
  }
  return s;
}

ZSum zsum_residual(int n, double r, double omega, double t, std::span<const double> masses) {
  const NGonParams p{n, r, omega};
  p.validate();
  if (omega * t < 0.0) throw InvalidArgument("zsum_residual requires omega t >= 0");
  if (!masses.empty() && masses.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("need one mass per body");

  const auto s = ngon_orbit(p, t);
  const MinkowskiVec& q1 = s.positions[0];
  ZSum out;
  for (std::size_t j = 1; j < s.positions.size(); ++j) {
    const MinkowskiVec& qj = s.positions[j];
    const double dot = minkowski_dot(q1, qj);
    const double sinh_sq = sinh_sq_distance(q1, qj);
    const double term = qj.z + dot * q1.z;
    out.terms.push_back(term);
    out.bounds.push_back(qj.z - q1.z);
    out.sum += mass_of(masses, j) / (sinh_sq * std::sqrt(sinh_sq)) * term;
  }
  return out;
}

double elliptic_ngon_omega(int n, double mass, double r) {
  if (n < 3) throw InvalidArgument("elliptic n-gon needs n >= 3");
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  const auto q = initial_vectors(n, r);
  NGonParams{n, r, 1.0}.validate();
  // Rotation keeps z fixed, so the z-balance for body 1 reads
  // 0 = F_z + (q1'.q1') z = F_z + omega^2 r^2 z.
  double fz = 0.0;
  for (std::size_t j = 1; j < q.size(); ++j) {
    const double dot = minkowski_dot(q[0], q[j]);
    const double sinh_sq = sinh_sq_distance(q[0], q[j]);
    fz += mass / (sinh_sq * std::sqrt(sinh_sq)) * (q[j].z + dot * q[0].z);
  }
  const double omega_sq = -fz / (r * r * q[0].z);
  if (!(omega_sq > 0.0)) throw NoSolution("rotating n-gon balance gives omega^2 <= 0");
  return omega_sq;
}

ScanGrid default_scan_grid() {
  ScanGrid g;
  g.n_min = 3;
  g.n_max = 8;
  g.r = logspace(0.1, 5.0, 20);
  g.omega = {0.1, 1.0, 2.0};
  g.omega_t = linspace(0.0, 5.0, 20);
  g.mass = 1.0;
  return g;
}

ScanReport ngon_nonexistence_scan(const ScanGrid& grid) {
  if (grid.n_min < 2 || grid.n_max < grid.n_min) throw InvalidArgument("invalid n range");
  if (grid.r.empty() || grid.omega.empty() || grid.omega_t.empty()) throw InvalidArgument("scan grids must be non-empty");
  if (!(grid.mass > 0.0)) throw InvalidArgument("mass must be positive");
  for (double w : grid.omega)
    if (w == 0.0 || !std::isfinite(w)) throw InvalidArgument("omega grid values must be non-zero");
  for (double wt : grid.omega_t)
    if (!(wt >= 0.0) || !std::isfinite(wt)) throw InvalidArgument("omega t grid values must be >= 0");

  ScanReport report;
  report.grid = grid;
  report.max_sum = -std::numeric_limits<double>::infinity();
  report.min_margin = std::numeric_limits<double>::infinity();
  report.max_term_gap = -std::numeric_limits<double>::infinity();
  for (int n = grid.n_min; n <= grid.n_max; ++n) {
    const std::vector<double> masses(static_cast<std::size_t>(n), grid.mass);
    for (double r : grid.r) {
      for (double w : grid.omega) {
        for (double wt : grid.omega_t) {
          const double t = wt / w;
          const ZSum z = zsum_residual(n, r, w, t, masses);
          double gap = -std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < z.terms.size(); ++j) gap = std::max(gap, z.terms[j] - z.bounds[j]);
          report.cells.push_back({n, r, w, t, z.sum, gap});
          report.max_sum = std::max(report.max_sum, z.sum);
          report.min_margin = std::min(report.min_margin, std::abs(z.sum));
          report.max_term_gap = std::max(report.max_term_gap, gap);
        }
      }
    }
  }
  return report;
}

}  // namespace hyperre
