#pragma once

// Regular n-gons on the hyperboloid and the boost (hyperbolic) orbit they
// would follow as a relative equilibrium.
//
// The polygon is centered at the apex with body 1 on the geodesic x = 0:
//   q_i(0) = (-r sin(2 pi (i-1)/n), r cos(2 pi (i-1)/n), z),  z = sqrt(1 + r^2).
// A hyperbolic relative equilibrium would be q_i(t) = B(omega t) q_i(0). The
// z-component of the equations of motion for body 1 then reduces to
//   S = sum_{j>=2} m_j (z_j + (q_1.q_j) z_1) / ((q_1.q_j)^2 - 1)^{3/2} = 0,
// and every bracket satisfies z_j + (q_1.q_j) z_1 < z_j - z_1 <= 0 whenever
// omega t >= 0, so S < 0 and no such equilibrium exists for equal masses.

#include <span>
#include <vector>

#include "hyperre/releq.hpp"

namespace hyperre {

struct NGonParams {
  int n = 3;
  double r = 1.0;
  double omega = 1.0;

  double z() const;
  /// n >= 2, r > 0, omega != 0.
  void validate() const;
};

std::vector<HyperboloidPoint> ngon_initial(int n, double r);

/// Boost orbit B(omega t) q_i(0) with exact derivatives.
OrbitSample ngon_orbit(const NGonParams& p, double t);

/// Rotation orbit A(omega t) q_i(0) with exact derivatives.
OrbitSample elliptic_ngon_orbit(const NGonParams& p, double t);

struct ZSum {
  double sum = 0.0;
  /// Bracket terms z_j + (q_1.q_j) z_1 for j = 2..n.
  std::vector<double> terms;
  /// Their proven upper bounds z_j - z_1.
  std::vector<double> bounds;
};

/// `masses` has one entry per body (body 1's is unused) or is empty for unit
/// masses. Requires omega t >= 0.
ZSum zsum_residual(int n, double r, double omega, double t, std::span<const double> masses = {});

/// Angular velocity squared of the rotating n-gon relative equilibrium with
/// equal masses; throws NoSolution if the balance gives omega^2 <= 0.
double elliptic_ngon_omega(int n, double mass, double r);

struct ScanGrid {
  int n_min = 3;
  int n_max = 8;
  std::vector<double> r;
  std::vector<double> omega;
  /// Values of the product omega t; t = omega_t / omega per cell.
  std::vector<double> omega_t;
  double mass = 1.0;
};

/// n in 3..8, 20 log-spaced radii in [0.1, 5], omega in {0.1, 1, 2},
/// 20 values of omega t in [0, 5].
ScanGrid default_scan_grid();

struct ScanCell {
  int n = 0;
  double r = 0.0;
  double omega = 0.0;
  double t = 0.0;
  double sum = 0.0;
  /// max_j (term_j - bound_j); negative when every bracket obeys its bound.
  double worst_term_gap = 0.0;
};

struct ScanReport {
  ScanGrid grid;
  std::vector<ScanCell> cells;
  double max_sum = 0.0;
  double min_margin = 0.0;  // min |S|
  double max_term_gap = 0.0;

  bool certified() const { return !cells.empty() && max_sum < 0.0 && max_term_gap < 0.0; }
};

/// Evaluates zsum_residual over the grid in row-major (n, r, omega, omega t)
/// order. Throws InvalidArgument on an empty or invalid grid.
ScanReport ngon_nonexistence_scan(const ScanGrid& grid);

}  // namespace hyperre
