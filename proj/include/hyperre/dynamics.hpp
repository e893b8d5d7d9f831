#pragma once

// Curved n-body problem on the hyperbolic plane. The Weierstrass model is the
// canonical formulation:
//
//   q_i'' = sum_{j != i} m_j (q_j + (q_i.q_j) q_i) / ((q_i.q_j)^2 - 1)^{3/2} + (q_i'.q_i') q_i
//
// which is the Euler-Lagrange flow of T + U with T = 1/2 sum m_i q_i'.q_i' and
// force function U = sum_{i<j} m_i m_j coth d_ij. The half-plane right-hand
// side is obtained by conjugating through the model conversion.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyperre/error.hpp"
#include "hyperre/geometry.hpp"

namespace hyperre {

/// Pairwise hyperbolic distances below this are collisions.
inline constexpr double kCollisionDistance = 1e-8;

struct Body {
  double mass = 1.0;
};

class StateL2 {
 public:
  StateL2() = default;
  /// Throws InvalidArgument on mismatched sizes, non-positive masses or
  /// non-tangent velocities, and CollisionError if two bodies coincide.
  StateL2(std::vector<Body> bodies, std::vector<HyperboloidPoint> positions, std::vector<MinkowskiVec> velocities);

  std::size_t size() const { return bodies_.size(); }
  const std::vector<Body>& bodies() const { return bodies_; }
  const std::vector<HyperboloidPoint>& positions() const { return positions_; }
  const std::vector<MinkowskiVec>& velocities() const { return velocities_; }
  TangentVec velocity(std::size_t i) const { return {positions_[i], velocities_[i]}; }
  std::vector<double> masses() const;

  /// Applies the isometry to every position and velocity.
  StateL2 transformed(const LorentzTransform& g) const;

 private:
  std::vector<Body> bodies_;
  std::vector<HyperboloidPoint> positions_;
  std::vector<MinkowskiVec> velocities_;
};

class StateH2 {
 public:
  StateH2() = default;
  StateH2(std::vector<Body> bodies, std::vector<HalfPlanePoint> positions, std::vector<Complex> velocities);

  std::size_t size() const { return bodies_.size(); }
  const std::vector<Body>& bodies() const { return bodies_; }
  const std::vector<HalfPlanePoint>& positions() const { return positions_; }
  const std::vector<Complex>& velocities() const { return velocities_; }
  std::vector<double> masses() const;

 private:
  std::vector<Body> bodies_;
  std::vector<HalfPlanePoint> positions_;
  std::vector<Complex> velocities_;
};

StateL2 to_l2(const StateH2& s);
StateH2 to_h2(const StateL2& s);

/// Right-hand side of the Weierstrass equations on raw coordinates (used by
/// the integrator stages, which may sit slightly off the manifold).
std::vector<MinkowskiVec> accel_l2(std::span<const double> masses, std::span<const MinkowskiVec> q,
                                   std::span<const MinkowskiVec> v);
std::vector<MinkowskiVec> accel_l2(const StateL2& s);

/// Canonical half-plane accelerations by conjugation with the Weierstrass model.
std::vector<Complex> accel_h2(const StateH2& s);

/// Literal transcription of the printed half-plane equations of motion, kept
/// only for comparison with accel_h2.
std::vector<Complex> accel_h2_printed(const StateH2& s);

/// T_{k,j} = 2 |w_k - w_j| |w_k - conj(w_j)|, written out in coordinates.
double tkj(const HalfPlanePoint& wk, const HalfPlanePoint& wj);

/// U = sum_{i<j} m_i m_j coth d_ij.
double potential(const StateL2& s);
/// Same force function evaluated in half-plane coordinates through T_{k,j}:
/// coth d = 2 (|w_k - w_j|^2 + 2 Im w_k Im w_j) / T_{k,j}.
double potential(const StateH2& s);
/// Literal transcription of the printed half-plane potential (comparison only).
double potential_h2_printed(const StateH2& s);

double kinetic(const StateL2& s);
double kinetic(const StateH2& s);
double total_energy(const StateL2& s);
double total_energy(const StateH2& s);

/// Lorentz first integrals L_xy, L_xz, L_yz.
struct FirstIntegrals {
  double lxy = 0.0;
  double lxz = 0.0;
  double lyz = 0.0;
};
FirstIntegrals first_integrals(const StateL2& s);

struct StepResult {
  StateL2 state;
  /// Largest displacement applied by the manifold repair.
  double repair = 0.0;
};

/// Classical RK4 on (q, q') followed by projection back onto the hyperboloid
/// and its tangent bundle. Throws CollisionError.
StepResult step_rk4(const StateL2& s, double h);

struct TrajectoryDiagnostics {
  double energy_drift = 0.0;      // max |E(t) - E(0)|
  double constraint_drift = 0.0;  // max |q.q + 1| after each step
  double lxy_drift = 0.0;
  double lxz_drift = 0.0;
  double lyz_drift = 0.0;
  double repair_max = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateL2> states;
  std::vector<double> energy;
  std::vector<double> constraint;  // max_i |q_i.q_i + 1| at each recorded time
  TrajectoryDiagnostics diagnostics;
  bool completed = true;
  /// Collision or Breakdown when !completed.
  ErrorCode abort_code = ErrorCode::Collision;
  std::string abort_reason;
};

struct IntegrateOptions {
  /// Record every k-th step (diagnostics always use every step).
  std::size_t record_every = 1;
};

/// Fixed-step integration over [0, t_end]. The step is shrunk so that an
/// integer number of steps lands on t_end. A collision stops the run and
/// returns the partial trajectory with completed = false, as does a step that
/// leaves the range where double precision can represent the state.
Trajectory integrate(const StateL2& s, double t_end, double h, const IntegrateOptions& options = {});
Trajectory integrate(const StateH2& s, double t_end, double h, const IntegrateOptions& options = {});

}  // namespace hyperre
