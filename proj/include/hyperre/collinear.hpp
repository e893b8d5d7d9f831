#pragma once

// Collinear hyperbolic relative equilibria of five bodies.
//
// The bodies sit on the unit half circle of the half plane at angles
// pi/2 - alpha, pi/2 + alpha (mass mu), pi/2 (mass M) and
// pi/2 - alpha - beta, pi/2 + alpha + beta (mass m), and move by the homothety
// w_j(t) = e^{omega t} w_j(0). Mirror symmetry reduces the equations of motion
// to one scalar balance for body 1 (omega_1^2) and one for body 4 (omega_2^2);
// an equilibrium needs omega_1^2 = omega_2^2 > 0. Both are linear in the
// masses, so omega_1^2 - omega_2^2 = f1 M + f2 m + f3 mu.
//
// Two coefficient models are provided:
//  - Dynamics: the balances derived from the equations of motion. With
//    x = sin(phi) for a body at offset phi from the apex, a pair at x_j, x_k
//    is at distance d with sinh d = (x_j - x_k)/(cos phi_j cos phi_k), and
//      omega_k^2 = -(cos^4 phi_k / sin phi_k) sum_j m_j cos^2 phi_j sgn(x_j - x_k) / (x_j - x_k)^2.
//  - Printed: the reference closed forms, kept for reproducing their sign
//    region. They do not satisfy the equations of motion.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hyperre/dynamics.hpp"
#include "hyperre/releq.hpp"

namespace hyperre {

enum class CoefficientModel { Dynamics, Printed };

/// Throws InvalidArgument unless 0 < alpha < alpha + beta < pi/2.
void check_collinear_angles(double alpha, double beta);

/// Bodies 1..5 on the unit half circle.
std::vector<HalfPlanePoint> collinear_initial(double alpha, double beta);

/// Body masses in order: {mu, mu, M, m, m}.
std::array<double, 5> collinear_masses(double m, double big_m, double mu);

double omega1_sq(double alpha, double beta, double m, double big_m, double mu,
                 CoefficientModel model = CoefficientModel::Dynamics);
double omega2_sq(double alpha, double beta, double m, double big_m, double mu,
                 CoefficientModel model = CoefficientModel::Dynamics);

struct FCoeffs {
  double f1 = 0.0;  // coefficient of M
  double f2 = 0.0;  // coefficient of m
  double f3 = 0.0;  // coefficient of mu
};

/// Mass-basis evaluation of omega_1^2 - omega_2^2.
FCoeffs f_coeffs(double alpha, double beta, CoefficientModel model = CoefficientModel::Dynamics);

/// The reference grouped expansion of omega_1^2 - omega_2^2, transcribed as
/// printed (its denominators carry sin(alpha - beta)). Comparison only.
FCoeffs f_coeffs_printed_expansion(double alpha, double beta);

/// Pbar(x) = -(4x^3 - 4x^2 - 3x + 1) and its derivative.
double pbar(double x);
double pbar_derivative(double x);
/// Critical points 1/3 -+ sqrt(13)/6.
std::array<double, 2> pbar_critical_points();
/// Unique root of Pbar in (0, 1), by bisection to 1e-14 or better.
double pbar_root();
/// arccos(sqrt(x0)): the zero of P(alpha) = Pbar(cos^2 alpha) in (0, pi/2).
double alpha1();

/// The reference closed form on the boundary line beta = pi/2 - alpha:
/// P/Q with P = -(4c^6 - 4c^4 - 3c^2 + 1), Q = (4c^4 - 8c^2 + 5)^3, c = cos alpha.
double boundary_p(double alpha);
double boundary_q(double alpha);

struct BoundaryF2 {
  /// f2(alpha, pi/2 - alpha - eps) extrapolated to eps -> 0.
  double limit = 0.0;
  /// P/Q.
  double closed_form = 0.0;
};
BoundaryF2 boundary_f2(double alpha, CoefficientModel model = CoefficientModel::Dynamics);

struct CollinearSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double m = 0.0;
  double big_m = 1.0;
  double mu = 1.0;
  double omega_sq = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  CoefficientModel model = CoefficientModel::Dynamics;

  /// +sqrt(omega_sq); the sign is a time-reversal gauge.
  double omega() const;
};

enum class SolveStatus {
  Ok,
  F2NonNegative,       // f2 >= 0: no positive m balances the equation
  MassNonPositive,     // f1 M + f3 mu <= 0 for the chosen M, mu
  NonpositiveOmegaSq,  // masses found but omega^2 <= 0
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Ok;
  /// Filled as far as the computation got (f's always; m and omega_sq when a
  /// mass was found).
  CollinearSolution solution;
};

const char* to_string(SolveStatus s);

/// Solves f1 M + f2 m + f3 mu = 0 for m with M and mu fixed (default 1).
SolveOutcome try_solve_masses(double alpha, double beta, CoefficientModel model = CoefficientModel::Dynamics,
                              double big_m = 1.0, double mu = 1.0);

/// Throwing form: NoSolution for F2NonNegative/MassNonPositive,
/// NonpositiveOmegaSq for a non-positive omega^2.
CollinearSolution solve_masses(double alpha, double beta, CoefficientModel model = CoefficientModel::Dynamics,
                               double big_m = 1.0, double mu = 1.0);

/// The solution's orbit at time t: w_j(t) = e^{omega t} w_j(0), w' = omega w.
StateH2 collinear_state(const CollinearSolution& sol, double t = 0.0);

/// Half-plane defects omega^2 w_j - accel_h2(state)_j at time t.
std::vector<Complex> collinear_defects(const CollinearSolution& sol, double t);

/// Requires sol.omega_sq > 0 (throws NonpositiveOmegaSq).
ResidualReport collinear_residuals(const CollinearSolution& sol, std::span<const double> times);

/// Integrates from the equilibrium state and returns the largest deviation of
/// the ten pairwise distances from their initial values.
double collinear_distance_drift(const CollinearSolution& sol, double t_end, double h);

struct CollinearVerification {
  ResidualReport residuals;
  double distance_drift = 0.0;
  double energy_drift = 0.0;
};

CollinearVerification verify_collinear_re(const CollinearSolution& sol, std::span<const double> times,
                                          double t_end = 1.0, double h = 1e-4);

struct RegionCell {
  double alpha = 0.0;
  double beta = 0.0;
  FCoeffs f;
  SolveStatus status = SolveStatus::F2NonNegative;
  double m = 0.0;
  double omega_sq = 0.0;
};

struct RegionMap {
  std::size_t alpha_steps = 0;
  std::size_t beta_steps = 0;
  CoefficientModel model = CoefficientModel::Dynamics;
  /// Row-major: cell (i, k) at index i * beta_steps + k.
  std::vector<RegionCell> cells;

  std::size_t count_f2_negative() const;
  std::size_t count_f2_positive() const;
  std::size_t count_solved() const;
  bool both_signs() const { return count_f2_negative() > 0 && count_f2_positive() > 0; }
};

/// Cell centers of the triangle 0 < alpha < pi/2, 0 < beta < pi/2 - alpha:
/// alpha_i = (i + 1/2) (pi/2) / A, beta_k = (k + 1/2) (pi/2 - alpha_i) / B.
RegionMap f2_region(std::size_t alpha_steps, std::size_t beta_steps,
                    CoefficientModel model = CoefficientModel::Dynamics);

}  // namespace hyperre
