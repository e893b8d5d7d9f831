#include "hyperre/collinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperre/error.hpp"

namespace hyperre {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double sq(double x) { return x * x; }
double cube(double x) { return x * x * x; }

double omega1_sq_printed(double alpha, double beta, double m, double big_m, double mu) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  return -(sq(sq(ca)) / sa) *
         (-2.0 * mu * sa * sq(ca) / cube(1.0 + sq(sa)) - big_m * sa +
          m * sq(cab) * (sab - sa) / cube(1.0 - sa * sab) - m * sq(cab) * (sab + sa) / cube(sa * sab + 1.0));
}

double omega2_sq_printed(double alpha, double beta, double m, double big_m, double mu) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  // The printed "(cos(a))^2" in the first term is read as cos^2(alpha).
  return -(sq(sq(cab)) / sab) *
         (-mu * sq(ca) * (sab - sa) / cube(1.0 - sa * sab) - mu * sq(ca) * (sab + sa) / cube(sa * sab + 1.0) -
          big_m * sab - 2.0 * m * sq(cab) * sab / cube(sq(sab) + 1.0));
}

double omega1_sq_dynamics(double alpha, double beta, double m, double big_m, double mu) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  // Body 1 at x = sin(alpha); partners at -sin(alpha), 0, +-sin(alpha + beta).
  return (sq(sq(ca)) / sa) * (mu * sq(ca) / (4.0 * sq(sa)) + big_m / sq(sa) - m * sq(cab) / sq(sab - sa) +
                              m * sq(cab) / sq(sab + sa));
}

double omega2_sq_dynamics(double alpha, double beta, double m, double big_m, double mu) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  // Body 4 at x = sin(alpha + beta); every partner lies on the apex side.
  return (sq(sq(cab)) / sab) * (mu * sq(ca) / sq(sab - sa) + mu * sq(ca) / sq(sab + sa) + big_m / sq(sab) +
                                m * sq(cab) / (4.0 * sq(sab)));
}

double resta(double alpha, double beta, double m, double big_m, double mu, CoefficientModel model) {
  return omega1_sq(alpha, beta, m, big_m, mu, model) - omega2_sq(alpha, beta, m, big_m, mu, model);
}

// Neville extrapolation of samples (h_k, y_k) to h = 0.
double extrapolate_to_zero(std::vector<double> h, std::vector<double> y) {
  const std::size_t n = y.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      y[i] = (h[i - level] * y[i] - h[i] * y[i - 1]) / (h[i - level] - h[i]);
  return y.back();
}

}  // namespace

void check_collinear_angles(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(alpha + beta < kHalfPi) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << "angles must satisfy 0 < alpha < alpha + beta < pi/2 (alpha = " << alpha << ", beta = " << beta << ")";
    throw InvalidArgument(os.str());
  }
}

std::vector<HalfPlanePoint> collinear_initial(double alpha, double beta) {
  check_collinear_angles(alpha, beta);
  const double inner = kHalfPi - alpha, outer = kHalfPi - alpha - beta;
  return {
      {std::cos(inner), std::sin(inner)},
      {-std::cos(inner), std::sin(inner)},
      {0.0, 1.0},
      {std::cos(outer), std::sin(outer)},
      {-std::cos(outer), std::sin(outer)},
  };
}

std::array<double, 5> collinear_masses(double m, double big_m, double mu) { return {mu, mu, big_m, m, m}; }

double omega1_sq(double alpha, double beta, double m, double big_m, double mu, CoefficientModel model) {
  check_collinear_angles(alpha, beta);
  return model == CoefficientModel::Printed ? omega1_sq_printed(alpha, beta, m, big_m, mu)
                                            : omega1_sq_dynamics(alpha, beta, m, big_m, mu);
}

double omega2_sq(double alpha, double beta, double m, double big_m, double mu, CoefficientModel model) {
  check_collinear_angles(alpha, beta);
  return model == CoefficientModel::Printed ? omega2_sq_printed(alpha, beta, m, big_m, mu)
                                            : omega2_sq_dynamics(alpha, beta, m, big_m, mu);
}

FCoeffs f_coeffs(double alpha, double beta, CoefficientModel model) {
  return {resta(alpha, beta, 0.0, 1.0, 0.0, model), resta(alpha, beta, 1.0, 0.0, 0.0, model),
          resta(alpha, beta, 0.0, 0.0, 1.0, model)};
}

FCoeffs f_coeffs_printed_expansion(double alpha, double beta) {
  check_collinear_angles(alpha, beta);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  const double samb = std::sin(alpha - beta);
  const double a = sq(cab) * sq(ca) * (sab - sa) / cube(1.0 - sa * samb);
  const double b = sq(cab) * sq(ca) * (sab + sa) / cube(1.0 + sa * samb);
  FCoeffs f;
  f.f1 = sq(sq(ca)) - sq(sq(cab));
  f.f2 = -a * sq(ca) / sa + b * sq(ca) / sa - 2.0 * cube(sq(cab)) / cube(1.0 + sq(sab));
  f.f3 = -a * sq(cab) / sab - b * sq(cab) / sab + 2.0 * cube(sq(ca)) / cube(1.0 + sq(sa));
  return f;
}

double pbar(double x) { return -(4.0 * x * x * x - 4.0 * x * x - 3.0 * x + 1.0); }

double pbar_derivative(double x) { return -(12.0 * x * x - 8.0 * x - 3.0); }

std::array<double, 2> pbar_critical_points() {
  const double d = std::sqrt(13.0) / 6.0;
  return {1.0 / 3.0 - d, 1.0 / 3.0 + d};
}

double pbar_root() {
  // Pbar(0) = -1 < 0 < 2 = Pbar(1) and Pbar is increasing up to its maximum.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (pbar(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(pbar(lo)) < std::abs(pbar(hi)) ? lo : hi;
}

double alpha1() { return std::acos(std::sqrt(pbar_root())); }

double boundary_p(double alpha) {
  const double c2 = sq(std::cos(alpha));
  return -(4.0 * cube(c2) - 4.0 * sq(c2) - 3.0 * c2 + 1.0);
}

double boundary_q(double alpha) {
  const double c2 = sq(std::cos(alpha));
  return cube(4.0 * sq(c2) - 8.0 * c2 + 5.0);
}

BoundaryF2 boundary_f2(double alpha, CoefficientModel model) {
  if (!(alpha > 0.0) || !(alpha < kHalfPi)) throw InvalidArgument("alpha must lie in (0, pi/2)");
  const double room = kHalfPi - alpha;
  const double eps0 = std::min(0.02, 0.25 * room);
  std::vector<double> h, y;
  for (int k = 0; k < 6; ++k) {
    const double eps = eps0 * std::ldexp(1.0, -k);
    h.push_back(eps);
    y.push_back(f_coeffs(alpha, room - eps, model).f2);
  }
  return {extrapolate_to_zero(h, y), boundary_p(alpha) / boundary_q(alpha)};
}

double CollinearSolution::omega() const { return std::sqrt(omega_sq); }

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Ok:
      return "ok";
    case SolveStatus::F2NonNegative:
      return "f2>=0";
    case SolveStatus::MassNonPositive:
      return "m<=0";
    case SolveStatus::NonpositiveOmegaSq:
      return "omega_sq<=0";
  }
  return "unknown";
}

SolveOutcome try_solve_masses(double alpha, double beta, CoefficientModel model, double big_m, double mu) {
  if (!(big_m > 0.0) || !(mu > 0.0)) throw InvalidArgument("M and mu must be positive");
  SolveOutcome out;
  CollinearSolution& s = out.solution;
  s.alpha = alpha;
  s.beta = beta;
  s.big_m = big_m;
  s.mu = mu;
  s.model = model;
  const FCoeffs f = f_coeffs(alpha, beta, model);
  s.f1 = f.f1;
  s.f2 = f.f2;
  s.f3 = f.f3;
  if (!(f.f2 < 0.0)) {
    out.status = SolveStatus::F2NonNegative;
    return out;
  }
  const double rest = f.f1 * big_m + f.f3 * mu;
  if (!(rest > 0.0)) {
    out.status = SolveStatus::MassNonPositive;
    return out;
  }
  s.m = rest / -f.f2;
  s.omega_sq = omega1_sq(alpha, beta, s.m, big_m, mu, model);
  out.status = s.omega_sq > 0.0 ? SolveStatus::Ok : SolveStatus::NonpositiveOmegaSq;
  return out;
}

CollinearSolution solve_masses(double alpha, double beta, CoefficientModel model, double big_m, double mu) {
  const SolveOutcome out = try_solve_masses(alpha, beta, model, big_m, mu);
  switch (out.status) {
    case SolveStatus::Ok:
      return out.solution;
    case SolveStatus::NonpositiveOmegaSq:
      throw NonpositiveOmegaSq("masses balance but omega^2 <= 0");
    default:
      throw NoSolution(std::string("no positive mass solution: ") + to_string(out.status));
  }
}

StateH2 collinear_state(const CollinearSolution& sol, double t) {
  const auto w0 = collinear_initial(sol.alpha, sol.beta);
  const auto masses = collinear_masses(sol.m, sol.big_m, sol.mu);
  const double omega = sol.omega();
  const double scale = std::exp(omega * t);
  std::vector<Body> bodies;
  std::vector<HalfPlanePoint> pos;
  std::vector<Complex> vel;
  for (std::size_t j = 0; j < w0.size(); ++j) {
    const Complex w = scale * w0[j].w();
    bodies.push_back({masses[j]});
    pos.emplace_back(w);
    vel.push_back(omega * w);
  }
  return {std::move(bodies), std::move(pos), std::move(vel)};
}

std::vector<Complex> collinear_defects(const CollinearSolution& sol, double t) {
  if (!(sol.omega_sq > 0.0)) throw NonpositiveOmegaSq("collinear orbit needs omega^2 > 0");
  const StateH2 s = collinear_state(sol, t);
  const auto acc = accel_h2(s);
  std::vector<Complex> d;
  for (std::size_t j = 0; j < s.size(); ++j) d.push_back(sol.omega_sq * s.positions()[j].w() - acc[j]);
  return d;
}

ResidualReport collinear_residuals(const CollinearSolution& sol, std::span<const double> times) {
  ResidualReport r;
  r.per_body_residual.assign(5, 0.0);
  for (double t : times) {
    const auto d = collinear_defects(sol, t);
    for (std::size_t j = 0; j < d.size(); ++j)
      r.per_body_residual[j] = std::max(r.per_body_residual[j], std::abs(d[j]));
  }
  return r;
}

namespace {

struct DriftResult {
  double distance = 0.0;
  double energy = 0.0;
};

DriftResult integrate_drift(const CollinearSolution& sol, double t_end, double h) {
  if (!(sol.omega_sq > 0.0)) throw NonpositiveOmegaSq("collinear orbit needs omega^2 > 0");
  const Trajectory traj = integrate(collinear_state(sol, 0.0), t_end, h);
  if (!traj.completed) {
    if (traj.abort_code == ErrorCode::Breakdown) throw BreakdownError(traj.abort_reason);
    throw CollisionError(traj.abort_reason, 0, 0);
  }
  const auto& p0 = traj.states.front().positions();
  DriftResult out;
  for (const auto& st : traj.states) {
    const auto& p = st.positions();
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        out.distance = std::max(out.distance, std::abs(dist_hyperboloid(p[i], p[j]) - dist_hyperboloid(p0[i], p0[j])));
  }
  out.energy = traj.diagnostics.energy_drift;
  return out;
}

}  // namespace

double collinear_distance_drift(const CollinearSolution& sol, double t_end, double h) {
  return integrate_drift(sol, t_end, h).distance;
}

CollinearVerification verify_collinear_re(const CollinearSolution& sol, std::span<const double> times, double t_end,
                                          double h) {
  CollinearVerification v;
  v.residuals = collinear_residuals(sol, times);
  const DriftResult d = integrate_drift(sol, t_end, h);
  v.distance_drift = d.distance;
  v.energy_drift = d.energy;
  return v;
}

std::size_t RegionMap::count_f2_negative() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.f.f2 < 0.0; }));
}

std::size_t RegionMap::count_f2_positive() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.f.f2 > 0.0; }));
}

std::size_t RegionMap::count_solved() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.status == SolveStatus::Ok; }));
}

RegionMap f2_region(std::size_t alpha_steps, std::size_t beta_steps, CoefficientModel model) {
  if (alpha_steps < 2 || beta_steps < 2) throw InvalidArgument("region map needs at least 2 steps per axis");
  RegionMap map;
  map.alpha_steps = alpha_steps;
  map.beta_steps = beta_steps;
  map.model = model;
  map.cells.reserve(alpha_steps * beta_steps);
  for (std::size_t i = 0; i < alpha_steps; ++i) {
    const double alpha = (static_cast<double>(i) + 0.5) * kHalfPi / static_cast<double>(alpha_steps);
    for (std::size_t k = 0; k < beta_steps; ++k) {
      const double beta = (static_cast<double>(k) + 0.5) * (kHalfPi - alpha) / static_cast<double>(beta_steps);
      const SolveOutcome out = try_solve_masses(alpha, beta, model);
      RegionCell c;
      c.alpha = alpha;
      c.beta = beta;
      c.f = {out.solution.f1, out.solution.f2, out.solution.f3};
      c.status = out.status;
      c.m = out.solution.m;
      c.omega_sq = out.solution.omega_sq;
      map.cells.push_back(c);
    }
  }
  return map;
}

}  // namespace hyperre
