#include "hyperre/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperre/error.hpp"

namespace hyperre {

namespace {
constexpr double kBreakdownDefect = 1e-3;
constexpr double kEncounterSteps = 4.0;
}  // namespace
namespace {

const double kCollisionSinhSq = std::sinh(kCollisionDistance) * std::sinh(kCollisionDistance);

void check_masses(const std::vector<Body>& bodies) {
  for (const auto& b : bodies)
    if (!(b.mass > 0.0) || !std::isfinite(b.mass)) throw InvalidArgument("masses must be positive and finite");
}

[[noreturn]] void collision(std::size_t i, std::size_t j) {
  throw CollisionError("bodies " + std::to_string(i) + " and " + std::to_string(j) + " collide", i, j);
}

void check_collisions(std::span<const MinkowskiVec> q) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (sinh_sq_distance(q[i], q[j]) < kCollisionSinhSq) collision(i, j);
}

std::vector<MinkowskiVec> raw(const std::vector<HyperboloidPoint>& p) {
  std::vector<MinkowskiVec> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(x.vec());
  return out;
}

// coth d from cosh d, accurate for nearby points.
double coth_distance(const MinkowskiVec& p, const MinkowskiVec& q) {
  return -minkowski_dot(p, q) / std::sqrt(sinh_sq_distance(p, q));
}

}  // namespace

StateL2::StateL2(std::vector<Body> bodies, std::vector<HyperboloidPoint> positions, std::vector<MinkowskiVec> velocities)
    : bodies_(std::move(bodies)), positions_(std::move(positions)), velocities_(std::move(velocities)) {
  if (positions_.size() != bodies_.size() || velocities_.size() != bodies_.size())
    throw InvalidArgument("bodies, positions and velocities must have equal lengths");
  check_masses(bodies_);
  for (std::size_t i = 0; i < size(); ++i) TangentVec(positions_[i], velocities_[i]);
  check_collisions(raw(positions_));
}

std::vector<double> StateL2::masses() const {
  std::vector<double> m;
  m.reserve(bodies_.size());
  for (const auto& b : bodies_) m.push_back(b.mass);
  return m;
}

StateL2 StateL2::transformed(const LorentzTransform& g) const {
  std::vector<HyperboloidPoint> p;
  std::vector<MinkowskiVec> v;
  for (std::size_t i = 0; i < size(); ++i) {
    p.push_back(g.apply(positions_[i]));
    v.push_back(g.apply(velocities_[i]));
  }
  return {bodies_, std::move(p), std::move(v)};
}

StateH2::StateH2(std::vector<Body> bodies, std::vector<HalfPlanePoint> positions, std::vector<Complex> velocities)
    : bodies_(std::move(bodies)), positions_(std::move(positions)), velocities_(std::move(velocities)) {
  if (positions_.size() != bodies_.size() || velocities_.size() != bodies_.size())
    throw InvalidArgument("bodies, positions and velocities must have equal lengths");
  check_masses(bodies_);
  for (const auto& v : velocities_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidArgument("non-finite velocity");
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (dist_halfplane(positions_[i], positions_[j]) < kCollisionDistance) collision(i, j);
}

std::vector<double> StateH2::masses() const {
  std::vector<double> m;
  m.reserve(bodies_.size());
  for (const auto& b : bodies_) m.push_back(b.mass);
  return m;
}

StateL2 to_l2(const StateH2& s) {
  std::vector<HyperboloidPoint> p;
  std::vector<MinkowskiVec> v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto jet = to_hyperboloid_jet({s.positions()[i].w(), s.velocities()[i], {}});
    p.push_back(halfplane_to_hyperboloid(s.positions()[i]));
    v.push_back(jet.qd);
  }
  return {s.bodies(), std::move(p), std::move(v)};
}

StateH2 to_h2(const StateL2& s) {
  std::vector<HalfPlanePoint> p;
  std::vector<Complex> v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    p.push_back(hyperboloid_to_halfplane(s.positions()[i]));
    v.push_back(pushforward_velocity(s.positions()[i], s.velocities()[i]));
  }
  return {s.bodies(), std::move(p), std::move(v)};
}

std::vector<MinkowskiVec> accel_l2(std::span<const double> masses, std::span<const MinkowskiVec> q,
                                   std::span<const MinkowskiVec> v) {
  const std::size_t n = q.size();
  std::vector<MinkowskiVec> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = minkowski_dot(v[i], v[i]) * q[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dot = minkowski_dot(q[i], q[j]);
      const double sinh_sq = sinh_sq_distance(q[i], q[j]);  // = dot^2 - 1
      if (sinh_sq < kCollisionSinhSq) collision(std::min(i, j), std::max(i, j));
      a[i] += (masses[j] / (sinh_sq * std::sqrt(sinh_sq))) * (q[j] + dot * q[i]);
    }
  }
  return a;
}

std::vector<MinkowskiVec> accel_l2(const StateL2& s) {
  const auto m = s.masses();
  return accel_l2(m, raw(s.positions()), s.velocities());
}

std::vector<Complex> accel_h2(const StateH2& s) {
  if (s.size() == 0) return {};
  // w -> (w - a)/k is an isometry; it moves the configuration near i, where
  // the hyperboloid coordinates are O(1), and scales accelerations by 1/k.
  double re_min = s.positions()[0].re(), re_max = re_min, im_max = 0.0;
  for (const auto& w : s.positions()) {
    re_min = std::min(re_min, w.re());
    re_max = std::max(re_max, w.re());
    im_max = std::max(im_max, w.im());
  }
  const double a = 0.5 * (re_min + re_max);
  const double k = std::max(im_max, 0.5 * (re_max - re_min));
  std::vector<HalfPlanePoint> pos;
  std::vector<Complex> vel;
  for (std::size_t i = 0; i < s.size(); ++i) {
    pos.emplace_back((s.positions()[i].re() - a) / k, s.positions()[i].im() / k);
    vel.push_back(s.velocities()[i] / k);
  }
  const StateL2 l2 = to_l2(StateH2(s.bodies(), std::move(pos), std::move(vel)));
  const auto acc = accel_l2(l2);
  std::vector<Complex> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out.push_back(k * to_halfplane_jet({l2.positions()[i].vec(), l2.velocities()[i], acc[i]}).wdd);
  return out;
}

double tkj(const HalfPlanePoint& wk, const HalfPlanePoint& wj) {
  const double dx = wk.re() - wj.re();
  const double yk2 = wk.im() * wk.im(), yj2 = wj.im() * wj.im();
  return std::sqrt(4.0 * dx * dx * (dx * dx + 2.0 * (yk2 + yj2)) + 4.0 * (yk2 - yj2) * (yk2 - yj2));
}

std::vector<Complex> accel_h2_printed(const StateH2& s) {
  const auto& w = s.positions();
  std::vector<Complex> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Complex wk = w[k].w();
    const Complex wkc = std::conj(wk);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == k) continue;
      const Complex wj = w[j].w();
      const Complex wjc = std::conj(wj);
      const double t = tkj(w[j], w[k]);
      sum += s.bodies()[j].mass * (wkc - wk) * (wjc - wj) * (wjc - wj) * (wk - wj) * (wjc - wk) / (t * t * t);
    }
    const Complex wd = s.velocities()[k];
    out.push_back(-(wk - wkc) * (wk - wkc) / 2.0 * sum + 2.0 * wd * wd / (wk - wkc));
  }
  return out;
}

double potential(const StateL2& s) {
  double u = 0.0;
  const auto& p = s.positions();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      u += s.bodies()[i].mass * s.bodies()[j].mass * coth_distance(p[i].vec(), p[j].vec());
  return u;
}

double potential(const StateH2& s) {
  double u = 0.0;
  const auto& w = s.positions();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double chord = std::norm(w[i].w() - w[j].w());
      u += s.bodies()[i].mass * s.bodies()[j].mass * 2.0 * (chord + 2.0 * w[i].im() * w[j].im()) / tkj(w[i], w[j]);
    }
  }
  return u;
}

double potential_h2_printed(const StateH2& s) {
  double u = 0.0;
  const auto& w = s.positions();
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t j = k + 1; j < s.size(); ++j) {
      const Complex wk = w[k].w(), wj = w[j].w();
      // The printed numerator pairs (conj(w_k) - w_k) with (conj(w_i) - w_i); i is read as j.
      const Complex num = (std::conj(wk) - wk) * (std::conj(wj) - wj) - 2.0 * (std::norm(wk) + std::norm(wj));
      u += s.bodies()[k].mass * s.bodies()[j].mass * num.real() / tkj(w[k], w[j]);
    }
  }
  return u;
}

double kinetic(const StateL2& s) {
  double t = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    t += 0.5 * s.bodies()[i].mass * minkowski_dot(s.velocities()[i], s.velocities()[i]);
  return t;
}

double kinetic(const StateH2& s) {
  double t = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double y = s.positions()[i].im();
    t += 0.5 * s.bodies()[i].mass * std::norm(s.velocities()[i]) / (y * y);
  }
  return t;
}

double total_energy(const StateL2& s) { return kinetic(s) - potential(s); }
double total_energy(const StateH2& s) { return kinetic(s) - potential(s); }

FirstIntegrals first_integrals(const StateL2& s) {
  FirstIntegrals l;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double m = s.bodies()[i].mass;
    const MinkowskiVec& q = s.positions()[i].vec();
    const MinkowskiVec& v = s.velocities()[i];
    l.lxy += m * (q.x * v.y - q.y * v.x);
    l.lxz += m * (q.x * v.z - q.z * v.x);
    l.lyz += m * (q.y * v.z - q.z * v.y);
  }
  return l;
}

namespace {

// A pair closer than its relative motion over a few steps cannot be resolved
// by a fixed step; treat it as a collision before the step flings it apart.
void check_encounters(const StateL2& s, double h) {
  const auto& q = s.positions();
  // Lower bound on the speed: v.v cancels badly once coordinates are large.
  auto speed = [](const MinkowskiVec& v) {
    const double e = 8.0 * std::numeric_limits<double>::epsilon() * (v.x * v.x + v.y * v.y + v.z * v.z);
    return std::sqrt(std::max(0.0, minkowski_dot(v, v) - e));
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double si = speed(s.velocities()[i]);
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double sj = speed(s.velocities()[j]);
      const double d = dist_hyperboloid(q[i], q[j]);
      if (d >= kEncounterSteps * h * (si + sj)) continue;
      const auto& a = q[i].vec();
      const auto& b = q[j].vec();
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                           std::sqrt((a.x * a.x + a.y * a.y + a.z * a.z) * (b.x * b.x + b.y * b.y + b.z * b.z));
      if (std::cosh(d) - 1.0 <= noise)
        throw BreakdownError("pairwise distances no longer resolved: coordinates too large for double precision");
      throw CollisionError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                                 " collide (close approach not resolved by the step size)",
                             i, j);
    }
  }
}

}  // namespace

StepResult step_rk4(const StateL2& s, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("step size must be positive");
  const std::size_t n = s.size();
  const auto m = s.masses();
  const auto q0 = raw(s.positions());
  check_encounters(s, h);
  const auto& v0 = s.velocities();

  auto axpy = [n](const std::vector<MinkowskiVec>& x, double a, const std::vector<MinkowskiVec>& y) {
    std::vector<MinkowskiVec> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = x[i] + a * y[i];
    return r;
  };

  const auto k1q = v0;
  const auto k1v = accel_l2(m, q0, v0);
  const auto q2 = axpy(q0, 0.5 * h, k1q), v2 = axpy(v0, 0.5 * h, k1v);
  const auto k2v = accel_l2(m, q2, v2);
  const auto q3 = axpy(q0, 0.5 * h, v2), v3 = axpy(v0, 0.5 * h, k2v);
  const auto k3v = accel_l2(m, q3, v3);
  const auto q4 = axpy(q0, h, v3), v4 = axpy(v0, h, k3v);
  const auto k4v = accel_l2(m, q4, v4);

  StepResult out;
  std::vector<HyperboloidPoint> q;
  std::vector<MinkowskiVec> v;
  q.reserve(n);
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MinkowskiVec qi = q0[i] + (h / 6.0) * (v0[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
    const MinkowskiVec vi = v0[i] + (h / 6.0) * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    if (!std::isfinite(qi.z) || !(std::abs(minkowski_dot(qi, qi) + 1.0) < kBreakdownDefect))
      throw BreakdownError("step left the hyperboloid: coordinates too large for double precision");
    const HyperboloidPoint p = HyperboloidPoint::normalize(qi);
    const MinkowskiVec vt = vi + minkowski_dot(p.vec(), vi) * p.vec();
    out.repair = std::max({out.repair, max_abs(p.vec() - qi), max_abs(vt - vi)});
    q.push_back(p);
    v.push_back(vt);
  }
  check_collisions(raw(q));
  out.state = StateL2(s.bodies(), std::move(q), std::move(v));
  return out;
}

namespace {

double constraint_defect(const StateL2& s) {
  double c = 0.0;
  for (const auto& p : s.positions()) c = std::max(c, std::abs(minkowski_dot(p.vec(), p.vec()) + 1.0));
  return c;
}

}  // namespace

Trajectory integrate(const StateL2& s, double t_end, double h, const IntegrateOptions& options) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("step size must be positive");
  const std::size_t every = std::max<std::size_t>(1, options.record_every);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
  const double dt = t_end / static_cast<double>(steps);

  Trajectory traj;
  const double e0 = total_energy(s);
  const FirstIntegrals l0 = first_integrals(s);
  auto record = [&](double t, const StateL2& st, double e, double c) {
    traj.times.push_back(t);
    traj.states.push_back(st);
    traj.energy.push_back(e);
    traj.constraint.push_back(c);
  };
  record(0.0, s, e0, constraint_defect(s));

  StateL2 cur = s;
  auto& diag = traj.diagnostics;
  for (std::size_t k = 1; k <= steps; ++k) {
    StepResult r;
    try {
      r = step_rk4(cur, dt);
    } catch (const CollisionError& e) {
      traj.completed = false;
      traj.abort_code = ErrorCode::Collision;
      traj.abort_reason = e.what();
      break;
    } catch (const BreakdownError& e) {
      traj.completed = false;
      traj.abort_code = ErrorCode::Breakdown;
      traj.abort_reason = e.what();
      break;
    }
    cur = std::move(r.state);
    const double e = total_energy(cur);
    const double c = constraint_defect(cur);
    const FirstIntegrals l = first_integrals(cur);
    diag.energy_drift = std::max(diag.energy_drift, std::abs(e - e0));
    diag.constraint_drift = std::max(diag.constraint_drift, c);
    diag.lxy_drift = std::max(diag.lxy_drift, std::abs(l.lxy - l0.lxy));
    diag.lxz_drift = std::max(diag.lxz_drift, std::abs(l.lxz - l0.lxz));
    diag.lyz_drift = std::max(diag.lyz_drift, std::abs(l.lyz - l0.lyz));
    diag.repair_max = std::max(diag.repair_max, r.repair);
    if (k % every == 0 || k == steps) record(k == steps ? t_end : dt * static_cast<double>(k), cur, e, c);
  }
  return traj;
}

Trajectory integrate(const StateH2& s, double t_end, double h, const IntegrateOptions& options) {
  return integrate(to_l2(s), t_end, h, options);
}

}  // namespace hyperre
