#include "hyperre/hyperre.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "hyperre/collinear.hpp"
#include "hyperre/dynamics.hpp"
#include "hyperre/error.hpp"
#include "hyperre/ngon.hpp"

using namespace hyperre;

struct hre_system {
  hre_model model;
  StateL2 l2;
  StateH2 h2;
};

struct hre_trajectory {
  hre_model model;
  Trajectory traj;
};

struct hre_ngon_scan {
  ScanReport report;
};

struct hre_region_map {
  RegionMap map;
};

namespace {

thread_local std::string g_last_error;

hre_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return HRE_INVALID_ARGUMENT;
    case ErrorCode::Domain:
      return HRE_DOMAIN;
    case ErrorCode::Collision:
      return HRE_COLLISION;
    case ErrorCode::NoSolution:
      return HRE_NO_SOLUTION;
    case ErrorCode::NonpositiveOmegaSq:
      return HRE_NONPOSITIVE_OMEGA_SQ;
    case ErrorCode::Breakdown:
      return HRE_BREAKDOWN;
  }
  return HRE_INTERNAL;
}

template <class F>
hre_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HRE_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HRE_INTERNAL;
  }
}

hre_status fail(hre_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

CoefficientModel to_model(hre_coefficients c) {
  if (c == HRE_COEFF_DYNAMICS) return CoefficientModel::Dynamics;
  if (c == HRE_COEFF_PRINTED) return CoefficientModel::Printed;
  throw InvalidArgument("unknown coefficient model");
}

hre_coefficients from_model(CoefficientModel m) {
  return m == CoefficientModel::Printed ? HRE_COEFF_PRINTED : HRE_COEFF_DYNAMICS;
}

int status_index(SolveStatus s) {
  switch (s) {
    case SolveStatus::Ok:
      return 0;
    case SolveStatus::F2NonNegative:
      return 1;
    case SolveStatus::MassNonPositive:
      return 2;
    case SolveStatus::NonpositiveOmegaSq:
      return 3;
  }
  return -1;
}

void fill(const CollinearSolution& s, hre_collinear_solution* out) {
  *out = {s.alpha, s.beta, s.m, s.big_m, s.mu, s.omega_sq, s.f1, s.f2, s.f3, from_model(s.model)};
}

CollinearSolution unfill(const hre_collinear_solution& c) {
  CollinearSolution s;
  s.alpha = c.alpha;
  s.beta = c.beta;
  s.m = c.m;
  s.big_m = c.big_m;
  s.mu = c.mu;
  s.omega_sq = c.omega_sq;
  s.f1 = c.f1;
  s.f2 = c.f2;
  s.f3 = c.f3;
  s.model = to_model(c.coeffs);
  return s;
}

hre_status traj_code(const hre_trajectory* t) {
  return t->traj.abort_code == ErrorCode::Breakdown ? HRE_BREAKDOWN : HRE_COLLISION;
}

std::size_t stride(hre_model m) { return m == HRE_MODEL_L2 ? 3 : 2; }

}  // namespace

extern "C" {

const char* hre_last_error(void) { return g_last_error.c_str(); }

const char* hre_status_name(hre_status s) {
  switch (s) {
    case HRE_OK:
      return "ok";
    case HRE_INVALID_ARGUMENT:
      return "invalid argument";
    case HRE_DOMAIN:
      return "domain error";
    case HRE_COLLISION:
      return "collision";
    case HRE_NO_SOLUTION:
      return "no solution";
    case HRE_NONPOSITIVE_OMEGA_SQ:
      return "nonpositive omega^2";
    case HRE_BREAKDOWN:
      return "numerical breakdown";
    case HRE_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hre_version(void) { return "0.1.0"; }

double hre_pbar(double x) { return pbar(x); }

hre_status hre_pbar_root(double* x0, double* a1) {
  if (!x0 || !a1) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *x0 = pbar_root();
    *a1 = alpha1();
    return HRE_OK;
  });
}

hre_status hre_boundary_f2(double alpha, hre_coefficients coeffs, double* limit, double* closed_form) {
  if (!limit || !closed_form) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const BoundaryF2 b = boundary_f2(alpha, to_model(coeffs));
    *limit = b.limit;
    *closed_form = b.closed_form;
    return HRE_OK;
  });
}

hre_status hre_f_coeffs(double alpha, double beta, hre_coefficients coeffs, double f[3]) {
  if (!f) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const FCoeffs c = f_coeffs(alpha, beta, to_model(coeffs));
    f[0] = c.f1;
    f[1] = c.f2;
    f[2] = c.f3;
    return HRE_OK;
  });
}

hre_status hre_omega_sq(double alpha, double beta, double m, double big_m, double mu, hre_coefficients coeffs,
                        double* w1, double* w2) {
  if (!w1 || !w2) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const CoefficientModel model = to_model(coeffs);
    *w1 = omega1_sq(alpha, beta, m, big_m, mu, model);
    *w2 = omega2_sq(alpha, beta, m, big_m, mu, model);
    return HRE_OK;
  });
}

hre_status hre_collinear_solve(double alpha, double beta, double big_m, double mu, hre_coefficients coeffs,
                               hre_collinear_solution* out, const char** reason) {
  if (!out) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const SolveOutcome o = try_solve_masses(alpha, beta, to_model(coeffs), big_m, mu);
    fill(o.solution, out);
    if (reason) *reason = to_string(o.status);
    switch (o.status) {
      case SolveStatus::Ok:
        return HRE_OK;
      case SolveStatus::NonpositiveOmegaSq:
        g_last_error = "masses balance but omega^2 <= 0";
        return HRE_NONPOSITIVE_OMEGA_SQ;
      default:
        g_last_error = std::string("no positive mass solution: ") + to_string(o.status);
        return HRE_NO_SOLUTION;
    }
  });
}

hre_status hre_collinear_verify(const hre_collinear_solution* sol, const double* times, size_t n_times, double t_end,
                                double h, double residuals[5], double* distance_drift, double* energy_drift) {
  if (!sol || !residuals || !distance_drift || !energy_drift || (n_times > 0 && !times))
    return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const CollinearVerification v =
        verify_collinear_re(unfill(*sol), std::span<const double>(times, n_times), t_end, h);
    std::copy(v.residuals.per_body_residual.begin(), v.residuals.per_body_residual.end(), residuals);
    *distance_drift = v.distance_drift;
    *energy_drift = v.energy_drift;
    return HRE_OK;
  });
}

hre_status hre_collinear_initial(const hre_collinear_solution* sol, double positions[10], double masses[5]) {
  if (!sol || !positions || !masses) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const auto w = collinear_initial(sol->alpha, sol->beta);
    const auto ms = collinear_masses(sol->m, sol->big_m, sol->mu);
    for (std::size_t j = 0; j < 5; ++j) {
      positions[2 * j] = w[j].re();
      positions[2 * j + 1] = w[j].im();
      masses[j] = ms[j];
    }
    return HRE_OK;
  });
}

hre_status hre_ngon_zsum(int n, double r, double omega, double t, double* sum, double* terms, double* bounds,
                         size_t capacity) {
  if (!sum) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const ZSum z = zsum_residual(n, r, omega, t);
    *sum = z.sum;
    if (terms || bounds) {
      if (capacity < z.terms.size()) throw InvalidArgument("term buffer too small");
      if (terms) std::copy(z.terms.begin(), z.terms.end(), terms);
      if (bounds) std::copy(z.bounds.begin(), z.bounds.end(), bounds);
    }
    return HRE_OK;
  });
}

hre_status hre_ngon_z_residual(int n, double r, double omega, double t, double* residual) {
  if (!residual) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const NGonParams p{n, r, omega};
    const std::vector<double> masses(static_cast<std::size_t>(std::max(n, 0)), 1.0);
    *residual = re_defect_l2(ngon_orbit(p, t), masses)[0].z;
    return HRE_OK;
  });
}

hre_status hre_elliptic_ngon_omega(int n, double mass, double r, double* omega_sq) {
  if (!omega_sq) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *omega_sq = elliptic_ngon_omega(n, mass, r);
    return HRE_OK;
  });
}

hre_status hre_elliptic_ngon_residual(int n, double mass, double r, double omega, const double* times,
                                      size_t n_times, double* residual) {
  if (!residual || (n_times > 0 && !times)) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
    const NGonParams p{n, r, omega};
    p.validate();
    const std::vector<double> masses(static_cast<std::size_t>(n), mass);
    *residual = full_re_residual_l2([&](double t) { return elliptic_ngon_orbit(p, t); }, masses,
                                    std::span<const double>(times, n_times))
                    .max();
    return HRE_OK;
  });
}

hre_status hre_ngon_scan_run(int n_min, int n_max, const double* r, size_t n_r, const double* omega, size_t n_omega,
                             const double* omega_t, size_t n_omega_t, double mass, hre_ngon_scan** out) {
  if (!out || (n_r && !r) || (n_omega && !omega) || (n_omega_t && !omega_t))
    return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  return guarded([&] {
    ScanGrid g;
    g.n_min = n_min;
    g.n_max = n_max;
    g.r.assign(r, r + n_r);
    g.omega.assign(omega, omega + n_omega);
    g.omega_t.assign(omega_t, omega_t + n_omega_t);
    g.mass = mass;
    *out = new hre_ngon_scan{ngon_nonexistence_scan(g)};
    return HRE_OK;
  });
}

void hre_ngon_scan_free(hre_ngon_scan* scan) { delete scan; }

size_t hre_ngon_scan_size(const hre_ngon_scan* scan) { return scan ? scan->report.cells.size() : 0; }

hre_status hre_ngon_scan_cell(const hre_ngon_scan* scan, size_t index, hre_scan_cell* cell) {
  if (!scan || !cell) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  if (index >= scan->report.cells.size()) return fail(HRE_INVALID_ARGUMENT, "cell index out of range");
  const ScanCell& c = scan->report.cells[index];
  *cell = {c.n, c.r, c.omega, c.t, c.sum, c.worst_term_gap};
  return HRE_OK;
}

hre_status hre_ngon_scan_summary(const hre_ngon_scan* scan, double* max_sum, double* min_margin, double* max_term_gap,
                                 int* certified) {
  if (!scan || !max_sum || !min_margin || !max_term_gap || !certified)
    return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  *max_sum = scan->report.max_sum;
  *min_margin = scan->report.min_margin;
  *max_term_gap = scan->report.max_term_gap;
  *certified = scan->report.certified() ? 1 : 0;
  return HRE_OK;
}

hre_status hre_region_map_run(size_t alpha_steps, size_t beta_steps, hre_coefficients coeffs, hre_region_map** out) {
  if (!out) return fail(HRE_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new hre_region_map{f2_region(alpha_steps, beta_steps, to_model(coeffs))};
    return HRE_OK;
  });
}

void hre_region_map_free(hre_region_map* map) { delete map; }

size_t hre_region_map_size(const hre_region_map* map) { return map ? map->map.cells.size() : 0; }

hre_status hre_region_map_cell(const hre_region_map* map, size_t index, hre_region_cell* cell) {
  if (!map || !cell) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  if (index >= map->map.cells.size()) return fail(HRE_INVALID_ARGUMENT, "cell index out of range");
  const RegionCell& c = map->map.cells[index];
  *cell = {c.alpha, c.beta, c.f.f1, c.f.f2, c.f.f3, c.m, c.omega_sq, status_index(c.status)};
  return HRE_OK;
}

hre_status hre_region_map_counts(const hre_region_map* map, size_t* f2_negative, size_t* f2_positive,
                                 size_t* solved) {
  if (!map || !f2_negative || !f2_positive || !solved) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  *f2_negative = map->map.count_f2_negative();
  *f2_positive = map->map.count_f2_positive();
  *solved = map->map.count_solved();
  return HRE_OK;
}

hre_status hre_system_create(hre_model model, size_t n_bodies, const double* masses, const double* positions,
                             const double* velocities, hre_system** out) {
  if (!out || (n_bodies > 0 && (!masses || !positions || !velocities)))
    return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  if (model != HRE_MODEL_L2 && model != HRE_MODEL_H2) return fail(HRE_INVALID_ARGUMENT, "unknown model");
  return guarded([&] {
    std::vector<Body> bodies;
    for (std::size_t i = 0; i < n_bodies; ++i) bodies.push_back({masses[i]});
    auto sys = std::make_unique<hre_system>();
    sys->model = model;
    if (model == HRE_MODEL_L2) {
      std::vector<HyperboloidPoint> q;
      std::vector<MinkowskiVec> v;
      for (std::size_t i = 0; i < n_bodies; ++i) {
        q.emplace_back(MinkowskiVec{positions[3 * i], positions[3 * i + 1], positions[3 * i + 2]});
        v.push_back({velocities[3 * i], velocities[3 * i + 1], velocities[3 * i + 2]});
      }
      sys->l2 = StateL2(std::move(bodies), std::move(q), std::move(v));
      sys->h2 = to_h2(sys->l2);
    } else {
      std::vector<HalfPlanePoint> w;
      std::vector<Complex> v;
      for (std::size_t i = 0; i < n_bodies; ++i) {
        w.emplace_back(positions[2 * i], positions[2 * i + 1]);
        v.emplace_back(velocities[2 * i], velocities[2 * i + 1]);
      }
      sys->h2 = StateH2(std::move(bodies), std::move(w), std::move(v));
      sys->l2 = to_l2(sys->h2);
    }
    *out = sys.release();
    return HRE_OK;
  });
}

void hre_system_free(hre_system* sys) { delete sys; }

size_t hre_system_size(const hre_system* sys) { return sys ? sys->l2.size() : 0; }

hre_model hre_system_model(const hre_system* sys) { return sys ? sys->model : HRE_MODEL_L2; }

hre_status hre_system_energy(const hre_system* sys, double* energy) {
  if (!sys || !energy) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    *energy = sys->model == HRE_MODEL_L2 ? total_energy(sys->l2) : total_energy(sys->h2);
    return HRE_OK;
  });
}

hre_status hre_system_accelerations(const hre_system* sys, double* out, size_t capacity) {
  if (!sys || !out) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  if (capacity < stride(sys->model) * sys->l2.size()) return fail(HRE_INVALID_ARGUMENT, "output buffer too small");
  return guarded([&] {
    if (sys->model == HRE_MODEL_L2) {
      const auto a = accel_l2(sys->l2);
      for (std::size_t i = 0; i < a.size(); ++i) {
        out[3 * i] = a[i].x;
        out[3 * i + 1] = a[i].y;
        out[3 * i + 2] = a[i].z;
      }
    } else {
      const auto a = accel_h2(sys->h2);
      for (std::size_t i = 0; i < a.size(); ++i) {
        out[2 * i] = a[i].real();
        out[2 * i + 1] = a[i].imag();
      }
    }
    return HRE_OK;
  });
}

hre_status hre_system_first_integrals(const hre_system* sys, double out[3]) {
  if (!sys || !out) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const FirstIntegrals f = first_integrals(sys->l2);
    out[0] = f.lxy;
    out[1] = f.lxz;
    out[2] = f.lyz;
    return HRE_OK;
  });
}

hre_status hre_integrate(const hre_system* sys, double t_end, double h, size_t record_every, hre_trajectory** out) {
  if (!sys || !out) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  *out = nullptr;
  return guarded([&] {
    IntegrateOptions opt;
    opt.record_every = record_every == 0 ? 1 : record_every;
    auto traj = std::make_unique<hre_trajectory>();
    traj->model = sys->model;
    traj->traj = integrate(sys->l2, t_end, h, opt);
    const bool completed = traj->traj.completed;
    if (!completed) g_last_error = traj->traj.abort_reason;
    *out = traj.release();
    if (completed) return HRE_OK;
    return traj_code(*out);
  });
}

void hre_trajectory_free(hre_trajectory* traj) { delete traj; }

size_t hre_trajectory_size(const hre_trajectory* traj) { return traj ? traj->traj.states.size() : 0; }

int hre_trajectory_completed(const hre_trajectory* traj) { return traj && traj->traj.completed ? 1 : 0; }

const char* hre_trajectory_abort_reason(const hre_trajectory* traj) {
  return traj ? traj->traj.abort_reason.c_str() : "";
}

hre_status hre_trajectory_diagnostics(const hre_trajectory* traj, hre_diagnostics* out) {
  if (!traj || !out) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  const TrajectoryDiagnostics& d = traj->traj.diagnostics;
  *out = {d.energy_drift, d.constraint_drift, d.lxy_drift, d.lxz_drift, d.lyz_drift, d.repair_max};
  return HRE_OK;
}

hre_status hre_trajectory_sample(const hre_trajectory* traj, size_t index, double* t, double* energy,
                                 double* constraint, double* positions, double* velocities, size_t capacity) {
  if (!traj) return fail(HRE_INVALID_ARGUMENT, "null trajectory");
  const Trajectory& tr = traj->traj;
  if (index >= tr.states.size()) return fail(HRE_INVALID_ARGUMENT, "sample index out of range");
  return guarded([&] {
    if (t) *t = tr.times[index];
    if (energy) *energy = tr.energy[index];
    if (constraint) *constraint = tr.constraint[index];
    if (!positions && !velocities) return HRE_OK;
    const StateL2& s = tr.states[index];
    if (capacity < stride(traj->model) * s.size()) throw InvalidArgument("output buffer too small");
    if (traj->model == HRE_MODEL_L2) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const MinkowskiVec q = s.positions()[i].vec();
        const MinkowskiVec v = s.velocities()[i];
        if (positions) {
          positions[3 * i] = q.x;
          positions[3 * i + 1] = q.y;
          positions[3 * i + 2] = q.z;
        }
        if (velocities) {
          velocities[3 * i] = v.x;
          velocities[3 * i + 1] = v.y;
          velocities[3 * i + 2] = v.z;
        }
      }
    } else {
      const StateH2 w = to_h2(s);
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (positions) {
          positions[2 * i] = w.positions()[i].re();
          positions[2 * i + 1] = w.positions()[i].im();
        }
        if (velocities) {
          velocities[2 * i] = w.velocities()[i].real();
          velocities[2 * i + 1] = w.velocities()[i].imag();
        }
      }
    }
    return HRE_OK;
  });
}

hre_status hre_trajectory_distance_drift(const hre_trajectory* traj, double* drift) {
  if (!traj || !drift) return fail(HRE_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const auto& states = traj->traj.states;
    double worst = 0.0;
    if (!states.empty()) {
      const auto& p0 = states.front().positions();
      for (const auto& st : states) {
        const auto& p = st.positions();
        for (std::size_t i = 0; i < p.size(); ++i)
          for (std::size_t j = i + 1; j < p.size(); ++j)
            worst = std::max(worst, std::abs(dist_hyperboloid(p[i], p[j]) - dist_hyperboloid(p0[i], p0[j])));
      }
    }
    *drift = worst;
    return HRE_OK;
  });
}

}  // extern "C"
