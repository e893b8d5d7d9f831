// hyperre: command-line driver for the curved n-body relative equilibrium tools.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperre/hyperre.h"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMath = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int exit_for(hre_status s) {
  switch (s) {
    case HRE_OK:
      return kOk;
    case HRE_INVALID_ARGUMENT:
    case HRE_DOMAIN:
      return kUsage;
    default:
      return kMath;
  }
}

int report(hre_status s) {
  std::cerr << "error: " << hre_status_name(s) << ": " << hre_last_error() << "\n";
  return exit_for(s);
}

// "a,b,c" or "lo:hi:count[:log]".
std::vector<double> parse_grid(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed grid '" + text + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw UsageError("malformed grid '" + text + "'");
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string p;
    while (std::getline(ss, p, sep)) parts.push_back(p);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
  };

  if (text.find(':') != std::string::npos) {
    const auto p = split(text, ':');
    if (p.size() < 3 || p.size() > 4 || (p.size() == 4 && p[3] != "log"))
      throw UsageError("range grid must be lo:hi:count[:log], got '" + text + "'");
    const double lo = to_double(p[0]), hi = to_double(p[1]);
    const double count = to_double(p[2]);
    if (count < 1 || count != std::floor(count) || count > 1e7) throw UsageError("grid count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    const bool log = p.size() == 4;
    if (log && (lo <= 0.0 || hi <= 0.0)) throw UsageError("log grid needs positive bounds");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      v[i] = log ? std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo))) : lo + s * (hi - lo);
    }
    v.front() = lo;
    if (n > 1) v.back() = hi;
    return v;
  }
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(to_double(p));
  if (v.empty()) throw UsageError("empty grid");
  return v;
}

hre_coefficients parse_coeffs(const std::string& s) {
  return s == "printed" ? HRE_COEFF_PRINTED : HRE_COEFF_DYNAMICS;
}

const char* coeff_name(hre_coefficients c) { return c == HRE_COEFF_PRINTED ? "printed" : "dynamics"; }

// Writes to `path` or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const json& j, const std::string& path) {
  Output out(path);
  out.stream() << j.dump(2) << "\n";
}

// ---- ngon-scan ----------------------------------------------------------

struct NgonScanArgs {
  int n_min = 3;
  int n_max = 8;
  std::string r_grid = "0.1:5:20:log";
  std::string omega_grid = "0.1,1,2";
  std::string t_grid = "0:5:20";
  double mass = 1.0;
  std::string out;
};

int run_ngon_scan(const NgonScanArgs& a) {
  const auto r = parse_grid(a.r_grid);
  const auto omega = parse_grid(a.omega_grid);
  const auto wt = parse_grid(a.t_grid);
  hre_ngon_scan* scan = nullptr;
  const hre_status s =
      hre_ngon_scan_run(a.n_min, a.n_max, r.data(), r.size(), omega.data(), omega.size(), wt.data(), wt.size(), a.mass, &scan);
  if (s != HRE_OK) return report(s);
  std::unique_ptr<hre_ngon_scan, decltype(&hre_ngon_scan_free)> guard(scan, hre_ngon_scan_free);

  double max_sum = 0.0, min_margin = 0.0, max_gap = 0.0;
  int certified = 0;
  hre_ngon_scan_summary(scan, &max_sum, &min_margin, &max_gap, &certified);
  json cells = json::array();
  for (std::size_t i = 0; i < hre_ngon_scan_size(scan); ++i) {
    hre_scan_cell c;
    hre_ngon_scan_cell(scan, i, &c);
    cells.push_back({{"n", c.n}, {"r", c.r}, {"omega", c.omega}, {"t", c.t}, {"S", c.sum}, {"worst_term_gap", c.worst_term_gap}});
  }
  json j = {{"grid",
             {{"n_min", a.n_min}, {"n_max", a.n_max}, {"r", r}, {"omega", omega}, {"omega_t", wt}, {"mass", a.mass}}},
            {"max_S", max_sum},
            {"min_margin", min_margin},
            {"max_term_gap", max_gap},
            {"certified", certified != 0},
            {"cells", cells}};
  write_json(j, a.out);
  if (certified) {
    std::cerr << "CERTIFIED max S = " << num(max_sum) << " < 0\n";
    return kOk;
  }
  std::cerr << "NOT CERTIFIED max S = " << num(max_sum) << ", max term gap = " << num(max_gap) << "\n";
  return kMath;
}

// ---- ngon-residual ------------------------------------------------------

struct NgonResidualArgs {
  int n = 3;
  double r = 1.0;
  double omega = 1.0;
  double t = 0.5;
  std::string out;
};

int run_ngon_residual(const NgonResidualArgs& a) {
  std::vector<double> terms(static_cast<std::size_t>(std::max(a.n, 1))), bounds(terms.size());
  double sum = 0.0, zres = 0.0;
  hre_status s = hre_ngon_zsum(a.n, a.r, a.omega, a.t, &sum, terms.data(), bounds.data(), terms.size());
  if (s != HRE_OK) return report(s);
  s = hre_ngon_z_residual(a.n, a.r, a.omega, a.t, &zres);
  if (s != HRE_OK) return report(s);
  terms.resize(static_cast<std::size_t>(a.n - 1));
  bounds.resize(terms.size());
  json j = {{"n", a.n},         {"r", a.r},         {"omega", a.omega},      {"t", a.t},
            {"S", sum},         {"terms", terms},   {"bounds", bounds},      {"body1_z_residual", zres}};
  write_json(j, a.out);
  return sum < 0.0 ? kOk : kMath;
}

// ---- collinear-solve ----------------------------------------------------

struct CollinearArgs {
  double alpha = 0.0;
  double beta = 0.0;
  double big_m = 1.0;
  double mu = 1.0;
  std::string coefficients = "dynamics";
  std::string out;
  std::string emit_config;
};

json collinear_config(const hre_collinear_solution& sol) {
  double pos[10], masses[5];
  hre_collinear_initial(&sol, pos, masses);
  const double omega = std::sqrt(sol.omega_sq);
  json bodies = json::array();
  for (int j = 0; j < 5; ++j) {
    bodies.push_back({{"mass", masses[j]},
                      {"position", {pos[2 * j], pos[2 * j + 1]}},
                      {"velocity", {omega * pos[2 * j], omega * pos[2 * j + 1]}}});
  }
  return {{"model", "H2"}, {"bodies", bodies}};
}

int run_collinear_solve(const CollinearArgs& a) {
  hre_collinear_solution sol{};
  const char* reason = "";
  const hre_coefficients coeffs = parse_coeffs(a.coefficients);
  const hre_status s = hre_collinear_solve(a.alpha, a.beta, a.big_m, a.mu, coeffs, &sol, &reason);
  if (s == HRE_INVALID_ARGUMENT || s == HRE_DOMAIN || s == HRE_INTERNAL) return report(s);

  json j = {{"alpha", sol.alpha}, {"beta", sol.beta}, {"coefficients", coeff_name(coeffs)},
            {"f1", sol.f1},       {"f2", sol.f2},     {"f3", sol.f3},
            {"M", sol.big_m},     {"mu", sol.mu}};
  if (s != HRE_OK) {
    if (s == HRE_NONPOSITIVE_OMEGA_SQ) {
      j["m"] = sol.m;
      j["omega_sq"] = sol.omega_sq;
    }
    j["status"] = reason;
    write_json(j, a.out);
    std::cerr << "no relative equilibrium: " << reason << "\n";
    return kMath;
  }
  const double times[] = {0.0, 0.5, 1.0};
  double res[5], drift = 0.0, edrift = 0.0;
  const hre_status v = hre_collinear_verify(&sol, times, 3, 1.0, 1e-4, res, &drift, &edrift);
  j["m"] = sol.m;
  j["omega_sq"] = sol.omega_sq;
  if (v != HRE_OK) {
    j["status"] = "verification failed";
    j["error"] = hre_last_error();
    write_json(j, a.out);
    return report(v);
  }
  double rmax = 0.0;
  for (double r : res) rmax = std::max(rmax, r);
  j["status"] = reason;
  j["residual_max"] = rmax;
  j["residuals"] = std::vector<double>(res, res + 5);
  j["distance_drift"] = drift;
  j["energy_drift"] = edrift;
  write_json(j, a.out);
  if (!a.emit_config.empty()) write_json(collinear_config(sol), a.emit_config);
  return kOk;
}

// ---- region-map ---------------------------------------------------------

struct RegionArgs {
  std::size_t alpha_steps = 200;
  std::size_t beta_steps = 200;
  std::string coefficients = "dynamics";
  std::string out;
};

int run_region_map(const RegionArgs& a) {
  hre_region_map* map = nullptr;
  const hre_status s = hre_region_map_run(a.alpha_steps, a.beta_steps, parse_coeffs(a.coefficients), &map);
  if (s != HRE_OK) return report(s);
  std::unique_ptr<hre_region_map, decltype(&hre_region_map_free)> guard(map, hre_region_map_free);

  Output out(a.out);
  std::ostream& os = out.stream();
  os << "alpha,beta,f1,f2,f3,omega_sq_at_solution\n";
  for (std::size_t i = 0; i < hre_region_map_size(map); ++i) {
    hre_region_cell c;
    hre_region_map_cell(map, i, &c);
    os << num(c.alpha) << ',' << num(c.beta) << ',' << num(c.f1) << ',' << num(c.f2) << ',' << num(c.f3) << ',';
    if (c.status == 0 || c.status == 3) os << num(c.omega_sq);
    os << '\n';
  }
  std::size_t neg = 0, pos = 0, solved = 0;
  hre_region_map_counts(map, &neg, &pos, &solved);
  std::cerr << "f2<0 cells: " << neg << ", f2>0 cells: " << pos << ", solved with omega^2>0: " << solved << "\n";
  if (neg == 0) {
    std::cerr << "the f2 < 0 region is empty\n";
    return kMath;
  }
  return kOk;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
  std::string config;
  double t_end = 1.0;
  double dt = 1e-4;
  std::size_t record_every = 1;
  std::string out;
};

struct RunConfig {
  hre_model model = HRE_MODEL_L2;
  std::vector<double> masses, positions, velocities;
};

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
    throw UsageError("config needs a string field 'model'");
  RunConfig c;
  const std::string model = j["model"];
  if (model == "L2")
    c.model = HRE_MODEL_L2;
  else if (model == "H2")
    c.model = HRE_MODEL_H2;
  else
    throw UsageError("model must be \"L2\" or \"H2\"");
  const std::size_t dim = c.model == HRE_MODEL_L2 ? 3 : 2;
  if (!j.contains("bodies") || !j["bodies"].is_array() || j["bodies"].empty())
    throw UsageError("config needs a non-empty 'bodies' array");
  for (const auto& b : j["bodies"]) {
    if (!b.is_object() || !b.contains("mass") || !b["mass"].is_number()) throw UsageError("every body needs a numeric 'mass'");
    const double m = b["mass"];
    if (!(m > 0.0)) throw UsageError("masses must be positive");
    c.masses.push_back(m);
    for (const char* key : {"position", "velocity"}) {
      if (!b.contains(key) || !b[key].is_array() || b[key].size() != dim)
        throw UsageError(std::string("'") + key + "' must have " + std::to_string(dim) + " components for model " + model);
      for (const auto& x : b[key]) {
        if (!x.is_number()) throw UsageError(std::string("'") + key + "' components must be numbers");
        (std::string(key) == "position" ? c.positions : c.velocities).push_back(x.get<double>());
      }
    }
  }
  return c;
}

int run_simulate(const SimulateArgs& a) {
  const RunConfig c = load_config(a.config);
  hre_system* sys = nullptr;
  hre_status s = hre_system_create(c.model, c.masses.size(), c.masses.data(), c.positions.data(), c.velocities.data(), &sys);
  if (s != HRE_OK) return report(s);
  std::unique_ptr<hre_system, decltype(&hre_system_free)> sys_guard(sys, hre_system_free);

  hre_trajectory* traj = nullptr;
  s = hre_integrate(sys, a.t_end, a.dt, a.record_every, &traj);
  if (!traj) return report(s);
  std::unique_ptr<hre_trajectory, decltype(&hre_trajectory_free)> traj_guard(traj, hre_trajectory_free);

  const std::size_t n = c.masses.size();
  const std::size_t dim = c.model == HRE_MODEL_L2 ? 3 : 2;
  std::vector<double> pos(n * dim), vel(n * dim);
  Output out(a.out);
  std::ostream& os = out.stream();
  os << (c.model == HRE_MODEL_L2 ? "t,body,x,y,z,vx,vy,vz,energy,constraint_drift\n"
                                 : "t,body,re,im,vre,vim,energy,constraint_drift\n");
  for (std::size_t k = 0; k < hre_trajectory_size(traj); ++k) {
    double t = 0.0, e = 0.0, cd = 0.0;
    hre_trajectory_sample(traj, k, &t, &e, &cd, pos.data(), vel.data(), pos.size());
    for (std::size_t i = 0; i < n; ++i) {
      os << num(t) << ',' << i + 1;
      for (std::size_t d = 0; d < dim; ++d) os << ',' << num(pos[i * dim + d]);
      for (std::size_t d = 0; d < dim; ++d) os << ',' << num(vel[i * dim + d]);
      os << ',' << num(e) << ',' << num(cd) << '\n';
    }
  }
  hre_diagnostics d;
  hre_trajectory_diagnostics(traj, &d);
  double dist_drift = 0.0;
  hre_trajectory_distance_drift(traj, &dist_drift);
  os << "# energy_drift=" << num(d.energy_drift) << " Lxy_drift=" << num(d.lxy_drift) << " Lxz_drift=" << num(d.lxz_drift)
     << " Lyz_drift=" << num(d.lyz_drift) << " constraint_drift=" << num(d.constraint_drift)
     << " distance_drift=" << num(dist_drift) << " completed=" << hre_trajectory_completed(traj) << "\n";
  if (s != HRE_OK) {
    std::cerr << "integration aborted: " << hre_trajectory_abort_reason(traj) << "\n";
    return exit_for(s);
  }
  return kOk;
}

// ---- verify-re ----------------------------------------------------------

struct VerifyArgs {
  std::string family = "collinear";
  double alpha = 0.0;
  double beta = 0.0;
  std::string coefficients = "dynamics";
  int n = 3;
  double r = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  std::string times = "0,0.5,1";
  double tol = 1e-8;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const auto times = parse_grid(a.times);
  json j = {{"family", a.family}};
  double residual = 0.0;
  if (a.family == "collinear") {
    hre_collinear_solution sol{};
    const char* reason = "";
    hre_status s = hre_collinear_solve(a.alpha, a.beta, 1.0, 1.0, parse_coeffs(a.coefficients), &sol, &reason);
    if (s != HRE_OK) {
      if (s == HRE_NO_SOLUTION || s == HRE_NONPOSITIVE_OMEGA_SQ) std::cerr << "no relative equilibrium: " << reason << "\n";
      return report(s);
    }
    double res[5], drift = 0.0, edrift = 0.0;
    s = hre_collinear_verify(&sol, times.data(), times.size(), 1.0, 1e-4, res, &drift, &edrift);
    if (s != HRE_OK) return report(s);
    for (double x : res) residual = std::max(residual, x);
    j.update({{"alpha", sol.alpha}, {"beta", sol.beta}, {"m", sol.m}, {"omega_sq", sol.omega_sq},
              {"residuals", std::vector<double>(res, res + 5)}, {"distance_drift", drift}, {"energy_drift", edrift}});
  } else if (a.family == "elliptic-ngon") {
    double w2 = 0.0;
    hre_status s = hre_elliptic_ngon_omega(a.n, a.mass, a.r, &w2);
    if (s != HRE_OK) return report(s);
    s = hre_elliptic_ngon_residual(a.n, a.mass, a.r, std::sqrt(w2), times.data(), times.size(), &residual);
    if (s != HRE_OK) return report(s);
    j.update({{"n", a.n}, {"r", a.r}, {"mass", a.mass}, {"omega_sq", w2}});
  } else if (a.family == "hyperbolic-ngon") {
    for (double t : times) {
      double z = 0.0;
      const hre_status s = hre_ngon_z_residual(a.n, a.r, a.omega, t, &z);
      if (s != HRE_OK) return report(s);
      residual = std::max(residual, std::abs(z));
    }
    j.update({{"n", a.n}, {"r", a.r}, {"omega", a.omega}});
  } else {
    throw UsageError("unknown family '" + a.family + "'");
  }
  j["times"] = times;
  j["residual_max"] = residual;
  j["tolerance"] = a.tol;
  j["is_relative_equilibrium"] = residual <= a.tol;
  write_json(j, a.out);
  return residual <= a.tol ? kOk : kMath;
}

// ---- pbar-root ----------------------------------------------------------

int run_pbar_root(const std::string& out) {
  double x0 = 0.0, a1 = 0.0;
  const hre_status s = hre_pbar_root(&x0, &a1);
  if (s != HRE_OK) return report(s);
  write_json({{"x0", x0}, {"alpha1", a1}, {"pbar_x0", hre_pbar(x0)}}, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative equilibria of the curved n-body problem on the hyperbolic plane"};
  app.require_subcommand(1);
  int code = kOk;

  NgonScanArgs scan;
  auto* c_scan = app.add_subcommand("ngon-scan", "Certify that no regular n-gon moves by a boost");
  c_scan->add_option("--n-min", scan.n_min, "Smallest n")->capture_default_str();
  c_scan->add_option("--n-max", scan.n_max, "Largest n")->capture_default_str();
  c_scan->add_option("--r-grid", scan.r_grid, "Radii: a,b,c or lo:hi:count[:log]")->capture_default_str();
  c_scan->add_option("--omega-grid", scan.omega_grid, "Angular speeds")->capture_default_str();
  c_scan->add_option("--t-grid", scan.t_grid, "Values of omega*t (>= 0)")->capture_default_str();
  c_scan->add_option("--mass", scan.mass, "Common body mass")->capture_default_str();
  c_scan->add_option("--out", scan.out, "JSON report path (default stdout)");
  c_scan->callback([&] { code = run_ngon_scan(scan); });

  NgonResidualArgs nres;
  auto* c_nres = app.add_subcommand("ngon-residual", "Evaluate the z-balance sum S at one point");
  c_nres->add_option("--n", nres.n)->capture_default_str();
  c_nres->add_option("--r", nres.r)->capture_default_str();
  c_nres->add_option("--omega", nres.omega)->capture_default_str();
  c_nres->add_option("--t", nres.t)->capture_default_str();
  c_nres->add_option("--out", nres.out);
  c_nres->callback([&] { code = run_ngon_residual(nres); });

  CollinearArgs col;
  auto* c_col = app.add_subcommand("collinear-solve", "Solve the collinear five-body family for the outer mass m");
  c_col->add_option("--alpha", col.alpha, "Inner angle (radians)")->required();
  c_col->add_option("--beta", col.beta, "Outer angle increment (radians)")->required();
  c_col->add_option("--M", col.big_m, "Central mass")->capture_default_str();
  c_col->add_option("--mu", col.mu, "Inner pair mass")->capture_default_str();
  c_col->add_option("--coefficients", col.coefficients, "dynamics or printed")
      ->check(CLI::IsMember({"dynamics", "printed"}))
      ->capture_default_str();
  c_col->add_option("--out", col.out, "JSON output path (default stdout)");
  c_col->add_option("--emit-config", col.emit_config, "Also write a simulate config for the solution");
  c_col->callback([&] { code = run_collinear_solve(col); });

  RegionArgs reg;
  auto* c_reg = app.add_subcommand("region-map", "Sign map of f2 over the admissible (alpha, beta) triangle");
  c_reg->add_option("--alpha-steps", reg.alpha_steps)->check(CLI::Range(std::size_t{2}, std::size_t{100000}))->capture_default_str();
  c_reg->add_option("--beta-steps", reg.beta_steps)->check(CLI::Range(std::size_t{2}, std::size_t{100000}))->capture_default_str();
  c_reg->add_option("--coefficients", reg.coefficients, "dynamics or printed")
      ->check(CLI::IsMember({"dynamics", "printed"}))
      ->capture_default_str();
  c_reg->add_option("--out", reg.out, "CSV path (default stdout)");
  c_reg->callback([&] { code = run_region_map(reg); });

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Integrate a configuration with fixed-step RK4");
  c_sim->add_option("--config", sim.config, "RunConfig JSON")->required();
  c_sim->add_option("--t-end", sim.t_end)->capture_default_str();
  c_sim->add_option("--dt", sim.dt)->capture_default_str();
  c_sim->add_option("--record-every", sim.record_every, "Write every k-th step")->capture_default_str();
  c_sim->add_option("--out", sim.out, "CSV path (default stdout)");
  c_sim->callback([&] { code = run_simulate(sim); });

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify-re", "Residual of a candidate relative equilibrium");
  c_ver->add_option("--family", ver.family)
      ->check(CLI::IsMember({"collinear", "elliptic-ngon", "hyperbolic-ngon"}))
      ->capture_default_str();
  c_ver->add_option("--alpha", ver.alpha);
  c_ver->add_option("--beta", ver.beta);
  c_ver->add_option("--coefficients", ver.coefficients)->check(CLI::IsMember({"dynamics", "printed"}))->capture_default_str();
  c_ver->add_option("--n", ver.n)->capture_default_str();
  c_ver->add_option("--r", ver.r)->capture_default_str();
  c_ver->add_option("--mass", ver.mass)->capture_default_str();
  c_ver->add_option("--omega", ver.omega, "hyperbolic-ngon only")->capture_default_str();
  c_ver->add_option("--times", ver.times)->capture_default_str();
  c_ver->add_option("--tol", ver.tol)->capture_default_str();
  c_ver->add_option("--out", ver.out);
  c_ver->callback([&] { code = run_verify(ver); });

  std::string pbar_out;
  auto* c_pbar = app.add_subcommand("pbar-root", "Root of the boundary cubic and the matching angle");
  c_pbar->add_option("--out", pbar_out);
  c_pbar->callback([&] { code = run_pbar_root(pbar_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
