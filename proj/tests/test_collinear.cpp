#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hyperre/collinear.hpp"
#include "hyperre/error.hpp"
#include "oracles.hpp"

using namespace hyperre;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr auto kDyn = CoefficientModel::Dynamics;
constexpr auto kPrinted = CoefficientModel::Printed;

struct Angles {
  double alpha, beta;
};

Angles random_angles(oracle::Rng& rng, double margin = 0.02) {
  const double a = rng.uniform(margin, kHalfPi - 2.0 * margin);
  return {a, rng.uniform(margin, kHalfPi - a - margin)};
}

// Points of the balanced subregion used throughout; all have omega^2 > 0 and
// moderate omega so a unit-time RK4 run stays well resolved.
const Angles kSolved[] = {{0.7658, 0.5937}, {0.7265, 0.5805}, {0.7658, 0.4931},
                          {0.8443, 0.3178}, {0.4123, 0.5358}, {0.3338, 0.4793}};

// The grouped expansion of omega_1^2 - omega_2^2 with sin(alpha + beta) in
// the mixed denominators.
FCoeffs grouped_expansion(double alpha, double beta) {
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sab = std::sin(alpha + beta), cab = std::cos(alpha + beta);
  const double ca2 = ca * ca, cab2 = cab * cab;
  const double a = cab2 * ca2 * (sab - sa) / std::pow(1.0 - sa * sab, 3);
  const double b = cab2 * ca2 * (sab + sa) / std::pow(1.0 + sa * sab, 3);
  return {ca2 * ca2 - cab2 * cab2, -a * ca2 / sa + b * ca2 / sa - 2.0 * std::pow(cab2, 3) / std::pow(1.0 + sab * sab, 3),
          -a * cab2 / sab - b * cab2 / sab + 2.0 * std::pow(ca2, 3) / std::pow(1.0 + sa * sa, 3)};
}

std::vector<double> masses_vec(double m, double big_m, double mu) { return {mu, mu, big_m, m, m}; }

}  // namespace

TEST_CASE("initial points sit on the unit half circle") {
  const auto w = collinear_initial(std::numbers::pi / 6.0, 0.4);
  REQUIRE(w.size() == 5);
  CHECK(w[2].re() == 0.0);
  CHECK(w[2].im() == 1.0);
  CHECK(std::abs(w[0].re() - 0.5) <= 1e-15);
  CHECK(std::abs(w[1].re() + 0.5) <= 1e-15);
  CHECK(std::abs(w[0].im() - std::sqrt(3.0) / 2.0) <= 1e-15);
  CHECK(std::abs(w[1].im() - std::sqrt(3.0) / 2.0) <= 1e-15);
  for (const auto& p : w) CHECK(std::abs(std::abs(p.w()) - 1.0) <= 1e-15);
  CHECK(w[3].re() == -w[4].re());
  CHECK(w[3].im() == w[4].im());
}

TEST_CASE("initial points lie on one geodesic of the hyperboloid") {
  oracle::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto [a, b] = random_angles(rng);
    const auto w = collinear_initial(a, b);
    for (const auto& p : w) {
      const MinkowskiVec q = oracle::to_hyperboloid(p.w());
      CHECK(std::abs(q.x) <= 1e-12 * q.z);
      CHECK(std::abs(oracle::dot(q, q) + 1.0) <= 1e-12 * q.z * q.z);
    }
  }
}

TEST_CASE("angles outside the admissible triangle are rejected") {
  CHECK_THROWS_AS(collinear_initial(0.0, 0.3), InvalidArgument);
  CHECK_THROWS_AS(collinear_initial(0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(collinear_initial(1.0, 0.6), InvalidArgument);
  CHECK_THROWS_AS(collinear_initial(2.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(f_coeffs(0.5, -0.1), InvalidArgument);
  CHECK_THROWS_AS(omega1_sq(std::nan(""), 0.1, 1, 1, 1), InvalidArgument);
}

TEST_CASE("mass layout is mu, mu, M, m, m") {
  const auto m = collinear_masses(2.0, 3.0, 5.0);
  CHECK(m == std::array<double, 5>{5.0, 5.0, 3.0, 2.0, 2.0});
}

TEST_CASE("frequencies vanish with the masses") {
  for (auto model : {kDyn, kPrinted}) {
    CHECK(omega1_sq(0.4, 0.3, 0, 0, 0, model) == 0.0);
    CHECK(omega2_sq(0.4, 0.3, 0, 0, 0, model) == 0.0);
  }
}

TEST_CASE("central mass alone") {
  oracle::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const auto [a, b] = random_angles(rng);
    const double c4 = std::pow(std::cos(a), 4);
    CHECK(omega1_sq(a, b, 0, 1, 0, kPrinted) == doctest::Approx(c4).epsilon(1e-14));
    CHECK(omega1_sq(a, b, 0, 1, 0, kDyn) == doctest::Approx(c4 / std::pow(std::sin(a), 3)).epsilon(1e-14));
  }
}

TEST_CASE("dynamics balances match the equations of motion") {
  oracle::Rng rng(13);
  for (int k = 0; k < 300; ++k) {
    const auto [a, b] = random_angles(rng, 0.05);
    const double m = rng.uniform(0.1, 5), big_m = rng.uniform(0.1, 5), mu = rng.uniform(0.1, 5);
    const auto pts = oracle::collinear_points(a, b);
    const auto masses = masses_vec(m, big_m, mu);
    const double o1 = oracle::homothety_omega_sq(masses, pts, 0);
    const double o2 = oracle::homothety_omega_sq(masses, pts, 3);
    CHECK(omega1_sq(a, b, m, big_m, mu) == doctest::Approx(o1).epsilon(1e-9));
    CHECK(omega2_sq(a, b, m, big_m, mu) == doctest::Approx(o2).epsilon(1e-9));
  }
}

TEST_CASE("printed balances do not match the equations of motion") {
  const auto pts = oracle::collinear_points(0.5, 0.3);
  const auto masses = masses_vec(2.0, 3.0, 5.0);
  const double o1 = oracle::homothety_omega_sq(masses, pts, 0);
  const double o2 = oracle::homothety_omega_sq(masses, pts, 3);
  CHECK(std::abs(omega1_sq(0.5, 0.3, 2, 3, 5, kPrinted) - o1) > 1e-2 * std::abs(o1));
  CHECK(std::abs(omega2_sq(0.5, 0.3, 2, 3, 5, kPrinted) - o2) > 1e-2 * std::abs(o2));
}

TEST_CASE("difference of balances is linear in the masses") {
  for (auto model : {kDyn, kPrinted}) {
    const double d = omega1_sq(0.5, 0.3, 2, 3, 5, model) - omega2_sq(0.5, 0.3, 2, 3, 5, model);
    const auto f = f_coeffs(0.5, 0.3, model);
    CHECK(std::abs(d - (3.0 * f.f1 + 2.0 * f.f2 + 5.0 * f.f3)) <= 1e-12);
  }
  oracle::Rng rng(17);
  for (int k = 0; k < 1000; ++k) {
    const auto [a, b] = random_angles(rng, 1e-4);
    const double m = rng.uniform(0, 10), big_m = rng.uniform(0, 10), mu = rng.uniform(0, 10);
    for (auto model : {kDyn, kPrinted}) {
      const double w1 = omega1_sq(a, b, m, big_m, mu, model), w2 = omega2_sq(a, b, m, big_m, mu, model);
      const auto f = f_coeffs(a, b, model);
      const double scale = std::max(1.0, std::abs(w1) + std::abs(w2));
      CHECK(std::abs((w1 - w2) - (f.f1 * big_m + f.f2 * m + f.f3 * mu)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("printed f1 tends to 1 - cos^4 beta at the apex") {
  for (double b : {0.2, 0.7, 1.3}) {
    const double f1 = f_coeffs(1e-7, b, kPrinted).f1;
    CHECK(std::abs(f1 - (1.0 - std::pow(std::cos(b), 4))) <= 1e-6);
  }
}

TEST_CASE("dynamics f1 diverges at the apex") {
  CHECK(f_coeffs(1e-3, 0.5).f1 > 1e8);
  CHECK(f_coeffs(1e-4, 0.5).f1 > 1e11);
}

TEST_CASE("f1 is positive on the full grid") {
  for (auto model : {kDyn, kPrinted}) {
    const auto map = f2_region(200, 200, model);
    std::size_t bad = 0;
    for (const auto& c : map.cells) bad += c.f.f1 > 0.0 ? 0 : 1;
    CHECK(bad == 0);
  }
}

TEST_CASE("f3 takes negative values on the grid") {
  for (auto model : {kDyn, kPrinted}) {
    const auto map = f2_region(200, 200, model);
    std::size_t negative = 0;
    for (const auto& c : map.cells) negative += c.f.f3 <= 0.0 ? 1 : 0;
    MESSAGE("f3 <= 0 cells: " << negative << " of " << map.cells.size());
    CHECK(negative > 0);
  }
}

TEST_CASE("printed mass-basis coefficients equal the grouped expansion") {
  oracle::Rng rng(19);
  for (int k = 0; k < 500; ++k) {
    const auto [a, b] = random_angles(rng);
    const auto f = f_coeffs(a, b, kPrinted);
    const auto g = grouped_expansion(a, b);
    CHECK(f.f1 == doctest::Approx(g.f1).epsilon(1e-12).scale(1.0));
    CHECK(f.f2 == doctest::Approx(g.f2).epsilon(1e-12).scale(1.0));
    CHECK(f.f3 == doctest::Approx(g.f3).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("expansion with sin(alpha - beta) disagrees with the mass basis") {
  oracle::Rng rng(29);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const auto [a, b] = random_angles(rng);
    const auto f = f_coeffs(a, b, kPrinted);
    const auto e = f_coeffs_printed_expansion(a, b);
    CHECK(std::abs(e.f1 - f.f1) <= 1e-13);
    worst = std::max({worst, std::abs(e.f2 - f.f2), std::abs(e.f3 - f.f3)});
  }
  MESSAGE("largest coefficient disagreement: " << worst);
  CHECK(worst > 1e-2);
}

TEST_CASE("boundary polynomial values") {
  CHECK(pbar(1.0) == 2.0);
  CHECK(pbar(0.0) == -1.0);
  CHECK(boundary_p(0.0) == 2.0);
  CHECK(boundary_p(kHalfPi) == -1.0);
  const auto cp = pbar_critical_points();
  CHECK(std::abs(pbar_derivative(cp[0])) <= 1e-12);
  CHECK(std::abs(pbar_derivative(cp[1])) <= 1e-12);
  CHECK(cp[1] == doctest::Approx(1.0 / 3.0 + std::sqrt(13.0) / 6.0));
}

TEST_CASE("boundary polynomial has one root in the unit interval") {
  const double x0 = pbar_root();
  CHECK(x0 > 0.25);
  CHECK(x0 < 0.3);
  CHECK(std::abs(pbar(x0)) <= 1e-13);
  CHECK(pbar(0.25) < 0.0);
  CHECK(pbar(0.3) > 0.0);
  int changes = 0;
  double prev = pbar(0.0);
  for (int i = 1; i <= 100000; ++i) {
    const double v = pbar(i / 100000.0);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(changes == 1);
  const double a1 = alpha1();
  CHECK(a1 > 0.0);
  CHECK(a1 < kHalfPi);
  CHECK(std::abs(std::pow(std::cos(a1), 2) - x0) <= 1e-15);
}

TEST_CASE("P/Q changes sign once, at alpha1") {
  const double a1 = alpha1();
  const int n = 20000;
  int changes = 0;
  double where = 0.0;
  double prev = boundary_f2(0.5 * kHalfPi / n).closed_form;
  for (int i = 1; i < n; ++i) {
    const double a = (i + 0.5) * kHalfPi / n;
    const double v = boundary_f2(a).closed_form;
    if ((v > 0) != (prev > 0)) {
      ++changes;
      where = a;
    }
    prev = v;
  }
  CHECK(changes == 1);
  CHECK(std::abs(where - a1) <= kHalfPi / n);
  CHECK(boundary_p(a1 - 1e-6) > 0.0);
  CHECK(boundary_p(a1 + 1e-6) < 0.0);
  CHECK(boundary_q(0.7) > 0.0);
}

TEST_CASE("f2 vanishes on the boundary line instead of approaching P/Q") {
  for (auto model : {kDyn, kPrinted}) {
    for (double a : {0.3, 0.8, 1.2, 1.4}) {
      const auto b = boundary_f2(a, model);
      CHECK(std::abs(b.limit) <= 1e-8);
      CHECK(std::abs(b.closed_form - b.limit) > 1e-3);
    }
  }
}

TEST_CASE("f2 is negative just inside the boundary line") {
  const double a1 = alpha1();
  for (auto model : {kDyn, kPrinted}) {
    for (int i = 1; i < 100; ++i) {
      const double a = a1 + (kHalfPi - a1) * i / 100.0;
      CHECK(f_coeffs(a, kHalfPi - a - 1e-3, model).f2 < 0.0);
    }
    // On the other side of alpha1 as well: the sign flip of P/Q is not seen.
    for (int i = 1; i < 100; ++i) {
      const double a = a1 * i / 100.0;
      CHECK(f_coeffs(a, kHalfPi - a - 1e-3, model).f2 < 0.0);
    }
  }
}

TEST_CASE("frequencies are positive for positive masses") {
  oracle::Rng rng(31);
  for (int k = 0; k < 2000; ++k) {
    const auto [a, b] = random_angles(rng, 1e-3);
    const double m = rng.uniform(1e-3, 10), big_m = rng.uniform(1e-3, 10), mu = rng.uniform(1e-3, 10);
    for (auto model : {kDyn, kPrinted}) CHECK(omega2_sq(a, b, m, big_m, mu, model) > 0.0);
  }
}

TEST_CASE("solving at a point without a negative f2") {
  const auto out = try_solve_masses(0.01, 0.01, kPrinted);
  CHECK(out.status == SolveStatus::F2NonNegative);
  CHECK(out.solution.f2 > 0.0);
  CHECK(std::string(to_string(out.status)) == "f2>=0");
  CHECK_THROWS_AS(solve_masses(0.01, 0.01, kPrinted), NoSolution);
}

TEST_CASE("solving with a mass ratio that forces m <= 0") {
  const auto map = f2_region(40, 40);
  const RegionCell* cell = nullptr;
  for (const auto& c : map.cells)
    if (c.f.f2 < 0.0 && c.f.f3 < 0.0) cell = &c;
  REQUIRE(cell != nullptr);
  const auto out = try_solve_masses(cell->alpha, cell->beta, kDyn, 1e-9, 1.0);
  CHECK(out.status == SolveStatus::MassNonPositive);
  CHECK_THROWS_AS(solve_masses(cell->alpha, cell->beta, kDyn, 1e-9, 1.0), NoSolution);
  CHECK_THROWS_AS(try_solve_masses(0.5, 0.3, kDyn, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(try_solve_masses(0.5, 0.3, kDyn, 1.0, -1.0), InvalidArgument);
}

TEST_CASE("solved masses satisfy the balance") {
  const double a = alpha1() + 0.1, b = kHalfPi - a - 0.01;
  for (auto model : {kDyn, kPrinted}) {
    const auto s = solve_masses(a, b, model);
    CHECK(s.m > 0.0);
    CHECK(std::abs(s.f1 + s.f2 * s.m + s.f3) <= 1e-12 * (std::abs(s.f1) + std::abs(s.f3)));
    CHECK(s.omega_sq > 0.0);
    CHECK(std::abs(s.omega_sq - omega2_sq(a, b, s.m, 1, 1, model)) <= 1e-12 * (1.0 + s.omega_sq) * 1e3);
  }
}

TEST_CASE("solution scales with the masses") {
  const auto s1 = solve_masses(0.7658, 0.5937, kDyn, 1.0, 2.0);
  const auto s3 = solve_masses(0.7658, 0.5937, kDyn, 3.0, 6.0);
  CHECK(s3.m == doctest::Approx(3.0 * s1.m).epsilon(1e-13));
  CHECK(s3.omega_sq == doctest::Approx(3.0 * s1.omega_sq).epsilon(1e-13));
}

TEST_CASE("solved configurations are relative equilibria") {
  const std::vector<double> times = {0.0, 0.5, 1.0};
  for (const auto& [a, b] : kSolved) {
    const auto s = solve_masses(a, b);
    CHECK(s.m > 0.0);
    const auto v = verify_collinear_re(s, times, 1.0, 1e-4);
    CHECK(v.residuals.max() <= 1e-8);
    CHECK(v.distance_drift <= 1e-6);
    CHECK(v.energy_drift <= 1e-6);
  }
  const double a = alpha1() + 0.1;
  const auto s = solve_masses(a, kHalfPi - a - 0.01);
  const auto v = verify_collinear_re(s, times, 1.0, 1e-4);
  CHECK(v.residuals.max() <= 1e-8);
  CHECK(v.distance_drift <= 1e-6);
}

TEST_CASE("printed solutions are not equilibria") {
  const auto s = solve_masses(0.7658, 0.5937, kPrinted);
  const std::vector<double> times = {0.0};
  CHECK(collinear_residuals(s, times).max() > 1e-3);
}

TEST_CASE("middle body is free and the outer pairs mirror each other") {
  oracle::Rng rng(37);
  for (int k = 0; k < 200; ++k) {
    const auto [a, b] = random_angles(rng, 0.05);
    CollinearSolution s;
    s.alpha = a;
    s.beta = b;
    s.m = rng.uniform(0.1, 5);
    s.big_m = rng.uniform(0.1, 5);
    s.mu = rng.uniform(0.1, 5);
    s.omega_sq = rng.uniform(0.01, 4);
    const std::vector<double> times = {0.0, 0.5, 1.0};
    const auto r = collinear_residuals(s, times).per_body_residual;
    REQUIRE(r.size() == 5);
    // The middle body's defect is a cancellation of mirrored pair forces;
    // measure it against their size at the latest sample.
    const auto masses = masses_vec(s.m, s.big_m, s.mu);
    const auto w = collinear_state(s, 1.0).positions();
    double pair_scale = 1.0;
    for (std::size_t j : {0u, 1u, 3u, 4u}) {
      const double sh = std::sinh(oracle::halfplane_distance(w[2].w(), w[j].w()));
      pair_scale += masses[j] * w[2].im() / (sh * sh);
    }
    CHECK(r[2] <= 1e-12 * pair_scale);
    CHECK(std::abs(r[0] - r[1]) <= 1e-12 * (1.0 + r[0]));
    CHECK(std::abs(r[3] - r[4]) <= 1e-12 * (1.0 + r[3]));
  }
}

TEST_CASE("homothety preserves every pairwise distance") {
  oracle::Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const auto [a, b] = random_angles(rng, 0.05);
    CollinearSolution s;
    s.alpha = a;
    s.beta = b;
    s.m = 1.0;
    s.omega_sq = rng.uniform(0.01, 4);
    const auto p0 = collinear_state(s, 0.0).positions();
    const auto p1 = collinear_state(s, rng.uniform(-2.0, 2.0)).positions();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        CHECK(std::abs(oracle::halfplane_distance(p0[i].w(), p0[j].w()) -
                       oracle::halfplane_distance(p1[i].w(), p1[j].w())) <= 1e-12);
  }
}

TEST_CASE("residuals need a positive frequency squared") {
  CollinearSolution s;
  s.alpha = 0.5;
  s.beta = 0.3;
  s.omega_sq = 0.0;
  const std::vector<double> times = {0.0};
  CHECK_THROWS_AS(collinear_residuals(s, times), NonpositiveOmegaSq);
}

TEST_CASE("two by two region map") {
  const auto map = f2_region(2, 2);
  REQUIRE(map.cells.size() == 4);
  for (std::size_t i = 0; i < 2; ++i) {
    const double a = (i + 0.5) * kHalfPi / 2.0;
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& c = map.cells[i * 2 + k];
      CHECK(c.alpha == a);
      CHECK(c.beta == doctest::Approx((k + 0.5) * (kHalfPi - a) / 2.0));
      CHECK(c.f.f2 == f_coeffs(c.alpha, c.beta).f2);
    }
  }
  CHECK_THROWS_AS(f2_region(1, 5), InvalidArgument);
}

TEST_CASE("region map is deterministic") {
  const auto a = f2_region(50, 50, kPrinted), b = f2_region(50, 50, kPrinted);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].f.f2 == b.cells[i].f.f2);
    CHECK(a.cells[i].omega_sq == b.cells[i].omega_sq);
  }
}

TEST_CASE("sign of f2 across the triangle") {
  const auto printed = f2_region(200, 200, kPrinted);
  CHECK(printed.count_f2_negative() > 0);
  CHECK(printed.count_f2_positive() > 0);
  CHECK(printed.both_signs());
  CHECK(f_coeffs(0.01, 0.01, kPrinted).f2 > 0.0);

  const auto dyn = f2_region(200, 200, kDyn);
  MESSAGE("dynamics: f2<0 cells " << dyn.count_f2_negative() << ", f2>0 cells " << dyn.count_f2_positive()
                                  << ", solved " << dyn.count_solved());
  CHECK(dyn.count_f2_negative() == dyn.cells.size());
  CHECK(dyn.count_solved() > 0);
  for (const auto& c : dyn.cells)
    if (c.status == SolveStatus::Ok) CHECK(c.omega_sq > 0.0);
}
