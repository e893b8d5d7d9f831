#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyperre/error.hpp"
#include "hyperre/geometry.hpp"
#include "oracles.hpp"

using namespace hyperre;

namespace {

LorentzTransform random_lorentz(oracle::Rng& rng) {
  return elliptic_matrix(rng.uniform(-3, 3)) * boost_matrix(rng.uniform(-2, 2)) * parabolic_matrix(rng.uniform(-2, 2)) *
         elliptic_matrix(rng.uniform(-3, 3));
}

MoebiusTransform random_moebius(oracle::Rng& rng) {
  const double a = rng.uniform(0.3, 2.0), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
  return {a, b, c, (1.0 + b * c) / a};
}

double max_entry_diff(const LorentzTransform& a, const LorentzTransform& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace

TEST_CASE("minkowski product examples") {
  CHECK(minkowski_dot({0, 0, 1}, {0, 0, 1}) == -1.0);
  CHECK(minkowski_dot({1, 0, 0}, {0, 1, 0}) == 0.0);
  CHECK(minkowski_dot({0, std::sinh(1.0), std::cosh(1.0)}, {0, 0, 1}) == doctest::Approx(-std::cosh(1.0)).epsilon(1e-15));
}

TEST_CASE("minkowski product is symmetric and bilinear") {
  oracle::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const MinkowskiVec a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const MinkowskiVec b{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const MinkowskiVec c{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double s = rng.uniform(-2, 2);
    CHECK(minkowski_dot(a, b) == minkowski_dot(b, a));
    CHECK(minkowski_dot(s * a + c, b) == doctest::Approx(s * minkowski_dot(a, b) + minkowski_dot(c, b)).epsilon(1e-12));
  }
}

TEST_CASE("hyperboloid points are validated") {
  CHECK_NOTHROW(HyperboloidPoint(MinkowskiVec{0, 0, 1}));
  CHECK_THROWS_AS(HyperboloidPoint(MinkowskiVec{0, 0, -1}), InvalidArgument);
  CHECK_THROWS_AS(HyperboloidPoint(MinkowskiVec{1, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(HyperboloidPoint(MinkowskiVec{0, 0, NAN}), InvalidArgument);
  const auto p = HyperboloidPoint::lift(3.0, -4.0);
  CHECK(p.z() == doctest::Approx(std::sqrt(26.0)));
  CHECK(on_hyperboloid(p.vec()));
  const auto n = HyperboloidPoint::normalize({0, 0, 5});
  CHECK(n.z() == doctest::Approx(1.0));
  CHECK_THROWS_AS(HyperboloidPoint::normalize({2, 0, 1}), InvalidArgument);
}

TEST_CASE("tangent vectors and half-plane points are validated") {
  const HyperboloidPoint apex;
  CHECK_NOTHROW(TangentVec(apex, {1, 2, 0}));
  CHECK_THROWS_AS(TangentVec(apex, {0, 0, 1}), InvalidArgument);
  const auto t = TangentVec::project(apex, {1, 2, 3});
  CHECK(t.vec().z == doctest::Approx(0.0));
  CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(HalfPlanePoint(0.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(HalfPlanePoint(INFINITY, 1.0), InvalidArgument);
}

TEST_CASE("hyperboloid distance examples") {
  const HyperboloidPoint apex;
  CHECK(dist_hyperboloid(apex, apex) == 0.0);
  for (double s : {1e-9, 1e-4, 0.3, 1.0, 5.0}) {
    const HyperboloidPoint q(MinkowskiVec{0, std::sinh(s), std::cosh(s)});
    CHECK(dist_hyperboloid(apex, q) == doctest::Approx(s).epsilon(1e-12));
  }
  const auto p = HyperboloidPoint::lift(0.7, -0.2);
  CHECK(dist_hyperboloid(p, p) == 0.0);
}

TEST_CASE("raw-vector distance rejects spacelike separations") {
  CHECK_THROWS_AS(dist_hyperboloid(MinkowskiVec{0, 0, 1}, MinkowskiVec{1, 0, 0}), DomainError);
  // Rounding just below 1 is clamped.
  const MinkowskiVec p{0, 0, 1};
  CHECK(dist_hyperboloid(p, MinkowskiVec{0, 0, 1.0 - 1e-14}) == 0.0);
}

TEST_CASE("hyperboloid distance agrees with arccosh oracle, is symmetric and obeys the triangle inequality") {
  oracle::Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const auto a = oracle::random_point(rng, 4.0), b = oracle::random_point(rng, 4.0), c = oracle::random_point(rng, 4.0);
    const HyperboloidPoint p(a), q(b), r(c);
    const double dpq = dist_hyperboloid(p, q);
    CHECK(dpq == doctest::Approx(oracle::acosh_distance(a, b)).epsilon(1e-10));
    CHECK(dpq == doctest::Approx(dist_hyperboloid(q, p)).epsilon(1e-14));
    CHECK(dpq > 0.0);
    CHECK(dist_hyperboloid(p, r) <= dpq + dist_hyperboloid(q, r) + 1e-10);
  }
}

TEST_CASE("half-plane distance examples") {
  const HalfPlanePoint i(0, 1);
  CHECK(dist_halfplane(i, i) == 0.0);
  CHECK(dist_halfplane(i, HalfPlanePoint(0, std::numbers::e)) == doctest::Approx(1.0).epsilon(1e-15));
  oracle::Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const HalfPlanePoint a(rng.uniform(-3, 3), rng.uniform(0.05, 3)), b(rng.uniform(-3, 3), rng.uniform(0.05, 3));
    CHECK(dist_halfplane(a, b) == doctest::Approx(oracle::halfplane_distance(a.w(), b.w())).epsilon(1e-10));
    CHECK(dist_halfplane(a, b) == doctest::Approx(dist_halfplane(b, a)).epsilon(1e-15));
  }
}

TEST_CASE("one-parameter subgroups") {
  CHECK(max_entry_diff(boost_matrix(0.0), LorentzTransform()) == 0.0);
  CHECK(max_entry_diff(elliptic_matrix(0.0), LorentzTransform()) == 0.0);
  CHECK(max_entry_diff(parabolic_matrix(0.0), LorentzTransform()) == 0.0);
  const auto q = boost_matrix(0.8).apply(MinkowskiVec{0, 0, 1});
  CHECK(q.x == 0.0);
  CHECK(q.y == doctest::Approx(std::sinh(0.8)).epsilon(1e-15));
  CHECK(q.z == doctest::Approx(std::cosh(0.8)).epsilon(1e-15));

  oracle::Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    CHECK(max_entry_diff(elliptic_matrix(a) * elliptic_matrix(b), elliptic_matrix(a + b)) <= 1e-12);
    CHECK(max_entry_diff(boost_matrix(a) * boost_matrix(b), boost_matrix(a + b)) <= 1e-12 * std::cosh(std::abs(a) + std::abs(b)));
    CHECK(max_entry_diff(parabolic_matrix(a) * parabolic_matrix(b), parabolic_matrix(a + b)) <= 1e-12 * (1 + (a + b) * (a + b)));
  }
}

TEST_CASE("group product agrees with plain matrix multiplication") {
  oracle::Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_lorentz(rng), h = random_lorentz(rng);
    const auto ref = oracle::matmul(g.matrix(), h.matrix());
    const auto gh = g * h;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(gh(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-13));
  }
}

TEST_CASE("Lorentz transforms preserve the Minkowski product") {
  oracle::Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const auto g = random_lorentz(rng);
    const MinkowskiVec a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const MinkowskiVec b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(g(i, j)));
    CHECK(std::abs(minkowski_dot(g.apply(a), g.apply(b)) - minkowski_dot(a, b)) <= 1e-12 * scale * scale);
    const auto gi = g * g.inverse();
    CHECK(max_entry_diff(gi, LorentzTransform()) <= 1e-12 * scale * scale);
  }
}

TEST_CASE("Lorentz transform invariants are enforced") {
  Matrix3 m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  CHECK_NOTHROW(LorentzTransform{m});
  m[0][0] = -1;  // det = -1
  CHECK_THROWS_AS(LorentzTransform{m}, InvalidArgument);
  Matrix3 t{{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}};  // reverses time
  CHECK_THROWS_AS(LorentzTransform{t}, InvalidArgument);
  Matrix3 e{{{2, 0, 0}, {0, 0.5, 0}, {0, 0, 1}}};  // det 1 but not Lorentz
  CHECK_THROWS_AS(LorentzTransform{e}, InvalidArgument);
}

TEST_CASE("Moebius action") {
  const HalfPlanePoint w(0.3, 0.7);
  const auto id = MoebiusTransform().apply(w);
  CHECK(id.re() == w.re());
  CHECK(id.im() == w.im());
  const MoebiusTransform h(std::exp(0.5), 0, 0, std::exp(-0.5));
  const auto ei = h.apply(HalfPlanePoint(0, 1));
  CHECK(ei.re() == 0.0);
  CHECK(ei.im() == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK_THROWS_AS(MoebiusTransform(1, 1, 1, 1), InvalidArgument);

  oracle::Rng rng(6);
  for (int k = 0; k < 1000; ++k) {
    const auto g = random_moebius(rng);
    const HalfPlanePoint a(rng.uniform(-2, 2), rng.uniform(0.1, 2)), b(rng.uniform(-2, 2), rng.uniform(0.1, 2));
    const auto ga = g.apply(a), gb = g.apply(b);
    CHECK(ga.im() > 0.0);
    CHECK(dist_halfplane(ga, gb) == doctest::Approx(dist_halfplane(a, b)).epsilon(1e-10));
    const auto na = (-g).apply(a);
    CHECK(std::abs(na.w() - ga.w()) <= 1e-14 * std::abs(ga.w()));
    const auto h2 = random_moebius(rng);
    const auto composed = (g * h2).apply(a), sequential = g.apply(h2.apply(a));
    CHECK(std::abs(composed.w() - sequential.w()) <= 1e-11 * std::max(1.0, std::abs(sequential.w())));
  }
}

TEST_CASE("exponentials of the canonical generators") {
  using K = Sl2Generator::Kind;
  const HalfPlanePoint w(0.4, 1.3);
  for (K kind : {K::Elliptic, K::Hyperbolic, K::ParabolicPlus, K::ParabolicMinus}) {
    const auto g = exp_generator({kind, 1.7}, 0.0);
    CHECK(g.a() == 1.0);
    CHECK(g.b() == 0.0);
    CHECK(g.c() == 0.0);
    CHECK(g.d() == 1.0);
  }
  for (double t : {-1.0, 0.25, 2.0}) {
    const auto g = exp_generator({K::Hyperbolic, 1.3}, t);
    const auto gw = g.apply(w);
    CHECK(gw.re() == doctest::Approx(std::exp(1.3 * t) * w.re()).epsilon(1e-15));
    CHECK(gw.im() == doctest::Approx(std::exp(1.3 * t) * w.im()).epsilon(1e-15));
  }
  CHECK_THROWS_AS(exp_generator({K::Elliptic, 0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(exp_generator({K::Hyperbolic, -1.0}, 1.0), InvalidArgument);

  oracle::Rng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), om = rng.uniform(0.1, 2);
    for (K kind : {K::Elliptic, K::Hyperbolic, K::ParabolicPlus, K::ParabolicMinus}) {
      const auto ab = exp_generator({kind, om}, a) * exp_generator({kind, om}, b);
      const auto s = exp_generator({kind, om}, a + b);
      const double scale = std::max({1.0, std::abs(s.a()), std::abs(s.b()), std::abs(s.c()), std::abs(s.d())});
      const double plus = std::max({std::abs(ab.a() - s.a()), std::abs(ab.b() - s.b()), std::abs(ab.c() - s.c()),
                                    std::abs(ab.d() - s.d())});
      const double minus = std::max({std::abs(ab.a() + s.a()), std::abs(ab.b() + s.b()), std::abs(ab.c() + s.c()),
                                     std::abs(ab.d() + s.d())});
      CHECK(std::min(plus, minus) <= 1e-12 * scale * scale);
    }
  }
}

TEST_CASE("model conversion: centers, geodesic and round trips") {
  const auto i = hyperboloid_to_halfplane(HyperboloidPoint());
  CHECK(i.re() == doctest::Approx(0.0));
  CHECK(i.im() == doctest::Approx(1.0));
  const auto apex = halfplane_to_hyperboloid(HalfPlanePoint(0, 1));
  CHECK(apex.z() == doctest::Approx(1.0));

  for (double u = -4.0; u <= 4.0; u += 0.25) {
    const auto w = hyperboloid_to_halfplane(HyperboloidPoint(MinkowskiVec{0, std::sinh(u), std::cosh(u)}));
    CHECK(std::abs(w.w()) == doctest::Approx(1.0).epsilon(1e-13));
  }

  oracle::Rng rng(8);
  for (int k = 0; k < 1000; ++k) {
    // z up to about 1e4.
    const auto a = oracle::random_point(rng, 9.9), b = oracle::random_point(rng, 9.9);
    const HyperboloidPoint p(a), q(b);
    const auto wp = hyperboloid_to_halfplane(p), wq = hyperboloid_to_halfplane(q);
    const Complex ref = oracle::to_halfplane(a);
    CHECK(std::abs(wp.w() - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    const auto back = halfplane_to_hyperboloid(wp);
    CHECK(max_abs(back.vec() - p.vec()) <= 1e-12 * p.z());
    CHECK(dist_halfplane(wp, wq) == doctest::Approx(dist_hyperboloid(p, q)).epsilon(1e-10));

    const HalfPlanePoint w(rng.uniform(-5, 5), std::exp(rng.uniform(-4, 4)));
    const auto w2 = hyperboloid_to_halfplane(halfplane_to_hyperboloid(w));
    CHECK(std::abs(w2.w() - w.w()) <= 1e-12 * std::max(1.0, std::abs(w.w())));
  }
}

TEST_CASE("pushforward of velocities") {
  const HyperboloidPoint apex;
  CHECK(pushforward_velocity(apex, {0, 0, 0}) == Complex(0, 0));
  const auto zero = pushforward_velocity(HalfPlanePoint(0.2, 0.5), Complex(0, 0));
  CHECK(max_abs(zero) == 0.0);

  oracle::Rng rng(9);
  for (int k = 0; k < 300; ++k) {
    const auto a = oracle::random_point(rng, 3.0);
    const HyperboloidPoint p(a);
    const auto v = oracle::random_tangent(rng, a, 2.0);
    const Complex wv = pushforward_velocity(p, v);
    const auto wp = hyperboloid_to_halfplane(p);
    CHECK(speed(wp, wv) == doctest::Approx(speed(TangentVec(p, v))).epsilon(1e-8));
    const auto back = pushforward_velocity(wp, wv);
    CHECK(max_abs(back - v) <= 1e-9 * std::max(1.0, max_abs(v)));
    CHECK(std::abs(minkowski_dot(a, back)) <= 1e-9 * std::max(1.0, max_abs(v)) * a.z);
  }
}

TEST_CASE("pushforward matches the time derivative of a converted boost orbit") {
  // Curve t -> G B(omega t) q0 in the hyperboloid, converted to the half plane.
  oracle::Rng rng(10);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_lorentz(rng);
    const double omega = rng.uniform(-1.5, 1.5), t0 = rng.uniform(-0.5, 0.5);
    const auto q0 = HyperboloidPoint(oracle::random_point(rng, 1.0));
    auto curve = [&](double t) { return g.apply(boost_matrix(omega * t).apply(q0)); };
    auto w_of = [&](double t) {
      const auto w = hyperboloid_to_halfplane(curve(t));
      return std::vector<double>{w.re(), w.im()};
    };
    const auto fd = oracle::richardson(w_of, t0);
    const auto q = curve(t0);
    // d/dt B(omega t) q0 = omega K B q0 with K the (y, z) generator.
    const auto bq = boost_matrix(omega * t0).apply(q0.vec());
    const auto v = g.apply(MinkowskiVec{0, omega * bq.z, omega * bq.y});
    const auto acc = g.apply(MinkowskiVec{0, omega * omega * bq.y, omega * omega * bq.z});
    const Complex wv = pushforward_velocity(q, v);
    CHECK(std::abs(wv - Complex(fd.d1[0], fd.d1[1])) <= 1e-8 * std::max(1.0, std::abs(wv)));
    const auto jet = to_halfplane_jet({q.vec(), v, acc});
    CHECK(std::abs(jet.wdd - Complex(fd.d2[0], fd.d2[1])) <= 1e-6 * std::max(1.0, std::abs(jet.wdd)));
  }
}

TEST_CASE("jets round-trip between the models") {
  oracle::Rng rng(12);
  for (int k = 0; k < 300; ++k) {
    const HalfPlaneJet j{Complex(rng.uniform(-2, 2), rng.uniform(0.2, 2)), Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                         Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))};
    const auto h = to_hyperboloid_jet(j);
    CHECK(std::abs(minkowski_dot(h.q, h.qd)) <= 1e-12 * h.q.z * max_abs(h.qd));
    // Second-order constraint: q.q'' + q'.q' = 0.
    CHECK(std::abs(minkowski_dot(h.q, h.qdd) + minkowski_dot(h.qd, h.qd)) <=
          1e-11 * std::max(1.0, h.q.z * (max_abs(h.qdd) + max_abs(h.qd) * max_abs(h.qd))));
    const auto back = to_halfplane_jet(h);
    CHECK(std::abs(back.w - j.w) <= 1e-12 * std::abs(j.w));
    CHECK(std::abs(back.wd - j.wd) <= 1e-11 * std::max(1.0, std::abs(j.wd)));
    CHECK(std::abs(back.wdd - j.wdd) <= 1e-10 * std::max(1.0, std::abs(j.wdd)));
  }
}
