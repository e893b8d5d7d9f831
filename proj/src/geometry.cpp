#include "hyperre/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperre/error.hpp"

namespace hyperre {
namespace {

bool finite(const MinkowskiVec& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

std::string describe(const MinkowskiVec& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
  return os.str();
}

// Templated conversions so the same expressions serve plain values and jets.
template <class T>
struct HalfPlaneCoords {
  T re, im;
};

template <class T>
struct MinkowskiCoords {
  T x, y, z;
};

// w = (-y + i) / (z - x). The caller supplies z - x, computed stably.
template <class T>
HalfPlaneCoords<T> to_halfplane(const MinkowskiCoords<T>& q, const T& z_minus_x) {
  return {-q.y / z_minus_x, T(1.0) / z_minus_x};
}

template <class T>
MinkowskiCoords<T> to_hyperboloid(const HalfPlaneCoords<T>& w) {
  const T norm_sq = w.re * w.re + w.im * w.im;
  const T two_im = T(2.0) * w.im;
  return {(norm_sq - T(1.0)) / two_im, -w.re / w.im, (norm_sq + T(1.0)) / two_im};
}

// z - x without cancellation for points far out in the +x direction.
double stable_z_minus_x(double x, double y, double z) {
  if (x > 0.0) return (1.0 + y * y) / (z + x);
  return z - x;
}

double matrix_scale(const Matrix3& m) {
  double s = 1.0;
  for (const auto& row : m)
    for (double e : row) s = std::max(s, std::abs(e));
  return s;
}

}  // namespace

double max_abs(const MinkowskiVec& v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

bool on_hyperboloid(const MinkowskiVec& v, double tol) {
  if (!finite(v) || v.z < 1.0 - tol) return false;
  return std::abs(minkowski_dot(v, v) + 1.0) <= tol * std::max(1.0, v.z * v.z);
}

HyperboloidPoint::HyperboloidPoint(const MinkowskiVec& v) : v_(v) {
  if (!on_hyperboloid(v)) throw InvalidArgument("point is not on the upper hyperboloid sheet: " + describe(v));
}

HyperboloidPoint HyperboloidPoint::lift(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidArgument("non-finite coordinates");
  return HyperboloidPoint({x, y, std::sqrt(1.0 + x * x + y * y)}, Unchecked{});
}

HyperboloidPoint HyperboloidPoint::normalize(const MinkowskiVec& v) {
  const double n = -minkowski_dot(v, v);
  if (!finite(v) || !(n > 0.0) || v.z <= 0.0)
    throw InvalidArgument("vector is not future timelike: " + describe(v));
  return HyperboloidPoint(v * (1.0 / std::sqrt(n)), Unchecked{});
}

TangentVec::TangentVec(const HyperboloidPoint& base, const MinkowskiVec& v) : base_(base), v_(v) {
  const double scale = std::max(1.0, max_abs(base.vec()) * max_abs(v));
  if (!finite(v) || std::abs(minkowski_dot(base.vec(), v)) > kModelTolerance * scale)
    throw InvalidArgument("velocity " + describe(v) + " is not tangent at " + describe(base.vec()));
}

TangentVec TangentVec::project(const HyperboloidPoint& base, const MinkowskiVec& v) {
  const double s = minkowski_dot(base.vec(), v);
  return TangentVec(base, v + s * base.vec());
}

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0))
    throw InvalidArgument("point is not in the upper half plane");
}

LorentzTransform::LorentzTransform() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

LorentzTransform::LorentzTransform(const Matrix3& m) : m_(m) {
  constexpr std::array<double, 3> j{1.0, 1.0, -1.0};
  const double scale = matrix_scale(m);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double g = 0.0;  // (m^T J m)[r][c]
      for (int k = 0; k < 3; ++k) g += m[k][r] * j[k] * m[k][c];
      const double expect = r == c ? j[r] : 0.0;
      if (!std::isfinite(g) || std::abs(g - expect) > kModelTolerance * scale * scale)
        throw InvalidArgument("matrix does not preserve the Lorentz product");
    }
  }
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::abs(det - 1.0) > kModelTolerance * scale * scale * scale)
    throw InvalidArgument("Lorentz matrix must have determinant 1");
  if (!(m[2][2] > 0.0)) throw InvalidArgument("Lorentz matrix must preserve the upper sheet");
}

MinkowskiVec LorentzTransform::apply(const MinkowskiVec& v) const {
  return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
          m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
          m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

HyperboloidPoint LorentzTransform::apply(const HyperboloidPoint& p) const {
  return HyperboloidPoint(apply(p.vec()));
}

LorentzTransform LorentzTransform::inverse() const {
  // m^{-1} = J m^T J
  constexpr std::array<double, 3> j{1.0, 1.0, -1.0};
  Matrix3 inv{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) inv[r][c] = j[r] * m_[c][r] * j[c];
  return LorentzTransform(inv, Unchecked{});
}

LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
  Matrix3 p{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) p[r][c] += a.m_[r][k] * b.m_[k][c];
  return LorentzTransform(p, LorentzTransform::Unchecked{});
}

LorentzTransform elliptic_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return LorentzTransform(Matrix3{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}}, LorentzTransform::Unchecked{});
}

LorentzTransform boost_matrix(double s) {
  const double ch = std::cosh(s), sh = std::sinh(s);
  return LorentzTransform(Matrix3{{{1.0, 0.0, 0.0}, {0.0, ch, sh}, {0.0, sh, ch}}}, LorentzTransform::Unchecked{});
}

LorentzTransform parabolic_matrix(double t) {
  const double h = 0.5 * t * t;
  return LorentzTransform(Matrix3{{{1.0, -t, t}, {t, 1.0 - h, h}, {t, -h, 1.0 + h}}}, LorentzTransform::Unchecked{});
}

MoebiusTransform::MoebiusTransform(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  const double ad = a * d, bc = b * c;
  if (!std::isfinite(ad) || !std::isfinite(bc) ||
      std::abs(ad - bc - 1.0) > kModelTolerance * std::max({1.0, std::abs(ad), std::abs(bc)}))
    throw InvalidArgument("Moebius matrix must have determinant 1");
}

HalfPlanePoint MoebiusTransform::apply(const HalfPlanePoint& w) const {
  const double x = w.re(), y = w.im();
  const double den_re = c_ * x + d_, den_im = c_ * y;
  const double den = den_re * den_re + den_im * den_im;
  // Im(g w) = Im(w) / |c w + d|^2 since ad - bc = 1.
  const double re = ((a_ * x + b_) * den_re + a_ * y * den_im) / den;
  return {re, y / den};
}

MoebiusTransform operator*(const MoebiusTransform& g, const MoebiusTransform& h) {
  return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_, g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

void Sl2Generator::validate() const {
  const bool needs_omega = kind == Kind::Elliptic || kind == Kind::Hyperbolic;
  if (needs_omega && !(omega > 0.0 && std::isfinite(omega)))
    throw InvalidArgument("elliptic and hyperbolic generators need omega > 0");
}

MoebiusTransform exp_generator(const Sl2Generator& g, double t) {
  g.validate();
  switch (g.kind) {
    case Sl2Generator::Kind::Elliptic: {
      const double c = std::cos(0.5 * g.omega * t), s = std::sin(0.5 * g.omega * t);
      return {c, -s, s, c};
    }
    case Sl2Generator::Kind::Hyperbolic: {
      const double h = 0.5 * g.omega * t;
      return {std::exp(h), 0.0, 0.0, std::exp(-h)};
    }
    case Sl2Generator::Kind::ParabolicPlus:
      return {1.0, t, 0.0, 1.0};
    case Sl2Generator::Kind::ParabolicMinus:
      return {1.0, -t, 0.0, 1.0};
  }
  throw InvalidArgument("unknown generator kind");
}

double sinh_sq_distance(const MinkowskiVec& p, const MinkowskiVec& q) {
  const double c = -minkowski_dot(p, q);  // cosh d
  if (c > 2.0) return (c - 1.0) * (c + 1.0);
  // Chord form: (p - q).(p - q) = 4 sinh^2(d/2) and sinh^2 d = chord (1 + chord/4).
  const MinkowskiVec diff = p - q;
  const double chord = std::max(0.0, minkowski_dot(diff, diff));
  return chord * (1.0 + 0.25 * chord);
}

double dist_hyperboloid(const MinkowskiVec& p, const MinkowskiVec& q) {
  const double c = -minkowski_dot(p, q);
  const double scale = std::max({1.0, p.z, q.z});
  if (!std::isfinite(c) || c < 1.0 - kModelTolerance * scale * scale)
    throw DomainError("arccosh argument below 1: points are not on the hyperboloid");
  if (c > 2.0) return std::acosh(c);
  const MinkowskiVec diff = p - q;
  const double chord = std::max(0.0, minkowski_dot(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord));
}

double dist_hyperboloid(const HyperboloidPoint& p, const HyperboloidPoint& q) {
  return dist_hyperboloid(p.vec(), q.vec());
}

double dist_halfplane(const HalfPlanePoint& w1, const HalfPlanePoint& w2) {
  // cosh d = 1 + |w1 - w2|^2 / (2 y1 y2)
  return 2.0 * std::asinh(std::abs(w1.w() - w2.w()) / (2.0 * std::sqrt(w1.im() * w2.im())));
}

HalfPlanePoint hyperboloid_to_halfplane(const HyperboloidPoint& p) {
  const MinkowskiCoords<double> q{p.x(), p.y(), p.z()};
  const auto w = to_halfplane(q, stable_z_minus_x(p.x(), p.y(), p.z()));
  return {w.re, w.im};
}

HyperboloidPoint halfplane_to_hyperboloid(const HalfPlanePoint& w) {
  const auto q = to_hyperboloid(HalfPlaneCoords<double>{w.re(), w.im()});
  return HyperboloidPoint({q.x, q.y, q.z}, HyperboloidPoint::Unchecked{});
}

HalfPlaneJet to_halfplane_jet(const HyperboloidJet& jet) {
  const MinkowskiCoords<Jet> q{{jet.q.x, jet.qd.x, jet.qdd.x},
                               {jet.q.y, jet.qd.y, jet.qdd.y},
                               {jet.q.z, jet.qd.z, jet.qdd.z}};
  Jet den = q.z - q.x;
  den.v = stable_z_minus_x(jet.q.x, jet.q.y, jet.q.z);
  const auto w = to_halfplane(q, den);
  return {{w.re.v, w.im.v}, {w.re.d, w.im.d}, {w.re.dd, w.im.dd}};
}

HyperboloidJet to_hyperboloid_jet(const HalfPlaneJet& jet) {
  const HalfPlaneCoords<Jet> w{{jet.w.real(), jet.wd.real(), jet.wdd.real()},
                               {jet.w.imag(), jet.wd.imag(), jet.wdd.imag()}};
  const auto q = to_hyperboloid(w);
  return {{q.x.v, q.y.v, q.z.v}, {q.x.d, q.y.d, q.z.d}, {q.x.dd, q.y.dd, q.z.dd}};
}

Complex pushforward_velocity(const HyperboloidPoint& p, const MinkowskiVec& velocity) {
  return to_halfplane_jet({p.vec(), velocity, {}}).wd;
}

MinkowskiVec pushforward_velocity(const HalfPlanePoint& w, Complex velocity) {
  return to_hyperboloid_jet({w.w(), velocity, {}}).qd;
}

double speed(const TangentVec& v) { return std::sqrt(std::max(0.0, minkowski_dot(v.vec(), v.vec()))); }

double speed(const HalfPlanePoint& w, Complex velocity) { return std::abs(velocity) / w.im(); }

}  // namespace hyperre
