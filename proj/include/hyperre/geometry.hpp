#pragma once

// Geometry of the hyperbolic plane (curvature -1) in two isometric models:
// the Weierstrass model, i.e. the upper sheet of x^2 + y^2 - z^2 = -1 in
// Minkowski space R^{2,1}, and the Poincare upper half plane Im w > 0.

#include <array>
#include <complex>

#include "hyperre/jet.hpp"

namespace hyperre {

using Complex = std::complex<double>;

/// Tolerance used by the model invariants (scaled by the magnitude of the
/// coordinates where the check involves a cancelling sum of squares).
inline constexpr double kModelTolerance = 1e-12;

class HalfPlanePoint;

struct MinkowskiVec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  MinkowskiVec& operator+=(const MinkowskiVec& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  MinkowskiVec& operator-=(const MinkowskiVec& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  MinkowskiVec& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend MinkowskiVec operator+(MinkowskiVec a, const MinkowskiVec& b) { return a += b; }
  friend MinkowskiVec operator-(MinkowskiVec a, const MinkowskiVec& b) { return a -= b; }
  friend MinkowskiVec operator*(double s, MinkowskiVec a) { return a *= s; }
  friend MinkowskiVec operator*(MinkowskiVec a, double s) { return a *= s; }
  friend MinkowskiVec operator-(MinkowskiVec a) { return a *= -1.0; }
  friend bool operator==(const MinkowskiVec&, const MinkowskiVec&) = default;
};

/// Lorentz product with signature (+, +, -).
constexpr double minkowski_dot(const MinkowskiVec& a, const MinkowskiVec& b) {
  return a.x * b.x + a.y * b.y - a.z * b.z;
}

/// Largest absolute component.
double max_abs(const MinkowskiVec& v);

/// A point on the upper sheet of the hyperboloid.
class HyperboloidPoint {
 public:
  /// The apex (0, 0, 1).
  HyperboloidPoint() : v_{0.0, 0.0, 1.0} {}

  /// Validates v.v = -1 (relative to z^2) and z >= 1; throws InvalidArgument.
  explicit HyperboloidPoint(const MinkowskiVec& v);

  /// The unique point above (x, y).
  static HyperboloidPoint lift(double x, double y);

  /// Rescales an arbitrary future-timelike vector onto the sheet.
  static HyperboloidPoint normalize(const MinkowskiVec& v);

  const MinkowskiVec& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

 private:
  struct Unchecked {};
  HyperboloidPoint(const MinkowskiVec& v, Unchecked) : v_(v) {}
  friend HyperboloidPoint halfplane_to_hyperboloid(const HalfPlanePoint&);

  MinkowskiVec v_;
};

bool on_hyperboloid(const MinkowskiVec& v, double tol = kModelTolerance);

/// A velocity vector attached to a point of the hyperboloid.
class TangentVec {
 public:
  /// Throws InvalidArgument unless base.v = 0 within tolerance.
  TangentVec(const HyperboloidPoint& base, const MinkowskiVec& v);

  /// Removes the normal component: v + (base.v) base.
  static TangentVec project(const HyperboloidPoint& base, const MinkowskiVec& v);

  const HyperboloidPoint& base() const { return base_; }
  const MinkowskiVec& vec() const { return v_; }

 private:
  HyperboloidPoint base_;
  MinkowskiVec v_;
};

class HalfPlanePoint {
 public:
  HalfPlanePoint() : re_(0.0), im_(1.0) {}
  /// Throws InvalidArgument unless im > 0 and both parts are finite.
  HalfPlanePoint(double re, double im);
  explicit HalfPlanePoint(Complex w) : HalfPlanePoint(w.real(), w.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  Complex w() const { return {re_, im_}; }

 private:
  double re_;
  double im_;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Orientation- and time-orientation-preserving isometry of R^{2,1}
/// (m^T J m = J, det m = 1, m[2][2] > 0).
class LorentzTransform {
 public:
  LorentzTransform();  // identity
  /// Validates the invariants; throws InvalidArgument.
  explicit LorentzTransform(const Matrix3& m);

  const Matrix3& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_[row][col]; }

  MinkowskiVec apply(const MinkowskiVec& v) const;
  HyperboloidPoint apply(const HyperboloidPoint& p) const;
  LorentzTransform inverse() const;

  friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b);

 private:
  struct Unchecked {};
  LorentzTransform(const Matrix3& m, Unchecked) : m_(m) {}
  friend LorentzTransform elliptic_matrix(double);
  friend LorentzTransform boost_matrix(double);
  friend LorentzTransform parabolic_matrix(double);

  Matrix3 m_;
};

/// Rotation about the z axis by theta.
LorentzTransform elliptic_matrix(double theta);
/// Boost in the (y, z) plane: translation by s along the geodesic x = 0.
LorentzTransform boost_matrix(double s);
/// Parabolic (horocyclic) one-parameter subgroup.
LorentzTransform parabolic_matrix(double t);

/// Real Moebius transformation w -> (a w + b) / (c w + d) with ad - bc = 1.
class MoebiusTransform {
 public:
  MoebiusTransform() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}
  /// Throws InvalidArgument unless ad - bc = 1 within tolerance.
  MoebiusTransform(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  HalfPlanePoint apply(const HalfPlanePoint& w) const;
  MoebiusTransform operator-() const { return {-a_, -b_, -c_, -d_}; }
  friend MoebiusTransform operator*(const MoebiusTransform& g, const MoebiusTransform& h);

 private:
  double a_, b_, c_, d_;
};

/// Canonical representatives of the adjoint orbits in sl(2, R).
struct Sl2Generator {
  enum class Kind { Elliptic, Hyperbolic, ParabolicPlus, ParabolicMinus };

  Kind kind = Kind::Elliptic;
  double omega = 1.0;  // ignored for the parabolic kinds

  /// Throws InvalidArgument if omega <= 0 for the elliptic/hyperbolic kinds.
  void validate() const;
};

/// exp(t * xi) for the generator xi, in closed form.
MoebiusTransform exp_generator(const Sl2Generator& g, double t);

/// Hyperbolic distance arccosh(-p.q). Raw vectors are checked: throws
/// DomainError if -p.q < 1 beyond tolerance.
double dist_hyperboloid(const HyperboloidPoint& p, const HyperboloidPoint& q);
double dist_hyperboloid(const MinkowskiVec& p, const MinkowskiVec& q);
double dist_halfplane(const HalfPlanePoint& w1, const HalfPlanePoint& w2);

/// sinh^2 of the distance between two hyperboloid points, accurate for nearby
/// points (equals (p.q)^2 - 1).
double sinh_sq_distance(const MinkowskiVec& p, const MinkowskiVec& q);

// Model conversion: hyperboloid -> Poincare disk zeta = (x + iy)/(1 + z) ->
// half plane w = i (1 + zeta)/(1 - zeta). Composed in closed form this is
// w = (-y + i)/(z - x), with inverse x = (|w|^2 - 1)/(2 Im w),
// y = -Re w / Im w, z = (|w|^2 + 1)/(2 Im w). The apex maps to i and the
// geodesic x = 0 onto the unit half circle.
HalfPlanePoint hyperboloid_to_halfplane(const HyperboloidPoint& p);
HyperboloidPoint halfplane_to_hyperboloid(const HalfPlanePoint& w);

/// Position, velocity and acceleration of a curve in the half plane.
struct HalfPlaneJet {
  Complex w;
  Complex wd;
  Complex wdd;
};

/// Position, velocity and acceleration of a curve in Minkowski space.
struct HyperboloidJet {
  MinkowskiVec q;
  MinkowskiVec qd;
  MinkowskiVec qdd;
};

/// Differential (and second-order chain rule) of the conversion maps.
HalfPlaneJet to_halfplane_jet(const HyperboloidJet& jet);
HyperboloidJet to_hyperboloid_jet(const HalfPlaneJet& jet);

Complex pushforward_velocity(const HyperboloidPoint& p, const MinkowskiVec& velocity);
MinkowskiVec pushforward_velocity(const HalfPlanePoint& w, Complex velocity);

/// Riemannian speed in each model.
double speed(const TangentVec& v);
double speed(const HalfPlanePoint& w, Complex velocity);

}  // namespace hyperre
