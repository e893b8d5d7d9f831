#pragma once

namespace hyperre {

// Second-order forward-mode jet: the value, first and second derivative of a
// quantity along a curve t -> x(t) at t = 0. Arithmetic propagates the chain
// rule exactly, so evaluating a rational map on jets yields the pushed-forward
// velocity and acceleration without finite differences.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet(double value, double first, double second) : v(value), d(first), dd(second) {}
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.d, -a.dd}; }
constexpr Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
constexpr Jet operator/(Jet a, Jet b) {
  // q = a / b  =>  a = q b, solve order by order.
  const double q = a.v / b.v;
  const double qd = (a.d - q * b.d) / b.v;
  const double qdd = (a.dd - 2.0 * qd * b.d - q * b.dd) / b.v;
  return {q, qd, qdd};
}

}  // namespace hyperre
