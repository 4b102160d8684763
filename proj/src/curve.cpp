#include "singquad/curve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace singquad {

Curve Curve::kite(Vec2 c) {
  Curve k;
  k.name = "kite";
  k.y = [c](double t) { return Vec2{c[0] + std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, c[1] + 1.5 * std::sin(t)}; };
  k.dy = [](double t) { return Vec2{-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)}; };
  k.ddy = [](double t) { return Vec2{-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)}; };
  return k;
}

Curve Curve::circle(Vec2 c, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("Curve::circle: radius must be positive");
  Curve k;
  k.name = "circle";
  k.y = [c, a](double t) { return Vec2{c[0] + a * std::cos(t), c[1] + a * std::sin(t)}; };
  k.dy = [a](double t) { return Vec2{-a * std::sin(t), a * std::cos(t)}; };
  k.ddy = [a](double t) { return Vec2{-a * std::cos(t), -a * std::sin(t)}; };
  return k;
}

double Curve::speed(double t) const {
  const Vec2 d = dy(t);
  return std::hypot(d[0], d[1]);
}

Vec2 Curve::normal(double t) const {
  const Vec2 d = dy(t);
  const double s = std::hypot(d[0], d[1]);
  return {d[1] / s, -d[0] / s};
}

double Curve::curvature(double t) const {
  const Vec2 d = dy(t), dd = ddy(t);
  const double s = std::hypot(d[0], d[1]);
  return (d[0] * dd[1] - d[1] * dd[0]) / (s * s * s);
}

void Curve::validate(int samples) const {
  if (!y || !dy || !ddy) throw std::invalid_argument("Curve: missing parameterization");
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < samples; ++j)
    if (!(speed(two_pi * j / samples) > 0.0)) throw std::invalid_argument("Curve: y' vanishes");
  const Vec2 a = y(0.0), b = y(two_pi), da = dy(0.0), db = dy(two_pi);
  if (std::hypot(a[0] - b[0], a[1] - b[1]) > 1e-12 || std::hypot(da[0] - db[0], da[1] - db[1]) > 1e-12)
    throw std::invalid_argument("Curve: parameterization is not closed");
}

}  // namespace singquad
