#pragma once

#include <array>
#include <functional>
#include <string>

namespace singquad {

using Vec2 = std::array<double, 2>;

/// Smooth closed curve t in [0, 2 pi) -> R^2, counter-clockwise.
struct Curve {
  std::string name;
  std::function<Vec2(double)> y, dy, ddy;

  static Curve kite(Vec2 center);
  static Curve circle(Vec2 center, double radius);

  Vec2 point(double t) const { return y(t); }
  double speed(double t) const;
  /// Outward unit normal (y2', -y1') / |y'|.
  Vec2 normal(double t) const;
  /// Signed curvature, positive on convex parts.
  double curvature(double t) const;
  /// Checks |y'| > 0 on `samples` points and closure to 1e-12; throws std::invalid_argument.
  void validate(int samples = 256) const;
};

}  // namespace singquad
