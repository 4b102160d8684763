#pragma once

namespace singquad::sources {

/// exp(-(r/a)^2), default a = 1/2.
double gaussian(double r, double a = 0.5);
/// exp(12 - 12 / (1 - (r/a)^2)) inside r < a, default a = 2.
double bump(double r, double a = 2.0);
/// max(0, 1 - (r/a)^2)^7, default a = 2.
double poly7(double r, double a = 2.0);

enum class Kind { Gaussian, Bump, Poly7 };
double eval(Kind kind, double r);
Kind parse(const char* name);  // "G", "B", "P"

}  // namespace singquad::sources
