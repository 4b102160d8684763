#include "singquad/sources.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace singquad::sources {

double gaussian(double r, double a) {
  const double t = r / a;
  return std::exp(-t * t);
}

double bump(double r, double a) {
  const double t = r / a;
  const double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(12.0 - 12.0 / s);
}

double poly7(double r, double a) {
  const double t = r / a;
  const double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  const double s2 = s * s;
  return s2 * s2 * s2 * s;
}

double eval(Kind kind, double r) {
  switch (kind) {
    case Kind::Gaussian: return gaussian(r);
    case Kind::Bump: return bump(r);
    case Kind::Poly7: return poly7(r);
  }
  return 0.0;
}

Kind parse(const char* name) {
  const std::string s(name);
  if (s == "G" || s == "gaussian") return Kind::Gaussian;
  if (s == "B" || s == "bump") return Kind::Bump;
  if (s == "P" || s == "poly7") return Kind::Poly7;
  throw std::invalid_argument("unknown source '" + s + "' (expected G, B or P)");
}

}  // namespace singquad::sources
