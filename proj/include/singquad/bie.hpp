#pragma once

#include "singquad/curve.hpp"
#include "singquad/gmres.hpp"

#include <numbers>
#include <vector>

namespace singquad {

struct BieConfig {
  int N = 160;                    // nodes per curve, t_j = 2 pi j / N; must be even
  double R = std::numbers::pi;    // cut-off radius in the parameter variable
  GmresConfig gmres{};
};

struct BieSolution {
  std::vector<Curve> curves;
  double k = 0.0;
  int N = 0;
  std::vector<std::complex<double>> psi;  // curve-major, N samples per curve
  GmresResult stats;
};

/// (i/4) H^(1)_0(k r).
std::complex<double> helmholtz2d(double k, double r);

/// Dense matrix of 1/2 + D - i k S on the nodes of all curves, row-major.
/// Self blocks use corrected weights for log|s - t|, other blocks the trapezoidal rule.
std::vector<std::complex<double>> bie_matrix(const std::vector<Curve>& curves, double k, const BieConfig& cfg);

/// Solves (1/2 + D - i k S) psi = rhs; rhs holds the boundary values at the nodes.
BieSolution solve_bie_data(const std::vector<Curve>& curves, double k, const cvec& rhs, const BieConfig& cfg);
/// Sound-soft scattering of e^{i k d.x}: rhs = -u^i.
BieSolution solve_bie(const std::vector<Curve>& curves, double k, Vec2 direction, const BieConfig& cfg);

/// e^{-i pi/4} / sqrt(8 pi k) int (k n.xh + k) e^{-i k xh.y} psi |y'| dt, trapezoidal rule.
std::vector<std::complex<double>> far_field(const BieSolution& sol, const std::vector<Vec2>& directions);
/// (D - i k S) psi at points off the curves.
std::vector<std::complex<double>> scattered_field(const BieSolution& sol, const std::vector<Vec2>& points);
/// u^i + u^s.
std::vector<std::complex<double>> exterior_field(const BieSolution& sol, Vec2 direction, const std::vector<Vec2>& points);

}  // namespace singquad
