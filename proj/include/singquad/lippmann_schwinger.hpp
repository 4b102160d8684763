#pragma once

#include "singquad/convolve.hpp"
#include "singquad/curve.hpp"
#include "singquad/gmres.hpp"

#include <functional>
#include <string>

namespace singquad {

/// Refractive index n(x) of an inhomogeneous medium; n - 1 must vanish near the domain edge.
struct Medium {
  std::string name;
  std::function<double(double, double)> index;
};

/// n = 1 - amp * sum_c exp(2 - 2 / (1 - |x - c|^2)) over unit disks around the centers.
Medium bump_medium(std::vector<Vec2> centers, double amp = 0.9);
/// Centers (1,0), (-1,3), (-1,-3).
Medium three_bump_medium();
Medium homogeneous_medium();

struct LsConfig {
  double k = 0.0;
  double half_width = 6.0;  // domain [-L, L]^2
  int N = 160;              // grid points per unit of the computational cube
  Vec2 direction{1.0, 0.0};
  int refine = 1;
  GmresConfig gmres{};
};

struct LsSolution {
  GridSpec grid;
  std::vector<double> origin;
  std::vector<cplx> u;  // total field on the (N+1)^2 window
  GmresResult stats;
  std::size_t unknowns = 0;  // points where n != 1
};

/// Solves u = u^i + k^2 K^k_2 * ((n - 1) u) on [-L, L]^2 with the corrected convolution.
/// GMRES runs on the support of n - 1 only; the field elsewhere follows from one more
/// convolution.
LsSolution solve_lippmann_schwinger(const Medium& medium, const LsConfig& cfg);

}  // namespace singquad
