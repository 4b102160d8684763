#include "singquad/lippmann_schwinger.hpp"

#include <cmath>
#include <stdexcept>

namespace singquad {

Medium bump_medium(std::vector<Vec2> centers, double amp) {
  Medium m;
  m.name = "bumps";
  m.index = [centers = std::move(centers), amp](double x, double y) {
    double s = 0.0;
    for (const Vec2& c : centers) {
      const double d2 = (x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1]);
      if (d2 < 1.0) s += std::exp(2.0 - 2.0 / (1.0 - d2));
    }
    return 1.0 - amp * s;
  };
  return m;
}

Medium three_bump_medium() {
  Medium m = bump_medium({Vec2{1.0, 0.0}, Vec2{-1.0, 3.0}, Vec2{-1.0, -3.0}});
  m.name = "three-bump";
  return m;
}

Medium homogeneous_medium() { return Medium{"homogeneous", [](double, double) { return 1.0; }}; }

LsSolution solve_lippmann_schwinger(const Medium& medium, const LsConfig& cfg) {
  if (!(cfg.k > 0.0)) throw std::invalid_argument("solve_lippmann_schwinger: k must be positive");
  if (!(cfg.half_width > 0.0) || cfg.N < 2) throw std::invalid_argument("solve_lippmann_schwinger: bad grid");
  const double dn = std::hypot(cfg.direction[0], cfg.direction[1]);
  if (!(dn > 0.0)) throw std::invalid_argument("solve_lippmann_schwinger: zero incident direction");
  const Vec2 d{cfg.direction[0] / dn, cfg.direction[1] / dn};

  LsSolution sol;
  const double L = cfg.half_width;
  sol.grid = GridSpec::isotropic(2, cfg.N, 2.0 * L);
  sol.origin = {-L, -L};
  BuildOptions opts;
  opts.refine = cfg.refine;
  const Convolver conv(build_spectrum(sol.grid, helmholtz_even(2, cfg.k), opts));

  const std::size_t M = conv.window_size();
  std::vector<cplx> contrast(M), ui(M);
  std::vector<std::size_t> support;
  double edge = 0.0;
  const int n1 = cfg.N + 1;
  for (std::size_t i = 0; i < M; ++i) {
    const auto x = window_point(sol.grid, sol.origin, i);
    const double c = medium.index(x[0], x[1]) - 1.0;
    contrast[i] = c;
    ui[i] = std::exp(cplx(0.0, cfg.k * (d[0] * x[0] + d[1] * x[1])));
    if (c != 0.0) support.push_back(i);
    const int a = static_cast<int>(i / n1), b = static_cast<int>(i % n1);
    if (a == 0 || b == 0 || a == cfg.N || b == cfg.N) edge = std::max(edge, std::fabs(c));
  }
  if (edge != 0.0) throw std::invalid_argument("solve_lippmann_schwinger: n - 1 does not vanish on the domain edge");
  sol.unknowns = support.size();
  const double k2 = cfg.k * cfg.k;

  std::vector<cplx> full(M), out(M);
  // v_S -> v_S - k^2 [K (c v)]_S
  const LinearOperator op = [&](const cvec& v, cvec& r) {
    std::fill(full.begin(), full.end(), 0.0);
    for (std::size_t s = 0; s < support.size(); ++s) full[support[s]] = contrast[support[s]] * v[s];
    conv.apply(full, out);
    r.resize(v.size());
    for (std::size_t s = 0; s < support.size(); ++s) r[s] = v[s] - k2 * out[support[s]];
  };
  cvec rhs(support.size());
  for (std::size_t s = 0; s < support.size(); ++s) rhs[s] = ui[support[s]];
  sol.stats = gmres(op, rhs, cfg.gmres);

  std::fill(full.begin(), full.end(), 0.0);
  for (std::size_t s = 0; s < support.size(); ++s) full[support[s]] = contrast[support[s]] * sol.stats.x[s];
  conv.apply(full, out);
  sol.u.resize(M);
  for (std::size_t i = 0; i < M; ++i) sol.u[i] = ui[i] + k2 * out[i];
  return sol;
}

}  // namespace singquad
