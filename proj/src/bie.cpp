#include "singquad/bie.hpp"

#include "singquad/quadrature.hpp"
#include "singquad/singularity.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <stdexcept>

namespace singquad {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Node {
  Vec2 y, n;
  double speed, kappa;
};

std::vector<Node> nodes(const Curve& c, int N) {
  std::vector<Node> out(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const double t = 2.0 * kPi * j / N;
    out[static_cast<std::size_t>(j)] = Node{c.point(t), c.normal(t), c.speed(t), c.curvature(t)};
  }
  return out;
}

// D - i k S for target x and source node q, together with the coefficient of log r.
struct Combined {
  cplx full, log_coeff;
};

Combined combined(double k, const Vec2& x, const Node& q) {
  const double dx = q.y[0] - x[0], dy = q.y[1] - x[1];
  const double r = std::hypot(dx, dy);
  const double z = k * r;
  const double j0 = boost::math::cyl_bessel_j(0, z), j1 = boost::math::cyl_bessel_j(1, z);
  const double y0 = boost::math::cyl_neumann(0, z), y1 = boost::math::cyl_neumann(1, z);
  const double ndot = (q.n[0] * dx + q.n[1] * dy) / (r * r);
  const cplx D = 0.25 * z * cplx(y1, -j1) * ndot;
  const cplx S = 0.25 * cplx(-y0, j0);
  const double a_d = z * j1 / (2.0 * kPi) * ndot;
  const double a_s = -j0 / (2.0 * kPi);
  return {D - cplx(0.0, k) * S, a_d - cplx(0.0, k) * a_s};
}

void check(const std::vector<Curve>& curves, double k, const BieConfig& cfg) {
  if (curves.empty()) throw std::invalid_argument("bie: no curves");
  if (!(k > 0.0)) throw std::invalid_argument("bie: k must be positive");
  if (cfg.N < 4 || cfg.N % 2) throw std::invalid_argument("bie: N must be even and >= 4");
  if (!(cfg.R > 0.0 && cfg.R <= kPi)) throw std::invalid_argument("bie: R must lie in (0, pi]");
  for (const auto& c : curves) c.validate();
}

}  // namespace

cplx helmholtz2d(double k, double r) {
  const double z = k * r;
  return 0.25 * cplx(-boost::math::cyl_neumann(0, z), boost::math::cyl_bessel_j(0, z));
}

std::vector<cplx> bie_matrix(const std::vector<Curve>& curves, double k, const BieConfig& cfg) {
  check(curves, k, cfg);
  const int N = cfg.N;
  const std::size_t nc = curves.size();
  const std::size_t M = nc * static_cast<std::size_t>(N);
  const double h = 2.0 * kPi / N;

  // Regularized log|tau| on the parameter circle: chi = pi, N/2 steps per unit.
  const GridSpec g = GridSpec::make(1, {N / 2}, {kPi}, cfg.R);
  const std::vector<double> phi = regularized_phi(g, SingularityKind::log());
  std::vector<double> corr(static_cast<std::size_t>(N), 0.0);  // (phi~ - log|tau|) cut, by offset l
  for (int l = 1; l < N; ++l) {
    const int ll = l < N / 2 ? l : l - N;
    const double tau = std::fabs(ll * h);
    corr[static_cast<std::size_t>(l)] = (phi[static_cast<std::size_t>(l)] - std::log(tau)) * cutoff(tau, cfg.R);
  }

  std::vector<std::vector<Node>> nd;
  for (const auto& c : curves) nd.push_back(nodes(c, N));

  std::vector<cplx> A(M * M);
  const cplx ik(0.0, k);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long row = 0; row < static_cast<long long>(M); ++row) {
    const std::size_t a = static_cast<std::size_t>(row) / static_cast<std::size_t>(N);
    const int i = static_cast<int>(static_cast<std::size_t>(row) % static_cast<std::size_t>(N));
    const Node& tgt = nd[a][static_cast<std::size_t>(i)];
    cplx* out = &A[static_cast<std::size_t>(row) * M];
    for (std::size_t b = 0; b < nc; ++b) {
      for (int j = 0; j < N; ++j) {
        const Node& src = nd[b][static_cast<std::size_t>(j)];
        cplx w;
        if (b == a && j == i) {
          const double dt = -tgt.kappa / (4.0 * kPi);
          const cplx st = cplx(-(std::numbers::egamma + std::log(k * tgt.speed / 2.0)) / (2.0 * kPi), 0.25);
          w = ik / (2.0 * kPi) * phi[0] + dt - ik * st;
        } else {
          const Combined c = combined(k, tgt.y, src);
          w = c.full;
          if (b == a) w += c.log_coeff * corr[static_cast<std::size_t>((j - i + N) % N)];
        }
        out[b * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)] = h * src.speed * w;
      }
    }
    out[static_cast<std::size_t>(row)] += 0.5;
  }
  return A;
}

BieSolution solve_bie_data(const std::vector<Curve>& curves, double k, const cvec& rhs, const BieConfig& cfg) {
  const std::vector<cplx> A = bie_matrix(curves, k, cfg);
  const std::size_t M = curves.size() * static_cast<std::size_t>(cfg.N);
  if (rhs.size() != M) throw std::invalid_argument("solve_bie_data: rhs has the wrong size");
  const LinearOperator op = [&A, M](const cvec& x, cvec& y) {
    y.assign(M, 0.0);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(M); ++r) {
      const cplx* row = &A[static_cast<std::size_t>(r) * M];
      cplx s = 0.0;
      for (std::size_t c = 0; c < M; ++c) s += row[c] * x[c];
      y[static_cast<std::size_t>(r)] = s;
    }
  };
  BieSolution sol;
  sol.curves = curves;
  sol.k = k;
  sol.N = cfg.N;
  sol.stats = gmres(op, rhs, cfg.gmres);
  sol.psi = sol.stats.x;
  return sol;
}

BieSolution solve_bie(const std::vector<Curve>& curves, double k, Vec2 direction, const BieConfig& cfg) {
  const double dn = std::hypot(direction[0], direction[1]);
  if (!(dn > 0.0)) throw std::invalid_argument("solve_bie: zero incident direction");
  cvec rhs;
  for (const auto& c : curves)
    for (int j = 0; j < cfg.N; ++j) {
      const Vec2 y = c.point(2.0 * kPi * j / cfg.N);
      rhs.push_back(-std::exp(cplx(0.0, k * (direction[0] * y[0] + direction[1] * y[1]) / dn)));
    }
  return solve_bie_data(curves, k, rhs, cfg);
}

std::vector<cplx> far_field(const BieSolution& sol, const std::vector<Vec2>& dirs) {
  const double k = sol.k;
  const double h = 2.0 * kPi / sol.N;
  const cplx pref = std::exp(cplx(0.0, -kPi / 4.0)) / std::sqrt(8.0 * kPi * k);
  std::vector<cplx> out(dirs.size(), 0.0);
  std::size_t base = 0;
  for (const auto& c : sol.curves) {
    const auto nd = nodes(c, sol.N);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const double nrm = std::hypot(dirs[d][0], dirs[d][1]);
      const Vec2 xh{dirs[d][0] / nrm, dirs[d][1] / nrm};
      cplx s = 0.0;
      for (std::size_t j = 0; j < nd.size(); ++j) {
        const Node& q = nd[j];
        const double nx = q.n[0] * xh[0] + q.n[1] * xh[1];
        s += (k * nx + k) * std::exp(cplx(0.0, -k * (xh[0] * q.y[0] + xh[1] * q.y[1]))) * sol.psi[base + j] * q.speed;
      }
      out[d] += pref * h * s;
    }
    base += nd.size();
  }
  return out;
}

std::vector<cplx> scattered_field(const BieSolution& sol, const std::vector<Vec2>& pts) {
  const double h = 2.0 * kPi / sol.N;
  std::vector<std::vector<Node>> nd;
  for (const auto& c : sol.curves) nd.push_back(nodes(c, sol.N));
  std::vector<cplx> out(pts.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long p = 0; p < static_cast<long long>(pts.size()); ++p) {
    cplx s = 0.0;
    std::size_t base = 0;
    for (const auto& curve : nd) {
      for (std::size_t j = 0; j < curve.size(); ++j)
        s += combined(sol.k, pts[static_cast<std::size_t>(p)], curve[j]).full * sol.psi[base + j] * curve[j].speed;
      base += curve.size();
    }
    out[static_cast<std::size_t>(p)] = h * s;
  }
  return out;
}

std::vector<cplx> exterior_field(const BieSolution& sol, Vec2 direction, const std::vector<Vec2>& pts) {
  const double dn = std::hypot(direction[0], direction[1]);
  std::vector<cplx> u = scattered_field(sol, pts);
  for (std::size_t p = 0; p < pts.size(); ++p)
    u[p] += std::exp(cplx(0.0, sol.k * (direction[0] * pts[p][0] + direction[1] * pts[p][1]) / dn));
  return u;
}

}  // namespace singquad
