#include "singquad/singularity.hpp"

#include "singquad/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace singquad {

namespace {

using MatX = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

MatX as_matrix(int m, const std::vector<double>& a) {
  MatX M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = a[static_cast<std::size_t>(i * m + j)];
  return M;
}

// pi^{m/2} / (2^m Gamma(m/2 + 1)): common prefactor of both coefficient families.
double ball_prefactor(int m) {
  return std::pow(std::numbers::pi, 0.5 * m) / (std::ldexp(1.0, m) * std::tgamma(0.5 * m + 1.0));
}

}  // namespace

double inscribed_radius(int m, const std::vector<double>& chi) {
  const MatX M = as_matrix(m, chi);
  const MatX invT = M.inverse().transpose();
  double r = INFINITY;
  for (int j = 0; j < m; ++j) r = std::min(r, 1.0 / invT.col(j).norm());
  return r;
}

GridSpec GridSpec::make(int m, std::vector<int> N, std::vector<double> chi, std::optional<double> R) {
  if (m < 1 || m > 4) throw std::invalid_argument("GridSpec: dimension must be 1..4");
  if (static_cast<int>(N.size()) != m) throw std::invalid_argument("GridSpec: N must have m entries");
  for (int n : N)
    if (n < 1) throw std::invalid_argument("GridSpec: N_j must be positive");
  if (chi.size() != static_cast<std::size_t>(m * m)) throw std::invalid_argument("GridSpec: chi must be m x m");
  const MatX M = as_matrix(m, chi);
  Eigen::JacobiSVD<MatX> svd(M);
  const auto& s = svd.singularValues();
  if (!(s(m - 1) > 0.0) || !(s(0) / s(m - 1) < 1e14))
    throw std::invalid_argument("GridSpec: chi is singular or numerically degenerate");

  GridSpec g;
  g.m = m;
  g.N = std::move(N);
  g.chi = std::move(chi);
  g.det_chi = std::sqrt((M.transpose() * M).determinant());
  const MatX invT = M.inverse().transpose();
  g.chi_invT.resize(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.chi_invT[static_cast<std::size_t>(i * m + j)] = invT(i, j);
  const double rin = inscribed_radius(m, g.chi);
  g.R = R.value_or(rin);
  if (!(g.R > 0.0)) throw std::invalid_argument("GridSpec: R must be positive");
  if (g.R > rin * (1.0 + 1e-12))
    std::cerr << "singquad: warning: R = " << g.R << " exceeds the inscribed radius " << rin
              << "; the ball is not contained in the domain\n";
  return g;
}

GridSpec GridSpec::isotropic(int m, int n, double s, std::optional<double> R) {
  std::vector<double> chi(static_cast<std::size_t>(m * m), 0.0);
  for (int j = 0; j < m; ++j) chi[static_cast<std::size_t>(j * m + j)] = s;
  return make(m, std::vector<int>(static_cast<std::size_t>(m), n), std::move(chi), R);
}

std::vector<int> GridSpec::dims() const {
  std::vector<int> d(N.size());
  for (std::size_t j = 0; j < N.size(); ++j) d[j] = 2 * N[j];
  return d;
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int n : N) s *= 2 * static_cast<std::size_t>(n);
  return s;
}

std::size_t GridSpec::nbar() const {
  std::size_t s = 1;
  for (int n : N) s *= static_cast<std::size_t>(n);
  return s;
}

GridSpec GridSpec::refined(int factor) const {
  if (factor < 1) throw std::invalid_argument("GridSpec::refined: factor must be >= 1");
  GridSpec g = *this;
  for (int& n : g.N) n *= factor;
  return g;
}

bool GridSpec::chi_is_diagonal() const {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && chi[static_cast<std::size_t>(i * m + j)] != 0.0) return false;
  return true;
}

bool GridSpec::chi_is_scalar() const {
  if (!chi_is_diagonal()) return false;
  for (int j = 1; j < m; ++j) {
    if (chi[static_cast<std::size_t>(j * m + j)] != chi[0]) return false;
    if (N[static_cast<std::size_t>(j)] != N[0]) return false;
  }
  return true;
}

double GridSpec::r_of(const int* l) const {
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    double x = 0.0;
    for (int j = 0; j < m; ++j) x += chi[static_cast<std::size_t>(i * m + j)] * l[j] / N[static_cast<std::size_t>(j)];
    s += x * x;
  }
  return std::sqrt(s);
}

void GridSpec::logical_index(std::size_t offset, int* l) const {
  for (int d = m - 1; d >= 0; --d) {
    const int n2 = 2 * N[static_cast<std::size_t>(d)];
    const int i = static_cast<int>(offset % static_cast<std::size_t>(n2));
    offset /= static_cast<std::size_t>(n2);
    l[d] = i < n2 / 2 ? i : i - n2;
  }
}

std::size_t GridSpec::offset_of(const int* l) const {
  std::size_t off = 0;
  for (int d = 0; d < m; ++d) {
    const int n2 = 2 * N[static_cast<std::size_t>(d)];
    int i = l[d] % n2;
    if (i < 0) i += n2;
    off = off * static_cast<std::size_t>(n2) + static_cast<std::size_t>(i);
  }
  return off;
}

bool GridSpec::same_layout(const GridSpec& o) const { return m == o.m && N == o.N; }

double rho_of_k(const GridSpec& grid, const int* k) {
  double s = 0.0;
  for (int i = 0; i < grid.m; ++i) {
    double x = 0.0;
    for (int j = 0; j < grid.m; ++j) x += grid.chi_invT[static_cast<std::size_t>(i * grid.m + j)] * k[j];
    s += x * x;
  }
  return std::numbers::pi * grid.R * std::sqrt(s);
}

double rho_of_k(const GridSpec& grid, const std::vector<int>& k) {
  if (static_cast<int>(k.size()) != grid.m) throw std::invalid_argument("rho_of_k: index has wrong dimension");
  return rho_of_k(grid, k.data());
}

double phi_hat_log(const GridSpec& grid, double rho) {
  const int m = grid.m;
  const double c = ball_prefactor(m) * std::pow(grid.R, m) / grid.det_chi;
  return c * (std::log(grid.R) * specfun::a_fun(m + 2, rho) - specfun::l_fun(m, rho));
}

double phi_hat_power(const GridSpec& grid, double nu, double rho) {
  const int m = grid.m;
  const double mu = m - nu;
  if (!(mu > 0.0 && mu <= 2.0))
    throw std::domain_error("phi_hat_power: m - nu must lie in (0, 2], got " + std::to_string(mu));
  const double c = ball_prefactor(m) * std::pow(grid.R, mu) / grid.det_chi;
  return c * specfun::m_fun(mu, m, rho);
}

double phi_hat(const GridSpec& grid, const SingularityKind& kind, double rho) {
  return kind.is_log() ? phi_hat_log(grid, rho) : phi_hat_power(grid, kind.nu, rho);
}

double phi_value(const SingularityKind& kind, double r) {
  return kind.is_log() ? std::log(r) : std::pow(r, -kind.nu);
}

std::vector<double> phi_hat_table(const GridSpec& grid, const SingularityKind& kind) {
  if (!kind.is_log()) {
    const double mu = grid.m - kind.nu;
    if (!(mu > 0.0 && mu <= 2.0)) throw std::domain_error("phi_hat_table: m - nu must lie in (0, 2]");
    // Build shared anchors before the parallel region.
    if (mu != 1.0 && mu != 2.0) (void)specfun::anchors_for(mu);
  } else if (grid.m % 2 == 0) {
    (void)specfun::anchors_for(1.0);
  }
  const int m = grid.m;
  const std::size_t total = grid.size();
  std::vector<double> out(total);

  if (grid.chi_is_diagonal()) {
    // rho depends on |k_j| only; tabulate over the nonnegative orthant (|k_j| <= N_j).
    std::vector<std::size_t> ext(static_cast<std::size_t>(m));
    std::size_t cells = 1;
    for (int j = 0; j < m; ++j) {
      ext[static_cast<std::size_t>(j)] = static_cast<std::size_t>(grid.N[static_cast<std::size_t>(j)]) + 1;
      cells *= ext[static_cast<std::size_t>(j)];
    }
    std::vector<double> vals(cells);
    if (m >= 2 && grid.chi_is_scalar()) {
      // a further collapse to |k|^2 for isotropic maps
      const long long maxsq = static_cast<long long>(m) * grid.N[0] * grid.N[0];
      std::vector<char> used(static_cast<std::size_t>(maxsq) + 1, 0);
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rem = c;
        long long sq = 0;
        for (int d = m - 1; d >= 0; --d) {
          const long long kd = static_cast<long long>(rem % ext[static_cast<std::size_t>(d)]);
          rem /= ext[static_cast<std::size_t>(d)];
          sq += kd * kd;
        }
        used[static_cast<std::size_t>(sq)] = 1;
      }
      std::vector<double> bysq(used.size(), 0.0);
      const double scale = std::numbers::pi * grid.R * std::fabs(grid.chi_invT[0]);
#pragma omp parallel for schedule(dynamic, 64)
      for (long long s = 0; s <= maxsq; ++s)
        if (used[static_cast<std::size_t>(s)]) bysq[static_cast<std::size_t>(s)] = phi_hat(grid, kind, scale * std::sqrt(static_cast<double>(s)));
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rem = c;
        long long sq = 0;
        for (int d = m - 1; d >= 0; --d) {
          const long long kd = static_cast<long long>(rem % ext[static_cast<std::size_t>(d)]);
          rem /= ext[static_cast<std::size_t>(d)];
          sq += kd * kd;
        }
        vals[c] = bysq[static_cast<std::size_t>(sq)];
      }
    } else {
#pragma omp parallel for schedule(dynamic, 64)
      for (long long c = 0; c < static_cast<long long>(cells); ++c) {
        int k[4];
        std::size_t rem = static_cast<std::size_t>(c);
        for (int d = m - 1; d >= 0; --d) {
          k[d] = static_cast<int>(rem % ext[static_cast<std::size_t>(d)]);
          rem /= ext[static_cast<std::size_t>(d)];
        }
        vals[static_cast<std::size_t>(c)] = phi_hat(grid, kind, rho_of_k(grid, k));
      }
    }
#pragma omp parallel for schedule(static)
    for (long long off = 0; off < static_cast<long long>(total); ++off) {
      int k[4];
      grid.logical_index(static_cast<std::size_t>(off), k);
      std::size_t c = 0;
      for (int d = 0; d < m; ++d) c = c * ext[static_cast<std::size_t>(d)] + static_cast<std::size_t>(std::abs(k[d]));
      out[static_cast<std::size_t>(off)] = vals[c];
    }
    return out;
  }

  // General map: per-entry evaluation.
#pragma omp parallel for schedule(dynamic, 64)
  for (long long off = 0; off < static_cast<long long>(total); ++off) {
    int k[4];
    grid.logical_index(static_cast<std::size_t>(off), k);
    out[static_cast<std::size_t>(off)] = phi_hat(grid, kind, rho_of_k(grid, k));
  }
  return out;
}

}  // namespace singquad
