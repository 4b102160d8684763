#include "singquad/gmres.hpp"

#include <cmath>
#include <string>

namespace singquad {

namespace {

using cplx = std::complex<double>;

cplx dot(const cvec& a, const cvec& b) {  // conj(a) . b
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const cvec& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

GmresResult gmres(const LinearOperator& apply, const cvec& b, const GmresConfig& cfg, const cvec* x0) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("gmres: tol must be positive");
  if (cfg.restart < 1) throw std::invalid_argument("gmres: restart must be >= 1");
  const std::size_t n = b.size();
  GmresResult res;
  res.x = x0 ? *x0 : cvec(n, 0.0);
  if (res.x.size() != n) throw std::invalid_argument("gmres: initial guess has the wrong size");
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    res.x.assign(n, 0.0);
    res.converged = true;
    return res;
  }
  const int mres = cfg.restart;
  cvec w(n), r(n);
  std::vector<cvec> V;
  std::vector<std::vector<cplx>> H(static_cast<std::size_t>(mres) + 1, std::vector<cplx>(static_cast<std::size_t>(mres), 0.0));
  std::vector<cplx> cs(static_cast<std::size_t>(mres)), sn(static_cast<std::size_t>(mres)), g(static_cast<std::size_t>(mres) + 1);

  while (res.iterations < cfg.max_iter) {
    apply(res.x, w);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
    double beta = norm(r);
    if (beta / bnorm <= cfg.tol) {
      res.converged = true;
      break;
    }
    V.assign(1, r);
    for (auto& v : V[0]) v /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int j = 0;
    bool done = false;
    for (; j < mres && res.iterations < cfg.max_iter; ++j) {
      apply(V[static_cast<std::size_t>(j)], w);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const cplx h = dot(V[static_cast<std::size_t>(i)], w);
          H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += h;
          for (std::size_t q = 0; q < n; ++q) w[q] -= h * V[static_cast<std::size_t>(i)][q];
        }
      }
      const double hn = norm(w);
      H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)] = hn;
      for (int i = 0; i < j; ++i) {
        const cplx a = H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const cplx c = H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
        H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::conj(cs[static_cast<std::size_t>(i)]) * a + std::conj(sn[static_cast<std::size_t>(i)]) * c;
        H[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] = -sn[static_cast<std::size_t>(i)] * a + cs[static_cast<std::size_t>(i)] * c;
      }
      const cplx a = H[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      const double c = hn;
      const double den = std::sqrt(std::norm(a) + c * c);
      cs[static_cast<std::size_t>(j)] = den == 0.0 ? 1.0 : a / den;
      sn[static_cast<std::size_t>(j)] = den == 0.0 ? 0.0 : c / den;
      H[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = den;
      H[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)] = 0.0;
      g[static_cast<std::size_t>(j) + 1] = -sn[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(j)] = std::conj(cs[static_cast<std::size_t>(j)]) * g[static_cast<std::size_t>(j)];
      ++res.iterations;
      const double rel = std::abs(g[static_cast<std::size_t>(j) + 1]) / bnorm;
      res.residuals.push_back(rel);
      if (rel <= cfg.tol || hn == 0.0) {
        done = true;
        ++j;
        break;
      }
      V.emplace_back(w);
      for (auto& v : V.back()) v /= hn;
    }
    // back substitution on the j x j triangle
    std::vector<cplx> y(static_cast<std::size_t>(j));
    for (int i = j - 1; i >= 0; --i) {
      cplx s = g[static_cast<std::size_t>(i)];
      for (int q = i + 1; q < j; ++q) s -= H[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] * y[static_cast<std::size_t>(q)];
      y[static_cast<std::size_t>(i)] = s / H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t q = 0; q < n; ++q) res.x[q] += y[static_cast<std::size_t>(i)] * V[static_cast<std::size_t>(i)][q];
    for (auto& row : H) std::fill(row.begin(), row.end(), 0.0);
    if (done) {
      // confirm with the true residual
      apply(res.x, w);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
      if (norm(r) / bnorm <= 10.0 * cfg.tol) {
        res.converged = true;
        break;
      }
    }
  }
  if (!res.converged && cfg.throw_on_failure) {
    const double last = res.residuals.empty() ? 1.0 : res.residuals.back();
    throw GmresError("gmres: no convergence after " + std::to_string(res.iterations) +
                         " iterations, relative residual " + std::to_string(last),
                     res);
  }
  return res;
}

}  // namespace singquad
