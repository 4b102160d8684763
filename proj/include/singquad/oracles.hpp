#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace singquad::oracles {

struct AdaptiveQuadSpec {
  double rel_tol = 1e-14;
  double abs_tol = 1e-300;
  int max_subdivisions = 20000;
};

template <class V>
struct QuadResult {
  V value{};
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

/// Adaptive 7/15 Gauss-Kronrod. Bisecting the worst interval grades the mesh toward
/// integrable endpoint singularities; nodes never touch the endpoints.
template <class Real, class F>
auto adaptive_integrate(F&& f, Real a, Real b, const AdaptiveQuadSpec& spec = {})
    -> QuadResult<decltype(f(a))> {
  using V = decltype(f(a));
  namespace bq = boost::math::quadrature;
  const auto& xk = bq::gauss_kronrod<Real, 15>::abscissa();
  const auto& wk = bq::gauss_kronrod<Real, 15>::weights();
  const auto& wg = bq::gauss<Real, 7>::weights();

  struct Piece {
    Real a, b;
    V value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  auto rule = [&](Real lo, Real hi) {
    const Real c = (lo + hi) / 2, h = (hi - lo) / 2;
    const V fc = f(c);
    V k = wk[0] * fc;
    V g = wg[0] * fc;
    // keep nodes strictly inside even when rounding pushes them onto an endpoint
    auto inside = [lo, hi](Real x) {
      using std::nextafter;
      if (x <= lo) return nextafter(lo, hi);
      if (x >= hi) return nextafter(hi, lo);
      return x;
    };
    for (int j = 1; j < 8; ++j) {
      const V s = f(inside(c - h * xk[j])) + f(inside(c + h * xk[j]));
      k += wk[j] * s;
      if (j % 2 == 0) g += wg[j / 2] * s;
    }
    k *= h;
    g *= h;
    using std::abs;
    return Piece{lo, hi, k, static_cast<double>(abs(k - g))};
  };

  if (!(b != a)) return QuadResult<V>{V{}, 0.0, 0, true};
  std::priority_queue<Piece> heap;
  Piece first = rule(a, b);
  V total = first.value;
  double err = first.err;
  heap.push(first);
  QuadResult<V> out;
  int n = 0;
  using std::abs;
  while (true) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * static_cast<double>(abs(total)));
    if (err <= target) {
      out.converged = true;
      break;
    }
    if (n >= spec.max_subdivisions) break;
    Piece p = heap.top();
    const Real mid = (p.a + p.b) / 2;
    if (!(mid > p.a && mid < p.b)) {
      // interval at machine resolution; accept what we have
      out.converged = err <= 1e3 * target;
      break;
    }
    heap.pop();
    Piece l = rule(p.a, mid), r = rule(mid, p.b);
    total += (l.value + r.value) - p.value;
    err += (l.err + r.err) - p.err;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  // Re-sum to shed the accumulated running-sum rounding.
  V sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().err;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  out.subdivisions = n;
  return out;
}

QuadResult<double> adaptive_integrate_1d(const std::function<double(double)>& f, double a, double b,
                                         const AdaptiveQuadSpec& spec = {});
QuadResult<std::complex<double>> adaptive_integrate_1d_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveQuadSpec& spec = {});

/// Sum of adaptive integrals over consecutive breakpoints; throws if any piece fails.
double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        const AdaptiveQuadSpec& spec = {});
std::complex<double> integrate_pieces_complex(const std::function<std::complex<double>(double)>& f,
                                              const std::vector<double>& breaks,
                                              const AdaptiveQuadSpec& spec = {});

/// Closed-form K^0_n * f_G for f_G = exp(-(r/a)^2); (m, n) in {(2,2), (2,3), (3,3), (3,4)}.
double exact_gaussian_potential(int m, int n, double r, double a = 0.5);

/// (K^k_n * f_G)(0) on R^m by radial adaptive quadrature of the Hankel-form kernel (real k > 0).
std::complex<double> helmholtz_gaussian_origin(int m, int n, double k, double a = 0.5);

/// Exponential integral E1(x), x > 0.
double expint_e1(double x);
/// Modified Bessel I0(x).
double bessel_i0(double x);
/// J_n(x) from the trapezoidal rule on (1/pi) int_0^pi cos(n tau - x sin tau) d tau.
long double bessel_j_trapezoid(int n, long double x);

/// M^{(mu)}_m(rho), m in {1, 2}, in long double: after t = s^{1/mu} the integrand
/// cos(rho s^{1/mu}) or J_0(rho s^{1/mu}) is bounded, then adaptive Gauss-Kronrod.
long double moment_oracle(double mu, int m, double rho);

/// O(M^2) DFT with the 1/prod(2 N_j) normalization. Input and output are stored in
/// FFT-natural order over prod(2 N_j) entries (index i <-> l = i or i - 2 N_j).
std::vector<std::complex<double>> brute_dft(const std::vector<std::complex<double>>& samples,
                                            const std::vector<int>& N);

}  // namespace singquad::oracles
