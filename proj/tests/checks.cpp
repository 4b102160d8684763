#include "checks.hpp"

#include "singquad/convolve.hpp"
#include "singquad/fft.hpp"
#include "singquad/kernels.hpp"
#include "singquad/oracles.hpp"
#include "singquad/quadrature.hpp"
#include "singquad/singularity.hpp"
#include "singquad/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace singquad::checks {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

Result finish(std::string name, double worst, double bound, std::string where = {}) {
  Result r;
  r.name = std::move(name);
  r.worst = worst;
  r.bound = bound;
  r.pass = worst <= bound;
  r.detail = "worst " + sci(worst) + " (bound " + sci(bound) + ")";
  if (!where.empty()) r.detail += " at " + where;
  return r;
}

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double e, const std::string& w) {
    if (!(e <= value)) {  // NaN also lands here
      value = std::isnan(e) ? INFINITY : e;
      where = w;
    }
  }
};

oracles::AdaptiveQuadSpec quad_spec() {
  oracles::AdaptiveQuadSpec q;
  q.rel_tol = 1e-14;
  q.abs_tol = 1e-16;
  return q;
}

// int_0^1 t^{m-1} A_{m+2}(rho t) dt, pieces one half-period long
double l_reference(int m, double rho) {
  std::vector<double> br{0.0};
  for (int j = 1; j * kPi / rho < 1.0; ++j) br.push_back(j * kPi / rho);
  br.push_back(1.0);
  return oracles::integrate_pieces(
      [m, rho](double t) { return std::pow(t, m - 1) * specfun::detail::a_bessel(m + 2, rho * t); }, br, quad_spec());
}

// (m / mu) int_0^1 A_m(rho s^{1/mu}) ds
double m_reference(double mu, int m, double rho) {
  std::vector<double> br{0.0};
  for (int j = 1; j * kPi < rho; ++j) br.push_back(std::pow(j * kPi / rho, mu));
  br.push_back(1.0);
  const double v = oracles::integrate_pieces(
      [m, mu, rho](double s) { return specfun::detail::a_bessel(m, rho * std::pow(s, 1.0 / mu)); }, br, quad_spec());
  return m / mu * v;
}

// Largest |ref| over a quarter period either side of rho.
double amplitude(const std::function<double(double)>& ref, double rho, double at_rho) {
  double a = std::fabs(at_rho);
  for (double d : {-kPi / 2, -kPi / 4, kPi / 4, kPi / 2})
    if (rho + d > 0.0) a = std::max(a, std::fabs(ref(rho + d)));
  return a;
}

std::string where_m(const char* f, int m, double rho, double mu = 0.0) {
  char b[96];
  if (mu > 0.0)
    std::snprintf(b, sizeof b, "%s mu=%.2f m=%d rho=%.4g", f, mu, m, rho);
  else
    std::snprintf(b, sizeof b, "%s m=%d rho=%.4g", f, m, rho);
  return b;
}

}  // namespace

Result a_bounds(int points) {
  double worst = 0.0;
  std::string where;
  for (int m = 1; m <= 8; ++m) {
    if (specfun::a_fun(m, 0.0) != 1.0) {
      worst = INFINITY;
      where = where_m("A(0) != 1", m, 0.0);
    }
    for (int i = 0; i < points; ++i) {
      const double t = 100.0 * i / (points - 1);
      const double excess = std::fabs(specfun::a_fun(m, t)) - 1.0;
      if (excess > worst) {
        worst = excess;
        where = where_m("A", m, t);
      }
    }
  }
  return finish("|A_m| <= 1, A_m(0) = 1", worst, 1e-12, where);
}

Result cross_paths(int samples) {
  Worst w;
  constexpr double kSeriesMax = 12.0;  // long double series still has ~5 spare digits here
  for (int m = 1; m <= 8; ++m) {
    for (int i = 0; i < samples; ++i) {
      const double rho = 0.25 + (40.0 - 0.25) * i / (samples - 1);

      auto aref = [m](double r) { return specfun::detail::a_bessel(m, r); };
      const double a0 = aref(rho);
      const double aamp = amplitude(aref, rho, a0);
      w.update(std::fabs(specfun::a_fun(m, rho) - a0) / aamp, where_m("a_fun", m, rho));
      if (rho <= kSeriesMax) w.update(std::fabs(specfun::detail::a_series(m, rho) - a0) / aamp, where_m("a_series", m, rho));

      auto lref = [m](double r) { return l_reference(m, r); };
      const double l0 = lref(rho);
      const double lamp = amplitude(lref, rho, l0);
      w.update(std::fabs(specfun::l_fun(m, rho) - l0) / lamp, where_m("l_fun", m, rho));
      if (rho <= kSeriesMax) w.update(std::fabs(specfun::detail::l_series(m, rho) - l0) / lamp, where_m("l_series", m, rho));

      for (double mu : {0.3, 0.7, 1.0, 1.5, 2.0}) {
        auto mref = [m, mu](double r) { return m_reference(mu, m, r); };
        const double m0 = mref(rho);
        const double mamp = amplitude(mref, rho, m0);
        w.update(std::fabs(specfun::m_fun(mu, m, rho) - m0) / mamp, where_m("m_fun", m, rho, mu));
        if (rho <= kSeriesMax)
          w.update(std::fabs(specfun::detail::m_series(mu, m, rho) - m0) / mamp, where_m("m_series", m, rho, mu));
      }
    }
  }
  return finish("evaluation paths agree", w.value, 1e-12, w.where);
}

Result derivative_identity(int points, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> pick_m(1, 6);
  std::uniform_real_distribution<double> pick_t(0.1, 30.0);
  constexpr double h = 1e-5;
  Worst w;
  for (int i = 0; i < points; ++i) {
    const int m = pick_m(gen);
    const double t = pick_t(gen);
    auto f = [m](double x) { return std::pow(x, m) * specfun::a_fun(m + 2, x); };
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    const double rhs = m * std::pow(t, m - 1) * specfun::a_fun(m, t);
    w.update(std::fabs(fd - rhs) / std::max(1.0, m * std::pow(t, m - 1)), where_m("d/dt", m, t));
  }
  return finish("(t^m A_{m+2})' = m t^{m-1} A_m", w.value, 1e-7, w.where);
}

Result m_equals_a(int points) {
  Worst w;
  for (int m = 1; m <= 2; ++m)
    for (int i = 0; i <= points; ++i) {
      const double rho = 100.0 * i / points;
      const double v = specfun::m_fun(m, m, rho);
      w.update(std::fabs(v - specfun::a_fun(m + 2, rho)), where_m("a_fun", m, rho));
      w.update(std::fabs(v - specfun::detail::a_bessel(m + 2, rho)), where_m("a_bessel", m, rho));
    }
  return finish("M^(m)_m = A_{m+2}", w.value, 1e-13, w.where);
}

Result appendix_bound(int m, int points) {
  const double a = m == 1 ? specfun::kM1TailStart : specfun::kM2TailStart;
  Worst w;
  for (double mu : {0.3, 0.5, 0.7, 1.3}) {
    const auto& anc = specfun::anchors_for(mu);
    for (int i = 0; i < points; ++i) {
      const double rho = a + 3.0 * a * i / (points - 1);
      const double v = m == 1 ? anc.m1(rho) : anc.m2(rho);
      const long double ref = oracles::moment_oracle(mu, m, rho);
      w.update(static_cast<double>(std::fabs((v - ref) / ref)), where_m("M", m, rho, mu));
    }
  }
  return finish(m == 1 ? "M1 tail vs oracle" : "M2 tail vs oracle", w.value, 1e-15, w.where);
}

Result bridge_continuity() {
  Worst w;
  for (double mu : {0.3, 0.5, 0.7, 1.0, 1.3, 1.7}) {
    const auto& anc = specfun::anchors_for(mu);
    for (int m = 1; m <= 2; ++m) {
      for (int n = 0; n < 7; ++n) {
        const double a = m == 1 ? anc.cos_anchors()[static_cast<std::size_t>(n)].a : anc.j0_anchors()[static_cast<std::size_t>(n)].a;
        double left, right;
        if (n == 0)
          left = specfun::detail::m_series(mu, m, a);
        else
          left = m == 1 ? specfun::detail::m1_bridge(anc, n - 1, a) : specfun::detail::m2_bridge(anc, n - 1, a);
        if (n < 6)
          right = m == 1 ? specfun::detail::m1_bridge(anc, n, a) : specfun::detail::m2_bridge(anc, n, a);
        else
          right = m == 1 ? specfun::detail::m1_asymptotic(anc, a) : specfun::detail::m2_asymptotic(anc, a);
        // M^(1)_1 vanishes at 2 pi n, so scale by the local amplitude
        auto mm = [&](double r) { return m == 1 ? anc.m1(r) : anc.m2(r); };
        const double amp = amplitude(mm, a, right);
        w.update(std::fabs(left - right) / amp, where_m("anchor", m, a, mu));
      }
    }
  }
  return finish("bridges continuous at anchors", w.value, 1e-14, w.where);
}

EnvelopeRow decay_envelope(int m, double nu) {
  constexpr int kMaxSq = 1 << 16;  // |k| < 2^8
  // via[d][s]: last component of some k in Z^d, k_j >= 0, with |k|^2 = s; -1 if none
  std::vector<std::vector<int>> via(static_cast<std::size_t>(m) + 1, std::vector<int>(kMaxSq, -1));
  via[0][0] = 0;
  for (int d = 1; d <= m; ++d)
    for (int s = 0; s < kMaxSq; ++s)
      for (int k = 0; k * k <= s; ++k)
        if (via[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(s - k * k)] >= 0) {
          via[static_cast<std::size_t>(d)][static_cast<std::size_t>(s)] = k;
          break;
        }

  // R = 1 with chi = Id would put every integer k on a zero of the m = 1 transform
  const GridSpec g = GridSpec::isotropic(m, 256, 1.0, 0.7);
  const SingularityKind kind = nu < 0.0 ? SingularityKind::log() : SingularityKind::power(nu);
  EnvelopeRow row;
  row.m = m;
  row.kind = nu < 0.0 ? std::string("log") : "r^-" + std::to_string(nu).substr(0, 4);
  for (int j = 3; j <= 7; ++j) {
    double best = 0.0;
    for (int s = 1 << (2 * j); s < 1 << (2 * j + 2); ++s) {
      if (via[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)] < 0) continue;
      std::vector<int> k(static_cast<std::size_t>(m));
      int rest = s;
      for (int d = m; d >= 1; --d) {
        const int c = via[static_cast<std::size_t>(d)][static_cast<std::size_t>(rest)];
        k[static_cast<std::size_t>(d - 1)] = c;
        rest -= c * c;
      }
      const double v = std::fabs(phi_hat(g, kind, rho_of_k(g, k)));
      best = std::max(best, v * std::pow(static_cast<double>(s), (m + 1) / 4.0));
    }
    row.shell_max.push_back(best);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(row.shell_max.size());
  for (std::size_t i = 0; i < row.shell_max.size(); ++i) {
    const double x = 3.0 + static_cast<double>(i), y = std::log2(row.shell_max[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  row.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return row;
}

// Power kinds use nu = (m - 1) / 2, the most singular r^{-nu} whose transform is still
// dominated by the boundary term; smaller m - nu decays like |k|^{nu - m}.
Result decay_envelope_all(std::vector<EnvelopeRow>* rows) {
  Worst w;
  for (int m = 1; m <= 3; ++m)
    for (double nu : {-1.0, (m - 1) / 2.0}) {
      EnvelopeRow r = decay_envelope(m, nu);
      w.update(r.slope, "m=" + std::to_string(m) + " " + r.kind);
      if (rows) rows->push_back(std::move(r));
    }
  return finish("phi^ shell maxima times |k|^{(m+1)/2}: fitted log2 slope", w.value, 0.1, w.where);
}

Result fast_vs_direct(unsigned seed) {
  struct Case {
    std::string name;
    GridSpec grid;
    KernelFactorization fact;
  };
  std::vector<Case> cases;
  cases.push_back({"m=1 N=32 log", GridSpec::isotropic(1, 32, 6.0), static_kernel(2)});
  cases.push_back({"m=1 N=17 helmholtz n=2", GridSpec::isotropic(1, 17, 6.0), helmholtz(2, 2.0 * kPi)});
  cases.push_back({"m=2 N=16 log", GridSpec::isotropic(2, 16, 6.0), static_kernel(2)});
  cases.push_back({"m=2 N=12 n=3", GridSpec::isotropic(2, 12, 6.0), static_kernel(3)});
  cases.push_back({"m=2 N=16 helmholtz n=3", GridSpec::isotropic(2, 16, 6.0), helmholtz(3, 2.0 * kPi)});
  cases.push_back({"m=2 N=16 imaginary k", GridSpec::isotropic(2, 16, 6.0), helmholtz(2, cplx(0.0, 4.0))});
  cases.push_back({"m=2 N=(12,20) sheared", GridSpec::make(2, {12, 20}, {5.0, 1.0, 0.5, 4.0}), static_kernel(2)});

  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Worst w;
  for (const Case& c : cases) {
    const CorrectionWeights wts = build_weights(c.grid, c.fact);
    const auto kv = kernel_values(wts, c.fact);
    const KernelSpectrum spec = kernel_spectrum(wts, kv);
    SourceField f = SourceField::zeros(c.grid);
    for (auto& v : f.samples) v = cplx(u(gen), u(gen));
    const auto fast = fast_convolve(spec, f);
    const auto direct = direct_convolve(wts, kv, f);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < fast.samples.size(); ++i) {
      diff = std::max(diff, std::abs(fast.samples[i] - direct.samples[i]));
      scale = std::max(scale, std::abs(direct.samples[i]));
    }
    w.update(diff / scale, c.name);
  }
  return finish("fast_convolve == direct_convolve", w.value, 1e-12, w.where);
}

Result dft_vs_fft(unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Worst w;
  for (const std::vector<int>& N : std::vector<std::vector<int>>{{8}, {5}, {32}, {4, 3}, {6, 6}, {3, 2, 4}, {2, 2, 2, 2}}) {
    std::vector<int> dims;
    std::size_t total = 1;
    for (int n : N) {
      dims.push_back(2 * n);
      total *= 2 * static_cast<std::size_t>(n);
    }
    std::vector<cplx> x(total);
    for (auto& v : x) v = cplx(u(gen), u(gen));
    const auto ref = oracles::brute_dft(x, N);
    std::vector<cplx> y = x;
    fft::dft(y, dims);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      diff = std::max(diff, std::abs(y[i] - ref[i]));
      scale = std::max(scale, std::abs(ref[i]));
    }
    std::string name = "N=";
    for (int n : N) name += std::to_string(n) + ",";
    name.pop_back();
    w.update(diff / scale, name);
  }
  return finish("brute_dft == FFT path", w.value, 1e-13, w.where);
}

}  // namespace singquad::checks
