#include "singquad/convolve.hpp"
#include "singquad/kernels.hpp"
#include "singquad/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace singquad;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s = std::max(s, std::abs(z));
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("cutoff") {
    CHECK(cutoff(0.0, 2.0) == 1.0);
    CHECK(cutoff(2.0, 2.0) == 0.0);
    CHECK(cutoff(3.0, 2.0) == 0.0);
    CHECK(cutoff(-0.7, 2.0) == cutoff(0.7, 2.0));
    double prev = 1.0;
    for (int i = 1; i < 20; ++i) {
      const double c = cutoff(i / 10.0, 2.0);
      CHECK(c > 0.0);
      CHECK(c <= prev);
      prev = c;
    }
    // flat to all orders at the origin
    CHECK(1.0 - cutoff(0.02, 2.0) < 1e-15);
  }

  TEST_CASE("regularized phi equals the direct Fourier sum") {
    for (int m = 1; m <= 2; ++m) {
      const GridSpec g = m == 1 ? GridSpec::isotropic(1, 8, 6.0) : GridSpec::make(2, {4, 6}, {3.0, 0.0, 0.0, 5.0});
      const auto kind = m == 1 ? SingularityKind::log() : SingularityKind::power(1.0);
      const auto phi = regularized_phi(g, kind);
      double worst = 0.0, scale = 0.0;
      for (std::size_t lo = 0; lo < g.size(); ++lo) {
        int l[2];
        g.logical_index(lo, l);
        cplx s = 0.0;
        for (std::size_t ko = 0; ko < g.size(); ++ko) {
          int k[2];
          g.logical_index(ko, k);
          double ph = 0.0;
          for (int d = 0; d < m; ++d) ph += kPi * k[d] * l[d] / g.N[d];
          s += phi_hat(g, kind, rho_of_k(g, k)) * std::exp(cplx(0.0, ph));
        }
        worst = std::max(worst, std::abs(s - phi[lo]));
        scale = std::max(scale, std::abs(s));
      }
      CHECK(worst <= 1e-13 * scale);
    }
  }

  TEST_CASE("folding") {
    CHECK_FALSE(fold_power(2, static_kernel(2)).has_value());
    const auto a = fold_power(3, static_kernel(3));
    REQUIRE(a.has_value());
    CHECK(a->q == 0);
    CHECK(a->nu == 1.0);
    const auto b = fold_power(3, static_kernel(1));
    REQUIRE(b.has_value());
    CHECK(b->q == 1);
    CHECK(b->nu == 1.0);
    const auto c = fold_power(1, static_kernel(1));
    REQUIRE(c.has_value());
    CHECK(c->q == 0);
    CHECK_THROWS_AS(fold_power(1, static_kernel(3)), std::domain_error);
  }

  TEST_CASE("origin weight once the power part is folded") {
    // alpha r^{2q} vanishes at 0, so only the smooth remainder reaches w_0
    const GridSpec g = GridSpec::isotropic(3, 6, 2.0);
    CHECK(std::abs(build_weights(g, static_kernel(1)).center_weight) == 0.0);
    const auto h = helmholtz(1, 3.0);
    const cplx w0 = build_weights(g, h).center_weight;
    CHECK(std::abs(w0 - h.ktilde0) <= 1e-15 * std::abs(h.ktilde0));
    CHECK(std::abs(h.ktilde0 - cplx(0.0, 1.0 / 6.0)) < 1e-15);
  }

  TEST_CASE("weights sit inside B_R") {
    const GridSpec g = GridSpec::make(2, {10, 14}, {4.0, 1.0, 0.0, 3.0});
    const auto w = build_weights(g, helmholtz(2, 2.0 * kPi));
    CHECK(w.count() > 1);
    for (std::size_t e = 1; e < w.count(); ++e) CHECK(g.r_of(&w.indices[e * 2]) < g.R);
  }

  TEST_CASE("rule at one target equals the FFT convolution") {
    const GridSpec g = GridSpec::isotropic(2, 16, 6.0);
    const auto fact = helmholtz(3, 2.0 * kPi);
    const auto w = build_weights(g, fact);
    const auto kv = kernel_values(w, fact);
    const auto spec = kernel_spectrum(w, kv);
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> u(0.3, 0.7), width(0.05, 0.2);
    for (int trial = 0; trial < 10; ++trial) {
      const double c0 = u(gen), c1 = u(gen), s = width(gen);
      const auto f = SourceField::sample(g, {0.0, 0.0}, [&](const std::vector<double>& x) {
        const double d0 = x[0] / 6.0 - c0, d1 = x[1] / 6.0 - c1;
        return cplx(std::exp(-(d0 * d0 + d1 * d1) / (s * s)));
      });
      const auto full = embed(f);
      const auto out = fast_convolve(spec, f);
      const int t[2] = {5 + trial, 11 - trial / 2};
      std::vector<cplx> shifted(g.size());
      for (std::size_t off = 0; off < g.size(); ++off) {
        int l[2];
        g.logical_index(off, l);
        const int d[2] = {t[0] - l[0], t[1] - l[1]};
        shifted[off] = full[g.offset_of(d)];
      }
      const cplx direct = apply_rule(w, kv, shifted);
      const cplx fast = out.samples[static_cast<std::size_t>(t[0] * 17 + t[1])];
      CHECK(std::abs(direct - fast) <= 1e-12 * max_abs(out.samples));
    }
  }

  TEST_CASE("primitive form near the origin matches the separated form") {
    const GridSpec g = GridSpec::isotropic(2, 16, 6.0);
    const auto fact = helmholtz(2, 2.0 * kPi);
    BuildOptions p;
    p.primitive_radius = 2.0;
    const auto a = build_spectrum(g, fact);
    const auto b = build_spectrum(g, fact, p);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) diff = std::max(diff, std::abs(a.coeffs[i] - b.coeffs[i]));
    CHECK(diff <= 1e-10 * max_abs(a.coeffs));
  }

  TEST_CASE("refined construction keeps the data-grid layout") {
    const GridSpec g = GridSpec::isotropic(1, 10, 6.0);
    BuildOptions o;
    o.refine = 3;
    const auto w = build_weights(g, static_kernel(2), o);
    CHECK(w.grid.N[0] == 30);
    CHECK(w.data_grid.N[0] == 10);
    const auto s = build_spectrum(g, static_kernel(2), o);
    CHECK(s.coeffs.size() == g.size());
  }

  TEST_CASE("argument errors") {
    const GridSpec g = GridSpec::isotropic(2, 8, 6.0);
    BuildOptions o;
    o.refine = 0;
    CHECK_THROWS_AS(build_weights(g, static_kernel(2), o), std::invalid_argument);
    KernelFactorization bad = static_kernel(2);
    bad.ktilde = nullptr;
    BuildOptions p;
    p.primitive_radius = 1.0;
    CHECK_THROWS_AS(build_weights(g, bad, p), std::invalid_argument);
    KernelFactorization empty;
    CHECK_THROWS_AS(build_weights(g, empty), std::invalid_argument);
  }
}
