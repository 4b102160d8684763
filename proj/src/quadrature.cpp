#include "singquad/quadrature.hpp"

#include "singquad/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace singquad {

namespace {

// Grid points selected by a predicate, with radii shared between points at equal distance
// when chi is a multiple of the identity.
struct PointSet {
  std::vector<std::size_t> offs;
  std::vector<std::uint32_t> slot;
  std::vector<double> r_unique;
};

template <class Pred>
PointSet collect(const GridSpec& g, const std::optional<std::vector<int>>& box, Pred keep) {
  PointSet ps;
  const int m = g.m;
  const std::size_t total = g.size();
  // in 1-D the radius table would be N times larger than the grid itself
  const bool scalar = m >= 2 && g.chi_is_scalar();
  const double scale = scalar ? std::fabs(g.chi[0]) / g.N[0] : 0.0;
  std::vector<std::int64_t> key_slot;
  if (scalar) key_slot.assign(static_cast<std::size_t>(m) * g.N[0] * g.N[0] + 1, -1);
  int l[4];
  for (std::size_t off = 0; off < total; ++off) {
    g.logical_index(off, l);
    if (box) {
      bool inside = true;
      for (int d = 0; d < m; ++d)
        if (std::abs(l[d]) > (*box)[static_cast<std::size_t>(d)]) inside = false;
      if (!inside) continue;
    }
    double r;
    long long key = 0;
    if (scalar) {
      for (int d = 0; d < m; ++d) key += static_cast<long long>(l[d]) * l[d];
      r = scale * std::sqrt(static_cast<double>(key));
    } else {
      r = g.r_of(l);
    }
    if (!keep(l, r)) continue;
    ps.offs.push_back(off);
    if (scalar) {
      auto& s = key_slot[static_cast<std::size_t>(key)];
      if (s < 0) {
        s = static_cast<std::int64_t>(ps.r_unique.size());
        ps.r_unique.push_back(r);
      }
      ps.slot.push_back(static_cast<std::uint32_t>(s));
    } else {
      ps.slot.push_back(static_cast<std::uint32_t>(ps.r_unique.size()));
      ps.r_unique.push_back(r);
    }
  }
  return ps;
}

template <class T, class F>
std::vector<T> eval_unique(const PointSet& ps, F&& fn) {
  std::vector<T> out(ps.r_unique.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (long long i = 0; i < static_cast<long long>(out.size()); ++i)
    out[static_cast<std::size_t>(i)] = fn(ps.r_unique[static_cast<std::size_t>(i)]);
  return out;
}

void check_box(const GridSpec& g, const std::vector<int>& box) {
  if (static_cast<int>(box.size()) != g.m) throw std::invalid_argument("subset box: wrong dimension");
  const auto need = min_subset_halfwidth(g);
  for (int d = 0; d < g.m; ++d) {
    if (box[static_cast<std::size_t>(d)] < need[static_cast<std::size_t>(d)])
      throw std::invalid_argument("subset box does not contain B_R: half-width " +
                                  std::to_string(box[static_cast<std::size_t>(d)]) + " < " +
                                  std::to_string(need[static_cast<std::size_t>(d)]));
    if (box[static_cast<std::size_t>(d)] >= g.N[static_cast<std::size_t>(d)])
      throw std::invalid_argument("subset box exceeds the construction grid");
  }
}

// Separable DFT of a box-supported array onto the data-grid frequencies.
std::vector<cplx> partial_dft(const std::vector<cplx>& full, const GridSpec& fine, const std::vector<int>& box,
                              const GridSpec& coarse) {
  const int m = fine.m;
  std::vector<int> ext(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) ext[static_cast<std::size_t>(d)] = 2 * box[static_cast<std::size_t>(d)] + 1;
  std::size_t n = 1;
  for (int e : ext) n *= static_cast<std::size_t>(e);
  std::vector<cplx> a(n);
  {
    int l[4];
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t rem = i;
      for (int d = m - 1; d >= 0; --d) {
        l[d] = static_cast<int>(rem % static_cast<std::size_t>(ext[static_cast<std::size_t>(d)])) -
               box[static_cast<std::size_t>(d)];
        rem /= static_cast<std::size_t>(ext[static_cast<std::size_t>(d)]);
      }
      a[i] = full[fine.offset_of(l)];
    }
  }
  for (int d = 0; d < m; ++d) {
    const int h = box[static_cast<std::size_t>(d)];
    const int nin = ext[static_cast<std::size_t>(d)];
    const int nf = fine.N[static_cast<std::size_t>(d)];
    const int nout = 2 * coarse.N[static_cast<std::size_t>(d)];
    std::vector<cplx> tw(static_cast<std::size_t>(nout) * nin);
    for (int io = 0; io < nout; ++io) {
      const int k = io < nout / 2 ? io : io - nout;
      for (int il = 0; il < nin; ++il) {
        long long kl = (static_cast<long long>(k) * (il - h)) % (2LL * nf);
        const double ang = -std::numbers::pi * static_cast<double>(kl) / nf;
        tw[static_cast<std::size_t>(io) * nin + il] = {std::cos(ang), std::sin(ang)};
      }
    }
    std::size_t outer = 1, inner = 1;
    for (int e = 0; e < d; ++e) outer *= static_cast<std::size_t>(ext[static_cast<std::size_t>(e)]);
    for (int e = d + 1; e < m; ++e) inner *= static_cast<std::size_t>(ext[static_cast<std::size_t>(e)]);
    std::vector<cplx> b(outer * static_cast<std::size_t>(nout) * inner);
#pragma omp parallel for schedule(static)
    for (long long o = 0; o < static_cast<long long>(outer); ++o)
      for (int io = 0; io < nout; ++io)
        for (std::size_t in = 0; in < inner; ++in) {
          cplx s = 0.0;
          const cplx* t = &tw[static_cast<std::size_t>(io) * nin];
          for (int il = 0; il < nin; ++il)
            s += t[il] * a[(static_cast<std::size_t>(o) * nin + il) * inner + in];
          b[(static_cast<std::size_t>(o) * nout + io) * inner + in] = s;
        }
    a.swap(b);
    ext[static_cast<std::size_t>(d)] = nout;
  }
  const double norm = 1.0 / static_cast<double>(fine.size());
  for (auto& v : a) v *= norm;
  return a;
}

}  // namespace

double cutoff(double t, double R) {
  const double a = std::fabs(t / R);
  if (a >= 1.0) return 0.0;
  if (a == 0.0) return 1.0;
  const double d = 1.0 - a;
  return std::exp(-std::exp(-2.0 / a) / (d * d));
}

std::vector<double> regularized_phi(const GridSpec& grid, const SingularityKind& kind) {
  const std::vector<double> tab = phi_hat_table(grid, kind);
  const std::size_t total = grid.size();
  std::vector<cplx> c(total);
  if (grid.chi_is_diagonal()) {
    for (std::size_t i = 0; i < total; ++i) c[i] = tab[i];
  } else {
#pragma omp parallel for schedule(static)
    for (long long off = 0; off < static_cast<long long>(total); ++off) {
      int k[4];
      grid.logical_index(static_cast<std::size_t>(off), k);
      for (int d = 0; d < grid.m; ++d)
        if (k[d] != -grid.N[static_cast<std::size_t>(d)]) k[d] = -k[d];
      c[static_cast<std::size_t>(off)] = 0.5 * (tab[static_cast<std::size_t>(off)] + tab[grid.offset_of(k)]);
    }
  }
  fft::idft(c, grid.dims());
  double vmax = 0.0, imax = 0.0;
  std::vector<double> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    vmax = std::max(vmax, std::fabs(c[i].real()));
    imax = std::max(imax, std::fabs(c[i].imag()));
    out[i] = c[i].real();
  }
  if (imax > 1e-13 * vmax)
    throw std::runtime_error("regularized_phi: imaginary residue " + std::to_string(imax / vmax) +
                             " exceeds 1e-13 relative");
  return out;
}

std::vector<int> min_subset_halfwidth(const GridSpec& g) {
  std::vector<int> h(static_cast<std::size_t>(g.m));
  for (int j = 0; j < g.m; ++j) {
    double s = 0.0;
    for (int i = 0; i < g.m; ++i) {
      const double v = g.chi_invT[static_cast<std::size_t>(i * g.m + j)];
      s += v * v;
    }
    h[static_cast<std::size_t>(j)] = static_cast<int>(std::ceil(g.R * std::sqrt(s) * g.N[static_cast<std::size_t>(j)] - 1e-9));
  }
  return h;
}

std::optional<FoldedPower> fold_power(int m, const KernelFactorization& fact) {
  if (!fact.has_power()) return std::nullopt;
  const double nu = *fact.nu;
  const double mu = m - nu;
  if (!(mu > 0.0)) throw std::domain_error("fold_power: r^{-nu} is not integrable in dimension " + std::to_string(m));
  if (mu <= 2.0) return FoldedPower{nu, 0};
  const int q = static_cast<int>(std::ceil((mu - 2.0) / 2.0 - 1e-12));
  return FoldedPower{nu + 2.0 * q, q};
}

std::vector<cplx> CorrectionWeights::dense() const {
  std::vector<cplx> out(grid.size(), 0.0);
  for (std::size_t e = 0; e < values.size(); ++e)
    out[grid.offset_of(&indices[e * static_cast<std::size_t>(grid.m)])] += values[e];
  return out;
}

CorrectionWeights build_weights(const GridSpec& data_grid, const KernelFactorization& fact, const BuildOptions& opts) {
  fact.validate();
  if (opts.refine < 1) throw std::invalid_argument("build_weights: refine must be >= 1");
  const GridSpec g = data_grid.refined(opts.refine);
  if (opts.subset_halfwidth) check_box(g, *opts.subset_halfwidth);
  if (opts.primitive_radius > 0.0 && !fact.ktilde)
    throw std::invalid_argument("build_weights: primitive form needs the smooth remainder callable");
  const int m = g.m;
  const auto fold = fold_power(m, fact);
  std::vector<double> phiA, phiB;
  if (fold) phiA = regularized_phi(g, SingularityKind::power(fold->nu));
  if (fact.has_log()) phiB = regularized_phi(g, SingularityKind::log());

  const double R = g.R;
  PointSet ps = collect(g, opts.subset_halfwidth, [R, m](const int* l, double r) {
    bool origin = true;
    for (int d = 0; d < m; ++d) origin = origin && l[d] == 0;
    return !origin && r < R;
  });

  struct Radial {
    double r, cut;
    cplx alpha, beta, k, kt;
  };
  const bool need_full = opts.primitive_radius > 0.0;
  const std::vector<Radial> rad = eval_unique<Radial>(ps, [&](double r) {
    Radial v{r, cutoff(r, R), 0.0, 0.0, 0.0, 0.0};
    if (fold) v.alpha = fact.alpha(r) * std::pow(r, 2.0 * fold->q);
    if (fact.has_log()) v.beta = fact.beta(r);
    if (need_full && r < opts.primitive_radius) {
      v.k = fact.kernel(r);
      v.kt = fact.ktilde(r);
    }
    return v;
  });

  CorrectionWeights w;
  w.grid = g;
  w.data_grid = data_grid;
  w.refine = opts.refine;
  w.subset_halfwidth = opts.subset_halfwidth;
  cplx w0 = fact.ktilde0;
  if (fold && fold->q == 0) w0 += fact.alpha0 * phiA[0];
  if (fact.has_log()) w0 += fact.beta0 * phiB[0];
  w.center_weight = w0;

  const std::size_t np = ps.offs.size();
  w.indices.assign((np + 1) * static_cast<std::size_t>(m), 0);
  w.values.resize(np + 1);
  w.values[0] = w0;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(np); ++i) {
    const std::size_t off = ps.offs[static_cast<std::size_t>(i)];
    const Radial& v = rad[ps.slot[static_cast<std::size_t>(i)]];
    cplx val = 0.0;
    if (need_full && v.r < opts.primitive_radius) {
      cplx sing = v.kt;
      if (fold) sing += v.alpha * phiA[off];
      if (fact.has_log()) sing += v.beta * phiB[off];
      val = v.cut * sing + (1.0 - v.cut) * v.k - v.k;
    } else {
      if (fold) val += v.alpha * (phiA[off] - std::pow(v.r, -fold->nu));
      if (fact.has_log()) val += v.beta * (phiB[off] - std::log(v.r));
      val *= v.cut;
    }
    w.values[static_cast<std::size_t>(i) + 1] = val;
    g.logical_index(off, &w.indices[(static_cast<std::size_t>(i) + 1) * static_cast<std::size_t>(m)]);
  }
  return w;
}

std::vector<cplx> kernel_values(const GridSpec& grid, const KernelFactorization& fact) {
  const int m = grid.m;
  PointSet ps = collect(grid, std::nullopt, [m](const int* l, double) {
    for (int d = 0; d < m; ++d)
      if (l[d] != 0) return true;
    return false;
  });
  const auto vals = eval_unique<cplx>(ps, [&](double r) { return fact.kernel(r); });
  std::vector<cplx> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < ps.offs.size(); ++i) out[ps.offs[i]] = vals[ps.slot[i]];
  return out;
}

std::vector<cplx> kernel_values(const CorrectionWeights& weights, const KernelFactorization& fact) {
  const GridSpec& g = weights.grid;
  const int m = g.m;
  PointSet ps = collect(g, weights.subset_halfwidth, [m](const int* l, double) {
    for (int d = 0; d < m; ++d)
      if (l[d] != 0) return true;
    return false;
  });
  const auto vals = eval_unique<cplx>(ps, [&](double r) { return fact.kernel(r); });
  std::vector<cplx> out(g.size(), 0.0);
  for (std::size_t i = 0; i < ps.offs.size(); ++i) out[ps.offs[i]] = vals[ps.slot[i]];
  return out;
}

cplx apply_rule(const CorrectionWeights& weights, const std::vector<cplx>& kv, const std::vector<cplx>& f) {
  const GridSpec& g = weights.grid;
  if (kv.size() != g.size() || f.size() != g.size())
    throw std::invalid_argument("apply_rule: arrays do not match the construction grid");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += kv[i] * f[i];
  for (std::size_t e = 0; e < weights.values.size(); ++e)
    s += weights.values[e] * f[g.offset_of(&weights.indices[e * static_cast<std::size_t>(g.m)])];
  return g.det_chi / static_cast<double>(g.nbar()) * s;
}

KernelSpectrum kernel_spectrum(const CorrectionWeights& weights, const std::vector<cplx>& kv) {
  const GridSpec& g = weights.grid;
  const GridSpec& c = weights.data_grid;
  if (kv.size() != g.size()) throw std::invalid_argument("kernel_spectrum: kernel array does not match the grid");
  std::vector<cplx> W = kv;
  for (std::size_t e = 0; e < weights.values.size(); ++e)
    W[g.offset_of(&weights.indices[e * static_cast<std::size_t>(g.m)])] += weights.values[e];

  KernelSpectrum ks;
  ks.grid = c;
  if (weights.subset_halfwidth) {
    ks.coeffs = partial_dft(W, g, *weights.subset_halfwidth, c);
    return ks;
  }
  fft::dft(W, g.dims());
  if (weights.refine == 1) {
    ks.coeffs = std::move(W);
    return ks;
  }
  ks.coeffs.resize(c.size());
  int k[4];
  for (std::size_t off = 0; off < c.size(); ++off) {
    c.logical_index(off, k);
    ks.coeffs[off] = W[g.offset_of(k)];
  }
  return ks;
}

KernelSpectrum build_spectrum(const GridSpec& data_grid, const KernelFactorization& fact, const BuildOptions& opts) {
  const CorrectionWeights w = build_weights(data_grid, fact, opts);
  return kernel_spectrum(w, kernel_values(w, fact));
}

}  // namespace singquad
