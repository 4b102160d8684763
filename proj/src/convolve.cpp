#include "singquad/convolve.hpp"

#include "singquad/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace singquad {

std::size_t window_size(const GridSpec& grid) {
  std::size_t n = 1;
  for (int nj : grid.N) n *= static_cast<std::size_t>(nj) + 1;
  return n;
}

std::vector<double> window_point(const GridSpec& grid, const std::vector<double>& origin, std::size_t index) {
  const int m = grid.m;
  std::vector<double> y(static_cast<std::size_t>(m));
  for (int d = m - 1; d >= 0; --d) {
    const std::size_t e = static_cast<std::size_t>(grid.N[static_cast<std::size_t>(d)]) + 1;
    y[static_cast<std::size_t>(d)] = static_cast<double>(index % e) / grid.N[static_cast<std::size_t>(d)];
    index /= e;
  }
  std::vector<double> x(origin.empty() ? std::vector<double>(static_cast<std::size_t>(m), 0.0) : origin);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(i)] += grid.chi[static_cast<std::size_t>(i * m + j)] * y[static_cast<std::size_t>(j)];
  return x;
}

SourceField SourceField::zeros(const GridSpec& grid) { return SourceField{grid, std::vector<cplx>(singquad::window_size(grid), 0.0)}; }

std::size_t SourceField::window_size() const { return singquad::window_size(grid); }

std::vector<int> SourceField::window_dims() const {
  std::vector<int> d(grid.N);
  for (int& v : d) ++v;
  return d;
}

double SourceField::boundary_max() const {
  const int m = grid.m;
  double mx = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::size_t rem = i;
    bool edge = false;
    for (int d = m - 1; d >= 0; --d) {
      const std::size_t e = static_cast<std::size_t>(grid.N[static_cast<std::size_t>(d)]) + 1;
      const std::size_t c = rem % e;
      rem /= e;
      if (c == 0 || c + 1 == e) edge = true;
    }
    if (edge) mx = std::max(mx, std::abs(samples[i]));
  }
  return mx;
}

namespace {

// Storage offset on the full grid of window index i (window index j maps to storage j).
template <class F>
void for_window(const GridSpec& grid, F&& f) {
  const int m = grid.m;
  const std::size_t n = window_size(grid);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rem = i, off = 0, stride = 1;
    for (int d = m - 1; d >= 0; --d) {
      const std::size_t e = static_cast<std::size_t>(grid.N[static_cast<std::size_t>(d)]) + 1;
      off += (rem % e) * stride;
      rem /= e;
      stride *= 2 * static_cast<std::size_t>(grid.N[static_cast<std::size_t>(d)]);
    }
    f(i, off);
  }
}

}  // namespace

std::vector<cplx> embed(const SourceField& source) {
  if (source.samples.size() != window_size(source.grid)) throw std::invalid_argument("embed: sample count mismatch");
  std::vector<cplx> full(source.grid.size(), 0.0);
  for_window(source.grid, [&](std::size_t i, std::size_t off) { full[off] = source.samples[i]; });
  return full;
}

std::vector<cplx> restrict_window(const GridSpec& grid, const std::vector<cplx>& full) {
  if (full.size() != grid.size()) throw std::invalid_argument("restrict_window: size mismatch");
  std::vector<cplx> out(window_size(grid));
  for_window(grid, [&](std::size_t i, std::size_t off) { out[i] = full[off]; });
  return out;
}

Convolver::Convolver(KernelSpectrum spectrum) : spec_(std::move(spectrum)) {
  if (spec_.coeffs.size() != spec_.grid.size()) throw std::invalid_argument("Convolver: spectrum size mismatch");
}

std::size_t Convolver::window_size() const { return singquad::window_size(spec_.grid); }

void Convolver::apply(const std::vector<cplx>& in, std::vector<cplx>& out) const {
  const GridSpec& g = spec_.grid;
  if (in.size() != window_size()) throw std::invalid_argument("Convolver::apply: input size mismatch");
  std::vector<cplx> full(g.size(), 0.0);
  for_window(g, [&](std::size_t i, std::size_t off) { full[off] = in[i]; });
  const auto dims = g.dims();
  fft::dft(full, dims);
  for (std::size_t i = 0; i < full.size(); ++i) full[i] *= spec_.coeffs[i];
  fft::idft(full, dims);
  const double scale = g.det_chi * std::ldexp(1.0, g.m);
  out.resize(in.size());
  for_window(g, [&](std::size_t i, std::size_t off) { out[i] = scale * full[off]; });
}

PotentialField fast_convolve(const KernelSpectrum& spectrum, const SourceField& source) {
  if (!spectrum.grid.same_layout(source.grid)) throw std::invalid_argument("fast_convolve: grid mismatch");
  PotentialField out{source.grid, {}};
  Convolver(spectrum).apply(source.samples, out.samples);
  return out;
}

PotentialField direct_convolve(const CorrectionWeights& weights, const std::vector<cplx>& kv, const SourceField& source) {
  if (weights.refine != 1) throw std::invalid_argument("direct_convolve: weights must be built on the data grid");
  const GridSpec& g = weights.grid;
  if (!g.same_layout(source.grid) || kv.size() != g.size()) throw std::invalid_argument("direct_convolve: grid mismatch");
  std::vector<cplx> W = kv;
  const auto dense = weights.dense();
  for (std::size_t i = 0; i < W.size(); ++i) W[i] += dense[i];
  const std::vector<cplx> f = embed(source);
  const int m = g.m;
  const double scale = g.det_chi / static_cast<double>(g.nbar());
  PotentialField out = SourceField::zeros(source.grid);
  std::vector<std::size_t> targets;
  for_window(g, [&](std::size_t, std::size_t off) { targets.push_back(off); });
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < static_cast<long long>(targets.size()); ++t) {
    int x[4], l[4], s[4];
    g.logical_index(targets[static_cast<std::size_t>(t)], x);
    cplx acc = 0.0;
    for (std::size_t off = 0; off < W.size(); ++off) {
      if (W[off] == 0.0) continue;
      g.logical_index(off, l);
      for (int d = 0; d < m; ++d) s[d] = x[d] - l[d];
      acc += W[off] * f[g.offset_of(s)];
    }
    out.samples[static_cast<std::size_t>(t)] = scale * acc;
  }
  return out;
}

}  // namespace singquad
