#pragma once

#include <complex>
#include <vector>

namespace singquad::fft {

using cplx = std::complex<double>;

/// In-place unnormalized multi-dimensional transforms over row-major data with the given
/// extents. forward uses exp(-2 pi i k.l / n), backward exp(+2 pi i k.l / n).
/// Safe to call concurrently from several threads.
void forward(std::vector<cplx>& data, const std::vector<int>& dims);
void backward(std::vector<cplx>& data, const std::vector<int>& dims);

/// DFT with the 1/prod(dims) normalization.
void dft(std::vector<cplx>& data, const std::vector<int>& dims);
/// Unnormalized inverse; idft(dft(x)) == x.
void idft(std::vector<cplx>& data, const std::vector<int>& dims);

}  // namespace singquad::fft
