#pragma once

#include "singquad/quadrature.hpp"

#include <complex>
#include <string>
#include <vector>

namespace singquad::io {

/// Complex samples on a rectangular index block, row-major over `dims`.
struct FieldData {
  std::vector<int> dims;
  std::vector<cplx> values;
};

/// CSV with columns i0..i{m-1},re,im; 17 significant digits so doubles round-trip.
void write_field_csv(const std::string& path, const FieldData& f);
FieldData read_field_csv(const std::string& path);

/// Binary: "SQFD", u32 version, u32 m, m x u32 dims, then (re, im) doubles, little endian.
void write_field_bin(const std::string& path, const FieldData& f);
FieldData read_field_bin(const std::string& path);

/// Binary: "SQSP", u32 version, u32 m, m x u32 N_j, then prod(2 N_j) complex doubles with the
/// frequency index k_j running from -N_j to N_j - 1 (axis 0 slowest).
void write_spectrum(const std::string& path, const KernelSpectrum& s);
struct SpectrumData {
  std::vector<int> N;
  std::vector<cplx> coeffs;  // order as in the file
};
SpectrumData read_spectrum(const std::string& path);
/// The coefficients of `s` in file order.
std::vector<cplx> spectrum_file_order(const KernelSpectrum& s);

/// JSON: grid, refine, subset box, and the entries {index: [...], re, im}.
void write_weights_json(const std::string& path, const CorrectionWeights& w);
struct WeightsData {
  int m = 0;
  std::vector<int> N;
  int refine = 1;
  double R = 0.0;
  std::vector<std::vector<int>> indices;
  std::vector<cplx> values;
};
WeightsData read_weights_json(const std::string& path);

/// Plain CSV table with a header row.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

/// printf("%.17g").
std::string fmt17(double v);

}  // namespace singquad::io
