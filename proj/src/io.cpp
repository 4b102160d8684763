#include "singquad/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace singquad::io {

namespace {

constexpr std::uint32_t kVersion = 1;

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw std::runtime_error("cannot open " + path);
  return is;
}

std::size_t product(const std::vector<int>& d) {
  std::size_t n = 1;
  for (int v : d) {
    if (v < 0) throw std::invalid_argument("negative dimension");
    n *= static_cast<std::size_t>(v);
  }
  return n;
}

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("truncated file");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated file");
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

void put_header(std::ostream& os, const char* magic, const std::vector<int>& dims) {
  os.write(magic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(dims.size()));
  for (int d : dims) put_u32(os, static_cast<std::uint32_t>(d));
}

std::vector<int> get_header(std::istream& is, const char* magic) {
  char mg[4];
  if (!is.read(mg, 4) || std::memcmp(mg, magic, 4) != 0) throw std::runtime_error(std::string("bad magic, expected ") + std::string(magic, 4));
  if (get_u32(is) != kVersion) throw std::runtime_error("unsupported file version");
  const std::uint32_t m = get_u32(is);
  if (m > 8) throw std::runtime_error("implausible dimension in header");
  std::vector<int> dims(m);
  for (auto& d : dims) d = static_cast<int>(get_u32(is));
  return dims;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const FieldData& f) {
  const std::size_t n = product(f.dims);
  if (f.values.size() != n) throw std::invalid_argument("write_field_csv: size mismatch");
  auto os = open_out(path, false);
  for (std::size_t d = 0; d < f.dims.size(); ++d) os << 'i' << d << ',';
  os << "re,im\n";
  std::vector<int> idx(f.dims.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rem = i;
    for (std::size_t d = f.dims.size(); d-- > 0;) {
      idx[d] = static_cast<int>(rem % static_cast<std::size_t>(f.dims[d]));
      rem /= static_cast<std::size_t>(f.dims[d]);
    }
    for (int v : idx) os << v << ',';
    os << fmt17(f.values[i].real()) << ',' << fmt17(f.values[i].imag()) << '\n';
  }
}

FieldData read_field_csv(const std::string& path) {
  auto is = open_in(path, false);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_field_csv: empty file");
  std::size_t m = 0;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ','))
      if (col.size() > 1 && col[0] == 'i' && std::isdigit(static_cast<unsigned char>(col[1]))) ++m;
  }
  FieldData f;
  f.dims.assign(m, 0);
  std::vector<std::vector<int>> idx;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<int> ix(m);
    for (std::size_t d = 0; d < m; ++d) {
      std::getline(ss, tok, ',');
      ix[d] = std::stoi(tok);
      f.dims[d] = std::max(f.dims[d], ix[d] + 1);
    }
    std::getline(ss, tok, ',');
    const double re = std::strtod(tok.c_str(), nullptr);
    std::getline(ss, tok, ',');
    const double im = std::strtod(tok.c_str(), nullptr);
    idx.push_back(std::move(ix));
    f.values.emplace_back(re, im);
  }
  if (product(f.dims) != f.values.size() && !f.values.empty())
    throw std::runtime_error("read_field_csv: rows do not form a full block");
  std::vector<cplx> ordered(f.values.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    std::size_t off = 0;
    for (std::size_t d = 0; d < m; ++d) off = off * static_cast<std::size_t>(f.dims[d]) + static_cast<std::size_t>(idx[r][d]);
    ordered[off] = f.values[r];
  }
  f.values = std::move(ordered);
  return f;
}

void write_field_bin(const std::string& path, const FieldData& f) {
  if (f.values.size() != product(f.dims)) throw std::invalid_argument("write_field_bin: size mismatch");
  auto os = open_out(path, true);
  put_header(os, "SQFD", f.dims);
  for (const auto& v : f.values) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

FieldData read_field_bin(const std::string& path) {
  auto is = open_in(path, true);
  FieldData f;
  f.dims = get_header(is, "SQFD");
  f.values.resize(product(f.dims));
  for (auto& v : f.values) {
    const double re = get_f64(is);
    v = {re, get_f64(is)};
  }
  return f;
}

std::vector<cplx> spectrum_file_order(const KernelSpectrum& s) {
  const GridSpec& g = s.grid;
  std::vector<cplx> out(g.size());
  int k[4];
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t rem = i;
    for (int d = g.m - 1; d >= 0; --d) {
      const int n2 = 2 * g.N[static_cast<std::size_t>(d)];
      k[d] = static_cast<int>(rem % static_cast<std::size_t>(n2)) - g.N[static_cast<std::size_t>(d)];
      rem /= static_cast<std::size_t>(n2);
    }
    out[i] = s.coeffs[g.offset_of(k)];
  }
  return out;
}

void write_spectrum(const std::string& path, const KernelSpectrum& s) {
  if (s.coeffs.size() != s.grid.size()) throw std::invalid_argument("write_spectrum: size mismatch");
  auto os = open_out(path, true);
  put_header(os, "SQSP", s.grid.N);
  for (const auto& v : spectrum_file_order(s)) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

SpectrumData read_spectrum(const std::string& path) {
  auto is = open_in(path, true);
  SpectrumData s;
  s.N = get_header(is, "SQSP");
  std::size_t n = 1;
  for (int v : s.N) n *= 2 * static_cast<std::size_t>(v);
  s.coeffs.resize(n);
  for (auto& v : s.coeffs) {
    const double re = get_f64(is);
    v = {re, get_f64(is)};
  }
  return s;
}

void write_weights_json(const std::string& path, const CorrectionWeights& w) {
  nlohmann::json j;
  j["m"] = w.grid.m;
  j["N"] = w.data_grid.N;
  j["chi"] = w.grid.chi;
  j["R"] = w.grid.R;
  j["refine"] = w.refine;
  if (w.subset_halfwidth) j["subset_halfwidth"] = *w.subset_halfwidth;
  nlohmann::json entries = nlohmann::json::array();
  const std::size_t m = static_cast<std::size_t>(w.grid.m);
  for (std::size_t e = 0; e < w.values.size(); ++e) {
    std::vector<int> ix(w.indices.begin() + static_cast<long>(e * m), w.indices.begin() + static_cast<long>((e + 1) * m));
    entries.push_back({{"index", ix}, {"re", w.values[e].real()}, {"im", w.values[e].imag()}});
  }
  j["weights"] = std::move(entries);
  auto os = open_out(path, false);
  // doubles are written in shortest round-trip form
  os << j.dump(1) << '\n';
}

WeightsData read_weights_json(const std::string& path) {
  auto is = open_in(path, false);
  const nlohmann::json j = nlohmann::json::parse(is);
  WeightsData w;
  w.m = j.at("m").get<int>();
  w.N = j.at("N").get<std::vector<int>>();
  w.refine = j.at("refine").get<int>();
  w.R = j.at("R").get<double>();
  for (const auto& e : j.at("weights")) {
    w.indices.push_back(e.at("index").get<std::vector<int>>());
    w.values.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
  }
  return w;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  auto os = open_out(path, false);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
}

}  // namespace singquad::io
