// singquad: convergence suites, weight/spectrum dumps, scattering drivers, function probes.

#include "singquad/bie.hpp"
#include "singquad/convolve.hpp"
#include "singquad/io.hpp"
#include "singquad/lippmann_schwinger.hpp"
#include "singquad/oracles.hpp"
#include "singquad/specfun.hpp"
#include "singquad/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

using namespace singquad;

namespace {

constexpr double kPi = std::numbers::pi;

// Flags from a JSON object, inserted ahead of the command line so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    std::ifstream is(args[i + 1]);
    if (!is) throw std::runtime_error("cannot open config " + args[i + 1]);
    const auto j = nlohmann::json::parse(is);
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
    std::vector<std::string> extra;
    for (const auto& [key, val] : j.items()) {
      const std::string flag = "--" + key;
      bool given = false;
      for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
      if (given) continue;
      auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (val.is_boolean()) {
        if (val.get<bool>()) extra.push_back(flag);
      } else if (val.is_array()) {
        extra.push_back(flag);
        for (const auto& e : val) extra.push_back(text(e));
      } else {
        extra.push_back(flag);
        extra.push_back(text(val));
      }
    }
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    args.insert(args.end(), extra.begin(), extra.end());
    break;
  }
  return args;
}

std::vector<double> diag_chi(int m, const std::vector<double>& chi) {
  if (chi.size() == static_cast<std::size_t>(m * m)) return chi;
  if (chi.size() != 1) throw std::invalid_argument("--chi takes 1 or m*m values");
  std::vector<double> c(static_cast<std::size_t>(m * m), 0.0);
  for (int d = 0; d < m; ++d) c[static_cast<std::size_t>(d * m + d)] = chi[0];
  return c;
}

KernelFactorization make_kernel(const std::string& name, int n, double kre, double kim) {
  if (name == "static") return static_kernel(n);
  if (name == "helmholtz") return helmholtz(n, cplx(kre, kim));
  throw std::invalid_argument("unknown kernel " + name);
}

void write_field(const std::string& path, const std::string& format, const io::FieldData& f) {
  if (format == "bin") io::write_field_bin(path + ".bin", f);
  else io::write_field_csv(path + ".csv", f);
}

void write_residuals(const std::string& path, const GmresResult& r) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.residuals.size(); ++i) rows.push_back({std::to_string(i + 1), io::fmt17(r.residuals[i])});
  io::write_table_csv(path, {"iteration", "relative_residual"}, rows);
}

std::vector<Curve> read_curves(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open curve file " + path);
  const auto j = nlohmann::json::parse(is);
  std::vector<Curve> out;
  for (const auto& c : j) {
    const std::string type = c.at("type").get<std::string>();
    const auto ctr = c.at("center").get<std::vector<double>>();
    if (ctr.size() != 2) throw std::invalid_argument("curve center must have two entries");
    if (type == "kite") out.push_back(Curve::kite({ctr[0], ctr[1]}));
    else if (type == "circle") out.push_back(Curve::circle({ctr[0], ctr[1]}, c.value("radius", 1.0)));
    else throw std::invalid_argument("unsupported curve type " + type);
  }
  return out;
}

Medium read_medium(const std::string& spec) {
  if (spec == "three-bump" || spec == "builtin") return three_bump_medium();
  if (spec == "homogeneous") return homogeneous_medium();
  std::ifstream is(spec);
  if (!is) throw std::runtime_error("unknown medium or unreadable file: " + spec);
  const auto j = nlohmann::json::parse(is);
  std::vector<Vec2> centers;
  for (const auto& c : j.at("centers")) {
    const auto v = c.get<std::vector<double>>();
    centers.push_back({v.at(0), v.at(1)});
  }
  return bump_medium(centers, j.value("amplitude", 0.9));
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("SINGQUAD_NUM_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"Corrected trapezoidal rules for weakly singular convolutions"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string out_dir = "out", format = "csv";
  int refine = 0;
  unsigned seed = 20240601;
  std::string config_unused;
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--format", format, "csv, json (suites) or bin (fields)");
  app.add_option("--refine", refine, "construction-grid refinement (0 = suite default)");
  app.add_option("--seed", seed, "seed for randomized inputs");
  app.add_option("--config", config_unused, "JSON file whose keys mirror the flags");
  app.add_flag_callback("--list-suites", [] {
    for (const auto& s : suite_names()) std::cout << s << "\n";
    std::exit(0);
  });

  // suite
  auto* suite = app.add_subcommand("suite", "run a convergence suite");
  std::string suite_name;
  bool verbose = false;
  suite->add_option("name", suite_name, "p_a p_b p_c h_a h_b imagk ls bie, or all")->required();
  suite->add_flag("-v,--verbose", verbose);

  // weights
  auto* weights = app.add_subcommand("weights", "build and dump weights");
  weights->require_subcommand(1);
  int w_m = 1, w_n = 2;
  std::vector<int> w_N{10};
  std::vector<double> w_chi{6.0};
  double w_R = 0.0, w_kre = 0.0, w_kim = 0.0, w_nu = 0.0;
  std::string w_kernel = "static", w_kind = "log";
  std::optional<std::vector<int>> w_box;
  auto grid_opts = [&](CLI::App* s) {
    s->add_option("--m", w_m, "dimension");
    s->add_option("--N", w_N, "N_j (one value or m values)");
    s->add_option("--chi", w_chi, "chi: one scale or m*m row-major entries");
    s->add_option("--R", w_R, "radius of B_R (0 = inscribed radius)");
  };
  auto kernel_opts = [&](CLI::App* s) {
    s->add_option("--kernel", w_kernel, "static or helmholtz");
    s->add_option("--n", w_n, "dimension of the kernel's space");
    s->add_option("--k", w_kre, "real part of the wavenumber");
    s->add_option("--kimag", w_kim, "imaginary part of the wavenumber");
    s->add_option("--subset", w_box, "subset box half-widths (construction-grid steps)");
  };
  auto* w_phihat = weights->add_subcommand("phihat", "Fourier coefficients of the truncated singularity");
  grid_opts(w_phihat);
  w_phihat->add_option("--kind", w_kind, "log or power");
  w_phihat->add_option("--nu", w_nu, "power exponent");
  auto* w_build = weights->add_subcommand("build", "correction weights as JSON");
  grid_opts(w_build);
  kernel_opts(w_build);
  auto* w_spec = weights->add_subcommand("spectrum", "kernel spectrum as binary");
  grid_opts(w_spec);
  kernel_opts(w_spec);

  // scatter
  auto* scatter = app.add_subcommand("scatter", "scattering drivers");
  scatter->require_subcommand(1);
  double s_k = 5.0 * kPi, s_L = 6.0, s_R = kPi;
  int s_N = 160;
  std::string s_medium = "three-bump", s_curves;
  std::vector<double> s_dir;
  int s_angles = 360;
  auto* s_ls = scatter->add_subcommand("ls", "Lippmann-Schwinger volume problem");
  s_ls->add_option("--k", s_k);
  s_ls->add_option("--domain", s_L, "half-width L of [-L, L]^2");
  s_ls->add_option("--N", s_N);
  s_ls->add_option("--medium", s_medium, "three-bump, homogeneous, or a JSON file {centers, amplitude}");
  s_ls->add_option("--direction", s_dir, "incident direction (default 1 0)")->expected(2);
  auto* s_bie = scatter->add_subcommand("bie", "sound-soft obstacles, combined field equation");
  s_bie->add_option("--k", s_k);
  s_bie->add_option("--N", s_N, "nodes per curve");
  s_bie->add_option("--curves", s_curves, "JSON list of {type, center[, radius]}; default two kites");
  s_bie->add_option("--R", s_R, "parameter-domain cut-off radius");
  s_bie->add_option("--direction", s_dir, "incident direction (default (1,-1)/sqrt2)")->expected(2);
  s_bie->add_option("--angles", s_angles, "far-field directions");

  // specfun / oracle probes
  auto* sf = app.add_subcommand("specfun", "evaluate special functions");
  auto* sf_eval = sf->add_subcommand("eval", "print one value");
  sf->require_subcommand(1);
  std::string fn;
  int f_m = 1;
  double f_mu = 1.0, f_x = 0.0;
  sf_eval->add_option("fn", fn, "A L M Ci Si IJ0 m1_tail m2_tail")->required();
  sf_eval->add_option("--m", f_m);
  sf_eval->add_option("--mu", f_mu);
  sf_eval->add_option("--x", f_x, "argument")->required();
  auto* orc = app.add_subcommand("oracle", "evaluate reference computations");
  auto* orc_eval = orc->add_subcommand("eval", "print one value");
  orc->require_subcommand(1);
  int o_n = 2;
  orc_eval->add_option("fn", fn, "gaussian (closed form), helmholtz0 (origin), moment, e1, i0")->required();
  orc_eval->add_option("--m", f_m);
  orc_eval->add_option("--n", o_n);
  orc_eval->add_option("--mu", f_mu);
  orc_eval->add_option("--x", f_x, "r, k, rho or x");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "singquad: " << e.what() << "\n";
    return 2;
  }

  try {
    std::cout.precision(17);
    if (*suite) {
      SuiteOptions so;
      if (refine > 0) so.refine = refine;
      so.seed = seed;
      so.verbose = verbose;
      std::vector<std::string> names = suite_name == "all" ? suite_names() : std::vector<std::string>{suite_name};
      bool ok = true;
      for (const auto& nm : names) {
        const SuiteReport rep = run_suite(nm, so);
        std::cout << rep.table() << std::endl;
        rep.write(out_dir, format);
        ok = ok && rep.passed();
      }
      return ok ? 0 : 1;
    }
    if (*weights) {
      std::vector<int> N = w_N;
      if (N.size() == 1 && w_m > 1) N.assign(static_cast<std::size_t>(w_m), N[0]);
      const GridSpec g = GridSpec::make(w_m, N, diag_chi(w_m, w_chi), w_R > 0.0 ? std::optional<double>(w_R) : std::nullopt);
      std::filesystem::create_directories(out_dir);
      if (*w_phihat) {
        const SingularityKind kind = w_kind == "log" ? SingularityKind::log() : SingularityKind::power(w_nu);
        const auto tab = phi_hat_table(g, kind);
        KernelSpectrum ks{g, std::vector<cplx>(tab.begin(), tab.end())};
        const auto ordered = io::spectrum_file_order(ks);
        std::vector<int> dims = g.dims();
        io::write_field_csv(out_dir + "/phihat.csv", io::FieldData{dims, ordered});
        std::cout << "wrote " << out_dir << "/phihat.csv (index i_j = k_j + N_j)\n";
        return 0;
      }
      BuildOptions bo;
      bo.refine = std::max(1, refine);
      bo.subset_halfwidth = w_box;
      const auto fact = make_kernel(w_kernel, w_n, w_kre, w_kim);
      const auto w = build_weights(g, fact, bo);
      if (*w_build) {
        io::write_weights_json(out_dir + "/weights.json", w);
        std::cout << "wrote " << w.count() << " weights to " << out_dir << "/weights.json\n";
        return 0;
      }
      io::write_spectrum(out_dir + "/spectrum.bin", kernel_spectrum(w, kernel_values(w, fact)));
      std::cout << "wrote " << out_dir << "/spectrum.bin\n";
      return 0;
    }
    if (*scatter) {
      std::filesystem::create_directories(out_dir);
      if (*s_ls) {
        LsConfig cfg;
        cfg.k = s_k;
        cfg.half_width = s_L;
        cfg.N = s_N;
        cfg.refine = std::max(1, refine);
        if (!s_dir.empty()) cfg.direction = {s_dir[0], s_dir[1]};
        const auto sol = solve_lippmann_schwinger(read_medium(s_medium), cfg);
        write_field(out_dir + "/ls_field", format, io::FieldData{{s_N + 1, s_N + 1}, sol.u});
        write_residuals(out_dir + "/ls_residuals.csv", sol.stats);
        std::cout << "GMRES: " << sol.stats.iterations << " iterations on " << sol.unknowns << " unknowns\n";
        return 0;
      }
      std::vector<Curve> curves = s_curves.empty() ? std::vector<Curve>{Curve::kite({2.0, 0.0}), Curve::kite({-2.0, 0.0})}
                                                   : read_curves(s_curves);
      Vec2 dir = s_dir.empty() ? Vec2{1.0, -1.0} : Vec2{s_dir[0], s_dir[1]};
      BieConfig cfg;
      cfg.N = s_N;
      cfg.R = s_R;
      const auto sol = solve_bie(curves, s_k, dir, cfg);
      write_field(out_dir + "/bie_density", format, io::FieldData{{static_cast<int>(curves.size()), s_N}, sol.psi});
      std::vector<Vec2> dirs;
      for (int a = 0; a < s_angles; ++a) dirs.push_back({std::cos(2.0 * kPi * a / s_angles), std::sin(2.0 * kPi * a / s_angles)});
      const auto ff = far_field(sol, dirs);
      std::vector<std::vector<std::string>> rows;
      for (int a = 0; a < s_angles; ++a)
        rows.push_back({io::fmt17(2.0 * kPi * a / s_angles), io::fmt17(ff[static_cast<std::size_t>(a)].real()),
                        io::fmt17(ff[static_cast<std::size_t>(a)].imag()), io::fmt17(std::abs(ff[static_cast<std::size_t>(a)]))});
      io::write_table_csv(out_dir + "/bie_farfield.csv", {"angle", "re", "im", "abs"}, rows);
      write_residuals(out_dir + "/bie_residuals.csv", sol.stats);
      std::cout << "GMRES: " << sol.stats.iterations << " iterations\n";
      return 0;
    }
    if (*sf) {
      double v;
      if (fn == "A") v = specfun::a_fun(f_m, f_x);
      else if (fn == "L") v = specfun::l_fun(f_m, f_x);
      else if (fn == "M") v = specfun::m_fun(f_mu, f_m, f_x);
      else if (fn == "Ci") v = specfun::gen_cosine_integral(f_mu, f_x);
      else if (fn == "Si") v = specfun::sine_integral(f_x);
      else if (fn == "IJ0") v = specfun::j0_integral(f_x);
      else if (fn == "m1_tail") v = specfun::m1_tail(f_mu, f_x);
      else if (fn == "m2_tail") v = specfun::m2_tail(f_mu, f_x);
      else throw std::invalid_argument("unknown function " + fn);
      std::cout << v << "\n";
      return 0;
    }
    if (*orc) {
      if (fn == "gaussian") std::cout << oracles::exact_gaussian_potential(f_m, o_n, f_x) << "\n";
      else if (fn == "helmholtz0") {
        const auto v = oracles::helmholtz_gaussian_origin(f_m, o_n, f_x);
        std::cout << v.real() << " " << v.imag() << "\n";
      } else if (fn == "moment") {
        std::cout.precision(20);
        std::cout << oracles::moment_oracle(f_mu, f_m, f_x) << "\n";
      } else if (fn == "e1") std::cout << oracles::expint_e1(f_x) << "\n";
      else if (fn == "i0") std::cout << oracles::bessel_i0(f_x) << "\n";
      else throw std::invalid_argument("unknown oracle " + fn);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "singquad: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
