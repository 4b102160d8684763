#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singquad {

struct SuiteRow {
  std::string series;            // e.g. "m=2,n=3" or "f_B"
  int N = 0;
  double param = 0.0;            // series parameter where N alone is not enough (imagk: lambda)
  double error = 0.0;
  std::optional<double> order;   // log2(E_{N/2} / E_N) within a series
  double seconds = 0.0;
};

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  bool gating = true;  // informational checks do not affect the exit status
};

struct SuiteReport {
  std::string name;
  std::map<std::string, std::string> meta;
  std::vector<SuiteRow> rows;
  std::vector<SuiteCheck> checks;
  double seconds = 0.0;

  bool passed() const;
  const SuiteRow* find(const std::string& series, int N) const;
  std::string table() const;
  std::string to_json() const;
  /// Writes <dir>/<name>.csv or <dir>/<name>.json.
  void write(const std::string& dir, const std::string& format) const;
};

struct SuiteOptions {
  std::optional<int> refine;  // overrides the suite's construction refinement where one applies
  unsigned seed = 20240601;
  bool verbose = false;
};

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Fills in log2(E_{N/2} / E_N) for rows whose series has the row at N/2.
void compute_orders(std::vector<SuiteRow>& rows);

}  // namespace singquad
