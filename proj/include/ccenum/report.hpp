#pragma once

#include "ccenum/bounds.hpp"
#include "ccenum/classify.hpp"
#include "ccenum/solver.hpp"

#include <string>
#include <vector>

namespace ccenum {

/// One CLI invocation's inputs. Everything that influences the numerical
/// result (not threads, format or output path) is embedded in reports so a
/// result file reproduces itself.
struct RunConfig {
  int n = 3;
  double alpha = 1.0;
  std::vector<double> masses;
  SolverSettings solver;
  int threads = 0;              // 0 = all cores; never serialized
  std::string format = "json";  // json | csv | text
  std::string out;              // empty = stdout only
};

PotentialParams params_of(const RunConfig& rc);

/// Decimal string with 17 significant digits; round-trips doubles exactly.
std::string format_real(double x);
double parse_real(const std::string& s);

std::string render_bounds(const BoundsReport& rep, const std::string& format);

std::string render_classes(const RunConfig& rc,
                           const std::vector<CentralConfigClass>& classes,
                           const std::string& format);
std::string class_summary_line(int n, const std::vector<CentralConfigClass>& classes);

struct OrderingRow {
  std::vector<int> ordering;
  bool converged = false;
  CentralConfigClass cls;  // valid when converged
};
std::string render_collinear(const RunConfig& rc, const std::vector<OrderingRow>& rows,
                             const std::string& format);

std::string render_sweep(const RunConfig& rc, double alpha_lo, double alpha_hi,
                         const ContinuationResult& result, const std::string& format);

std::string render_fewnomial_summary(const FewnomialSystem& sys);
std::string render_fewnomial_dump(const FewnomialSystem& sys);
std::string render_fewnomial_json(const FewnomialSystem& sys);

struct VerifyOutcome {
  int checked = 0;
  int failed = 0;
  std::vector<std::string> lines;  // one pass/fail line per class
  bool all_pass() const { return failed == 0; }
};

/// Re-checks every class record of a report file against the Cartesian,
/// distance-formulation and matrix residuals. Throws std::invalid_argument
/// with a diagnostic message when the file is malformed.
VerifyOutcome verify_report_file(const std::string& path);

/// Loads a RunConfig from a JSON file (same schema as the embedded config,
/// optionally with "format", "out" and "threads").
RunConfig runconfig_from_json_file(const std::string& path);

}  // namespace ccenum
