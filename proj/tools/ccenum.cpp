// ccenum: enumerate planar central configurations for homogeneous potentials
// and report exact counting bounds.

#include "ccenum/bounds.hpp"
#include "ccenum/report.hpp"
#include "ccenum/solver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace ccenum;

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CCENUM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void write_output(const std::string& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write to '" + out_path + "'");
  out << doc;
}

struct CommonOpts {
  RunConfig rc;
  std::string config_path;
  // explicit-flag tracking so --config values lose to flags the user typed
  CLI::Option* n_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* masses_opt = nullptr;
  CLI::Option* starts_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* iters_opt = nullptr;
  CLI::Option* minsep_opt = nullptr;
  CLI::Option* maxrad_opt = nullptr;
  CLI::Option* annulus_opt = nullptr;
  CLI::Option* damping_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  std::vector<double> annulus_pair{0.3, 3.0};
  int threads_flag = 0;

  void attach(CLI::App* cmd, bool with_solver) {
    n_opt = cmd->add_option("--n", rc.n, "number of bodies");
    alpha_opt = cmd->add_option("--alpha", rc.alpha, "homogeneity degree, >= 0");
    masses_opt =
        cmd->add_option("--masses", rc.masses, "comma-separated masses")->delimiter(',');
    if (with_solver) {
      starts_opt = cmd->add_option("--starts", rc.solver.starts, "random starts");
      seed_opt = cmd->add_option("--seed", rc.solver.seed, "RNG seed");
      tol_opt = cmd->add_option("--tol", rc.solver.tol_residual,
                                "residual tolerance (infinity norm)");
      iters_opt = cmd->add_option("--max-iters", rc.solver.max_iters, "iteration cap");
      minsep_opt = cmd->add_option("--min-separation", rc.solver.min_separation,
                                   "collision cutoff");
      maxrad_opt = cmd->add_option("--max-radius", rc.solver.max_radius,
                                   "divergence cutoff");
      annulus_opt = cmd->add_option("--annulus", annulus_pair, "start annulus r_lo,r_hi")
                        ->delimiter(',')
                        ->expected(2);
      damping_opt = cmd->add_option("--damping", rc.solver.damping_init,
                                    "initial damping");
      threads_opt = cmd->add_option("--threads", threads_flag,
                                    "worker threads (default: all cores, env "
                                    "CCENUM_THREADS as fallback)");
    }
    format_opt = cmd->add_option("--format", rc.format, "json | csv | text")
                     ->check(CLI::IsMember({"json", "csv", "text"}));
    out_opt = cmd->add_option("--out", rc.out, "write the report to a file");
    cmd->add_option("--config", config_path, "JSON RunConfig file");
  }

  // config file first, explicit flags override
  void finalize() {
    if (!config_path.empty()) {
      RunConfig base = runconfig_from_json_file(config_path);
      auto keep = [](CLI::Option* o) { return o && o->count() > 0; };
      if (!keep(n_opt)) rc.n = base.n;
      if (!keep(alpha_opt)) rc.alpha = base.alpha;
      if (!keep(masses_opt) && !base.masses.empty()) rc.masses = base.masses;
      if (!keep(starts_opt)) rc.solver.starts = base.solver.starts;
      if (!keep(seed_opt)) rc.solver.seed = base.solver.seed;
      if (!keep(tol_opt)) rc.solver.tol_residual = base.solver.tol_residual;
      if (!keep(iters_opt)) rc.solver.max_iters = base.solver.max_iters;
      if (!keep(minsep_opt)) rc.solver.min_separation = base.solver.min_separation;
      if (!keep(maxrad_opt)) rc.solver.max_radius = base.solver.max_radius;
      if (!keep(annulus_opt)) rc.solver.annulus = base.solver.annulus;
      if (!keep(damping_opt)) rc.solver.damping_init = base.solver.damping_init;
      if (!keep(threads_opt)) threads_flag = base.threads;
      if (!keep(format_opt)) rc.format = base.format;
      if (!keep(out_opt)) rc.out = base.out;
    }
    if (annulus_opt && annulus_opt->count() > 0) {
      rc.solver.annulus.r_lo = annulus_pair[0];
      rc.solver.annulus.r_hi = annulus_pair[1];
    }
    rc.threads = resolve_threads(threads_flag);
    if (rc.masses.empty())
      throw std::invalid_argument("--masses is required (or supply --config)");
    if (static_cast<int>(rc.masses.size()) != rc.n)
      throw std::invalid_argument("masses list length must equal n");
  }
};

int cmd_bounds(int n, const std::string& format, const std::string& out_path) {
  if (n < 2) {
    std::cerr << "error: --n must be >= 2\n";
    return 2;
  }
  write_output(render_bounds(bounds_report(n), format), out_path);
  return 0;
}

int cmd_enumerate(CommonOpts& opts) {
  opts.finalize();
  const PotentialParams params = params_of(opts.rc);
  const std::vector<CentralConfigClass> classes =
      enumerate(params, opts.rc.solver, opts.rc.threads);
  write_output(render_classes(opts.rc, classes, opts.rc.format), opts.rc.out);
  std::cout << class_summary_line(opts.rc.n, classes) << "\n";
  return 0;
}

int cmd_collinear(CommonOpts& opts, const std::vector<int>& one_ordering) {
  opts.finalize();
  const PotentialParams params = params_of(opts.rc);
  std::vector<std::vector<int>> orderings;
  if (!one_ordering.empty())
    orderings.push_back(canonical_ordering(one_ordering));
  else
    orderings = collinear_orderings(opts.rc.n);

  std::vector<OrderingRow> rows;
  int converged = 0;
  for (const auto& ord : orderings) {
    OrderingRow row;
    row.ordering = ord;
    const RefineResult rr = solve_collinear(params, ord, opts.rc.solver);
    if (rr.ok()) {
      const auto prepared = prepare_class_config(params, rr.config, opts.rc.solver);
      if (prepared) {
        row.cls = build_class(params, *prepared);
        row.cls.id = static_cast<int>(rows.size());
        row.converged = true;
        ++converged;
      }
    }
    rows.push_back(std::move(row));
  }
  write_output(render_collinear(opts.rc, rows, opts.rc.format), opts.rc.out);
  int distinct = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].converged) continue;
    bool dup = false;
    for (size_t j = 0; j < i; ++j)
      if (rows[j].converged && same_class(rows[i].cls.fp, rows[j].cls.fp)) dup = true;
    if (!dup) ++distinct;
  }
  std::cout << "orderings=" << rows.size() << " converged=" << converged
            << " distinct=" << distinct << "\n";
  return 0;
}

int cmd_sweep(CommonOpts& opts, double alpha_lo, double alpha_hi, int steps) {
  opts.finalize();
  opts.rc.alpha = alpha_lo;  // enumeration happens at the low end of the sweep
  const PotentialParams params = params_of(opts.rc);
  const std::vector<CentralConfigClass> classes =
      enumerate(params, opts.rc.solver, opts.rc.threads);

  ContinuationResult merged;
  for (const auto& cls : classes) {
    ContinuationResult one =
        continue_family(params, cls, alpha_lo, alpha_hi, steps, opts.rc.solver);
    if (merged.alphas.empty()) {
      merged.alphas = one.alphas;
      merged.class_counts.assign(one.alphas.size(), 0);
    }
    for (size_t j = 0; j < merged.class_counts.size(); ++j)
      merged.class_counts[j] += one.class_counts[j];
    merged.tracks.push_back(std::move(one.tracks[0]));
    for (const auto& e : one.events) merged.events.push_back(e);
  }
  write_output(render_sweep(opts.rc, alpha_lo, alpha_hi, merged, opts.rc.format),
               opts.rc.out);
  int lost = 0;
  for (const auto& t : merged.tracks)
    if (t.lost) ++lost;
  std::cout << "tracks=" << merged.tracks.size() << " lost=" << lost
            << " degenerations=" << merged.events.size() << "\n";
  return 0;
}

int cmd_fewnomial(int n, bool dump, bool as_json, const std::string& out_path) {
  if (n < 2) {
    std::cerr << "error: --n must be >= 2\n";
    return 2;
  }
  VectorXd masses = VectorXd::Ones(n);  // the degree data is mass-independent
  const FewnomialSystem sys = build_system(PotentialParams(1.0, masses));
  std::string doc;
  if (as_json)
    doc = render_fewnomial_json(sys);
  else
    doc = render_fewnomial_summary(sys) + "\n";
  if (dump) doc += render_fewnomial_dump(sys);
  write_output(doc, out_path);
  return 0;
}

int cmd_verify(const std::string& path) {
  const VerifyOutcome outcome = verify_report_file(path);
  for (const auto& line : outcome.lines) std::cout << line << "\n";
  std::cout << "verified=" << outcome.checked - outcome.failed
            << " failed=" << outcome.failed << "\n";
  return outcome.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ccenum: numerical enumeration of planar central configurations under "
      "homogeneous potentials, with exact counting bounds"};
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "exact upper/lower class-count bounds");
  int bounds_n = 0;
  std::string bounds_format = "text";
  std::string bounds_out;
  bool bounds_json = false;
  bounds_cmd->add_option("--n", bounds_n, "number of bodies")->required();
  bounds_cmd->add_flag("--json", bounds_json, "shorthand for --format json");
  bounds_cmd->add_option("--format", bounds_format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  bounds_cmd->add_option("--out", bounds_out, "write the report to a file");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "multi-start enumeration of classes");
  CommonOpts enum_opts;
  enum_opts.attach(enum_cmd, true);

  // collinear
  auto* col_cmd = app.add_subcommand("collinear", "collinear classes per ordering");
  CommonOpts col_opts;
  std::vector<int> col_ordering;
  col_opts.attach(col_cmd, true);
  col_cmd->add_option("--ordering", col_ordering, "solve a single ordering")
      ->delimiter(',');

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "continuation of all classes in alpha");
  CommonOpts sweep_opts;
  double alpha_lo = 0.0, alpha_hi = 1.0;
  int sweep_steps = 10;
  sweep_opts.attach(sweep_cmd, true);
  sweep_cmd->add_option("--alpha-lo", alpha_lo, "sweep start")->required();
  sweep_cmd->add_option("--alpha-hi", alpha_hi, "sweep end")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "grid steps");

  // fewnomial
  auto* few_cmd = app.add_subcommand("fewnomial", "augmented polynomial system + bound");
  int few_n = 0;
  bool few_dump = false, few_json = false;
  std::string few_out;
  few_cmd->add_option("--n", few_n, "number of bodies")->required();
  few_cmd->add_flag("--dump", few_dump, "print the polynomial equations");
  few_cmd->add_flag("--json", few_json, "JSON degree summary");
  few_cmd->add_option("--out", few_out, "write the report to a file");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "re-check a class report file");
  std::string verify_path;
  verify_cmd->add_option("file", verify_path, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds_cmd->parsed())
      return cmd_bounds(bounds_n, bounds_json ? "json" : bounds_format, bounds_out);
    if (enum_cmd->parsed()) return cmd_enumerate(enum_opts);
    if (col_cmd->parsed()) return cmd_collinear(col_opts, col_ordering);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, alpha_lo, alpha_hi, sweep_steps);
    if (few_cmd->parsed()) return cmd_fewnomial(few_n, few_dump, few_json, few_out);
    if (verify_cmd->parsed()) return cmd_verify(verify_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
