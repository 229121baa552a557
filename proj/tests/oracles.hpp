// Test-only oracles: finite-difference derivatives of the action, an
// independent reduced-chart Morse index, deterministic random inputs and a
// helper that runs the CLI binary. Everything here stays independent of the
// analytic code paths it checks.
#pragma once

#include "ccenum/geometry.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace oracles {

using ccenum::Configuration;
using ccenum::MatrixXd;
using ccenum::PotentialParams;
using ccenum::Vector2d;
using ccenum::VectorXd;

// raw mt19937_64 output is pinned by the standard; distributions are not,
// so doubles are derived by hand
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Random well-separated configuration: points in the disk of radius 1.5,
/// pairwise distances at least 0.35.
inline Configuration random_config(int n, std::mt19937_64& rng) {
  Configuration c;
  while (static_cast<int>(c.points.size()) < n) {
    const double r = uniform(rng, 0.3, 1.5);
    const double th = uniform(rng, 0.0, 6.283185307179586);
    const Vector2d p(r * std::cos(th), r * std::sin(th));
    bool ok = true;
    for (const auto& q : c.points)
      if ((p - q).norm() < 0.35) ok = false;
    if (ok) c.points.push_back(p);
  }
  return c;
}

inline VectorXd mass_weighted_residual(const PotentialParams& params,
                                       const Configuration& config) {
  VectorXd g = ccenum::cc_residual(params, config);
  for (int i = 0; i < config.n(); ++i) g.segment<2>(2 * i) *= params.masses[i];
  return g;
}

/// Central-difference gradient of the action, step h.
inline VectorXd fd_gradient(const PotentialParams& params, const Configuration& config,
                            double h = 1e-5) {
  const VectorXd x = config.flat();
  VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (ccenum::action_value(params, Configuration::from_flat(xp)) -
            ccenum::action_value(params, Configuration::from_flat(xm))) /
           (2.0 * h);
  }
  return g;
}

/// Second central differences of the action itself, step h.
inline MatrixXd fd_hessian_action(const PotentialParams& params,
                                  const Configuration& config, double h = 1e-4) {
  const VectorXd x = config.flat();
  const int d = static_cast<int>(x.size());
  MatrixXd hess(d, d);
  auto at = [&](const VectorXd& y) {
    return ccenum::action_value(params, Configuration::from_flat(y));
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      VectorXd pp = x, pm = x, mp = x, mm = x;
      pp(i) += h;
      pp(j) += h;
      pm(i) += h;
      pm(j) -= h;
      mp(i) -= h;
      mp(j) += h;
      mm(i) -= h;
      mm(j) -= h;
      const double v = (at(pp) - at(pm) - at(mp) + at(mm)) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

/// Central-difference Jacobian of the mass-weighted residual, step h.
inline MatrixXd fd_hessian_gradient(const PotentialParams& params,
                                    const Configuration& config, double h = 1e-5) {
  const VectorXd x = config.flat();
  const int d = static_cast<int>(x.size());
  MatrixXd hess(d, d);
  for (int i = 0; i < d; ++i) {
    VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    const VectorXd gp = mass_weighted_residual(params, Configuration::from_flat(xp));
    const VectorXd gm = mass_weighted_residual(params, Configuration::from_flat(xm));
    hess.col(i) = (gp - gm) / (2.0 * h);
  }
  return hess;
}

/// Basis of the shape directions (mass-orthogonal complement of translations,
/// rotation and dilation), built by Gram-Schmidt in the mass inner product.
inline std::vector<VectorXd> shape_basis(const PotentialParams& params,
                                         const Configuration& config) {
  const int n = config.n();
  const int dim = 2 * n;
  VectorXd w(dim);
  for (int i = 0; i < n; ++i) w.segment<2>(2 * i).setConstant(params.masses[i]);
  auto dot_m = [&](const VectorXd& a, const VectorXd& b) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += w(i) * a(i) * b(i);
    return s;
  };
  std::vector<VectorXd> fixed;
  VectorXd tx = VectorXd::Zero(dim), ty = VectorXd::Zero(dim);
  VectorXd vrot(dim), vdil = config.flat();
  for (int i = 0; i < n; ++i) {
    tx(2 * i) = 1.0;
    ty(2 * i + 1) = 1.0;
    vrot(2 * i) = -config.points[i].y();
    vrot(2 * i + 1) = config.points[i].x();
  }
  for (VectorXd v : {tx, ty, vrot, vdil}) {
    for (const auto& f : fixed) v -= dot_m(f, v) * f;
    v /= std::sqrt(dot_m(v, v));
    fixed.push_back(v);
  }
  std::vector<VectorXd> shape;
  for (int k = 0; k < dim && static_cast<int>(shape.size()) < dim - 4; ++k) {
    VectorXd v = VectorXd::Unit(dim, k);
    for (const auto& f : fixed) v -= dot_m(f, v) * f;
    for (const auto& s : shape) v -= dot_m(s, v) * s;
    const double norm2 = dot_m(v, v);
    if (norm2 < 1e-8) continue;
    v /= std::sqrt(norm2);
    shape.push_back(v);
  }
  return shape;
}

/// Morse index of the action restricted to the shape chart, computed purely
/// from finite differences of action_value.
inline int reduced_index_fd(const PotentialParams& params, const Configuration& config,
                            double h = 1e-4) {
  const std::vector<VectorXd> basis = shape_basis(params, config);
  const int d = static_cast<int>(basis.size());
  const VectorXd x = config.flat();
  auto at = [&](const VectorXd& coeffs) {
    VectorXd y = x;
    for (int i = 0; i < d; ++i) y += coeffs(i) * basis[i];
    return ccenum::action_value(params, Configuration::from_flat(y));
  };
  MatrixXd hess(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      VectorXd pp = VectorXd::Zero(d), pm = pp, mp = pp, mm = pp;
      pp(i) += h;
      pp(j) += h;
      pm(i) += h;
      pm(j) -= h;
      mp(i) -= h;
      mp(j) += h;
      mm(i) -= h;
      mm(j) -= h;
      const double v = (at(pp) - at(pm) - at(mp) + at(mm)) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(hess);
  int idx = 0;
  for (int i = 0; i < d; ++i)
    if (eig.eigenvalues()(i) < -1e-6) ++idx;
  return idx;
}

// ---------------------------------------------------------------------------
// CLI harness

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string cli_binary() {
  if (const char* env = std::getenv("CCENUM_BIN")) return env;
  return "tools/ccenum";  // build-tree default
}

inline std::string temp_path(const std::string& tag) {
  static int counter = 0;
  std::ostringstream os;
  os << std::filesystem::temp_directory_path().string() << "/ccenum_test_"
     << ::getpid() << "_" << counter++ << "_" << tag;
  return os.str();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline CliResult run_cli(const std::string& args) {
  CliResult res;
  const std::string out_file = temp_path("stdout");
  const std::string err_file = temp_path("stderr");
  const std::string cmd =
      cli_binary() + " " + args + " >" + out_file + " 2>" + err_file;
  const int rc = std::system(cmd.c_str());
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out_file);
  res.err = slurp(err_file);
  std::filesystem::remove(out_file);
  std::filesystem::remove(err_file);
  return res;
}

}  // namespace oracles
