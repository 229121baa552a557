#include "ccenum/solver.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace ccenum {

void SolverSettings::validate() const {
  if (starts < 1) throw std::invalid_argument("starts must be >= 1");
  if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(annulus.r_lo < annulus.r_hi))
    throw std::invalid_argument("annulus radii must satisfy r_lo < r_hi");
  if (!(annulus.r_lo > 0.0)) throw std::invalid_argument("annulus r_lo must be > 0");
  if (!(min_separation > 0.0)) throw std::invalid_argument("min_separation must be > 0");
  if (!(max_radius > 0.0)) throw std::invalid_argument("max_radius must be > 0");
  if (!(damping_init > 0.0)) throw std::invalid_argument("damping_init must be > 0");
}

const char* to_string(RefineStatus status) {
  switch (status) {
    case RefineStatus::converged: return "converged";
    case RefineStatus::diverged: return "diverged";
    case RefineStatus::collision_approach: return "collision_approach";
    case RefineStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return g.next();
}

double min_separation_of(const Configuration& c) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < c.n(); ++i)
    for (int j = i + 1; j < c.n(); ++j)
      m = std::min(m, (c.points[j] - c.points[i]).norm());
  return m;
}

double max_radius_of(const Configuration& c) {
  double m = 0.0;
  for (const auto& p : c.points) m = std::max(m, p.norm());
  return m;
}

}  // namespace

Configuration annulus_points(int n, std::uint64_t seed, std::uint64_t index,
                             const Annulus& annulus) {
  SplitMix64 g(stream_seed(seed, index));
  Configuration c;
  c.points.resize(n);
  const double lo2 = annulus.r_lo * annulus.r_lo;
  const double hi2 = annulus.r_hi * annulus.r_hi;
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(lo2 + g.uniform01() * (hi2 - lo2));
    const double th = 2.0 * std::numbers::pi * g.uniform01();
    c.points[i] = Vector2d(r * std::cos(th), r * std::sin(th));
  }
  return c;
}

Configuration random_start(int n, std::uint64_t seed, std::uint64_t index,
                           const Annulus& annulus) {
  Configuration c = annulus_points(n, seed, index, annulus);
  Vector2d centroid = Vector2d::Zero();
  for (const auto& p : c.points) centroid += p;
  centroid /= n;
  for (auto& p : c.points) p -= centroid;
  return c;
}

RefineResult refine(const PotentialParams& params, const Configuration& start,
                    const SolverSettings& settings) {
  settings.validate();
  RefineResult out;
  out.config = start;

  if (min_separation_of(start) <= settings.min_separation) {
    out.status = RefineStatus::collision_approach;
    return out;
  }
  if (max_radius_of(start) > settings.max_radius) {
    out.status = RefineStatus::diverged;
    return out;
  }

  auto eval = [&](const Configuration& c, VectorXd& r) -> bool {
    try {
      r = cc_residual(params, c);
    } catch (const std::domain_error&) {
      return false;
    }
    return r.allFinite();
  };

  Configuration cur = start;
  VectorXd r;
  if (!eval(cur, r)) {
    out.status = RefineStatus::collision_approach;
    return out;
  }
  double rnorm = r.norm();
  out.residual_inf = r.lpNorm<Eigen::Infinity>();
  if (out.residual_inf < settings.tol_residual) {
    out.status = RefineStatus::converged;
    out.iterations = 0;
    return out;
  }

  const int dim = 2 * params.n();
  double mu = settings.damping_init;
  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    out.iterations = iter;
    const MatrixXd jac = cc_jacobian(params, cur);
    Eigen::JacobiSVD<MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-8 * sv(0);
    VectorXd coef = svd.matrixU().transpose() * r;
    for (int i = 0; i < dim; ++i)
      coef(i) = sv(i) >= cutoff ? coef(i) * sv(i) / (sv(i) * sv(i) + mu) : 0.0;
    const VectorXd step = -(svd.matrixV() * coef);

    Configuration cand = Configuration::from_flat(cur.flat() + step);
    if (min_separation_of(cand) <= settings.min_separation) {
      out.status = RefineStatus::collision_approach;
      out.config = cur;
      return out;
    }
    if (max_radius_of(cand) > settings.max_radius) {
      out.status = RefineStatus::diverged;
      out.config = cur;
      return out;
    }

    VectorXd rn;
    if (eval(cand, rn) && rn.norm() < rnorm) {
      cur = std::move(cand);
      r = std::move(rn);
      rnorm = r.norm();
      mu = std::max(mu / 3.0, 1e-15);
      out.residual_inf = r.lpNorm<Eigen::Infinity>();
      out.config = cur;
      if (out.residual_inf < settings.tol_residual) {
        out.status = RefineStatus::converged;
        return out;
      }
    } else {
      mu *= 4.0;
      if (mu > 1e14) break;  // damping saturated, no progress possible
    }
  }
  out.status = RefineStatus::iteration_limit;
  out.config = cur;
  return out;
}

std::optional<Configuration> prepare_class_config(const PotentialParams& params,
                                                  const Configuration& converged,
                                                  const SolverSettings& settings) {
  try {
    const Configuration normed = normalize_lambda(params, converged);
    const Configuration canon = canonicalize(params, normed);
    RefineResult polish = refine(params, canon, settings);
    if (!polish.ok()) return std::nullopt;
    return polish.config;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

struct StartOutcome {
  bool ok = false;
  Configuration config;
  Fingerprint fp;
};

}  // namespace

std::vector<CentralConfigClass> enumerate(const PotentialParams& params,
                                          const SolverSettings& settings,
                                          int threads) {
  settings.validate();
  const int total = settings.starts;
  std::vector<StartOutcome> outcomes(total);

  auto run_one = [&](int idx) {
    const Configuration start =
        random_start(params.n(), settings.seed, static_cast<std::uint64_t>(idx),
                     settings.annulus);
    const RefineResult rr = refine(params, start, settings);
    if (!rr.ok()) return;
    const auto prepared = prepare_class_config(params, rr.config, settings);
    if (!prepared) return;
    outcomes[idx].config = *prepared;
    outcomes[idx].fp = fingerprint(*prepared);
    outcomes[idx].ok = true;
  };

  const int workers = std::max(1, threads);
  if (workers == 1) {
    for (int i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  // deterministic fold in start order; the representative of a class is the
  // solution from the lowest start index
  struct Bucket {
    Fingerprint fp;
    Configuration rep;
    int hits = 0;
  };
  std::vector<Bucket> buckets;
  for (int i = 0; i < total; ++i) {
    if (!outcomes[i].ok) continue;
    bool merged = false;
    for (auto& b : buckets) {
      if (same_class(b.fp, outcomes[i].fp)) {
        ++b.hits;
        merged = true;
        break;
      }
    }
    if (!merged) buckets.push_back(Bucket{outcomes[i].fp, outcomes[i].config, 1});
  }

  std::vector<CentralConfigClass> classes;
  classes.reserve(buckets.size());
  for (const auto& b : buckets) {
    try {
      CentralConfigClass cls = build_class(params, b.rep, b.hits);
      const bool gates = cls.residual_inf < settings.tol_residual &&
                         cls.ac_residual_inf < 1e-8 &&
                         cls.matrix_residual_fro < 1e-8 &&
                         std::abs(cls.lambda - 1.0) <= 1e-8;
      if (gates) classes.push_back(std::move(cls));
    } catch (const std::exception&) {
      // classification failed; drop the bucket
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const CentralConfigClass& a, const CentralConfigClass& b) {
              return fingerprint_less(a.fp, b.fp);
            });
  for (size_t i = 0; i < classes.size(); ++i) classes[i].id = static_cast<int>(i);
  return classes;
}

std::vector<int> canonical_ordering(std::vector<int> ordering) {
  std::vector<int> rev(ordering.rbegin(), ordering.rend());
  return std::min(ordering, rev);
}

std::vector<std::vector<int>> collinear_orderings(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<std::vector<int>> out;
  do {
    if (canonical_ordering(perm) == perm) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// positions on the axis from (x_left, log gaps)
std::vector<double> collinear_positions(const VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> pos(n);
  pos[0] = v(0);
  for (int k = 1; k < n; ++k) pos[k] = pos[k - 1] + std::exp(v(k));
  return pos;
}

}  // namespace

RefineResult solve_collinear(const PotentialParams& params,
                             const std::vector<int>& ordering,
                             const SolverSettings& settings, double start_spacing) {
  settings.validate();
  const int n = params.n();
  if (static_cast<int>(ordering.size()) != n)
    throw std::invalid_argument("ordering must be a permutation of 1..n");
  std::vector<bool> seen(n, false);
  for (int b : ordering) {
    if (b < 1 || b > n || seen[b - 1])
      throw std::invalid_argument("ordering must be a permutation of 1..n");
    seen[b - 1] = true;
  }
  if (!(start_spacing > 0.0))
    throw std::invalid_argument("start_spacing must be > 0");

  // slot k holds body ordering[k]-1; unknowns are x_left and n-1 log gaps
  std::vector<int> body(n);
  for (int k = 0; k < n; ++k) body[k] = ordering[k] - 1;
  const double e = params.alpha + 2.0;

  auto build_config = [&](const std::vector<double>& pos) {
    Configuration c;
    c.points.resize(n);
    for (int k = 0; k < n; ++k) c.points[body[k]] = Vector2d(pos[k], 0.0);
    return c;
  };

  auto residual = [&](const VectorXd& v, VectorXd& f) -> bool {
    const std::vector<double> pos = collinear_positions(v);
    f.resize(n);
    for (int k = 0; k < n; ++k) {
      double acc = pos[k];
      for (int l = 0; l < n; ++l) {
        if (l == k) continue;
        const double d = pos[l] - pos[k];
        acc += params.masses[body[l]] * d * std::pow(std::abs(d), -e);
      }
      f(k) = acc;
    }
    return f.allFinite();
  };

  auto jacobian = [&](const VectorXd& v) {
    const std::vector<double> pos = collinear_positions(v);
    MatrixXd jpos = MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      double diag = 1.0;
      for (int l = 0; l < n; ++l) {
        if (l == k) continue;
        const double w = (params.alpha + 1.0) * params.masses[body[l]] *
                         std::pow(std::abs(pos[l] - pos[k]), -e);
        jpos(k, l) = -w;
        diag += w;
      }
      jpos(k, k) = diag;
    }
    MatrixXd chain = MatrixXd::Zero(n, n);
    for (int l = 0; l < n; ++l) {
      chain(l, 0) = 1.0;
      for (int j = 1; j <= l; ++j) chain(l, j) = std::exp(v(j));
    }
    return MatrixXd(jpos * chain);
  };

  RefineResult out;
  VectorXd v(n);
  v(0) = -0.5 * (n - 1) * start_spacing;
  for (int k = 1; k < n; ++k) v(k) = std::log(start_spacing);

  VectorXd f;
  residual(v, f);
  double fnorm = f.norm();
  out.residual_inf = f.lpNorm<Eigen::Infinity>();
  out.config = build_config(collinear_positions(v));
  if (out.residual_inf < settings.tol_residual) {
    out.status = RefineStatus::converged;
    return out;
  }

  double mu = settings.damping_init;
  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    out.iterations = iter;
    const MatrixXd jac = jacobian(v);
    Eigen::JacobiSVD<MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-12 * sv(0);
    VectorXd coef = svd.matrixU().transpose() * f;
    for (int i = 0; i < n; ++i)
      coef(i) = sv(i) >= cutoff ? coef(i) * sv(i) / (sv(i) * sv(i) + mu) : 0.0;
    const VectorXd vn = v - svd.matrixV() * coef;

    const std::vector<double> pos = collinear_positions(vn);
    double gap_min = std::numeric_limits<double>::infinity();
    double rad_max = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) gap_min = std::min(gap_min, pos[k] - pos[k - 1]);
      rad_max = std::max(rad_max, std::abs(pos[k]));
    }
    if (gap_min <= settings.min_separation) {
      out.status = RefineStatus::collision_approach;
      return out;
    }
    if (rad_max > settings.max_radius) {
      out.status = RefineStatus::diverged;
      return out;
    }

    VectorXd fn;
    if (residual(vn, fn) && fn.norm() < fnorm) {
      v = vn;
      f = fn;
      fnorm = f.norm();
      mu = std::max(mu / 3.0, 1e-15);
      out.residual_inf = f.lpNorm<Eigen::Infinity>();
      out.config = build_config(collinear_positions(v));
      if (out.residual_inf < settings.tol_residual) {
        out.status = RefineStatus::converged;
        return out;
      }
    } else {
      mu *= 4.0;
      if (mu > 1e14) break;
    }
  }
  out.status = RefineStatus::iteration_limit;
  return out;
}

namespace {

// advance one track from a_from (where cfg converges) to a_to, halving on
// failure; min_step bounds the recursion
bool advance_alpha(const VectorXd& masses, const Configuration& from, double a_from,
                   double a_to, double min_step, const SolverSettings& settings,
                   Configuration& result) {
  const PotentialParams target(a_to, masses);
  const RefineResult rr = refine(target, from, settings);
  if (rr.ok()) {
    const auto prepared = prepare_class_config(target, rr.config, settings);
    if (prepared) {
      result = *prepared;
      return true;
    }
  }
  if (a_to - a_from <= min_step * (1.0 + 1e-12)) return false;
  const double mid = 0.5 * (a_from + a_to);
  Configuration half;
  if (!advance_alpha(masses, from, a_from, mid, min_step, settings, half)) return false;
  return advance_alpha(masses, half, mid, a_to, min_step, settings, result);
}

}  // namespace

ContinuationResult continue_family(const PotentialParams& params,
                                   const CentralConfigClass& class0,
                                   double alpha_lo, double alpha_hi, int steps,
                                   const SolverSettings& settings) {
  if (!(alpha_lo >= 0.0) || !(alpha_hi >= alpha_lo))
    throw std::invalid_argument("need 0 <= alpha_lo <= alpha_hi");

  ContinuationResult result;
  if (alpha_hi == alpha_lo || steps < 1) {
    result.alphas = {alpha_lo};
  } else {
    result.alphas.resize(steps + 1);
    for (int j = 0; j <= steps; ++j)
      result.alphas[j] = alpha_lo + (alpha_hi - alpha_lo) * j / steps;
  }

  ContinuationTrack track;
  track.class_id = class0.id;
  const double spacing = result.alphas.size() > 1
                             ? result.alphas[1] - result.alphas[0]
                             : 1.0;
  const double min_step = spacing / 64.0;

  Configuration cur = class0.canonical;
  bool alive = true;
  for (size_t j = 0; j < result.alphas.size(); ++j) {
    const double a = result.alphas[j];
    if (alive) {
      Configuration next;
      const double prev = j == 0 ? a : result.alphas[j - 1];
      if (advance_alpha(params.masses, cur, prev, a, min_step, settings, next)) {
        cur = next;
        const PotentialParams here(a, params.masses);
        const HessianSummary sum = classify_degeneracy(here, cur);
        track.alphas.push_back(a);
        track.configs.push_back(cur);
        track.fingerprints.push_back(fingerprint(cur));
        track.min_gaps.push_back(sum.min_nonzero_abs);
        if (sum.min_nonzero_abs < 1e-6)
          result.events.push_back(DegenerationEvent{track.class_id, a, sum.min_nonzero_abs});
      } else {
        alive = false;
        track.lost = true;
      }
    }
    result.class_counts.push_back(alive ? 1 : 0);
  }
  result.tracks.push_back(std::move(track));
  return result;
}

}  // namespace ccenum
