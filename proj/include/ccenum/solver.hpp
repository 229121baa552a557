#pragma once

#include "ccenum/classify.hpp"
#include "ccenum/geometry.hpp"

#include <cstdint>
#include <limits>
#include <optional>

namespace ccenum {

struct Annulus {
  double r_lo = 0.3;
  double r_hi = 3.0;
};

struct SolverSettings {
  int starts = 1000;
  std::uint64_t seed = 1;
  double tol_residual = 1e-12;  // infinity norm
  int max_iters = 200;
  double min_separation = 1e-8;
  double max_radius = 1e3;
  Annulus annulus;
  double damping_init = 1e-3;

  void validate() const;
};

enum class RefineStatus { converged, diverged, collision_approach, iteration_limit };

const char* to_string(RefineStatus status);

struct RefineResult {
  RefineStatus status = RefineStatus::iteration_limit;
  Configuration config;  // last finite iterate, never containing NaN/inf
  double residual_inf = std::numeric_limits<double>::infinity();
  int iterations = 0;

  bool ok() const { return status == RefineStatus::converged; }
};

/// n points sampled uniformly (by area) in the annulus, before recentering.
/// Bit-for-bit deterministic in (seed, index) through counter-based seeding.
Configuration annulus_points(int n, std::uint64_t seed, std::uint64_t index,
                             const Annulus& annulus);

/// annulus_points recentered so the unweighted centroid is at the origin.
Configuration random_start(int n, std::uint64_t seed, std::uint64_t index,
                           const Annulus& annulus);

/// Damped least-squares refinement of cc_residual. The step uses a spectral
/// pseudo-inverse of the Jacobian that truncates singular values below
/// 1e-8 times the largest, which absorbs the rotation kernel; a step is
/// rejected and the damping increased when the residual norm does not
/// decrease.
RefineResult refine(const PotentialParams& params, const Configuration& start,
                    const SolverSettings& settings);

/// Lambda-normalizes, canonicalizes and re-polishes a converged solution so
/// the stored representative meets the residual tolerance exactly as stored.
/// Empty when polishing fails.
std::optional<Configuration> prepare_class_config(const PotentialParams& params,
                                                  const Configuration& converged,
                                                  const SolverSettings& settings);

/// Multi-start enumeration: refine from `starts` deterministic random starts,
/// dedup by fingerprint, return classes sorted by fingerprint with per-class
/// hit counts. Every returned class passes the Cartesian (tol_residual) and
/// distance-formulation (1e-8) residual gates. Output is identical for every
/// thread count.
std::vector<CentralConfigClass> enumerate(const PotentialParams& params,
                                          const SolverSettings& settings,
                                          int threads = 1);

/// Lexicographically smaller of (ordering, reversed ordering).
std::vector<int> canonical_ordering(std::vector<int> ordering);

/// All n!/2 collinear orderings (1-based permutations, canonical modulo
/// reversal), sorted.
std::vector<std::vector<int>> collinear_orderings(int n);

/// Solves the one-dimensional restriction of the central-configuration
/// equations with the bodies on the x-axis in the given left-to-right order
/// (1-based permutation). The gap widths are iterated in log coordinates so
/// the ordering is preserved. `start_spacing` sets the initial uniform gap.
RefineResult solve_collinear(const PotentialParams& params,
                             const std::vector<int>& ordering,
                             const SolverSettings& settings,
                             double start_spacing = 1.0);

struct ContinuationTrack {
  int class_id = 0;
  std::vector<double> alphas;            // grid prefix where the track is alive
  std::vector<Configuration> configs;    // lambda = 1 representative per alpha
  std::vector<Fingerprint> fingerprints;
  std::vector<double> min_gaps;          // smallest nonzero-mode |eigenvalue|
  bool lost = false;                     // step halving bottomed out
};

struct DegenerationEvent {
  int class_id = 0;
  double alpha = 0.0;
  double gap = 0.0;
};

struct ContinuationResult {
  std::vector<double> alphas;      // strictly increasing grid
  std::vector<int> class_counts;   // live tracks per grid point
  std::vector<ContinuationTrack> tracks;
  std::vector<DegenerationEvent> events;
};

/// Natural-parameter continuation of one class from alpha_lo to alpha_hi:
/// Newton-refine at each grid point from the previous solution, halving the
/// step (down to 1/64 of the grid spacing) on failure. Records the smallest
/// nonzero-mode Hessian magnitude at every grid point and flags a
/// degeneration event when it falls below 1e-6; a track that cannot be
/// advanced is marked lost.
ContinuationResult continue_family(const PotentialParams& params,
                                   const CentralConfigClass& class0,
                                   double alpha_lo, double alpha_hi, int steps,
                                   const SolverSettings& settings);

}  // namespace ccenum
