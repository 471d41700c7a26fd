#pragma once

#include <cstdint>
#include <vector>

namespace qsearch {

/// Round model used when summing expected queries of the hybrid search.
///
/// `conservative` charges every round the full 2 l_s + 2 and lets only the
/// sequence measurement end the run (occurrence probability
/// q_s = prod_{j<s} (1 - P_{L_j})); this is the model the closed-form query
/// bound is derived from, and it matches run_hybrid with sampling_exit off.
///
/// `exact` additionally models the uniform-sample exit at the top of each
/// round: per-round cost 1 + (1-lambda)(2 l_s + 1) and occurrence ratio
/// (1-lambda)(1 - P_{L_s}); this matches the full procedure. It never
/// exceeds the conservative sum, term by term.
enum class ExpectationMode { conservative, exact };

struct ExpectationBreakdown {
  bool applicable = false;  ///< false when lambda >= 1 - delta^2 (bare sampling dominates)
  ExpectationMode mode = ExpectationMode::conservative;
  double lambda = 0.0, delta = 0.0, c = 0.0;

  double e_t1 = 0.0;    ///< expected queries over rounds 1..s0
  double e_t2 = 0.0;    ///< expected queries over rounds > s0
  double e_total = 0.0;

  std::vector<double> occupancy;         ///< q_s, probability round s is reached
  std::vector<double> round_iterations;  ///< l_s = ceil(c^(s-1))
  int truncation_round = 0;
  double tail_bound = 0.0;  ///< rigorous bound on the truncated tail

  int l_cri = 0;
  int s0 = 0;
};

/// Sums the expected-query series until the geometric tail envelope drops
/// below tail_tol relative to the accumulated total (the envelope is valid
/// past round s0, where every round fails with probability <= delta^2).
/// Throws std::domain_error for lambda outside (0,1), delta outside (0,1) or
/// c outside (1, delta^-2). For lambda >= 1 - delta^2 the result is returned
/// with applicable = false and no series evaluated.
ExpectationBreakdown expected_queries(double lambda, double delta, double c,
                                      ExpectationMode mode, double tail_tol = 1e-12);

/// One point of the query-bound coefficient surface:
///   q_ub_first = delta^2 T^2_{sqrt(1-c^-2)}(1/delta)
///   g = (c/(c-1) + c q_ub_first/(1 - c delta^2)) acosh(1/delta)
/// The expected total queries of the hybrid search are bounded by
/// g(delta,c)/sqrt(lambda) for small lambda.
struct GBoundPoint {
  double delta = 0.0;
  double c = 0.0;
  double q_ub_first = 0.0;
  double g_value = 0.0;
};

/// Throws std::domain_error for delta outside (0,1) or c outside (1, delta^-2).
GBoundPoint g_bound(double delta, double c);

struct OptimizeResult {
  double delta_star = 0.0;
  double c_star = 0.0;
  double g_star = 0.0;

  // Reproducibility record.
  double grid_delta_lo = 0.0, grid_delta_hi = 0.0;
  int grid_density = 0;
  double refine_tol = 0.0;
  int refine_steps = 0;           ///< simplex iterations taken
  std::uint64_t evaluations = 0;  ///< total g evaluations (grid + refinement)
  bool stencil_ok = false;        ///< all 8 neighbors at 1e-3 step are worse
};

/// Minimizes g over {0 < delta < 1, 1 < c < delta^-2}: a coarse grid scan
/// (ties broken toward the lowest delta, then lowest c) followed by a
/// deterministic Nelder-Mead refinement started from the best grid point.
/// The grid stage exists because the barrier at c = delta^-2 defeats naive
/// simplex starts. Throws std::domain_error for an empty feasible region.
OptimizeResult optimize_g(double delta_lo = 0.05, double delta_hi = 0.95,
                          int grid_density = 200, double refine_tol = 1e-12);

/// Grid scan configuration for the success-probability lower-bound checks.
struct Lemma1ScanConfig {
  std::vector<double> lambdas;  ///< default: 30 log-spaced in [1e-4, 0.99]
  std::vector<double> deltas;   ///< default: 19 points 0.05..0.95
  int max_iterations = 300;     ///< l runs over 0..max_iterations
  int cosh_x_points = 400;      ///< x grid on (0, 50]
  int cosh_theta_points = 181;  ///< theta grid on [0, pi/2]
  double slack = 1e-12;         ///< absolute slack for O(1) quantities, relative for cosh products
};

Lemma1ScanConfig default_lemma1_config();

enum class ScanCheck { lemma_bound, cosh_product, sandwich_lower, sandwich_upper };

struct ScanViolation {
  ScanCheck check;
  double lambda = 0.0, delta = 0.0;
  std::int64_t l = 0;       ///< unused for cosh_product
  double x = 0.0, theta = 0.0;  ///< used only by cosh_product
  double lhs = 0.0, rhs = 0.0;
};

struct Lemma1ScanReport {
  std::uint64_t points_checked = 0;
  std::vector<ScanViolation> violations;  ///< at most 100 recorded
  std::uint64_t violation_count = 0;
  bool ok() const { return violation_count == 0; }
};

/// Evaluates, on the configured grid:
///  - the closed-form success probability against its lower bound,
///  - the hyperbolic-cosine product inequality
///        cosh(x) <= cosh(x sin theta) cosh(x cos theta),
///  - the sandwich 1 <= T_L[T_{1/L}(1/d) / T_{1/L_cri}(1/d)] <=
///        T_{sqrt(1-L^2/L_cri^2)}(1/d) for L <= L_cri.
/// Returns every violation beyond the configured slack (expected none).
Lemma1ScanReport lemma1_scan(const Lemma1ScanConfig& config = default_lemma1_config());

}  // namespace qsearch
