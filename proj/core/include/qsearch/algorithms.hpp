#pragma once

#include <cstdint>
#include <optional>

#include "qsearch/rng.hpp"

namespace qsearch {

/// Oracle-query accounting convention. An iteration with arbitrary phases is
/// built from two standard phase-pi oracle calls ("standard"); when the
/// uncompute of the first call and the compute of the second cancel, one call
/// per iteration remains ("merged"). Phase-pi algorithms use one standard
/// call per iteration under either convention.
enum class Accounting { standard, merged };

/// Counters accumulated over one run. `verifications` counts classical checks
/// of a measured item, kept separate from oracle queries so either charging
/// convention can be reported. oracle_queries is derived from the same
/// iterations counter under every convention.
struct QueryLedger {
  std::uint64_t iterations = 0;
  std::uint64_t verifications = 0;
  std::uint64_t rounds = 0;
  std::uint32_t queries_per_iteration = 2;

  std::uint64_t oracle_queries() const { return iterations * queries_per_iteration; }
  /// Oracle queries plus one query-equivalent per verification; for the
  /// hybrid under "standard" this is the per-round 2l+2 total.
  std::uint64_t total_queries() const { return oracle_queries() + verifications; }
};

/// Per-iteration standard-oracle charge for an algorithm whose iterations use
/// arbitrary (non-pi) phases.
std::uint32_t arbitrary_phase_query_factor(Accounting accounting);

struct RunOutcome {
  bool found = false;
  QueryLedger ledger;
  std::uint64_t rounds_used = 0;
  std::uint64_t seed = 0;  ///< RNG stream id the run consumed
};

/// Parameters of the hybrid fixed-point / exponential-trial search.
struct HybridParams {
  double delta = 0.5659;  ///< damping of the matched-phase sequence
  double c = 1.523;       ///< trial growth rate, must lie in (1, delta^-2)
  Accounting accounting = Accounting::standard;
  int round_cap = 200;    ///< guard against misuse at lambda = 0
  /// When true (the full procedure), each round first measures the bare
  /// uniform superposition and stops if that sample verifies, so a round can
  /// end before the sequence runs. When false, that check is still performed
  /// and charged (the round cost is always 2l+2 under "standard") but only
  /// the sequence measurement can end the run -- the conservative round
  /// model the expected-query bound is derived from.
  bool sampling_exit = true;
};

/// The hybrid search as a terminating stochastic process. Each round k:
/// verify one uniform sample (1 verification; exits on success when
/// sampling_exit is set), then run the matched sequence with
/// l = ceil(c^(k-1)) iterations and verify the measured outcome
/// (1 verification). Because a failed run is re-prepared from scratch,
/// every round is an independent Bernoulli draw with the exact sequence
/// success probability -- no residual state needs tracking.
/// Throws std::domain_error for lambda outside (0,1] or invalid parameters.
RunOutcome run_hybrid(double lambda, const HybridParams& params, PhiloxRng& rng);

/// Non-adaptive fixed-point baseline: a single sequence sized from the known
/// lower bound lambda0 (l = ceil((L_0-1)/2), L_0 = ln(2/delta)/sqrt(lambda0)),
/// measured once. Iteration count never adapts to the true fraction; raising
/// lambda_true above lambda0 leaves the charge unchanged.
/// Throws std::domain_error unless 0 < lambda0 <= lambda_true <= 1.
RunOutcome run_yoder_fixed(double lambda_true, double lambda0, double delta,
                           Accounting accounting, PhiloxRng& rng);

struct BoyerParams {
  double growth = 6.0 / 5.0;
  /// The iteration window is capped at 1/sqrt(lambda0_cap); defaults to the
  /// true lambda (the cap is the only place oracle knowledge enters).
  std::optional<double> lambda0_cap;
  int round_cap = 200;
};

/// Randomized exponential-window baseline: round k draws j uniformly from
/// {0..ceil(m)-1}, runs j phase-pi Grover iterations (success probability
/// sin^2((2j+1) theta)), and grows m by `growth` up to the cap on failure.
RunOutcome run_boyer(double lambda, const BoyerParams& params, PhiloxRng& rng);

struct OkamotoParams {
  double growth = 8.0 / 7.0;  ///< schedule constant; reported means are what matter
  int round_cap = 200;
};

/// Deterministic exponential-schedule baseline: round s runs
/// l_s = ceil(growth^(s-1)) phase-pi Grover iterations, success probability
/// sin^2((2 l_s + 1) theta).
RunOutcome run_okamoto(double lambda, const OkamotoParams& params, PhiloxRng& rng);

/// Coarse model of the pi/3 fixed-point recursion: the smallest depth m with
/// (1-lambda0)^(3^m) <= delta^2 is chosen, each attempt charges (3^m - 1)/2
/// iterations and succeeds with probability 1 - (1-lambda_true)^(3^m);
/// attempts repeat until success or the round cap.
/// Throws std::domain_error unless 0 < lambda0 <= lambda_true <= 1.
RunOutcome run_pi3(double lambda_true, double lambda0, double delta,
                   int round_cap, Accounting accounting, PhiloxRng& rng);

}  // namespace qsearch
