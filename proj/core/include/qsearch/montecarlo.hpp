#pragma once

#include <cstdint>
#include <functional>

#include "qsearch/algorithms.hpp"

namespace qsearch {

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation
  double sem = 0.0;     ///< standard error of the mean
};

/// Summary over a batch of independent trials of one algorithm at one lambda.
struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t found = 0;

  MetricStats iterations;
  MetricStats oracle_queries;
  MetricStats verifications;
  MetricStats rounds;
  MetricStats total_queries;
};

/// Runs `trials` independent trials; trial t draws from PhiloxRng(master_seed, t).
/// Trials are accumulated in fixed-size chunks whose partial sums are always
/// combined in chunk order, so the summary is bit-identical for any thread
/// count. max_threads = 0 picks the hardware concurrency, 1 forces serial.
TrialSummary run_trials(std::uint64_t trials, std::uint64_t master_seed,
                        const std::function<RunOutcome(PhiloxRng&)>& trial,
                        int max_threads = 0);

}  // namespace qsearch
