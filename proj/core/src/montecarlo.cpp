#include "qsearch/montecarlo.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace qsearch {

namespace {

constexpr std::uint64_t kChunk = 8192;  // fixed regardless of thread count
constexpr int kMetrics = 5;             // iterations, oracle, verifications, rounds, total

struct ChunkPartial {
  std::array<double, kMetrics> sum{};
  std::array<double, kMetrics> sum_sq{};
  std::uint64_t found = 0;
};

MetricStats finalize(double sum, double sum_sq, std::uint64_t n) {
  MetricStats s;
  if (n == 0) return s;
  const double mean = sum / static_cast<double>(n);
  s.mean = mean;
  if (n > 1) {
    const double var =
        (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    s.stddev = std::sqrt(var > 0.0 ? var : 0.0);
    s.sem = s.stddev / std::sqrt(static_cast<double>(n));
  }
  return s;
}

}  // namespace

TrialSummary run_trials(std::uint64_t trials, std::uint64_t master_seed,
                        const std::function<RunOutcome(PhiloxRng&)>& trial,
                        int max_threads) {
  TrialSummary out;
  out.trials = trials;
  out.master_seed = master_seed;
  if (trials == 0) return out;

  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<ChunkPartial> partials(chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    ChunkPartial& p = partials[chunk];
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t t = begin; t < end; ++t) {
      PhiloxRng rng(master_seed, t);
      const RunOutcome r = trial(rng);
      if (r.found) ++p.found;
      const std::array<double, kMetrics> v{
          static_cast<double>(r.ledger.iterations),
          static_cast<double>(r.ledger.oracle_queries()),
          static_cast<double>(r.ledger.verifications),
          static_cast<double>(r.ledger.rounds),
          static_cast<double>(r.ledger.total_queries())};
      for (int m = 0; m < kMetrics; ++m) {
        p.sum[m] += v[m];
        p.sum_sq[m] += v[m] * v[m];
      }
    }
  };

  unsigned workers = max_threads > 0 ? static_cast<unsigned>(max_threads)
                                     : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, chunks));

  if (workers <= 1) {
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) run_chunk(chunk);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t chunk = next.fetch_add(1);
          if (chunk >= chunks) return;
          run_chunk(chunk);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in chunk order; summation order never depends on scheduling.
  std::array<double, kMetrics> sum{};
  std::array<double, kMetrics> sum_sq{};
  for (const ChunkPartial& p : partials) {
    out.found += p.found;
    for (int m = 0; m < kMetrics; ++m) {
      sum[m] += p.sum[m];
      sum_sq[m] += p.sum_sq[m];
    }
  }
  out.iterations = finalize(sum[0], sum_sq[0], trials);
  out.oracle_queries = finalize(sum[1], sum_sq[1], trials);
  out.verifications = finalize(sum[2], sum_sq[2], trials);
  out.rounds = finalize(sum[3], sum_sq[3], trials);
  out.total_queries = finalize(sum[4], sum_sq[4], trials);
  return out;
}

}  // namespace qsearch
