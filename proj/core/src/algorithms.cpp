#include "qsearch/algorithms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsearch/dynamics.hpp"
#include "qsearch/schedule.hpp"

namespace qsearch {

namespace {

void check_lambda_01(double lambda, const char* who) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::domain_error(std::string(who) + ": lambda must lie in (0,1]");
  }
}

// Iteration counts deep in the exponential schedule exceed any integer type;
// such rounds are unreachable in practice (each one fails with probability
// <= delta^2 once past the critical round) but the arithmetic must stay defined.
constexpr double kMaxCountableIterations = 4.0e18;

void charge_iterations(QueryLedger& ledger, double count) {
  ledger.iterations += static_cast<std::uint64_t>(
      count < kMaxCountableIterations ? count : kMaxCountableIterations);
}

double sequence_success(double lambda, double iterations, double delta) {
  const double capped =
      iterations < kMaxCountableIterations ? iterations : kMaxCountableIterations;
  return closed_form_p(lambda, static_cast<std::int64_t>(capped), delta);
}

}  // namespace

std::uint32_t arbitrary_phase_query_factor(Accounting accounting) {
  return accounting == Accounting::standard ? 2u : 1u;
}

RunOutcome run_hybrid(double lambda, const HybridParams& params, PhiloxRng& rng) {
  check_lambda_01(lambda, "run_hybrid");
  if (!(params.delta > 0.0 && params.delta < 1.0)) {
    throw std::domain_error("run_hybrid: delta must lie in (0,1)");
  }
  if (!(params.c > 1.0 && params.c < 1.0 / (params.delta * params.delta))) {
    throw std::domain_error("run_hybrid: c must lie in (1, delta^-2)");
  }
  if (params.round_cap < 1) {
    throw std::domain_error("run_hybrid: round cap must be >= 1");
  }

  RunOutcome out;
  out.seed = rng.stream();
  out.ledger.queries_per_iteration = arbitrary_phase_query_factor(params.accounting);

  for (int k = 1; k <= params.round_cap; ++k) {
    out.ledger.rounds = static_cast<std::uint64_t>(k);
    out.rounds_used = static_cast<std::uint64_t>(k);

    // Check one sample of the bare uniform superposition.
    out.ledger.verifications += 1;
    if (params.sampling_exit && rng.bernoulli(lambda)) {
      out.found = true;
      return out;
    }

    // Matched sequence with l = ceil(c^(k-1)) iterations, then verify.
    const double l = round_iterations(params.c, k);
    charge_iterations(out.ledger, l);
    out.ledger.verifications += 1;
    if (rng.bernoulli(sequence_success(lambda, l, params.delta))) {
      out.found = true;
      return out;
    }
  }
  out.found = false;
  return out;
}

RunOutcome run_yoder_fixed(double lambda_true, double lambda0, double delta,
                           Accounting accounting, PhiloxRng& rng) {
  check_lambda_01(lambda_true, "run_yoder_fixed");
  if (!(lambda0 > 0.0 && lambda0 <= lambda_true)) {
    throw std::domain_error(
        "run_yoder_fixed: requires 0 < lambda0 <= lambda_true (lambda0 is a lower bound)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("run_yoder_fixed: delta must lie in (0,1)");
  }

  const double min_length = std::log(2.0 / delta) / std::sqrt(lambda0);
  const double l = std::max(0.0, std::ceil((min_length - 1.0) / 2.0));

  RunOutcome out;
  out.seed = rng.stream();
  out.ledger.queries_per_iteration = arbitrary_phase_query_factor(accounting);
  out.ledger.rounds = 1;
  out.rounds_used = 1;
  charge_iterations(out.ledger, l);
  out.ledger.verifications += 1;
  out.found = rng.bernoulli(sequence_success(lambda_true, l, delta));
  return out;
}

RunOutcome run_boyer(double lambda, const BoyerParams& params, PhiloxRng& rng) {
  check_lambda_01(lambda, "run_boyer");
  if (!(params.growth > 1.0)) {
    throw std::domain_error("run_boyer: growth must exceed 1");
  }
  const double cap_lambda = params.lambda0_cap.value_or(lambda);
  if (!(cap_lambda > 0.0 && cap_lambda <= 1.0)) {
    throw std::domain_error("run_boyer: lambda0_cap must lie in (0,1]");
  }

  const double theta = std::asin(std::sqrt(lambda));
  const double m_cap = 1.0 / std::sqrt(cap_lambda);

  RunOutcome out;
  out.seed = rng.stream();
  out.ledger.queries_per_iteration = 1;  // phase-pi oracle

  double m = 1.0;
  for (int k = 1; k <= params.round_cap; ++k) {
    out.ledger.rounds = static_cast<std::uint64_t>(k);
    out.rounds_used = static_cast<std::uint64_t>(k);

    const std::uint64_t window = static_cast<std::uint64_t>(std::ceil(m));
    const std::uint64_t j = rng.uniform_below(window);
    out.ledger.iterations += j;
    out.ledger.verifications += 1;
    const double amp = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
    if (rng.bernoulli(amp * amp)) {
      out.found = true;
      return out;
    }
    m = std::min(params.growth * m, m_cap);
  }
  out.found = false;
  return out;
}

RunOutcome run_okamoto(double lambda, const OkamotoParams& params, PhiloxRng& rng) {
  check_lambda_01(lambda, "run_okamoto");
  if (!(params.growth > 1.0)) {
    throw std::domain_error("run_okamoto: growth must exceed 1");
  }

  const double theta = std::asin(std::sqrt(lambda));

  RunOutcome out;
  out.seed = rng.stream();
  out.ledger.queries_per_iteration = 1;  // phase-pi oracle

  for (int s = 1; s <= params.round_cap; ++s) {
    out.ledger.rounds = static_cast<std::uint64_t>(s);
    out.rounds_used = static_cast<std::uint64_t>(s);

    const double l = round_iterations(params.growth, s);
    charge_iterations(out.ledger, l);
    out.ledger.verifications += 1;
    const double amp = std::sin((2.0 * l + 1.0) * theta);
    if (rng.bernoulli(amp * amp)) {
      out.found = true;
      return out;
    }
  }
  out.found = false;
  return out;
}

RunOutcome run_pi3(double lambda_true, double lambda0, double delta,
                   int round_cap, Accounting accounting, PhiloxRng& rng) {
  check_lambda_01(lambda_true, "run_pi3");
  if (!(lambda0 > 0.0 && lambda0 <= lambda_true)) {
    throw std::domain_error("run_pi3: requires 0 < lambda0 <= lambda_true");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("run_pi3: delta must lie in (0,1)");
  }

  // Smallest recursion depth m with (1-lambda0)^(3^m) <= delta^2; the failure
  // amplitude cubes with each extra level.
  const double d2 = delta * delta;
  int depth = 0;
  double failure = 1.0 - lambda0;
  while (failure > d2 && depth < 39) {
    failure = failure * failure * failure;
    ++depth;
  }
  double pow3 = 1.0;
  for (int i = 0; i < depth; ++i) pow3 *= 3.0;
  const double iterations_per_attempt = (pow3 - 1.0) / 2.0;
  const double success = 1.0 - std::pow(1.0 - lambda_true, pow3);

  RunOutcome out;
  out.seed = rng.stream();
  out.ledger.queries_per_iteration = arbitrary_phase_query_factor(accounting);

  for (int k = 1; k <= round_cap; ++k) {
    out.ledger.rounds = static_cast<std::uint64_t>(k);
    out.rounds_used = static_cast<std::uint64_t>(k);
    charge_iterations(out.ledger, iterations_per_attempt);
    out.ledger.verifications += 1;
    if (rng.bernoulli(success)) {
      out.found = true;
      return out;
    }
  }
  out.found = false;
  return out;
}

}  // namespace qsearch
