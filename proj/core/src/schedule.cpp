#include "qsearch/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsearch/chebyshev.hpp"

namespace qsearch {

namespace {

// arccot with range (0, pi); continuous across the sign change of the
// argument, which is what keeps the matched phases single-branch.
double arccot(double x) { return std::numbers::pi / 2.0 - std::atan(x); }

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0,1), got " + std::to_string(delta));
  }
}

}  // namespace

PhaseSchedule build_schedule(int iterations, double delta) {
  if (iterations < 0) {
    throw std::domain_error("build_schedule: iteration count must be >= 0");
  }
  check_delta(delta);

  PhaseSchedule s;
  s.iterations = iterations;
  s.sequence_length = 2 * iterations + 1;
  s.delta = delta;
  s.gamma = inverse_t_fractional(s.sequence_length, 1.0 / delta);

  // sqrt(1 - gamma^2) evaluated as tanh(acosh(1/delta)/L): the direct form
  // cancels catastrophically once gamma approaches 1 (large delta or long
  // sequences) and the loss shows up coherently in every phase.
  const long double z = std::acosh(1.0L / static_cast<long double>(delta)) /
                        static_cast<long double>(s.sequence_length);
  const double root = static_cast<double>(std::tanh(z));
  s.phi.resize(static_cast<std::size_t>(iterations));
  for (int j = 1; j <= iterations; ++j) {
    // 2*pi*j/L never hits pi/2 (L = 4j would need an even L), so tan is finite.
    const double t = std::tan(2.0 * std::numbers::pi * j / s.sequence_length);
    s.phi[static_cast<std::size_t>(j - 1)] = -2.0 * arccot(root * t);
  }
  s.varphi.assign(s.phi.rbegin(), s.phi.rend());
  return s;
}

ThresholdReport thresholds(double delta, double c, double lambda,
                           std::optional<double> lambda0, int sequence_length) {
  check_delta(delta);
  if (!(c > 1.0 && c < 1.0 / (delta * delta))) {
    throw std::domain_error("thresholds: growth rate c must lie in (1, delta^-2)");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("thresholds: lambda must lie in (0,1)");
  }
  if (lambda0 && !(*lambda0 > 0.0 && *lambda0 < 1.0)) {
    throw std::domain_error("thresholds: lambda0 must lie in (0,1)");
  }
  if (sequence_length < 1 || sequence_length % 2 == 0) {
    throw std::domain_error("thresholds: sequence length must be a positive odd integer");
  }

  ThresholdReport r;
  const double log_two_over_delta = std::log(2.0 / delta);
  r.omega = std::pow(log_two_over_delta / sequence_length, 2);
  r.L_min = log_two_over_delta / std::sqrt(lambda);
  if (lambda0) r.L_0 = log_two_over_delta / std::sqrt(*lambda0);
  r.L_cri = std::acosh(1.0 / delta) / std::acosh(1.0 / std::sqrt(1.0 - lambda));

  if (lambda < 1.0 - delta * delta) {
    const int l_cri = static_cast<int>(std::ceil(r.L_cri / 2.0 - 0.5));
    r.l_cri = l_cri;
    r.s0 = static_cast<int>(std::floor(std::log(static_cast<double>(l_cri)) / std::log(c))) + 1;
  }
  return r;
}

double round_iterations(double c, int round) {
  if (round <= 1) return 1.0;
  return std::ceil(std::pow(c, round - 1));
}

}  // namespace qsearch
