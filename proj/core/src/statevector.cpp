#include "qsearch/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& amp : amps) acc += std::norm(amp);
  return acc;
}

double StateVector::success_probability() const {
  double acc = 0.0;
  for (std::uint32_t t : targets) acc += std::norm(amps[t]);
  return acc;
}

StateVector sv_prepare(int qubits, std::vector<std::uint32_t> targets) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::domain_error("sv_prepare: qubit count must lie in [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
  if (targets.empty()) {
    throw std::domain_error("sv_prepare: target set must not be empty");
  }
  const std::uint64_t n = std::uint64_t{1} << qubits;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.back() >= n) {
    throw std::domain_error("sv_prepare: target index out of range");
  }

  StateVector sv;
  sv.qubits = qubits;
  sv.targets = std::move(targets);
  sv.amps.assign(n, std::complex<double>(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  return sv;
}

void sv_apply_iteration(StateVector& sv, double phi, double varphi) {
  const std::complex<double> oracle(std::cos(varphi), std::sin(varphi));
  for (std::uint32_t t : sv.targets) sv.amps[t] *= oracle;

  std::complex<double> acc(0.0, 0.0);
  for (const auto& amp : sv.amps) acc += amp;

  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(sv.amps.size()));
  const std::complex<double> w(std::cos(phi) - 1.0, std::sin(phi));
  // w * <psi|state> * (1/sqrt(N)) added to every amplitude, then the global sign.
  const std::complex<double> shift = w * acc * (inv_root_n * inv_root_n);
  for (auto& amp : sv.amps) amp = -(amp + shift);
}

double sv_run_sequence(int qubits, std::vector<std::uint32_t> targets,
                       const PhaseSchedule& schedule) {
  StateVector sv = sv_prepare(qubits, std::move(targets));
  for (int j = 0; j < schedule.iterations; ++j) {
    sv_apply_iteration(sv, schedule.phi[static_cast<std::size_t>(j)],
                       schedule.varphi[static_cast<std::size_t>(j)]);
  }
  return sv.success_probability();
}

}  // namespace qsearch
