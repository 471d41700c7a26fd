#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsearch/schedule.hpp"

namespace qsearch {

/// Full 2^n amplitude register with an explicit marked-index set. Used as the
/// independent oracle for the two-dimensional subspace engine: both must
/// produce the same success probability for the same phase sequence.
struct StateVector {
  int qubits = 0;
  std::vector<std::complex<double>> amps;
  std::vector<std::uint32_t> targets;  ///< sorted, unique marked indices

  std::uint64_t size() const { return amps.size(); }
  double lambda() const {
    return static_cast<double>(targets.size()) / static_cast<double>(amps.size());
  }
  double norm_squared() const;
  /// Sum of |amplitude|^2 over the marked indices.
  double success_probability() const;
};

inline constexpr int kMaxQubits = 20;  // keeps one iteration at O(2^20)

/// Uniform superposition over all 2^n basis states (Hadamard preparation)
/// with the given marked set. Indices are deduplicated and sorted.
/// Throws std::domain_error for n outside [1, kMaxQubits], an empty target
/// set, or an index outside [0, 2^n).
StateVector sv_prepare(int qubits, std::vector<std::uint32_t> targets);

/// One generalized Grover iteration on the full register, in place:
/// multiplies marked amplitudes by e^{i varphi}, then applies
/// -(I + (e^{i phi} - 1)|psi><psi|) as a rank-1 update using the inner
/// product <psi|state>, where |psi> is the uniform superposition. Cost O(2^n);
/// no operator matrix is ever materialized.
void sv_apply_iteration(StateVector& sv, double phi, double varphi);

/// Prepares the register, applies the schedule, returns the success
/// probability. Convenience wrapper used by the equivalence checks.
double sv_run_sequence(int qubits, std::vector<std::uint32_t> targets,
                       const PhaseSchedule& schedule);

}  // namespace qsearch
