#pragma once

#include <optional>
#include <vector>

namespace qsearch {

/// A matched multiphase schedule for a sequence of generalized Grover
/// iterations. The two phase lists are mirror images of each other:
/// varphi[j] = phi[l-1-j] (0-based), the multiphase matching condition.
struct PhaseSchedule {
  int iterations = 0;       ///< l, number of generalized iterations
  int sequence_length = 1;  ///< L = 2l + 1
  double delta = 0.0;       ///< damping parameter in (0,1)
  double gamma = 1.0;       ///< reciprocal of T_{1/L}(1/delta), in (0,1]
  std::vector<double> phi;      ///< zero-state phases, phi[j-1] holds the j-th
  std::vector<double> varphi;   ///< oracle phases, varphi[j-1] holds the j-th
};

/// Builds the matched schedule
///   phi_j = varphi_{l-j+1} = -2 arccot(sqrt(1-gamma^2) tan(2 pi j / L))
/// with arccot taking values in (0, pi). l = 0 is legal and yields empty
/// phase lists (measure the prepared state directly).
///
/// The arccot branch is not forced by the matching condition (the other
/// branch shifts individual phases by 2 pi, which is operator-equivalent);
/// it is fixed here so emitted schedule files are reproducible. The chosen
/// branch is validated against the Chebyshev closed form for the sequence
/// success probability.
///
/// Throws std::domain_error for l < 0 or delta outside (0,1).
PhaseSchedule build_schedule(int iterations, double delta);

/// Threshold quantities for a search problem with target fraction lambda.
/// All lengths L are measured in sequence length units (L = 2l + 1).
struct ThresholdReport {
  double omega = 0.0;   ///< smallest fraction with guaranteed >= 1-delta^2 success at the queried L
  double L_min = 0.0;   ///< minimal length for the true fraction lambda
  std::optional<double> L_0;  ///< minimal length for a known lower bound lambda0
  double L_cri = 0.0;   ///< critical length where the Lemma lower bound saturates
  /// Critical iteration count and the round index past which every round of
  /// the exponential schedule has success probability >= 1-delta^2. Absent
  /// when lambda >= 1-delta^2 (a bare measurement already succeeds with
  /// probability >= 1-delta^2; the hybrid loop's uniform sampling step
  /// covers that regime).
  std::optional<int> l_cri;
  std::optional<int> s0;
};

/// Computes omega = (ln(2/delta)/L)^2, L_min = ln(2/delta)/sqrt(lambda),
/// L_0 = ln(2/delta)/sqrt(lambda0) (when lambda0 is given),
/// L_cri = acosh(1/delta)/acosh(1/sqrt(1-lambda)),
/// l_cri = ceil(L_cri/2 - 1/2) and s0 = floor(log_c l_cri) + 1.
///
/// Throws std::domain_error for delta outside (0,1), c outside (1, delta^-2),
/// lambda outside (0,1), lambda0 outside (0,1), L < 1 or L even.
ThresholdReport thresholds(double delta, double c, double lambda,
                           std::optional<double> lambda0, int sequence_length);

/// Number of generalized iterations in round s (1-based) of the exponential
/// trial schedule: l_s = ceil(c^(s-1)). Returned as double because deep
/// rounds overflow any integer type; the value is integer-valued.
double round_iterations(double c, int round);

}  // namespace qsearch
