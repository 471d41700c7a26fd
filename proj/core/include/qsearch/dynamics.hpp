#pragma once

#include <complex>
#include <cstdint>

#include "qsearch/schedule.hpp"

namespace qsearch {

/// State restricted to the two-dimensional subspace spanned by the uniform
/// superposition of marked items (amplitude a) and of unmarked items
/// (amplitude b). All the dynamics here preserve this subspace, so two
/// complex numbers describe the full evolution exactly.
struct SubspaceState {
  std::complex<double> a{0.0, 0.0};  ///< amplitude on the marked superposition
  std::complex<double> b{0.0, 0.0};  ///< amplitude on the unmarked superposition

  double success_probability() const { return std::norm(a); }
  double norm_squared() const { return std::norm(a) + std::norm(b); }
};

/// |psi> for target fraction lambda: a = sqrt(lambda), b = sqrt(1-lambda).
/// Throws std::domain_error for lambda outside (0, 1].
SubspaceState prepare_initial(double lambda);

/// One generalized Grover iteration G(phi, varphi) = -A S_0^phi A^dag S_f^varphi
/// in the two-dimensional subspace. The oracle phase acts first, multiplying
/// the marked amplitude by e^{i varphi}; then the reflection-like operator
/// I + (e^{i phi} - 1)|psi><psi| with |psi> = (sqrt(lambda), sqrt(1-lambda));
/// finally the global sign. The global -1 never affects probabilities but is
/// kept so the full-register simulator can be compared amplitude by amplitude.
///
/// phi = varphi = pi reduces to the textbook Grover step.
SubspaceState apply_generalized_grover(SubspaceState state, double phi,
                                       double varphi, double lambda);

/// Prepares |psi> for the given lambda, applies G(phi_j, varphi_j) for
/// j = 1..l in ascending j, and returns the success probability |a|^2 of the
/// final state. With l = 0 this is just lambda.
double run_sequence(double lambda, const PhaseSchedule& schedule);

/// Closed-form success probability of the matched multiphase sequence:
///   P = 1 - delta^2 T_L^2[ T_{1/L}(1/delta) sqrt(1-lambda) ],  L = 2l + 1.
/// The result is clamped to [0,1]; the unclamped value can stray outside by
/// at most ~1e-12 due to rounding.
/// Accepts lambda in [0,1]; iteration counts beyond 32-bit range are legal
/// (the evaluation cost does not depend on l).
double closed_form_p(double lambda, std::int64_t iterations, double delta);

/// Lower bound on the sequence success probability at sequence length L:
///   1 - delta^2 T^2_{sqrt(1 - L^2/L_cri^2)}(1/delta)  for L <= L_cri,
///   1 - delta^2                                       for L >  L_cri.
/// Throws std::domain_error for lambda or delta outside (0,1) or L < 1.
double lemma1_lower_bound(double lambda, double delta, std::int64_t sequence_length);

}  // namespace qsearch
