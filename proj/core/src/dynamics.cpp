#include "qsearch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qsearch/chebyshev.hpp"
#include "chebyshev_internal.hpp"

namespace qsearch {

SubspaceState prepare_initial(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::domain_error("prepare_initial: lambda must lie in (0,1], got " +
                            std::to_string(lambda));
  }
  SubspaceState s;
  s.a = std::sqrt(lambda);
  s.b = std::sqrt(1.0 - lambda);
  return s;
}

SubspaceState apply_generalized_grover(SubspaceState state, double phi,
                                       double varphi, double lambda) {
  // Extended-precision intermediates keep the drift over ~10^3-step
  // sequences well below the closed-form agreement tolerances.
  using cplx = std::complex<long double>;
  cplx a(state.a), b(state.b);

  // Oracle phase shift on the marked component.
  const long double vp = varphi;
  a *= cplx(std::cos(vp), std::sin(vp));

  // A S_0^phi A^dag = I + (e^{i phi} - 1)|psi><psi| as a rank-1 update,
  // followed by the global sign of G.
  const long double lam = lambda;
  const long double ra = std::sqrt(lam);
  const long double rb = std::sqrt(1.0L - lam);
  const long double ph = phi;
  const cplx w(std::cos(ph) - 1.0L, std::sin(ph));
  const cplx overlap = ra * a + rb * b;
  a = -(a + w * overlap * ra);
  b = -(b + w * overlap * rb);
  state.a = std::complex<double>(static_cast<double>(a.real()), static_cast<double>(a.imag()));
  state.b = std::complex<double>(static_cast<double>(b.real()), static_cast<double>(b.imag()));
  return state;
}

double run_sequence(double lambda, const PhaseSchedule& schedule) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::domain_error("run_sequence: lambda must lie in (0,1]");
  }
  // The whole evolution stays in extended precision; rounding at each step
  // boundary would otherwise accumulate across long sequences.
  using cplx = std::complex<long double>;
  const long double lam = lambda;
  const long double ra = std::sqrt(lam);
  const long double rb = std::sqrt(1.0L - lam);
  cplx a(ra), b(rb);
  for (int j = 0; j < schedule.iterations; ++j) {
    const long double vp = schedule.varphi[static_cast<std::size_t>(j)];
    const long double ph = schedule.phi[static_cast<std::size_t>(j)];
    a *= cplx(std::cos(vp), std::sin(vp));
    const cplx w(std::cos(ph) - 1.0L, std::sin(ph));
    const cplx overlap = ra * a + rb * b;
    a = -(a + w * overlap * ra);
    b = -(b + w * overlap * rb);
  }
  return static_cast<double>(std::norm(a));
}

double closed_form_p(double lambda, std::int64_t iterations, double delta) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("closed_form_p: lambda must lie in [0,1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("closed_form_p: delta must lie in (0,1)");
  }
  if (iterations < 0) {
    throw std::domain_error("closed_form_p: iteration count must be >= 0");
  }
  // The whole pipeline runs in extended precision; see chebyshev_t_core.
  const long double big_l = 2.0L * static_cast<long double>(iterations) + 1.0L;
  const long double inv_delta = 1.0L / static_cast<long double>(delta);
  const long double scale = std::cosh(std::acosh(inv_delta) / big_l);  // T_{1/L}(1/delta)
  const long double arg = scale * std::sqrt(1.0L - static_cast<long double>(lambda));
  const long double t = detail::chebyshev_t_core(big_l, arg);
  const long double d = delta;
  const double p = static_cast<double>(1.0L - d * d * t * t);
  return std::clamp(p, 0.0, 1.0);
}

double lemma1_lower_bound(double lambda, double delta, std::int64_t sequence_length) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("lemma1_lower_bound: lambda must lie in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("lemma1_lower_bound: delta must lie in (0,1)");
  }
  if (sequence_length < 1) {
    throw std::domain_error("lemma1_lower_bound: sequence length must be >= 1");
  }
  const double critical =
      std::acosh(1.0 / delta) / std::acosh(1.0 / std::sqrt(1.0 - lambda));
  const double big_l = static_cast<double>(sequence_length);
  if (big_l > critical) {
    return 1.0 - delta * delta;
  }
  const double ratio = big_l / critical;
  const double order = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  const double t = chebyshev_t(order, 1.0 / delta);
  return 1.0 - delta * delta * t * t;
}

}  // namespace qsearch
