#pragma once

namespace qsearch {

/// Tolerance for clamping arguments that rounding pushed just below the
/// x = 1 regime boundary of a fractional-order evaluation.
inline constexpr double kChebyshevClampEps = 1e-12;

/// Chebyshev polynomial of the first kind, T_order(x), evaluated through the
/// trigonometric/hyperbolic transforms:
///
///   cos(order * acos(x))            for |x| <= 1
///   cosh(order * acosh(x))          for x >= 1
///   (-1)^order * cosh(order * acosh(-x))  for x <= -1 (integer order only)
///
/// The transform evaluation stays stable for orders up to ~1e6 where an
/// expanded-coefficient evaluation would overflow. Non-integer orders are
/// supported for x >= 1 only; arguments within kChebyshevClampEps below 1
/// are clamped to 1 so that rounding noise in products like
/// T_{1/L}(1/delta) * sqrt(1-lambda) cannot trigger a spurious domain error
/// (the two regimes agree at x = 1).
///
/// Throws std::domain_error for negative order and for non-integer order
/// with x < 1 - kChebyshevClampEps.
double chebyshev_t(double order, double x);

/// Reciprocal of the fractional-order value T_{1/L}(y) for y >= 1, i.e.
/// 1 / cosh(acosh(y) / L). The result lies in (0, 1].
///
/// Note on notation: some writeups denote this quantity T_{1/L}^{-1}(y).
/// Here the "-1" is read as a reciprocal, not a function inverse; the
/// reciprocal reading keeps the value in (0, 1] so that sqrt(1 - gamma^2)
/// in the phase-matching formula is real for every damping in (0, 1).
///
/// Throws std::domain_error for y < 1 or L < 1.
double inverse_t_fractional(int order_denominator, double y);

}  // namespace qsearch
