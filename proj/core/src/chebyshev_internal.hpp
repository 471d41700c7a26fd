#pragma once

#include <cmath>

namespace qsearch::detail {

// Extended-precision transform core for nonnegative arguments. Pipelines that
// form the argument as a product (e.g. T_{1/L}(1/delta) * sqrt(1-lambda))
// must stay in long double end to end: near x = 1 the sensitivity of
// T_L(x) to x grows like L / sqrt(1 - x^2), so a double-rounded argument
// costs ~1e-11 at L ~ 1000.
inline long double chebyshev_t_core(long double order, long double x) {
  if (x >= 1.0L) return std::cosh(order * std::acosh(x));
  return std::cos(order * std::acos(x));
}

}  // namespace qsearch::detail
