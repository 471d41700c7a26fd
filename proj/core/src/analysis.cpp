#include "qsearch/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qsearch/chebyshev.hpp"
#include "qsearch/dynamics.hpp"
#include "qsearch/schedule.hpp"
#include "chebyshev_internal.hpp"

namespace qsearch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta_c(double delta, double c, const char* who) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error(std::string(who) + ": delta must lie in (0,1)");
  }
  if (!(c > 1.0 && c < 1.0 / (delta * delta))) {
    throw std::domain_error(std::string(who) + ": c must lie in (1, delta^-2)");
  }
}

double closed_form_capped(double lambda, double l, double delta) {
  constexpr double kCap = 4.0e18;  // any iterate this deep sits in the saturated regime
  return closed_form_p(lambda, static_cast<std::int64_t>(l < kCap ? l : kCap), delta);
}

}  // namespace

ExpectationBreakdown expected_queries(double lambda, double delta, double c,
                                      ExpectationMode mode, double tail_tol) {
  check_delta_c(delta, c, "expected_queries");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("expected_queries: lambda must lie in (0,1)");
  }
  if (!(tail_tol > 0.0)) {
    throw std::domain_error("expected_queries: tail tolerance must be positive");
  }

  ExpectationBreakdown r;
  r.mode = mode;
  r.lambda = lambda;
  r.delta = delta;
  r.c = c;

  const double d2 = delta * delta;
  if (lambda >= 1.0 - d2) {
    r.applicable = false;  // the bare uniform sample already succeeds w.p. >= 1-delta^2
    return r;
  }
  r.applicable = true;

  const ThresholdReport thr = thresholds(delta, c, lambda, std::nullopt, 1);
  r.l_cri = *thr.l_cri;
  r.s0 = *thr.s0;

  const bool conservative = (mode == ExpectationMode::conservative);
  double occupancy = 1.0;
  for (int s = 1; s < 200000; ++s) {
    const double l = round_iterations(c, s);
    const double p = closed_form_capped(lambda, l, delta);
    const double cost =
        conservative ? 2.0 * l + 2.0 : 1.0 + (1.0 - lambda) * (2.0 * l + 1.0);
    const double term = occupancy * cost;
    if (s <= r.s0) {
      r.e_t1 += term;
    } else {
      r.e_t2 += term;
    }
    r.occupancy.push_back(occupancy);
    r.round_iterations.push_back(l);
    r.truncation_round = s;

    const double next =
        occupancy * (conservative ? (1.0 - p) : (1.0 - lambda) * (1.0 - p));
    if (s > r.s0) {
      // Past s0 every round fails w.p. <= delta^2 and l grows by at most a
      // factor c (plus the ceiling's +1), so the remaining terms are bounded
      // by a geometric envelope with ratio c*delta^2 < 1.
      const double tail = next * (2.0 * c * l / (1.0 - c * d2) + 4.0 / (1.0 - d2));
      if (!(tail > tail_tol * (r.e_t1 + r.e_t2))) {
        r.tail_bound = tail;
        break;
      }
    }
    occupancy = next;
  }
  r.e_total = r.e_t1 + r.e_t2;
  return r;
}

GBoundPoint g_bound(double delta, double c) {
  check_delta_c(delta, c, "g_bound");
  GBoundPoint p;
  p.delta = delta;
  p.c = c;
  const double t = chebyshev_t(std::sqrt(1.0 - 1.0 / (c * c)), 1.0 / delta);
  p.q_ub_first = delta * delta * t * t;
  p.g_value = (c / (c - 1.0) + c * p.q_ub_first / (1.0 - c * delta * delta)) *
              std::acosh(1.0 / delta);
  return p;
}

namespace {

// Objective with the feasible region {0 < delta < 1, 1 < c < delta^-2}
// enforced by an infinite barrier.
double g_or_inf(double delta, double c, std::uint64_t& evals) {
  if (!(delta > 1e-9 && delta < 1.0 - 1e-12 && c > 1.0 + 1e-12 &&
        c < 1.0 / (delta * delta))) {
    return kInf;
  }
  ++evals;
  return g_bound(delta, c).g_value;
}

}  // namespace

OptimizeResult optimize_g(double delta_lo, double delta_hi, int grid_density,
                          double refine_tol) {
  if (!(delta_lo > 0.0 && delta_lo < delta_hi && delta_hi < 1.0) || grid_density < 2 ||
      !(refine_tol > 0.0)) {
    throw std::domain_error("optimize_g: empty or invalid search region");
  }

  OptimizeResult out;
  out.grid_delta_lo = delta_lo;
  out.grid_delta_hi = delta_hi;
  out.grid_density = grid_density;
  out.refine_tol = refine_tol;

  // Stage 1: coarse grid. c is sampled at cell midpoints of (1, delta^-2) to
  // stay clear of both singular edges. Strict comparison keeps ties at the
  // lowest delta, then lowest c.
  double best_f = kInf, best_delta = 0.0, best_c = 0.0;
  double delta_step = (delta_hi - delta_lo) / (grid_density - 1);
  for (int i = 0; i < grid_density; ++i) {
    const double d = delta_lo + delta_step * i;
    const double c_max = 1.0 / (d * d);
    for (int j = 0; j < grid_density; ++j) {
      const double c = 1.0 + (c_max - 1.0) * (j + 0.5) / grid_density;
      const double f = g_or_inf(d, c, out.evaluations);
      if (f < best_f) {
        best_f = f;
        best_delta = d;
        best_c = c;
      }
    }
  }
  if (!(best_f < kInf)) {
    throw std::domain_error("optimize_g: no feasible point on the grid");
  }

  // Stage 2: deterministic Nelder-Mead from the grid optimum.
  struct Vertex {
    double d, c, f;
  };
  auto eval = [&](double d, double c) { return g_or_inf(d, c, out.evaluations); };
  std::array<Vertex, 3> simplex{
      Vertex{best_delta, best_c, best_f},
      Vertex{best_delta + 0.5 * delta_step, best_c, 0.0},
      Vertex{best_delta, best_c * 1.01, 0.0}};
  simplex[1].f = eval(simplex[1].d, simplex[1].c);
  simplex[2].f = eval(simplex[2].d, simplex[2].c);

  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
      if (a.f != b.f) return a.f < b.f;
      if (a.d != b.d) return a.d < b.d;
      return a.c < b.c;
    });
  };
  order();

  int iter = 0;
  for (; iter < 1000; ++iter) {
    if (simplex[2].f - simplex[0].f < refine_tol * (1.0 + std::fabs(simplex[0].f))) break;

    const double cd = (simplex[0].d + simplex[1].d) / 2.0;
    const double cc = (simplex[0].c + simplex[1].c) / 2.0;
    const double rd = cd + (cd - simplex[2].d);
    const double rc = cc + (cc - simplex[2].c);
    const double fr = eval(rd, rc);

    if (fr < simplex[0].f) {
      const double ed = cd + 2.0 * (cd - simplex[2].d);
      const double ec = cc + 2.0 * (cc - simplex[2].c);
      const double fe = eval(ed, ec);
      simplex[2] = fe < fr ? Vertex{ed, ec, fe} : Vertex{rd, rc, fr};
    } else if (fr < simplex[1].f) {
      simplex[2] = Vertex{rd, rc, fr};
    } else {
      const double kd = cd + 0.5 * (simplex[2].d - cd);
      const double kc = cc + 0.5 * (simplex[2].c - cc);
      const double fk = eval(kd, kc);
      if (fk < simplex[2].f) {
        simplex[2] = Vertex{kd, kc, fk};
      } else {
        for (int v = 1; v < 3; ++v) {
          simplex[v].d = simplex[0].d + 0.5 * (simplex[v].d - simplex[0].d);
          simplex[v].c = simplex[0].c + 0.5 * (simplex[v].c - simplex[0].c);
          simplex[v].f = eval(simplex[v].d, simplex[v].c);
        }
      }
    }
    order();
  }
  out.refine_steps = iter;
  out.delta_star = simplex[0].d;
  out.c_star = simplex[0].c;
  out.g_star = simplex[0].f;

  // Interior-minimum stencil: every neighbor at a 1e-3 step must be worse.
  out.stencil_ok = true;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      const double f = g_or_inf(out.delta_star + 1e-3 * di, out.c_star + 1e-3 * dj,
                                out.evaluations);
      if (!(f > out.g_star)) out.stencil_ok = false;
    }
  }
  return out;
}

Lemma1ScanConfig default_lemma1_config() {
  Lemma1ScanConfig cfg;
  cfg.lambdas.reserve(30);
  const double lo = std::log(1e-4), hi = std::log(0.99);
  for (int i = 0; i < 30; ++i) {
    cfg.lambdas.push_back(std::exp(lo + (hi - lo) * i / 29.0));
  }
  cfg.deltas.reserve(19);
  for (int i = 0; i < 19; ++i) {
    cfg.deltas.push_back(0.05 + 0.05 * i);
  }
  return cfg;
}

Lemma1ScanReport lemma1_scan(const Lemma1ScanConfig& config) {
  Lemma1ScanReport report;
  auto record = [&report](const ScanViolation& v) {
    ++report.violation_count;
    if (report.violations.size() < 100) report.violations.push_back(v);
  };

  for (double delta : config.deltas) {
    const double inv_delta = 1.0 / delta;
    for (double lambda : config.lambdas) {
      const double critical =
          std::acosh(inv_delta) / std::acosh(1.0 / std::sqrt(1.0 - lambda));
      for (int l = 0; l <= config.max_iterations; ++l) {
        const std::int64_t big_l = 2 * l + 1;

        ++report.points_checked;
        const double p = closed_form_p(lambda, l, delta);
        const double lb = lemma1_lower_bound(lambda, delta, big_l);
        if (p < lb - config.slack) {
          record({ScanCheck::lemma_bound, lambda, delta, big_l, 0.0, 0.0, p, lb});
        }

        if (static_cast<double>(big_l) <= critical) {
          ++report.points_checked;
          // Extended precision end to end: near L = L_cri the inner argument
          // sits at 1 and a double-rounded product would cost more than the
          // 1e-12 slack.
          const long double ll = static_cast<long double>(big_l);
          const long double inner =
              std::cosh(std::acosh(static_cast<long double>(inv_delta)) / ll) *
              std::sqrt(1.0L - static_cast<long double>(lambda));
          const double mid =
              static_cast<double>(detail::chebyshev_t_core(ll, inner));
          const double ratio = static_cast<double>(big_l) / critical;
          const double upper = chebyshev_t(
              std::sqrt(std::max(0.0, 1.0 - ratio * ratio)), inv_delta);
          if (mid < 1.0 - config.slack) {
            record({ScanCheck::sandwich_lower, lambda, delta, big_l, 0.0, 0.0, mid, 1.0});
          }
          if (mid > upper * (1.0 + config.slack) + config.slack) {
            record({ScanCheck::sandwich_upper, lambda, delta, big_l, 0.0, 0.0, mid, upper});
          }
        }
      }
    }
  }

  for (int i = 1; i <= config.cosh_x_points; ++i) {
    const double x = 50.0 * i / config.cosh_x_points;
    for (int j = 0; j < config.cosh_theta_points; ++j) {
      const double theta =
          (std::numbers::pi / 2.0) * j / (config.cosh_theta_points - 1);
      ++report.points_checked;
      const double lhs = std::cosh(x);
      const double rhs = std::cosh(x * std::sin(theta)) * std::cosh(x * std::cos(theta));
      // cosh values span 20 orders of magnitude; the slack is relative here.
      if (lhs > rhs * (1.0 + config.slack)) {
        record({ScanCheck::cosh_product, 0.0, 0.0, 0, x, theta, lhs, rhs});
      }
    }
  }
  return report;
}

}  // namespace qsearch
