#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qsearch/chebyshev.hpp"
#include "qsearch/dynamics.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/schedule.hpp"
#include "qsearch/statevector.hpp"

using namespace qsearch;

namespace {

// Projection of a full register onto the marked/unmarked superpositions.
SubspaceState project(const StateVector& sv) {
  const double n = static_cast<double>(sv.size());
  const double m = static_cast<double>(sv.targets.size());
  std::complex<double> a(0.0, 0.0), b(0.0, 0.0);
  std::size_t t = 0;
  for (std::uint64_t x = 0; x < sv.size(); ++x) {
    if (t < sv.targets.size() && sv.targets[t] == x) {
      a += sv.amps[x];
      ++t;
    } else {
      b += sv.amps[x];
    }
  }
  SubspaceState s;
  s.a = a / std::sqrt(m);
  s.b = m == n ? std::complex<double>(0.0, 0.0) : b / std::sqrt(n - m);
  return s;
}

}  // namespace

TEST_CASE("initial state amplitudes") {
  const SubspaceState full = prepare_initial(1.0);
  CHECK(full.a == std::complex<double>(1.0, 0.0));
  CHECK(full.b == std::complex<double>(0.0, 0.0));

  const SubspaceState quarter = prepare_initial(0.25);
  CHECK(quarter.a.real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(quarter.b.real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));

  CHECK(prepare_initial(0.5).norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(prepare_initial(0.0), std::domain_error);
  CHECK_THROWS_AS(prepare_initial(1.5), std::domain_error);
}

TEST_CASE("pi phases reproduce the textbook rotation") {
  const double pi = std::numbers::pi;
  for (double lambda : {0.01, 0.1, 0.5}) {
    const double theta = std::asin(std::sqrt(lambda));
    SubspaceState s = prepare_initial(lambda);
    for (int k = 1; k <= 50; ++k) {
      s = apply_generalized_grover(s, pi, pi, lambda);
      const double expected = std::pow(std::sin((2.0 * k + 1.0) * theta), 2);
      CHECK(s.success_probability() == doctest::Approx(expected).epsilon(1e-12));
      CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero phases give a pure global sign") {
  const SubspaceState s = prepare_initial(0.3);
  const SubspaceState t = apply_generalized_grover(s, 0.0, 0.0, 0.3);
  CHECK(t.a == -s.a);
  CHECK(t.b == -s.b);
  CHECK(t.success_probability() == s.success_probability());
}

TEST_CASE("norm preserved under random phases") {
  PhiloxRng rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const double lambda = 0.01 + 0.98 * rng.next_unit();
    SubspaceState s = prepare_initial(lambda);
    for (int k = 0; k < 50; ++k) {
      const double phi = (2.0 * rng.next_unit() - 1.0) * 2.0 * std::numbers::pi;
      const double varphi = (2.0 * rng.next_unit() - 1.0) * 2.0 * std::numbers::pi;
      s = apply_generalized_grover(s, phi, varphi, lambda);
    }
    CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sequence endpoints") {
  CHECK(run_sequence(1.0, build_schedule(17, 0.4)) == doctest::Approx(1.0).epsilon(1e-12));
  for (double lambda : {1e-4, 0.3, 0.99}) {
    CHECK(run_sequence(lambda, build_schedule(0, 0.5)) ==
          doctest::Approx(lambda).epsilon(1e-15));
  }
}

TEST_CASE("sequence equals the closed form") {
  // Frozen reference values for the sequence success probability.
  CHECK(closed_form_p(0.1, 1, 0.5659) ==
        doctest::Approx(0.53713886383715321).epsilon(1e-13));
  CHECK(closed_form_p(0.1, 3, 0.5659) ==
        doctest::Approx(0.95905906591711697).epsilon(1e-13));

  PhiloxRng rng(3, 0);
  for (int i = 0; i < 150; ++i) {
    const double lambda = std::exp(std::log(1e-4) + rng.next_unit() * std::log(0.99 / 1e-4));
    const double delta = 0.1 + 0.8 * rng.next_unit();
    const int l = static_cast<int>(rng.uniform_below(301));
    const PhaseSchedule s = build_schedule(l, delta);
    CHECK(run_sequence(lambda, s) ==
          doctest::Approx(closed_form_p(lambda, l, delta)).epsilon(1e-11));
  }
}

TEST_CASE("closed form endpoints and clamping") {
  for (int l : {0, 1, 5, 100}) {
    for (double delta : {0.1, 0.5659, 0.9}) {
      CHECK(closed_form_p(1.0, l, delta) == 1.0);
      CHECK(std::fabs(closed_form_p(0.0, l, delta)) <= 1e-12);
    }
  }
  // Guaranteed-success threshold: lambda at omega keeps P >= 1 - delta^2.
  for (double delta : {0.3, 0.5659, 0.8}) {
    for (int l : {1, 4, 20, 200}) {
      const double big_l = 2.0 * l + 1.0;
      const double omega = std::pow(std::log(2.0 / delta) / big_l, 2);
      if (omega < 1.0) {
        CHECK(closed_form_p(omega, l, delta) >= 1.0 - delta * delta - 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(closed_form_p(-0.1, 1, 0.5), std::domain_error);
  CHECK_THROWS_AS(closed_form_p(0.1, -1, 0.5), std::domain_error);
  CHECK_THROWS_AS(closed_form_p(0.1, 1, 1.0), std::domain_error);
}

TEST_CASE("success lower bound") {
  // Saturated branch and its boundary.
  CHECK(lemma1_lower_bound(0.5, 0.5659, 1001) == 1.0 - 0.5659 * 0.5659);
  {
    // Pick lambda so the critical length is exactly 3: the reduced order is
    // zero there and both branches give 1 - delta^2 (continuity).
    const double d = 0.5;
    const double gamma3 = qsearch::inverse_t_fractional(3, 1.0 / d);
    const double lambda_boundary = 1.0 - gamma3 * gamma3;
    CHECK(lemma1_lower_bound(lambda_boundary, d, 3) ==
          doctest::Approx(1.0 - d * d).epsilon(1e-6));
  }
  const double delta = 0.5659, lambda = 0.1;
  // Frozen: 1 - delta^2 T^2_{sqrt(1-9/L_cri^2)}(1/delta) at lambda = 0.1.
  CHECK(lemma1_lower_bound(0.1, 0.5659, 3) ==
        doctest::Approx(0.53142669404563804).epsilon(1e-13));
  CHECK(lemma1_lower_bound(0.1, 0.5659, 3) <= closed_form_p(0.1, 1, 0.5659));

  PhiloxRng rng(8, 0);
  for (int i = 0; i < 300; ++i) {
    const double lam = std::exp(std::log(1e-4) + rng.next_unit() * std::log(0.99 / 1e-4));
    const double d = 0.05 + 0.9 * rng.next_unit();
    const int l = static_cast<int>(rng.uniform_below(301));
    CHECK(closed_form_p(lam, l, d) >= lemma1_lower_bound(lam, d, 2 * l + 1) - 1e-12);
  }
  CHECK_THROWS_AS(lemma1_lower_bound(0.0, 0.5, 3), std::domain_error);
  CHECK_THROWS_AS(lemma1_lower_bound(0.1, 0.5, 0), std::domain_error);
}

TEST_CASE("fixed point: no overcooking past the minimal length") {
  const double delta = 0.5659;
  PhiloxRng rng(12, 0);
  for (double lambda0 : {0.005, 0.05, 0.2}) {
    const double min_length = std::log(2.0 / delta) / std::sqrt(lambda0);
    const int l_min = static_cast<int>(std::ceil((min_length - 1.0) / 2.0));
    for (int l = l_min; l < l_min + 60; ++l) {
      for (int i = 0; i < 5; ++i) {
        const double lambda = lambda0 + (1.0 - lambda0) * rng.next_unit();
        CHECK(closed_form_p(lambda, l, delta) >= 1.0 - delta * delta - 1e-12);
      }
    }
  }
}

TEST_CASE("register preparation") {
  const StateVector one = sv_prepare(1, {1});
  CHECK(one.lambda() == 0.5);
  CHECK(one.amps[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  std::vector<std::uint32_t> targets;
  for (std::uint32_t i = 0; i < 32; ++i) targets.push_back(i * 31 + 1);
  CHECK(sv_prepare(10, targets).lambda() == doctest::Approx(1.0 / 32.0).epsilon(1e-15));

  std::vector<std::uint32_t> all(8);
  for (std::uint32_t i = 0; i < 8; ++i) all[i] = i;
  CHECK(sv_prepare(3, all).lambda() == 1.0);

  // Duplicates collapse.
  CHECK(sv_prepare(3, {5, 5, 5}).targets.size() == 1);

  CHECK_THROWS_AS(sv_prepare(3, {}), std::domain_error);
  CHECK_THROWS_AS(sv_prepare(3, {8}), std::domain_error);
  CHECK_THROWS_AS(sv_prepare(0, {0}), std::domain_error);
  CHECK_THROWS_AS(sv_prepare(21, {0}), std::domain_error);
}

TEST_CASE("register iteration tracks the two-level engine componentwise") {
  PhiloxRng rng(21, 0);
  for (int rep = 0; rep < 25; ++rep) {
    const int qubits = 2 + static_cast<int>(rng.uniform_below(9));
    const std::uint64_t n = std::uint64_t{1} << qubits;
    const std::uint64_t m = 1 + rng.uniform_below(n);
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t x = 0; x < n; ++x) pool[x] = static_cast<std::uint32_t>(x);
    for (std::uint64_t x = 0; x < m; ++x) {
      std::swap(pool[x], pool[x + rng.uniform_below(n - x)]);
    }
    StateVector sv = sv_prepare(qubits, {pool.begin(), pool.begin() + static_cast<long>(m)});
    SubspaceState s = project(sv);
    const double lambda = sv.lambda();
    for (int k = 0; k < 20; ++k) {
      const double phi = (2.0 * rng.next_unit() - 1.0) * 2.0 * std::numbers::pi;
      const double varphi = (2.0 * rng.next_unit() - 1.0) * 2.0 * std::numbers::pi;
      sv_apply_iteration(sv, phi, varphi);
      s = apply_generalized_grover(s, phi, varphi, lambda);
      const SubspaceState projected = project(sv);
      CHECK(std::abs(projected.a - s.a) < 1e-10);
      CHECK(std::abs(projected.b - s.b) < 1e-10);
    }
  }
}

TEST_CASE("register norm is stable across ten thousand iterations") {
  StateVector sv = sv_prepare(4, {3, 7, 9});
  PhiloxRng rng(33, 0);
  for (int k = 0; k < 10000; ++k) {
    sv_apply_iteration(sv, 2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0);
  }
  CHECK(sv.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("register pi phases reproduce the textbook rotation") {
  StateVector sv = sv_prepare(6, {11, 45});
  const double theta = std::asin(std::sqrt(sv.lambda()));
  for (int k = 1; k <= 12; ++k) {
    sv_apply_iteration(sv, std::numbers::pi, std::numbers::pi);
    CHECK(sv.success_probability() ==
          doctest::Approx(std::pow(std::sin((2.0 * k + 1.0) * theta), 2)).epsilon(1e-12));
  }
}

TEST_CASE("register and subspace success probabilities agree on random cases") {
  PhiloxRng rng(99, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const int qubits = 2 + static_cast<int>(rng.uniform_below(9));
    const std::uint64_t n = std::uint64_t{1} << qubits;
    const std::uint64_t m = 1 + rng.uniform_below(n);
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t x = 0; x < n; ++x) pool[x] = static_cast<std::uint32_t>(x);
    for (std::uint64_t x = 0; x < m; ++x) {
      std::swap(pool[x], pool[x + rng.uniform_below(n - x)]);
    }
    const double delta = 0.1 + 0.8 * rng.next_unit();
    const int l = static_cast<int>(rng.uniform_below(101));
    const PhaseSchedule sched = build_schedule(l, delta);
    const double p_subspace =
        run_sequence(static_cast<double>(m) / static_cast<double>(n), sched);
    const double p_register =
        sv_run_sequence(qubits, {pool.begin(), pool.begin() + static_cast<long>(m)}, sched);
    CHECK(p_subspace == doctest::Approx(p_register).epsilon(1e-8));
  }
}
