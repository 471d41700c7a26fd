#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "format.hpp"
#include "qsearch/algorithms.hpp"
#include "qsearch/analysis.hpp"
#include "qsearch/chebyshev.hpp"
#include "qsearch/dynamics.hpp"
#include "qsearch/montecarlo.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/schedule.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/version.hpp"

namespace {

using namespace qsearch;
using qtool::fmt17;
using qtool::OutputSink;
using qtool::parse_grid;
using qtool::resolve_seed;
using qtool::write_preamble;

// ---------------------------------------------------------------------------
// Shared Monte Carlo configuration
// ---------------------------------------------------------------------------

struct McConfig {
  double delta = 0.5659;
  double c = 1.523;
  std::optional<double> lambda0;
  double boyer_growth = 6.0 / 5.0;
  double okamoto_growth = 8.0 / 7.0;
  int round_cap = 200;
  std::string accounting = "standard";
  std::string hybrid_round = "full";  // full | conservative
  int threads = 0;

  Accounting accounting_value() const {
    return accounting == "merged" ? Accounting::merged : Accounting::standard;
  }
};

const std::vector<std::string> kSimulatedAlgorithms = {"hybrid", "boyer", "okamoto",
                                                       "yoder", "pi3"};
const std::vector<std::string> kReferenceAlgorithms = {"younes2008", "younes2013"};

bool is_reference_algorithm(const std::string& a) {
  return std::find(kReferenceAlgorithms.begin(), kReferenceAlgorithms.end(), a) !=
         kReferenceAlgorithms.end();
}

TrialSummary run_algorithm_trials(const std::string& algorithm, double lambda,
                                  std::uint64_t trials, std::uint64_t seed,
                                  const McConfig& cfg) {
  const Accounting acc = cfg.accounting_value();
  std::function<RunOutcome(PhiloxRng&)> trial;
  if (algorithm == "hybrid") {
    HybridParams p;
    p.delta = cfg.delta;
    p.c = cfg.c;
    p.accounting = acc;
    p.round_cap = cfg.round_cap;
    p.sampling_exit = (cfg.hybrid_round != "conservative");
    trial = [lambda, p](PhiloxRng& rng) { return run_hybrid(lambda, p, rng); };
  } else if (algorithm == "boyer") {
    BoyerParams p;
    p.growth = cfg.boyer_growth;
    p.lambda0_cap = cfg.lambda0;
    p.round_cap = cfg.round_cap;
    trial = [lambda, p](PhiloxRng& rng) { return run_boyer(lambda, p, rng); };
  } else if (algorithm == "okamoto") {
    OkamotoParams p;
    p.growth = cfg.okamoto_growth;
    p.round_cap = cfg.round_cap;
    trial = [lambda, p](PhiloxRng& rng) { return run_okamoto(lambda, p, rng); };
  } else if (algorithm == "yoder") {
    const double l0 = cfg.lambda0.value_or(lambda);
    const double d = cfg.delta;
    trial = [lambda, l0, d, acc](PhiloxRng& rng) {
      return run_yoder_fixed(lambda, l0, d, acc, rng);
    };
  } else if (algorithm == "pi3") {
    const double l0 = cfg.lambda0.value_or(lambda);
    const double d = cfg.delta;
    const int cap = cfg.round_cap;
    trial = [lambda, l0, d, cap, acc](PhiloxRng& rng) {
      return run_pi3(lambda, l0, d, cap, acc, rng);
    };
  } else {
    throw std::runtime_error("unknown algorithm: " + algorithm);
  }
  return run_trials(trials, seed, trial, cfg.threads);
}

struct BoundInfo {
  double value = 0.0;
  std::string name;
};

BoundInfo bound_for(const std::string& algorithm, double lambda, const McConfig& cfg) {
  const double rl = std::sqrt(lambda);
  const double lambda0 = cfg.lambda0.value_or(lambda);
  if (algorithm == "hybrid") return {5.643 / rl, "5.643/sqrt(lambda)"};
  if (algorithm == "boyer") return {4.0 / rl, "4/sqrt(lambda)"};
  if (algorithm == "okamoto") return {8.378 / rl, "8.378/sqrt(lambda)"};
  if (algorithm == "younes2008")
    return {4.0 * std::sqrt(2.0) / rl, "4*sqrt(2)/sqrt(lambda)"};
  if (algorithm == "younes2013") return {61.42 / rl, "61.42/sqrt(lambda)"};
  if (algorithm == "yoder")
    return {std::log(2.0 / cfg.delta) / std::sqrt(lambda0), "ln(2/delta)/sqrt(lambda0)"};
  if (algorithm == "pi3")
    return {std::log(1.0 / cfg.delta) / lambda0, "ln(1/delta)/lambda0"};
  return {0.0, ""};
}

std::string stats_cells(const MetricStats& m) {
  return fmt17(m.mean) + "," + fmt17(m.stddev) + "," + fmt17(m.sem);
}

const char* kTrialCsvHeader =
    "algorithm,lambda,trials,seed,accounting,found_rate,"
    "mean_iterations,stddev_iterations,sem_iterations,"
    "mean_oracle_queries,stddev_oracle_queries,sem_oracle_queries,"
    "mean_verifications,stddev_verifications,sem_verifications,"
    "mean_rounds,stddev_rounds,sem_rounds,"
    "mean_total_queries,stddev_total_queries,sem_total_queries,"
    "bound,bound_name";

std::string trial_row(const std::string& algorithm, double lambda,
                      std::uint64_t trials, std::uint64_t seed, const McConfig& cfg,
                      const TrialSummary& s) {
  const BoundInfo b = bound_for(algorithm, lambda, cfg);
  std::ostringstream row;
  row << algorithm << ',' << fmt17(lambda) << ',' << trials << ',' << seed << ','
      << cfg.accounting << ','
      << fmt17(static_cast<double>(s.found) / static_cast<double>(s.trials)) << ','
      << stats_cells(s.iterations) << ',' << stats_cells(s.oracle_queries) << ','
      << stats_cells(s.verifications) << ',' << stats_cells(s.rounds) << ','
      << stats_cells(s.total_queries) << ',' << fmt17(b.value) << ',' << b.name;
  return row.str();
}

std::string reference_row(const std::string& algorithm, double lambda,
                          const McConfig& cfg) {
  const BoundInfo b = bound_for(algorithm, lambda, cfg);
  std::ostringstream row;
  row << algorithm << ',' << fmt17(lambda) << ",,," << cfg.accounting << ',';
  for (int i = 0; i < 16; ++i) row << ',';
  row << fmt17(b.value) << ',' << b.name;
  return row.str();
}

std::string mc_invocation_suffix(const McConfig& cfg) {
  std::ostringstream s;
  s << " --delta " << fmt17(cfg.delta) << " --c " << fmt17(cfg.c);
  if (cfg.lambda0) s << " --lambda0 " << fmt17(*cfg.lambda0);
  s << " --boyer-growth " << fmt17(cfg.boyer_growth) << " --okamoto-growth "
    << fmt17(cfg.okamoto_growth) << " --round-cap " << cfg.round_cap
    << " --accounting " << cfg.accounting << " --hybrid-round " << cfg.hybrid_round;
  return s.str();
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_schedule(int l, double delta, std::optional<std::uint64_t> seed_opt,
                 const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const PhaseSchedule s = build_schedule(l, delta);

  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "schedule --l " << l << " --delta " << fmt17(delta) << " --seed " << seed;
  write_preamble(os, inv.str(), seed);
  os << "# L: " << s.sequence_length << "\n";
  os << "# gamma: " << fmt17(s.gamma) << "\n";
  os << "j,phi,varphi\n";
  for (int j = 1; j <= s.iterations; ++j) {
    os << j << ',' << fmt17(s.phi[static_cast<std::size_t>(j - 1)]) << ','
       << fmt17(s.varphi[static_cast<std::size_t>(j - 1)]) << "\n";
  }
  return 0;
}

int cmd_simulate(const std::string& lambda_grid, int l, double delta,
                 std::optional<std::uint64_t> seed_opt, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const std::vector<double> lambdas = parse_grid(lambda_grid);
  const PhaseSchedule s = build_schedule(l, delta);

  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "simulate --lambda-grid " << lambda_grid << " --l " << l << " --delta "
      << fmt17(delta) << " --seed " << seed;
  write_preamble(os, inv.str(), seed);
  os << "lambda,l,delta,p_simulated,p_closed_form,lemma1_lower_bound\n";
  for (double lambda : lambdas) {
    const double ps = run_sequence(lambda, s);
    const double pc = closed_form_p(lambda, l, delta);
    const double lb = lambda < 1.0 ? lemma1_lower_bound(lambda, delta, s.sequence_length)
                                   : 1.0 - delta * delta;
    os << fmt17(lambda) << ',' << l << ',' << fmt17(delta) << ',' << fmt17(ps) << ','
       << fmt17(pc) << ',' << fmt17(lb) << "\n";
  }
  return 0;
}

int cmd_montecarlo(const std::string& algorithm, const std::string& lambda_grid,
                   std::uint64_t trials, std::optional<std::uint64_t> seed_opt,
                   const McConfig& cfg, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const std::vector<double> lambdas = parse_grid(lambda_grid);

  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "montecarlo --algorithm " << algorithm << " --lambda-grid " << lambda_grid
      << " --trials " << trials << " --seed " << seed << mc_invocation_suffix(cfg);
  write_preamble(os, inv.str(), seed);
  os << kTrialCsvHeader << ",expected_total_conservative,expected_total_exact\n";
  for (double lambda : lambdas) {
    const TrialSummary s = run_algorithm_trials(algorithm, lambda, trials, seed, cfg);
    std::string expected_cons, expected_exact;
    if (algorithm == "hybrid" && lambda < 1.0 - cfg.delta * cfg.delta) {
      expected_cons = fmt17(
          expected_queries(lambda, cfg.delta, cfg.c, ExpectationMode::conservative)
              .e_total);
      expected_exact = fmt17(
          expected_queries(lambda, cfg.delta, cfg.c, ExpectationMode::exact).e_total);
    }
    os << trial_row(algorithm, lambda, trials, seed, cfg, s) << ',' << expected_cons
       << ',' << expected_exact << "\n";
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& algorithms,
                const std::string& lambda_grid, std::uint64_t trials,
                std::optional<std::uint64_t> seed_opt, const McConfig& cfg,
                const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const std::vector<double> lambdas = parse_grid(lambda_grid);

  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "compare --algorithms ";
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    inv << (i ? "," : "") << algorithms[i];
  }
  inv << " --lambda-grid " << lambda_grid << " --trials " << trials << " --seed "
      << seed << mc_invocation_suffix(cfg);
  write_preamble(os, inv.str(), seed);
  os << kTrialCsvHeader << "\n";
  for (const std::string& algorithm : algorithms) {
    for (double lambda : lambdas) {
      if (is_reference_algorithm(algorithm)) {
        os << reference_row(algorithm, lambda, cfg) << "\n";
      } else {
        const TrialSummary s =
            run_algorithm_trials(algorithm, lambda, trials, seed, cfg);
        os << trial_row(algorithm, lambda, trials, seed, cfg, s) << "\n";
      }
    }
  }
  return 0;
}

int cmd_optimize(double delta_lo, double delta_hi, int grid_density, double refine_tol,
                 std::optional<std::uint64_t> seed_opt, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  const OptimizeResult r = optimize_g(delta_lo, delta_hi, grid_density, refine_tol);

  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "optimize --delta-lo " << fmt17(delta_lo) << " --delta-hi " << fmt17(delta_hi)
      << " --grid-density " << grid_density << " --refine-tol " << fmt17(refine_tol)
      << " --seed " << seed;
  write_preamble(os, inv.str(), seed);
  os << "delta_star=" << fmt17(r.delta_star) << "\n";
  os << "c_star=" << fmt17(r.c_star) << "\n";
  os << "g_star=" << fmt17(r.g_star) << "\n";
  os << "grid_delta_lo=" << fmt17(r.grid_delta_lo) << "\n";
  os << "grid_delta_hi=" << fmt17(r.grid_delta_hi) << "\n";
  os << "grid_density=" << r.grid_density << "\n";
  os << "refine_tol=" << fmt17(r.refine_tol) << "\n";
  os << "refine_steps=" << r.refine_steps << "\n";
  os << "evaluations=" << r.evaluations << "\n";
  os << "stencil_ok=" << (r.stencil_ok ? 1 : 0) << "\n";
  return 0;
}

int cmd_validate(int cases, std::optional<std::uint64_t> seed_opt, double perturb,
                 int max_qubits, int max_l, const std::string& out) {
  const std::uint64_t seed = resolve_seed(seed_opt);
  OutputSink sink(out);
  std::ostream& os = sink.stream();
  std::ostringstream inv;
  inv << "validate --cases " << cases << " --seed " << seed << " --perturb "
      << fmt17(perturb) << " --max-qubits " << max_qubits << " --max-l " << max_l;
  write_preamble(os, inv.str(), seed);

  bool all_ok = true;

  // Suite 1: full-register oracle against the two-level engine.
  if (cases == 0) {
    os << "equivalence: WARNING vacuous pass (0 cases)\n";
  } else {
    PhiloxRng rng(seed, 0);
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
      int qubits;
      std::uint64_t m;
      if (perturb != 0.0) {
        // Sensitivity mode wants a well-conditioned point: moderate lambda
        // and a sequence long enough for one phase to matter.
        qubits = 6 + static_cast<int>(rng.uniform_below(
                         static_cast<std::uint64_t>(std::max(1, max_qubits - 5))));
        const std::uint64_t n = std::uint64_t{1} << qubits;
        m = std::max<std::uint64_t>(1, n / 16) + rng.uniform_below(n / 8 + 1);
      } else {
        qubits = 2 + static_cast<int>(rng.uniform_below(
                         static_cast<std::uint64_t>(std::max(1, max_qubits - 1))));
        const std::uint64_t n = std::uint64_t{1} << qubits;
        m = 1 + rng.uniform_below(n);
      }
      const std::uint64_t n = std::uint64_t{1} << qubits;
      m = std::min<std::uint64_t>(m, n);

      // Sample m distinct indices.
      std::vector<std::uint32_t> pool(n);
      for (std::uint64_t x = 0; x < n; ++x) pool[x] = static_cast<std::uint32_t>(x);
      for (std::uint64_t x = 0; x < m; ++x) {
        const std::uint64_t pick = x + rng.uniform_below(n - x);
        std::swap(pool[x], pool[pick]);
      }
      std::vector<std::uint32_t> targets(pool.begin(), pool.begin() + static_cast<long>(m));

      const double delta = 0.1 + 0.8 * rng.next_unit();
      const int min_l = perturb != 0.0 ? 5 : 0;
      const int l = min_l + static_cast<int>(rng.uniform_below(
                                static_cast<std::uint64_t>(max_l - min_l + 1)));
      PhaseSchedule sched = build_schedule(l, delta);
      const double lambda = static_cast<double>(m) / static_cast<double>(n);
      const double p_sub = run_sequence(lambda, sched);

      if (perturb != 0.0 && l > 0) sched.phi[0] += perturb;
      const double p_sv = sv_run_sequence(qubits, targets, sched);
      worst = std::max(worst, std::fabs(p_sub - p_sv));
    }
    const bool ok = worst <= 1e-8;
    all_ok = all_ok && ok;
    os << "equivalence: " << (ok ? "PASS" : "FAIL") << " (" << cases
       << " cases, max |dP| = " << qtool::fmt4(worst) << ")\n";
  }

  // Suite 2: sequence dynamics against the closed form.
  {
    double worst = 0.0;
    const std::vector<int> ls = {0, 1, 3, 10, 40, 120, 350};
    for (int i = 0; i < 12; ++i) {
      const double lambda = std::exp(std::log(1e-4) + (std::log(0.99) - std::log(1e-4)) * i / 11.0);
      for (double delta = 0.1; delta < 0.95; delta += 0.2) {
        for (int l : ls) {
          const PhaseSchedule sched = build_schedule(l, delta);
          worst = std::max(worst,
                           std::fabs(run_sequence(lambda, sched) -
                                     closed_form_p(lambda, l, delta)));
        }
      }
    }
    const bool ok = worst <= 1e-10;
    all_ok = all_ok && ok;
    os << "closed-form: " << (ok ? "PASS" : "FAIL")
       << " (max |dP| = " << qtool::fmt4(worst) << ")\n";
  }

  // Suite 3: lower-bound and inequality grid scans.
  {
    const Lemma1ScanReport rep = lemma1_scan();
    all_ok = all_ok && rep.ok();
    os << "bound-scans: " << (rep.ok() ? "PASS" : "FAIL") << " ("
       << rep.points_checked << " points, " << rep.violation_count
       << " violations)\n";
  }

  // Suite 4: expected queries dominated by the bound coefficient.
  {
    const GBoundPoint g = g_bound(0.5659, 1.523);
    double worst_ratio = 0.0;
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      const double lambda =
          std::exp(std::log(1e-6) + (std::log(0.1) - std::log(1e-6)) * i / 49.0);
      const double e =
          expected_queries(lambda, 0.5659, 1.523, ExpectationMode::conservative).e_total;
      const double bound = g.g_value / std::sqrt(lambda);
      worst_ratio = std::max(worst_ratio, e / bound);
      ok = ok && e <= bound;
    }
    all_ok = all_ok && ok;
    os << "bound-dominance: " << (ok ? "PASS" : "FAIL")
       << " (50 points, max ratio = " << qtool::fmt4(worst_ratio) << ")\n";
  }

  os << (all_ok ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  return all_ok ? 0 : 1;
}

// Flat key=value configuration: each key is a long option name of the invoked
// subcommand ('-' and '_' are interchangeable, '#' starts a comment). Options
// given explicitly on the command line take precedence over the file.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;

  std::ifstream file(config_path);
  if (!file) throw std::runtime_error("cannot open config file: " + config_path);
  auto canon = [](std::string s) {
    for (char& ch : s) {
      if (ch == '_') ch = '-';
    }
    return s;
  };
  std::string line;
  while (std::getline(file, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const std::size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const std::size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = canon(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    bool already = false;
    for (const std::string& a : out) {
      if (canon(a) == flag) already = true;
    }
    if (!already) {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and analysis toolkit for quantum search with an unknown "
               "fraction of marked items"};
  app.set_version_flag("--version", std::string("qsearch ") + qsearch::kVersion);
  app.require_subcommand(1);

  // schedule ----------------------------------------------------------------
  auto* sc = app.add_subcommand("schedule", "emit a matched multiphase schedule");
  int sc_l = 1;
  double sc_delta = 0.5659;
  std::optional<std::uint64_t> sc_seed;
  std::string sc_out;
  sc->add_option("--l", sc_l, "iteration count")->check(CLI::NonNegativeNumber);
  sc->add_option("--delta", sc_delta, "damping parameter in (0,1)");
  sc->add_option("--seed", sc_seed, "master seed (recorded in output)");
  sc->add_option("--out", sc_out, "output path (default stdout)");

  // simulate ----------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "exact sequence dynamics at given lambda");
  std::string sim_lambda = "0.1";
  int sim_l = 1;
  double sim_delta = 0.5659;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_out;
  sim->add_option("--lambda", sim_lambda, "lambda value or comma list");
  sim->add_option("--lambda-grid", sim_lambda,
                  "lambda grid: comma list or logspace:LO:HI:N");
  sim->add_option("--l", sim_l, "iteration count")->check(CLI::NonNegativeNumber);
  sim->add_option("--delta", sim_delta, "damping parameter in (0,1)");
  sim->add_option("--seed", sim_seed, "master seed (recorded in output)");
  sim->add_option("--out", sim_out, "output path (default stdout)");

  // shared Monte Carlo options ------------------------------------------------
  McConfig mc;
  std::uint64_t trials = 10000;
  std::optional<std::uint64_t> mc_seed;
  std::string mc_out;

  auto add_mc_options = [&](CLI::App* cmd) {
    cmd->add_option("--trials", trials, "trials per (algorithm, lambda)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", mc_seed, "master seed; trial t uses stream t");
    cmd->add_option("--delta", mc.delta, "damping parameter");
    cmd->add_option("--c", mc.c, "trial growth rate");
    cmd->add_option("--lambda0", mc.lambda0,
                    "known lower bound on lambda (yoder/pi3; boyer window cap)");
    cmd->add_option("--boyer-growth", mc.boyer_growth, "window growth");
    cmd->add_option("--okamoto-growth", mc.okamoto_growth, "schedule growth");
    cmd->add_option("--round-cap", mc.round_cap, "round cap")->check(CLI::PositiveNumber);
    cmd->add_option("--accounting", mc.accounting, "query accounting convention")
        ->check(CLI::IsMember({"standard", "merged"}));
    cmd->add_option("--hybrid-round", mc.hybrid_round,
                    "hybrid round model: full procedure or conservative cost model")
        ->check(CLI::IsMember({"full", "conservative"}));
    cmd->add_option("--threads", mc.threads,
                    "worker threads (0 = hardware; result independent of choice)");
    cmd->add_option("--out", mc_out, "output path (default stdout)");
  };

  // montecarlo ----------------------------------------------------------------
  auto* mcc = app.add_subcommand("montecarlo", "trial statistics for one algorithm");
  std::string mc_algorithm = "hybrid";
  std::string mc_lambda_grid = "0.01";
  mcc->add_option("--algorithm", mc_algorithm, "algorithm to run")
      ->check(CLI::IsMember(kSimulatedAlgorithms));
  mcc->add_option("--lambda-grid", mc_lambda_grid, "comma list or logspace:LO:HI:N");
  mcc->add_option("--lambda", mc_lambda_grid, "single lambda (alias)");
  add_mc_options(mcc);

  // compare ---------------------------------------------------------------------
  auto* cmp = app.add_subcommand("compare", "CSV comparison across algorithms");
  std::string cmp_algorithms = "hybrid,boyer,okamoto";
  std::string cmp_lambda_grid = "0.001,0.01";
  cmp->add_option("--algorithms", cmp_algorithms,
                  "comma list from: hybrid,boyer,okamoto,yoder,pi3,younes2008,younes2013");
  cmp->add_option("--lambda-grid", cmp_lambda_grid, "comma list or logspace:LO:HI:N");
  add_mc_options(cmp);

  // optimize ----------------------------------------------------------------
  auto* opt = app.add_subcommand("optimize", "minimize the query-bound coefficient");
  double opt_dlo = 0.05, opt_dhi = 0.95, opt_tol = 1e-12;
  int opt_density = 200;
  std::optional<std::uint64_t> opt_seed;
  std::string opt_out;
  opt->add_option("--delta-lo", opt_dlo, "grid lower delta");
  opt->add_option("--delta-hi", opt_dhi, "grid upper delta");
  opt->add_option("--grid-density", opt_density, "grid points per axis")
      ->check(CLI::PositiveNumber);
  opt->add_option("--refine-tol", opt_tol, "refinement stopping tolerance");
  opt->add_option("--seed", opt_seed, "master seed (recorded in output)");
  opt->add_option("--out", opt_out, "output path (default stdout)");

  // validate ----------------------------------------------------------------
  auto* val = app.add_subcommand("validate", "aggregated property suites");
  int val_cases = 200, val_max_qubits = 12, val_max_l = 200;
  double val_perturb = 0.0;
  std::optional<std::uint64_t> val_seed;
  std::string val_out;
  val->add_option("--cases", val_cases, "equivalence cases (0 = vacuous)")
      ->check(CLI::NonNegativeNumber);
  val->add_option("--seed", val_seed, "master seed for case sampling");
  val->add_option("--perturb", val_perturb,
                  "inject a phase perturbation (sensitivity check; suite must fail)");
  val->add_option("--max-qubits", val_max_qubits, "register size cap")
      ->check(CLI::Range(2, 20));
  val->add_option("--max-l", val_max_l, "iteration cap")->check(CLI::PositiveNumber);
  val->add_option("--out", val_out, "output path (default stdout)");

  // Document --config on every subcommand; it is consumed before parsing.
  std::string config_doc;
  for (CLI::App* cmd : app.get_subcommands(nullptr)) {
    cmd->add_option("--config", config_doc,
                    "flat key=value configuration file (keys = long option names)");
  }

  std::vector<std::string> raw_args(argv + 1, argv + argc);
  std::vector<std::string> args;
  try {
    args = apply_config_file(raw_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> argv2;
  argv2.push_back(argv[0]);
  for (const std::string& a : args) argv2.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sc->parsed()) return cmd_schedule(sc_l, sc_delta, sc_seed, sc_out);
    if (sim->parsed()) return cmd_simulate(sim_lambda, sim_l, sim_delta, sim_seed, sim_out);
    if (mcc->parsed())
      return cmd_montecarlo(mc_algorithm, mc_lambda_grid, trials, mc_seed, mc, mc_out);
    if (cmp->parsed()) {
      std::vector<std::string> algorithms;
      std::size_t pos = 0;
      while (pos <= cmp_algorithms.size()) {
        std::size_t comma = cmp_algorithms.find(',', pos);
        if (comma == std::string::npos) comma = cmp_algorithms.size();
        const std::string name = cmp_algorithms.substr(pos, comma - pos);
        if (!name.empty()) algorithms.push_back(name);
        pos = comma + 1;
      }
      if (algorithms.empty()) throw std::runtime_error("no algorithms given");
      for (const std::string& a : algorithms) {
        if (!is_reference_algorithm(a) &&
            std::find(kSimulatedAlgorithms.begin(), kSimulatedAlgorithms.end(), a) ==
                kSimulatedAlgorithms.end()) {
          throw std::runtime_error("unknown algorithm: " + a);
        }
      }
      return cmd_compare(algorithms, cmp_lambda_grid, trials, mc_seed, mc, mc_out);
    }
    if (opt->parsed())
      return cmd_optimize(opt_dlo, opt_dhi, opt_density, opt_tol, opt_seed, opt_out);
    if (val->parsed())
      return cmd_validate(val_cases, val_seed, val_perturb, val_max_qubits, val_max_l,
                          val_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
