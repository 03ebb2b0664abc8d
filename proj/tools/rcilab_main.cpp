// SPDX-License-Identifier: Apache-2.0
//
// rcilab command line front end.
//
//   deq        closed-form large-system operating point
//   mc         finite-size Monte Carlo of the ergodic secrecy sum-rate
//   fdd-bits   feedback-bit dimensioning (scaling law + exact form)
//   tdd-train  training-length optimization (cubic + integer grid)
//   sweep      one-axis sweeps and the built-in figure recipes
//   selftest   fast internal consistency battery
//
// Exit codes: 0 success, 1 validation, 2 numeric, 3 I/O.

#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rcilab/asymptotics.hpp"
#include "rcilab/channel.hpp"
#include "rcilab/config.hpp"
#include "rcilab/csv.hpp"
#include "rcilab/cubic.hpp"
#include "rcilab/errors.hpp"
#include "rcilab/fdd.hpp"
#include "rcilab/gaussian.hpp"
#include "rcilab/philox.hpp"
#include "rcilab/precoder.hpp"
#include "rcilab/stats.hpp"
#include "rcilab/sweep.hpp"
#include "rcilab/tdd.hpp"

namespace {

using namespace rcilab;

struct CommonOpts {
  int M = 10;
  int K = 10;
  double rho_db = 20.0;
  double tau2 = 0.0;
  int trials = 1000;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

void add_system_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--M", o.M, "Transmit antennas")->capture_default_str();
  cmd->add_option("--K", o.K, "Users")->capture_default_str();
  cmd->add_option("--rho-db", o.rho_db, "Downlink SNR in dB")->capture_default_str();
  cmd->add_option("--tau2", o.tau2, "CSIT error variance in [0,1]")
      ->capture_default_str();
}

void add_mc_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
}

void add_out_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "Write the result table to this path");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Route a result to --out / --format; `fallback` prints the human summary
// when no output file was requested.
template <class Fallback>
void deliver(const SweepResult& result, const CommonOpts& o, Fallback&& fallback) {
  if (!o.out.empty()) {
    if (o.format == "json")
      emit_json(result, o.out);
    else
      emit_csv(result, o.out);
    std::cerr << "wall_time_sec=" << result.meta.wall_time_sec << "\n";
    return;
  }
  fallback();
}

int run_deq(const CommonOpts& o, double xi_override, bool has_xi) {
  const SystemConfig cfg =
      SystemConfig::make(o.M, o.K, db_to_linear(o.rho_db), o.tau2);
  const double xi = has_xi ? xi_override : optimal_regularizer(cfg.beta, cfg.rho);
  const LargeSystemPoint pt = secrecy_rate_deq(cfg, xi);
  const double perfect = cfg.K * secrecy_rate_deq_perfect(cfg.beta, cfg.rho);

  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "cmd=deq;M=" + std::to_string(o.M) + ";K="
                       + std::to_string(o.K) + ";rho_db=" + format_double(o.rho_db)
                       + ";tau2=" + format_double(o.tau2);
  SweepRow row;
  row.axis = "rho_db";
  row.axis_value = o.rho_db;
  row.deq_value = cfg.K * pt.rate_per_user;
  row.deq_perfect = perfect;
  row.extra = "xi=" + format_double(pt.xi) + ";g=" + format_double(pt.g)
              + ";rho_tilde=" + format_double(pt.rho_tilde)
              + ";xi_tilde=" + format_double(pt.xi_tilde)
              + ";sinr_int=" + format_double(pt.sinr_intended_deq)
              + ";sinr_eve=" + format_double(pt.sinr_eve_deq)
              + ";rate_per_user=" + format_double(pt.rate_per_user);
  res.rows.push_back(row);

  deliver(res, o, [&] {
    std::cout << "deq point  M=" << o.M << " K=" << o.K << " beta="
              << format_double(cfg.beta) << " rho_db=" << format_double(o.rho_db)
              << " tau2=" << format_double(o.tau2) << "\n"
              << "  xi            = " << format_double(pt.xi) << "\n"
              << "  g             = " << format_double(pt.g) << "\n"
              << "  sinr_intended = " << format_double(pt.sinr_intended_deq) << "\n"
              << "  sinr_eve      = " << format_double(pt.sinr_eve_deq) << "\n"
              << "  rate_per_user = " << format_double(pt.rate_per_user) << "\n"
              << "  sum_rate      = " << format_double(cfg.K * pt.rate_per_user)
              << "\n"
              << "  sum_rate_perfect = " << format_double(perfect) << "\n";
  });
  return kExitSuccess;
}

int run_mc(const CommonOpts& o) {
  const SystemConfig cfg =
      SystemConfig::make(o.M, o.K, db_to_linear(o.rho_db), o.tau2);
  const auto [mean, stderr_] =
      ergodic_secrecy_rate_mc(cfg, o.trials, o.seed, o.threads);
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  const LargeSystemPoint pt = secrecy_rate_deq(cfg, xi);
  const double deq_sum = cfg.K * pt.rate_per_user;
  const double perfect = cfg.K * secrecy_rate_deq_perfect(cfg.beta, cfg.rho);

  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "cmd=mc;M=" + std::to_string(o.M) + ";K="
                       + std::to_string(o.K) + ";rho_db=" + format_double(o.rho_db)
                       + ";tau2=" + format_double(o.tau2) + ";trials="
                       + std::to_string(o.trials) + ";seed=" + std::to_string(o.seed);
  SweepRow row;
  row.axis = "rho_db";
  row.axis_value = o.rho_db;
  row.mc_mean = mean;
  row.mc_stderr = stderr_;
  row.ci95_low = mean - kZ95 * stderr_;
  row.ci95_high = mean + kZ95 * stderr_;
  row.deq_value = deq_sum;
  row.deq_perfect = perfect;
  row.extra = "xi=" + format_double(xi);
  res.rows.push_back(row);

  deliver(res, o, [&] {
    std::cout << "mc  M=" << o.M << " K=" << o.K << " rho_db="
              << format_double(o.rho_db) << " tau2=" << format_double(o.tau2)
              << " trials=" << o.trials << " seed=" << o.seed << "\n"
              << "  sum_rate mean   = " << format_double(mean) << "\n"
              << "  std error       = " << format_double(stderr_) << "\n"
              << "  ci95            = [" << format_double(mean - kZ95 * stderr_)
              << ", " << format_double(mean + kZ95 * stderr_) << "]\n"
              << "  deq sum_rate    = " << format_double(deq_sum) << "\n"
              << "  deq perfect     = " << format_double(perfect) << "\n";
  });
  return kExitSuccess;
}

int run_fdd_bits(const CommonOpts& o, double b) {
  const double beta = static_cast<double>(o.K) / static_cast<double>(o.M);
  const FddPlan plan = make_fdd_plan(o.M, beta, o.rho_db, b);
  const char* regime =
      plan.regime == BetaRegime::equal_one ? "equal_one" : "below_one";

  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "cmd=fdd-bits;M=" + std::to_string(o.M) + ";K="
                       + std::to_string(o.K) + ";rho_db=" + format_double(o.rho_db)
                       + ";b=" + format_double(b);
  SweepRow row;
  row.axis = "rho_db";
  row.axis_value = o.rho_db;
  row.deq_value = plan.B;
  row.extra = std::string("regime=") + regime + ";b=" + format_double(plan.b)
              + ";C=" + format_double(plan.C) + ";B=" + format_double(plan.B)
              + ";B_exact=" + format_double(plan.B_exact)
              + ";B_ceil=" + std::to_string(plan.B_ceil);
  res.rows.push_back(row);

  deliver(res, o, [&] {
    std::cout << "fdd-bits  M=" << o.M << " beta=" << format_double(beta)
              << " rho_db=" << format_double(o.rho_db) << " b=" << format_double(b)
              << "\n"
              << "  regime   = " << regime << "\n"
              << "  C        = " << format_double(plan.C) << "\n"
              << "  B        = " << format_double(plan.B) << " bits/user\n"
              << "  B_exact  = " << format_double(plan.B_exact) << " bits/user\n"
              << "  B_ceil   = " << plan.B_ceil << " bits/user\n";
  });
  return kExitSuccess;
}

int run_tdd_train(const CommonOpts& o, int T, double c, const std::string& qref_name) {
  const double beta = static_cast<double>(o.K) / static_cast<double>(o.M);
  const TddConfig cfg = TddConfig::make(T, o.K, beta, db_to_linear(o.rho_db), c);
  const QReference qref = qref_name == "40db" ? QReference::fixed_40db
                                              : QReference::operating_snr;
  const TrainingSolution sol = optimal_training_grid(cfg, qref);

  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "cmd=tdd-train;M=" + std::to_string(o.M) + ";K="
                       + std::to_string(o.K) + ";rho_db=" + format_double(o.rho_db)
                       + ";T=" + std::to_string(T) + ";c=" + format_double(c)
                       + ";qref=" + qref_name;
  SweepRow row;
  row.axis = "rho_db";
  row.axis_value = o.rho_db;
  row.deq_value = sol.rate_at_grid_opt;
  row.extra = "T=" + std::to_string(T) + ";t_opt_cubic=" + format_double(sol.t_opt_cubic)
              + ";t_opt_grid=" + std::to_string(sol.t_opt_grid)
              + ";q=" + format_double(sol.q);
  res.rows.push_back(row);

  deliver(res, o, [&] {
    std::cout << "tdd-train  T=" << T << " K=" << o.K << " beta="
              << format_double(beta) << " rho_db=" << format_double(o.rho_db)
              << " c=" << format_double(c) << " qref=" << qref_name << "\n"
              << "  q            = " << format_double(sol.q) << "\n"
              << "  T_t (cubic)  = " << format_double(sol.t_opt_cubic) << "\n"
              << "  T_t (grid)   = " << sol.t_opt_grid << "\n"
              << "  rate at grid = " << format_double(sol.rate_at_grid_opt) << "\n";
  });
  return kExitSuccess;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& recipe,
                  const std::string& spec_path, bool trials_set, bool seed_set,
                  bool threads_set) {
  SweepResult res;
  if (!recipe.empty()) {
    if (recipe == "fig1")
      res = recipe_fig1(o.trials, o.seed, o.threads);
    else if (recipe == "fig2")
      res = recipe_fig2(o.trials, o.seed, o.threads);
    else if (recipe == "fig3")
      res = recipe_fig3();
    else
      throw ValidationError("unknown recipe '" + recipe + "'");
  } else {
    SweepSpec spec = load_sweep_spec(spec_path);
    if (trials_set) spec.trials = o.trials;
    if (seed_set) spec.master_seed = o.seed;
    if (threads_set) spec.threads = o.threads;
    res = run_sweep(spec);
  }

  deliver(res, o, [&] {
    // No --out: the table itself is the product, so print it as requested.
    if (o.format == "json")
      emit_json(res, std::cout);
    else
      emit_csv(res, std::cout);
    std::cerr << "wall_time_sec=" << res.meta.wall_time_sec << "\n";
  });
  return kExitSuccess;
}

// ---- selftest ----------------------------------------------------------

struct SelfTest {
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      std::cout << "[ok]   " << name << "\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << name;
      if (!detail.empty()) std::cout << " (" << detail << ")";
      std::cout << "\n";
    }
  }

  void close(const std::string& name, double got, double want, double tol) {
    const double err = std::abs(got - want);
    check(name, err <= tol,
          "got " + format_double(got) + ", want " + format_double(want));
  }
};

int run_selftest() {
  SelfTest t;

  {
    const auto out = Philox4x64::block({0, 0, 0, 0}, {0, 0});
    t.check("philox zero-input block",
            out == std::array<std::uint64_t, 4>{0x16554d9eca36314cULL,
                                                0xdb20fe9d672d0fdcULL,
                                                0xd7e772cee186176bULL,
                                                0x7e68b68aec7ba23bULL});
    const std::uint64_t ff = ~0ULL;
    const auto out2 = Philox4x64::block({ff, ff, ff, ff}, {ff, ff});
    t.check("philox all-ones block",
            out2 == std::array<std::uint64_t, 4>{0x87b092c3013fe90bULL,
                                                 0x438c3c67be8d0224ULL,
                                                 0x9cc7d7c69cd777b6ULL,
                                                 0xa09caebf594f0ba0ULL});
  }
  {
    const auto z = box_muller_pair(0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL);
    t.close("box-muller real part", z.real(), 0.15853383451844166, 1e-15);
    t.close("box-muller imag part", z.imag(), 2.9828792826170734, 1e-14);
  }
  t.close("optimal regularizer (beta=1, rho=10)", optimal_regularizer(1.0, 10.0),
          0.027346489932440837, 1e-15);
  {
    const double beta = 0.7, xi = 0.3;
    const double g = g_function(beta, xi);
    t.close("g fixed point xi*g = 1 - beta*g/(1+g)", xi * g,
            1.0 - beta * g / (1.0 + g), 1e-12);
  }
  {
    const SystemConfig cfg = SystemConfig::make(10, 10, 100.0, 0.01);
    const LargeSystemPoint pt =
        secrecy_rate_deq(cfg, optimal_regularizer(cfg.beta, cfg.rho));
    t.close("deq rate per user (beta=1, rho=100, tau2=0.01)", pt.rate_per_user,
            1.2835573244477778, 1e-12);
  }
  {
    const SystemConfig cfg = SystemConfig::make(8, 8, 100.0, 0.01);
    const ChannelPair pair = sample_csit_pair(cfg, RngSpec{1, 0});
    const Precoder prec =
        build_rci(pair.Hhat, optimal_regularizer(cfg.beta, cfg.rho));
    t.close("precoder power normalization", prec.W.squaredNorm(), 1.0, 1e-10);
  }
  {
    const CubicRoots r = solve_cubic_real(1.0, -6.0, 11.0, -6.0);
    const bool ok = r.count == 3 && std::abs(r.roots[0] - 1.0) < 1e-12
                    && std::abs(r.roots[1] - 2.0) < 1e-12
                    && std::abs(r.roots[2] - 3.0) < 1e-12;
    t.check("cubic roots of (x-1)(x-2)(x-3)", ok);
  }
  {
    SweepResult res;
    res.meta.spec_echo = "selftest, with a comma";
    res.meta.version = version_string();
    SweepRow row;
    row.axis = "rho_db";
    row.axis_value = 20.0;
    row.deq_value = 1.2835573244477778;
    row.extra = "k=v";
    res.rows.push_back(row);
    std::stringstream ss;
    emit_csv(res, ss);
    const SweepResult back = parse_csv(ss);
    const bool ok = back.rows.size() == 1
                    && back.meta.spec_echo == res.meta.spec_echo
                    && format_double(back.rows[0].deq_value)
                           == format_double(res.rows[0].deq_value)
                    && std::isnan(back.rows[0].mc_mean)
                    && back.rows[0].extra == "k=v";
    t.check("csv round trip", ok);
  }

  if (t.failures == 0) {
    std::cout << "selftest: all checks passed\n";
    return kExitSuccess;
  }
  std::cout << "selftest: " << t.failures << " check(s) failed\n";
  return kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rcilab: RCI precoding secrecy-rate toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  int exit_code = kExitSuccess;

  // deq
  auto* deq = app.add_subcommand("deq", "Closed-form large-system operating point");
  add_system_flags(deq, o);
  add_out_flags(deq, o);
  double xi_override = 0.0;
  auto* xi_opt = deq->add_option("--xi", xi_override,
                                 "Regularizer override (default: optimal)");
  deq->callback([&] { exit_code = run_deq(o, xi_override, xi_opt->count() > 0); });

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo ergodic secrecy sum-rate");
  add_system_flags(mc, o);
  add_mc_flags(mc, o);
  add_out_flags(mc, o);
  mc->callback([&] { exit_code = run_mc(o); });

  // fdd-bits
  auto* fdd = app.add_subcommand("fdd-bits", "Feedback-bit dimensioning");
  add_system_flags(fdd, o);
  add_out_flags(fdd, o);
  double b_target = 2.0;
  fdd->add_option("--b", b_target, "Target rate-loss factor (gap = log2 b)")
      ->capture_default_str();
  fdd->callback([&] { exit_code = run_fdd_bits(o, b_target); });

  // tdd-train
  auto* tdd = app.add_subcommand("tdd-train", "Training-length optimization");
  add_system_flags(tdd, o);
  add_out_flags(tdd, o);
  int T = 100;
  double c_ratio = 10.0;
  std::string qref = "operating";
  tdd->add_option("--T", T, "Coherence interval in symbols")->capture_default_str();
  tdd->add_option("--c", c_ratio, "Downlink/uplink SNR ratio rho/rho_ul")
      ->capture_default_str();
  tdd->add_option("--qref", qref, "SNR used for the cubic's q constant")
      ->check(CLI::IsMember({"operating", "40db"}))
      ->capture_default_str();
  tdd->callback([&] { exit_code = run_tdd_train(o, T, c_ratio, qref); });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "One-axis sweeps and figure recipes");
  add_mc_flags(sweep, o);
  add_out_flags(sweep, o);
  std::string recipe, spec_path;
  auto* recipe_opt = sweep->add_option("--recipe", recipe, "fig1, fig2 or fig3")
                         ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  auto* spec_opt = sweep->add_option("--spec", spec_path, "Sweep spec (INI file)");
  recipe_opt->excludes(spec_opt);
  spec_opt->excludes(recipe_opt);
  auto* sweep_trials = sweep->get_option("--trials");
  auto* sweep_seed = sweep->get_option("--seed");
  auto* sweep_threads = sweep->get_option("--threads");
  sweep->callback([&] {
    if (recipe.empty() && spec_path.empty())
      throw ValidationError("sweep needs --recipe or --spec");
    exit_code = run_sweep_cmd(o, recipe, spec_path, sweep_trials->count() > 0,
                              sweep_seed->count() > 0, sweep_threads->count() > 0);
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Internal consistency battery");
  selftest->callback([&] { exit_code = run_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitValidation;
  } catch (const rcilab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const rcilab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const rcilab::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return exit_code;
}
