// SPDX-License-Identifier: Apache-2.0
#include "rcilab/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rcilab/asymptotics.hpp"
#include "rcilab/csv.hpp"
#include "rcilab/errors.hpp"
#include "rcilab/fdd.hpp"
#include "rcilab/precoder.hpp"
#include "rcilab/stats.hpp"

namespace rcilab {

namespace {

int iround(double v) { return static_cast<int>(std::nearbyint(v)); }

bool is_integral(double v) { return std::abs(v - std::nearbyint(v)) <= 1e-9; }

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == '\n' || ch == '\r') ch = ' ';
    if (ch == ';') ch = ':';
  }
  return s;
}

void append_note(std::string& extra, const std::string& key, const std::string& value) {
  if (!extra.empty()) extra += ';';
  extra += key;
  extra += '=';
  extra += value;
}

void append_note(std::string& extra, const std::string& key, double value) {
  append_note(extra, key, format_double(value));
}

struct TrialOut {
  double rate = 0.0;
  double sinr_int = 0.0;
  double sinr_eve = 0.0;
};

// Static-chunk parallel map over trial indices. Results land in slot [trial],
// so any later in-order reduction is independent of the thread count. The
// first worker exception (by worker index) is rethrown after join.
template <class Fn>
std::vector<TrialOut> run_trials(int trials, int threads, const Fn& fn) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  int n = threads;
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (n > trials) n = trials;

  std::vector<TrialOut> out(static_cast<std::size_t>(trials));
  if (n == 1) {
    for (int t = 0; t < trials; ++t) out[static_cast<std::size_t>(t)] = fn(t);
    return out;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  const int chunk = trials / n;
  const int rem = trials % n;
  int begin = 0;
  for (int w = 0; w < n; ++w) {
    const int len = chunk + (w < rem ? 1 : 0);
    const int b = begin;
    const int e = begin + len;
    begin = e;
    pool.emplace_back([&out, &errors, &fn, w, b, e] {
      try {
        for (int t = b; t < e; ++t) out[static_cast<std::size_t>(t)] = fn(t);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& ep : errors)
    if (ep) std::rethrow_exception(ep);
  return out;
}

struct McSummary {
  MeanStd rate;
  double sinr_int_mean = 0.0;
  double sinr_eve_mean = 0.0;
};

McSummary reduce_trials(const std::vector<TrialOut>& trials) {
  std::vector<double> rates(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) rates[i] = trials[i].rate;
  McSummary s;
  s.rate = summarize(rates);
  NeumaierSum si, se;
  for (const TrialOut& t : trials) {
    si.add(t.sinr_int);
    se.add(t.sinr_eve);
  }
  const auto n = static_cast<double>(trials.size());
  s.sinr_int_mean = si.value() / n;
  s.sinr_eve_mean = se.value() / n;
  return s;
}

McSummary mc_summary(const SystemConfig& cfg, int trials, std::uint64_t seed,
                     int threads) {
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  const auto body = [&cfg, xi, seed](int trial) -> TrialOut {
    const RngSpec rng{seed, static_cast<std::uint64_t>(trial)};
    const ChannelPair pair = sample_csit_pair(cfg, rng);
    const Precoder prec = build_rci(pair.Hhat, xi);
    const RatePoint rp = secrecy_sum_rate(pair.H, prec, cfg.rho);
    return {rp.secrecy_sum_rate, rp.sinr_intended.mean(), rp.sinr_eve.mean()};
  };
  return reduce_trials(run_trials(trials, threads, body));
}

// End-to-end RVQ Monte Carlo: the transmitter sees each user's true channel
// magnitude but only the quantized direction. Codebooks are redrawn per
// (trial, user) on stream_id = trial * K + k.
McSummary rvq_mc(const SystemConfig& cfg, int b_bits, int trials,
                 std::uint64_t seed, int threads) {
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  const auto body = [&cfg, b_bits, xi, seed](int trial) -> TrialOut {
    const Eigen::MatrixXcd H =
        sample_channel(cfg, RngSpec{seed, static_cast<std::uint64_t>(trial)});
    Eigen::MatrixXcd Hhat(cfg.K, cfg.M);
    for (int k = 0; k < cfg.K; ++k) {
      const Eigen::VectorXcd h = H.row(k).adjoint();
      const std::uint64_t stream =
          static_cast<std::uint64_t>(trial) * static_cast<std::uint64_t>(cfg.K)
          + static_cast<std::uint64_t>(k);
      const RvqCodebook cb =
          RvqCodebook::generate(cfg.M, b_bits, RngSpec{seed, stream});
      const auto [idx, sin2] = rvq_quantize(h, cb);
      (void)sin2;
      Hhat.row(k) = h.norm() * cb.vectors.col(idx).adjoint();
    }
    const Precoder prec = build_rci(Hhat, xi);
    const RatePoint rp = secrecy_sum_rate(H, prec, cfg.rho);
    return {rp.secrecy_sum_rate, rp.sinr_intended.mean(), rp.sinr_eve.mean()};
  };
  return reduce_trials(run_trials(trials, threads, body));
}

double policy_tau2(const SweepSpec& spec, double rho, double beta) {
  if (!spec.fdd_b) return spec.fixed.tau2;
  const double C = scaling_constant(classify_beta_regime(beta), *spec.fdd_b);
  const double tau2 = C / rho;
  if (tau2 >= 1.0)
    throw ValidationError("tau2 = C/rho = " + format_double(tau2)
                          + " >= 1 at this operating point");
  return tau2;
}

// Fills everything but axis/axis_value; throws on any per-point failure.
void fill_row(const SweepSpec& spec, double v, SweepRow& row) {
  SystemConfig cfg = spec.fixed;
  double tau2_eff = spec.fixed.tau2;
  double prelog = 1.0;
  int b_bits = -1;
  std::string notes;

  switch (spec.axis) {
    case SweepAxis::M: {
      const int Mi = iround(v);
      const int Ki = iround(spec.fixed.beta * Mi);
      tau2_eff = policy_tau2(spec, spec.fixed.rho,
                             static_cast<double>(Ki) / static_cast<double>(Mi));
      cfg = SystemConfig::make(Mi, Ki, spec.fixed.rho, tau2_eff);
      append_note(notes, "K", std::to_string(Ki));
      if (spec.fdd_b) append_note(notes, "tau2_eff", tau2_eff);
      break;
    }
    case SweepAxis::rho_db: {
      const double rho = std::pow(10.0, v / 10.0);
      tau2_eff = policy_tau2(spec, rho, spec.fixed.beta);
      cfg = SystemConfig::make(spec.fixed.M, spec.fixed.K, rho, tau2_eff);
      if (spec.fdd_b) append_note(notes, "tau2_eff", tau2_eff);
      break;
    }
    case SweepAxis::tau: {
      tau2_eff = v * v;
      cfg = SystemConfig::make(spec.fixed.M, spec.fixed.K, spec.fixed.rho, tau2_eff);
      break;
    }
    case SweepAxis::T_t: {
      const TddConfig& tdd = *spec.tdd;
      tau2_eff = tdd_csit_error(v, tdd.rho_ul);
      prelog = (static_cast<double>(tdd.T) - v) / static_cast<double>(tdd.T);
      cfg = SystemConfig::make(spec.fixed.M, spec.fixed.K, spec.fixed.rho, tau2_eff);
      append_note(notes, "prelog", prelog);
      append_note(notes, "tau2_eff", tau2_eff);
      break;
    }
    case SweepAxis::B_bits: {
      b_bits = iround(v);
      tau2_eff = std::exp2(-static_cast<double>(b_bits)
                           / static_cast<double>(cfg.M - 1));
      append_note(notes, "tau2_eff", tau2_eff);
      break;
    }
  }

  const double xi = optimal_regularizer(cfg.beta, cfg.rho);

  if (spec.outputs.count(SweepOutput::deq_rate)) {
    if (spec.axis == SweepAxis::T_t) {
      row.deq_value = tdd_secrecy_rate(*spec.tdd, v);
    } else {
      const LargeSystemPoint pt =
          secrecy_rate_deq_point(cfg.beta, cfg.rho, tau2_eff, xi);
      row.deq_value = prelog * cfg.K * pt.rate_per_user;
    }
  }
  if (spec.outputs.count(SweepOutput::deq_perfect))
    row.deq_perfect = prelog * cfg.K * secrecy_rate_deq_perfect(cfg.beta, cfg.rho);
  if (spec.outputs.count(SweepOutput::gap))
    append_note(notes, "gap", rate_gap(cfg.beta, cfg.rho, tau2_eff));
  if (spec.outputs.count(SweepOutput::sinr_means)) {
    const LargeSystemPoint pt =
        secrecy_rate_deq_point(cfg.beta, cfg.rho, tau2_eff, xi);
    append_note(notes, "sinr_int_deq", pt.sinr_intended_deq);
    append_note(notes, "sinr_eve_deq", pt.sinr_eve_deq);
  }
  if (spec.outputs.count(SweepOutput::mc_rate)) {
    const McSummary mc =
        b_bits >= 0
            ? rvq_mc(cfg, b_bits, spec.trials, spec.master_seed, spec.threads)
            : mc_summary(cfg, spec.trials, spec.master_seed, spec.threads);
    row.mc_mean = prelog * mc.rate.mean;
    row.mc_stderr = prelog * mc.rate.std_error;
    row.ci95_low = prelog * mc.rate.ci95_low;
    row.ci95_high = prelog * mc.rate.ci95_high;
    if (spec.outputs.count(SweepOutput::sinr_means)) {
      append_note(notes, "sinr_int_mc", mc.sinr_int_mean);
      append_note(notes, "sinr_eve_mc", mc.sinr_eve_mean);
    }
  }

  row.extra = notes;
}

std::string join_values(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += '|';
    s += format_double(values[i]);
  }
  return s;
}

std::string spec_echo(const SweepSpec& spec) {
  // threads is deliberately absent: output bytes must not depend on it.
  std::string s;
  append_note(s, "axis", to_string(spec.axis));
  append_note(s, "values", join_values(spec.values));
  append_note(s, "trials", std::to_string(spec.trials));
  append_note(s, "seed", std::to_string(spec.master_seed));
  std::string outs;
  for (SweepOutput o : spec.outputs) {
    if (!outs.empty()) outs += '|';
    outs += to_string(o);
  }
  append_note(s, "outputs", outs);
  append_note(s, "M", std::to_string(spec.fixed.M));
  append_note(s, "K", std::to_string(spec.fixed.K));
  append_note(s, "rho_db", 10.0 * std::log10(spec.fixed.rho));
  append_note(s, "tau2", spec.fixed.tau2);
  if (spec.tdd) {
    append_note(s, "tdd_T", std::to_string(spec.tdd->T));
    append_note(s, "tdd_c", spec.tdd->c);
  }
  if (spec.fdd_b) append_note(s, "fdd_b", *spec.fdd_b);
  return s;
}

// Scales every rate-like cell; used by the per-antenna / per-user recipes.
void scale_rates(SweepRow& row, double factor) {
  row.mc_mean *= factor;
  row.mc_stderr *= factor;
  row.ci95_low *= factor;
  row.ci95_high *= factor;
  row.deq_value *= factor;
  row.deq_perfect *= factor;
}

}  // namespace

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::M: return "M";
    case SweepAxis::rho_db: return "rho_db";
    case SweepAxis::T_t: return "T_t";
    case SweepAxis::B_bits: return "B_bits";
    case SweepAxis::tau: return "tau";
  }
  return "?";
}

const char* to_string(SweepOutput output) {
  switch (output) {
    case SweepOutput::mc_rate: return "mc_rate";
    case SweepOutput::deq_rate: return "deq_rate";
    case SweepOutput::deq_perfect: return "deq_perfect";
    case SweepOutput::gap: return "gap";
    case SweepOutput::sinr_means: return "sinr_means";
  }
  return "?";
}

SweepRow::SweepRow()
    : mc_mean(std::nan("")),
      mc_stderr(std::nan("")),
      ci95_low(std::nan("")),
      ci95_high(std::nan("")),
      deq_value(std::nan("")),
      deq_perfect(std::nan("")) {}

void SweepSpec::validate() const {
  if (fixed.M < 1 || fixed.K < 1)
    throw ValidationError("sweep: fixed system config is not initialized");
  if (values.empty()) throw ValidationError("sweep: values must be nonempty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i - 1] < values[i]))
      throw ValidationError("sweep: values must be strictly increasing");
  if (trials < 1) throw ValidationError("sweep: trials must be >= 1");
  if (threads < 0) throw ValidationError("sweep: threads must be >= 0");
  if (outputs.empty()) throw ValidationError("sweep: outputs must be nonempty");

  if (axis == SweepAxis::T_t && !tdd)
    throw ValidationError("sweep: axis T_t requires a [tdd] block");
  if (tdd && axis != SweepAxis::T_t)
    throw ValidationError("sweep: [tdd] block only applies to axis T_t");
  if (fdd_b && axis != SweepAxis::M && axis != SweepAxis::rho_db)
    throw ValidationError("sweep: [fdd] b only applies to axis M or rho_db");
  if (fdd_b && *fdd_b < 1.0) throw ValidationError("sweep: fdd b must be >= 1");

  switch (axis) {
    case SweepAxis::M:
      for (double v : values) {
        if (!is_integral(v) || v < 1.0)
          throw ValidationError("sweep: axis M values must be integers >= 1");
        if (!is_integral(fixed.beta * v) || iround(fixed.beta * v) < 1)
          throw ValidationError(
              "sweep: beta * M must be a positive integer for every M value");
      }
      break;
    case SweepAxis::rho_db:
      break;
    case SweepAxis::tau:
      for (double v : values)
        if (v < 0.0 || v > 1.0)
          throw ValidationError("sweep: axis tau values must lie in [0, 1]");
      break;
    case SweepAxis::T_t:
      for (double v : values)
        if (v <= 0.0 || v > static_cast<double>(tdd->T))
          throw ValidationError("sweep: T_t values must lie in (0, T]");
      break;
    case SweepAxis::B_bits:
      if (fixed.M < 2)
        throw ValidationError("sweep: axis B_bits requires M >= 2");
      for (double v : values)
        if (!is_integral(v) || v < 0.0 || v > 20.0)
          throw ValidationError(
              "sweep: B_bits values must be integers in [0, 20]");
      break;
  }
}

std::pair<double, double> ergodic_secrecy_rate_mc(const SystemConfig& cfg,
                                                  int trials,
                                                  std::uint64_t master_seed,
                                                  int threads) {
  const McSummary s = mc_summary(cfg, trials, master_seed, threads);
  return {s.rate.mean, s.rate.std_error};
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();

  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = spec_echo(spec);
  res.rows.reserve(spec.values.size());

  for (double v : spec.values) {
    SweepRow row;
    row.axis = to_string(spec.axis);
    row.axis_value = v;
    try {
      fill_row(spec, v, row);
    } catch (const std::exception& e) {
      SweepRow blank;
      blank.axis = row.axis;
      blank.axis_value = v;
      blank.extra = "error=" + sanitize(e.what());
      row = blank;
    }
    res.rows.push_back(std::move(row));
  }

  res.meta.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SweepResult recipe_fig1(int trials, std::uint64_t master_seed, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "recipe=fig1;rho_db=20;tau=0.1;M=8|12|16|20|24|28|32;"
                       "beta=0.5|1;norm=per_antenna;trials="
                       + std::to_string(trials) + ";seed="
                       + std::to_string(master_seed);

  for (double beta : {0.5, 1.0}) {
    SweepSpec spec;
    spec.axis = SweepAxis::M;
    spec.values = {8, 12, 16, 20, 24, 28, 32};
    spec.fixed = SystemConfig::make(8, iround(8 * beta), 100.0, 0.01);
    spec.trials = trials;
    spec.master_seed = master_seed;
    spec.threads = threads;
    spec.outputs = {SweepOutput::mc_rate, SweepOutput::deq_rate};

    SweepResult part = run_sweep(spec);
    for (SweepRow& row : part.rows) {
      scale_rates(row, 1.0 / row.axis_value);
      append_note(row.extra, "beta", beta);
      append_note(row.extra, "norm", "per_antenna");
      res.rows.push_back(std::move(row));
    }
  }

  res.meta.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SweepResult recipe_fig2(int trials, std::uint64_t master_seed, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "recipe=fig2;M=10;K=10;b=2;tau2=C/rho;"
                       "rho_db=0|5|10|15|20|25|30|35|40;norm=per_user;trials="
                       + std::to_string(trials) + ";seed="
                       + std::to_string(master_seed);

  SweepSpec quant;
  quant.axis = SweepAxis::rho_db;
  quant.values = {0, 5, 10, 15, 20, 25, 30, 35, 40};
  quant.fixed = SystemConfig::make(10, 10, 100.0, 0.0);
  quant.fdd_b = 2.0;
  quant.trials = trials;
  quant.master_seed = master_seed;
  quant.threads = threads;
  quant.outputs = {SweepOutput::mc_rate, SweepOutput::deq_rate,
                   SweepOutput::deq_perfect, SweepOutput::gap};

  SweepSpec perf = quant;
  perf.fdd_b.reset();
  perf.outputs = {SweepOutput::mc_rate};

  SweepResult rq = run_sweep(quant);
  const SweepResult rp = run_sweep(perf);

  const double inv_k = 1.0 / 10.0;
  for (std::size_t i = 0; i < rq.rows.size(); ++i) {
    SweepRow& row = rq.rows[i];
    scale_rates(row, inv_k);
    append_note(row.extra, "mc_perfect", rp.rows[i].mc_mean * inv_k);
    append_note(row.extra, "mc_perfect_stderr", rp.rows[i].mc_stderr * inv_k);
    append_note(row.extra, "norm", "per_user");
    res.rows.push_back(std::move(row));
  }

  res.meta.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SweepResult recipe_fig3() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.meta.version = version_string();
  res.meta.spec_echo = "recipe=fig3;M=10;K=10;c=10;T=100|200|400;"
                       "rho_db=20|25|30|35|40;deq_value=T_t_opt/T";

  for (int T : {100, 200, 400}) {
    for (int rho_db : {20, 25, 30, 35, 40}) {
      SweepRow row;
      row.axis = "rho_db";
      row.axis_value = rho_db;
      try {
        const TddConfig cfg =
            TddConfig::make(T, 10, 1.0, std::pow(10.0, rho_db / 10.0), 10.0);
        const TrainingSolution sol = optimal_training_grid(cfg);
        row.deq_value = static_cast<double>(sol.t_opt_grid) / T;
        append_note(row.extra, "T", std::to_string(T));
        append_note(row.extra, "t_opt_cubic", sol.t_opt_cubic);
        append_note(row.extra, "t_opt_grid", std::to_string(sol.t_opt_grid));
        append_note(row.extra, "rate", sol.rate_at_grid_opt);
        append_note(row.extra, "q", sol.q);
      } catch (const std::exception& e) {
        row.extra.clear();
        append_note(row.extra, "T", std::to_string(T));
        append_note(row.extra, "error", sanitize(e.what()));
      }
      res.rows.push_back(std::move(row));
    }
  }

  res.meta.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

const char* version_string() { return "rcilab 1.0.0"; }

}  // namespace rcilab
