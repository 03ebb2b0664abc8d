// SPDX-License-Identifier: Apache-2.0
//
// Acceptance battery: one [PASS]/[FAIL] line per criterion, nonzero exit if
// any criterion fails. Tolerances are pinned here, next to each check.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcilab/asymptotics.hpp"
#include "rcilab/channel.hpp"
#include "rcilab/fdd.hpp"
#include "rcilab/gaussian.hpp"
#include "rcilab/philox.hpp"
#include "rcilab/precoder.hpp"
#include "rcilab/sweep.hpp"
#include "rcilab/tdd.hpp"

using namespace rcilab;

namespace {

struct Gate {
  int failures = 0;

  void report(int id, const std::string& name, bool pass,
              const std::string& detail, double seconds) {
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL",
                id, name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string temp_path(const char* name) {
  const char* dir = std::getenv("TMPDIR");
  std::string base = dir ? dir : "/tmp";
  if (!base.empty() && base.back() != '/') base += '/';
  return base + "rcilab_acceptance_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

// 1. Monte Carlo converges to the deterministic equivalent as M grows:
//    per-antenna relative error < 12% / 8% / 5% at M = 8 / 16 / 32, strictly
//    decreasing.
void criterion_1(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const double rho = 100.0, tau2 = 0.01;
  const double deq =
      secrecy_rate_deq_point(1.0, rho, tau2, optimal_regularizer(1.0, rho))
          .rate_per_user;  // R_s / M for beta = 1
  const int Ms[] = {8, 16, 32};
  const double caps[] = {0.12, 0.08, 0.05};
  bool pass = true;
  std::string detail = "deq/M=" + fmt(deq);
  double prev = 2.0;
  for (int i = 0; i < 3; ++i) {
    const SystemConfig cfg = SystemConfig::make(Ms[i], Ms[i], rho, tau2);
    const auto [mean, se] = ergodic_secrecy_rate_mc(cfg, 2000, 101, 0);
    (void)se;
    const double rel = std::abs(mean / Ms[i] - deq) / deq;
    if (!(rel < caps[i])) pass = false;
    if (!(rel < prev)) pass = false;  // strictly decreasing in M
    prev = rel;
    detail += "; M=" + std::to_string(Ms[i]) + " relerr=" + fmt(rel)
              + " cap=" + fmt(caps[i]);
  }
  gate.report(1, "deterministic-equivalent convergence", pass, detail,
              seconds_since(t0));
}

// 2. tau2 = 0 of the general closed form reduces to the perfect-CSIT closed
//    form to 1e-12 relative on a 20-point (beta, rho) grid.
void criterion_2(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double beta : {0.25, 0.5, 0.75, 1.0}) {
    for (double rho_db : {0.0, 10.0, 20.0, 30.0, 40.0}) {
      const double rho = std::pow(10.0, rho_db / 10.0);
      const double xi = optimal_regularizer(beta, rho);
      const double general =
          secrecy_rate_deq_point(beta, rho, 0.0, xi).rate_per_user;
      const double perfect = secrecy_rate_deq_perfect(beta, rho);
      const double rel = std::abs(general - perfect)
                         / std::max(std::abs(perfect), 1e-300);
      worst = std::max(worst, rel);
    }
  }
  gate.report(2, "perfect-CSIT reduction", worst < 1e-12,
              "worst rel diff=" + fmt(worst) + " cap=1e-12",
              seconds_since(t0));
}

// 3. g satisfies xi*g + beta*g/(1+g) = 1 to 1e-10 on 1000 random points,
//    beta in (0,2], xi in (0,10].
void criterion_3(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  Philox4x64 eng(RngSpec{303, 0}, RngDomain::channel);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double beta = 2.0 * u64_to_unit_open(eng.next());
    const double xi = 10.0 * u64_to_unit_open(eng.next());
    const double g = g_function(beta, xi);
    worst = std::max(worst, std::abs(xi * g + beta * g / (1.0 + g) - 1.0));
  }
  gate.report(3, "fixed-point identity for g", worst < 1e-10,
              "worst residual=" + fmt(worst) + " cap=1e-10",
              seconds_since(t0));
}

// 4. beta = 1.25 at 40 dB: closed-form per-user rate < 0.05 bits for
//    tau in {0, 0.1, 0.3}, Monte Carlo at M=16 stays < 0.1 bits.
void criterion_4(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const double beta = 1.25, rho = 1.0e4;
  const double xi = optimal_regularizer(beta, rho);
  bool pass = true;
  std::string detail;
  for (double tau : {0.0, 0.1, 0.3}) {
    const double deq =
        secrecy_rate_deq_point(beta, rho, tau * tau, xi).rate_per_user;
    const SystemConfig cfg = SystemConfig::make(16, 20, rho, tau * tau);
    const auto [mean, se] = ergodic_secrecy_rate_mc(cfg, 1000, 104, 0);
    (void)se;
    const double mc = mean / cfg.K;
    if (!(deq < 0.05)) pass = false;
    if (!(mc < 0.1)) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += "tau=" + fmt(tau) + " deq/K=" + fmt(deq) + " mc/K=" + fmt(mc);
  }
  gate.report(4, "overloaded system has zero secrecy rate", pass,
              detail + "; caps 0.05 / 0.1", seconds_since(t0));
}

// 5. M=K=10, b=2, tau2 = C/rho: unclamped closed-form gap within 1 +/- 0.2
//    bits at 30 dB and 1 +/- 0.1 at 40 dB; Monte Carlo gap in [0.7, 1.3]
//    bits at 30 and 35 dB.
void criterion_5(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const double C = scaling_constant(BetaRegime::equal_one, 2.0);
  bool pass = true;
  std::string detail = "C=" + fmt(C);

  const double gap30 = rate_gap(1.0, 1.0e3, C / 1.0e3, GapMode::unclamped);
  const double gap40 = rate_gap(1.0, 1.0e4, C / 1.0e4, GapMode::unclamped);
  if (!(std::abs(gap30 - 1.0) < 0.2)) pass = false;
  if (!(std::abs(gap40 - 1.0) < 0.1)) pass = false;
  detail += "; deq gap30=" + fmt(gap30) + " (cap |d-1|<0.2)"
            + ", gap40=" + fmt(gap40) + " (cap |d-1|<0.1)";

  for (double rho_db : {30.0, 35.0}) {
    const double rho = std::pow(10.0, rho_db / 10.0);
    const SystemConfig quant = SystemConfig::make(10, 10, rho, C / rho);
    const SystemConfig perfect = SystemConfig::make(10, 10, rho, 0.0);
    const auto [mq, sq] = ergodic_secrecy_rate_mc(quant, 2000, 105, 0);
    const auto [mp, sp] = ergodic_secrecy_rate_mc(perfect, 2000, 105, 0);
    (void)sq;
    (void)sp;
    const double gap = (mp - mq) / 10.0;
    if (!(gap >= 0.7 && gap <= 1.3)) pass = false;
    detail += "; mc gap@" + fmt(rho_db) + "dB=" + fmt(gap);
  }
  gate.report(5, "one-bit-per-3dB feedback gap", pass,
              detail + " (mc band [0.7,1.3])", seconds_since(t0));
}

// 6. RVQ distortion: empirical mean sin^2 theta over 1e4 draws sits strictly
//    below 2^{-B/(M-1)} for (M,B) in {(4,8), (4,12), (10,12)}.
void criterion_6(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::array<std::pair<int, int>, 3> combos{{{4, 8}, {4, 12}, {10, 12}}};
  bool pass = true;
  std::string detail;
  for (const auto& [M, B] : combos) {
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      const RngSpec rng{106, static_cast<std::uint64_t>(i)};
      ComplexNormalStream cn(rng, RngDomain::channel, 1.0);
      Eigen::VectorXcd h(M);
      for (int m = 0; m < M; ++m) h(m) = cn.next();
      const RvqCodebook cb = RvqCodebook::generate(M, B, rng);
      acc += rvq_quantize(h, cb).second;
    }
    const double mean = acc / draws;
    const double bound = std::exp2(-static_cast<double>(B) / (M - 1));
    if (!(mean < bound)) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += "M=" + std::to_string(M) + ",B=" + std::to_string(B) + ": "
              + fmt(mean) + " < " + fmt(bound);
  }
  gate.report(6, "RVQ quantization error bound", pass, detail,
              seconds_since(t0));
}

// 7. Feedback-bit law: B(M=10, beta<1, 20 dB, b=2) = 66.25 +/- 0.05
//    pre-rounding, and the 3 dB slope equals M-1 exactly.
void criterion_7(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const double B = feedback_bits(10, BetaRegime::below_one, 20.0, 2.0);
  const double slope = feedback_bits(10, BetaRegime::below_one, 23.0, 2.0)
                       - feedback_bits(10, BetaRegime::below_one, 20.0, 2.0);
  const bool pass = std::abs(B - 66.25) < 0.05 && slope == 9.0;
  gate.report(7, "feedback-bit dimensioning",
              pass,
              "B=" + fmt(B) + " (want 66.25 +/- 0.05); slope=" + fmt(slope)
                  + " (want exactly 9)",
              seconds_since(t0));
}

// 8. Training cubic vs brute force for M=K=10, c=10, T in {100,200,400}:
//    residual < 1e-6 relative, cubic-vs-grid discrepancy < 15% at 40 dB and
//    smaller there than at 20 dB, grid T_t/T decreasing from 20 to 40 dB.
void criterion_8(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int T : {100, 200, 400}) {
    double disc20 = 0.0, disc40 = 0.0;
    double ratio20 = 0.0, ratio40 = 0.0;
    for (double rho_db : {20.0, 30.0, 40.0}) {
      const TddConfig cfg =
          TddConfig::make(T, 10, 1.0, std::pow(10.0, rho_db / 10.0), 10.0);
      const TrainingSolution sol = optimal_training_grid(cfg);

      // (a) residual of the cubic at its returned root, coefficient-scaled.
      const double q = sol.q, c = cfg.c, K = cfg.K, Td = T, r = sol.t_opt_cubic;
      const double a3 = 4.0 * q;
      const double a2 = 4.0 * c * q - 4.0 * K * c;
      const double a1 = 3.0 * c * c * q + 4.0 * K * c * Td - 6.0 * K * c * c;
      const double a0 = 6.0 * K * Td * c * c;
      const double f = ((a3 * r + a2) * r + a1) * r + a0;
      const double scale = std::abs(a3 * r * r * r) + std::abs(a2 * r * r)
                           + std::abs(a1 * r) + std::abs(a0);
      if (!(std::abs(f) < 1e-6 * scale)) pass = false;

      const double disc =
          std::abs(sol.t_opt_cubic - sol.t_opt_grid) / sol.t_opt_grid;
      const double ratio = static_cast<double>(sol.t_opt_grid) / T;
      if (rho_db == 20.0) {
        disc20 = disc;
        ratio20 = ratio;
      } else if (rho_db == 40.0) {
        disc40 = disc;
        ratio40 = ratio;
      }
    }
    if (!(disc40 < 0.15)) pass = false;       // (b) part one
    if (!(disc40 < disc20)) pass = false;     // (b) part two
    if (!(ratio40 < ratio20)) pass = false;   // (c)
    detail += (detail.empty() ? "" : "; ") + std::string("T=")
              + std::to_string(T) + " disc20=" + fmt(disc20) + " disc40="
              + fmt(disc40) + " Tt/T:" + fmt(ratio20) + "->" + fmt(ratio40);
  }
  gate.report(8, "training-length optimization", pass, detail,
              seconds_since(t0));
}

// 9. Seeded fig1 recipe sweeps are byte-identical run to run and across
//    thread counts.
void criterion_9(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string a = temp_path("det_a.csv");
  const std::string b = temp_path("det_b.csv");
  const std::string c = temp_path("det_c.csv");
  const std::string base =
      std::string(RCILAB_CLI_PATH) + " sweep --recipe fig1 --seed 7 --out ";
  bool pass = true;
  for (const auto& [path, extra] :
       std::vector<std::pair<std::string, std::string>>{
           {a, ""}, {b, ""}, {c, " --threads 3"}}) {
    const std::string cmd = base + path + extra + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
      pass = false;
  }
  std::string detail = "three fig1 runs";
  if (pass) {
    const std::string ta = slurp(a), tb = slurp(b), tc = slurp(c);
    const bool rerun_same = !ta.empty() && ta == tb;
    const bool threads_same = ta == tc;
    pass = rerun_same && threads_same;
    detail += rerun_same ? "; rerun identical" : "; rerun DIFFERS";
    detail += threads_same ? "; thread count invariant" : "; threads DIFFER";
  } else {
    detail += "; a run exited nonzero";
  }
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
  gate.report(9, "byte-identical seeded sweeps", pass, detail,
              seconds_since(t0));
}

}  // namespace

int main() {
  Gate gate;
  try {
    criterion_1(gate);
    criterion_2(gate);
    criterion_3(gate);
    criterion_4(gate);
    criterion_5(gate);
    criterion_6(gate);
    criterion_7(gate);
    criterion_8(gate);
    criterion_9(gate);
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance battery aborted: %s\n", e.what());
    return 1;
  }
  std::printf("acceptance: %d/9 criteria passed\n", 9 - gate.failures);
  return gate.failures == 0 ? 0 : 1;
}
