// Acceptance gate: nine numbered checks, one PASS/FAIL line each, exit code 1
// when anything fails. Tolerances and budgets are pinned right here so a
// regression cannot hide behind a config file.

#include <helpercode/helpercode.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lp_oracle.hpp"

using namespace helpercode;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int g_fails = 0;

void report(int id, bool ok, const std::string& detail, double ms) {
  std::printf("[%s] %d: %s (%.0f ms)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), ms);
  if (!ok) ++g_fails;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Pmf random_pmf(std::mt19937_64& gen, int n, double lo = 0.0) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  std::vector<double> m(static_cast<size_t>(n));
  double s = 0.0;
  for (auto& x : m) s += (x = u(gen));
  for (auto& x : m) x /= s;
  return Pmf(std::move(m));
}

JointPmf random_positive_joint(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> u(0.02, 1.0);
  std::vector<std::vector<double>> cells(static_cast<size_t>(n),
                                         std::vector<double>(static_cast<size_t>(n)));
  double total = 0.0;
  for (auto& row : cells)
    for (auto& c : row) total += (c = u(gen));
  for (auto& row : cells)
    for (auto& c : row) c /= total;
  return JointPmf(cells);
}

CharGraph random_graph(std::mt19937_64& gen, int n, double edge_prob) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(gen) < edge_prob) edges.emplace_back(a, b);
  return CharGraph{random_pmf(gen, n, 0.05), std::move(edges)};
}

// 1. On the bundled family at delta = 0.01, the helper scheme should undercut
//    the fully distributed baseline by 42 +- 2 percent, within a second.
void criterion1() {
  const auto t0 = Clock::now();
  const SweepRow row = evaluate_example1_row(0.01);
  const double gain = row.gainVsFullyDistributed;
  const double ms = ms_since(t0);
  const bool ok = gain >= 0.40 && gain <= 0.44 && ms < 1000.0;
  report(1, ok, "sum-rate gain over fully distributed at delta=0.01 in [0.40, 0.44], got " + num(gain), ms);
}

// 2. Over delta = 0.01..0.49 the scheme never exceeds the outcome-entropy
//    floor by more than 27 percent, within two seconds.
void criterion2() {
  const auto t0 = Clock::now();
  double worst = -1.0, at = 0.0;
  for (int k = 1; k <= 49; ++k) {
    const double delta = k / 100.0;
    const double loss = evaluate_example1_row(delta).lossVsHf;
    if (loss > worst) {
      worst = loss;
      at = delta;
    }
  }
  const double ms = ms_since(t0);
  const bool ok = worst <= 0.27 && ms < 2000.0;
  report(2, ok, "max excess over the outcome entropy <= 0.27, got " + num(worst) + " at delta=" + num(at), ms);
}

// 3. The saturating split of the family is the two-component mixture with
//    weights (1 - 4d/3, 4d/3), and the sum rate at delta = 0.25 is exactly 2.
void criterion3() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double delta : {0.1, 0.25, 0.4}) {
    const auto inst = example1_instance(delta);
    const auto d = saturating_matching_decompose(inst.pmf);
    if (d.components.size() != 2) ok = false;
    const auto w = d.weights();
    if (std::abs(w.at(0) - (1.0 - 4.0 * delta / 3.0)) > 1e-12) ok = false;
    if (std::abs(w.at(1) - 4.0 * delta / 3.0) > 1e-12) ok = false;
    if (!d.components[0].matching || d.components[1].matching) ok = false;
  }
  const auto inst = example1_instance(0.25);
  const auto rep =
      helper_scheme_rates(saturating_matching_decompose(inst.pmf), inst.pmf, inst.f);
  if (std::abs(rep.sumRate - 2.0) > 1e-6) ok = false;
  report(3, ok,
         "two-component weights (1-4d/3, 4d/3) within 1e-12 and sum rate " + num(rep.sumRate) +
             " at delta=0.25 within 1e-6 of 2",
         ms_since(t0));
}

// 4. The residual component's graphs are colorable with two colors at
//    entropy h(1/4) on both sources.
void criterion4() {
  const auto t0 = Clock::now();
  const double target = 0.8112781244591328;
  const auto inst = example1_km1_instance();
  bool ok = true;
  double got = 0.0;
  for (Axis axis : {Axis::X1, Axis::X2}) {
    const auto r = min_entropy_coloring(build_char_graph(inst.pmf, inst.f, axis));
    if (r.numColors != 2 || std::abs(r.bits - target) > 1e-9) ok = false;
    got = r.bits;
  }
  report(4, ok, "residual component colors in 2 classes at " + num(got) + " bits (target h(1/4))",
         ms_since(t0));
}

// 5. Scaling + permutation splitting round-trips random strictly positive
//    matrices: convergence, reconstruction to 1e-8, component bound.
void criterion5() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(2025);
  bool ok = true;
  double worstResidual = 0.0, worstBack = 0.0;
  size_t worstCount = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial < 50 ? 4 : 6;
    const JointPmf p = random_positive_joint(gen, n);
    const ScalingResult s = sinkhorn_scale(p);
    if (!s.converged) ok = false;
    worstResidual = std::max(worstResidual, s.residual);
    if (s.residual > 1e-10) ok = false;

    const MixtureDecomposition d = sinkhorn_birkhoff_decompose(p);
    if (!d.all_matched()) ok = false;
    worstCount = std::max(worstCount, d.components.size());
    if (d.components.size() > static_cast<size_t>((n - 1) * (n - 1) + 1)) ok = false;
    const JointPmf back = reconstruct(d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worstBack = std::max(worstBack, std::abs(back.at(i, j) - p.at(i, j)));
    if (worstBack > 1e-8) ok = false;
  }
  report(5, ok,
         "100 positive matrices: residual <= 1e-10 (worst " + num(worstResidual) +
             "), reconstruction <= 1e-8 (worst " + num(worstBack) + "), components <= (n-1)^2+1 (worst " +
             num(static_cast<double>(worstCount)) + ")",
         ms_since(t0));
}

// 6. The coupling construction has exact marginals, moves exactly the total
//    variation, and matches an independent LP optimum for the mismatch.
void criterion6() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(31337);
  bool ok = true;
  double worstMarg = 0.0, worstOff = 0.0, worstLp = 0.0;

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 5);
    const Pmf p1 = random_pmf(gen, n), p2 = random_pmf(gen, n);
    const MaximalCoupling c = build_maximal_coupling(p1, p2);
    const JointPmf j = coupling_joint(c);
    const auto [m1, m2] = marginals(j);
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      worstMarg = std::max({worstMarg, std::abs(m1.at(i) - p1.at(i)), std::abs(m2.at(i) - p2.at(i))});
      for (int k = 0; k < n; ++k)
        if (i != k) off += j.at(i, k);
    }
    worstOff = std::max({worstOff, std::abs(off - c.delta), std::abs(off - tv_distance(p1, p2))});
  }
  if (worstMarg > 1e-12 || worstOff > 1e-12) ok = false;

  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    const Pmf p1 = random_pmf(gen, n), p2 = random_pmf(gen, n);
    const MaximalCoupling c = build_maximal_coupling(p1, p2);
    const JointPmf j = coupling_joint(c);
    double off = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) off += j.at(a, b);

    // x >= 0 with both marginals fixed; objective counts off-diagonal mass
    std::vector<std::vector<double>> A(static_cast<size_t>(2 * n),
                                       std::vector<double>(static_cast<size_t>(n * n), 0.0));
    std::vector<double> b(static_cast<size_t>(2 * n), 0.0), cost(static_cast<size_t>(n * n), 0.0);
    for (int a = 0; a < n; ++a) {
      b[static_cast<size_t>(a)] = p1.at(a);
      b[static_cast<size_t>(n + a)] = p2.at(a);
      for (int k = 0; k < n; ++k) {
        A[static_cast<size_t>(a)][static_cast<size_t>(a * n + k)] = 1.0;
        A[static_cast<size_t>(n + a)][static_cast<size_t>(k * n + a)] = 1.0;
        if (a != k) cost[static_cast<size_t>(a * n + k)] = 1.0;
      }
    }
    const lp::Result r = lp::solve(A, b, cost);
    if (!r.feasible || !r.bounded) ok = false;
    worstLp = std::max(worstLp, std::abs(r.value - off));
  }
  if (worstLp > 1e-8) ok = false;

  report(6, ok,
         "marginal error " + num(worstMarg) + " and mismatch error " + num(worstOff) +
             " within 1e-12; LP optimality gap " + num(worstLp) + " within 1e-8",
         ms_since(t0));
}

// 7. The coupled sum rate collapses to H(component) + E[H(T)] at zero
//    mismatch and always equals its defining expression term by term.
void criterion7() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(777);
  bool ok = true;
  double worstZero = 0.0, worstFormula = 0.0;

  for (int trial = 0; trial < 20; ++trial) {
    const int L = 1 + static_cast<int>(gen() % 4);
    const int n = 2 + static_cast<int>(gen() % 4);
    const Pmf w = random_pmf(gen, L, 0.05);
    std::vector<MaximalCoupling> cs;
    double expected = entropy(w);
    for (int l = 0; l < L; ++l) {
      const Pmf p = random_pmf(gen, n);
      cs.push_back(build_maximal_coupling(p, p));
      expected += w.at(l) * entropy(p);
    }
    worstZero = std::max(worstZero, std::abs(coupling_scheme_sum_rate(w, cs) - expected));
  }
  if (worstZero > 1e-12) ok = false;

  for (int trial = 0; trial < 50; ++trial) {
    const int L = 1 + static_cast<int>(gen() % 4);
    const int n = 2 + static_cast<int>(gen() % 4);
    const Pmf w = random_pmf(gen, L, 0.05);
    std::vector<MaximalCoupling> cs;
    double expected = entropy(w);
    for (int l = 0; l < L; ++l) {
      const Pmf p1 = random_pmf(gen, n), p2 = random_pmf(gen, n);
      cs.push_back(build_maximal_coupling(p1, p2));

      // written out independently from the marginals alone
      double tv = 0.0;
      std::vector<double> lo(static_cast<size_t>(n)), up1(static_cast<size_t>(n)), up2(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) {
        lo[static_cast<size_t>(k)] = std::min(p1.at(k), p2.at(k));
        up1[static_cast<size_t>(k)] = std::max(p1.at(k) - p2.at(k), 0.0);
        up2[static_cast<size_t>(k)] = std::max(p2.at(k) - p1.at(k), 0.0);
        tv += up1[static_cast<size_t>(k)];
      }
      double part = binary_entropy(tv);
      if (tv < 1.0) {
        std::vector<double> t = lo;
        for (double& x : t) x /= (1.0 - tv);
        part += (1.0 - tv) * entropy(t);
      }
      if (tv > 0.0) {
        for (double& x : up1) x /= tv;
        for (double& x : up2) x /= tv;
        part += tv * (entropy(up1) + entropy(up2));
      }
      expected += w.at(l) * part;
    }
    worstFormula = std::max(worstFormula, std::abs(coupling_scheme_sum_rate(w, cs) - expected));
  }
  if (worstFormula > 1e-10) ok = false;

  report(7, ok,
         "zero-mismatch collapse off by " + num(worstZero) + " (<= 1e-12), general form off by " +
             num(worstFormula) + " (<= 1e-10)",
         ms_since(t0));
}

// 8. Graph entropy: full source entropy on complete graphs, zero on empty
//    ones, log2(5/2) on the uniform pentagon, and never above the best
//    coloring.
void criterion8() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(808);
  bool ok = true;
  double worstComplete = 0.0;

  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    const CharGraph g{random_pmf(gen, n, 0.05), std::move(edges)};
    worstComplete = std::max(worstComplete, std::abs(korner_entropy(g) - entropy(g.vertexPmf)));
  }
  if (worstComplete > 1e-6) ok = false;

  const CharGraph empty{random_pmf(gen, 5, 0.05), {}};
  if (std::abs(korner_entropy(empty)) > 1e-12) ok = false;

  const CharGraph c5{Pmf({0.2, 0.2, 0.2, 0.2, 0.2}), {{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}}};
  const double pentagon = korner_entropy(c5);
  if (std::abs(pentagon - 1.3219280948873623) > 1e-4) ok = false;

  double worstGap = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    const CharGraph g = random_graph(gen, n, 0.35);
    const double k = korner_entropy(g);
    if (k < -1e-9) ok = false;
    worstGap = std::max(worstGap, k - min_entropy_coloring(g).bits);
  }
  if (worstGap > 1e-6) ok = false;

  report(8, ok,
         "complete gap " + num(worstComplete) + ", pentagon " + num(pentagon) +
             " (target 1.32193), coloring exceeded by " + num(worstGap),
         ms_since(t0));
}

// 9. The simulator reproduces itself bit for bit under a fixed seed, never
//    miscomputes the outcome, and lands in [H, H+1) on every active link,
//    five seconds per configuration.
void criterion9() {
  const auto t0all = Clock::now();
  bool ok = true;
  double worstMs = 0.0;
  std::uint64_t totalErrors = 0;

  for (double delta : {0.1, 0.3}) {
    const auto inst = example1_instance(delta);
    const auto d = saturating_matching_decompose(inst.pmf);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto t0 = Clock::now();
      SimConfig cfg;
      cfg.numSamples = 10000;
      cfg.seed = seed;
      const SimResult a = run_protocol(d, inst.f, cfg);
      const SimResult b = run_protocol(d, inst.f, cfg);
      const double ms = ms_since(t0);
      worstMs = std::max(worstMs, ms);
      if (ms >= 5000.0) ok = false;

      totalErrors += a.errors;
      if (a.errors != 0) ok = false;
      if (a.empiricalBits.helper != b.empiricalBits.helper ||
          a.empiricalBits.source1 != b.empiricalBits.source1 ||
          a.empiricalBits.source2 != b.empiricalBits.source2 || a.errors != b.errors)
        ok = false;

      const double pairs[3][2] = {{a.empiricalBits.helper, a.theoreticalBits.helper},
                                  {a.empiricalBits.source1, a.theoreticalBits.source1},
                                  {a.empiricalBits.source2, a.theoreticalBits.source2}};
      for (const auto& pe : pairs) {
        if (pe[1] <= 0.0) continue;  // silent link, nothing to bracket
        if (pe[0] < pe[1] - 1e-9 || pe[0] >= pe[1] + 1.0 + 1e-9) ok = false;
      }
    }
  }
  report(9, ok,
         "20 seeded runs: 0 decode errors (got " + num(static_cast<double>(totalErrors)) +
             "), bit-identical replays, every active link in [H, H+1), worst config " +
             num(worstMs) + " ms",
         ms_since(t0all));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_fails == 0)
    std::printf("all 9 criteria passed\n");
  else
    std::printf("%d of 9 criteria failed\n", g_fails);
  return g_fails > 0 ? 1 : 0;
}
