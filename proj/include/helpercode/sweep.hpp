#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "error.hpp"
#include "instance.hpp"
#include "rates.hpp"

namespace helpercode {

struct SweepRow {
  double delta = 0.0;
  double functionEntropy = 0.0;
  double helperSumRate = 0.0;
  double fullyDistributed = 0.0;
  double trivialUpper = 0.0;
  double slepianWolf = 0.0;
  double gainVsFullyDistributed = 0.0;  // 1 - helper / fully distributed
  double lossVsHf = 0.0;                // helper / H(f) - 1
};

// "start:stop:step" with step > 0 and start <= stop; the last point may land
// on stop within 1e-12 of roundoff.
inline std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char trailing = '\0';
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &trailing) != 3)
    fail(errc::parse, "grid: expected start:stop:step, got '" + spec + "'");
  if (step <= 0.0) fail(errc::validation, "grid: step must be positive");
  if (start > stop) fail(errc::validation, "grid: start exceeds stop");
  std::vector<double> values;
  for (int k = 0;; ++k) {
    const double v = start + k * step;
    if (v > stop + 1e-12) break;
    values.push_back(v);
  }
  return values;
}

inline SweepRow evaluate_example1_row(double delta) {
  const ProblemInstance inst = example1_instance(delta);
  const MixtureDecomposition d = saturating_matching_decompose(inst.pmf);
  const RateReport rep = helper_scheme_rates(d, inst.pmf, inst.f);
  SweepRow row;
  row.delta = delta;
  row.functionEntropy = rep.baselines.functionEntropy;
  row.helperSumRate = rep.sumRate;
  row.fullyDistributed = rep.baselines.fullyDistributed;
  row.trivialUpper = rep.baselines.trivialUpper;
  row.slepianWolf = rep.baselines.slepianWolf;
  row.gainVsFullyDistributed = 1.0 - rep.sumRate / rep.baselines.fullyDistributed;
  row.lossVsHf = rep.sumRate / rep.baselines.functionEntropy - 1.0;
  return row;
}

inline std::vector<SweepRow> sweep_example1(const std::vector<double>& grid) {
  if (grid.empty()) fail(errc::validation, "sweep: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double delta : grid) rows.push_back(evaluate_example1_row(delta));
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "delta,H_f,helper_sum_rate,fully_distributed,trivial_upper,slepian_wolf,"
      "gain_vs_fully_distributed,loss_vs_Hf\n";
  char line[256];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line, "%.9f,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f\n", r.delta,
                  r.functionEntropy, r.helperSumRate, r.fullyDistributed, r.trivialUpper, r.slepianWolf,
                  r.gainVsFullyDistributed, r.lossVsHf);
    out += line;
  }
  return out;
}

}  // namespace helpercode
