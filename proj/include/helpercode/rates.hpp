#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "char_graph.hpp"
#include "coupling.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

struct Baselines {
  double functionEntropy = 0.0;  // H(f(X1,X2)), converse floor for any scheme
  double trivialUpper = 0.0;     // both sources color their graphs unconditionally
  double fullyDistributed = 0.0; // no helper: source 2 colors conditioned on x1
  double slepianWolf = 0.0;      // H(X1,X2), recover both sources losslessly
};

struct RateReport {
  double helperRate = 0.0;
  std::vector<double> sourceRates;  // [source 1, source 2]
  double sumRate = 0.0;
  Baselines baselines;
  std::string scheme;
};

inline Baselines baselines(const JointPmf& p, const FunctionTable& f) {
  Baselines b;
  b.functionEntropy = entropy(pushforward(p, f));
  b.slepianWolf = entropy(p);

  const CharGraph g1 = build_char_graph(p, f, Axis::X1);
  const CharGraph g2 = build_char_graph(p, f, Axis::X2);
  const double bits1 = min_entropy_coloring(g1).bits;
  b.trivialUpper = bits1 + min_entropy_coloring(g2).bits;

  // Source 2 may condition its coloring on source 1's symbol: restrict its
  // graph to the support of each row and color that subgraph.
  double conditional2 = 0.0;
  const Pmf rows = marginals(p).first;
  for (int i = 0; i < p.n1(); ++i) {
    if (rows.at(i) <= kSupportEps) continue;
    std::vector<int> keep;
    std::vector<double> cond;
    for (int j = 0; j < p.n2(); ++j)
      if (p.at(i, j) > kSupportEps) {
        keep.push_back(j);
        cond.push_back(p.at(i, j) / rows.at(i));
      }
    conditional2 += rows.at(i) * min_entropy_coloring(induced_subgraph(g2, keep, Pmf(std::move(cond)))).bits;
  }
  b.fullyDistributed = bits1 + conditional2;
  return b;
}

// Rates when every component is a perfect matching: the helper announces the
// component, source 1 sends the outcome class, source 2 stays silent.
inline RateReport matched_scheme_rates(const MixtureDecomposition& d, const FunctionTable& f) {
  RateReport r;
  r.scheme = "matched";
  r.helperRate = entropy(d.weights());
  r.sourceRates = {conditional_rate_given_matchings(d, f), 0.0};
  r.sumRate = r.helperRate + r.sourceRates[0] + r.sourceRates[1];
  r.baselines = baselines(reconstruct(d), f);
  return r;
}

// General mixture: matched components ride on source 1's outcome classes;
// a non-matched component makes both sources send conditional coloring bits.
inline RateReport helper_scheme_rates(const MixtureDecomposition& d, const JointPmf& p,
                                      const FunctionTable& f) {
  const JointPmf back = reconstruct(d);
  if (back.n1() != p.n1() || back.n2() != p.n2())
    fail(errc::validation, "helper_scheme_rates: decomposition shape differs from the joint PMF");
  for (int i = 0; i < p.n1(); ++i)
    for (int j = 0; j < p.n2(); ++j)
      if (std::abs(back.at(i, j) - p.at(i, j)) > 1e-8)
        fail(errc::validation, "helper_scheme_rates: decomposition does not reconstruct the joint PMF");

  RateReport r;
  r.scheme = "helper";
  const Pmf w = d.weights();
  r.helperRate = entropy(w);
  r.sourceRates = {0.0, 0.0};
  for (size_t l = 0; l < d.components.size(); ++l) {
    const MixtureComponent& comp = d.components[l];
    const double ql = w.at(static_cast<int>(l));
    if (comp.matching && comp.matching->perfect) {
      r.sourceRates[0] += ql * entropy(pushforward(comp.pmf, f));
    } else {
      r.sourceRates[0] += ql * min_entropy_coloring(build_char_graph(comp.pmf, f, Axis::X1)).bits;
      r.sourceRates[1] += ql * min_entropy_coloring(build_char_graph(comp.pmf, f, Axis::X2)).bits;
    }
  }
  r.sumRate = r.helperRate + r.sourceRates[0] + r.sourceRates[1];
  r.baselines = baselines(p, f);
  return r;
}

// Sum rate of the coupled scheme: the helper reveals the component, and per
// component the sources spend h(delta) on the match/mismatch flag, H(T) when
// matched, H(V)+H(W) when not. Absent endpoint distributions are zero-filled
// and so contribute nothing alongside their vanishing coefficient.
inline double coupling_scheme_sum_rate(const Pmf& weights, const std::vector<MaximalCoupling>& couplings) {
  if (static_cast<size_t>(weights.size()) != couplings.size())
    fail(errc::length_mismatch, "coupling_scheme_sum_rate: weights and couplings differ in length");
  double rate = entropy(weights);
  for (int l = 0; l < weights.size(); ++l) {
    const MaximalCoupling& c = couplings[static_cast<size_t>(l)];
    rate += weights.at(l) * (binary_entropy(c.delta) + (1.0 - c.delta) * entropy(c.t) +
                             c.delta * (entropy(c.v) + entropy(c.w)));
  }
  return rate;
}

}  // namespace helpercode
