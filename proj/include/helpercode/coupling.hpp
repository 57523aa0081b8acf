#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "decomposition.hpp"
#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

namespace detail {

// 53 uniform bits in [0,1) from a full-range 64-bit generator.
template <class URBG>
double unit_interval(URBG& g) {
  static_assert(URBG::min() == 0 && URBG::max() == 0xFFFFFFFFFFFFFFFFull,
                "unit_interval needs a full-range 64-bit generator");
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Inverse-CDF pick; the fallback covers u landing on accumulated roundoff
// past the last positive mass.
inline int pick(const std::vector<double>& masses, double u) {
  double acc = 0.0;
  int last = 0;
  for (size_t k = 0; k < masses.size(); ++k) {
    if (masses[k] <= 0.0) continue;
    acc += masses[k];
    last = static_cast<int>(k);
    if (u < acc) return last;
  }
  return last;
}

}  // namespace detail

// Mixture representation of the coupling that attains the total variation
// bound: with probability 1-delta both coordinates equal one draw of T,
// otherwise they are independent draws of V and W, whose supports are
// disjoint. The endpoint flags mark which parts exist.
struct MaximalCoupling {
  Pmf p1, p2;
  double delta = 0.0;
  std::vector<double> t, v, w;  // zero-filled when the matching flag says absent
  bool degenerate_equal = false;     // delta ~ 0: V, W absent, U always 1
  bool degenerate_disjoint = false;  // delta ~ 1: T absent, U always 0
};

inline MaximalCoupling build_maximal_coupling(const Pmf& p1, const Pmf& p2) {
  if (p1.size() != p2.size()) fail(errc::length_mismatch, "build_maximal_coupling: alphabets differ");
  const int n = p1.size();
  MaximalCoupling c{p1, p2, tv_distance(p1, p2), {}, {}, {}, false, false};
  c.degenerate_equal = c.delta <= kMassTol;
  c.degenerate_disjoint = c.delta >= 1.0 - kMassTol;
  c.t.assign(static_cast<size_t>(n), 0.0);
  c.v.assign(static_cast<size_t>(n), 0.0);
  c.w.assign(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    if (!c.degenerate_disjoint)
      c.t[static_cast<size_t>(k)] = std::min(p1.at(k), p2.at(k)) / (1.0 - c.delta);
    if (!c.degenerate_equal) {
      c.v[static_cast<size_t>(k)] = std::max(p1.at(k) - p2.at(k), 0.0) / c.delta;
      c.w[static_cast<size_t>(k)] = std::max(p2.at(k) - p1.at(k), 0.0) / c.delta;
    }
  }
  return c;
}

// Joint law of the coupled pair. Built from min/positive-part masses rather
// than t, v, w so the marginals come out exact: row i sums to
// min(p1,p2)_i + (p1-p2)_i^+ = p1_i.
inline JointPmf coupling_joint(const MaximalCoupling& c) {
  const int n = c.p1.size();
  std::vector<double> pos1(static_cast<size_t>(n)), pos2(static_cast<size_t>(n));
  double sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    pos1[static_cast<size_t>(k)] = std::max(c.p1.at(k) - c.p2.at(k), 0.0);
    pos2[static_cast<size_t>(k)] = std::max(c.p2.at(k) - c.p1.at(k), 0.0);
    sum2 += pos2[static_cast<size_t>(k)];
  }
  std::vector<std::vector<double>> cells(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    cells[static_cast<size_t>(i)][static_cast<size_t>(i)] = std::min(c.p1.at(i), c.p2.at(i));
    if (sum2 > 0.0)
      for (int j = 0; j < n; ++j)
        if (i != j && pos1[static_cast<size_t>(i)] > 0.0 && pos2[static_cast<size_t>(j)] > 0.0)
          cells[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              pos1[static_cast<size_t>(i)] * pos2[static_cast<size_t>(j)] / sum2;
  }
  std::vector<std::string> labels = c.p1.has_labels() ? c.p1.labels() : std::vector<std::string>{};
  return JointPmf(std::move(cells), labels, labels);
}

template <class URBG>
std::pair<int, int> sample_coupling(const MaximalCoupling& c, URBG& g) {
  const bool together =
      c.degenerate_equal || (!c.degenerate_disjoint && detail::unit_interval(g) < 1.0 - c.delta);
  if (together) {
    const int k = detail::pick(c.t, detail::unit_interval(g));
    return {k, k};
  }
  const int a = detail::pick(c.v, detail::unit_interval(g));
  const int b = detail::pick(c.w, detail::unit_interval(g));
  return {a, b};
}

// Mismatch probability of each component's matching under the full joint:
// one minus the mass the matching actually captures.
inline std::vector<double> per_matching_deltas(const JointPmf& p, const MixtureDecomposition& d) {
  std::vector<double> deltas;
  deltas.reserve(d.components.size());
  for (const auto& comp : d.components) {
    if (!comp.matching || !comp.matching->perfect)
      fail(errc::non_matching_component, "per_matching_deltas: component lacks a perfect matching");
    double hit = 0.0;
    for (int i = 0; i < p.n1(); ++i) hit += p.at(i, comp.matching->row_to_col[static_cast<size_t>(i)]);
    deltas.push_back(std::clamp(1.0 - hit, 0.0, 1.0));
  }
  return deltas;
}

// For each matched component, the maximal coupling between the law of the
// permuted first source and the second source's marginal, both taken under
// the full joint.
inline std::vector<MaximalCoupling> matched_marginal_couplings(const JointPmf& p,
                                                               const MixtureDecomposition& d) {
  const auto [m1, m2] = marginals(p);
  std::vector<MaximalCoupling> out;
  out.reserve(d.components.size());
  for (const auto& comp : d.components) {
    if (!comp.matching || !comp.matching->perfect)
      fail(errc::non_matching_component, "matched_marginal_couplings: component lacks a perfect matching");
    std::vector<double> permuted(static_cast<size_t>(p.n2()), 0.0);
    for (int i = 0; i < p.n1(); ++i)
      permuted[static_cast<size_t>(comp.matching->row_to_col[static_cast<size_t>(i)])] = m1.at(i);
    out.push_back(build_maximal_coupling(Pmf(std::move(permuted), p.col_labels()), m2));
  }
  return out;
}

}  // namespace helpercode
