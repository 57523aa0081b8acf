#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "decomposition.hpp"
#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

// Distinguishability graph of one source: two symbols share an edge iff some
// opposite-source symbol is jointly probable with both while the function
// outcomes differ, so any code must keep them apart.
struct CharGraph {
  Pmf vertexPmf;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted

  int order() const { return vertexPmf.size(); }
  bool has_edge(int u, int v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }
  std::vector<std::vector<bool>> adjacency() const {
    std::vector<std::vector<bool>> a(static_cast<size_t>(order()),
                                     std::vector<bool>(static_cast<size_t>(order()), false));
    for (auto [u, v] : edges) {
      a[static_cast<size_t>(u)][static_cast<size_t>(v)] = true;
      a[static_cast<size_t>(v)][static_cast<size_t>(u)] = true;
    }
    return a;
  }
};

inline CharGraph build_char_graph(const JointPmf& p, const FunctionTable& f, Axis source) {
  check_pairing(p, f);
  auto [m1, m2] = marginals(p);
  CharGraph g{source == Axis::X1 ? std::move(m1) : std::move(m2), {}};
  const int n = g.order();
  const int opp = source == Axis::X1 ? p.n2() : p.n1();
  auto cell = [&](int v, int o) { return source == Axis::X1 ? p.at(v, o) : p.at(o, v); };
  auto outcome = [&](int v, int o) -> const std::string& {
    return source == Axis::X1 ? *f.at(v, o) : *f.at(o, v);
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int o = 0; o < opp; ++o)
        if (cell(u, o) > kSupportEps && cell(v, o) > kSupportEps && outcome(u, o) != outcome(v, o)) {
          g.edges.emplace_back(u, v);
          break;
        }
  return g;
}

// n-fold OR power: vertices are n-tuples (first coordinate most significant),
// adjacent iff adjacent in at least one coordinate. Tuple labels are dropped.
inline CharGraph power_graph(const CharGraph& g, int n) {
  if (n < 1) fail(errc::validation, "power_graph: n must be at least 1");
  const int base = g.order();
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= base;
    if (total > 4096) fail(errc::cap_exceeded, "power_graph: vertex count exceeds 4096");
  }
  const int nv = static_cast<int>(total);

  std::vector<double> masses(static_cast<size_t>(nv), 1.0);
  double sum = 0.0;
  for (int t = 0; t < nv; ++t) {
    int rest = t;
    for (int i = 0; i < n; ++i) {
      masses[static_cast<size_t>(t)] *= g.vertexPmf.at(rest % base);
      rest /= base;
    }
    sum += masses[static_cast<size_t>(t)];
  }
  for (double& m : masses) m /= sum;  // kill accumulated product roundoff

  CharGraph pg{Pmf(std::move(masses)), {}};
  const auto adj = g.adjacency();
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      int ra = a, rb = b;
      for (int i = 0; i < n; ++i) {
        if (adj[static_cast<size_t>(ra % base)][static_cast<size_t>(rb % base)]) {
          pg.edges.emplace_back(a, b);
          break;
        }
        ra /= base;
        rb /= base;
      }
    }
  return pg;
}

// Restriction of g to the vertices in keep (strictly increasing original
// ids), reweighted by the caller's PMF; used for conditional graphs.
inline CharGraph induced_subgraph(const CharGraph& g, const std::vector<int>& keep, Pmf vertexPmf) {
  if (keep.empty()) fail(errc::validation, "induced_subgraph: empty vertex set");
  if (static_cast<int>(keep.size()) != vertexPmf.size())
    fail(errc::length_mismatch, "induced_subgraph: PMF size differs from vertex count");
  for (size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= g.order()) fail(errc::validation, "induced_subgraph: vertex out of range");
    if (k > 0 && keep[k] <= keep[k - 1]) fail(errc::validation, "induced_subgraph: vertices not increasing");
  }
  CharGraph sub{std::move(vertexPmf), {}};
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = a + 1; b < keep.size(); ++b)
      if (g.has_edge(keep[a], keep[b])) sub.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return sub;
}

using ColoringAssignment = std::vector<int>;

inline bool is_valid_coloring(const CharGraph& g, const ColoringAssignment& c) {
  if (static_cast<int>(c.size()) != g.order()) fail(errc::validation, "is_valid_coloring: size mismatch");
  for (auto [u, v] : g.edges)
    if (c[static_cast<size_t>(u)] == c[static_cast<size_t>(v)]) return false;
  return true;
}

struct ColoringResult {
  ColoringAssignment assignment;
  double bits = 0.0;
  int numColors = 0;
};

// Exhaustive minimum-entropy proper coloring by set-partition enumeration in
// restricted-growth order; ties keep the first (lexicographically smallest)
// partition. Bell(12) ~ 4.2M keeps this a desk-scale search.
inline ColoringResult min_entropy_coloring(const CharGraph& g) {
  const int n = g.order();
  if (n > 12) fail(errc::cap_exceeded, "min_entropy_coloring: more than 12 vertices");

  std::vector<std::uint16_t> adj(static_cast<size_t>(n), 0);
  for (auto [u, v] : g.edges) {
    adj[static_cast<size_t>(u)] |= static_cast<std::uint16_t>(1u << v);
    adj[static_cast<size_t>(v)] |= static_cast<std::uint16_t>(1u << u);
  }

  ColoringResult best;
  best.bits = std::numeric_limits<double>::infinity();
  std::vector<int> color(static_cast<size_t>(n), 0);
  std::vector<std::uint16_t> blockMask(static_cast<size_t>(n), 0);
  std::vector<double> blockMass(static_cast<size_t>(n), 0.0);

  auto dfs = [&](auto&& self, int v, int blocks) -> void {
    if (v == n) {
      std::vector<double> masses(blockMass.begin(), blockMass.begin() + blocks);
      const double bits = entropy(masses);
      if (bits < best.bits) best = ColoringResult{color, bits, blocks};
      return;
    }
    const double mv = g.vertexPmf.at(v);
    for (int b = 0; b < blocks; ++b) {
      if (adj[static_cast<size_t>(v)] & blockMask[static_cast<size_t>(b)]) continue;
      color[static_cast<size_t>(v)] = b;
      blockMask[static_cast<size_t>(b)] |= static_cast<std::uint16_t>(1u << v);
      blockMass[static_cast<size_t>(b)] += mv;
      self(self, v + 1, blocks);
      blockMass[static_cast<size_t>(b)] -= mv;
      blockMask[static_cast<size_t>(b)] &= static_cast<std::uint16_t>(~(1u << v));
    }
    color[static_cast<size_t>(v)] = blocks;
    blockMask[static_cast<size_t>(blocks)] = static_cast<std::uint16_t>(1u << v);
    blockMass[static_cast<size_t>(blocks)] = mv;
    self(self, v + 1, blocks + 1);
    blockMask[static_cast<size_t>(blocks)] = 0;
    blockMass[static_cast<size_t>(blocks)] = 0.0;
  };
  if (n > 0) dfs(dfs, 0, 0);
  return best;
}

// Best single-letter coloring rate of the n-th OR power, in bits per source
// symbol; a non-increasing upper bound on the graph entropy as n grows.
inline double chromatic_entropy_rate(const CharGraph& g, int n) {
  return min_entropy_coloring(power_graph(g, n)).bits / n;
}

struct IndependentSetFamily {
  std::vector<std::vector<int>> sets;        // each sorted ascending; family sorted lexicographically
  std::vector<std::vector<int>> containing;  // vertex -> indices of sets holding it
};

// All maximal independent sets, via Bron-Kerbosch with pivoting on the
// complement graph. Every vertex lies in at least one maximal set.
inline IndependentSetFamily maximal_independent_sets(const CharGraph& g) {
  const int n = g.order();
  if (n > 12) fail(errc::cap_exceeded, "maximal_independent_sets: more than 12 vertices");
  std::vector<std::uint16_t> nonadj(static_cast<size_t>(n), 0);  // complement neighborhoods
  const auto adj = g.adjacency();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !adj[static_cast<size_t>(u)][static_cast<size_t>(v)])
        nonadj[static_cast<size_t>(u)] |= static_cast<std::uint16_t>(1u << v);

  IndependentSetFamily fam;
  auto expand = [&](auto&& self, std::uint16_t r, std::uint16_t p, std::uint16_t x) -> void {
    if (p == 0 && x == 0) {
      std::vector<int> s;
      for (int v = 0; v < n; ++v)
        if (r & (1u << v)) s.push_back(v);
      fam.sets.push_back(std::move(s));
      return;
    }
    const std::uint16_t px = p | x;
    int pivot = -1, bestDeg = -1;
    for (int v = 0; v < n; ++v)
      if (px & (1u << v)) {
        const int deg = std::popcount(static_cast<unsigned>(p & nonadj[static_cast<size_t>(v)]));
        if (deg > bestDeg) {
          bestDeg = deg;
          pivot = v;
        }
      }
    std::uint16_t cand = p & static_cast<std::uint16_t>(~nonadj[static_cast<size_t>(pivot)]);
    for (int v = 0; v < n; ++v)
      if (cand & (1u << v)) {
        self(self, static_cast<std::uint16_t>(r | (1u << v)),
             static_cast<std::uint16_t>(p & nonadj[static_cast<size_t>(v)]),
             static_cast<std::uint16_t>(x & nonadj[static_cast<size_t>(v)]));
        p &= static_cast<std::uint16_t>(~(1u << v));
        x |= static_cast<std::uint16_t>(1u << v);
      }
  };
  if (n > 0) expand(expand, 0, static_cast<std::uint16_t>((1u << n) - 1), 0);
  std::sort(fam.sets.begin(), fam.sets.end());

  fam.containing.resize(static_cast<size_t>(n));
  for (size_t s = 0; s < fam.sets.size(); ++s)
    for (int v : fam.sets[s]) fam.containing[static_cast<size_t>(v)].push_back(static_cast<int>(s));
  return fam;
}

// Graph entropy: min I(X;S) over conditional laws p(s|x) supported on the
// maximal independent sets containing x. The objective sum_x p(x) KL(p(.|x) || q)
// is jointly convex, so alternating updates converge globally; random
// restarts guard corner plateaus.
inline double korner_entropy(const CharGraph& g, double tol = 1e-9, int max_iter = 100000) {
  if (tol <= 0.0 || max_iter < 1) fail(errc::validation, "korner_entropy: bad tolerance or iteration cap");
  const IndependentSetFamily fam = maximal_independent_sets(g);
  const size_t ns = fam.sets.size();
  if (ns <= 1) return 0.0;
  const int n = g.order();
  const std::vector<double>& px = g.vertexPmf.masses();

  auto run = [&](std::vector<std::vector<double>> p) -> double {
    std::vector<double> q(ns, 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      std::fill(q.begin(), q.end(), 0.0);
      for (int x = 0; x < n; ++x)
        for (size_t k = 0; k < fam.containing[static_cast<size_t>(x)].size(); ++k)
          q[static_cast<size_t>(fam.containing[static_cast<size_t>(x)][k])] +=
              px[static_cast<size_t>(x)] * p[static_cast<size_t>(x)][k];
      for (int x = 0; x < n; ++x) {
        const auto& cont = fam.containing[static_cast<size_t>(x)];
        double z = 0.0;
        for (int s : cont) z += q[static_cast<size_t>(s)];
        if (z <= 0.0) continue;  // unreachable sets; keep the current row
        for (size_t k = 0; k < cont.size(); ++k)
          p[static_cast<size_t>(x)][k] = q[static_cast<size_t>(cont[k])] / z;
      }
      std::fill(q.begin(), q.end(), 0.0);
      for (int x = 0; x < n; ++x)
        for (size_t k = 0; k < fam.containing[static_cast<size_t>(x)].size(); ++k)
          q[static_cast<size_t>(fam.containing[static_cast<size_t>(x)][k])] +=
              px[static_cast<size_t>(x)] * p[static_cast<size_t>(x)][k];
      double info = 0.0;
      for (int x = 0; x < n; ++x) {
        if (px[static_cast<size_t>(x)] <= 0.0) continue;
        const auto& cont = fam.containing[static_cast<size_t>(x)];
        for (size_t k = 0; k < cont.size(); ++k) {
          const double pk = p[static_cast<size_t>(x)][k];
          if (pk <= 0.0) continue;
          info += px[static_cast<size_t>(x)] * pk * std::log2(pk / q[static_cast<size_t>(cont[k])]);
        }
      }
      if (std::abs(prev - info) < tol) return std::max(info, 0.0);
      prev = info;
    }
    return std::max(prev, 0.0);
  };

  std::vector<std::vector<double>> uniform(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x)
    uniform[static_cast<size_t>(x)].assign(fam.containing[static_cast<size_t>(x)].size(),
                                           1.0 / fam.containing[static_cast<size_t>(x)].size());
  double best = run(uniform);
  for (int r = 0; r < 5; ++r) {
    std::mt19937_64 gen(0x9E3779B9u + static_cast<unsigned>(r));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    auto p = uniform;
    for (auto& row : p) {
      double z = 0.0;
      for (double& v : row) {
        v = u(gen);
        z += v;
      }
      for (double& v : row) v /= z;
    }
    best = std::min(best, run(p));
  }
  return best;
}

// Rate of the matched source when the helper reveals the component: each
// matching makes the outcome a function of this source alone, so the rate is
// the weighted entropy of the per-component outcome laws.
inline double conditional_rate_given_matchings(const MixtureDecomposition& d, const FunctionTable& f) {
  const Pmf w = d.weights();
  double rate = 0.0;
  for (size_t l = 0; l < d.components.size(); ++l) {
    if (!d.components[l].matching || !d.components[l].matching->perfect)
      fail(errc::non_matching_component, "conditional_rate_given_matchings: component lacks a perfect matching");
    rate += w.at(static_cast<int>(l)) * entropy(pushforward(d.components[l].pmf, f));
  }
  return rate;
}

}  // namespace helpercode
