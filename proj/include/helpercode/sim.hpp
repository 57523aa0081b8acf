#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "char_graph.hpp"
#include "coupling.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "huffman.hpp"
#include "pmf.hpp"
#include "rates.hpp"

namespace helpercode {

namespace detail {

// splitmix64 finalizer; with a strided counter it doubles as a random-access
// generator, so sample i's draws never depend on how samples are batched.
inline std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

class SampleStream {
 public:
  using result_type = std::uint64_t;
  SampleStream(std::uint64_t seed, std::uint64_t slot)
      : key_(detail::scramble(seed + 0x9E3779B97F4A7C15ull)), counter_(slot) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xFFFFFFFFFFFFFFFFull; }
  result_type operator()() { return detail::scramble(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// Slots reserved per sample in the counter space; a sample spends two draws
// (component, cell), the headroom keeps future draws from colliding.
inline constexpr std::uint64_t kSlotsPerSample = 8;

enum class Scheme { Helper, FullyDistributed };

struct SimConfig {
  std::uint64_t numSamples = 10000;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Helper;
  int blockLength = 1;  // symbols per codeword on every link, 1 to 3
};

struct LinkStats {
  double helper = 0.0;
  double source1 = 0.0;
  double source2 = 0.0;
};

struct SimResult {
  std::uint64_t errors = 0;
  LinkStats empiricalBits;
  LinkStats theoreticalBits;
  std::uint64_t samples = 0;
};

struct MixtureSample {
  int component;
  int x1;
  int x2;
};

namespace detail {

struct MixtureSampler {
  std::vector<double> weights;
  std::vector<std::vector<double>> flat;  // row-major component cells
  int n2;

  explicit MixtureSampler(const MixtureDecomposition& d) {
    weights = d.weights().masses();
    n2 = d.components.front().pmf.n2();
    for (const auto& comp : d.components) {
      std::vector<double> cells;
      cells.reserve(static_cast<size_t>(comp.pmf.n1() * comp.pmf.n2()));
      for (const auto& row : comp.pmf.cells()) cells.insert(cells.end(), row.begin(), row.end());
      flat.push_back(std::move(cells));
    }
  }

  template <class URBG>
  MixtureSample draw(URBG& g) const {
    const int l = pick(weights, unit_interval(g));
    const int cell = pick(flat[static_cast<size_t>(l)], unit_interval(g));
    return {l, cell / n2, cell % n2};
  }
};

}  // namespace detail

template <class URBG>
MixtureSample sample_mixture(const MixtureDecomposition& d, URBG& g) {
  return detail::MixtureSampler(d).draw(g);
}

namespace detail {

// Per-component wire format of one source: a color for every symbol and the
// color law the codebook is built on.
struct LinkPlan {
  std::vector<int> color;
  std::vector<double> dist;
};

inline LinkPlan coloring_plan(const CharGraph& g, const ColoringAssignment& assignment) {
  LinkPlan plan;
  plan.color = assignment;
  int colors = 0;
  for (int c : assignment) colors = std::max(colors, c + 1);
  plan.dist.assign(static_cast<size_t>(colors), 0.0);
  for (int v = 0; v < g.order(); ++v) plan.dist[static_cast<size_t>(plan.color[static_cast<size_t>(v)])] += g.vertexPmf.at(v);
  return plan;
}

inline int mixed_radix_index(const std::vector<int>& digits, const std::vector<int>& sizes) {
  int idx = 0;
  for (size_t t = 0; t < digits.size(); ++t) idx = idx * sizes[t] + digits[t];
  return idx;
}

}  // namespace detail

// Execute the protocol sample by sample: the helper announces the component,
// each source prefix-codes its color, the user decodes the outcome from the
// (component, colors) table. Block coding groups blockLength consecutive
// symbols into one codeword per link; leftovers use the single-symbol books.
inline SimResult run_protocol(const MixtureDecomposition& d, const FunctionTable& f, const SimConfig& cfg) {
  if (cfg.numSamples < 1) fail(errc::validation, "run_protocol: numSamples must be at least 1");
  if (cfg.blockLength < 1 || cfg.blockLength > 3)
    fail(errc::validation, "run_protocol: blockLength must be 1, 2, or 3");

  const JointPmf p = reconstruct(d);
  check_pairing(p, f);
  const Pmf weights = d.weights();
  const int numComponents = weights.size();
  const bool helperActive = cfg.scheme == Scheme::Helper;

  // Wire plans. In the helper scheme matched components send outcome classes
  // on source 1 and nothing on source 2; non-matched components color both
  // conditional graphs. The fully distributed scheme ignores the component
  // and colors the unconditional graphs.
  std::vector<detail::LinkPlan> plan1, plan2;
  if (helperActive) {
    for (const auto& comp : d.components) {
      if (comp.matching && comp.matching->perfect) {
        const Pmf out = pushforward(comp.pmf, f);
        std::map<std::string, int> classOf;
        for (int k = 0; k < out.size(); ++k) classOf[out.label(k)] = k;
        detail::LinkPlan p1;
        p1.dist = out.masses();
        p1.color.assign(static_cast<size_t>(comp.pmf.n1()), 0);
        for (int i = 0; i < comp.pmf.n1(); ++i) {
          const int j = comp.matching->row_to_col[static_cast<size_t>(i)];
          if (comp.pmf.at(i, j) > kSupportEps) p1.color[static_cast<size_t>(i)] = classOf.at(*f.at(i, j));
        }
        plan1.push_back(std::move(p1));
        plan2.push_back(detail::LinkPlan{std::vector<int>(static_cast<size_t>(comp.pmf.n2()), 0), {1.0}});
      } else {
        const CharGraph g1 = build_char_graph(comp.pmf, f, Axis::X1);
        const CharGraph g2 = build_char_graph(comp.pmf, f, Axis::X2);
        plan1.push_back(detail::coloring_plan(g1, min_entropy_coloring(g1).assignment));
        plan2.push_back(detail::coloring_plan(g2, min_entropy_coloring(g2).assignment));
      }
    }
  } else {
    const CharGraph g1 = build_char_graph(p, f, Axis::X1);
    const CharGraph g2 = build_char_graph(p, f, Axis::X2);
    plan1.assign(static_cast<size_t>(numComponents), detail::coloring_plan(g1, min_entropy_coloring(g1).assignment));
    plan2.assign(static_cast<size_t>(numComponents), detail::coloring_plan(g2, min_entropy_coloring(g2).assignment));
  }

  // The user's table. Decodability is a property of the colorings, so it is
  // checked exhaustively up front: any clash aborts the run.
  std::map<std::array<int, 3>, std::string> decode;
  for (int l = 0; l < numComponents; ++l) {
    const int key = helperActive ? l : 0;
    const JointPmf& cells = helperActive ? d.components[static_cast<size_t>(l)].pmf : p;
    for (int i = 0; i < cells.n1(); ++i)
      for (int j = 0; j < cells.n2(); ++j) {
        if (cells.at(i, j) <= kSupportEps) continue;
        const std::array<int, 3> k{key, plan1[static_cast<size_t>(l)].color[static_cast<size_t>(i)],
                                   plan2[static_cast<size_t>(l)].color[static_cast<size_t>(j)]};
        const auto [it, inserted] = decode.emplace(k, *f.at(i, j));
        if (!inserted && it->second != *f.at(i, j))
          fail(errc::undecodable, "run_protocol: two outcomes share a component and color pair");
      }
    if (!helperActive) break;
  }

  SimResult result;
  result.samples = cfg.numSamples;
  if (helperActive) result.theoreticalBits.helper = entropy(weights);
  for (int l = 0; l < numComponents; ++l) {
    const double ql = helperActive ? weights.at(l) : (l == 0 ? 1.0 : 0.0);
    result.theoreticalBits.source1 += ql * entropy(plan1[static_cast<size_t>(l)].dist);
    result.theoreticalBits.source2 += ql * entropy(plan2[static_cast<size_t>(l)].dist);
  }

  // Single-symbol codebooks; block codebooks on top when blockLength > 1.
  const HuffmanCode helperCode = huffman_codebook(weights);
  std::vector<HuffmanCode> code1, code2;
  for (int l = 0; l < numComponents; ++l) {
    code1.push_back(huffman_codebook(plan1[static_cast<size_t>(l)].dist));
    code2.push_back(huffman_codebook(plan2[static_cast<size_t>(l)].dist));
  }

  const int n = cfg.blockLength;
  long long tuples = 1;
  for (int t = 0; t < n; ++t) {
    tuples *= numComponents;
    if (tuples > 4096) fail(errc::cap_exceeded, "run_protocol: too many component tuples for block coding");
  }
  HuffmanCode helperBlockCode;
  if (n > 1) {
    std::vector<double> tw(static_cast<size_t>(tuples), 1.0);
    for (int idx = 0; idx < tuples; ++idx) {
      int rest = idx;
      for (int t = 0; t < n; ++t) {
        tw[static_cast<size_t>(idx)] *= weights.at(rest % numComponents);
        rest /= numComponents;
      }
    }
    helperBlockCode = huffman_codebook(tw);
  }
  // Source block codebooks are built per component tuple on first use; the
  // product color space stays small (at most 12^3 entries).
  std::map<std::vector<int>, HuffmanCode> blockBook1, blockBook2;
  auto block_book = [&](std::map<std::vector<int>, HuffmanCode>& cache, const std::vector<detail::LinkPlan>& plans,
                        const std::vector<int>& comps) -> const HuffmanCode& {
    auto it = cache.find(comps);
    if (it != cache.end()) return it->second;
    std::vector<int> sizes;
    long long space = 1;
    for (int l : comps) {
      sizes.push_back(static_cast<int>(plans[static_cast<size_t>(l)].dist.size()));
      space *= sizes.back();
      if (space > 4096) fail(errc::cap_exceeded, "run_protocol: too many color tuples for block coding");
    }
    std::vector<double> masses(static_cast<size_t>(space), 1.0);
    for (int idx = 0; idx < space; ++idx) {
      int rest = idx;
      for (int t = n - 1; t >= 0; --t) {
        masses[static_cast<size_t>(idx)] *=
            plans[static_cast<size_t>(comps[static_cast<size_t>(t)])].dist[static_cast<size_t>(rest % sizes[static_cast<size_t>(t)])];
        rest /= sizes[static_cast<size_t>(t)];
      }
    }
    return cache.emplace(comps, huffman_codebook(masses)).first->second;
  };

  std::uint64_t bitsHelper = 0, bits1 = 0, bits2 = 0;
  std::vector<int> blockComps, blockC1, blockC2;
  const std::uint64_t fullBlocks = cfg.numSamples / static_cast<std::uint64_t>(n);
  const detail::MixtureSampler sampler(d);

  for (std::uint64_t s = 0; s < cfg.numSamples; ++s) {
    SampleStream stream(cfg.seed, s * kSlotsPerSample);
    const MixtureSample ms = sampler.draw(stream);
    const int l = helperActive ? ms.component : 0;
    const int c1 = plan1[static_cast<size_t>(ms.component)].color[static_cast<size_t>(ms.x1)];
    const int c2 = plan2[static_cast<size_t>(ms.component)].color[static_cast<size_t>(ms.x2)];

    const auto it = decode.find({l, c1, c2});
    if (it == decode.end() || it->second != *f.at(ms.x1, ms.x2)) ++result.errors;

    if (n > 1 && s < fullBlocks * static_cast<std::uint64_t>(n)) {
      blockComps.push_back(ms.component);
      blockC1.push_back(c1);
      blockC2.push_back(c2);
      if (static_cast<int>(blockComps.size()) == n) {
        if (helperActive) {
          std::vector<int> sizes(static_cast<size_t>(n), numComponents);
          std::vector<int> rev(blockComps.rbegin(), blockComps.rend());
          bitsHelper += static_cast<std::uint64_t>(
              helperBlockCode.lengths[static_cast<size_t>(detail::mixed_radix_index(rev, sizes))]);
        }
        std::vector<int> sizes1, sizes2;
        for (int lc : blockComps) {
          sizes1.push_back(static_cast<int>(plan1[static_cast<size_t>(lc)].dist.size()));
          sizes2.push_back(static_cast<int>(plan2[static_cast<size_t>(lc)].dist.size()));
        }
        bits1 += static_cast<std::uint64_t>(
            block_book(blockBook1, plan1, blockComps).lengths[static_cast<size_t>(detail::mixed_radix_index(blockC1, sizes1))]);
        bits2 += static_cast<std::uint64_t>(
            block_book(blockBook2, plan2, blockComps).lengths[static_cast<size_t>(detail::mixed_radix_index(blockC2, sizes2))]);
        blockComps.clear();
        blockC1.clear();
        blockC2.clear();
      }
    } else {
      if (helperActive) bitsHelper += static_cast<std::uint64_t>(helperCode.lengths[static_cast<size_t>(ms.component)]);
      bits1 += static_cast<std::uint64_t>(code1[static_cast<size_t>(ms.component)].lengths[static_cast<size_t>(c1)]);
      bits2 += static_cast<std::uint64_t>(code2[static_cast<size_t>(ms.component)].lengths[static_cast<size_t>(c2)]);
    }
  }

  const double samples = static_cast<double>(cfg.numSamples);
  result.empiricalBits.helper = static_cast<double>(bitsHelper) / samples;
  result.empiricalBits.source1 = static_cast<double>(bits1) / samples;
  result.empiricalBits.source2 = static_cast<double>(bits2) / samples;
  return result;
}

}  // namespace helpercode
