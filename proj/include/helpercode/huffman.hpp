#pragma once

#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

// Optimal binary prefix code. Codes align with the input symbols; a symbol
// with zero mass keeps an empty codeword and never appears on the wire. A
// one-symbol alphabet also codes to the empty word.
struct HuffmanCode {
  std::vector<std::string> codes;
  std::vector<int> lengths;
  double expectedLength = 0.0;
};

inline HuffmanCode huffman_codebook(const std::vector<double>& masses) {
  std::vector<int> alive;
  double total = 0.0;
  for (size_t k = 0; k < masses.size(); ++k) {
    if (masses[k] < -kMassTol) fail(errc::validation, "huffman_codebook: negative mass");
    if (masses[k] > 0.0) {
      alive.push_back(static_cast<int>(k));
      total += masses[k];
    }
  }
  if (alive.empty()) fail(errc::empty_alphabet, "huffman_codebook: no symbol carries mass");

  HuffmanCode code;
  code.codes.assign(masses.size(), "");
  code.lengths.assign(masses.size(), 0);
  if (alive.size() == 1) return code;

  // Nodes ordered by (weight, creation id); ids start at the leaves in
  // symbol order, so equal-weight ties resolve the same way every run. The
  // first of the two popped children takes bit 0.
  struct Node {
    double weight;
    int left, right;  // -1 on leaves
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * alive.size());
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int k : alive) {
    heap.emplace(masses[static_cast<size_t>(k)], static_cast<int>(nodes.size()));
    nodes.push_back(Node{masses[static_cast<size_t>(k)], -1, -1});
  }
  while (heap.size() > 1) {
    const auto [wa, a] = heap.top();
    heap.pop();
    const auto [wb, b] = heap.top();
    heap.pop();
    heap.emplace(wa + wb, static_cast<int>(nodes.size()));
    nodes.push_back(Node{wa + wb, a, b});
  }

  std::string word;
  auto walk = [&](auto&& self, int node) -> void {
    if (nodes[static_cast<size_t>(node)].left < 0) {
      code.codes[static_cast<size_t>(alive[static_cast<size_t>(node)])] = word;
      code.lengths[static_cast<size_t>(alive[static_cast<size_t>(node)])] = static_cast<int>(word.size());
      return;
    }
    word.push_back('0');
    self(self, nodes[static_cast<size_t>(node)].left);
    word.back() = '1';
    self(self, nodes[static_cast<size_t>(node)].right);
    word.pop_back();
  };
  walk(walk, static_cast<int>(nodes.size()) - 1);

  for (size_t k = 0; k < masses.size(); ++k)
    if (masses[k] > 0.0) code.expectedLength += (masses[k] / total) * code.lengths[k];
  return code;
}

inline HuffmanCode huffman_codebook(const Pmf& p) { return huffman_codebook(p.masses()); }

}  // namespace helpercode
