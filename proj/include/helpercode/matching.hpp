#pragma once

#include <vector>

#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

using SupportMask = std::vector<std::vector<bool>>;

inline SupportMask support_mask(const JointPmf& p, double eps = kSupportEps) {
  SupportMask mask(static_cast<size_t>(p.n1()), std::vector<bool>(static_cast<size_t>(p.n2()), false));
  for (int i = 0; i < p.n1(); ++i)
    for (int j = 0; j < p.n2(); ++j) mask[static_cast<size_t>(i)][static_cast<size_t>(j)] = p.at(i, j) > eps;
  return mask;
}

struct Matching {
  std::vector<int> row_to_col;  // -1 where a row is unmatched
  int size = 0;
  bool perfect = false;  // square mask and every row matched
};

// Maximum-cardinality bipartite matching on a support mask.
//
// Deterministic rule: rows are scanned in ascending index; each row first
// takes its lowest-index free column, and rows still unmatched afterwards
// run augmenting paths that try columns in ascending index. The greedy pass
// matters: it keeps early rows on their first free column instead of letting
// a later row steal it, which pins which decomposition the callers produce.
inline Matching max_bipartite_matching(const SupportMask& mask) {
  const int rows = static_cast<int>(mask.size());
  if (rows == 0) fail(errc::validation, "max_bipartite_matching: empty mask");
  const int cols = static_cast<int>(mask.front().size());
  for (const auto& r : mask)
    if (static_cast<int>(r.size()) != cols) fail(errc::validation, "max_bipartite_matching: ragged mask");

  std::vector<int> row_match(static_cast<size_t>(rows), -1), col_match(static_cast<size_t>(cols), -1);

  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (mask[static_cast<size_t>(i)][static_cast<size_t>(j)] && col_match[static_cast<size_t>(j)] < 0) {
        row_match[static_cast<size_t>(i)] = j;
        col_match[static_cast<size_t>(j)] = i;
        break;
      }

  std::vector<bool> visited(static_cast<size_t>(cols), false);
  auto augment = [&](auto&& self, int i) -> bool {
    for (int j = 0; j < cols; ++j) {
      if (!mask[static_cast<size_t>(i)][static_cast<size_t>(j)] || visited[static_cast<size_t>(j)]) continue;
      visited[static_cast<size_t>(j)] = true;
      if (col_match[static_cast<size_t>(j)] < 0 || self(self, col_match[static_cast<size_t>(j)])) {
        row_match[static_cast<size_t>(i)] = j;
        col_match[static_cast<size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < rows; ++i) {
    if (row_match[static_cast<size_t>(i)] >= 0) continue;
    visited.assign(static_cast<size_t>(cols), false);
    augment(augment, i);
  }

  Matching m;
  m.row_to_col = std::move(row_match);
  for (int c : m.row_to_col)
    if (c >= 0) ++m.size;
  m.perfect = rows == cols && m.size == rows;
  return m;
}

}  // namespace helpercode
