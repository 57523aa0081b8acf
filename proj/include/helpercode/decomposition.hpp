#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matching.hpp"
#include "pmf.hpp"
#include "sinkhorn.hpp"

namespace helpercode {

struct MixtureComponent {
  double weight = 0.0;
  JointPmf pmf;
  std::optional<Matching> matching;  // present when the support is a perfect matching
};

// Finite mixture P = sum_l weight_l * pmf_l; the helper observes which
// component produced a sample.
struct MixtureDecomposition {
  std::vector<MixtureComponent> components;

  // Component weights, renormalized by their sum to absorb the residual the
  // producing algorithm was allowed to leave behind (at most N*tol).
  Pmf weights() const {
    std::vector<double> w;
    w.reserve(components.size());
    double sum = 0.0;
    for (const auto& c : components) {
      w.push_back(c.weight);
      sum += c.weight;
    }
    for (double& x : w) x /= sum;
    return Pmf(std::move(w));
  }

  bool all_matched() const {
    for (const auto& c : components)
      if (!c.matching) return false;
    return true;
  }
};

inline JointPmf reconstruct(const MixtureDecomposition& d) {
  if (d.components.empty()) fail(errc::validation, "reconstruct: no components");
  const JointPmf& first = d.components.front().pmf;
  std::vector<std::vector<double>> acc(static_cast<size_t>(first.n1()),
                                       std::vector<double>(static_cast<size_t>(first.n2()), 0.0));
  for (const auto& c : d.components) {
    if (c.pmf.n1() != first.n1() || c.pmf.n2() != first.n2())
      fail(errc::validation, "reconstruct: component shapes differ");
    for (int i = 0; i < first.n1(); ++i)
      for (int j = 0; j < first.n2(); ++j)
        acc[static_cast<size_t>(i)][static_cast<size_t>(j)] += c.weight * c.pmf.at(i, j);
  }
  return JointPmf(std::move(acc), first.row_labels(), first.col_labels());
}

namespace detail {

// One step of Caratheodory pruning: find an affine dependency among the
// permutation patterns and move the weights along it until one hits zero.
// Returns false when the patterns are affinely independent.
inline bool prune_one_component(std::vector<std::pair<double, std::vector<int>>>& comps, int n) {
  const int l = static_cast<int>(comps.size());
  if (l < 2) return false;
  const int rows = n * n + 1;
  // Columns are [vec(B_k); 1]; a null vector of this matrix is an affine
  // dependency among the B_k.
  std::vector<std::vector<double>> m(static_cast<size_t>(rows), std::vector<double>(static_cast<size_t>(l), 0.0));
  for (int k = 0; k < l; ++k) {
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i * n + comps[static_cast<size_t>(k)].second[static_cast<size_t>(i)])][static_cast<size_t>(k)] = 1.0;
    m[static_cast<size_t>(rows - 1)][static_cast<size_t>(k)] = 1.0;
  }

  // Gaussian elimination with partial pivoting, tracking pivot columns.
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(static_cast<size_t>(l), false);
  int r = 0;
  for (int c = 0; c < l && r < rows; ++c) {
    int best = -1;
    double best_abs = 1e-9;
    for (int i = r; i < rows; ++i)
      if (std::abs(m[static_cast<size_t>(i)][static_cast<size_t>(c)]) > best_abs) {
        best = i;
        best_abs = std::abs(m[static_cast<size_t>(i)][static_cast<size_t>(c)]);
      }
    if (best < 0) continue;
    std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(best)]);
    const double piv = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int j = c; j < l; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(j)] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0.0) continue;
      for (int j = c; j < l; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivot_col_of_row.push_back(c);
    is_pivot[static_cast<size_t>(c)] = true;
    ++r;
  }
  int free_col = -1;
  for (int c = 0; c < l; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) {
      free_col = c;
      break;
    }
  if (free_col < 0) return false;

  std::vector<double> lambda(static_cast<size_t>(l), 0.0);
  lambda[static_cast<size_t>(free_col)] = 1.0;
  for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
    lambda[static_cast<size_t>(pivot_col_of_row[i])] = -m[i][static_cast<size_t>(free_col)];

  double limit = 0.0;
  int victim = -1;
  for (int k = 0; k < l; ++k)
    if (lambda[static_cast<size_t>(k)] > 1e-12) {
      const double t = comps[static_cast<size_t>(k)].first / lambda[static_cast<size_t>(k)];
      if (victim < 0 || t < limit) {
        limit = t;
        victim = k;
      }
    }
  if (victim < 0) {  // flip the direction; sum(lambda) = 0 so one side is positive
    for (double& x : lambda) x = -x;
    for (int k = 0; k < l; ++k)
      if (lambda[static_cast<size_t>(k)] > 1e-12) {
        const double t = comps[static_cast<size_t>(k)].first / lambda[static_cast<size_t>(k)];
        if (victim < 0 || t < limit) {
          limit = t;
          victim = k;
        }
      }
    if (victim < 0) return false;
  }
  for (int k = 0; k < l; ++k) comps[static_cast<size_t>(k)].first -= limit * lambda[static_cast<size_t>(k)];
  comps[static_cast<size_t>(victim)].first = 0.0;
  comps.erase(std::remove_if(comps.begin(), comps.end(), [](const auto& c) { return c.first <= 1e-15; }),
              comps.end());
  return true;
}

}  // namespace detail

// Birkhoff-von Neumann decomposition of a doubly stochastic matrix into
// permutation matrices: repeatedly extract the deterministic maximum
// matching on the positive support with weight = min entry along it. The
// greedy loop usually lands at or under the (n-1)^2+1 bound on its own;
// when it does not, Caratheodory pruning trims the list down to the bound
// without changing the reconstruction.
//
// Component PMFs are the permutation matrices normalized to unit mass, so
// reconstruct() of the result equals w / n.
inline MixtureDecomposition birkhoff_decompose(const std::vector<std::vector<double>>& w, double tol = 1e-10) {
  const int n = static_cast<int>(w.size());
  if (n == 0) fail(errc::validation, "birkhoff_decompose: empty matrix");
  for (const auto& row : w)
    if (static_cast<int>(row.size()) != n) fail(errc::non_square, "birkhoff_decompose: matrix is not square");
  std::vector<std::vector<double>> r = w;
  for (auto& row : r)
    for (double& x : row) {
      if (x < -tol) fail(errc::validation, "birkhoff_decompose: negative entry");
      if (x < 0.0) x = 0.0;
    }
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      row += r[static_cast<size_t>(i)][static_cast<size_t>(j)];
      col += r[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol)
      fail(errc::not_doubly_stochastic, "birkhoff_decompose: line sums deviate from 1 beyond tol");
  }

  std::vector<std::pair<double, std::vector<int>>> raw;  // (weight, permutation)
  const int max_rounds = n * n + 2;
  for (int round = 0; round < max_rounds; ++round) {
    double mass = 0.0;
    for (const auto& row : r)
      for (double x : row) mass += x;
    if (mass <= n * tol) break;

    SupportMask mask(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mask[static_cast<size_t>(i)][static_cast<size_t>(j)] = r[static_cast<size_t>(i)][static_cast<size_t>(j)] > kSupportEps;
    const Matching m = max_bipartite_matching(mask);
    if (!m.perfect)
      fail(errc::no_perfect_matching,
           "birkhoff_decompose: support lost its perfect matching with residual mass " + std::to_string(mass));
    double c = r[0][static_cast<size_t>(m.row_to_col[0])];
    for (int i = 1; i < n; ++i) c = std::min(c, r[static_cast<size_t>(i)][static_cast<size_t>(m.row_to_col[static_cast<size_t>(i)])]);
    for (int i = 0; i < n; ++i) {
      double& cell = r[static_cast<size_t>(i)][static_cast<size_t>(m.row_to_col[static_cast<size_t>(i)])];
      cell -= c;
      if (cell < 0.0) cell = 0.0;
    }
    raw.emplace_back(c, m.row_to_col);
  }

  const size_t cap = static_cast<size_t>((n - 1) * (n - 1) + 1);
  while (raw.size() > cap && detail::prune_one_component(raw, n)) {
  }

  MixtureDecomposition d;
  for (auto& [weight, perm] : raw) {
    std::vector<std::vector<double>> cells(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) cells[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])] = 1.0 / n;
    Matching m;
    m.row_to_col = perm;
    m.size = n;
    m.perfect = true;
    d.components.push_back(MixtureComponent{weight, JointPmf(std::move(cells)), std::move(m)});
  }
  if (d.components.empty()) fail(errc::validation, "birkhoff_decompose: matrix carries no mass");
  return d;
}

// Decompose a square joint PMF by repeatedly extracting the entire mass
// sitting on a perfect matching of the current support. When the residual
// support stops admitting a perfect matching, everything left becomes one
// final non-matched component. Deterministic via the matching tie rule.
inline MixtureDecomposition saturating_matching_decompose(const JointPmf& p) {
  if (p.n1() != p.n2()) fail(errc::non_square, "saturating_matching_decompose: matrix is not square");
  const int n = p.n1();
  std::vector<std::vector<double>> r = p.cells();

  MixtureDecomposition d;
  for (;;) {
    double mass = 0.0;
    for (const auto& row : r)
      for (double x : row) mass += x;
    if (mass <= kSupportEps) break;

    SupportMask mask(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mask[static_cast<size_t>(i)][static_cast<size_t>(j)] = r[static_cast<size_t>(i)][static_cast<size_t>(j)] > kSupportEps;
    const Matching m = max_bipartite_matching(mask);

    if (!m.perfect) {
      std::vector<std::vector<double>> cells(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[static_cast<size_t>(i)][static_cast<size_t>(j)] = r[static_cast<size_t>(i)][static_cast<size_t>(j)] / mass;
      d.components.push_back(MixtureComponent{mass, JointPmf(std::move(cells), p.row_labels(), p.col_labels()), std::nullopt});
      break;
    }

    double weight = 0.0;
    for (int i = 0; i < n; ++i) weight += r[static_cast<size_t>(i)][static_cast<size_t>(m.row_to_col[static_cast<size_t>(i)])];
    std::vector<std::vector<double>> cells(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
      const size_t j = static_cast<size_t>(m.row_to_col[static_cast<size_t>(i)]);
      cells[static_cast<size_t>(i)][j] = r[static_cast<size_t>(i)][j] / weight;
      r[static_cast<size_t>(i)][j] = 0.0;
    }
    d.components.push_back(MixtureComponent{weight, JointPmf(std::move(cells), p.row_labels(), p.col_labels()), m});
  }

  d.components.erase(std::remove_if(d.components.begin(), d.components.end(),
                                    [](const MixtureComponent& c) { return c.weight < 1e-12; }),
                     d.components.end());
  if (d.components.empty()) fail(errc::validation, "saturating_matching_decompose: no mass to decompose");
  return d;
}

// Scale to doubly stochastic, split into permutation matrices, and map the
// pieces back through the inverse scalings. Every component is then a
// perfect matching. When the scaling does not converge (support without
// total support), falls back to the saturating decomposition, which may end
// with one non-matched component.
inline MixtureDecomposition sinkhorn_birkhoff_decompose(const JointPmf& p, double tol = 1e-10,
                                                        int max_iter = 10000) {
  const ScalingResult s = sinkhorn_scale(p, tol, max_iter);
  if (!s.converged) return saturating_matching_decompose(p);

  const int n = p.n1();
  const MixtureDecomposition perms = birkhoff_decompose(s.w, std::max(tol * 10.0, 1e-9));

  MixtureDecomposition d;
  double total = 0.0;
  for (const auto& c : perms.components) {
    const std::vector<int>& perm = c.matching->row_to_col;
    std::vector<std::vector<double>> cells(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
      const size_t j = static_cast<size_t>(perm[static_cast<size_t>(i)]);
      const double v = 1.0 / (s.d1[static_cast<size_t>(i)] * s.d2[j]);
      cells[static_cast<size_t>(i)][j] = v;
      mass += v;
    }
    for (auto& row : cells)
      for (double& x : row) x /= mass;
    d.components.push_back(
        MixtureComponent{c.weight * mass, JointPmf(std::move(cells), p.row_labels(), p.col_labels()), c.matching});
    total += d.components.back().weight;
  }
  // The Birkhoff residual (up to n*tol) leaks into the weights; renormalize.
  for (auto& c : d.components) c.weight /= total;
  return d;
}

}  // namespace helpercode
