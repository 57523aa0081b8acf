#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace helpercode {

// Mass bookkeeping tolerance: PMFs must sum to 1 within this.
inline constexpr double kMassTol = 1e-12;
// Entries at or below this count as zero support everywhere (graphs,
// matchings, decompositions).
inline constexpr double kSupportEps = 1e-12;
// Alphabet cap enforced on loaded instances.
inline constexpr int kMaxAlphabet = 12;

enum class Axis { X1, X2 };

namespace detail {

inline double clamp_mass(double m, const char* what) {
  if (m < -kMassTol) fail(errc::validation, std::string(what) + ": negative mass");
  return m < 0.0 ? 0.0 : m;
}

inline void check_total(double sum, const char* what) {
  if (std::abs(sum - 1.0) > kMassTol)
    fail(errc::validation, std::string(what) + ": masses sum to " + std::to_string(sum) + ", expected 1");
}

// Outcome labels sort numerically when both parse as integers, else
// lexicographically; integers sort before non-integers.
inline bool label_less(const std::string& a, const std::string& b) {
  auto as_int = [](const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
  };
  long long x = 0, y = 0;
  const bool na = as_int(a, x), nb = as_int(b, y);
  if (na && nb) return x != y ? x < y : a < b;
  if (na != nb) return na;
  return a < b;
}

}  // namespace detail

// Entropy of a nonnegative vector, in bits. Zero entries contribute nothing;
// the vector is not required to be normalized (callers that need a PMF
// validate separately).
inline double entropy(const std::vector<double>& masses) {
  double h = 0.0;
  for (double p : masses) {
    if (p < -kMassTol) fail(errc::validation, "entropy: negative mass");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h + 0.0;  // avoid returning -0
}

inline double binary_entropy(double d) {
  if (d < -kMassTol || d > 1.0 + kMassTol) fail(errc::validation, "binary_entropy: argument outside [0,1]");
  if (d <= 0.0 || d >= 1.0) return 0.0;
  return -d * std::log2(d) - (1.0 - d) * std::log2(1.0 - d);
}

// Finite probability mass function. Masses are >= 0 and sum to 1 within
// kMassTol; labels, when present, align with the masses.
class Pmf {
public:
  explicit Pmf(std::vector<double> masses, std::vector<std::string> labels = {})
      : masses_(std::move(masses)), labels_(std::move(labels)) {
    if (masses_.empty()) fail(errc::empty_alphabet, "Pmf: no symbols");
    double sum = 0.0;
    for (double& m : masses_) {
      m = detail::clamp_mass(m, "Pmf");
      sum += m;
    }
    detail::check_total(sum, "Pmf");
    if (!labels_.empty() && labels_.size() != masses_.size())
      fail(errc::length_mismatch, "Pmf: labels do not align with masses");
  }

  int size() const { return static_cast<int>(masses_.size()); }
  double at(int k) const { return masses_[static_cast<size_t>(k)]; }
  const std::vector<double>& masses() const { return masses_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int k) const { return labels_[static_cast<size_t>(k)]; }

private:
  std::vector<double> masses_;
  std::vector<std::string> labels_;
};

inline double entropy(const Pmf& p) { return entropy(p.masses()); }

// Joint PMF over a product alphabet, stored row-major. Rows index the first
// source, columns the second. Zero rows/columns are permitted here; the
// operations that cannot tolerate them reject them individually.
class JointPmf {
public:
  explicit JointPmf(std::vector<std::vector<double>> cells,
                    std::vector<std::string> row_labels = {},
                    std::vector<std::string> col_labels = {})
      : cells_(std::move(cells)), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (cells_.empty() || cells_.front().empty()) fail(errc::validation, "JointPmf: empty matrix");
    const size_t cols = cells_.front().size();
    double sum = 0.0;
    for (auto& row : cells_) {
      if (row.size() != cols) fail(errc::validation, "JointPmf: ragged matrix");
      for (double& m : row) {
        m = detail::clamp_mass(m, "JointPmf");
        sum += m;
      }
    }
    detail::check_total(sum, "JointPmf");
    if (!row_labels_.empty() && row_labels_.size() != cells_.size())
      fail(errc::length_mismatch, "JointPmf: row labels do not align");
    if (!col_labels_.empty() && col_labels_.size() != cols)
      fail(errc::length_mismatch, "JointPmf: column labels do not align");
  }

  int n1() const { return static_cast<int>(cells_.size()); }
  int n2() const { return static_cast<int>(cells_.front().size()); }
  double at(int i, int j) const { return cells_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  const std::vector<std::vector<double>>& cells() const { return cells_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

private:
  std::vector<std::vector<double>> cells_;
  std::vector<std::string> row_labels_, col_labels_;
};

// Entropy of the joint distribution H(X1, X2).
inline double entropy(const JointPmf& p) {
  double h = 0.0;
  for (const auto& row : p.cells())
    for (double m : row)
      if (m > 0.0) h -= m * std::log2(m);
  return h + 0.0;
}

inline std::pair<Pmf, Pmf> marginals(const JointPmf& p) {
  std::vector<double> r(static_cast<size_t>(p.n1()), 0.0), c(static_cast<size_t>(p.n2()), 0.0);
  for (int i = 0; i < p.n1(); ++i)
    for (int j = 0; j < p.n2(); ++j) {
      r[static_cast<size_t>(i)] += p.at(i, j);
      c[static_cast<size_t>(j)] += p.at(i, j);
    }
  return {Pmf(std::move(r), p.row_labels()), Pmf(std::move(c), p.col_labels())};
}

// H(X2|X1) when given == Axis::X1, H(X1|X2) otherwise.
inline double conditional_entropy(const JointPmf& p, Axis given) {
  double h = 0.0;
  if (given == Axis::X1) {
    for (int i = 0; i < p.n1(); ++i) {
      double row = 0.0;
      for (int j = 0; j < p.n2(); ++j) row += p.at(i, j);
      if (row <= 0.0) continue;
      for (int j = 0; j < p.n2(); ++j) {
        const double m = p.at(i, j);
        if (m > 0.0) h += m * std::log2(row / m);
      }
    }
  } else {
    for (int j = 0; j < p.n2(); ++j) {
      double col = 0.0;
      for (int i = 0; i < p.n1(); ++i) col += p.at(i, j);
      if (col <= 0.0) continue;
      for (int i = 0; i < p.n1(); ++i) {
        const double m = p.at(i, j);
        if (m > 0.0) h += m * std::log2(col / m);
      }
    }
  }
  return h + 0.0;
}

inline double tv_distance(const Pmf& a, const Pmf& b) {
  if (a.size() != b.size()) fail(errc::length_mismatch, "tv_distance: alphabets differ");
  double s = 0.0;
  for (int k = 0; k < a.size(); ++k) s += std::abs(a.at(k) - b.at(k));
  return 0.5 * s;
}

// Partial function of both sources. A cell may be DontCare (no outcome) only
// where the paired joint PMF puts zero mass.
class FunctionTable {
public:
  using Cell = std::optional<std::string>;

  explicit FunctionTable(std::vector<std::vector<Cell>> cells) : cells_(std::move(cells)) {
    if (cells_.empty() || cells_.front().empty()) fail(errc::validation, "FunctionTable: empty table");
    const size_t cols = cells_.front().size();
    for (const auto& row : cells_)
      if (row.size() != cols) fail(errc::validation, "FunctionTable: ragged table");
  }

  int n1() const { return static_cast<int>(cells_.size()); }
  int n2() const { return static_cast<int>(cells_.front().size()); }
  const Cell& at(int i, int j) const { return cells_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  bool dont_care(int i, int j) const { return !at(i, j).has_value(); }

private:
  std::vector<std::vector<Cell>> cells_;
};

// A joint PMF and a function table pair up when the shapes agree and no cell
// with positive mass is DontCare.
inline void check_pairing(const JointPmf& p, const FunctionTable& f) {
  if (p.n1() != f.n1() || p.n2() != f.n2()) fail(errc::validation, "pairing: shape mismatch");
  for (int i = 0; i < p.n1(); ++i)
    for (int j = 0; j < p.n2(); ++j)
      if (p.at(i, j) > kSupportEps && f.dont_care(i, j))
        fail(errc::validation, "pairing: DontCare at a cell with positive mass (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
}

// Distribution of f(X1, X2). Outcome order: numeric labels ascending, then
// the rest lexicographically.
inline Pmf pushforward(const JointPmf& p, const FunctionTable& f) {
  check_pairing(p, f);
  std::map<std::string, double, bool (*)(const std::string&, const std::string&)> acc(detail::label_less);
  double kept = 0.0;
  for (int i = 0; i < p.n1(); ++i)
    for (int j = 0; j < p.n2(); ++j) {
      const double m = p.at(i, j);
      if (m <= 0.0 || f.dont_care(i, j)) continue;  // sub-threshold DontCare cells drop out
      acc[*f.at(i, j)] += m;
      kept += m;
    }
  if (acc.empty()) fail(errc::empty_alphabet, "pushforward: no outcomes carry mass");
  if (std::abs(kept - 1.0) > 1e-9) fail(errc::validation, "pushforward: outcome mass lost");
  std::vector<double> masses;
  std::vector<std::string> labels;
  masses.reserve(acc.size());
  labels.reserve(acc.size());
  for (auto& [label, mass] : acc) {
    labels.push_back(label);
    masses.push_back(mass / kept);
  }
  return Pmf(std::move(masses), std::move(labels));
}

}  // namespace helpercode
