#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "pmf.hpp"

namespace helpercode {

struct ScalingResult {
  std::vector<double> d1, d2;          // diagonal scalings, rows then columns
  std::vector<std::vector<double>> w;  // w[i][j] = d1[i] * p[i][j] * d2[j]
  int iterations = 0;                  // full row+column sweeps performed
  double residual = 0.0;               // max row/column sum deviation from 1
  bool converged = false;
};

// Sinkhorn-Knopp scaling of a square joint PMF towards a doubly stochastic
// matrix. Row normalization first, then columns; one iteration = one full
// sweep. The convergence flag is reported honestly: for supports without
// total support the residual may stall above tol, and the caller decides
// what to do about it.
inline ScalingResult sinkhorn_scale(const JointPmf& p, double tol = 1e-10, int max_iter = 10000) {
  if (p.n1() != p.n2()) fail(errc::non_square, "sinkhorn_scale: matrix is not square");
  if (tol <= 0.0) fail(errc::validation, "sinkhorn_scale: tol must be positive");
  if (max_iter < 1) fail(errc::validation, "sinkhorn_scale: max_iter must be at least 1");
  const int n = p.n1();
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      row += p.at(i, j);
      col += p.at(j, i);
    }
    if (row <= kSupportEps) fail(errc::zero_line, "sinkhorn_scale: row " + std::to_string(i) + " has no mass");
    if (col <= kSupportEps) fail(errc::zero_line, "sinkhorn_scale: column " + std::to_string(i) + " has no mass");
  }

  ScalingResult res;
  res.d1.assign(static_cast<size_t>(n), 1.0);
  res.d2.assign(static_cast<size_t>(n), 1.0);
  res.w.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));

  auto refresh = [&] {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        res.w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            res.d1[static_cast<size_t>(i)] * p.at(i, j) * res.d2[static_cast<size_t>(j)];
    for (int i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        row += res.w[static_cast<size_t>(i)][static_cast<size_t>(j)];
        col += res.w[static_cast<size_t>(j)][static_cast<size_t>(i)];
      }
      worst = std::max(worst, std::max(std::abs(row - 1.0), std::abs(col - 1.0)));
    }
    return worst;
  };

  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += p.at(i, j) * res.d2[static_cast<size_t>(j)];
      res.d1[static_cast<size_t>(i)] = 1.0 / row;
    }
    for (int j = 0; j < n; ++j) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += res.d1[static_cast<size_t>(i)] * p.at(i, j);
      res.d2[static_cast<size_t>(j)] = 1.0 / col;
    }
    res.iterations = it;
    res.residual = refresh();
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace helpercode
