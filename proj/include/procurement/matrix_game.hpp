#pragma once

// Finite constant-sum games on bid grids.

#include <cstddef>
#include <functional>
#include <vector>

#include "procurement/market.hpp"

namespace procurement {

/// Sorted bid grid: n uniform points over [A, B] plus mandatory points.
/// A uniform point within 1e-12 (B - A) of a mandatory point is replaced by it,
/// so every mandatory point appears exactly once.
struct Grid {
  int n_requested = 0;
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
  double operator[](std::size_t i) const { return points[i]; }
};

/// Requires n >= 2. E is always mandatory; points outside [A, B] are ignored.
Grid make_grid(int n, const MarketConfig& cfg, const std::vector<double>& mandatory = {});

/// Dense row-major matrix of row-player payoffs.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

/// M(i, j) = kernel(x_i, y_j).
Matrix payoff_matrix(const std::function<double(double, double)>& kernel, const Grid& gx,
                     const Grid& gy);

/// M y and x^T M.
std::vector<double> row_payoffs(const Matrix& M, const std::vector<double>& col_mix);
std::vector<double> col_payoffs(const Matrix& M, const std::vector<double>& row_mix);

/// Half the sum of both best-response gains:
///   (max_i (M y)_i - min_j (x^T M)_j) / 2.
/// Zero exactly at an equilibrium; the matrix value lies within this
/// distance of the midpoint of the two best-response values.
double exploitability(const Matrix& M, const std::vector<double>& row_mix,
                      const std::vector<double>& col_mix);

struct MatrixGameSolution {
  double value = 0.0;  // midpoint of the two best-response values
  double upper = 0.0;  // max_i (M y)_i
  double lower = 0.0;  // min_j (x^T M)_j
  std::vector<double> row_mix;
  std::vector<double> col_mix;
  double exploitability = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Row player maximises. Alternating regret-matching+ with linearly weighted
/// averages; stops when the averages' exploitability is <= tol (checked every
/// `check_every` iterations) or after max_iter iterations (converged = false).
/// Fully deterministic.
MatrixGameSolution solve_matrix_game(const Matrix& M, double tol, long max_iter,
                                     long check_every = 50);

}  // namespace procurement
