#include "procurement/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace procurement {

Grid make_grid(int n, const MarketConfig& cfg, const std::vector<double>& mandatory) {
  if (n < 2) throw std::domain_error("make_grid: need n >= 2");
  cfg.validate();
  const double tol = 1e-12 * cfg.width();

  std::vector<double> must{cfg.E};
  for (double v : mandatory) {
    if (std::isfinite(v) && cfg.admits(v)) must.push_back(v);
  }
  std::sort(must.begin(), must.end());
  must.erase(std::unique(must.begin(), must.end(),
                         [tol](double a, double b) { return std::abs(a - b) <= tol; }),
             must.end());

  std::vector<double> pts;
  for (int i = 0; i < n; ++i) {
    const double u = cfg.A + cfg.width() * static_cast<double>(i) / static_cast<double>(n - 1);
    pts.push_back(i == n - 1 ? cfg.B : u);
  }
  for (double m : must) {
    auto it = std::find_if(pts.begin(), pts.end(), [&](double v) { return std::abs(v - m) <= tol; });
    if (it != pts.end()) *it = m;
    else pts.push_back(m);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return Grid{n, std::move(pts)};
}

Matrix payoff_matrix(const std::function<double(double, double)>& kernel, const Grid& gx,
                     const Grid& gy) {
  Matrix M{gx.size(), gy.size(), std::vector<double>(gx.size() * gy.size())};
  for (std::size_t i = 0; i < gx.size(); ++i) {
    for (std::size_t j = 0; j < gy.size(); ++j) M(i, j) = kernel(gx[i], gy[j]);
  }
  return M;
}

std::vector<double> row_payoffs(const Matrix& M, const std::vector<double>& col_mix) {
  std::vector<double> u(M.rows, 0.0);
  for (std::size_t i = 0; i < M.rows; ++i) {
    const double* row = &M.data[i * M.cols];
    double s = 0.0;
    for (std::size_t j = 0; j < M.cols; ++j) s += row[j] * col_mix[j];
    u[i] = s;
  }
  return u;
}

std::vector<double> col_payoffs(const Matrix& M, const std::vector<double>& row_mix) {
  std::vector<double> w(M.cols, 0.0);
  for (std::size_t i = 0; i < M.rows; ++i) {
    const double xi = row_mix[i];
    if (xi == 0.0) continue;
    const double* row = &M.data[i * M.cols];
    for (std::size_t j = 0; j < M.cols; ++j) w[j] += xi * row[j];
  }
  return w;
}

double exploitability(const Matrix& M, const std::vector<double>& row_mix,
                      const std::vector<double>& col_mix) {
  const auto u = row_payoffs(M, col_mix);
  const auto w = col_payoffs(M, row_mix);
  const double upper = *std::max_element(u.begin(), u.end());
  const double lower = *std::min_element(w.begin(), w.end());
  return std::max(0.0, (upper - lower) / 2.0);
}

namespace {

void regret_to_strategy(const std::vector<double>& regret, std::vector<double>& out) {
  const double s = std::accumulate(regret.begin(), regret.end(), 0.0);
  if (s > 0.0) {
    for (std::size_t k = 0; k < regret.size(); ++k) out[k] = regret[k] / s;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
}

std::vector<double> normalized(const std::vector<double>& v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] / s;
  return out;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const Matrix& M, double tol, long max_iter, long check_every) {
  if (M.rows == 0 || M.cols == 0) throw std::domain_error("solve_matrix_game: empty matrix");
  if (!(tol > 0.0)) throw std::domain_error("solve_matrix_game: tol must be positive");
  for (double v : M.data) {
    if (!std::isfinite(v)) throw std::domain_error("solve_matrix_game: non-finite entry");
  }
  if (check_every < 1) check_every = 1;

  const std::size_t n = M.rows, m = M.cols;
  std::vector<double> rx(n, 0.0), ry(m, 0.0);
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(m, 1.0 / static_cast<double>(m));
  std::vector<double> ax(n, 0.0), ay(m, 0.0);

  MatrixGameSolution sol;
  auto evaluate = [&](long iters) {
    sol.row_mix = normalized(ax);
    sol.col_mix = normalized(ay);
    const auto u = row_payoffs(M, sol.col_mix);
    const auto w = col_payoffs(M, sol.row_mix);
    sol.upper = *std::max_element(u.begin(), u.end());
    sol.lower = *std::min_element(w.begin(), w.end());
    sol.value = 0.5 * (sol.upper + sol.lower);
    sol.exploitability = std::max(0.0, (sol.upper - sol.lower) / 2.0);
    sol.iterations = iters;
    sol.converged = sol.exploitability <= tol;
  };

  for (long t = 1; t <= max_iter; ++t) {
    const auto u = row_payoffs(M, y);
    double ev = 0.0;
    for (std::size_t i = 0; i < n; ++i) ev += x[i] * u[i];
    for (std::size_t i = 0; i < n; ++i) rx[i] = std::max(0.0, rx[i] + u[i] - ev);
    regret_to_strategy(rx, x);
    const auto wt = static_cast<double>(t);
    for (std::size_t i = 0; i < n; ++i) ax[i] += wt * x[i];

    const auto w = col_payoffs(M, x);
    double ew = 0.0;
    for (std::size_t j = 0; j < m; ++j) ew += y[j] * w[j];
    for (std::size_t j = 0; j < m; ++j) ry[j] = std::max(0.0, ry[j] + ew - w[j]);
    regret_to_strategy(ry, y);
    for (std::size_t j = 0; j < m; ++j) ay[j] += wt * y[j];

    if (t % check_every == 0 || t == max_iter) {
      evaluate(t);
      if (sol.converged) return sol;
    }
  }
  if (max_iter < 1) {
    ax = x;
    ay = y;
    evaluate(0);
  }
  return sol;
}

}  // namespace procurement
