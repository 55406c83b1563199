#pragma once

// Brute-force oracles: grid games, pure-equilibrium scans, self-play and
// one-sided limit probes on the discontinuity loci.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "procurement/matrix_game.hpp"
#include "procurement/report.hpp"
#include "procurement/strategy.hpp"
#include "procurement/weighted.hpp"

namespace procurement {

/// Mass of each grid cell, cells being split at midpoints between
/// neighbouring grid points: [A, m_1), [m_1, m_2), ..., [m_{n-1}, B].
std::vector<double> project_to_grid(const MixedStrategy& s, const Grid& g);

/// Row-player payoff matrix of the weighted game (symmetric game at p = 1/2)
/// with both players on the same grid.
Matrix weighted_payoff_matrix(double p, const Grid& g, const MarketConfig& cfg);

struct PureScanResult {
  std::vector<std::vector<double>> equilibria;  // profiles with no profitable deviation
  long profiles_checked = 0;
};

/// Exhaustive scan of grid profiles for N = 2 (n <= 201) or N = 3 (n <= 41).
/// Each profile's deviation set is the grid plus, per player, best_deviation
/// of the others and that point minus eps, eps = 1e-6 (E - A).
/// Throws std::domain_error above the enumeration caps.
PureScanResult pure_ne_scan(int N, const Grid& g, const MarketConfig& cfg);

struct PureMinimaxGap {
  double maxmin = 0.0;  // max over own bid of min over opponent bid
  double minmax = 0.0;  // min over opponent bid of max over own bid
};

/// Two-bidder pure guarantees on the grid. Each inner optimisation also sees
/// the enriched points (best deviation and its eps-undercut).
PureMinimaxGap pure_minimax_gap(const Grid& g, const MarketConfig& cfg);

struct OracleRow {
  double p = 0.5;
  int n = 0;
  double value_n = 0.0;
  double v_formula = 0.0;
  double gap = 0.0;
  Regime regime = Regime::Symmetric;
  double benchmark = 0.5;
  double benchmark_gap = 0.0;
  double exploitability = 0.0;
  bool converged = false;
};

/// Grid-game value of the weighted game for every (p, n), against the value
/// formula and the regime benchmark. Grids carry E, D_check(1) and the first
/// A_check points as mandatory points.
std::vector<OracleRow> value_curve_oracle(const std::vector<double>& p_list, const MarketConfig& cfg,
                                          const std::vector<int>& n_list, double tol,
                                          long max_iter = 400000);

/// For one p: "formula" when the value formula is closer to the finest grid
/// value than the regime benchmark, otherwise "benchmark".
std::string closer_prediction(const std::vector<OracleRow>& rows, double p);

struct SelfplayPoint {
  long iteration;
  double exploitability;
};

struct SelfplayReport {
  int N = 2;
  std::vector<double> strategy;  // averaged shared strategy on the grid
  std::vector<SelfplayPoint> series;
  double final_exploitability = 0.0;
};

/// Symmetric regret-matching+ self-play: every player uses the same mixed
/// strategy on the grid. Exploitability is the best pure payoff against
/// N - 1 independent copies of the averaged strategy minus 1/N. The seed
/// perturbs the initial regrets. N in {2, 3}; n <= 201.
SelfplayReport symmetric_selfplay(int N, const Grid& g, long iters, std::uint64_t seed,
                                  const MarketConfig& cfg, int points = 50);

/// One-sided limit probes of the zero-on-ties game on diagonal profiles of
/// each discontinuity class; `samples` profiles per class.
VerificationReport ddpm_probe(int samples, std::uint64_t seed, const MarketConfig& cfg);

}  // namespace procurement
