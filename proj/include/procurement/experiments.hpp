#pragma once

// Seeded experiment drivers and the verification battery.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "procurement/expectation.hpp"
#include "procurement/market.hpp"
#include "procurement/report.hpp"
#include "procurement/strategy.hpp"

namespace procurement {

struct TournamentResult {
  std::size_t samples = 0;
  std::vector<double> mean;    // per player
  std::vector<double> stderr_;  // per player
};

/// Plays `samples` independent rounds of the two-bidder kernel with the row
/// drawing from strategies[0] and the column from strategies[1]. Each player
/// samples from its own substream of `seed`.
TournamentResult mc_tournament(const std::vector<MixedStrategy>& strategies,
                               const TwoPlayerKernel& kernel, std::size_t samples, std::uint64_t seed);

struct Trajectory {
  std::vector<std::vector<double>> profiles;  // profiles[0] is the start
  bool fixed_point = false;     // a full round passed without any change
  long deviator_failures = 0;   // deviations that did not win outright
};

/// Round-robin best-response dynamics. At step s player s mod N moves unless
/// it already wins alone: it bids best_deviation of the others, undercut by
/// eps when that bid is within 1e-12 (relative) of another player's bid. eps = 1e-6 (E - A) when not
/// given.
Trajectory br_dynamics(const std::vector<double>& start, long steps, const MarketConfig& cfg,
                       std::optional<double> eps = std::nullopt);

enum class RegionKind { TwoPlayer, WeightedP, ThreePlayerSlice };

struct RegionGrid {
  RegionKind kind;
  int resolution = 0;
  double param = 0.0;           // p for WeightedP, x for ThreePlayerSlice
  std::vector<double> axis;     // shared axis values over [A, B]
  std::vector<double> values;   // row-major: rows follow the first argument
};

/// TwoPlayer: payoff_2(x, y). WeightedP: payoff_weighted(x, y, param).
/// ThreePlayerSlice: payoff_3(param, y, z) over (y, z). resolution <= 4096.
RegionGrid region_grid(RegionKind kind, double param, int resolution, const MarketConfig& cfg);

std::string to_string(RegionKind kind);

enum class EquilibriumKind { Uniform, Log, Weighted, Critical };

/// Pointwise checks of a closed-form equilibrium on `grid_points` bids:
/// row payoff <= value + tol everywhere, = value within tol on the support
/// (not for Critical), column payoff >= value - tol, and normalisation to
/// 1e-12. p is used only by Weighted and must lie in (0, 1/2].
std::vector<VerificationReport> verify_equilibrium(EquilibriumKind kind, double p, int grid_points,
                                                   double tol, const MarketConfig& cfg);

struct BatteryOptions {
  /// Restrict to these criterion numbers (1..12); empty runs all.
  std::set<int> only;
  /// Replace the log equilibrium in criterion 3's normalisation check by a
  /// strategy of mass 0.9 (fault injection).
  bool inject_mass_defect = false;
  /// Attach wall-clock runtimes to the reports.
  bool timing = false;
};

/// The twelve acceptance checks, one report each (ids "AC-1" .. "AC-12"),
/// in order. Failures are recorded, never thrown.
std::vector<VerificationReport> run_battery(const MarketConfig& cfg, std::uint64_t seed,
                                            const BatteryOptions& options = {});

}  // namespace procurement
