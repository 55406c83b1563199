#pragma once

// Closed-form equilibrium objects of the two-bidder games.

#include <optional>
#include <string>
#include <vector>

#include "procurement/market.hpp"
#include "procurement/report.hpp"
#include "procurement/strategy.hpp"
#include "procurement/weighted.hpp"

namespace procurement {

/// 1/2 U[A, A_1) + 1/2 U[A_1, A_2).
MixedStrategy uniform_equilibrium(const MarketConfig& cfg);

/// Density 1 / (ln 9 (E - x)) on [A, A_2).
MixedStrategy log_equilibrium(const MarketConfig& cfg);

/// Density 1 / (ln((E - A)/(E - D)) (E - x)) on [A, D) with D = D_check(1).
/// Used by both players. Requires 0 < p <= 1/2.
MixedStrategy weighted_equilibrium(double p, const MarketConfig& cfg);

/// 1/3 (U[A, A_check(1)) + U[A_check(1), A_check(2)) + U[A_check(2), A_check(3)))
/// at p = critical_p().
MixedStrategy critical_regime_strategy(const MarketConfig& cfg);

/// Interval partition of the regime mixtures.
///   Intermediate: [A, C_check(1)), [C_check(1), A_check(1)), [A_check(1), C_check(2)),
///                 [C_check(2), A_check(2)), [A_check(2), D_check(1))
///   LowP (m = low_p_m): for i = 0..m+1, [A_check(i), D_hat(m+1+i)) when i is odd and
///                 [D_hat(m+1+i), A_check(i+1)) when i is even, then [A_check(m+2), D_check(1)).
/// Throws std::domain_error for other regimes and std::logic_error if an
/// interval comes out empty or the intervals overlap.
std::vector<Interval> regime_partition(double p, const MarketConfig& cfg);

/// Mixture of uniform distributions over regime_partition with the given
/// weights (one per interval, positive, summing to 1 within 1e-12).
MixedStrategy regime_family(double p, const std::vector<double>& weights, const MarketConfig& cfg);

struct CalibrationResult {
  std::vector<double> weights;
  /// Row player's best grid response against the induced strategy minus the
  /// grid game value (>= 0 up to solver tolerance).
  double exploitability = 0.0;
  double equal_weights_exploitability = 0.0;
  double grid_value = 0.0;
  bool converged = false;
};

/// Chooses weights minimising the row player's best-response payoff against
/// regime_family on a grid of grid_n points. This is itself a finite matrix
/// game (grid bids against the partition intervals) and is solved with the
/// same deterministic solver as the grid oracle. Equal weights are kept when
/// they do at least as well. Requires regime(p) in {Intermediate, LowP}.
CalibrationResult calibrate_weights(double p, const MarketConfig& cfg, int grid_n);

struct ValueReport {
  double p = 0.5;
  double v = 0.5;
  Regime regime = Regime::Symmetric;
  std::optional<int> m;
  /// Regime benchmark: 1/2, 2/5, 1/3, 1/(m+2) or 0.
  double benchmark = 0.5;
  /// benchmark - v, only for Intermediate and LowP.
  std::optional<double> epsilon_p;
};

/// v(p) = ln((1-p)/(2-p)) / ln(p(1-p)/((2-p)(p+1))), with regime data attached.
/// p = 0 gives the degenerate report (v = 0). Requires 0 <= p <= 1/2.
ValueReport value_weighted(double p, const MarketConfig& cfg = {});

/// Plain evaluation of the value formula for 0 < p < 1.
double weighted_value_formula(double p);

enum class CurveKind {
  SymUniformRow,     // x -> G(x, uniform equilibrium)
  SymUniformColumn,  // y -> G(uniform equilibrium, y)
  SymLogRow,
  SymLogColumn,
  WeightedRow,       // x -> G_p(x, weighted equilibrium)
  WeightedColumn,    // y -> G_p(weighted equilibrium, y)
};

std::string to_string(CurveKind kind);

/// Piecewise closed-form expected-payoff curve.
class ClosedFormCurve {
 public:
  /// Sym* kinds ignore p (they are the p = 1/2 game); Weighted* need 0 < p <= 1/2.
  ClosedFormCurve(CurveKind kind, double p, const MarketConfig& cfg);

  double operator()(double bid) const;
  CurveKind kind() const { return kind_; }
  double p() const { return p_; }
  /// Ends of the constant piece and of the transition piece, in order.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Formula tag for each piece between consecutive breakpoints (A, ..., B).
  const std::vector<std::string>& tags() const { return tags_; }
  Json to_json() const;

 private:
  CurveKind kind_;
  double p_;
  MarketConfig cfg_;
  double value_ = 0.5;
  std::vector<double> breakpoints_;
  std::vector<std::string> tags_;
};

enum class ResidualKind { SymmetricSystem, WeightedRowSystem, WeightedColumnSystem };

/// Derived: branch points and lower bounds follow from the payoff rule.
/// Printed: the published form of the row-side system (uses h2 with factor
/// (p+1)/p and branch point A_hat(1)); identical to Derived for the other two.
enum class ResidualForm { Derived, Printed };

/// Residual of the differentiated indifference system at `bid` for density f
/// (f = s.density, zero outside the support). Vanishes on the support of the
/// matching equilibrium and on [E, B].
///   SymmetricSystem:  f(x) - f((x+2E)/3)/3 - [x >= A_1] 3 f(3x - 2E);  -f(x) on [E, B]
///   WeightedRowSystem:  f(x) - p/(p+1) f(f1 x) - [x >= A_check(1)] (2-p)/(1-p) f(h1 x);  -f(x) on [E, B]
///   WeightedColumnSystem: (1-p)/(2-p) f(f2 y) - f(y) + [y >= A_hat(1)] (1+p)/p f(h2 y);  f(y) on [E, B]
double functional_residual(ResidualKind kind, const MixedStrategy& s, double bid, double p,
                           const MarketConfig& cfg, ResidualForm form = ResidualForm::Derived);

}  // namespace procurement
