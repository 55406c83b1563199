#pragma once

// Expected payoffs of the two-bidder games against mixed strategies.
//
// For a fixed own bid the payoff is piecewise constant in the opponent's bid,
// so expectations against a strategy reduce to interval measures (exact CDF
// differences). Double expectations integrate those against the other
// strategy's density on panels free of kinks, with adaptive Gauss-Kronrod.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "procurement/market.hpp"
#include "procurement/strategy.hpp"
#include "procurement/weighted.hpp"

namespace procurement {

/// Row player's payoff g(x, y) in the symmetric game (p = 1/2, payoff_2) or
/// the weighted game (payoff_weighted with weight p).
struct TwoPlayerKernel {
  enum class Kind { Symmetric, Weighted };
  Kind kind = Kind::Symmetric;
  double p = 0.5;
  MarketConfig cfg;

  static TwoPlayerKernel symmetric(const MarketConfig& cfg);
  /// Requires 0 < p < 1.
  static TwoPlayerKernel weighted(double p, const MarketConfig& cfg);

  double operator()(double x, double y) const;
  double tie_payoff() const { return kind == Kind::Symmetric ? 0.5 : p; }
  WeightMaps maps() const { return make_maps(p, cfg); }

  /// Column bids against which row bid x strictly wins.
  std::vector<Interval> row_wins(double x) const;
  /// Row bids that strictly beat column bid y.
  std::vector<Interval> row_wins_against(double y) const;
};

struct QuadratureSpec {
  double rel_tol = 1e-9;
  unsigned max_depth = 15;
  /// Extra points where integrands may jump; panels never straddle them.
  std::vector<double> cutpoints;
  /// When set, panels on which the kernel is constant use exact CDF
  /// differences instead of numeric quadrature.
  bool exact_panels = true;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Adaptive Gauss-Kronrod (15 points) of f on [a, b]. Throws QuadratureError
/// when the error estimate stays above rel_tol * L1 norm (absolute floor 1e-14).
double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       const QuadratureSpec& q);

/// Integral of F against strategy s: atoms exactly, pieces panel by panel
/// with the given interior cutpoints.
double integrate_against(const MixedStrategy& s, const std::function<double(double)>& F,
                         const std::vector<double>& cutpoints, const QuadratureSpec& q);

/// Row payoff of pure bid x against column strategy nu: E_nu[g(x, Y)].
double expect_vs(double x, const MixedStrategy& nu, const TwoPlayerKernel& kernel,
                 const QuadratureSpec& q = {});

/// Row payoff when the row plays mu and the column plays pure y: E_mu[g(X, y)].
double expect_vs_column(const MixedStrategy& mu, double y, const TwoPlayerKernel& kernel,
                        const QuadratureSpec& q = {});

struct JointExpectation {
  double outer = 0.0;                 // integral over mu of expect_vs(x, nu)
  std::optional<double> by_column;    // CDF form integrating over nu (symmetric only)
  std::optional<double> by_row;       // CDF form integrating over mu (symmetric only)
  std::optional<double> by_row_printed_limits;  // by_row with the literal published limits
  double gap = 0.0;                   // max pairwise difference of the first three
};

/// G(mu, nu). The two closed CDF forms are evaluated for the symmetric kernel
/// only; `with_closed_forms` on a weighted kernel throws std::invalid_argument.
JointExpectation expect_joint(const MixedStrategy& mu, const MixedStrategy& nu,
                              const TwoPlayerKernel& kernel, const QuadratureSpec& q = {},
                              bool with_closed_forms = true);

}  // namespace procurement
