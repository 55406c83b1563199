#pragma once

// Weighted two-bidder game: the reference price puts weight p on player 1's
// bid and 1 - p on player 2's. A tie pays p to player 1 and 1 - p to player 2.

#include <string>
#include <vector>

#include "procurement/market.hpp"

namespace procurement {

/// P = (p x + (1 - p) y + E) / 2.
double weighted_reference_price(double x, double y, double p, const MarketConfig& cfg);

/// Player 1's payoff. Requires p in [0, 1]; player 2 receives 1 minus this.
double payoff_weighted(double x, double y, double p, const MarketConfig& cfg);

/// The four affine maps attached to weight p (requires 0 < p < 1).
///   f1(x) = (p x + E) / (p + 1)          value of y solving y = P(x, y)
///   f2(x) = ((1 - p) x + E) / (2 - p)    value of x solving x = P(x, y)
///   h1 = f2^{-1},  h2 = f1^{-1}
struct WeightMaps {
  double p;
  double E;
  double f1(double x) const { return (p * x + E) / (p + 1.0); }
  double f2(double x) const { return ((1.0 - p) * x + E) / (2.0 - p); }
  double h1(double x) const { return ((2.0 - p) * x - E) / (1.0 - p); }
  double h2(double x) const { return ((p + 1.0) * x - E) / p; }
};

WeightMaps make_maps(double p, const MarketConfig& cfg);

constexpr int kMaxSequenceIndex = 64;

/// Breakpoint sequences of the weighted game. Index i of every vector holds
/// the element with subscript i. Seeds: a_hat[0] = a_check[0] = A; the two
/// D sequences start at subscript 1 (entry 0 is NaN).
///   a_hat[i] = f1(a_hat[i-1])      a_check[i] = f2(a_check[i-1])
///   c_hat[i] = h1(a_hat[i])        c_check[i] = h2(a_check[i+1])
///   d_hat[i+1] = f2(d_hat[i])      d_check[i+1] = f1(d_check[i])
struct WeightedSequences {
  double p = 0.5;
  std::vector<double> a_hat, a_check, c_hat, c_check, d_hat, d_check;

  double A_hat(int i) const { return a_hat.at(static_cast<std::size_t>(i)); }
  double A_check(int i) const { return a_check.at(static_cast<std::size_t>(i)); }
  double C_hat(int i) const { return c_hat.at(static_cast<std::size_t>(i)); }
  double C_check(int i) const { return c_check.at(static_cast<std::size_t>(i)); }
  double D_hat(int i) const { return d_hat.at(static_cast<std::size_t>(i)); }
  double D_check(int i) const { return d_check.at(static_cast<std::size_t>(i)); }
};

/// Requires 0 < p < 1 and 1 <= i_max <= kMaxSequenceIndex.
WeightedSequences weighted_sequences(double p, int i_max, const MarketConfig& cfg);

/// (5 - sqrt 13) / 6, the root in (0, 1/2) of 3p^2 - 5p + 1.
double critical_p();

enum class Regime { Symmetric, Intermediate, Critical, LowP, Degenerate };

std::string to_string(Regime r);

/// Classification of p in [0, 1/2]. Critical within 1e-12 of critical_p(),
/// Symmetric within 1e-12 of 1/2. Throws std::domain_error outside [0, 1/2].
Regime regime(double p);

/// Largest i with A_check(2 + i) <= D_check(1). Requires 0 < p < critical_p().
int low_p_m(double p, const MarketConfig& cfg);

struct Interval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool contains(double v) const {
    const bool above = lo_closed ? v >= lo : v > lo;
    const bool below = hi_closed ? v <= hi : v < hi;
    return above && below;
  }
  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  double length() const { return empty() ? 0.0 : hi - lo; }
};

enum class Side { AsRow, AsColumn };

/// Derived: endpoints follow from the payoff rule.
/// Published: the row-side lower bound uses h2 instead of h1 (kept for
/// comparison only; it is wrong unless p = 1/2).
enum class RegionVariant { Derived, Published };

/// Bids of the other side against which player 1 (the row) strictly wins:
/// AsRow takes the row's bid x and returns column bids, AsColumn takes the
/// column's bid y and returns row bids.
///   AsRow, x <= E:    [h1(x), x) U (f1(x), B]    AsRow, x > E:    (x, B]
///   AsColumn, y <= E: [A, h2(y)) U (y, f2(y)]    AsColumn, y > E: [A, y)
/// Pieces are clipped to [A, B]; empty pieces are dropped.
std::vector<Interval> strict_win_regions(double bid, Side side, double p, const MarketConfig& cfg,
                                         RegionVariant variant = RegionVariant::Derived);

bool in_regions(const std::vector<Interval>& regions, double v);

}  // namespace procurement
