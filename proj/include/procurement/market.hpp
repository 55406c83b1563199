#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace procurement {

/// Admissible bid interval [A, B] and the authority's cost estimate E.
/// A non-degenerate market has A < E < B.
struct MarketConfig {
  double A = 0.0;
  double B = 1.5;
  double E = 1.0;

  /// Throws std::domain_error unless A < E < B and all three are finite.
  void validate() const;

  bool admits(double bid) const { return bid >= A && bid <= B; }
  double width() const { return B - A; }
};

/// Validated constructor.
MarketConfig make_market(double A, double B, double E);

/// Throws std::domain_error if `bid` lies outside [A, B] (or is NaN).
void require_bid(double bid, const MarketConfig& cfg, const char* what = "bid");

/// Throws std::domain_error unless N >= 2 and every bid is admissible.
void require_profile(std::span<const double> bids, const MarketConfig& cfg);

}  // namespace procurement
