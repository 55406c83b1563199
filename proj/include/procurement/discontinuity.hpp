#pragma once

// Discontinuity loci of player i's payoff in the N-bidder game.

#include <cstddef>
#include <span>
#include <string>

#include "procurement/market.hpp"

namespace procurement {

enum class DiscontinuityClass { Tie, FixedPoint, Transition, Continuity };

std::string to_string(DiscontinuityClass c);

/// Comparisons use absolute tolerance 1e-12.
///   Tie:        x_i shares the win with at least one other bidder.
///   FixedPoint: x_i = threshold_t(x_{-i}) and player i wins.
///   Transition: x_i is the bid that puts P exactly on the best opponent
///               bid at or below the threshold,
///               x_i = (2N - 1) x_j - sum_{k != i, j} x_k - N E,
///               and player i does not win.
///   Continuity: none of the above.
/// Checked in that order.
DiscontinuityClass classify_discontinuity(std::size_t i, std::span<const double> bids,
                                          const MarketConfig& cfg);

}  // namespace procurement
