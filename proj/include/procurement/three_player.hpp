#pragma once

// Geometry of player 1's payoff x -> g(x, y, z) in the three-bidder game with
// the opponents' bids (y, z) held fixed.

#include <array>
#include <stdexcept>
#include <string>

#include "procurement/market.hpp"

namespace procurement {

/// t solves P(t, y, z) = t; p_y and p_z solve P(x, y, z) = y and = z.
/// They satisfy p_y - y = 5(y - t), p_z - z = 5(z - t), p_y - p_z = 6(y - z).
struct Cutpoints3 {
  double t;
  double p_y;
  double p_z;
};

/// t = (y + z + 3E)/5, p_y = 5y - 3E - z, p_z = 5z - 3E - y. Not clipped.
Cutpoints3 cutpoints3(double y, double z, const MarketConfig& cfg);

enum class CellTag { O1, O2, O3, O4, O5 };

/// Strict order of {p_y, p_z, y, z, t}. `mirrored` is set when z < y; the tag
/// then describes the order after swapping the two opponents.
///   O1: p_y < p_z < y < z < t     O2: p_y < y < p_z < z < t
///   O3: p_y < y < t < z < p_z
///   O4: t < y < z < p_y < p_z     O5: t < y < p_y < z < p_z
struct OrderingCell {
  CellTag tag;
  bool mirrored;
};

std::string to_string(CellTag tag);
std::string to_string(const OrderingCell& cell);

/// Raised for (y, z) where two of the five cutpoints coincide.
class BoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws BoundaryError when two cutpoints coincide (within 1e-12 relative), and std::logic_error if
/// the order matches none of the five cells (cannot happen by the relations
/// above; kept as an internal consistency check).
OrderingCell ordering_cell(double y, double z, const MarketConfig& cfg);

/// Jump g(s+) - g(s-) of player 1's payoff at each cutpoint, in the order
/// (y, p_y, z, p_z, t) of the actual opponents (mirroring already applied).
struct JumpRow {
  int y, p_y, z, p_z, t;
  bool operator==(const JumpRow&) const = default;
};

JumpRow jump_signs(const OrderingCell& cell);

}  // namespace procurement
