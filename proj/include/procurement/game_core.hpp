#pragma once

// Award rules of the procurement game: reference price, winner selection and
// the closed payoff forms for two and three bidders.
//
// Convention: a bid equal to the reference price counts as "below" it. Payoff
// comparisons are exact; ties only occur for bit-equal bids.

#include <cstddef>
#include <span>
#include <vector>

#include "procurement/market.hpp"

namespace procurement {

using PayoffVector = std::vector<double>;

/// P = (E + mean(bids)) / 2 = (sum + N E) / (2N).
/// The sum is taken over the bids in ascending order, so P is invariant
/// under permutation of the profile bit for bit.
double reference_price(std::span<const double> bids, const MarketConfig& cfg);

/// Winner set under the award rules: the highest bid with x_j <= P, or the
/// lowest bid overall when nobody is at or below P. Indices are ascending.
std::vector<std::size_t> winners(std::span<const double> bids, const MarketConfig& cfg);

/// Each winner receives 1/|winners|, everybody else 0. Entries sum to 1.
PayoffVector payoff_n(std::span<const double> bids, const MarketConfig& cfg);

/// Literal subset-sum evaluation of the N-player payoff (sum over the sets of
/// opponents tied with player i). Oracle only: refuses N > 6.
PayoffVector payoff_n_combinatorial(std::span<const double> bids, const MarketConfig& cfg);

/// Same as payoff_n except a shared win pays nobody.
PayoffVector payoff_n_tilde(std::span<const double> bids, const MarketConfig& cfg);

/// Player 1's payoff in the two-bidder game, indicator form.
double payoff_2(double x, double y, const MarketConfig& cfg);

/// Player 1's payoff in the three-bidder game, indicator form.
double payoff_3(double x, double y, double z, const MarketConfig& cfg);

/// Threshold t(x_{-i}) = (sum_{j != i} x_j + N E) / (2N - 1), N = others + 1.
/// It is the unique bid x with P(x, x_{-i}) = x.
double threshold_t(std::span<const double> others, const MarketConfig& cfg);

/// Winning deviation against `others`: threshold_t, nudged down by at most a
/// few ulps so that x <= P(x, others) holds in floating point. Callers facing
/// an opponent bid equal to the result must undercut it (see undercut()).
double best_deviation(std::span<const double> others, const MarketConfig& cfg);

/// x - eps clipped to A.
double undercut(double x, double eps, const MarketConfig& cfg);

/// A_i = (A + (3^i - 1) E) / 3^i, the symmetric-game breakpoints. A_0 = A.
double sym_sequence_A(int i, const MarketConfig& cfg);

}  // namespace procurement
