#include "procurement/discontinuity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "procurement/game_core.hpp"

namespace procurement {

namespace {
constexpr double kTol = 1e-12;
}

std::string to_string(DiscontinuityClass c) {
  switch (c) {
    case DiscontinuityClass::Tie: return "Tie";
    case DiscontinuityClass::FixedPoint: return "FixedPoint";
    case DiscontinuityClass::Transition: return "Transition";
    case DiscontinuityClass::Continuity: return "Continuity";
  }
  return "?";
}

DiscontinuityClass classify_discontinuity(std::size_t i, std::span<const double> bids,
                                          const MarketConfig& cfg) {
  require_profile(bids, cfg);
  if (i >= bids.size()) throw std::out_of_range("classify_discontinuity: bad player index");
  const std::size_t N = bids.size();
  const double xi = bids[i];

  // Snap bids within tolerance of x_i onto x_i before applying the rules.
  std::vector<double> snapped(bids.begin(), bids.end());
  bool near_tie = false;
  for (std::size_t k = 0; k < N; ++k) {
    if (k != i && std::abs(snapped[k] - xi) <= kTol) {
      snapped[k] = xi;
      near_tie = true;
    }
  }
  const auto g = payoff_n(snapped, cfg);
  if (near_tie && g[i] > 0.0 && g[i] < 1.0) return DiscontinuityClass::Tie;

  std::vector<double> others;
  for (std::size_t k = 0; k < N; ++k) {
    if (k != i) others.push_back(bids[k]);
  }
  const double t = threshold_t(others, cfg);
  if (std::abs(xi - t) <= kTol && g[i] == 1.0) return DiscontinuityClass::FixedPoint;

  // Best opponent bid at or below the threshold.
  bool found = false;
  std::size_t jbest = 0;
  for (std::size_t k = 0; k < N; ++k) {
    if (k == i || bids[k] > t) continue;
    if (!found || bids[k] > bids[jbest]) {
      jbest = k;
      found = true;
    }
  }
  if (found && g[i] == 0.0) {
    double rest = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      if (k != i && k != jbest) rest += bids[k];
    }
    const auto n = static_cast<double>(N);
    const double target = (2.0 * n - 1.0) * bids[jbest] - rest - n * cfg.E;
    if (std::abs(xi - target) <= kTol) return DiscontinuityClass::Transition;
  }
  return DiscontinuityClass::Continuity;
}

}  // namespace procurement
