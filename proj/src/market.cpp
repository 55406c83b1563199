#include "procurement/market.hpp"

#include <cmath>

namespace procurement {

void MarketConfig::validate() const {
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(E)) {
    throw std::domain_error("market config: A, B, E must be finite");
  }
  if (!(A < E && E < B)) {
    throw std::domain_error("market config: require A < E < B");
  }
}

MarketConfig make_market(double A, double B, double E) {
  MarketConfig cfg{A, B, E};
  cfg.validate();
  return cfg;
}

void require_bid(double bid, const MarketConfig& cfg, const char* what) {
  if (!cfg.admits(bid)) {
    throw std::domain_error(std::string(what) + " " + std::to_string(bid) + " outside [" +
                            std::to_string(cfg.A) + ", " + std::to_string(cfg.B) + "]");
  }
}

void require_profile(std::span<const double> bids, const MarketConfig& cfg) {
  if (bids.size() < 2) {
    throw std::domain_error("profile needs at least two bids");
  }
  for (double b : bids) require_bid(b, cfg);
}

}  // namespace procurement
