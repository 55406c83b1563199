#include "procurement/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace procurement {

namespace {

double sorted_sum(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double price_unchecked(std::span<const double> bids, double E) {
  const auto n = static_cast<double>(bids.size());
  return (sorted_sum(bids) + n * E) / (2.0 * n);
}

std::vector<std::size_t> winners_at(std::span<const double> bids, double P) {
  bool any_below = false;
  double best = 0.0;
  for (double b : bids) {
    if (b <= P) {
      if (!any_below || b > best) best = b;
      any_below = true;
    }
  }
  if (!any_below) best = *std::min_element(bids.begin(), bids.end());
  std::vector<std::size_t> w;
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (bids[j] == best) w.push_back(j);
  }
  return w;
}

}  // namespace

double reference_price(std::span<const double> bids, const MarketConfig& cfg) {
  require_profile(bids, cfg);
  return price_unchecked(bids, cfg.E);
}

std::vector<std::size_t> winners(std::span<const double> bids, const MarketConfig& cfg) {
  return winners_at(bids, reference_price(bids, cfg));
}

PayoffVector payoff_n(std::span<const double> bids, const MarketConfig& cfg) {
  const auto w = winners(bids, cfg);
  PayoffVector out(bids.size(), 0.0);
  const double share = 1.0 / static_cast<double>(w.size());
  for (auto j : w) out[j] = share;
  return out;
}

PayoffVector payoff_n_combinatorial(std::span<const double> bids, const MarketConfig& cfg) {
  const std::size_t N = bids.size();
  if (N > 6) throw std::invalid_argument("payoff_n_combinatorial: N > 6 refused");
  const double P = reference_price(bids, cfg);

  PayoffVector out(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const double xi = bids[i];
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < N; ++j) {
      if (j != i) others.push_back(j);
    }
    const unsigned subsets = 1u << others.size();
    double g = 0.0;
    for (unsigned mask = 0; mask < subsets; ++mask) {
      auto in_J = [&](std::size_t j) {
        for (std::size_t k = 0; k < others.size(); ++k) {
          if (others[k] == j) return ((mask >> k) & 1u) != 0;
        }
        return false;
      };
      int n = 0;
      double tied = 1.0;
      for (std::size_t k = 0; k < others.size(); ++k) {
        if ((mask >> k) & 1u) {
          ++n;
          if (bids[others[k]] != xi) tied = 0.0;
        }
      }
      if (tied == 0.0) continue;

      double below_branch = 0.0;
      if (xi <= P) {
        below_branch = 1.0;
        // Opponents at or below P that are not in J must sit strictly under x_i.
        for (auto j : others) {
          if (bids[j] <= P && !in_J(j) && !(bids[j] < xi)) below_branch = 0.0;
        }
      }
      double above_branch = 0.0;
      if (xi > P) {
        above_branch = 1.0;
        for (auto j : others) {
          if (!in_J(j) && !(xi < bids[j])) above_branch = 0.0;
        }
      }
      g += (below_branch + above_branch) / static_cast<double>(n + 1);
    }
    out[i] = g;
  }
  return out;
}

PayoffVector payoff_n_tilde(std::span<const double> bids, const MarketConfig& cfg) {
  const auto w = winners(bids, cfg);
  PayoffVector out(bids.size(), 0.0);
  if (w.size() == 1) out[w.front()] = 1.0;
  return out;
}

double payoff_2(double x, double y, const MarketConfig& cfg) {
  const double bids[2] = {x, y};
  const double P = reference_price(bids, cfg);
  double g = 0.0;
  if (y < x && x <= P) g += 1.0;
  if (P < x && x < y) g += 1.0;
  if (x <= P && P < y) g += 1.0;
  if (x == y) g += 0.5;
  return g;
}

double payoff_3(double x, double y, double z, const MarketConfig& cfg) {
  const double bids[3] = {x, y, z};
  const double P = reference_price(bids, cfg);
  double g = 0.0;
  // sole win
  if (z <= y && y < x && x <= P) g += 1.0;
  if (y < z && z < x && x <= P) g += 1.0;
  if (y < x && x <= P && P < z) g += 1.0;
  if (z < x && x <= P && P < y) g += 1.0;
  if (x <= P && P < z && z <= y) g += 1.0;
  if (x <= P && P < y && y < z) g += 1.0;
  if (P < x && x < z && z <= y) g += 1.0;
  if (P < x && x < y && y < z) g += 1.0;
  // two-way ties
  double half = 0.0;
  if (z < y && y == x && x <= P) half += 1.0;
  if (y < z && z == x && x <= P) half += 1.0;
  if (y == x && x <= P && P < z) half += 1.0;
  if (z == x && x <= P && P < y) half += 1.0;
  if (P < y && y == x && x < z) half += 1.0;
  if (P < z && z == x && x < y) half += 1.0;
  g += 0.5 * half;
  if (x == y && y == z) g += 1.0 / 3.0;
  return g;
}

double threshold_t(std::span<const double> others, const MarketConfig& cfg) {
  if (others.empty()) throw std::domain_error("threshold_t: need at least one opponent");
  for (double b : others) require_bid(b, cfg, "opponent bid");
  const auto N = static_cast<double>(others.size() + 1);
  return (sorted_sum(others) + N * cfg.E) / (2.0 * N - 1.0);
}

double best_deviation(std::span<const double> others, const MarketConfig& cfg) {
  double x = std::clamp(threshold_t(others, cfg), cfg.A, cfg.B);
  std::vector<double> profile(others.begin(), others.end());
  profile.push_back(x);
  for (int guard = 0; guard < 64; ++guard) {
    profile.back() = x;
    if (x <= price_unchecked(profile, cfg.E) || x <= cfg.A) break;
    x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  }
  return x;
}

double undercut(double x, double eps, const MarketConfig& cfg) {
  return std::max(cfg.A, x - eps);
}

double sym_sequence_A(int i, const MarketConfig& cfg) {
  if (i < 0) throw std::domain_error("sym_sequence_A: index must be >= 0");
  const double pow3 = std::pow(3.0, i);
  return (cfg.A + (pow3 - 1.0) * cfg.E) / pow3;
}

}  // namespace procurement
