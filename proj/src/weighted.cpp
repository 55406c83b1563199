#include "procurement/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "procurement/game_core.hpp"

namespace procurement {

namespace {

void require_weight(double p, double lo, double hi, const char* what) {
  if (!(p >= lo && p <= hi)) {
    throw std::domain_error(std::string(what) + ": weight p=" + std::to_string(p) +
                            " out of range");
  }
}

}  // namespace

double weighted_reference_price(double x, double y, double p, const MarketConfig& cfg) {
  require_weight(p, 0.0, 1.0, "weighted_reference_price");
  require_bid(x, cfg, "x");
  require_bid(y, cfg, "y");
  return (p * x + (1.0 - p) * y + cfg.E) / 2.0;
}

double payoff_weighted(double x, double y, double p, const MarketConfig& cfg) {
  const double P = weighted_reference_price(x, y, p, cfg);
  double g = 0.0;
  if (y < x && x <= P) g += 1.0;
  if (P < x && x < y) g += 1.0;
  if (x <= P && P < y) g += 1.0;
  if (x == y) g += p;
  return g;
}

WeightMaps make_maps(double p, const MarketConfig& cfg) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("weight maps need 0 < p < 1, got " + std::to_string(p));
  }
  cfg.validate();
  return WeightMaps{p, cfg.E};
}

WeightedSequences weighted_sequences(double p, int i_max, const MarketConfig& cfg) {
  if (i_max < 1 || i_max > kMaxSequenceIndex) {
    throw std::domain_error("weighted_sequences: i_max must be in [1, 64]");
  }
  const WeightMaps m = make_maps(p, cfg);
  const double A = cfg.A, E = cfg.E;
  const auto n = static_cast<std::size_t>(i_max) + 1;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  WeightedSequences s;
  s.p = p;
  s.a_hat.assign(n, A);
  // One extra entry so that c_check[i_max] = h2(a_check[i_max + 1]) exists.
  s.a_check.assign(n + 1, A);
  s.c_hat.assign(n, nan);
  s.c_check.assign(n, nan);
  s.d_hat.assign(n, nan);
  s.d_check.assign(n, nan);

  for (std::size_t i = 1; i < n; ++i) s.a_hat[i] = m.f1(s.a_hat[i - 1]);
  for (std::size_t i = 1; i < n + 1; ++i) s.a_check[i] = m.f2(s.a_check[i - 1]);
  for (std::size_t i = 0; i < n; ++i) {
    s.c_hat[i] = m.h1(s.a_hat[i]);
    s.c_check[i] = m.h2(s.a_check[i + 1]);
  }
  s.a_check.pop_back();

  const double q = 1.0 - p;
  s.d_hat[1] = ((p + 1.0) * q * q * A + ((5.0 - 3.0 * p) * p - 1.0) * E) / (p * (2.0 - p) * (2.0 - p));
  s.d_check[1] = (2.0 * E + p * q * A) / ((2.0 - p) * (p + 1.0));
  for (std::size_t i = 2; i < n; ++i) {
    s.d_hat[i] = m.f2(s.d_hat[i - 1]);
    s.d_check[i] = m.f1(s.d_check[i - 1]);
  }
  return s;
}

double critical_p() { return (5.0 - std::sqrt(13.0)) / 6.0; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Symmetric: return "Symmetric";
    case Regime::Intermediate: return "Intermediate";
    case Regime::Critical: return "Critical";
    case Regime::LowP: return "LowP";
    case Regime::Degenerate: return "Degenerate";
  }
  return "?";
}

Regime regime(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error("regime: p must lie in [0, 1/2], got " + std::to_string(p));
  }
  constexpr double tol = 1e-12;
  if (p == 0.0) return Regime::Degenerate;
  if (std::abs(p - 0.5) <= tol) return Regime::Symmetric;
  if (std::abs(p - critical_p()) <= tol) return Regime::Critical;
  return p < critical_p() ? Regime::LowP : Regime::Intermediate;
}

int low_p_m(double p, const MarketConfig& cfg) {
  if (!(p > 0.0 && p < critical_p())) {
    throw std::domain_error("low_p_m: p must lie in (0, p*)");
  }
  const auto s = weighted_sequences(p, kMaxSequenceIndex, cfg);
  const double d1 = s.D_check(1);
  int m = 0;
  for (int i = 1; 2 + i <= kMaxSequenceIndex; ++i) {
    if (s.A_check(2 + i) <= d1) m = i;
    else break;
  }
  if (m < 1) throw std::logic_error("low_p_m: scan found no admissible index");
  return m;
}

std::vector<Interval> strict_win_regions(double bid, Side side, double p, const MarketConfig& cfg,
                                         RegionVariant variant) {
  const WeightMaps m = make_maps(p, cfg);
  require_bid(bid, cfg, "bid");
  const double A = cfg.A, B = cfg.B, E = cfg.E;

  std::vector<Interval> raw;
  if (side == Side::AsRow) {
    if (bid <= E) {
      const double lower = variant == RegionVariant::Derived ? m.h1(bid) : m.h2(bid);
      raw.push_back({std::max(A, lower), bid, true, false});
      raw.push_back({std::min(m.f1(bid), B), B, false, true});
    } else {
      raw.push_back({bid, B, false, true});
    }
  } else {
    if (bid <= E) {
      raw.push_back({A, std::min(std::max(m.h2(bid), A), B), true, false});
      raw.push_back({bid, std::min(m.f2(bid), B), false, true});
    } else {
      raw.push_back({A, bid, true, false});
    }
  }
  std::vector<Interval> out;
  for (const auto& iv : raw) {
    if (!iv.empty()) out.push_back(iv);
  }
  return out;
}

bool in_regions(const std::vector<Interval>& regions, double v) {
  return std::any_of(regions.begin(), regions.end(), [v](const Interval& iv) { return iv.contains(v); });
}

}  // namespace procurement
