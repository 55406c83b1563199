#pragma once

// Hand-rolled seeded generators for property tests.

#include <algorithm>
#include <vector>

#include "procurement/market.hpp"
#include "procurement/rng.hpp"
#include "procurement/strategy.hpp"

namespace gen {

using procurement::MarketConfig;
using procurement::SplitMix64;

// Bids over [A, B]; with probability tie_rate a random subset shares one bid.
// A fraction of bids is drawn from a coarse lattice so that ties with E and
// with each other also come up.
inline std::vector<double> profile(SplitMix64& rng, int N, const MarketConfig& cfg, double tie_rate = 0.25) {
  std::vector<double> b(static_cast<std::size_t>(N));
  for (auto& v : b) {
    v = rng.uniform() < 0.2 ? cfg.A + cfg.width() * static_cast<double>(rng.below(13)) / 12.0
                            : rng.uniform(cfg.A, cfg.B);
  }
  if (rng.uniform() < tie_rate) {
    const std::size_t src = rng.below(b.size());
    const std::size_t dst = (src + 1 + rng.below(b.size() - 1)) % b.size();
    b[dst] = b[src];
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (k != src && rng.uniform() < 0.3) b[k] = b[src];
    }
  }
  return b;
}

// Random valid strategy: up to three pieces on alternate cells of a random
// partition, atoms on unused cell edges, positive weights summing to 1.
inline procurement::MixedStrategy strategy(SplitMix64& rng, const MarketConfig& cfg, bool allow_atoms = true) {
  using procurement::Atom;
  using procurement::Piece;
  using procurement::PieceKind;
  std::vector<double> cuts{cfg.A, cfg.B};
  for (int k = 0; k < 5; ++k) cuts.push_back(rng.uniform(cfg.A, cfg.B));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> pieces;
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k + 1 < cuts.size(); k += 2) {
    const double a = cuts[k], b = cuts[k + 1];
    if (!(a < b) || rng.uniform() < 0.25) continue;
    const bool recip = b < cfg.E && rng.uniform() < 0.5;
    pieces.push_back({recip ? PieceKind::Reciprocal : PieceKind::Uniform, a, b, rng.uniform(0.1, 1.0)});
  }
  if (allow_atoms) {
    for (std::size_t k = 1; k + 1 < cuts.size(); k += 2) {
      const double x = cuts[k + 1] > cuts[k] ? 0.5 * (cuts[k] + cuts[k + 1]) : cuts[k];
      if (rng.uniform() < 0.4) atoms.push_back({x, rng.uniform(0.05, 0.5)});
    }
  }
  if (pieces.empty() && atoms.empty()) pieces.push_back({PieceKind::Uniform, cfg.A, cfg.B, 1.0});
  double total = 0.0;
  for (const auto& p : pieces) total += p.w;
  for (const auto& a : atoms) total += a.m;
  for (auto& p : pieces) p.w /= total;
  for (auto& a : atoms) a.m /= total;
  // Absorb rounding into the first component so the mass is 1 to the ulp.
  double sum = 0.0;
  for (const auto& p : pieces) sum += p.w;
  for (const auto& a : atoms) sum += a.m;
  if (!pieces.empty()) pieces[0].w += 1.0 - sum;
  else atoms[0].m += 1.0 - sum;
  return procurement::MixedStrategy::make(cfg, pieces, atoms);
}

}  // namespace gen
