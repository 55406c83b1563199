#pragma once

// Mixed strategies on [A, B]: finitely many uniform pieces, reciprocal-density
// pieces (density proportional to 1/(E - x)) and atoms.

#include <cstdint>
#include <string>
#include <vector>

#include "procurement/market.hpp"
#include "procurement/report.hpp"

namespace procurement {

enum class PieceKind { Uniform, Reciprocal };

/// Mass w spread over [a, b).
struct Piece {
  PieceKind kind;
  double a;
  double b;
  double w;
};

struct Atom {
  double x;
  double m;
};

class MixedStrategy {
 public:
  /// Validated construction. Requirements:
  ///   A <= a < b <= B for every piece, b < E for reciprocal pieces;
  ///   pieces pairwise disjoint; atoms inside [A, B] and not strictly inside
  ///   a piece; weights and masses positive; total mass 1 within 1e-12.
  /// Throws std::domain_error otherwise.
  static MixedStrategy make(const MarketConfig& cfg, std::vector<Piece> pieces,
                            std::vector<Atom> atoms = {});

  /// Same structural checks but the total mass is not required to be 1.
  /// Used to build deliberately broken strategies for fault injection.
  static MixedStrategy make_unnormalized(const MarketConfig& cfg, std::vector<Piece> pieces,
                                         std::vector<Atom> atoms = {});

  static MixedStrategy point(const MarketConfig& cfg, double x);

  /// Parses {"pieces":[{"kind":"uniform"|"reciprocal","a":..,"b":..,"w":..}],
  /// "atoms":[{"x":..,"m":..}]}. Unknown or missing fields are rejected.
  static MixedStrategy from_json(const Json& j, const MarketConfig& cfg);
  Json to_json() const;

  const MarketConfig& market() const { return cfg_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double total_mass() const;

  /// P(X <= x).
  double cdf(double x) const;
  /// P(X < x).
  double cdf_left(double x) const;
  /// Mass of the absolutely continuous part on [lo, hi] (endpoints irrelevant).
  double continuous_mass(double lo, double hi) const;
  /// Mass of an interval with the given endpoint conventions.
  double measure(double lo, double hi, bool lo_closed, bool hi_closed) const;
  double atom_mass(double x) const;
  /// Density of the continuous part (pieces are [a, b)).
  double density(double x) const;

  /// Smallest x with cdf(x) >= u, u in [0, 1].
  double quantile(double u) const;

  /// Inverse-transform sampling on a SplitMix64 stream seeded with `seed`.
  std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

  /// Piece endpoints and atom locations, sorted and deduplicated.
  std::vector<double> breakpoints() const;

 private:
  MixedStrategy(const MarketConfig& cfg, std::vector<Piece> pieces, std::vector<Atom> atoms,
                bool require_normalized);

  double piece_cdf(const Piece& pc, double x) const;
  double piece_inverse(const Piece& pc, double mass) const;

  MarketConfig cfg_;
  std::vector<Piece> pieces_;  // sorted by a
  std::vector<Atom> atoms_;    // sorted by x
};

std::string to_string(PieceKind kind);

}  // namespace procurement
