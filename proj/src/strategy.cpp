#include "procurement/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "procurement/rng.hpp"

namespace procurement {

namespace {

constexpr double kMassTol = 1e-12;

[[noreturn]] void reject(const std::string& msg) { throw std::domain_error("strategy: " + msg); }

void check_keys(const Json& obj, const std::set<std::string>& allowed,
                const std::set<std::string>& required, const char* what) {
  if (!obj.is_object()) reject(std::string(what) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) reject(std::string("unknown field '") + item.key() + "' in " + what);
  }
  for (const auto& k : required) {
    if (!obj.contains(k)) reject(std::string("missing field '") + k + "' in " + what);
  }
}

double number_field(const Json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) reject(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string to_string(PieceKind kind) {
  return kind == PieceKind::Uniform ? "uniform" : "reciprocal";
}

MixedStrategy::MixedStrategy(const MarketConfig& cfg, std::vector<Piece> pieces,
                             std::vector<Atom> atoms, bool require_normalized)
    : cfg_(cfg), pieces_(std::move(pieces)), atoms_(std::move(atoms)) {
  cfg_.validate();
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& l, const Piece& r) { return l.a < r.a; });
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });

  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& pc = pieces_[k];
    if (!(std::isfinite(pc.a) && std::isfinite(pc.b) && pc.a < pc.b)) reject("piece needs a < b");
    if (pc.a < cfg_.A || pc.b > cfg_.B) reject("piece outside [A, B]");
    if (!(pc.w > 0.0) || !std::isfinite(pc.w)) reject("piece weight must be positive");
    if (pc.kind == PieceKind::Reciprocal && !(pc.b < cfg_.E)) {
      reject("reciprocal piece must end strictly below E");
    }
    if (k > 0 && pc.a < pieces_[k - 1].b) reject("pieces overlap");
  }
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& at = atoms_[k];
    if (!cfg_.admits(at.x)) reject("atom outside [A, B]");
    if (!(at.m > 0.0) || !std::isfinite(at.m)) reject("atom mass must be positive");
    if (k > 0 && at.x == atoms_[k - 1].x) reject("duplicate atom location");
    for (const Piece& pc : pieces_) {
      if (at.x > pc.a && at.x < pc.b) reject("atom strictly inside a piece");
    }
  }
  if (pieces_.empty() && atoms_.empty()) reject("empty strategy");
  if (require_normalized && std::abs(total_mass() - 1.0) > kMassTol) {
    reject("total mass " + std::to_string(total_mass()) + " differs from 1");
  }
}

MixedStrategy MixedStrategy::make(const MarketConfig& cfg, std::vector<Piece> pieces,
                                  std::vector<Atom> atoms) {
  return MixedStrategy(cfg, std::move(pieces), std::move(atoms), true);
}

MixedStrategy MixedStrategy::make_unnormalized(const MarketConfig& cfg, std::vector<Piece> pieces,
                                               std::vector<Atom> atoms) {
  return MixedStrategy(cfg, std::move(pieces), std::move(atoms), false);
}

MixedStrategy MixedStrategy::point(const MarketConfig& cfg, double x) {
  return make(cfg, {}, {{x, 1.0}});
}

MixedStrategy MixedStrategy::from_json(const Json& j, const MarketConfig& cfg) {
  check_keys(j, {"pieces", "atoms"}, {}, "strategy");
  std::vector<Piece> pieces;
  std::vector<Atom> atoms;
  if (j.contains("pieces")) {
    if (!j["pieces"].is_array()) reject("'pieces' must be an array");
    for (const auto& p : j["pieces"]) {
      check_keys(p, {"kind", "a", "b", "w"}, {"kind", "a", "b", "w"}, "piece");
      if (!p["kind"].is_string()) reject("piece kind must be a string");
      const auto kind = p["kind"].get<std::string>();
      PieceKind pk;
      if (kind == "uniform") pk = PieceKind::Uniform;
      else if (kind == "reciprocal") pk = PieceKind::Reciprocal;
      else reject("unknown piece kind '" + kind + "'");
      pieces.push_back({pk, number_field(p, "a"), number_field(p, "b"), number_field(p, "w")});
    }
  }
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) reject("'atoms' must be an array");
    for (const auto& a : j["atoms"]) {
      check_keys(a, {"x", "m"}, {"x", "m"}, "atom");
      atoms.push_back({number_field(a, "x"), number_field(a, "m")});
    }
  }
  return make(cfg, std::move(pieces), std::move(atoms));
}

Json MixedStrategy::to_json() const {
  Json j;
  j["pieces"] = Json::array();
  for (const Piece& pc : pieces_) {
    j["pieces"].push_back({{"kind", to_string(pc.kind)}, {"a", pc.a}, {"b", pc.b}, {"w", pc.w}});
  }
  j["atoms"] = Json::array();
  for (const Atom& at : atoms_) j["atoms"].push_back({{"x", at.x}, {"m", at.m}});
  return j;
}

double MixedStrategy::total_mass() const {
  double s = 0.0;
  for (const Piece& pc : pieces_) s += pc.w;
  for (const Atom& at : atoms_) s += at.m;
  return s;
}

double MixedStrategy::piece_cdf(const Piece& pc, double x) const {
  if (x <= pc.a) return 0.0;
  if (x >= pc.b) return pc.w;
  if (pc.kind == PieceKind::Uniform) return pc.w * (x - pc.a) / (pc.b - pc.a);
  const double E = cfg_.E;
  return pc.w * std::log((E - pc.a) / (E - x)) / std::log((E - pc.a) / (E - pc.b));
}

double MixedStrategy::piece_inverse(const Piece& pc, double mass) const {
  const double frac = std::clamp(mass / pc.w, 0.0, 1.0);
  if (pc.kind == PieceKind::Uniform) return std::min(pc.a + (pc.b - pc.a) * frac, pc.b);
  const double E = cfg_.E;
  const double L = std::log((E - pc.a) / (E - pc.b));
  return std::clamp(E - (E - pc.a) * std::exp(-frac * L), pc.a, pc.b);
}

double MixedStrategy::cdf(double x) const {
  double s = 0.0;
  for (const Piece& pc : pieces_) s += piece_cdf(pc, x);
  for (const Atom& at : atoms_) {
    if (at.x <= x) s += at.m;
  }
  return s;
}

double MixedStrategy::cdf_left(double x) const {
  double s = 0.0;
  for (const Piece& pc : pieces_) s += piece_cdf(pc, x);
  for (const Atom& at : atoms_) {
    if (at.x < x) s += at.m;
  }
  return s;
}

double MixedStrategy::continuous_mass(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  double s = 0.0;
  for (const Piece& pc : pieces_) {
    if (hi <= pc.a || lo >= pc.b) continue;
    s += piece_cdf(pc, hi) - piece_cdf(pc, lo);
  }
  return s;
}

double MixedStrategy::measure(double lo, double hi, bool lo_closed, bool hi_closed) const {
  double s = continuous_mass(lo, hi);
  for (const Atom& at : atoms_) {
    const bool above = lo_closed ? at.x >= lo : at.x > lo;
    const bool below = hi_closed ? at.x <= hi : at.x < hi;
    if (above && below) s += at.m;
  }
  return s;
}

double MixedStrategy::atom_mass(double x) const {
  for (const Atom& at : atoms_) {
    if (at.x == x) return at.m;
  }
  return 0.0;
}

double MixedStrategy::density(double x) const {
  double d = 0.0;
  for (const Piece& pc : pieces_) {
    if (x < pc.a || x >= pc.b) continue;
    if (pc.kind == PieceKind::Uniform) {
      d += pc.w / (pc.b - pc.a);
    } else {
      const double E = cfg_.E;
      d += pc.w / (std::log((E - pc.a) / (E - pc.b)) * (E - x));
    }
  }
  return d;
}

double MixedStrategy::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  // Walk atoms and pieces in order of position; an atom at a piece's left
  // end comes first.
  std::size_t ia = 0, ip = 0;
  double cum = 0.0;
  double last = cfg_.A;
  while (ia < atoms_.size() || ip < pieces_.size()) {
    const bool take_atom =
        ip >= pieces_.size() || (ia < atoms_.size() && atoms_[ia].x <= pieces_[ip].a);
    if (take_atom) {
      const Atom& at = atoms_[ia++];
      if (u <= cum + at.m) return at.x;
      cum += at.m;
      last = at.x;
    } else {
      const Piece& pc = pieces_[ip++];
      if (u <= cum + pc.w) return piece_inverse(pc, u - cum);
      cum += pc.w;
      last = pc.b;
    }
  }
  return last;
}

std::vector<double> MixedStrategy::sample(std::uint64_t seed, std::size_t n) const {
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = quantile(rng.uniform());
  return out;
}

std::vector<double> MixedStrategy::breakpoints() const {
  std::vector<double> bp;
  for (const Piece& pc : pieces_) {
    bp.push_back(pc.a);
    bp.push_back(pc.b);
  }
  for (const Atom& at : atoms_) bp.push_back(at.x);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace procurement
