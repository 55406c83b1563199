#include "procurement/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "procurement/game_core.hpp"
#include "procurement/matrix_game.hpp"
#include "procurement/oracle.hpp"

namespace procurement {

namespace {

void require_weighted_p(double p, const char* what) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error(std::string(what) + ": need 0 < p <= 1/2, got " + std::to_string(p));
  }
}

MixedStrategy reciprocal_on(double a, double b, const MarketConfig& cfg) {
  return MixedStrategy::make(cfg, {{PieceKind::Reciprocal, a, b, 1.0}});
}

}  // namespace

MixedStrategy uniform_equilibrium(const MarketConfig& cfg) {
  const double A1 = sym_sequence_A(1, cfg), A2 = sym_sequence_A(2, cfg);
  return MixedStrategy::make(cfg, {{PieceKind::Uniform, cfg.A, A1, 0.5}, {PieceKind::Uniform, A1, A2, 0.5}});
}

MixedStrategy log_equilibrium(const MarketConfig& cfg) {
  return reciprocal_on(cfg.A, sym_sequence_A(2, cfg), cfg);
}

MixedStrategy weighted_equilibrium(double p, const MarketConfig& cfg) {
  require_weighted_p(p, "weighted_equilibrium");
  const auto s = weighted_sequences(p, 1, cfg);
  return reciprocal_on(cfg.A, s.D_check(1), cfg);
}

MixedStrategy critical_regime_strategy(const MarketConfig& cfg) {
  const auto s = weighted_sequences(critical_p(), 3, cfg);
  const double third = 1.0 / 3.0;
  return MixedStrategy::make(cfg, {{PieceKind::Uniform, cfg.A, s.A_check(1), third},
                                   {PieceKind::Uniform, s.A_check(1), s.A_check(2), third},
                                   {PieceKind::Uniform, s.A_check(2), s.A_check(3), third}});
}

std::vector<Interval> regime_partition(double p, const MarketConfig& cfg) {
  const Regime r = regime(p);
  const auto s = weighted_sequences(p, kMaxSequenceIndex, cfg);
  std::vector<Interval> parts;
  if (r == Regime::Intermediate) {
    const double pts[6] = {cfg.A, s.C_check(1), s.A_check(1), s.C_check(2), s.A_check(2), s.D_check(1)};
    for (int k = 0; k < 5; ++k) parts.push_back({pts[k], pts[k + 1], true, false});
  } else if (r == Regime::LowP) {
    const int m = low_p_m(p, cfg);
    if (2 * m + 2 > kMaxSequenceIndex) throw std::logic_error("regime_partition: m too large");
    for (int i = 0; i <= m + 1; ++i) {
      if (i % 2 == 1) parts.push_back({s.A_check(i), s.D_hat(m + 1 + i), true, false});
      else parts.push_back({s.D_hat(m + 1 + i), s.A_check(i + 1), true, false});
    }
    parts.push_back({s.A_check(m + 2), s.D_check(1), true, false});
  } else {
    throw std::domain_error("regime_partition: only the intermediate and low-p regimes have a family");
  }
  for (auto& iv : parts) {
    iv.lo = std::clamp(iv.lo, cfg.A, cfg.B);
    iv.hi = std::clamp(iv.hi, cfg.A, cfg.B);
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!(parts[k].lo < parts[k].hi)) {
      throw std::logic_error("regime_partition: empty interval " + std::to_string(k) + " at p=" +
                             std::to_string(p));
    }
    if (k > 0 && parts[k].lo < parts[k - 1].hi) {
      throw std::logic_error("regime_partition: overlapping intervals at p=" + std::to_string(p));
    }
  }
  return parts;
}

MixedStrategy regime_family(double p, const std::vector<double>& weights, const MarketConfig& cfg) {
  const auto parts = regime_partition(p, cfg);
  if (weights.size() != parts.size()) {
    throw std::domain_error("regime_family: expected " + std::to_string(parts.size()) + " weights, got " +
                            std::to_string(weights.size()));
  }
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    pieces.push_back({PieceKind::Uniform, parts[k].lo, parts[k].hi, weights[k]});
  }
  return MixedStrategy::make(cfg, std::move(pieces));
}

CalibrationResult calibrate_weights(double p, const MarketConfig& cfg, int grid_n) {
  const auto parts = regime_partition(p, cfg);  // rejects other regimes
  const std::size_t K = parts.size();

  std::vector<double> mandatory;
  for (const auto& iv : parts) {
    mandatory.push_back(iv.lo);
    mandatory.push_back(iv.hi);
  }
  const Grid g = make_grid(grid_n, cfg, mandatory);
  const Matrix M = weighted_payoff_matrix(p, g, cfg);
  const auto game = solve_matrix_game(M, 1e-5, 200000);

  // C(i, k): payoff of grid bid i against the k-th interval alone.
  Matrix C{g.size(), K, std::vector<double>(g.size() * K)};
  for (std::size_t k = 0; k < K; ++k) {
    const auto piece = MixedStrategy::make(cfg, {{PieceKind::Uniform, parts[k].lo, parts[k].hi, 1.0}});
    const auto u = row_payoffs(M, project_to_grid(piece, g));
    for (std::size_t i = 0; i < g.size(); ++i) C(i, k) = u[i];
  }
  auto best_response = [&](const std::vector<double>& w) {
    const auto u = row_payoffs(C, w);
    return *std::max_element(u.begin(), u.end());
  };

  const std::vector<double> equal(K, 1.0 / static_cast<double>(K));
  const auto sol = solve_matrix_game(C, 1e-8, 200000);
  std::vector<double> w = sol.col_mix;
  for (auto& v : w) v = std::max(v, 1e-9);
  const double tot = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= tot;

  CalibrationResult res;
  res.grid_value = game.value;
  res.converged = sol.converged && game.converged;
  res.equal_weights_exploitability = best_response(equal) - game.value;
  const double calibrated = best_response(w) - game.value;
  if (calibrated < res.equal_weights_exploitability) {
    res.weights = w;
    res.exploitability = calibrated;
  } else {
    res.weights = equal;
    res.exploitability = res.equal_weights_exploitability;
  }
  return res;
}

double weighted_value_formula(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("weighted_value_formula: need 0 < p < 1");
  return std::log((1.0 - p) / (2.0 - p)) / std::log(p * (1.0 - p) / ((2.0 - p) * (p + 1.0)));
}

ValueReport value_weighted(double p, const MarketConfig& cfg) {
  ValueReport r;
  r.p = p;
  r.regime = regime(p);
  switch (r.regime) {
    case Regime::Degenerate:
      r.v = 0.0;
      r.benchmark = 0.0;
      return r;
    case Regime::Symmetric: r.benchmark = 0.5; break;
    case Regime::Critical: r.benchmark = 1.0 / 3.0; break;
    case Regime::Intermediate: r.benchmark = 0.4; break;
    case Regime::LowP:
      r.m = low_p_m(p, cfg);
      r.benchmark = 1.0 / (*r.m + 2);
      break;
  }
  r.v = weighted_value_formula(p);
  if (r.regime == Regime::Intermediate || r.regime == Regime::LowP) r.epsilon_p = r.benchmark - r.v;
  return r;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::SymUniformRow: return "SymUniformRow";
    case CurveKind::SymUniformColumn: return "SymUniformColumn";
    case CurveKind::SymLogRow: return "SymLogRow";
    case CurveKind::SymLogColumn: return "SymLogColumn";
    case CurveKind::WeightedRow: return "WeightedRow";
    case CurveKind::WeightedColumn: return "WeightedColumn";
  }
  return "?";
}

ClosedFormCurve::ClosedFormCurve(CurveKind kind, double p, const MarketConfig& cfg)
    : kind_(kind), p_(p), cfg_(cfg) {
  cfg_.validate();
  const bool weighted = kind == CurveKind::WeightedRow || kind == CurveKind::WeightedColumn;
  if (weighted) {
    require_weighted_p(p, "ClosedFormCurve");
    value_ = weighted_value_formula(p);
    const WeightMaps m = make_maps(p, cfg_);
    const double top = weighted_sequences(p, 1, cfg_).D_check(1);
    const double end = kind == CurveKind::WeightedRow ? m.f2(top) : m.f1(top);
    breakpoints_ = {top, end};
  } else {
    p_ = 0.5;
    value_ = 0.5;
    breakpoints_ = {sym_sequence_A(2, cfg_), sym_sequence_A(3, cfg_)};
  }
  const bool row = kind == CurveKind::SymUniformRow || kind == CurveKind::SymLogRow ||
                   kind == CurveKind::WeightedRow;
  const bool log_shape = kind != CurveKind::SymUniformRow && kind != CurveKind::SymUniformColumn;
  tags_ = {"value", log_shape ? "log" : "linear", row ? "zero" : "one"};
}

double ClosedFormCurve::operator()(double bid) const {
  require_bid(bid, cfg_, "curve argument");
  const double A = cfg_.A, E = cfg_.E;
  const double lo = breakpoints_[0], hi = breakpoints_[1];
  switch (kind_) {
    case CurveKind::SymUniformRow:
      if (bid <= lo) return 0.5;
      if (bid < hi) return (A + 26.0 * E - 27.0 * bid) / (4.0 * (E - A));
      return 0.0;
    case CurveKind::SymUniformColumn:
      if (bid <= lo) return 0.5;
      if (bid < hi) return (27.0 * bid - 5.0 * A - 22.0 * E) / (4.0 * (E - A));
      return 1.0;
    case CurveKind::SymLogRow:
      if (bid <= lo) return 0.5;
      if (bid < hi) return std::log(27.0 * (E - bid) / (E - A)) / (2.0 * std::log(3.0));
      return 0.0;
    case CurveKind::SymLogColumn:
      if (bid < lo) return 0.5;
      if (bid < hi) return std::log((E - A) / (3.0 * (E - bid))) / std::log(9.0);
      return 1.0;
    case CurveKind::WeightedRow: {
      const double p = p_;
      const double L = std::log(p * (1.0 - p) / ((2.0 - p) * (p + 1.0)));
      if (bid <= lo) return value_;
      if (bid < hi) {
        return std::log(p * (1.0 - p) * (1.0 - p) * (E - A) /
                        ((2.0 - p) * (2.0 - p) * (p + 1.0) * (E - bid))) / L;
      }
      return 0.0;
    }
    case CurveKind::WeightedColumn: {
      const double p = p_;
      const double L = std::log(p * (1.0 - p) / ((2.0 - p) * (p + 1.0)));
      if (bid <= lo) return value_;
      if (bid < hi) return std::log((p + 1.0) * (E - bid) / (p * (E - A))) / L;
      return 1.0;
    }
  }
  return 0.0;
}

Json ClosedFormCurve::to_json() const {
  Json j;
  j["kind"] = to_string(kind_);
  j["p"] = round12(p_);
  j["value"] = round12(value_);
  j["breakpoints"] = Json::array();
  for (double b : breakpoints_) j["breakpoints"].push_back(round12(b));
  j["tags"] = tags_;
  return j;
}

double functional_residual(ResidualKind kind, const MixedStrategy& s, double bid, double p,
                           const MarketConfig& cfg, ResidualForm form) {
  require_bid(bid, cfg, "residual argument");
  const double A = cfg.A, E = cfg.E;
  auto f = [&](double v) { return cfg.admits(v) ? s.density(v) : 0.0; };

  switch (kind) {
    case ResidualKind::SymmetricSystem: {
      if (bid >= E) return -f(bid);
      double r = f(bid) - f((bid + 2.0 * E) / 3.0) / 3.0;
      if (bid >= sym_sequence_A(1, cfg)) r -= 3.0 * f(3.0 * bid - 2.0 * E);
      return r;
    }
    case ResidualKind::WeightedRowSystem: {
      const WeightMaps m = make_maps(p, cfg);
      if (bid >= E) return -f(bid);
      double r = f(bid) - p / (p + 1.0) * f(m.f1(bid));
      if (form == ResidualForm::Derived) {
        if (bid >= m.f2(A)) r -= (2.0 - p) / (1.0 - p) * f(m.h1(bid));
      } else {
        if (bid >= m.f1(A)) r -= (p + 1.0) / p * f(m.h2(bid));
      }
      return r;
    }
    case ResidualKind::WeightedColumnSystem: {
      const WeightMaps m = make_maps(p, cfg);
      if (bid >= E) return f(bid);
      double r = (1.0 - p) / (2.0 - p) * f(m.f2(bid)) - f(bid);
      if (bid >= m.f1(A)) r += (1.0 + p) / p * f(m.h2(bid));
      return r;
    }
  }
  return 0.0;
}

}  // namespace procurement
