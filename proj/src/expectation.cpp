#include "procurement/expectation.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "procurement/game_core.hpp"

namespace procurement {

TwoPlayerKernel TwoPlayerKernel::symmetric(const MarketConfig& cfg) {
  cfg.validate();
  return {Kind::Symmetric, 0.5, cfg};
}

TwoPlayerKernel TwoPlayerKernel::weighted(double p, const MarketConfig& cfg) {
  make_maps(p, cfg);  // validates p and cfg
  return {Kind::Weighted, p, cfg};
}

double TwoPlayerKernel::operator()(double x, double y) const {
  return kind == Kind::Symmetric ? payoff_2(x, y, cfg) : payoff_weighted(x, y, p, cfg);
}

std::vector<Interval> TwoPlayerKernel::row_wins(double x) const {
  return strict_win_regions(x, Side::AsRow, p, cfg);
}

std::vector<Interval> TwoPlayerKernel::row_wins_against(double y) const {
  return strict_win_regions(y, Side::AsColumn, p, cfg);
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       const QuadratureSpec& q) {
  if (!(a < b)) return 0.0;
  double err = 0.0, l1 = 0.0;
  const double r = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, q.max_depth, q.rel_tol, &err, &l1);
  // Boost's error estimate has an absolute floor that dominates on slivers.
  const bool sliver = b - a <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b)});
  if (!sliver && !(err <= std::max(q.rel_tol * l1, 1e-14))) {
    throw QuadratureError("quadrature did not reach tolerance on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]",
                          l1 > 0 ? err / l1 : err);
  }
  return r;
}

double integrate_against(const MixedStrategy& s, const std::function<double(double)>& F,
                         const std::vector<double>& cutpoints, const QuadratureSpec& q) {
  double total = 0.0;
  for (const Atom& at : s.atoms()) total += at.m * F(at.x);

  const double E = s.market().E;
  for (const Piece& pc : s.pieces()) {
    std::vector<double> cuts{pc.a, pc.b};
    for (double c : cutpoints) {
      if (c > pc.a && c < pc.b) cuts.push_back(c);
    }
    for (double c : q.cutpoints) {
      if (c > pc.a && c < pc.b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::function<double(double)> weighted_F;
    if (pc.kind == PieceKind::Uniform) {
      const double dens = pc.w / (pc.b - pc.a);
      weighted_F = [&F, dens](double v) { return F(v) * dens; };
    } else {
      const double scale = pc.w / std::log((E - pc.a) / (E - pc.b));
      weighted_F = [&F, scale, E](double v) { return F(v) * scale / (E - v); };
    }
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      total += integrate_panel(weighted_F, cuts[k], cuts[k + 1], q);
    }
  }
  return total;
}

namespace {

double region_mass(const MixedStrategy& s, const std::vector<Interval>& regions) {
  double m = 0.0;
  for (const auto& iv : regions) m += s.measure(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed);
  return m;
}

std::vector<double> region_endpoints(const std::vector<Interval>& regions, double own) {
  std::vector<double> pts{own};
  for (const auto& iv : regions) {
    pts.push_back(iv.lo);
    pts.push_back(iv.hi);
  }
  return pts;
}

std::vector<double> with_bounds(std::vector<double> bp, const MarketConfig& cfg) {
  bp.push_back(cfg.A);
  bp.push_back(cfg.B);
  return bp;
}

void keep_inside(std::vector<double>& pts, const MarketConfig& cfg) {
  std::vector<double> out;
  for (double v : pts) {
    if (std::isfinite(v) && v > cfg.A && v < cfg.B) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  pts = std::move(out);
}

double atom_overlap(const MixedStrategy& mu, const MixedStrategy& nu) {
  double s = 0.0;
  for (const Atom& at : mu.atoms()) s += at.m * nu.atom_mass(at.x);
  return s;
}

}  // namespace

double expect_vs(double x, const MixedStrategy& nu, const TwoPlayerKernel& kernel,
                 const QuadratureSpec& q) {
  require_bid(x, kernel.cfg, "x");
  const auto regions = kernel.row_wins(x);
  if (q.exact_panels) {
    return region_mass(nu, regions) + kernel.tie_payoff() * nu.atom_mass(x);
  }
  return integrate_against(
      nu, [&](double y) { return kernel(x, y); }, region_endpoints(regions, x), q);
}

double expect_vs_column(const MixedStrategy& mu, double y, const TwoPlayerKernel& kernel,
                        const QuadratureSpec& q) {
  require_bid(y, kernel.cfg, "y");
  const auto regions = kernel.row_wins_against(y);
  if (q.exact_panels) return region_mass(mu, regions) + kernel.tie_payoff() * mu.atom_mass(y);
  return integrate_against(
      mu, [&](double x) { return kernel(x, y); }, region_endpoints(regions, y), q);
}

JointExpectation expect_joint(const MixedStrategy& mu, const MixedStrategy& nu,
                              const TwoPlayerKernel& kernel, const QuadratureSpec& q,
                              bool with_closed_forms) {
  const MarketConfig& cfg = kernel.cfg;
  const double A = cfg.A, B = cfg.B, E = cfg.E;
  const WeightMaps m = kernel.maps();

  JointExpectation out;

  // Outer form: jumps of x -> G(x, nu) sit where h1(x), x or f1(x) meet a
  // breakpoint of nu.
  std::vector<double> xcuts{E};
  for (double b : with_bounds(nu.breakpoints(), cfg)) {
    xcuts.insert(xcuts.end(), {b, m.f2(b), m.h2(b)});
  }
  keep_inside(xcuts, cfg);
  QuadratureSpec exact = q;
  exact.exact_panels = true;
  out.outer = integrate_against(mu, [&](double x) { return expect_vs(x, nu, kernel, exact); },
                                xcuts, q);
  if (!with_closed_forms) return out;
  if (kernel.kind != TwoPlayerKernel::Kind::Symmetric) {
    throw std::invalid_argument("expect_joint: closed forms need the symmetric kernel");
  }

  const double A1 = sym_sequence_A(1, cfg);
  const double ties = 0.5 * atom_overlap(mu, nu);

  // Integrate over the column's bid y.
  std::vector<double> ycuts{E, A1};
  for (double b : with_bounds(mu.breakpoints(), cfg)) {
    ycuts.insert(ycuts.end(), {b, (b + 2.0 * E) / 3.0, 3.0 * b - 2.0 * E});
  }
  keep_inside(ycuts, cfg);
  auto by_col = [&](double y) {
    double v = 0.0;
    if (y <= E) {
      v += mu.measure(y, (y + 2.0 * E) / 3.0, false, true);
      v += mu.measure(A, 3.0 * y - 2.0 * E, true, false);
    }
    if (y >= E) v += mu.measure(A, y, true, false);
    return v;
  };
  out.by_column = integrate_against(nu, by_col, ycuts, q) -
                  mu.measure(A, E, true, false) * nu.atom_mass(E) + ties;

  // Integrate over the row's bid x.
  std::vector<double> rcuts{E, A1};
  for (double b : with_bounds(nu.breakpoints(), cfg)) {
    rcuts.insert(rcuts.end(), {b, (b + 2.0 * E) / 3.0, 3.0 * b - 2.0 * E});
  }
  keep_inside(rcuts, cfg);
  auto by_row = [&](double x) {
    if (x < E) {
      return nu.measure(3.0 * x - 2.0 * E, x, true, false) +
             nu.measure((x + 2.0 * E) / 3.0, B, false, true);
    }
    return nu.measure(x, B, false, true);
  };
  out.by_row = integrate_against(mu, by_row, rcuts, q) + ties;

  auto by_row_printed = [&](double x) {
    double v = 0.0;
    if (x >= A1 && x <= E) v += nu.measure(3.0 * x - 2.0 * E, x, true, false);
    if (x >= E) v += nu.measure(x, B, false, true);
    if (x <= E) v += nu.measure((x + 2.0 * E) / 3.0, B, false, true);
    return v;
  };
  out.by_row_printed_limits = integrate_against(mu, by_row_printed, rcuts, q) + ties;

  const double vals[3] = {out.outer, *out.by_column, *out.by_row};
  out.gap = std::max({std::abs(vals[0] - vals[1]), std::abs(vals[0] - vals[2]),
                      std::abs(vals[1] - vals[2])});
  return out;
}

}  // namespace procurement
