#include "procurement/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "procurement/discontinuity.hpp"
#include "procurement/equilibria.hpp"
#include "procurement/game_core.hpp"
#include "procurement/rng.hpp"

namespace procurement {

std::vector<double> project_to_grid(const MixedStrategy& s, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<double> mass(n, 0.0);
  if (n == 1) {
    mass[0] = s.total_mass();
    return mass;
  }
  double prev = 0.0;  // cdf_left at the lower edge of the current cell
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mid = 0.5 * (g[k] + g[k + 1]);
    const double c = s.cdf_left(mid);
    mass[k] = c - prev;
    prev = c;
  }
  mass[n - 1] = s.total_mass() - prev;
  for (auto& m : mass) m = std::max(0.0, m);
  return mass;
}

Matrix weighted_payoff_matrix(double p, const Grid& g, const MarketConfig& cfg) {
  if (p == 0.5) {
    return payoff_matrix([&](double x, double y) { return payoff_2(x, y, cfg); }, g, g);
  }
  return payoff_matrix([&](double x, double y) { return payoff_weighted(x, y, p, cfg); }, g, g);
}

namespace {

// True when some deviation of player i strictly beats the current payoff.
bool has_profitable_deviation(std::vector<double>& profile, std::size_t i, const Grid& g,
                              const MarketConfig& cfg, double eps) {
  const double current = payoff_n(profile, cfg)[i];
  if (current >= 1.0) return false;
  const double own = profile[i];

  std::vector<double> others;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (k != i) others.push_back(profile[k]);
  }
  const double star = best_deviation(others, cfg);
  std::vector<double> candidates{star, undercut(star, eps, cfg)};
  candidates.insert(candidates.end(), g.points.begin(), g.points.end());

  bool better = false;
  for (double c : candidates) {
    profile[i] = c;
    if (payoff_n(profile, cfg)[i] > current) {
      better = true;
      break;
    }
  }
  profile[i] = own;
  return better;
}

}  // namespace

PureScanResult pure_ne_scan(int N, const Grid& g, const MarketConfig& cfg) {
  if (N == 2 && g.size() > 201 + 8) throw std::domain_error("pure_ne_scan: N=2 needs n <= 201");
  if (N == 3 && g.size() > 41 + 8) throw std::domain_error("pure_ne_scan: N=3 needs n <= 41");
  if (N != 2 && N != 3) throw std::domain_error("pure_ne_scan: N must be 2 or 3");
  const double eps = 1e-6 * (cfg.E - cfg.A);
  const std::size_t n = g.size();

  PureScanResult res;
  std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
  std::vector<double> profile(static_cast<std::size_t>(N));
  while (true) {
    for (std::size_t k = 0; k < idx.size(); ++k) profile[k] = g[idx[k]];
    ++res.profiles_checked;
    bool stable = true;
    for (std::size_t i = 0; i < profile.size() && stable; ++i) {
      if (has_profitable_deviation(profile, i, g, cfg, eps)) stable = false;
    }
    if (stable) res.equilibria.push_back(profile);

    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return res;
}

PureMinimaxGap pure_minimax_gap(const Grid& g, const MarketConfig& cfg) {
  const double eps = 1e-6 * (cfg.E - cfg.A);
  auto enriched = [&](double other) {
    const double o[1] = {other};
    const double star = best_deviation(o, cfg);
    std::vector<double> c{star, undercut(star, eps, cfg)};
    c.insert(c.end(), g.points.begin(), g.points.end());
    return c;
  };
  PureMinimaxGap out{-std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  for (double x : g.points) {
    double worst = std::numeric_limits<double>::infinity();
    for (double y : enriched(x)) worst = std::min(worst, payoff_2(x, y, cfg));
    out.maxmin = std::max(out.maxmin, worst);
  }
  for (double y : g.points) {
    double best = -std::numeric_limits<double>::infinity();
    for (double x : enriched(y)) best = std::max(best, payoff_2(x, y, cfg));
    out.minmax = std::min(out.minmax, best);
  }
  return out;
}

std::vector<OracleRow> value_curve_oracle(const std::vector<double>& p_list, const MarketConfig& cfg,
                                          const std::vector<int>& n_list, double tol,
                                          long max_iter) {
  std::vector<OracleRow> rows;
  for (double p : p_list) {
    const ValueReport vr = value_weighted(p, cfg);
    if (!(p > 0.0)) throw std::domain_error("value_curve_oracle: p must be positive");
    const auto seq = weighted_sequences(p, 4, cfg);
    const std::vector<double> mandatory{seq.D_check(1)};
    for (int n : n_list) {
      const Grid g = make_grid(n, cfg, mandatory);
      const Matrix M = weighted_payoff_matrix(p, g, cfg);
      const auto sol = solve_matrix_game(M, tol, max_iter);
      OracleRow r;
      r.p = p;
      r.n = n;
      r.value_n = sol.value;
      r.v_formula = vr.v;
      r.gap = std::abs(sol.value - vr.v);
      r.regime = vr.regime;
      r.benchmark = vr.benchmark;
      r.benchmark_gap = std::abs(sol.value - vr.benchmark);
      r.exploitability = sol.exploitability;
      r.converged = sol.converged;
      rows.push_back(r);
    }
  }
  return rows;
}

std::string closer_prediction(const std::vector<OracleRow>& rows, double p) {
  const OracleRow* finest = nullptr;
  for (const auto& r : rows) {
    if (r.p == p && (!finest || r.n > finest->n)) finest = &r;
  }
  if (!finest) throw std::invalid_argument("closer_prediction: no rows for p");
  return finest->gap <= finest->benchmark_gap ? "formula" : "benchmark";
}

SelfplayReport symmetric_selfplay(int N, const Grid& g, long iters, std::uint64_t seed,
                                  const MarketConfig& cfg, int points) {
  if (N != 2 && N != 3) throw std::domain_error("symmetric_selfplay: N must be 2 or 3");
  if (g.size() > 201 + 8) throw std::domain_error("symmetric_selfplay: grid too large");
  const std::size_t n = g.size();

  // Payoff tensor of one player against the others' grid indices.
  std::vector<double> T;
  if (N == 2) {
    T.resize(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) T[k * n + j] = payoff_2(g[k], g[j], cfg);
  } else {
    T.resize(n * n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) T[(k * n + j) * n + l] = payoff_3(g[k], g[j], g[l], cfg);
  }
  auto utilities = [&](const std::vector<double>& s) {
    std::vector<double> u(n, 0.0);
    if (N == 2) {
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += T[k * n + j] * s[j];
        u[k] = acc;
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (s[j] == 0.0) continue;
          const double* row = &T[(k * n + j) * n];
          double inner = 0.0;
          for (std::size_t l = 0; l < n; ++l) inner += row[l] * s[l];
          acc += s[j] * inner;
        }
        u[k] = acc;
      }
    }
    return u;
  };

  SplitMix64 rng(seed);
  std::vector<double> regret(n), s(n), avg(n, 0.0);
  for (auto& r : regret) r = 1e-3 * rng.uniform();
  auto to_strategy = [&] {
    double tot = 0.0;
    for (double r : regret) tot += r;
    for (std::size_t k = 0; k < n; ++k) s[k] = tot > 0.0 ? regret[k] / tot : 1.0 / static_cast<double>(n);
  };
  to_strategy();

  SelfplayReport rep;
  rep.N = N;
  const long every = std::max<long>(1, iters / std::max(1, points));
  double wsum = 0.0;
  for (long t = 1; t <= iters; ++t) {
    const auto u = utilities(s);
    double ev = 0.0;
    for (std::size_t k = 0; k < n; ++k) ev += s[k] * u[k];
    for (std::size_t k = 0; k < n; ++k) regret[k] = std::max(0.0, regret[k] + u[k] - ev);
    const auto wt = static_cast<double>(t);
    for (std::size_t k = 0; k < n; ++k) avg[k] += wt * s[k];
    wsum += wt;
    to_strategy();
    if (t % every == 0 || t == iters) {
      std::vector<double> mean(n);
      for (std::size_t k = 0; k < n; ++k) mean[k] = avg[k] / wsum;
      const auto ub = utilities(mean);
      const double expl = *std::max_element(ub.begin(), ub.end()) - 1.0 / N;
      rep.series.push_back({t, expl});
      rep.final_exploitability = expl;
      rep.strategy = mean;
    }
  }
  return rep;
}

namespace {

double tilde_payoff(std::vector<double>& profile, std::size_t i, double bid, const MarketConfig& cfg) {
  const double keep = profile[i];
  profile[i] = bid;
  const double v = payoff_n_tilde(profile, cfg)[i];
  profile[i] = keep;
  return v;
}

}  // namespace

VerificationReport ddpm_probe(int samples, std::uint64_t seed, const MarketConfig& cfg) {
  cfg.validate();
  const double A = cfg.A, B = cfg.B, E = cfg.E, w = cfg.width();
  VerificationReport rep;
  rep.id = "ddpm_probe";
  rep.check = "one-sided limits of the zero-on-ties payoff on tie, fixed-point and transition profiles";
  rep.params = {{"samples_per_class", samples}, {"seed", seed}, {"N", "2..5"}};
  rep.tolerance = 0.0;

  SplitMix64 rng(seed);
  long violations = 0;
  Json worst = Json::array();
  auto flag = [&](const std::string& cls, const std::vector<double>& prof, const std::string& what) {
    ++violations;
    if (worst.size() < 5) worst.push_back({{"class", cls}, {"profile", prof}, {"failed", what}});
  };
  constexpr int kSteps = 5;

  for (int s = 0; s < samples; ++s) {
    const int N = 2 + static_cast<int>(rng.below(4));
    const auto n = static_cast<double>(N);

    // Tie: everybody at c.
    {
      const double c = rng.uniform(A + 1e-3 * w, B - 1e-3 * w);
      std::vector<double> prof(static_cast<std::size_t>(N), c);
      const double d0 = c == E ? 1e-7 * w : std::min(1e-7 * w, 0.25 * std::abs(E - c));
      if (classify_discontinuity(0, prof, cfg) != DiscontinuityClass::Tie) flag("Tie", prof, "classification");
      if (tilde_payoff(prof, 0, c, cfg) != 0.0) flag("Tie", prof, "tie pays");
      for (int k = 0; k < kSteps; ++k) {
        const double d = d0 / std::pow(2.0, k);
        const double up = tilde_payoff(prof, 0, c + d, cfg);
        const double down = tilde_payoff(prof, 0, c - d, cfg);
        if (c < E && !(up == 1.0 && down == 0.0)) flag("Tie", prof, "below E: 1 above, 0 below");
        if (c >= E && !(down == 1.0 && up == 0.0)) flag("Tie", prof, "at/above E: 1 below, 0 above");
      }
    }
    // Fixed point: others at x, deviator at threshold_t > x.
    {
      const double lo = ((n - 1.0) * A + n * E) / (2.0 * n - 1.0);
      const double xi0 = rng.uniform(lo + 1e-3 * (E - lo), E - 1e-3 * (E - lo));
      const double x = ((2.0 * n - 1.0) * xi0 - n * E) / (n - 1.0);
      std::vector<double> others(static_cast<std::size_t>(N - 1), std::max(A, x));
      const double xi = best_deviation(others, cfg);
      std::vector<double> prof{xi};
      prof.insert(prof.end(), others.begin(), others.end());
      if (classify_discontinuity(0, prof, cfg) != DiscontinuityClass::FixedPoint) {
        flag("FixedPoint", prof, "classification");
      }
      const double here = tilde_payoff(prof, 0, xi, cfg);
      const double d0 = std::min(1e-7 * w, 0.25 * (xi - others[0]));
      double liminf = INFINITY;
      for (int k = 0; k < kSteps; ++k) liminf = std::min(liminf, tilde_payoff(prof, 0, xi - d0 / std::pow(2.0, k), cfg));
      if (here != 1.0) flag("FixedPoint", prof, "deviator wins at the threshold");
      if (liminf < here) flag("FixedPoint", prof, "liminf from below >= current");
    }
    // Transition: others at x <= E, deviator placing P exactly on x.
    {
      const double lo = (A + n * E) / (n + 1.0);
      const double x = rng.uniform(lo + 1e-3 * (E - lo), E - 1e-3 * (E - lo));
      std::vector<double> prof(static_cast<std::size_t>(N), x);
      double xi = std::max(A, (n + 1.0) * x - n * E);
      prof[0] = xi;
      // Keep P >= x in floating point so the others still win.
      double step = std::nextafter(xi, INFINITY) - xi;
      for (int guard = 0; guard < 64 && reference_price(prof, cfg) < x; ++guard) {
        xi += step;
        step *= 2.0;
        prof[0] = xi;
      }
      if (classify_discontinuity(0, prof, cfg) != DiscontinuityClass::Transition) {
        flag("Transition", prof, "classification");
      }
      const double here = tilde_payoff(prof, 0, xi, cfg);
      const double d0 = std::min(1e-7 * w, 0.25 * (xi - A) + 1e-9 * w);
      double liminf = INFINITY;
      for (int k = 0; k < kSteps; ++k) {
        const double bid = std::max(A, xi - d0 / std::pow(2.0, k));
        liminf = std::min(liminf, tilde_payoff(prof, 0, bid, cfg));
      }
      if (liminf < here) flag("Transition", prof, "liminf from below >= current");
    }
  }
  rep.max_violation = static_cast<double>(violations);
  rep.worst = worst;
  finalize(rep);
  return rep;
}

}  // namespace procurement
