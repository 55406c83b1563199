#include <doctest.h>

#include <numeric>

#include "procurement/equilibria.hpp"
#include "procurement/oracle.hpp"

using namespace procurement;

TEST_SUITE("oracle") {
  const MarketConfig cfg{};

  TEST_CASE("projection onto a grid keeps the mass") {
    const Grid g = make_grid(51, cfg);
    for (const auto& s : {log_equilibrium(cfg), uniform_equilibrium(cfg), weighted_equilibrium(0.2, cfg),
                          MixedStrategy::point(cfg, 1.0)}) {
      const auto w = project_to_grid(s, g);
      CHECK(w.size() == g.size());
      CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("no pure equilibrium on enriched grids") {
    CHECK(pure_ne_scan(2, make_grid(41, cfg), cfg).equilibria.empty());
    CHECK(pure_ne_scan(3, make_grid(11, cfg), cfg).equilibria.empty());
    CHECK_THROWS_AS(pure_ne_scan(2, make_grid(301, cfg), cfg), std::domain_error);
    CHECK_THROWS_AS(pure_ne_scan(3, make_grid(61, cfg), cfg), std::domain_error);
    const auto mm = pure_minimax_gap(make_grid(41, cfg), cfg);
    CHECK(mm.maxmin == 0.0);
    CHECK(mm.minmax == 1.0);
  }

  TEST_CASE("value curve oracle at p = 1/2 and the adjudication flag") {
    const auto rows = value_curve_oracle({0.5}, cfg, {21, 41}, 1e-5);
    for (const auto& r : rows) CHECK(r.value_n == doctest::Approx(0.5).epsilon(1e-5));
    const auto adj = value_curve_oracle({0.45}, cfg, {41}, 1e-5);
    CHECK(closer_prediction(adj, 0.45) == "formula");
    CHECK(adj[0].regime == Regime::Intermediate);
    CHECK(adj[0].benchmark == doctest::Approx(0.4));
  }

  TEST_CASE("two-player self-play recovers value 1/2 and is seeded") {
    const Grid g = make_grid(31, cfg);
    const auto a = symmetric_selfplay(2, g, 20000, 5, cfg);
    CHECK(a.final_exploitability < 1e-2);
    const auto b = symmetric_selfplay(2, g, 20000, 5, cfg);
    CHECK(a.strategy == b.strategy);
    CHECK(a.series.size() == b.series.size());
    const auto three = symmetric_selfplay(3, make_grid(21, cfg), 2000, 5, cfg, 10);
    CHECK(!three.series.empty());
  }

  TEST_CASE("one-sided limit probes") {
    const auto rep = ddpm_probe(200, 9, cfg);
    CHECK(rep.pass);
    CHECK(rep.max_violation == 0.0);
  }
}
