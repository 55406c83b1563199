#include <doctest.h>

#include <cmath>
#include <map>

#include "procurement/game_core.hpp"
#include "procurement/rng.hpp"
#include "procurement/three_player.hpp"

using namespace procurement;

TEST_SUITE("three_player") {
  const MarketConfig cfg{};

  TEST_CASE("cutpoints for (0.9, 0.8)") {
    const auto c = cutpoints3(0.9, 0.8, cfg);
    CHECK(c.t == doctest::Approx(0.94).epsilon(1e-14));
    CHECK(c.p_y == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(c.p_z == doctest::Approx(0.1).epsilon(1e-13));
  }

  TEST_CASE("the diagonal is a boundary") {
    CHECK_THROWS_AS(ordering_cell(0.5, 0.5, cfg), BoundaryError);
  }

  TEST_CASE("property: swapping the opponents mirrors the cell") {
    SplitMix64 rng(301);
    for (int s = 0; s < 5000; ++s) {
      const double y = rng.uniform(cfg.A, cfg.B), z = rng.uniform(cfg.A, cfg.B);
      const auto a = ordering_cell(y, z, cfg);
      const auto b = ordering_cell(z, y, cfg);
      REQUIRE(a.tag == b.tag);
      REQUIRE(a.mirrored != b.mirrored);
      const auto ja = jump_signs(a), jb = jump_signs(b);
      REQUIRE(ja.y == jb.z);
      REQUIRE(ja.p_y == jb.p_z);
      REQUIRE(ja.t == jb.t);
    }
  }

  TEST_CASE("property: one-sided scans reproduce the jump table in every cell") {
    SplitMix64 rng(302);
    std::map<CellTag, int> seen;
    const double h = 1e-9;
    for (int s = 0; s < 20000; ++s) {
      const double y = rng.uniform(cfg.A, cfg.B), z = rng.uniform(cfg.A, cfg.B);
      const auto c = cutpoints3(y, z, cfg);
      const double pts[5] = {y, c.p_y, z, c.p_z, c.t};
      double sep = INFINITY;
      for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) sep = std::min(sep, std::abs(pts[a] - pts[b]));
      if (sep < 1e-6) continue;
      const auto cell = ordering_cell(y, z, cfg);
      ++seen[cell.tag];
      const MarketConfig wide{std::min({cfg.A, c.p_y, c.p_z}) - 1.0, std::max({cfg.B, c.p_y, c.p_z}) + 1.0, cfg.E};
      auto jump = [&](double v) {
        return static_cast<int>(std::lround(payoff_3(v + h, y, z, wide) - payoff_3(v - h, y, z, wide)));
      };
      const JumpRow got{jump(y), jump(c.p_y), jump(z), jump(c.p_z), jump(c.t)};
      REQUIRE(got == jump_signs(cell));
    }
    CHECK(seen.size() == 5);
  }

  TEST_CASE("property: linear relations between cutpoints") {
    SplitMix64 rng(303);
    for (int s = 0; s < 10000; ++s) {
      const double y = rng.uniform(cfg.A, cfg.B), z = rng.uniform(cfg.A, cfg.B);
      const auto c = cutpoints3(y, z, cfg);
      CHECK(c.p_y - y == doctest::Approx(5.0 * (y - c.t)).epsilon(1e-12).scale(1.0));
      CHECK(c.p_y - c.p_z == doctest::Approx(6.0 * (y - z)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("labels") {
    CHECK(to_string(CellTag::O3) == "O3");
    CHECK(to_string(OrderingCell{CellTag::O2, true}) == "O2'");
  }
}
