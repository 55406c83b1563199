#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "procurement/game_core.hpp"
#include "procurement/weighted.hpp"

using namespace procurement;

TEST_SUITE("weighted") {
  const MarketConfig cfg{};

  TEST_CASE("equal weights reduce to the symmetric game") {
    SplitMix64 rng(201);
    for (int s = 0; s < 10000; ++s) {
      const auto b = gen::profile(rng, 2, cfg);
      REQUIRE(payoff_weighted(b[0], b[1], 0.5, cfg) == payoff_2(b[0], b[1], cfg));
    }
  }

  TEST_CASE("a tie pays the weight to player one") {
    CHECK(payoff_weighted(0.7, 0.7, 0.1, cfg) == 0.1);
    CHECK(payoff_weighted(1.2, 1.2, 0.3, cfg) == 0.3);
  }

  TEST_CASE("maps and their inverses") {
    SplitMix64 rng(202);
    for (int s = 0; s < 1000; ++s) {
      const double p = rng.uniform(0.01, 0.99);
      const auto m = make_maps(p, cfg);
      const double x = rng.uniform(cfg.A, cfg.B);
      CHECK(m.h1(m.f2(x)) == doctest::Approx(x).epsilon(1e-13));
      CHECK(m.h2(m.f1(x)) == doctest::Approx(x).epsilon(1e-13));
    }
    CHECK_THROWS(make_maps(0.0, cfg));
    CHECK_THROWS(make_maps(1.0, cfg));
  }

  TEST_CASE("sequences at p = 0.3 against a 40-digit evaluation") {
    const auto s = weighted_sequences(0.3, 4, cfg);
    CHECK(s.A_hat(1) == doctest::Approx(0.76923076923076923).epsilon(1e-14));
    CHECK(s.A_hat(2) == doctest::Approx(0.94674556213017751).epsilon(1e-14));
    CHECK(s.A_check(1) == doctest::Approx(0.58823529411764706).epsilon(1e-14));
    CHECK(s.A_check(2) == doctest::Approx(0.83044982698961938).epsilon(1e-14));
    CHECK(s.A_check(3) == doctest::Approx(0.93018522287807857).epsilon(1e-14));
    CHECK(s.D_check(1) == doctest::Approx(0.90497737556561086).epsilon(1e-14));
    CHECK(s.D_check(2) == doctest::Approx(0.97807170205360251).epsilon(1e-14));
    CHECK(s.D_hat(1) == doctest::Approx(0.26528258362168397).epsilon(1e-13));
    CHECK(s.D_hat(2) == doctest::Approx(0.69746929913834046).epsilon(1e-13));
    CHECK(s.C_hat(1) == doctest::Approx(0.43956043956043956).epsilon(1e-13));
    CHECK(s.C_check(1) == doctest::Approx(0.26528258362168397).epsilon(1e-13));
    CHECK(std::isnan(s.D_check(0)));
  }

  TEST_CASE("critical weight and regimes") {
    CHECK(critical_p() == doctest::Approx(0.23240812075600178).epsilon(1e-15));
    CHECK(regime(0.5) == Regime::Symmetric);
    CHECK(regime(critical_p()) == Regime::Critical);
    CHECK(regime(0.3) == Regime::Intermediate);
    CHECK(regime(0.1) == Regime::LowP);
    CHECK(regime(0.0) == Regime::Degenerate);
    CHECK_THROWS(regime(0.6));
    CHECK(low_p_m(0.1, cfg) == 2);
    CHECK(low_p_m(0.2, cfg) == 1);
    CHECK(to_string(Regime::LowP) == "LowP");
  }

  TEST_CASE("h2 maps the second check point back to A at the critical weight") {
    for (const MarketConfig& c : {cfg, MarketConfig{0.2, 2.5, 1.7}}) {
      const double p = critical_p();
      const auto s = weighted_sequences(p, 2, c);
      CHECK(std::abs(make_maps(p, c).h2(s.A_check(2)) - c.A) <= 1e-9);
    }
  }

  TEST_CASE("property: strict win regions agree with the payoff rule") {
    SplitMix64 rng(203);
    for (int s = 0; s < 4000; ++s) {
      const double p = rng.uniform(0.02, 0.98);
      const double own = rng.uniform(cfg.A, cfg.B);
      const auto row = strict_win_regions(own, Side::AsRow, p, cfg);
      const auto col = strict_win_regions(own, Side::AsColumn, p, cfg);
      for (int k = 0; k < 20; ++k) {
        const double other = rng.uniform(cfg.A, cfg.B);
        REQUIRE(in_regions(row, other) == (payoff_weighted(own, other, p, cfg) == 1.0));
        REQUIRE(in_regions(col, other) == (payoff_weighted(other, own, p, cfg) == 1.0));
      }
    }
  }

  TEST_CASE("published row-region variant differs from the payoff rule somewhere") {
    // The lower end of the first row region uses the other player's map.
    const double p = 0.3, x = 0.7;
    const auto derived = strict_win_regions(x, Side::AsRow, p, cfg);
    const auto printed = strict_win_regions(x, Side::AsRow, p, cfg, RegionVariant::Published);
    CHECK(derived.front().lo != doctest::Approx(printed.front().lo));
  }
}
