#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "procurement/equilibria.hpp"
#include "procurement/strategy.hpp"

using namespace procurement;

TEST_SUITE("strategy") {
  const MarketConfig cfg{};

  TEST_CASE("validation") {
    using P = PieceKind;
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {{P::Uniform, 0.0, 0.6, 0.5}, {P::Uniform, 0.5, 1.0, 0.5}}),
                    std::domain_error);
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {{P::Reciprocal, 0.5, 1.2, 1.0}}), std::domain_error);
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {{P::Uniform, 0.0, 1.0, 0.5}}, {{0.5, 0.5}}), std::domain_error);
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {{P::Uniform, 0.0, 1.0, 0.9}}), std::domain_error);
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {}, {{0.5, 0.5}, {0.5, 0.5}}), std::domain_error);
    CHECK_THROWS_AS(MixedStrategy::make(cfg, {}, {}), std::domain_error);
    CHECK_NOTHROW(MixedStrategy::make(cfg, {{P::Uniform, 0.0, 1.0, 0.5}}, {{1.0, 0.5}}));
    CHECK(MixedStrategy::make_unnormalized(cfg, {{P::Uniform, 0.0, 1.0, 0.9}}).total_mass() ==
          doctest::Approx(0.9));
  }

  TEST_CASE("log equilibrium splits its mass at the first breakpoint") {
    const auto f = log_equilibrium(cfg);
    CHECK(f.cdf(2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f.cdf(8.0 / 9.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.density(0.5) == doctest::Approx(1.0 / (0.5 * std::log(9.0))).epsilon(1e-14));
    CHECK(f.density(1.2) == 0.0);
  }

  TEST_CASE("point strategy") {
    const auto d = MixedStrategy::point(cfg, 1.0);
    CHECK(d.atom_mass(1.0) == 1.0);
    CHECK(d.cdf_left(1.0) == 0.0);
    CHECK(d.cdf(1.0) == 1.0);
    CHECK(d.quantile(0.3) == 1.0);
  }

  TEST_CASE("property: cdf, quantile and measure are consistent") {
    SplitMix64 rng(401);
    for (int s = 0; s < 500; ++s) {
      const auto st = gen::strategy(rng, cfg);
      CHECK(st.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
      for (int k = 0; k < 50; ++k) {
        const double u = rng.uniform();
        const double q = st.quantile(u);
        REQUIRE(st.cdf(q) >= u - 1e-12);
        REQUIRE(st.cdf_left(q) <= u + 1e-12);
        const double a = rng.uniform(cfg.A, cfg.B), b = rng.uniform(cfg.A, cfg.B);
        const double lo = std::min(a, b), hi = std::max(a, b);
        REQUIRE(st.measure(lo, hi, true, true) ==
                doctest::Approx(st.cdf(hi) - st.cdf_left(lo)).epsilon(1e-12).scale(1.0));
        REQUIRE(st.measure(lo, hi, false, false) ==
                doctest::Approx(st.cdf_left(hi) - st.cdf(lo)).epsilon(1e-12).scale(1.0));
        REQUIRE(st.cdf(lo) <= st.cdf(hi));
      }
    }
  }

  TEST_CASE("property: JSON round trip") {
    SplitMix64 rng(402);
    for (int s = 0; s < 200; ++s) {
      const auto st = gen::strategy(rng, cfg);
      const auto back = MixedStrategy::from_json(st.to_json(), cfg);
      REQUIRE(back.to_json() == st.to_json());
    }
  }

  TEST_CASE("JSON rejects unknown and missing fields") {
    const Json good = Json::parse(R"({"pieces":[{"kind":"uniform","a":0,"b":1,"w":1}],"atoms":[]})");
    CHECK_NOTHROW(MixedStrategy::from_json(good, cfg));
    CHECK_THROWS(MixedStrategy::from_json(
        Json::parse(R"({"pieces":[{"kind":"uniform","a":0,"b":1,"w":1,"extra":2}],"atoms":[]})"), cfg));
    CHECK_THROWS(MixedStrategy::from_json(Json::parse(R"({"pieces":[{"kind":"uniform","a":0,"b":1}],"atoms":[]})"), cfg));
    CHECK_THROWS(MixedStrategy::from_json(Json::parse(R"({"pieces":[],"atoms":[],"note":1})"), cfg));
    CHECK_THROWS(MixedStrategy::from_json(Json::parse(R"({"pieces":[{"kind":"cubic","a":0,"b":1,"w":1}],"atoms":[]})"), cfg));
  }

  TEST_CASE("sampling is seeded and follows the distribution") {
    const auto f = log_equilibrium(cfg);
    const auto a = f.sample(7, 20000), b = f.sample(7, 20000);
    CHECK(a == b);
    CHECK(f.sample(8, 10) != f.sample(7, 10));
    int below = 0;
    for (double x : a) below += x < 2.0 / 3.0;
    CHECK(std::abs(below / 20000.0 - 0.5) < 4.0 * std::sqrt(0.25 / 20000.0));
  }
}
