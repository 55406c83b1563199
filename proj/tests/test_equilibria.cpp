#include <doctest.h>

#include <cmath>

#include "procurement/equilibria.hpp"
#include "procurement/expectation.hpp"
#include "procurement/game_core.hpp"
#include "procurement/rng.hpp"

using namespace procurement;

TEST_SUITE("equilibria") {
  const MarketConfig cfg{};

  TEST_CASE("value formula, 40-digit oracle") {
    CHECK(weighted_value_formula(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(weighted_value_formula(0.3) == doctest::Approx(0.3769918490306889).epsilon(1e-14));
    CHECK(weighted_value_formula(0.1) == doctest::Approx(0.23757976005032645).epsilon(1e-14));
    CHECK(weighted_value_formula(0.45) == doctest::Approx(0.46963521966219811).epsilon(1e-14));
    CHECK(std::abs(weighted_value_formula(critical_p()) - 1.0 / 3.0) <= 1e-12);
  }

  TEST_CASE("value reports carry regime benchmarks") {
    const auto low = value_weighted(0.1, cfg);
    CHECK(low.regime == Regime::LowP);
    CHECK(low.m == 2);
    CHECK(low.benchmark == doctest::Approx(0.25));
    CHECK(*low.epsilon_p == doctest::Approx(0.25 - 0.23757976005032645).epsilon(1e-13));
    const auto mid = value_weighted(0.3, cfg);
    CHECK(mid.benchmark == doctest::Approx(0.4));
    CHECK(value_weighted(0.5, cfg).epsilon_p.has_value() == false);
    const auto zero = value_weighted(0.0, cfg);
    CHECK(zero.regime == Regime::Degenerate);
    CHECK(zero.v == 0.0);
  }

  TEST_CASE("closed-form curves, 40-digit oracle") {
    const ClosedFormCurve lr(CurveKind::SymLogRow, 0.5, cfg), lc(CurveKind::SymLogColumn, 0.5, cfg);
    CHECK(lr(0.3) == 0.5);
    CHECK(lr(0.95) == doctest::Approx(0.136583486069579).epsilon(1e-13));
    CHECK(lc(0.95) == doctest::Approx(0.863416513930421).epsilon(1e-13));
    CHECK(lr(1.3) == 0.0);
    CHECK(lc(1.3) == 1.0);
    const ClosedFormCurve ur(CurveKind::SymUniformRow, 0.5, cfg);
    CHECK(ur(0.95) == doctest::Approx(0.0875).epsilon(1e-13));
    const ClosedFormCurve wr(CurveKind::WeightedRow, 0.3, cfg), wc(CurveKind::WeightedColumn, 0.3, cfg);
    CHECK(wr(0.7) == doctest::Approx(0.3769918490306889).epsilon(1e-14));
    CHECK(wr(0.95) == doctest::Approx(0.104183799458773).epsilon(1e-12));
    CHECK(wc(0.95) == doctest::Approx(0.649799898602605).epsilon(1e-12));
    const Json j = wr.to_json();
    CHECK(j.contains("breakpoints"));
    CHECK(j.contains("tags"));
  }

  TEST_CASE("property: closed-form curves match expectation at random bids") {
    SplitMix64 rng(601);
    struct Case {
      CurveKind kind;
      double p;
    };
    for (const Case c : {Case{CurveKind::SymUniformRow, 0.5}, Case{CurveKind::SymUniformColumn, 0.5},
                         Case{CurveKind::SymLogRow, 0.5}, Case{CurveKind::SymLogColumn, 0.5},
                         Case{CurveKind::WeightedRow, 0.2}, Case{CurveKind::WeightedColumn, 0.2},
                         Case{CurveKind::WeightedRow, 0.4}, Case{CurveKind::WeightedColumn, 0.4}}) {
      const ClosedFormCurve curve(c.kind, c.p, cfg);
      const bool sym = c.kind == CurveKind::SymUniformRow || c.kind == CurveKind::SymUniformColumn ||
                       c.kind == CurveKind::SymLogRow || c.kind == CurveKind::SymLogColumn;
      const bool uni = c.kind == CurveKind::SymUniformRow || c.kind == CurveKind::SymUniformColumn;
      const bool row = c.kind == CurveKind::SymUniformRow || c.kind == CurveKind::SymLogRow ||
                       c.kind == CurveKind::WeightedRow;
      const auto s = sym ? (uni ? uniform_equilibrium(cfg) : log_equilibrium(cfg)) : weighted_equilibrium(c.p, cfg);
      const auto k = sym ? TwoPlayerKernel::symmetric(cfg) : TwoPlayerKernel::weighted(c.p, cfg);
      for (int t = 0; t < 300; ++t) {
        const double b = rng.uniform(cfg.A, cfg.B);
        const double g = row ? expect_vs(b, s, k) : expect_vs_column(s, b, k);
        REQUIRE(curve(b) == doctest::Approx(g).epsilon(1e-10).scale(1.0));
      }
    }
  }

  TEST_CASE("property: differentiated systems vanish on support and beyond E") {
    SplitMix64 rng(602);
    const auto f = log_equilibrium(cfg);
    const double A1 = sym_sequence_A(1, cfg), A2 = sym_sequence_A(2, cfg);
    for (int t = 0; t < 1000; ++t) {
      double x = rng.uniform() < 0.7 ? rng.uniform(cfg.A, A2) : rng.uniform(cfg.E, cfg.B);
      if (std::abs(x - A1) < 1e-9 || std::abs(x - A2) < 1e-9) continue;
      REQUIRE(std::abs(functional_residual(ResidualKind::SymmetricSystem, f, x, 0.5, cfg)) <= 1e-9);
    }
    for (double p : {0.2, 0.3, 0.45}) {
      const auto w = weighted_equilibrium(p, cfg);
      const auto s = weighted_sequences(p, 2, cfg);
      const auto m = make_maps(p, cfg);
      for (int t = 0; t < 1000; ++t) {
        double x = rng.uniform() < 0.7 ? rng.uniform(cfg.A, s.D_check(1)) : rng.uniform(cfg.E, cfg.B);
        if (std::abs(x - m.f2(cfg.A)) < 1e-9 || std::abs(x - m.f1(cfg.A)) < 1e-9) continue;
        REQUIRE(std::abs(functional_residual(ResidualKind::WeightedRowSystem, w, x, p, cfg)) <= 1e-9);
        REQUIRE(std::abs(functional_residual(ResidualKind::WeightedColumnSystem, w, x, p, cfg)) <= 1e-9);
      }
    }
  }

  TEST_CASE("the published row system does not vanish on the weighted support") {
    const auto w = weighted_equilibrium(0.3, cfg);
    double worst = 0.0;
    for (double x = 0.6; x < 0.9; x += 0.01) {
      worst = std::max(worst, std::abs(functional_residual(ResidualKind::WeightedRowSystem, w, x, 0.3, cfg,
                                                           ResidualForm::Printed)));
    }
    CHECK(worst > 1e-3);
  }

  TEST_CASE("critical-regime strategy: three equal pieces") {
    const auto s = critical_regime_strategy(cfg);
    const auto seq = weighted_sequences(critical_p(), 3, cfg);
    CHECK(s.cdf(seq.A_check(1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s.cdf(seq.A_check(2)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const auto k = TwoPlayerKernel::weighted(critical_p(), cfg);
    for (double x = cfg.A; x <= cfg.B; x += 0.01) {
      REQUIRE(expect_vs(x, s, k) <= 1.0 / 3.0 + 1e-9);
      REQUIRE(expect_vs_column(s, x, k) >= 1.0 / 3.0 - 1e-9);
    }
  }

  TEST_CASE("low-p partition at p = 0.1, 30-digit oracle") {
    const auto parts = regime_partition(0.1, cfg);
    const double want[5][2] = {{0.446205906952832, 0.526315789473684}, {0.526315789473684, 0.737676482240815},
                               {0.875741491587755, 0.893716285172766}, {0.893716285172766, 0.941140706541568},
                               {0.949655082450257, 0.956937799043062}};
    REQUIRE(parts.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(parts[k].lo == doctest::Approx(want[k][0]).epsilon(1e-12));
      CHECK(parts[k].hi == doctest::Approx(want[k][1]).epsilon(1e-12));
      if (k) CHECK(parts[k].lo >= parts[k - 1].hi);
    }
    CHECK(regime_partition(0.3, cfg).size() == 5);
    CHECK_THROWS_AS(regime_partition(0.5, cfg), std::domain_error);
  }

  TEST_CASE("regime family and calibration") {
    const auto fam = regime_family(0.3, {0.2, 0.2, 0.2, 0.2, 0.2}, cfg);
    CHECK(fam.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS(regime_family(0.3, {0.5, 0.5}, cfg));
    const auto cal = calibrate_weights(0.3, cfg, 61);
    CHECK(cal.weights.size() == 5);
    CHECK(cal.exploitability <= cal.equal_weights_exploitability);
    double sum = 0.0;
    for (double w : cal.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}
