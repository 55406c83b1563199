#include <doctest.h>

#include "procurement/discontinuity.hpp"
#include "procurement/game_core.hpp"

using namespace procurement;

TEST_SUITE("discontinuity") {
  const MarketConfig cfg{};

  TEST_CASE("one profile per class") {
    const std::vector<double> tie{0.7, 0.7};
    CHECK(classify_discontinuity(0, tie, cfg) == DiscontinuityClass::Tie);
    const std::vector<double> fixed{0.8, 0.4};  // threshold against 0.4 is 0.8
    CHECK(classify_discontinuity(0, fixed, cfg) == DiscontinuityClass::FixedPoint);
    const std::vector<double> trans{0.7, 0.9};  // 0.7 puts the price exactly on 0.9
    CHECK(classify_discontinuity(0, trans, cfg) == DiscontinuityClass::Transition);
    const std::vector<double> cont{0.3, 0.9};
    CHECK(classify_discontinuity(0, cont, cfg) == DiscontinuityClass::Continuity);
    CHECK(to_string(DiscontinuityClass::FixedPoint) == "FixedPoint");
  }

  TEST_CASE("fixed-point deviator wins just below the threshold") {
    const std::vector<double> below{0.8 - 1e-6, 0.4};
    CHECK(payoff_n(below, cfg)[0] == 1.0);
  }

  TEST_CASE("zero-on-ties jump at a tie below E") {
    const double c = 0.6;
    const std::vector<double> at{c, c}, up{c + 1e-6, c};
    CHECK(payoff_n_tilde(at, cfg)[0] == 0.0);
    CHECK(payoff_n_tilde(up, cfg)[0] == 1.0);
  }

  TEST_CASE("tie above E: winning from below only") {
    const double c = 1.2;
    const std::vector<double> down{c - 1e-6, c}, up{c + 1e-6, c};
    CHECK(payoff_n_tilde(down, cfg)[0] == 1.0);
    CHECK(payoff_n_tilde(up, cfg)[0] == 0.0);
  }

  TEST_CASE("bad index") {
    const std::vector<double> b{0.2, 0.3};
    CHECK_THROWS(classify_discontinuity(2, b, cfg));
  }
}
