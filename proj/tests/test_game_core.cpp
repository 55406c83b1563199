#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "procurement/game_core.hpp"

using namespace procurement;

TEST_SUITE("game_core") {
  const MarketConfig cfg{};

  TEST_CASE("reference price is the mean of estimate and average bid") {
    const std::vector<double> b{0.5, 0.9};
    CHECK(reference_price(b, cfg) == doctest::Approx(0.85).epsilon(1e-15));
    const std::vector<double> c{0.2, 0.4, 1.2};
    CHECK(reference_price(c, cfg) == doctest::Approx((1.8 + 3.0) / 6.0).epsilon(1e-15));
  }

  TEST_CASE("highest bid at or below the reference price wins") {
    const std::vector<double> b{0.5, 0.9};  // P = 0.85
    CHECK(winners(b, cfg) == std::vector<std::size_t>{0});
    const std::vector<double> c{0.6, 0.7, 1.4};  // P = 0.95
    CHECK(winners(c, cfg) == std::vector<std::size_t>{1});
  }

  TEST_CASE("lowest bid wins when everybody is above the reference price") {
    const std::vector<double> b{1.3, 1.2};  // P = 1.125
    CHECK(winners(b, cfg) == std::vector<std::size_t>{1});
  }

  TEST_CASE("a bid equal to the reference price counts as below it") {
    // Threshold against 0.4 is (0.4 + 2) / 3 = 0.8 and P(0.8, 0.4) = 0.8.
    CHECK(payoff_2(0.8, 0.4, cfg) == 1.0);
    CHECK(payoff_2(0.4, 0.8, cfg) == 0.0);
  }

  TEST_CASE("tied winners share and the zero-on-ties variant pays nobody") {
    const std::vector<double> b{0.7, 0.7, 1.4};
    const auto g = payoff_n(b, cfg);
    CHECK(g[0] == 0.5);
    CHECK(g[1] == 0.5);
    CHECK(g[2] == 0.0);
    const auto t = payoff_n_tilde(b, cfg);
    CHECK(t == std::vector<double>{0.0, 0.0, 0.0});
  }

  TEST_CASE("all bids equal to E split evenly") {
    const std::vector<double> b{1.0, 1.0, 1.0, 1.0};
    for (double v : payoff_n(b, cfg)) CHECK(v == 0.25);
  }

  TEST_CASE("property: payoff_n agrees exactly with the combinatorial form") {
    SplitMix64 rng(101);
    for (int N = 2; N <= 6; ++N) {
      for (int s = 0; s < 3000; ++s) {
        const auto b = gen::profile(rng, N, cfg);
        REQUIRE(payoff_n(b, cfg) == payoff_n_combinatorial(b, cfg));
      }
    }
  }

  TEST_CASE("property: payoffs sum to one and are invariant under permutation") {
    SplitMix64 rng(102);
    for (int s = 0; s < 5000; ++s) {
      const int N = 2 + static_cast<int>(rng.below(5));
      auto b = gen::profile(rng, N, cfg);
      const auto g = payoff_n(b, cfg);
      CHECK(std::accumulate(g.begin(), g.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
      // Reverse the profile: payoffs must follow their owners.
      std::vector<double> r(b.rbegin(), b.rend());
      const auto gr = payoff_n(r, cfg);
      for (std::size_t k = 0; k < b.size(); ++k) REQUIRE(gr[b.size() - 1 - k] == g[k]);
      REQUIRE(reference_price(r, cfg) == reference_price(b, cfg));
    }
  }

  TEST_CASE("property: zero-on-ties payoff matches payoff_n away from shared wins") {
    SplitMix64 rng(103);
    for (int s = 0; s < 5000; ++s) {
      const auto b = gen::profile(rng, 3, cfg);
      const auto g = payoff_n(b, cfg);
      const auto t = payoff_n_tilde(b, cfg);
      const bool shared = winners(b, cfg).size() > 1;
      for (std::size_t k = 0; k < b.size(); ++k) REQUIRE(t[k] == (shared ? 0.0 : g[k]));
    }
  }

  TEST_CASE("property: indicator forms for two and three bidders") {
    SplitMix64 rng(104);
    for (int s = 0; s < 20000; ++s) {
      const auto b2 = gen::profile(rng, 2, cfg);
      REQUIRE(payoff_2(b2[0], b2[1], cfg) == payoff_n(b2, cfg)[0]);
      const auto b3 = gen::profile(rng, 3, cfg);
      REQUIRE(payoff_3(b3[0], b3[1], b3[2], cfg) == payoff_n(b3, cfg)[0]);
    }
  }

  TEST_CASE("property: the threshold is the fixed point of the reference price") {
    SplitMix64 rng(105);
    for (int s = 0; s < 5000; ++s) {
      const int N = 2 + static_cast<int>(rng.below(4));
      const auto others = gen::profile(rng, N - 1 > 1 ? N - 1 : 2, cfg, 0.0);
      const double t = threshold_t(others, cfg);
      std::vector<double> prof(others);
      prof.push_back(t);
      CHECK(reference_price(prof, cfg) == doctest::Approx(t).epsilon(1e-14));
    }
  }

  TEST_CASE("property: best deviation (undercut on ties) wins outright") {
    SplitMix64 rng(106);
    const double eps = 1e-6 * (cfg.E - cfg.A);
    for (int s = 0; s < 5000; ++s) {
      const int N = 2 + static_cast<int>(rng.below(3));
      auto others = gen::profile(rng, std::max(2, N - 1), cfg, 0.0);
      others.resize(static_cast<std::size_t>(N - 1));
      double x = best_deviation(others, cfg);
      if (std::find(others.begin(), others.end(), x) != others.end()) x = undercut(x, eps, cfg);
      std::vector<double> prof{x};
      prof.insert(prof.end(), others.begin(), others.end());
      REQUIRE(payoff_n(prof, cfg)[0] == 1.0);
    }
  }

  TEST_CASE("symmetric breakpoints") {
    CHECK(sym_sequence_A(0, cfg) == 0.0);
    CHECK(sym_sequence_A(1, cfg) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sym_sequence_A(2, cfg) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(sym_sequence_A(3, cfg) == doctest::Approx(26.0 / 27.0).epsilon(1e-15));
  }

  TEST_CASE("domain errors") {
    const std::vector<double> one{0.5};
    CHECK_THROWS_AS(payoff_n(one, cfg), std::domain_error);
    const std::vector<double> out{0.5, 1.6};
    CHECK_THROWS_AS(payoff_n(out, cfg), std::domain_error);
    const std::vector<double> seven(7, 0.5);
    CHECK_THROWS(payoff_n_combinatorial(seven, cfg));
    CHECK_THROWS(make_market(1.0, 0.5, 0.8));
    CHECK_THROWS(make_market(0.0, 1.0, 1.0));
  }
}
