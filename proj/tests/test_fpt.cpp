#include <doctest.h>

#include <cmath>
#include <set>

#include "elgame/fpt.hpp"
#include "elgame/io.hpp"
#include "helpers.hpp"

using namespace elgame;
using elgame::testing::make_game;
using elgame::testing::P;

TEST_CASE("depths on the fixtures") {
  const GameInstance t1 = fixture("table1");
  const ReducedGame r1 = compute_depths(t1);
  CHECK(r1.depth == std::vector<int>{2, 1, 1});
  CHECK(r1.resolute == std::vector<std::size_t>{1, 2});
  CHECK(r1.irresolute_count() == 1);
  CHECK(r1.max_depth() == 2);

  const GameInstance t2 = fixture("table2");
  const ReducedGame r2 = compute_depths(t2);
  CHECK(r2.depth == std::vector<int>{2, 2, 1});
  CHECK(r2.resolute == std::vector<std::size_t>{2});
  CHECK(r2.irresolute_count() == 2);
}

TEST_CASE("a party whose first candidate maximizes social utility is resolute") {
  const GameInstance g = make_game(100.0, {{{10, 3}, {9, 1}}, {{1, 8}, {0, 7}}});
  const ReducedGame r = compute_depths(g);
  CHECK(r.depth == std::vector<int>{1, 1});
  CHECK(r.irresolute_count() == 0);
}

TEST_CASE("depth computation requires egoism") {
  const GameInstance g = make_game(100.0, {{{5, 9}}, {{0, 4}}});
  CHECK_THROWS_AS(compute_depths(g), GameError);
  try {
    compute_depths(g);
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::NotEgoistic);
  }
}

TEST_CASE("refinement keeps an undominated chain") {
  // Own utility falls, social utility rises: nothing dominates anything.
  const GameInstance pareto = make_game(
      100.0, {{{10, 1}, {9, 3}, {8, 5}, {7, 7}}, {{0, 12}, {0, 11}, {0, 10}, {0, 9}}});
  ReducedGame r = compute_depths(pareto);
  CHECK(r.depth[0] == 4);
  r = refine_strategy_sets(pareto, r);
  CHECK(r.refined_depth[0] == 4);
  CHECK(r.strategy_sets[0] == std::vector<int>{0, 1, 2, 3});

  // Own utility falls while the middle candidate has the highest social
  // utility, so it dominates the tail and the chain is {2, 1}.
  const GameInstance mid = make_game(
      100.0, {{{10, 0, 0}, {9, 3, 3.5}, {8, 2.5, 3.5}},
              {{0, 5, 0}, {0, 4, 0}, {0, 3.5, 0}},
              {{0, 0, 6}, {0, 0, 5}, {0, 0, 4}}},
      true);
  CHECK(mid.social_utility(0, 0) == 10);
  CHECK(mid.social_utility(0, 1) == 15.5);
  CHECK(mid.social_utility(0, 2) == 14);
  ReducedGame rm = compute_depths(mid);
  CHECK(rm.depth[0] == 2);
  rm = refine_strategy_sets(mid, rm);
  CHECK(rm.refined_depth[0] == 2);
  CHECK(rm.strategy_sets[0] == std::vector<int>{0, 1});

  const GameInstance t1 = fixture("table1");
  ReducedGame r1 = refine_strategy_sets(t1, compute_depths(t1));
  CHECK(r1.refined_depth == std::vector<int>{2, 1, 1});
  CHECK(r1.strategy_sets[0] == std::vector<int>{0, 1});
}

TEST_CASE("refined sets always contain the first and the depth candidate") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 2 + seed % 3;
    cfg.candidates = 2 + static_cast<int>(seed % 4);
    cfg.seed = 8000 + seed;
    const GameInstance g = generate(cfg);
    const ReducedGame r = refine_strategy_sets(g, compute_depths(g));
    for (std::size_t i = 0; i < g.num_parties(); ++i) {
      CHECK(r.refined_depth[i] <= r.depth[i]);
      CHECK(r.strategy_sets[i].front() == 0);
      CHECK(r.strategy_sets[i].back() == r.depth[i] - 1);
      CHECK(std::is_sorted(r.strategy_sets[i].begin(), r.strategy_sets[i].end()));
    }
  }
}

TEST_CASE("reduced search solves the fixtures") {
  const HardmaxWp hardmax;
  const SoftmaxWp softmax;
  FptStats stats;

  CHECK(fpt_psne(fixture("table1"), hardmax, {}, &stats) == P({1, 1, 1}));
  CHECK(stats.k == 1);
  CHECK(stats.d == 2);
  CHECK(stats.profiles_evaluated <= 2);

  CHECK_FALSE(fpt_psne(fixture("table2"), softmax, {}, &stats).has_value());
  CHECK(stats.k == 2);
  CHECK(stats.profiles_evaluated == 4);  // the full reduced space
}

TEST_CASE("all parties resolute means the all-first profile without search") {
  const GameInstance g = make_game(100.0, {{{10, 3}, {9, 1}}, {{1, 8}, {0, 7}}});
  FptStats stats;
  const auto result = fpt_psne(g, HardmaxWp{}, {}, &stats);
  CHECK(result == P({1, 1}));
  CHECK(stats.k == 0);
  CHECK(stats.profiles_evaluated == 1);
  CHECK(stats.deviation_checks == 0);
}

TEST_CASE("monotonicity probing rejects an adversarial rule") {
  const GameInstance g = fixture("table1");
  FptOptions opts;
  opts.probe_monotonicity = true;
  CHECK_THROWS_AS(fpt_psne(g, elgame::testing::InverseSoftmaxWp{}, opts), GameError);
  try {
    fpt_psne(g, elgame::testing::InverseSoftmaxWp{}, opts);
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::NonMonotoneWp);
  }
  CHECK(fpt_psne(g, HardmaxWp{}, opts).has_value());
}

TEST_CASE("reduced search agrees with brute force on seeded ensembles") {
  const SoftmaxWp softmax;
  const HardmaxWp hardmax;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 2 + seed % 3;
    cfg.candidates = 2 + static_cast<int>(seed % 3);
    cfg.seed = 8500 + seed;
    const GameInstance g = generate(cfg);
    for (const WpFunction* wp :
         {static_cast<const WpFunction*>(&softmax), static_cast<const WpFunction*>(&hardmax)}) {
      const std::vector<Profile> oracle = enumerate_psne(g, *wp);
      const std::set<Profile> oracle_set(oracle.begin(), oracle.end());

      for (bool refine : {false, true}) {
        FptOptions opts;
        opts.refine = refine;
        FptStats stats;
        const auto result = fpt_psne(g, *wp, opts, &stats);
        CHECK(result.has_value() == !oracle.empty());
        if (result) {
          CHECK(oracle_set.count(*result) == 1);
          // Full-game stability, not just stability within the reduced sets.
          CHECK(is_psne(g, *wp, *result).is_psne);
          // Resolute parties stay pinned to their first candidate.
          const ReducedGame reduced = compute_depths(g);
          for (std::size_t i : reduced.resolute) CHECK((*result)[i] == 0);
        }
        const double bound = std::pow(
            static_cast<double>(refine ? stats.d_refined : stats.d),
            static_cast<double>(stats.k));
        CHECK(static_cast<double>(stats.profiles_evaluated) <= bound + 0.5);
        // At most k(d-1) deviation payoffs per profile visited.
        CHECK(stats.deviation_checks <=
              stats.profiles_evaluated * stats.k *
                  static_cast<std::uint64_t>(std::max(stats.d - 1, 0)));
      }
    }
  }
}
