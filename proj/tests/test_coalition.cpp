#include <doctest.h>

#include <cmath>

#include "elgame/coalition.hpp"
#include "elgame/equilibria.hpp"
#include "elgame/io.hpp"
#include "elgame/rng.hpp"
#include "helpers.hpp"

using namespace elgame;
using elgame::testing::make_game;
using elgame::testing::P;

namespace {

// Own utilities dwarf the summed cross utilities by an order of magnitude.
GameInstance strongly_egoistic_three() {
  return make_game(200.0, {{{50, 2, 3}, {45, 4, 1}},
                           {{3, 60, 2}, {1, 55, 4}},
                           {{2, 3, 70}, {4, 1, 65}}});
}

CoalitionStructure random_partition(std::mt19937_64& rng, std::size_t m) {
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  for (std::size_t i = m; i > 1; --i)
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  CoalitionStructure cs;
  std::size_t at = 0;
  while (at < m) {
    const std::size_t len = 1 + uniform_below(rng, m - at);
    cs.blocks.push_back({order.begin() + at, order.begin() + at + len});
    at += len;
  }
  return cs.normalized(m);
}

}  // namespace

TEST_CASE("coalition spec parsing and normalization") {
  const CoalitionStructure cs = CoalitionStructure::parse("3|1,2", 4);
  CHECK(cs.to_string() == "1,2|3|4");  // canonical order, singleton appended
  CHECK(cs.blocks.size() == 3);

  CHECK_THROWS_AS(CoalitionStructure::parse("1,1|2", 3), GameError);
  CHECK_THROWS_AS(CoalitionStructure::parse("1|5", 3), GameError);
  CHECK_THROWS_AS(CoalitionStructure::parse("1|x", 3), GameError);
  CHECK_THROWS_AS(CoalitionStructure::parse("", 3), GameError);
}

TEST_CASE("singleton partition reproduces the original utilities") {
  const GameInstance g = strongly_egoistic_three();
  const CoalitionGame cg =
      build_coalition_game(g, CoalitionStructure::parse("1|2|3", 3));
  CHECK(cg.game.num_parties() == 3);
  CHECK_FALSE(cg.beta_raised);
  CHECK(cg.game.beta() == g.beta());
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(cg.game.num_candidates(i) == g.num_candidates(i));
    for (int s = 0; s < g.num_candidates(i); ++s)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(cg.game.utility(i, s, j) == g.utility(i, s, j));
  }
}

TEST_CASE("grand coalition degenerates to a single sure winner") {
  const GameInstance g = strongly_egoistic_three();
  const CoalitionGame cg = build_coalition_game(g, CoalitionStructure::parse("1,2,3", 3));
  CHECK(cg.game.num_parties() == 1);
  CHECK(cg.game.num_candidates(0) == 8);

  const SoftmaxWp softmax;
  const HardmaxWp hardmax;
  Profile s = all_first_profile(cg.game);
  do {
    CHECK(softmax.win_probs(cg.game, s) == std::vector<double>{1.0});
    CHECK(hardmax.win_probs(cg.game, s) == std::vector<double>{1.0});
  } while (next_profile(cg.game, s));

  // Candidates are sorted by the coalition's own aggregated utility, so the
  // first tuple is the best one for the merged electorate.
  for (int c = 1; c < 8; ++c)
    CHECK(cg.game.utility(0, 0, 0) >= cg.game.utility(0, c, 0));
}

TEST_CASE("merging two parties of three keeps the game egoistic") {
  const GameInstance g = strongly_egoistic_three();
  const CoalitionGame cg = build_coalition_game(g, CoalitionStructure::parse("1,2|3", 3));
  CHECK(cg.game.num_parties() == 2);
  CHECK(cg.game.num_candidates(0) == 4);
  CHECK(cg.game.num_candidates(1) == 2);
  CHECK(is_egoistic(cg.game).egoistic);
  // 50+2 own + 3+60 own = merged own utility of the top tuple.
  CHECK(cg.game.utility(0, 0, 0) == doctest::Approx(50 + 2 + 3 + 60));
}

TEST_CASE("coalition transform demands strong egoism and bounded blocks") {
  const GameInstance g = fixture("table2");  // egoistic but not strongly
  CHECK_THROWS_AS(build_coalition_game(g, CoalitionStructure::parse("1,2|3", 3)),
                  GameError);
  try {
    build_coalition_game(g, CoalitionStructure::parse("1,2|3", 3));
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::NotStronglyEgoistic);
  }

  const GameInstance ok = strongly_egoistic_three();
  CHECK_THROWS_AS(build_coalition_game(ok, CoalitionStructure::parse("1,2|3", 3), 2),
                  GameError);
}

TEST_CASE("merged games stay egoistic across random partitions") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 2 + seed % 3;
    cfg.candidates = 2;
    cfg.mode = EgoismMode::StronglyEgoistic;
    cfg.seed = 13000 + seed;
    const GameInstance g = generate(cfg);
    REQUIRE(is_strongly_egoistic(g).strongly_egoistic);
    std::mt19937_64 rng(seed);
    const CoalitionStructure cs = random_partition(rng, g.num_parties());
    const CoalitionGame cg = build_coalition_game(g, cs);
    CHECK(is_egoistic(cg.game).egoistic);
    if (cg.game.beta() > g.beta()) CHECK(cg.beta_raised);
  }
}

TEST_CASE("leaving a coalition never pays under softmax") {
  const GameInstance g = strongly_egoistic_three();
  const SoftmaxWp softmax;
  const CoalitionStructure cs = CoalitionStructure::parse("1,2|3", 3);

  // Member 2 leaves the {1,2} block; all-first choices.
  const double delta = coalition_incentive_delta(g, cs, softmax, 1, {{0, 0}, {0}});
  CHECK(delta <= 1e-9);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    GeneratorConfig cfg;
    cfg.parties = 2 + trial % 3;
    cfg.candidates = 2;
    cfg.mode = EgoismMode::StronglyEgoistic;
    cfg.seed = 14000 + trial;
    const GameInstance h = generate(cfg);
    const CoalitionStructure partition = random_partition(rng, h.num_parties());
    std::vector<std::vector<int>> choices;
    for (const auto& block : partition.blocks) {
      choices.emplace_back();
      for (std::size_t member : block)
        choices.back().push_back(
            static_cast<int>(uniform_below(rng, h.num_candidates(member))));
    }
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
      if (partition.blocks[b].size() < 2) continue;
      for (std::size_t member : partition.blocks[b]) {
        CHECK(coalition_incentive_delta(h, partition, softmax, member, choices) <= 1e-9);
      }
    }
  }
}

TEST_CASE("leaving the grand coalition under hardmax costs the shared win") {
  const GameInstance g = strongly_egoistic_three();
  const HardmaxWp hardmax;
  const CoalitionStructure cs = CoalitionStructure::parse("1,2,3", 3);
  const double delta = coalition_incentive_delta(g, cs, hardmax, 0, {{0, 0, 0}});
  CHECK(delta <= 0.0);
}

TEST_CASE("singleton members cannot leave") {
  const GameInstance g = strongly_egoistic_three();
  const CoalitionStructure cs = CoalitionStructure::parse("1,2|3", 3);
  CHECK_THROWS_AS(
      coalition_incentive_delta(g, cs, SoftmaxWp{}, 2, {{0, 0}, {0}}),
      GameError);
  try {
    coalition_incentive_delta(g, cs, SoftmaxWp{}, 2, {{0, 0}, {0}});
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::MemberIsSingleton);
  }
}
