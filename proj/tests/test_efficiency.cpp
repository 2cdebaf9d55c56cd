#include <doctest.h>

#include <cmath>

#include "elgame/efficiency.hpp"
#include "elgame/io.hpp"
#include "helpers.hpp"

using namespace elgame;
using elgame::testing::make_game;
using elgame::testing::P;

TEST_CASE("table1 optimum and price of anarchy under hardmax") {
  const GameInstance g = fixture("table1");
  const HardmaxWp hardmax;

  const auto [opt, opt_sw] = optimal_profile(g, hardmax);
  CHECK(opt_sw == 100.0);
  CHECK(opt[0] == 1);  // second candidate of the first party carries it

  const EfficiencyReport report = price_of_anarchy(g, hardmax);
  CHECK(report.optimal_sw == 100.0);
  REQUIRE(report.poa.has_value());
  CHECK(*report.poa == 2.0);
  CHECK(*report.pos == 2.0);
  CHECK(*report.worst_psne_sw == 50.0);
}

TEST_CASE("price of anarchy is undefined without equilibria") {
  const GameInstance g = fixture("table2");
  const EfficiencyReport report = price_of_anarchy(g, SoftmaxWp{});
  CHECK_FALSE(report.poa.has_value());
  CHECK_FALSE(report.pos.has_value());
  CHECK_FALSE(report.worst_psne.has_value());
  CHECK(report.optimal_sw > 0.0);
}

TEST_CASE("single-profile instance is its own optimum") {
  const GameInstance g = make_game(100.0, {{{6, 0}}, {{0, 5}}});
  const auto [opt, sw] = optimal_profile(g, SoftmaxWp{});
  CHECK(opt == P({1, 1}));
  CHECK(sw > 0.0);
}

TEST_CASE("the tight family pushes the price of anarchy to the party count") {
  const HardmaxWp hardmax;

  const GameInstance g2 = make_poa_tight_instance(2, 100.0, 0.01);
  CHECK(is_egoistic(g2).egoistic);
  const EfficiencyReport r2 = price_of_anarchy(g2, hardmax);
  REQUIRE(r2.poa.has_value());
  CHECK(*r2.worst_psne_sw == doctest::Approx(50.03).epsilon(1e-12));
  CHECK(*r2.poa == doctest::Approx(100.0 / 50.03).epsilon(1e-12));
  CHECK(is_psne(g2, hardmax, P({1, 1})).is_psne);

  const GameInstance g3 = make_poa_tight_instance(3, 100.0, 0.001);
  const auto [opt3, sw3] = optimal_profile(g3, hardmax);
  CHECK(sw3 == doctest::Approx(100.0));
  CHECK(opt3[0] == 1);

  for (std::size_t m : {2, 3, 4, 5}) {
    const GameInstance g = make_poa_tight_instance(m, 100.0, 1e-6);
    CHECK(is_egoistic(g).egoistic);
    const Profile all_first = all_first_profile(g);
    CHECK(is_psne(g, hardmax, all_first).is_psne);
    const Evaluation ev = evaluate(g, hardmax, all_first);
    CHECK(std::abs(ev.social_welfare - (100.0 / m + 3e-6)) <= 1e-9);
    const EfficiencyReport r = price_of_anarchy(g, hardmax);
    REQUIRE(r.poa.has_value());
    CHECK(std::abs(*r.poa - static_cast<double>(m)) <= 1e-4);
    // The tight case still sits just under the party-count ceiling.
    CHECK(poa_bounded_by_party_count(g, hardmax));
  }
}

TEST_CASE("tight family parameter validation") {
  CHECK_THROWS_AS(make_poa_tight_instance(1, 100.0, 0.01), GameError);
  CHECK_THROWS_AS(make_poa_tight_instance(3, 100.0, 0.0), GameError);
  CHECK_THROWS_AS(make_poa_tight_instance(3, 100.0, 1.0), GameError);
  CHECK_THROWS_AS(make_poa_tight_instance(2, 1.0, 0.9), GameError);  // share+3eps > beta
}

TEST_CASE("equilibrium social support against the optimum") {
  const GameInstance t1 = fixture("table1");
  const HardmaxWp hardmax;
  const SupportCheck c1 = check_psne_social_support(t1, hardmax);
  CHECK(c1.holds);
  CHECK(c1.rhs == 100.0);
  // Direct arithmetic at (1,1,1): 50 + 46 + 44 = 140 >= 100.
  CHECK(t1.social_utility(0, 0) + t1.social_utility(1, 0) + t1.social_utility(2, 0) ==
        140.0);

  // Vacuous when no equilibrium exists.
  CHECK(check_psne_social_support(fixture("table2"), SoftmaxWp{}).holds);

  // Equality is possible when the equilibrium is the optimum itself.
  const GameInstance single = make_game(100.0, {{{6, 0}}, {{0, 5}}});
  CHECK(check_psne_social_support(single, hardmax).holds);
}

TEST_CASE("support and anarchy bounds hold on seeded egoistic ensembles") {
  const SoftmaxWp softmax;
  const HardmaxWp hardmax;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 2 + seed % 3;
    cfg.candidates = 2 + static_cast<int>(seed % 2);
    cfg.seed = 10000 + seed;
    const GameInstance g = generate(cfg);
    for (const WpFunction* wp :
         {static_cast<const WpFunction*>(&softmax), static_cast<const WpFunction*>(&hardmax)}) {
      CHECK(check_psne_social_support(g, *wp).holds);
      CHECK(poa_bounded_by_party_count(g, *wp));
      const EfficiencyReport report = price_of_anarchy(g, *wp);
      if (report.poa) {
        CHECK(*report.pos <= *report.poa + 1e-12);
        CHECK(*report.poa >= 1.0 - 1e-12);
        CHECK(*report.pos >= 1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("welfare is sandwiched between the mean and max social utility") {
  const SoftmaxWp softmax;
  const HardmaxWp hardmax;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 2 + seed % 3;
    cfg.candidates = 2;
    cfg.mode = seed % 2 ? EgoismMode::Egoistic : EgoismMode::None;
    cfg.seed = 11000 + seed;
    const GameInstance g = generate(cfg);
    const std::size_t m = g.num_parties();
    for (const WpFunction* wp :
         {static_cast<const WpFunction*>(&softmax), static_cast<const WpFunction*>(&hardmax)}) {
      Profile s = all_first_profile(g);
      do {
        double total = 0.0, top = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double u = g.social_utility(i, s[i]);
          total += u;
          top = std::max(top, u);
        }
        const double sw = evaluate(g, *wp, s).social_welfare;
        CHECK(sw <= top + 1e-9);
        CHECK(sw >= total / static_cast<double>(m) - 1e-9);
      } while (next_profile(g, s));
    }
  }
}

TEST_CASE("widening tau never lowers the price of anarchy") {
  const SoftmaxWp softmax;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorConfig cfg;
    cfg.parties = 3;
    cfg.candidates = 2;
    cfg.seed = 12000 + seed;
    const GameInstance g = generate(cfg);
    const EfficiencyReport tight = price_of_anarchy(g, softmax, 0.0);
    const EfficiencyReport loose = price_of_anarchy(g, softmax, 1.0);
    if (tight.poa) {
      REQUIRE(loose.poa.has_value());
      CHECK(*loose.poa >= *tight.poa - 1e-12);
    }
  }
}
