#include "elgame/wp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elgame/rng.hpp"

namespace elgame {

namespace {
// Slack when verifying the monotone property; rules out false positives from
// independently rounded denominators while still catching real violations.
constexpr double kMonotoneSlack = 1e-12;
}  // namespace

std::vector<double> WpFunction::win_probs(const GameInstance& g, const Profile& s) const {
  std::vector<double> out(g.num_parties());
  win_probs_into(g, s, out);
  return out;
}

void HardmaxWp::win_probs_into(const GameInstance& g, const Profile& s,
                               std::span<double> out) const {
  g.check_profile(s);
  std::size_t winner = 0;
  double best = g.social_utility(0, s[0]);
  for (std::size_t i = 1; i < g.num_parties(); ++i) {
    const double u = g.social_utility(i, s[i]);
    if (u > best) {
      best = u;
      winner = i;
    }
  }
  std::fill(out.begin(), out.end(), 0.0);
  out[winner] = 1.0;
}

void SoftmaxWp::win_probs_into(const GameInstance& g, const Profile& s,
                               std::span<double> out) const {
  g.check_profile(s);
  const std::size_t m = g.num_parties();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    top = std::max(top, g.social_utility(i, s[i]) / g.beta());
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = std::exp(g.social_utility(i, s[i]) / g.beta() - top);
    total += out[i];
  }
  for (std::size_t i = 0; i < m; ++i) out[i] /= total;
}

std::unique_ptr<WpFunction> make_wp(std::string_view name) {
  if (name == "hardmax") return std::make_unique<HardmaxWp>();
  if (name == "softmax") return std::make_unique<SoftmaxWp>();
  fail(Errc::InvalidArgument, "unknown WP function '" + std::string(name) + "'");
}

SurpassRel surpass(const GameInstance& g, const WpFunction& wp, std::size_t party,
                   int candidate, int other, const Profile& context) {
  if (candidate == other)
    fail(Errc::InvalidArgument, "surpass comparison needs distinct candidates");
  g.check_profile(context);
  const double soc_a = g.social_utility(party, candidate);
  const double soc_b = g.social_utility(party, other);
  if (candidate > other || soc_a < soc_b) return SurpassRel::Neither;
  if (g.own_utility(party, candidate) > g.own_utility(party, other))
    return SurpassRel::Surpasses;
  // Own utilities tie; only the probability clause can upgrade the relation.
  Profile a = context;
  a.choices[party] = candidate;
  Profile b = context;
  b.choices[party] = other;
  const double pa = wp.win_probs(g, a)[party];
  const double pb = wp.win_probs(g, b)[party];
  return pa > pb ? SurpassRel::Surpasses : SurpassRel::WeaklySurpasses;
}

MonotoneReport check_monotone(const GameInstance& g, const WpFunction& wp,
                              std::uint64_t trials, std::uint64_t seed) {
  const std::size_t m = g.num_parties();
  std::uint64_t pair_work = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t n = g.num_candidates(i);
    pair_work += n * n;
  }
  const std::uint64_t profiles = g.profile_count();
  const bool exhaustive =
      profiles <= 4096 && profiles * pair_work <= 500000;

  MonotoneReport report;
  report.exhaustive = exhaustive;

  std::vector<double> probs(m);
  std::vector<double> alt_probs(m);
  auto check_pair = [&](const Profile& s, std::size_t i, int alt) -> bool {
    // Requires u(alt) >= u(s_i); the party's probability must not drop.
    wp.win_probs_into(g, s, probs);
    Profile t = s;
    t.choices[i] = alt;
    wp.win_probs_into(g, t, alt_probs);
    ++report.checks;
    if (alt_probs[i] < probs[i] - kMonotoneSlack) {
      report.violation = MonotoneViolation{s, i, s[i], alt, probs[i], alt_probs[i]};
      return false;
    }
    return true;
  };

  if (exhaustive) {
    Profile s = all_first_profile(g);
    do {
      for (std::size_t i = 0; i < m; ++i) {
        for (int alt = 0; alt < g.num_candidates(i); ++alt) {
          if (alt == s[i]) continue;
          if (g.social_utility(i, alt) < g.social_utility(i, s[i])) continue;
          if (!check_pair(s, i, alt)) return report;
        }
      }
    } while (next_profile(g, s));
    report.monotone = true;
    return report;
  }

  std::mt19937_64 rng(seed);
  const std::uint64_t budget = trials == 0 ? 10000 : trials;
  for (std::uint64_t t = 0; t < budget; ++t) {
    Profile s = all_first_profile(g);
    for (std::size_t i = 0; i < m; ++i)
      s.choices[i] = static_cast<int>(uniform_below(rng, g.num_candidates(i)));
    const std::size_t i = uniform_below(rng, m);
    const int alt = static_cast<int>(uniform_below(rng, g.num_candidates(i)));
    if (alt == s[i]) continue;
    if (g.social_utility(i, alt) < g.social_utility(i, s[i])) continue;
    if (!check_pair(s, i, alt)) return report;
  }
  report.monotone = true;
  return report;
}

}  // namespace elgame
