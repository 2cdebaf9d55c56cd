#include "elgame/fpt.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace elgame {

namespace {

// 1-based dominating index of the candidate prefix [0, limit): the largest
// index maximizing own utility among the social-utility maximizers.
int prefix_depth(const GameInstance& g, std::size_t party, int limit) {
  double max_social = g.social_utility(party, 0);
  for (int s = 1; s < limit; ++s)
    max_social = std::max(max_social, g.social_utility(party, s));
  double max_own = -1.0;
  for (int s = 0; s < limit; ++s) {
    if (g.social_utility(party, s) == max_social)
      max_own = std::max(max_own, g.own_utility(party, s));
  }
  int depth = 0;
  for (int s = 0; s < limit; ++s) {
    if (g.social_utility(party, s) == max_social && g.own_utility(party, s) == max_own)
      depth = s;
  }
  return depth + 1;
}

}  // namespace

int ReducedGame::max_depth() const {
  return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

int ReducedGame::max_refined_depth() const {
  return refined_depth.empty()
             ? 0
             : *std::max_element(refined_depth.begin(), refined_depth.end());
}

std::size_t ReducedGame::irresolute_count() const {
  return depth.size() - resolute.size();
}

ReducedGame compute_depths(const GameInstance& g) {
  require_egoistic(g);
  const std::size_t m = g.num_parties();
  ReducedGame reduced;
  reduced.depth.resize(m);
  reduced.strategy_sets.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int d = prefix_depth(g, i, g.num_candidates(i));
    reduced.depth[i] = d;
    reduced.strategy_sets[i].resize(d);
    std::iota(reduced.strategy_sets[i].begin(), reduced.strategy_sets[i].end(), 0);
    if (d == 1) reduced.resolute.push_back(i);
  }
  reduced.refined_depth = reduced.depth;
  return reduced;
}

ReducedGame refine_strategy_sets(const GameInstance& g, ReducedGame reduced) {
  const std::size_t m = g.num_parties();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> chain;  // 1-based indices, built top-down
    int t = reduced.depth[i];
    chain.push_back(t);
    while (t > 1) {
      t = prefix_depth(g, i, t - 1);
      chain.push_back(t);
    }
    std::reverse(chain.begin(), chain.end());
    reduced.refined_depth[i] = static_cast<int>(chain.size());
    reduced.strategy_sets[i].clear();
    for (int c : chain) reduced.strategy_sets[i].push_back(c - 1);
  }
  reduced.refined = true;
  return reduced;
}

std::optional<Profile> fpt_psne(const GameInstance& g, const WpFunction& wp,
                                const FptOptions& options, FptStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  ReducedGame reduced = compute_depths(g);
  if (options.refine) reduced = refine_strategy_sets(g, reduced);
  if (options.probe_monotonicity) {
    const MonotoneReport probe =
        check_monotone(g, wp, options.probe_trials, options.probe_seed);
    if (!probe.monotone) {
      fail(Errc::NonMonotoneWp,
           "winning-probability rule failed a monotonicity probe; the reduced "
           "search is only valid for monotone rules");
    }
  }

  const std::size_t m = g.num_parties();
  FptStats local;
  local.d = reduced.max_depth();
  local.d_refined = reduced.max_refined_depth();
  local.k = reduced.irresolute_count();
  local.resolute_count = reduced.resolute.size();

  // Odometer over positions within each reduced set; resolute parties only
  // ever hold their first candidate, so the walk is lexicographic over the
  // assembled full profiles.
  std::vector<std::size_t> pos(m, 0);
  Profile s = all_first_profile(g);
  for (std::size_t i = 0; i < m; ++i) s.choices[i] = reduced.strategy_sets[i][0];

  std::optional<Profile> found;
  for (;;) {
    ++local.profiles_evaluated;
    bool stable = true;
    for (std::size_t i = 0; i < m && stable; ++i) {
      if (reduced.strategy_sets[i].size() < 2) continue;
      const double base = payoff(g, wp, s, i);
      Profile t = s;
      for (int alt : reduced.strategy_sets[i]) {
        if (alt == s[i]) continue;
        t.choices[i] = alt;
        ++local.deviation_checks;
        if (payoff(g, wp, t, i) > base) {
          stable = false;
          break;
        }
      }
    }
    if (stable) {
      found = s;
      break;
    }
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      if (pos[i] + 1 < reduced.strategy_sets[i].size()) {
        ++pos[i];
        s.choices[i] = reduced.strategy_sets[i][pos[i]];
        for (std::size_t j = i + 1; j < m; ++j) {
          pos[j] = 0;
          s.choices[j] = reduced.strategy_sets[j][0];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  local.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (stats) *stats = local;
  return found;
}

}  // namespace elgame
