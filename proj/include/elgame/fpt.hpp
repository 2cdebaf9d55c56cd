#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elgame/equilibria.hpp"

namespace elgame {

/// Per-party strategy reduction for the fixed-parameter equilibrium search.
///
/// depth[i] (d_i) is the 1-based index of the candidate that dominates the
/// whole tail of party i's list: the highest-indexed candidate that maximizes
/// own utility among the social-utility maximizers. Parties with d_i = 1 are
/// resolute and can be pinned to their first candidate; the remaining k
/// irresolute parties drive the search. Refinement repeats the same
/// computation on shrinking prefixes, keeping only an undominated chain of
/// length refined_depth[i] <= depth[i].
struct ReducedGame {
  std::vector<int> depth;                       // d_i, 1-based
  std::vector<int> refined_depth;               // chain length, == depth until refined
  std::vector<std::vector<int>> strategy_sets;  // 0-based candidates, ascending
  std::vector<std::size_t> resolute;            // parties with depth 1
  bool refined = false;

  int max_depth() const;
  int max_refined_depth() const;
  std::size_t irresolute_count() const;
};

/// Requires an egoistic instance (the reduction is unsound otherwise).
ReducedGame compute_depths(const GameInstance& g);

ReducedGame refine_strategy_sets(const GameInstance& g, ReducedGame reduced);

struct FptStats {
  std::uint64_t profiles_evaluated = 0;
  std::uint64_t deviation_checks = 0;
  int d = 0;
  int d_refined = 0;
  std::size_t k = 0;
  std::size_t resolute_count = 0;
  double elapsed_seconds = 0.0;
};

struct FptOptions {
  bool refine = true;
  bool probe_monotonicity = false;  // sampled check; NonMonotoneWp on failure
  std::uint64_t probe_trials = 200;
  std::uint64_t probe_seed = 1;
};

/// Searches the reduced profile space (resolute parties pinned to their first
/// candidate) for an exact equilibrium of the full game; deviation checks
/// range over the reduced strategy sets, which suffices for egoistic
/// instances under a monotone rule. Returns the lexicographically smallest
/// hit, or nullopt when the reduced space holds none.
std::optional<Profile> fpt_psne(const GameInstance& g, const WpFunction& wp,
                                const FptOptions& options = {},
                                FptStats* stats = nullptr);

}  // namespace elgame
