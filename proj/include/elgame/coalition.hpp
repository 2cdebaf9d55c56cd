#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "elgame/payoff.hpp"

namespace elgame {

/// Disjoint groups of party indices (0-based). Parties left out of every
/// block are treated as singleton coalitions. Stored canonically: members
/// ascending, blocks ordered by first member.
struct CoalitionStructure {
  std::vector<std::vector<std::size_t>> blocks;

  /// Accepts 1-based specs such as "1,2|3"; throws InvalidCoalitions on
  /// overlaps, empty blocks or out-of-range parties.
  static CoalitionStructure parse(std::string_view spec, std::size_t num_parties);

  /// Canonical full cover of [0, num_parties): missing parties appended as
  /// singletons, members and blocks sorted.
  CoalitionStructure normalized(std::size_t num_parties) const;

  std::string to_string() const;  // 1-based, "1,2|3"
};

/// The cooperative merge of a strongly egoistic game: each coalition becomes
/// one party whose candidates are all tuples of member candidates, with
/// utilities summed per observing coalition. Candidates are re-sorted by
/// own-coalition utility; beta is raised to the largest coalition social
/// utility when the original bound no longer fits (recorded in metadata).
struct CoalitionGame {
  GameInstance game;
  CoalitionStructure structure;  // normalized
  /// candidate_tuples[block][candidate] lists the member parties' original
  /// 0-based candidate choices, aligned with the block's sorted members.
  std::vector<std::vector<std::vector<int>>> candidate_tuples;
  bool beta_raised = false;
};

CoalitionGame build_coalition_game(const GameInstance& g, const CoalitionStructure& cs,
                                   std::uint64_t block_cap = 1'000'000);

/// Payoff change for `member` when it abandons its coalition and stands alone
/// with the candidate it contributed, every other choice held fixed and the
/// winning-probability rule re-evaluated over the extra player. `choices`
/// gives one 0-based candidate per member party, aligned with the normalized
/// structure. Negative or zero means leaving does not pay.
double coalition_incentive_delta(const GameInstance& g, const CoalitionStructure& cs,
                                 const WpFunction& wp, std::size_t member,
                                 const std::vector<std::vector<int>>& choices);

}  // namespace elgame
