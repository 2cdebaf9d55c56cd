#include "elgame/coalition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>

namespace elgame {

namespace {

std::size_t parse_party_index(const std::string& token, std::size_t num_parties) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    fail(Errc::InvalidCoalitions, "bad party index '" + token + "'");
  }
  if (pos != token.size() || value < 1 ||
      static_cast<std::size_t>(value) > num_parties) {
    fail(Errc::InvalidCoalitions, "bad party index '" + token + "'");
  }
  return static_cast<std::size_t>(value - 1);
}

// Largest social utility any candidate tuple of any block can reach; member
// maxima are independent, so no tuple enumeration is needed.
double max_coalition_social(const GameInstance& g, const CoalitionStructure& cs) {
  double best = 0.0;
  for (const auto& block : cs.blocks) {
    double total = 0.0;
    for (std::size_t member : block) {
      double top = 0.0;
      for (int s = 0; s < g.num_candidates(member); ++s)
        top = std::max(top, g.social_utility(member, s));
      total += top;
    }
    best = std::max(best, total);
  }
  return best;
}

void check_choices(const GameInstance& g, const CoalitionStructure& cs,
                   const std::vector<std::vector<int>>& choices) {
  if (choices.size() != cs.blocks.size())
    fail(Errc::InvalidArgument, "need one choice tuple per coalition");
  for (std::size_t b = 0; b < cs.blocks.size(); ++b) {
    if (choices[b].size() != cs.blocks[b].size())
      fail(Errc::InvalidArgument, "choice tuple size does not match coalition size");
    for (std::size_t t = 0; t < cs.blocks[b].size(); ++t) {
      const std::size_t member = cs.blocks[b][t];
      if (choices[b][t] < 0 || choices[b][t] >= g.num_candidates(member))
        fail(Errc::IndexOutOfRange, "candidate choice out of range");
    }
  }
}

struct AggregatedPlayer {
  std::vector<std::pair<std::size_t, int>> picks;  // (party, candidate)
};

// Single-candidate game over aggregated players, evaluated at the all-first
// profile. Utilities are summed per observing player; the member's own view
// is accumulated separately.
double expected_member_payoff(const GameInstance& g, const WpFunction& wp,
                              const std::vector<AggregatedPlayer>& players,
                              std::size_t member, double beta) {
  const std::size_t mm = players.size();
  RawInstance raw;
  raw.beta = beta;
  raw.parties.resize(mm);
  std::vector<double> member_view(mm, 0.0);
  for (std::size_t k = 0; k < mm; ++k) {
    Candidate joint;
    joint.utilities.assign(mm, 0.0);
    for (const auto& [party, candidate] : players[k].picks) {
      for (std::size_t j = 0; j < mm; ++j) {
        for (const auto& [obs_party, obs_candidate] : players[j].picks) {
          (void)obs_candidate;
          joint.utilities[j] += g.utility(party, candidate, obs_party);
        }
      }
      member_view[k] += g.utility(party, candidate, member);
    }
    raw.parties[k].name = "C" + std::to_string(k + 1);
    raw.parties[k].candidates.push_back(std::move(joint));
  }
  const GameInstance merged =
      GameInstance::validate(std::move(raw), {.normalize = false, .min_parties = 1});
  const std::vector<double> probs = wp.win_probs(merged, all_first_profile(merged));
  double total = 0.0;
  for (std::size_t k = 0; k < mm; ++k) total += probs[k] * member_view[k];
  return total;
}

}  // namespace

CoalitionStructure CoalitionStructure::parse(std::string_view spec,
                                             std::size_t num_parties) {
  CoalitionStructure cs;
  std::string text(spec);
  std::istringstream blocks_in(text);
  std::string block_text;
  std::vector<bool> seen(num_parties, false);
  while (std::getline(blocks_in, block_text, '|')) {
    std::istringstream members_in(block_text);
    std::string token;
    std::vector<std::size_t> block;
    while (std::getline(members_in, token, ',')) {
      token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
      if (token.empty()) continue;
      const std::size_t party = parse_party_index(token, num_parties);
      if (seen[party])
        fail(Errc::InvalidCoalitions,
             "party " + std::to_string(party + 1) + " appears in two coalitions");
      seen[party] = true;
      block.push_back(party);
    }
    if (block.empty()) fail(Errc::InvalidCoalitions, "empty coalition block");
    cs.blocks.push_back(std::move(block));
  }
  if (cs.blocks.empty()) fail(Errc::InvalidCoalitions, "no coalition blocks given");
  return cs.normalized(num_parties);
}

CoalitionStructure CoalitionStructure::normalized(std::size_t num_parties) const {
  CoalitionStructure out;
  std::vector<bool> seen(num_parties, false);
  for (const auto& block : blocks) {
    if (block.empty()) fail(Errc::InvalidCoalitions, "empty coalition block");
    auto sorted = block;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t member : sorted) {
      if (member >= num_parties)
        fail(Errc::InvalidCoalitions, "party index out of range");
      if (seen[member])
        fail(Errc::InvalidCoalitions,
             "party " + std::to_string(member + 1) + " appears in two coalitions");
      seen[member] = true;
    }
    out.blocks.push_back(std::move(sorted));
  }
  for (std::size_t i = 0; i < num_parties; ++i)
    if (!seen[i]) out.blocks.push_back({i});
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::string CoalitionStructure::to_string() const {
  std::ostringstream out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out << '|';
    for (std::size_t t = 0; t < blocks[b].size(); ++t) {
      if (t) out << ',';
      out << blocks[b][t] + 1;
    }
  }
  return out.str();
}

CoalitionGame build_coalition_game(const GameInstance& g, const CoalitionStructure& cs,
                                   std::uint64_t block_cap) {
  require_strongly_egoistic(g);
  CoalitionGame result;
  result.structure = cs.normalized(g.num_parties());
  const auto& blocks = result.structure.blocks;
  const std::size_t mm = blocks.size();

  for (const auto& block : blocks) {
    std::uint64_t count = 1;
    for (std::size_t member : block) {
      count *= static_cast<std::uint64_t>(g.num_candidates(member));
      if (count > block_cap)
        fail(Errc::CoalitionSpaceTooLarge,
             "coalition candidate space exceeds cap " + std::to_string(block_cap));
    }
  }

  const double top_social = max_coalition_social(g, result.structure);
  double beta = g.beta();
  if (top_social > beta) {
    beta = top_social;
    result.beta_raised = true;
  }

  RawInstance raw;
  raw.beta = beta;
  raw.parties.resize(mm);
  result.candidate_tuples.resize(mm);

  for (std::size_t b = 0; b < mm; ++b) {
    const auto& block = blocks[b];
    Party& party = raw.parties[b];
    {
      std::ostringstream name;
      for (std::size_t t = 0; t < block.size(); ++t) {
        if (t) name << '+';
        const std::string& base = g.party(block[t]).name;
        name << (base.empty() ? "P" + std::to_string(block[t] + 1) : base);
      }
      party.name = name.str();
    }

    std::vector<int> tuple(block.size(), 0);
    std::vector<std::pair<Candidate, std::vector<int>>> built;
    for (;;) {
      Candidate joint;
      joint.utilities.assign(mm, 0.0);
      for (std::size_t t = 0; t < block.size(); ++t) {
        for (std::size_t ob = 0; ob < mm; ++ob) {
          for (std::size_t observer : blocks[ob])
            joint.utilities[ob] += g.utility(block[t], tuple[t], observer);
        }
      }
      built.emplace_back(std::move(joint), tuple);

      bool advanced = false;
      for (std::size_t t = block.size(); t-- > 0;) {
        if (tuple[t] + 1 < g.num_candidates(block[t])) {
          ++tuple[t];
          std::fill(tuple.begin() + t + 1, tuple.end(), 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }

    std::stable_sort(built.begin(), built.end(),
                     [b](const auto& x, const auto& y) {
                       return x.first.utilities[b] > y.first.utilities[b];
                     });
    for (auto& [candidate, source] : built) {
      party.candidates.push_back(std::move(candidate));
      result.candidate_tuples[b].push_back(std::move(source));
    }
  }

  raw.metadata = g.metadata();
  raw.metadata["coalition-blocks"] = result.structure.to_string();
  raw.metadata["coalition-beta-raised"] = result.beta_raised ? "true" : "false";
  result.game =
      GameInstance::validate(std::move(raw), {.normalize = false, .min_parties = 1});
  return result;
}

double coalition_incentive_delta(const GameInstance& g, const CoalitionStructure& cs,
                                 const WpFunction& wp, std::size_t member,
                                 const std::vector<std::vector<int>>& choices) {
  require_strongly_egoistic(g);
  if (member >= g.num_parties()) fail(Errc::IndexOutOfRange, "party index out of range");
  const CoalitionStructure canonical = cs.normalized(g.num_parties());
  check_choices(g, canonical, choices);

  std::size_t home_block = canonical.blocks.size();
  std::size_t home_slot = 0;
  for (std::size_t b = 0; b < canonical.blocks.size(); ++b) {
    for (std::size_t t = 0; t < canonical.blocks[b].size(); ++t) {
      if (canonical.blocks[b][t] == member) {
        home_block = b;
        home_slot = t;
      }
    }
  }
  if (canonical.blocks[home_block].size() < 2)
    fail(Errc::MemberIsSingleton,
         "party " + std::to_string(member + 1) + " is not in a coalition of size >= 2");

  // One shared beta keeps both configurations on the same probability scale.
  const double beta = std::max(g.beta(), max_coalition_social(g, canonical));

  std::vector<AggregatedPlayer> united(canonical.blocks.size());
  for (std::size_t b = 0; b < canonical.blocks.size(); ++b) {
    for (std::size_t t = 0; t < canonical.blocks[b].size(); ++t)
      united[b].picks.emplace_back(canonical.blocks[b][t], choices[b][t]);
  }
  const double inside = expected_member_payoff(g, wp, united, member, beta);

  // The member stands alone with its contributed candidate; the shrunken home
  // coalition and every other coalition keep their choices.
  std::vector<AggregatedPlayer> split;
  split.emplace_back();
  split.back().picks.emplace_back(member, choices[home_block][home_slot]);
  for (std::size_t b = 0; b < canonical.blocks.size(); ++b) {
    AggregatedPlayer player;
    for (std::size_t t = 0; t < canonical.blocks[b].size(); ++t) {
      if (b == home_block && t == home_slot) continue;
      player.picks.emplace_back(canonical.blocks[b][t], choices[b][t]);
    }
    if (!player.picks.empty()) split.push_back(std::move(player));
  }
  const double outside = expected_member_payoff(g, wp, split, member, beta);

  return outside - inside;
}

}  // namespace elgame
