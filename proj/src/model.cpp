#include "elgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace elgame {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NegativeUtility: return "NegativeUtility";
    case Errc::SocialUtilityExceedsBeta: return "SocialUtilityExceedsBeta";
    case Errc::UnsortedCandidates: return "UnsortedCandidates";
    case Errc::EmptyParty: return "EmptyParty";
    case Errc::TooFewParties: return "TooFewParties";
    case Errc::UtilityVectorSize: return "UtilityVectorSize";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ProfileSpaceTooLarge: return "ProfileSpaceTooLarge";
    case Errc::NotEgoistic: return "NotEgoistic";
    case Errc::NotStronglyEgoistic: return "NotStronglyEgoistic";
    case Errc::MemberIsSingleton: return "MemberIsSingleton";
    case Errc::CoalitionSpaceTooLarge: return "CoalitionSpaceTooLarge";
    case Errc::InvalidCoalitions: return "InvalidCoalitions";
    case Errc::TooFewVariables: return "TooFewVariables";
    case Errc::ParseError: return "ParseError";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
    case Errc::NonMonotoneWp: return "NonMonotoneWp";
  }
  return "Unknown";
}

Profile Profile::from_one_based(std::initializer_list<int> one_based) {
  return from_one_based(std::vector<int>(one_based));
}

Profile Profile::from_one_based(const std::vector<int>& one_based) {
  Profile s;
  s.choices.reserve(one_based.size());
  for (int c : one_based) {
    if (c < 1) fail(Errc::IndexOutOfRange, "candidate indices are 1-based");
    s.choices.push_back(c - 1);
  }
  return s;
}

std::string Profile::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out << ',';
    out << choices[i] + 1;
  }
  out << ')';
  return out.str();
}

namespace {

// Absolute slack for the social-utility bound; a sum of m rounded doubles
// can land a few ulps above beta.
double beta_slack(double beta) { return beta * 1e-12 + 1e-12; }

}  // namespace

GameInstance GameInstance::validate(RawInstance raw, ValidateOptions opts) {
  if (raw.parties.size() < opts.min_parties) {
    fail(Errc::TooFewParties,
         "instance has " + std::to_string(raw.parties.size()) +
             " parties, need at least " + std::to_string(opts.min_parties));
  }
  if (!(raw.beta >= 1.0) || !std::isfinite(raw.beta)) {
    fail(Errc::InvalidArgument, "beta must be a finite real number >= 1");
  }
  const std::size_t m = raw.parties.size();
  for (std::size_t i = 0; i < m; ++i) {
    Party& p = raw.parties[i];
    if (p.candidates.empty()) {
      fail(Errc::EmptyParty, "party " + std::to_string(i + 1) + " has no candidates");
    }
    for (std::size_t s = 0; s < p.candidates.size(); ++s) {
      const Candidate& c = p.candidates[s];
      if (c.utilities.size() != m) {
        fail(Errc::UtilityVectorSize,
             "party " + std::to_string(i + 1) + " candidate " + std::to_string(s + 1) +
                 " has " + std::to_string(c.utilities.size()) + " utilities, expected " +
                 std::to_string(m));
      }
      for (std::size_t j = 0; j < m; ++j) {
        const double u = c.utilities[j];
        if (!(u >= 0.0) || !std::isfinite(u)) {
          fail(Errc::NegativeUtility,
               "utility of party " + std::to_string(i + 1) + " candidate " +
                   std::to_string(s + 1) + " for party " + std::to_string(j + 1) +
                   " is " + std::to_string(u));
        }
      }
    }
    if (opts.normalize) {
      std::stable_sort(p.candidates.begin(), p.candidates.end(),
                       [i](const Candidate& a, const Candidate& b) {
                         return a.utilities[i] > b.utilities[i];
                       });
    } else {
      for (std::size_t s = 0; s + 1 < p.candidates.size(); ++s) {
        if (p.candidates[s].utilities[i] < p.candidates[s + 1].utilities[i]) {
          fail(Errc::UnsortedCandidates,
               "party " + std::to_string(i + 1) +
                   " candidates are not sorted by own utility (positions " +
                   std::to_string(s + 1) + "," + std::to_string(s + 2) + ")");
        }
      }
    }
  }

  GameInstance g;
  g.beta_ = raw.beta;
  g.parties_ = std::move(raw.parties);
  g.metadata_ = std::move(raw.metadata);
  g.social_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Party& p = g.parties_[i];
    g.social_[i].reserve(p.candidates.size());
    for (std::size_t s = 0; s < p.candidates.size(); ++s) {
      const auto& u = p.candidates[s].utilities;
      const double total = std::accumulate(u.begin(), u.end(), 0.0);
      if (total > g.beta_ + beta_slack(g.beta_)) {
        fail(Errc::SocialUtilityExceedsBeta,
             "social utility of party " + std::to_string(i + 1) + " candidate " +
                 std::to_string(s + 1) + " is " + std::to_string(total) +
                 " which exceeds beta = " + std::to_string(g.beta_));
      }
      g.social_[i].push_back(total);
    }
  }
  return g;
}

int GameInstance::num_candidates(std::size_t party) const {
  if (party >= parties_.size()) fail(Errc::IndexOutOfRange, "party index out of range");
  return static_cast<int>(parties_[party].candidates.size());
}

const Party& GameInstance::party(std::size_t i) const {
  if (i >= parties_.size()) fail(Errc::IndexOutOfRange, "party index out of range");
  return parties_[i];
}

double GameInstance::utility(std::size_t party, int candidate, std::size_t observer) const {
  if (party >= parties_.size() || observer >= parties_.size())
    fail(Errc::IndexOutOfRange, "party index out of range");
  const auto& cands = parties_[party].candidates;
  if (candidate < 0 || static_cast<std::size_t>(candidate) >= cands.size())
    fail(Errc::IndexOutOfRange, "candidate index out of range");
  return cands[candidate].utilities[observer];
}

double GameInstance::own_utility(std::size_t party, int candidate) const {
  return utility(party, candidate, party);
}

double GameInstance::social_utility(std::size_t party, int candidate) const {
  if (party >= parties_.size()) fail(Errc::IndexOutOfRange, "party index out of range");
  const auto& row = social_[party];
  if (candidate < 0 || static_cast<std::size_t>(candidate) >= row.size())
    fail(Errc::IndexOutOfRange, "candidate index out of range");
  return row[candidate];
}

std::uint64_t GameInstance::profile_count() const {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    const std::uint64_t n = parties_[i].candidates.size();
    if (count > std::numeric_limits<std::uint64_t>::max() / n)
      return std::numeric_limits<std::uint64_t>::max();
    count *= n;
  }
  return count;
}

void GameInstance::check_profile(const Profile& s) const {
  if (s.size() != parties_.size())
    fail(Errc::IndexOutOfRange, "profile length does not match party count");
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= parties_[i].candidates.size())
      fail(Errc::IndexOutOfRange,
           "candidate index " + std::to_string(s[i] + 1) + " out of range for party " +
               std::to_string(i + 1));
  }
}

void GameInstance::set_metadata(const std::string& key, const std::string& value) {
  metadata_[key] = value;
}

double social_utility(const GameInstance& g, std::size_t party, int candidate) {
  return g.social_utility(party, candidate);
}

Profile all_first_profile(const GameInstance& g) {
  Profile s;
  s.choices.assign(g.num_parties(), 0);
  return s;
}

bool next_profile(const GameInstance& g, Profile& s) {
  for (std::size_t i = g.num_parties(); i-- > 0;) {
    if (s.choices[i] + 1 < g.num_candidates(i)) {
      ++s.choices[i];
      std::fill(s.choices.begin() + i + 1, s.choices.end(), 0);
      return true;
    }
  }
  return false;
}

std::uint64_t checked_profile_count(const GameInstance& g, std::uint64_t cap) {
  const std::uint64_t count = g.profile_count();
  if (count > cap) {
    fail(Errc::ProfileSpaceTooLarge,
         "profile space of size " + std::to_string(count) + " exceeds cap " +
             std::to_string(cap));
  }
  return count;
}

EgoismCheck is_egoistic(const GameInstance& g) {
  const std::size_t m = g.num_parties();
  for (std::size_t i = 0; i < m; ++i) {
    for (int si = 0; si < g.num_candidates(i); ++si) {
      const double own = g.own_utility(i, si);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        for (int sj = 0; sj < g.num_candidates(j); ++sj) {
          const double cross = g.utility(j, sj, i);
          if (!(own > cross)) {
            return {false, EgoismWitness{i, si, j, sj, own, cross}};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

StrongEgoismCheck is_strongly_egoistic(const GameInstance& g) {
  const std::size_t m = g.num_parties();
  for (std::size_t i = 0; i < m; ++i) {
    double rival_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      double best = 0.0;
      for (int sj = 0; sj < g.num_candidates(j); ++sj)
        best = std::max(best, g.utility(j, sj, i));
      rival_sum += best;
    }
    for (int si = 0; si < g.num_candidates(i); ++si) {
      const double own = g.own_utility(i, si);
      if (!(own > rival_sum)) {
        return {false, StrongEgoismWitness{i, si, own, rival_sum}};
      }
    }
  }
  return {true, std::nullopt};
}

SurpassRel surpass_context_free(const GameInstance& g, std::size_t party,
                                int candidate, int other) {
  if (candidate == other)
    fail(Errc::InvalidArgument, "surpass comparison needs distinct candidates");
  const double own_a = g.own_utility(party, candidate);
  const double own_b = g.own_utility(party, other);
  const double soc_a = g.social_utility(party, candidate);
  const double soc_b = g.social_utility(party, other);
  if (candidate > other || soc_a < soc_b) return SurpassRel::Neither;
  if (own_a > own_b || soc_a > soc_b) return SurpassRel::Surpasses;
  return SurpassRel::WeaklySurpasses;
}

void require_egoistic(const GameInstance& g) {
  const EgoismCheck check = is_egoistic(g);
  if (!check.egoistic) {
    const EgoismWitness& w = *check.witness;
    fail(Errc::NotEgoistic,
         "instance is not egoistic: u_" + std::to_string(w.party + 1) + "(x_{" +
             std::to_string(w.party + 1) + "," + std::to_string(w.candidate + 1) +
             "}) = " + std::to_string(w.own) + " does not exceed u_" +
             std::to_string(w.party + 1) + "(x_{" + std::to_string(w.rival_party + 1) +
             "," + std::to_string(w.rival_candidate + 1) + "}) = " +
             std::to_string(w.cross));
  }
}

void require_strongly_egoistic(const GameInstance& g) {
  const StrongEgoismCheck check = is_strongly_egoistic(g);
  if (!check.strongly_egoistic) {
    const StrongEgoismWitness& w = *check.witness;
    fail(Errc::NotStronglyEgoistic,
         "instance is not strongly egoistic: party " + std::to_string(w.party + 1) +
             " candidate " + std::to_string(w.candidate + 1) + " own utility " +
             std::to_string(w.own) + " does not exceed rival sum " +
             std::to_string(w.rival_sum));
  }
}

}  // namespace elgame
