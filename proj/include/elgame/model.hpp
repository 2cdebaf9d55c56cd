#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elgame/errors.hpp"

namespace elgame {

/// One candidate of a party. `utilities[j]` is the utility that party j's
/// supporters receive if this candidate wins the election.
struct Candidate {
  std::vector<double> utilities;

  bool operator==(const Candidate&) const = default;
};

struct Party {
  std::string name;
  std::vector<Candidate> candidates;

  bool operator==(const Party&) const = default;
};

/// One candidate choice per party. Choices are 0-based internally; every
/// external surface (files, CLI, DOT labels) is 1-based.
struct Profile {
  std::vector<int> choices;

  static Profile from_one_based(std::initializer_list<int> one_based);
  static Profile from_one_based(const std::vector<int>& one_based);

  std::size_t size() const { return choices.size(); }
  int operator[](std::size_t i) const { return choices[i]; }

  /// Renders 1-based, e.g. "(1,2,1)".
  std::string to_string() const;

  auto operator<=>(const Profile&) const = default;
};

/// Unvalidated instance data as read from a file or built by a transform.
struct RawInstance {
  double beta = 0.0;
  std::vector<Party> parties;
  std::map<std::string, std::string> metadata;
};

struct ValidateOptions {
  bool normalize = false;        // stable-sort candidates by own utility
  std::size_t min_parties = 2;   // transforms may produce degenerate games
};

/// A validated election game. Immutable after construction: candidates are
/// sorted per party by own-party utility (descending), all utilities are
/// nonnegative, and every social utility lies in [0, beta]. Safe for
/// concurrent reads.
class GameInstance {
 public:
  /// Empty placeholder; every meaningful instance comes out of validate().
  GameInstance() = default;

  static GameInstance validate(RawInstance raw, ValidateOptions opts = {});

  std::size_t num_parties() const { return parties_.size(); }
  int num_candidates(std::size_t party) const;
  double beta() const { return beta_; }
  const Party& party(std::size_t i) const;
  const std::vector<Party>& parties() const { return parties_; }

  /// u_observer(x_{party,candidate}); candidate is 0-based.
  double utility(std::size_t party, int candidate, std::size_t observer) const;
  double own_utility(std::size_t party, int candidate) const;
  double social_utility(std::size_t party, int candidate) const;

  /// Number of profiles, saturating at UINT64_MAX.
  std::uint64_t profile_count() const;
  void check_profile(const Profile& s) const;

  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  void set_metadata(const std::string& key, const std::string& value);

  bool same_data(const GameInstance& other) const {
    return beta_ == other.beta_ && parties_ == other.parties_;
  }

 private:
  double beta_ = 0.0;
  std::vector<Party> parties_;
  std::vector<std::vector<double>> social_;  // cached per (party, candidate)
  std::map<std::string, std::string> metadata_;
};

double social_utility(const GameInstance& g, std::size_t party, int candidate);

/// All candidates set to index 0.
Profile all_first_profile(const GameInstance& g);

/// Odometer step in lexicographic order; returns false after the last profile.
bool next_profile(const GameInstance& g, Profile& s);

/// Throws ProfileSpaceTooLarge when the profile count exceeds `cap`.
std::uint64_t checked_profile_count(const GameInstance& g, std::uint64_t cap);

struct EgoismWitness {
  std::size_t party;
  int candidate;
  std::size_t rival_party;
  int rival_candidate;
  double own;
  double cross;
};

struct EgoismCheck {
  bool egoistic = false;
  std::optional<EgoismWitness> witness;
  explicit operator bool() const { return egoistic; }
};

/// Every candidate must benefit its own party's supporters strictly more
/// than any rival party's candidate does.
EgoismCheck is_egoistic(const GameInstance& g);

struct StrongEgoismWitness {
  std::size_t party;
  int candidate;
  double own;
  double rival_sum;
};

struct StrongEgoismCheck {
  bool strongly_egoistic = false;
  std::optional<StrongEgoismWitness> witness;
  explicit operator bool() const { return strongly_egoistic; }
};

/// Own benefit must strictly exceed the sum over rival parties of their best
/// cross benefit.
StrongEgoismCheck is_strongly_egoistic(const GameInstance& g);

enum class SurpassRel { Neither, WeaklySurpasses, Surpasses };

/// Intra-party dominance using only index order, own utility and social
/// utility. The probability clause of the full relation is implied for
/// monotone winning-probability rules whenever the social utility comparison
/// is strict, so this variant never has to evaluate probabilities.
SurpassRel surpass_context_free(const GameInstance& g, std::size_t party,
                                int candidate, int other);

void require_egoistic(const GameInstance& g);
void require_strongly_egoistic(const GameInstance& g);

}  // namespace elgame
