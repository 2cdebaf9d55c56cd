#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "elgame/payoff.hpp"

namespace elgame {

inline constexpr std::uint64_t kDefaultProfileCap = 10'000'000;

struct Deviation {
  std::size_t party;
  int from;
  int to;
  double payoff_before;
  double payoff_after;
};

struct PsneCheck {
  bool is_psne = false;
  std::optional<Deviation> deviation;  // first improving deviation when false
  explicit operator bool() const { return is_psne; }
};

/// A profile is a tau-PSNE when no unilateral deviation improves the deviating
/// party's payoff by more than tau. tau = 0 uses exact strict comparison.
PsneCheck is_psne(const GameInstance& g, const WpFunction& wp, const Profile& s,
                  double tau = 0.0);

/// Exactly the tau-PSNE set, in ascending lexicographic order.
std::vector<Profile> enumerate_psne(const GameInstance& g, const WpFunction& wp,
                                    double tau = 0.0,
                                    std::uint64_t cap = kDefaultProfileCap);

/// First tau-PSNE in lexicographic order, if any.
std::optional<Profile> find_first_psne(const GameInstance& g, const WpFunction& wp,
                                       double tau = 0.0,
                                       std::uint64_t cap = kDefaultProfileCap);

/// Payoff-maximizing candidate for `party` against s_{-party}; ties broken by
/// minimum index. Returns a 0-based candidate index.
int best_response(const GameInstance& g, const WpFunction& wp, const Profile& s,
                  std::size_t party);

/// Detects whether nominating the first candidate is dominant for all parties
/// (or all but one). When it is, a guaranteed equilibrium follows: the
/// all-first profile, or its completion with the remaining party's best
/// response.
struct DominanceResult {
  enum class Kind {
    AllFirstUnique,  // every first candidate strictly surpasses the rest
    AllFirst,        // every first candidate weakly surpasses the rest
    AllButOne,       // all but one party; completed by best response
    NotApplicable,
  };
  Kind kind = Kind::NotApplicable;
  std::optional<Profile> psne;
  std::optional<std::size_t> completed_party;
};

DominanceResult first_candidate_dominance(const GameInstance& g, const WpFunction& wp);

/// Worst multiplicative deviation gain at the all-first profile. A payoff of
/// zero improved to a positive one is reported as unbounded (alpha = +inf);
/// zero improved to zero counts as ratio 1.
struct ApproxReport {
  Profile profile;
  double alpha = 1.0;
  bool unbounded = false;
  std::optional<Deviation> witness;
};

ApproxReport approx_ratio_all_first(const GameInstance& g, const WpFunction& wp);

/// Directed graph over all profiles with an edge s -> s' for every unilateral
/// deviation improving the deviating party by more than tau. Sinks are
/// exactly the tau-PSNE profiles.
struct DeviationGraph {
  struct Edge {
    std::uint64_t from;
    std::uint64_t to;
    std::size_t party;
    double delta;
  };
  std::vector<Profile> nodes;  // lexicographic order
  std::vector<Edge> edges;
  double tau = 0.0;

  std::vector<std::uint64_t> sinks() const;
};

DeviationGraph deviation_graph(const GameInstance& g, const WpFunction& wp,
                               double tau = 0.0,
                               std::uint64_t cap = kDefaultProfileCap,
                               bool best_response_only = false);

/// DOT rendering: node label = 1-based profile tuple, edge label =
/// "(party, delta-payoff)".
void write_dot(const DeviationGraph& graph, std::ostream& out);

}  // namespace elgame
