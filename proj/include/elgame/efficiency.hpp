#pragma once

#include <optional>
#include <utility>

#include "elgame/equilibria.hpp"

namespace elgame {

/// Optimal social welfare against the worst/best equilibrium welfare. The
/// PSNE-dependent fields stay empty when no equilibrium exists; the price of
/// anarchy is undefined rather than infinite in that case.
struct EfficiencyReport {
  Profile optimal_profile;
  double optimal_sw = 0.0;
  std::optional<Profile> worst_psne;
  std::optional<Profile> best_psne;
  std::optional<double> worst_psne_sw;
  std::optional<double> best_psne_sw;
  std::optional<double> poa;
  std::optional<double> pos;
  double tau = 0.0;
};

/// Social-welfare maximizing profile, lexicographic tie-break.
std::pair<Profile, double> optimal_profile(const GameInstance& g, const WpFunction& wp,
                                           std::uint64_t cap = kDefaultProfileCap);

EfficiencyReport price_of_anarchy(const GameInstance& g, const WpFunction& wp,
                                  double tau = 0.0,
                                  std::uint64_t cap = kDefaultProfileCap);

/// Two-candidate egoistic family whose price of anarchy under hardmax
/// approaches the party count as eps -> 0: party 1 hides a welfare-beta
/// candidate behind a selfish one, every other party is near-symmetric.
GameInstance make_poa_tight_instance(std::size_t parties, double beta, double eps);

struct SupportCheck {
  bool holds = false;
  std::optional<Profile> violating_psne;
  double lhs = 0.0;  // sum of social utilities played by the violating PSNE
  double rhs = 0.0;  // best single social utility of the optimal profile
  explicit operator bool() const { return holds; }
};

/// For every tau-PSNE, the total social utility of the chosen candidates must
/// reach the optimal profile's best single candidate. Vacuously true without
/// equilibria. Requires an egoistic instance.
SupportCheck check_psne_social_support(const GameInstance& g, const WpFunction& wp,
                                       double tau = 0.0,
                                       std::uint64_t cap = kDefaultProfileCap);

/// True when the price of anarchy is at most the party count (tolerance 1e-9)
/// or no equilibrium exists. Requires an egoistic instance.
bool poa_bounded_by_party_count(const GameInstance& g, const WpFunction& wp,
                                double tau = 0.0,
                                std::uint64_t cap = kDefaultProfileCap);

}  // namespace elgame
