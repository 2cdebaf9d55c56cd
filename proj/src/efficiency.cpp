#include "elgame/efficiency.hpp"

#include <algorithm>
#include <string>

namespace elgame {

std::pair<Profile, double> optimal_profile(const GameInstance& g, const WpFunction& wp,
                                           std::uint64_t cap) {
  checked_profile_count(g, cap);
  Profile s = all_first_profile(g);
  Profile best = s;
  double best_sw = evaluate(g, wp, s).social_welfare;
  while (next_profile(g, s)) {
    const double sw = evaluate(g, wp, s).social_welfare;
    if (sw > best_sw) {
      best_sw = sw;
      best = s;
    }
  }
  return {best, best_sw};
}

EfficiencyReport price_of_anarchy(const GameInstance& g, const WpFunction& wp,
                                  double tau, std::uint64_t cap) {
  checked_profile_count(g, cap);
  EfficiencyReport report;
  report.tau = tau;

  Profile s = all_first_profile(g);
  bool first = true;
  do {
    const double sw = evaluate(g, wp, s).social_welfare;
    if (first || sw > report.optimal_sw) {
      report.optimal_sw = sw;
      report.optimal_profile = s;
      first = false;
    }
    if (is_psne(g, wp, s, tau).is_psne) {
      if (!report.worst_psne_sw || sw < *report.worst_psne_sw) {
        report.worst_psne_sw = sw;
        report.worst_psne = s;
      }
      if (!report.best_psne_sw || sw > *report.best_psne_sw) {
        report.best_psne_sw = sw;
        report.best_psne = s;
      }
    }
  } while (next_profile(g, s));

  if (report.worst_psne_sw) {
    report.poa = report.optimal_sw / *report.worst_psne_sw;
    report.pos = report.optimal_sw / *report.best_psne_sw;
  }
  return report;
}

GameInstance make_poa_tight_instance(std::size_t parties, double beta, double eps) {
  if (parties < 2)
    fail(Errc::InvalidArgument, "the family needs at least 2 parties");
  if (!(beta >= 1.0))
    fail(Errc::InvalidArgument, "beta must be a real number >= 1");
  if (!(eps > 0.0) || !(eps < 1.0))
    fail(Errc::InvalidArgument, "eps must lie in (0, 1)");
  const double share = beta / static_cast<double>(parties);
  if (share + 3.0 * eps > beta)
    fail(Errc::InvalidArgument, "beta/m + 3*eps must not exceed beta");

  RawInstance raw;
  raw.beta = beta;
  raw.parties.resize(parties);
  for (std::size_t i = 0; i < parties; ++i) {
    Party& p = raw.parties[i];
    p.name = "P" + std::to_string(i + 1);
    Candidate selfish;
    selfish.utilities.assign(parties, 0.0);
    Candidate runner_up;
    runner_up.utilities.assign(parties, 0.0);
    if (i == 0) {
      selfish.utilities[0] = share + 3.0 * eps;
      runner_up.utilities.assign(parties, share);  // benefits everyone equally
    } else {
      selfish.utilities[i] = share + 2.0 * eps;
      runner_up.utilities[i] = share + eps;
    }
    p.candidates = {selfish, runner_up};
  }
  raw.metadata["source"] = "poa-tight-family";
  raw.metadata["eps"] = std::to_string(eps);
  return GameInstance::validate(std::move(raw));
}

SupportCheck check_psne_social_support(const GameInstance& g, const WpFunction& wp,
                                       double tau, std::uint64_t cap) {
  require_egoistic(g);
  const auto [opt, opt_sw] = optimal_profile(g, wp, cap);
  double rhs = 0.0;
  for (std::size_t i = 0; i < g.num_parties(); ++i)
    rhs = std::max(rhs, g.social_utility(i, opt[i]));

  SupportCheck check;
  check.rhs = rhs;
  Profile s = all_first_profile(g);
  do {
    if (!is_psne(g, wp, s, tau).is_psne) continue;
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.num_parties(); ++i)
      lhs += g.social_utility(i, s[i]);
    if (lhs < rhs - 1e-9) {
      check.holds = false;
      check.violating_psne = s;
      check.lhs = lhs;
      return check;
    }
  } while (next_profile(g, s));
  check.holds = true;
  return check;
}

bool poa_bounded_by_party_count(const GameInstance& g, const WpFunction& wp,
                                double tau, std::uint64_t cap) {
  require_egoistic(g);
  const EfficiencyReport report = price_of_anarchy(g, wp, tau, cap);
  if (!report.poa) return true;
  return *report.poa <= static_cast<double>(g.num_parties()) + 1e-9;
}

}  // namespace elgame
