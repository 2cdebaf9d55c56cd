#include "elgame/payoff.hpp"

namespace elgame {

double payoff(const GameInstance& g, const WpFunction& wp, const Profile& s,
              std::size_t party) {
  if (party >= g.num_parties()) fail(Errc::IndexOutOfRange, "party index out of range");
  const std::vector<double> probs = wp.win_probs(g, s);
  double total = 0.0;
  for (std::size_t j = 0; j < g.num_parties(); ++j)
    total += probs[j] * g.utility(j, s[j], party);
  return total;
}

Evaluation evaluate(const GameInstance& g, const WpFunction& wp, const Profile& s) {
  const std::size_t m = g.num_parties();
  Evaluation ev;
  ev.probs = wp.win_probs(g, s);
  ev.payoffs.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double pj = ev.probs[j];
    if (pj == 0.0) continue;
    const auto& u = g.party(j).candidates[s[j]].utilities;
    for (std::size_t i = 0; i < m; ++i) ev.payoffs[i] += pj * u[i];
    ev.social_welfare += pj * g.social_utility(j, s[j]);
  }
  return ev;
}

}  // namespace elgame
