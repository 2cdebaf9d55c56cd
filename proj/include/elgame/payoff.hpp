#pragma once

#include <vector>

#include "elgame/model.hpp"
#include "elgame/wp.hpp"

namespace elgame {

/// Winning probabilities, per-party expected payoffs and the social welfare
/// of one profile. social_welfare equals both the payoff sum and the
/// probability-weighted social utility.
struct Evaluation {
  std::vector<double> probs;
  std::vector<double> payoffs;
  double social_welfare = 0.0;
};

/// Expected utility for `party`'s supporters over the winner distribution.
double payoff(const GameInstance& g, const WpFunction& wp, const Profile& s,
              std::size_t party);

Evaluation evaluate(const GameInstance& g, const WpFunction& wp, const Profile& s);

}  // namespace elgame
