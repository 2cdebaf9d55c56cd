#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "elgame/io.hpp"
#include "elgame/model.hpp"
#include "elgame/wp.hpp"

namespace elgame::testing {

/// Builds a validated instance from per-party candidate utility rows.
inline GameInstance make_game(double beta,
                              std::vector<std::vector<std::vector<double>>> parties,
                              bool normalize = false) {
  RawInstance raw;
  raw.beta = beta;
  for (std::size_t i = 0; i < parties.size(); ++i) {
    Party p;
    p.name = "P" + std::to_string(i + 1);
    for (auto& row : parties[i]) p.candidates.push_back({std::move(row)});
    raw.parties.push_back(std::move(p));
  }
  return GameInstance::validate(std::move(raw), {.normalize = normalize});
}

inline Profile P(std::initializer_list<int> one_based) {
  return Profile::from_one_based(one_based);
}

/// Equal mass to every party regardless of the profile.
class UniformWp final : public WpFunction {
 public:
  std::string_view name() const override { return "uniform"; }
  void win_probs_into(const GameInstance& g, const Profile& s,
                      std::span<double> out) const override {
    g.check_profile(s);
    const double p = 1.0 / static_cast<double>(g.num_parties());
    for (auto& x : out) x = p;
  }
};

/// Deliberately rewards low social utility; not monotone.
class InverseSoftmaxWp final : public WpFunction {
 public:
  std::string_view name() const override { return "inverse-softmax"; }
  void win_probs_into(const GameInstance& g, const Profile& s,
                      std::span<double> out) const override {
    g.check_profile(s);
    double total = 0.0;
    for (std::size_t i = 0; i < g.num_parties(); ++i) {
      out[i] = std::exp(-g.social_utility(i, s[i]) / g.beta());
      total += out[i];
    }
    for (auto& x : out) x /= total;
  }
};

}  // namespace elgame::testing
