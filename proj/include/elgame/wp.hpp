#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "elgame/model.hpp"

namespace elgame {

/// A winning-probability rule: maps a profile to one probability per party.
/// Implementations must produce nonnegative entries summing to 1 and may be
/// called concurrently. Callers can subclass to register custom rules; the
/// library ships hardmax, softmax and the CNF-reduction rule.
class WpFunction {
 public:
  virtual ~WpFunction() = default;

  virtual std::string_view name() const = 0;

  /// Writes m probabilities for profile `s`; `out.size()` must equal m.
  virtual void win_probs_into(const GameInstance& g, const Profile& s,
                              std::span<double> out) const = 0;

  std::vector<double> win_probs(const GameInstance& g, const Profile& s) const;
};

/// All probability mass on the minimum-index party among the social-utility
/// maximizers.
class HardmaxWp final : public WpFunction {
 public:
  std::string_view name() const override { return "hardmax"; }
  void win_probs_into(const GameInstance& g, const Profile& s,
                      std::span<double> out) const override;
};

/// Normalized exponentials of social utility over beta. Exponents lie in
/// [0, 1], so the rule is overflow-free; max-subtraction is applied anyway so
/// the same code path serves custom rules with unbounded scores.
class SoftmaxWp final : public WpFunction {
 public:
  std::string_view name() const override { return "softmax"; }
  void win_probs_into(const GameInstance& g, const Profile& s,
                      std::span<double> out) const override;
};

/// "hardmax" or "softmax"; the "gadget" rule needs a formula and is built via
/// the sat module.
std::unique_ptr<WpFunction> make_wp(std::string_view name);

/// Full intra-party dominance relation at a given context: the probability
/// clause compares winning probabilities of the two unilateral variants of
/// `context` for `party`.
SurpassRel surpass(const GameInstance& g, const WpFunction& wp, std::size_t party,
                   int candidate, int other, const Profile& context);

struct MonotoneViolation {
  Profile profile;
  std::size_t party;
  int from;
  int to;        // alternative with social utility >= from's
  double p_from;
  double p_to;
};

struct MonotoneReport {
  bool monotone = false;
  std::optional<MonotoneViolation> violation;
  std::uint64_t checks = 0;
  bool exhaustive = false;
  explicit operator bool() const { return monotone; }
};

/// Verifies that switching to a candidate with social utility at least as
/// high never lowers the switching party's winning probability. Small
/// instances are checked exhaustively, larger ones by seeded sampling
/// (`trials` probes, default 10000).
MonotoneReport check_monotone(const GameInstance& g, const WpFunction& wp,
                              std::uint64_t trials = 0, std::uint64_t seed = 1);

}  // namespace elgame
