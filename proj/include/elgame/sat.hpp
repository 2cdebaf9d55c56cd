#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "elgame/equilibria.hpp"

namespace elgame {

/// CNF over variables 1..num_vars; literals are signed 1-based indices.
/// An empty clause list is the trivially true formula.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool eval(const std::vector<bool>& assignment) const;

  static CnfFormula parse_dimacs(std::istream& in);
  static CnfFormula parse_dimacs_text(const std::string& text);
  std::string to_dimacs() const;
};

/// Exhaustive satisfiability for formulas of at most 30 variables.
bool brute_force_satisfiable(const CnfFormula& f,
                             std::vector<bool>* witness = nullptr);

/// Election game built from a CNF so that equilibrium existence under the
/// reduction rule tracks the formula's structure. One party per variable
/// (candidate 1 = true, candidate 2 = false): the last two parties carry the
/// fixed 83/1, 80/19, 3/24, 9/22 utility block; every earlier party is filler
/// whose candidates are worth eps < 1 and never win.
struct SatReduction {
  GameInstance game;
  std::shared_ptr<const CnfFormula> formula;
  double epsilon = 0.5;
};

SatReduction build_sat_reduction(CnfFormula f, double epsilon = 0.5);

/// Power-law winning probabilities whose exponent drops from 1 to 0.9 on
/// profiles encoding a satisfying assignment. Parties whose candidate's
/// social utility is at most 1 receive probability zero; the rest share the
/// full mass.
class ReductionWp final : public WpFunction {
 public:
  explicit ReductionWp(std::shared_ptr<const CnfFormula> formula)
      : formula_(std::move(formula)) {}

  std::string_view name() const override { return "gadget"; }
  void win_probs_into(const GameInstance& g, const Profile& s,
                      std::span<double> out) const override;

  const CnfFormula& formula() const { return *formula_; }

 private:
  std::shared_ptr<const CnfFormula> formula_;
};

std::vector<double> reduction_payoffs(const SatReduction& reduction, const Profile& s);

bool reduction_psne_exists(const SatReduction& reduction,
                           std::uint64_t cap = kDefaultProfileCap);

struct SatComparison {
  bool satisfiable = false;
  bool psne_exists = false;
  bool agree = false;
  std::optional<Profile> psne;
  std::optional<std::vector<bool>> sat_witness;
};

/// Brute-force satisfiability against brute-force equilibrium existence.
/// Disagreements are expected for some formulas and are reported, never
/// masked.
SatComparison compare_with_sat(const SatReduction& reduction,
                               std::uint64_t cap = kDefaultProfileCap);

}  // namespace elgame
