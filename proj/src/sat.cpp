#include "elgame/sat.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>

namespace elgame {

bool CnfFormula::eval(const std::vector<bool>& assignment) const {
  if (assignment.size() != static_cast<std::size_t>(num_vars))
    fail(Errc::InvalidArgument, "assignment length does not match variable count");
  for (const auto& clause : clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      const int var = std::abs(lit) - 1;
      if (assignment[var] == (lit > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

CnfFormula CnfFormula::parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  std::vector<int> clause;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream fields(line);
    if (line[0] == 'p') {
      std::string p, kind;
      int clause_count = 0;
      if (!(fields >> p >> kind >> f.num_vars >> clause_count) || kind != "cnf" ||
          f.num_vars < 1) {
        fail(Errc::ParseError,
             "line " + std::to_string(line_no) + ": malformed DIMACS header");
      }
      have_header = true;
      continue;
    }
    if (!have_header)
      fail(Errc::ParseError,
           "line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    int lit = 0;
    while (fields >> lit) {
      if (lit == 0) {
        if (clause.empty())
          fail(Errc::ParseError, "line " + std::to_string(line_no) + ": empty clause");
        f.clauses.push_back(clause);
        clause.clear();
      } else {
        if (std::abs(lit) > f.num_vars)
          fail(Errc::ParseError, "line " + std::to_string(line_no) + ": literal " +
                                     std::to_string(lit) + " out of range");
        clause.push_back(lit);
      }
    }
    if (!fields.eof())
      fail(Errc::ParseError,
           "line " + std::to_string(line_no) + ": expected integer literal");
  }
  if (!have_header) fail(Errc::ParseError, "missing 'p cnf' header");
  if (!clause.empty()) f.clauses.push_back(clause);  // tolerate missing final 0
  return f;
}

CnfFormula CnfFormula::parse_dimacs_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string CnfFormula::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& clause : clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

bool brute_force_satisfiable(const CnfFormula& f, std::vector<bool>* witness) {
  if (f.num_vars > 30)
    fail(Errc::InvalidArgument, "brute-force satisfiability handles at most 30 variables");
  std::vector<bool> assignment(f.num_vars, false);
  const std::uint64_t total = 1ull << f.num_vars;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int v = 0; v < f.num_vars; ++v) assignment[v] = (mask >> v) & 1;
    if (f.eval(assignment)) {
      if (witness) *witness = assignment;
      return true;
    }
  }
  return false;
}

SatReduction build_sat_reduction(CnfFormula f, double epsilon) {
  if (f.num_vars < 2)
    fail(Errc::TooFewVariables, "the reduction needs at least 2 variables");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    fail(Errc::InvalidArgument, "epsilon must lie in (0, 1)");

  const std::size_t m = static_cast<std::size_t>(f.num_vars);
  RawInstance raw;
  raw.beta = 200.0;
  raw.parties.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    raw.parties[i].name = "v" + std::to_string(i + 1);
    Candidate first, second;
    first.utilities.assign(m, 0.0);
    second.utilities.assign(m, 0.0);
    if (i < m - 2) {
      first.utilities[i] = epsilon;
      second.utilities[i] = epsilon;
    } else if (i == m - 2) {
      first.utilities[m - 2] = 83.0;
      first.utilities[m - 1] = 1.0;
      second.utilities[m - 2] = 80.0;
      second.utilities[m - 1] = 19.0;
    } else {
      first.utilities[m - 2] = 3.0;
      first.utilities[m - 1] = 24.0;
      second.utilities[m - 2] = 9.0;
      second.utilities[m - 1] = 22.0;
    }
    raw.parties[i].candidates = {first, second};
  }
  raw.metadata["source"] = "sat-reduction";
  raw.metadata["epsilon"] = std::to_string(epsilon);

  SatReduction reduction;
  reduction.game = GameInstance::validate(std::move(raw));
  reduction.formula = std::make_shared<CnfFormula>(std::move(f));
  reduction.epsilon = epsilon;
  return reduction;
}

void ReductionWp::win_probs_into(const GameInstance& g, const Profile& s,
                                 std::span<double> out) const {
  g.check_profile(s);
  const std::size_t m = g.num_parties();
  if (m != static_cast<std::size_t>(formula_->num_vars))
    fail(Errc::InvalidArgument,
         "instance party count does not match the formula's variable count");
  std::vector<bool> assignment(m);
  for (std::size_t i = 0; i < m; ++i) assignment[i] = (s[i] == 0);
  const double exponent = formula_->eval(assignment) ? 0.9 : 1.0;

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double u = g.social_utility(i, s[i]);
    out[i] = u > 1.0 ? std::pow(u / g.beta(), exponent) : 0.0;
    total += out[i];
  }
  if (total <= 0.0)
    fail(Errc::InvalidArgument,
         "no party has social utility above 1; the reduction rule is undefined");
  for (std::size_t i = 0; i < m; ++i) out[i] /= total;
}

std::vector<double> reduction_payoffs(const SatReduction& reduction, const Profile& s) {
  const ReductionWp wp(reduction.formula);
  return evaluate(reduction.game, wp, s).payoffs;
}

bool reduction_psne_exists(const SatReduction& reduction, std::uint64_t cap) {
  const ReductionWp wp(reduction.formula);
  return find_first_psne(reduction.game, wp, 0.0, cap).has_value();
}

SatComparison compare_with_sat(const SatReduction& reduction, std::uint64_t cap) {
  SatComparison result;
  std::vector<bool> witness;
  result.satisfiable = brute_force_satisfiable(*reduction.formula, &witness);
  if (result.satisfiable) result.sat_witness = witness;
  const ReductionWp wp(reduction.formula);
  result.psne = find_first_psne(reduction.game, wp, 0.0, cap);
  result.psne_exists = result.psne.has_value();
  result.agree = result.satisfiable == result.psne_exists;
  return result;
}

}  // namespace elgame
