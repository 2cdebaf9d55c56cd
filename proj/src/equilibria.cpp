#include "elgame/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace elgame {

PsneCheck is_psne(const GameInstance& g, const WpFunction& wp, const Profile& s,
                  double tau) {
  g.check_profile(s);
  if (tau < 0.0) fail(Errc::InvalidArgument, "tau must be nonnegative");
  const std::size_t m = g.num_parties();
  for (std::size_t i = 0; i < m; ++i) {
    const double base = payoff(g, wp, s, i);
    Profile t = s;
    for (int alt = 0; alt < g.num_candidates(i); ++alt) {
      if (alt == s[i]) continue;
      t.choices[i] = alt;
      const double gained = payoff(g, wp, t, i);
      if (gained > base + tau) {
        return {false, Deviation{i, s[i], alt, base, gained}};
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<Profile> enumerate_psne(const GameInstance& g, const WpFunction& wp,
                                    double tau, std::uint64_t cap) {
  checked_profile_count(g, cap);
  std::vector<Profile> found;
  Profile s = all_first_profile(g);
  do {
    if (is_psne(g, wp, s, tau).is_psne) found.push_back(s);
  } while (next_profile(g, s));
  return found;
}

std::optional<Profile> find_first_psne(const GameInstance& g, const WpFunction& wp,
                                       double tau, std::uint64_t cap) {
  checked_profile_count(g, cap);
  Profile s = all_first_profile(g);
  do {
    if (is_psne(g, wp, s, tau).is_psne) return s;
  } while (next_profile(g, s));
  return std::nullopt;
}

int best_response(const GameInstance& g, const WpFunction& wp, const Profile& s,
                  std::size_t party) {
  g.check_profile(s);
  if (party >= g.num_parties()) fail(Errc::IndexOutOfRange, "party index out of range");
  Profile t = s;
  int best = 0;
  t.choices[party] = 0;
  double best_payoff = payoff(g, wp, t, party);
  for (int alt = 1; alt < g.num_candidates(party); ++alt) {
    t.choices[party] = alt;
    const double r = payoff(g, wp, t, party);
    if (r > best_payoff) {
      best_payoff = r;
      best = alt;
    }
  }
  return best;
}

DominanceResult first_candidate_dominance(const GameInstance& g, const WpFunction& wp) {
  require_egoistic(g);
  const std::size_t m = g.num_parties();
  const Profile all_first = all_first_profile(g);

  std::vector<bool> weak(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    for (int alt = 1; alt < g.num_candidates(i); ++alt) {
      if (surpass_context_free(g, i, 0, alt) == SurpassRel::Neither) {
        weak[i] = false;
        break;
      }
    }
  }
  const std::size_t weak_count =
      static_cast<std::size_t>(std::count(weak.begin(), weak.end(), true));

  DominanceResult result;
  if (weak_count == m) {
    bool all_strict = true;
    for (std::size_t i = 0; i < m && all_strict; ++i) {
      for (int alt = 1; alt < g.num_candidates(i); ++alt) {
        if (surpass(g, wp, i, 0, alt, all_first) != SurpassRel::Surpasses) {
          all_strict = false;
          break;
        }
      }
    }
    result.kind = all_strict ? DominanceResult::Kind::AllFirstUnique
                             : DominanceResult::Kind::AllFirst;
    result.psne = all_first;
    return result;
  }
  if (weak_count + 1 == m) {
    std::size_t holdout = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!weak[i]) holdout = i;
    Profile completed = all_first;
    completed.choices[holdout] = best_response(g, wp, all_first, holdout);
    result.kind = DominanceResult::Kind::AllButOne;
    result.psne = completed;
    result.completed_party = holdout;
    return result;
  }
  return result;
}

ApproxReport approx_ratio_all_first(const GameInstance& g, const WpFunction& wp) {
  require_egoistic(g);
  ApproxReport report;
  report.profile = all_first_profile(g);
  const std::size_t m = g.num_parties();
  for (std::size_t i = 0; i < m; ++i) {
    const double base = payoff(g, wp, report.profile, i);
    Profile t = report.profile;
    for (int alt = 1; alt < g.num_candidates(i); ++alt) {
      t.choices[i] = alt;
      const double gained = payoff(g, wp, t, i);
      double ratio;
      if (base > 0.0) {
        ratio = gained / base;
      } else {
        ratio = gained > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
      }
      if (ratio > report.alpha) {
        report.alpha = ratio;
        report.witness = Deviation{i, 0, alt, base, gained};
        report.unbounded = std::isinf(ratio);
      }
    }
  }
  return report;
}

DeviationGraph deviation_graph(const GameInstance& g, const WpFunction& wp,
                               double tau, std::uint64_t cap,
                               bool best_response_only) {
  const std::uint64_t count = checked_profile_count(g, cap);
  if (tau < 0.0) fail(Errc::InvalidArgument, "tau must be nonnegative");
  const std::size_t m = g.num_parties();

  // Lexicographic rank via mixed-radix strides; party m-1 varies fastest.
  std::vector<std::uint64_t> stride(m, 1);
  for (std::size_t i = m - 1; i-- > 0;)
    stride[i] = stride[i + 1] * static_cast<std::uint64_t>(g.num_candidates(i + 1));

  DeviationGraph graph;
  graph.tau = tau;
  graph.nodes.reserve(count);
  Profile s = all_first_profile(g);
  do {
    graph.nodes.push_back(s);
  } while (next_profile(g, s));

  for (std::uint64_t rank = 0; rank < count; ++rank) {
    const Profile& node = graph.nodes[rank];
    for (std::size_t i = 0; i < m; ++i) {
      const double base = payoff(g, wp, node, i);
      const int br = best_response_only ? best_response(g, wp, node, i) : -1;
      Profile t = node;
      for (int alt = 0; alt < g.num_candidates(i); ++alt) {
        if (alt == node[i]) continue;
        if (best_response_only && alt != br) continue;
        t.choices[i] = alt;
        const double gained = payoff(g, wp, t, i);
        if (gained > base + tau) {
          const std::uint64_t to =
              rank + stride[i] * static_cast<std::uint64_t>(alt - node[i]);
          graph.edges.push_back({rank, to, i, gained - base});
        }
      }
    }
  }
  return graph;
}

std::vector<std::uint64_t> DeviationGraph::sinks() const {
  std::vector<bool> has_out(nodes.size(), false);
  for (const Edge& e : edges) has_out[e.from] = true;
  std::vector<std::uint64_t> result;
  for (std::uint64_t i = 0; i < nodes.size(); ++i)
    if (!has_out[i]) result.push_back(i);
  return result;
}

void write_dot(const DeviationGraph& graph, std::ostream& out) {
  out << "digraph deviations {\n";
  for (std::uint64_t i = 0; i < graph.nodes.size(); ++i) {
    out << "  p" << i << " [label=\"" << graph.nodes[i].to_string() << "\"];\n";
  }
  for (const DeviationGraph::Edge& e : graph.edges) {
    out << "  p" << e.from << " -> p" << e.to << " [label=\"(" << e.party + 1
        << ", " << e.delta << ")\"];\n";
  }
  out << "}\n";
}

}  // namespace elgame
