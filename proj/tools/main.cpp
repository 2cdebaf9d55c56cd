#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "elgame/coalition.hpp"
#include "elgame/efficiency.hpp"
#include "elgame/equilibria.hpp"
#include "elgame/fpt.hpp"
#include "elgame/io.hpp"
#include "elgame/sat.hpp"

using namespace elgame;

namespace {

struct WpChoice {
  std::string name = "softmax";
  std::string cnf_path;  // required for the gadget rule

  std::unique_ptr<WpFunction> build() const {
    if (name == "gadget") {
      if (cnf_path.empty())
        fail(Errc::InvalidArgument, "--wp gadget needs --cnf <file.dimacs>");
      std::ifstream in(cnf_path);
      if (!in) fail(Errc::ParseError, "cannot open '" + cnf_path + "'");
      auto formula = std::make_shared<CnfFormula>(CnfFormula::parse_dimacs(in));
      return std::make_unique<ReductionWp>(std::move(formula));
    }
    return make_wp(name);
  }
};

void add_wp_option(CLI::App* cmd, WpChoice& choice) {
  cmd->add_option("--wp", choice.name, "winning-probability rule")
      ->check(CLI::IsMember({"hardmax", "softmax", "gadget"}))
      ->capture_default_str();
  cmd->add_option("--cnf", choice.cnf_path,
                  "DIMACS formula backing the gadget rule");
}

std::string format_profile(const Profile& s) { return s.to_string(); }

void print_monotone(const GameInstance& g, const WpFunction& wp,
                    std::uint64_t trials, std::uint64_t seed) {
  const MonotoneReport report = check_monotone(g, wp, trials, seed);
  std::cout << "monotone[" << wp.name() << "]: " << (report.monotone ? "yes" : "NO")
            << " (checks: " << report.checks
            << (report.exhaustive ? ", exhaustive" : ", sampled") << ")\n";
  if (report.violation) {
    const MonotoneViolation& v = *report.violation;
    std::cout << "  violation at " << format_profile(v.profile) << ": party "
              << v.party + 1 << " candidate " << v.from + 1 << " -> " << v.to + 1
              << " drops probability " << v.p_from << " -> " << v.p_to << "\n";
  }
}

int run_validate(const std::string& ref, bool normalize) {
  const GameInstance g = resolve_instance(ref, normalize);
  std::cout << "ok: " << g.num_parties() << " parties, beta " << g.beta() << "\n";
  for (std::size_t i = 0; i < g.num_parties(); ++i)
    std::cout << "  party " << i + 1 << ": " << g.num_candidates(i) << " candidates\n";
  return 0;
}

int run_info(const std::string& ref, bool normalize, const WpChoice& wp_choice,
             std::uint64_t trials, std::uint64_t seed) {
  const GameInstance g = resolve_instance(ref, normalize);
  std::cout << "parties: " << g.num_parties() << "\n";
  std::cout << "candidates:";
  for (std::size_t i = 0; i < g.num_parties(); ++i)
    std::cout << ' ' << g.num_candidates(i);
  std::cout << "\nbeta: " << g.beta() << "\n";
  std::cout << "profiles: " << g.profile_count() << "\n";

  const EgoismCheck ego = is_egoistic(g);
  std::cout << "egoistic: " << (ego.egoistic ? "yes" : "no") << "\n";
  if (!ego.egoistic) {
    const EgoismWitness& w = *ego.witness;
    std::cout << "  witness: party " << w.party + 1 << " candidate " << w.candidate + 1
              << " own " << w.own << " vs party " << w.rival_party + 1 << " candidate "
              << w.rival_candidate + 1 << " cross " << w.cross << "\n";
  }
  const StrongEgoismCheck strong = is_strongly_egoistic(g);
  std::cout << "strongly egoistic: " << (strong.strongly_egoistic ? "yes" : "no") << "\n";
  if (!strong.strongly_egoistic) {
    const StrongEgoismWitness& w = *strong.witness;
    std::cout << "  witness: party " << w.party + 1 << " candidate " << w.candidate + 1
              << " own " << w.own << " vs rival sum " << w.rival_sum << "\n";
  }

  const auto wp = wp_choice.build();
  print_monotone(g, *wp, trials, seed);

  if (ego.egoistic) {
    const ReducedGame reduced = refine_strategy_sets(g, compute_depths(g));
    std::cout << "depth d: " << reduced.max_depth() << " (per party:";
    for (int d : reduced.depth) std::cout << ' ' << d;
    std::cout << ")\nrefined depth: " << reduced.max_refined_depth()
              << "\nirresolute parties k: " << reduced.irresolute_count()
              << "\nresolute set:";
    for (std::size_t i : reduced.resolute) std::cout << ' ' << i + 1;
    std::cout << "\n";
  }
  return 0;
}

int run_psne(const std::string& ref, bool normalize, const WpChoice& wp_choice,
             const std::string& method, double tau, bool no_refine,
             bool check_monotone_flag, bool all, std::uint64_t cap) {
  const GameInstance g = resolve_instance(ref, normalize);
  const auto wp = wp_choice.build();
  std::cout << "method: " << method << "\nwp: " << wp->name() << "\ntau: " << tau << "\n";

  if (method == "brute") {
    const std::vector<Profile> psne = enumerate_psne(g, *wp, tau, cap);
    std::cout << "psne count: " << psne.size() << "\n";
    if (psne.empty()) {
      std::cout << "no PSNE\n";
    } else if (all) {
      for (const Profile& s : psne) std::cout << format_profile(s) << "\n";
    } else {
      std::cout << format_profile(psne.front()) << "\n";
    }
    return 0;
  }

  FptOptions options;
  options.refine = !no_refine;
  options.probe_monotonicity = check_monotone_flag;
  FptStats stats;
  const auto result = fpt_psne(g, *wp, options, &stats);
  if (result) {
    std::cout << format_profile(*result) << "\n";
  } else {
    std::cout << "no PSNE\n";
  }
  std::cout << "d: " << stats.d << "\nd_refined: " << stats.d_refined
            << "\nk: " << stats.k << "\nresolute parties: " << stats.resolute_count
            << "\nprofiles evaluated: " << stats.profiles_evaluated
            << "\ndeviation checks: " << stats.deviation_checks
            << "\nwall time: " << stats.elapsed_seconds << " s\n";
  return 0;
}

int run_approx_check(const std::string& ref, bool normalize, const WpChoice& wp_choice) {
  const GameInstance g = resolve_instance(ref, normalize);
  const auto wp = wp_choice.build();
  const ApproxReport report = approx_ratio_all_first(g, *wp);
  std::cout << "profile: " << format_profile(report.profile) << "\n";
  std::cout << "alpha: " << report.alpha << "\n";
  if (report.unbounded) std::cout << "alpha is unbounded (zero base payoff improved)\n";
  if (report.witness) {
    const Deviation& d = *report.witness;
    std::cout << "witness: party " << d.party + 1 << " -> candidate " << d.to + 1 << " ("
              << d.payoff_before << " -> " << d.payoff_after << ")\n";
  }
  if (wp->name() == "softmax")
    std::cout << "softmax bound: " << 1.0 + std::exp(1.0) << "\n";
  return 0;
}

int run_poa(const std::string& ref, bool normalize, const WpChoice& wp_choice, double tau,
            std::uint64_t cap, bool csv, bool csv_header) {
  const GameInstance g = resolve_instance(ref, normalize);
  const auto wp = wp_choice.build();
  const EfficiencyReport report = price_of_anarchy(g, *wp, tau, cap);

  if (csv) {
    if (csv_header)
      std::cout << "instance,wp,tau,parties,optimal_sw,worst_psne_sw,best_psne_sw,poa,pos\n";
    std::cout << ref << ',' << wp->name() << ',' << tau << ',' << g.num_parties() << ','
              << report.optimal_sw << ',';
    if (report.poa) {
      std::cout << *report.worst_psne_sw << ',' << *report.best_psne_sw << ','
                << *report.poa << ',' << *report.pos << "\n";
    } else {
      std::cout << ",,,\n";
    }
    return 0;
  }

  std::cout << "optimal profile: " << format_profile(report.optimal_profile) << "\n";
  std::cout << "optimal sw: " << report.optimal_sw << "\n";
  if (report.poa) {
    std::cout << "worst psne: " << format_profile(*report.worst_psne)
              << " sw: " << *report.worst_psne_sw << "\n";
    std::cout << "best psne: " << format_profile(*report.best_psne)
              << " sw: " << *report.best_psne_sw << "\n";
    std::cout << "poa: " << *report.poa << "\n";
    std::cout << "pos: " << *report.pos << "\n";
  } else {
    std::cout << "no PSNE\npoa: undefined\npos: undefined\n";
  }
  return 0;
}

int run_deviation_graph(const std::string& ref, bool normalize, const WpChoice& wp_choice,
                        double tau, const std::string& dot_path, bool best_response_only,
                        std::uint64_t cap) {
  const GameInstance g = resolve_instance(ref, normalize);
  const auto wp = wp_choice.build();
  const DeviationGraph graph = deviation_graph(g, *wp, tau, cap, best_response_only);
  if (dot_path.empty()) {
    write_dot(graph, std::cout);
  } else {
    std::ofstream out(dot_path);
    if (!out) fail(Errc::ParseError, "cannot write '" + dot_path + "'");
    write_dot(graph, out);
    std::cout << "nodes: " << graph.nodes.size() << "\nedges: " << graph.edges.size()
              << "\nsinks: " << graph.sinks().size() << "\nwrote " << dot_path << "\n";
  }
  return 0;
}

int run_coalitions(const std::string& ref, bool normalize, const WpChoice& wp_choice,
                   const std::string& spec, const std::string& out_path, int member,
                   const std::string& choices_spec) {
  const GameInstance g = resolve_instance(ref, normalize);
  const CoalitionStructure cs = CoalitionStructure::parse(spec, g.num_parties());
  const CoalitionGame cg = build_coalition_game(g, cs);
  std::cout << "coalitions: " << cg.structure.to_string() << "\n";
  std::cout << "players: " << cg.game.num_parties() << "\n";
  std::cout << "candidates:";
  for (std::size_t b = 0; b < cg.game.num_parties(); ++b)
    std::cout << ' ' << cg.game.num_candidates(b);
  std::cout << "\nbeta: " << cg.game.beta() << (cg.beta_raised ? " (raised)" : "")
            << "\n";
  std::cout << "egoistic: " << (is_egoistic(cg.game).egoistic ? "yes" : "no") << "\n";
  if (!out_path.empty()) {
    store_instance(cg.game, out_path);
    std::cout << "wrote " << out_path << "\n";
  }

  if (member > 0) {
    std::vector<std::vector<int>> choices;
    if (choices_spec.empty()) {
      for (const auto& block : cg.structure.blocks)
        choices.emplace_back(block.size(), 0);
    } else {
      std::istringstream blocks_in(choices_spec);
      std::string block_text;
      while (std::getline(blocks_in, block_text, '|')) {
        std::istringstream fields(block_text);
        std::string token;
        choices.emplace_back();
        while (std::getline(fields, token, ',')) {
          int value = 0;
          try {
            value = std::stoi(token);
          } catch (const std::exception&) {
            fail(Errc::InvalidArgument, "bad candidate choice '" + token + "'");
          }
          if (value < 1) fail(Errc::IndexOutOfRange, "choices are 1-based");
          choices.back().push_back(value - 1);
        }
      }
    }
    const auto wp = wp_choice.build();
    const double delta = coalition_incentive_delta(
        g, cg.structure, *wp, static_cast<std::size_t>(member - 1), choices);
    std::cout << "member " << member << " leave delta: " << delta << "\n";
  }
  return 0;
}

int run_reduce_sat(const std::string& cnf_path, double epsilon,
                   const std::string& out_path, bool skip_psne, std::uint64_t cap) {
  std::ifstream in(cnf_path);
  if (!in) fail(Errc::ParseError, "cannot open '" + cnf_path + "'");
  const CnfFormula formula = CnfFormula::parse_dimacs(in);
  const SatReduction reduction = build_sat_reduction(formula, epsilon);
  std::cout << "variables: " << formula.num_vars << "\n";
  std::cout << "clauses: " << formula.clauses.size() << "\n";
  std::cout << "epsilon: " << epsilon << "\n";
  if (!out_path.empty()) {
    store_instance(reduction.game, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  if (skip_psne) return 0;

  const SatComparison cmp = compare_with_sat(reduction, cap);
  std::cout << "satisfiable: " << (cmp.satisfiable ? "yes" : "no") << "\n";
  std::cout << "psne exists: " << (cmp.psne_exists ? "yes" : "no") << "\n";
  if (cmp.psne) std::cout << "psne: " << format_profile(*cmp.psne) << "\n";
  std::cout << "agreement: " << (cmp.agree ? "yes" : "no") << "\n";
  if (!cmp.agree) {
    std::cout << "finding: {\"type\":\"sat-psne-disagreement\",\"satisfiable\":"
              << (cmp.satisfiable ? "true" : "false") << ",\"psne_exists\":"
              << (cmp.psne_exists ? "true" : "false") << "}\n";
  }
  return 0;
}

int run_generate(const GeneratorConfig& config, const std::string& out_path) {
  const GameInstance g = generate(config);
  if (out_path.empty()) {
    std::cout << render_instance(g);
  } else {
    store_instance(g, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_fixtures(const std::string& action, const std::string& name,
                 const std::string& out_path) {
  if (action == "list") {
    for (const std::string& fixture_name : fixture_names())
      std::cout << fixture_name << "\n";
    return 0;
  }
  const GameInstance g = fixture(name);
  if (out_path.empty()) {
    std::cout << render_instance(g);
  } else {
    store_instance(g, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and analysis toolkit for multi-party election games"};
  app.require_subcommand(1);

  std::string instance_ref;
  bool normalize = false;
  WpChoice wp_choice;
  double tau = 0.0;
  std::uint64_t cap = kDefaultProfileCap;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;

  auto add_instance_arg = [&](CLI::App* cmd) {
    cmd->add_option("instance", instance_ref, "instance file or fixtures:<name>")
        ->required();
    cmd->add_flag("--normalize", normalize, "sort candidates by own utility");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check an instance");
  add_instance_arg(validate_cmd);

  CLI::App* info_cmd =
      app.add_subcommand("info", "egoism, monotonicity and reduction report");
  add_instance_arg(info_cmd);
  add_wp_option(info_cmd, wp_choice);
  info_cmd->add_option("--trials", trials, "monotonicity probe budget");
  info_cmd->add_option("--seed", seed, "probe seed");

  CLI::App* psne_cmd = app.add_subcommand("psne", "find pure equilibria");
  add_instance_arg(psne_cmd);
  add_wp_option(psne_cmd, wp_choice);
  std::string method = "brute";
  bool no_refine = false, probe_monotone = false, list_all = false;
  psne_cmd->add_option("--method", method, "search method")
      ->check(CLI::IsMember({"brute", "fpt"}))
      ->capture_default_str();
  psne_cmd->add_option("--tau", tau, "improvement tolerance");
  psne_cmd->add_option("--cap", cap, "profile-space cap");
  psne_cmd->add_flag("--no-refine", no_refine, "disable strategy-set refinement");
  psne_cmd->add_flag("--check-monotone", probe_monotone,
                     "probe the rule for monotonicity first");
  psne_cmd->add_flag("--all", list_all, "list every equilibrium (brute)");

  CLI::App* approx_cmd =
      app.add_subcommand("approx-check", "deviation ratio of the all-first profile");
  add_instance_arg(approx_cmd);
  add_wp_option(approx_cmd, wp_choice);

  CLI::App* poa_cmd = app.add_subcommand("poa", "price of anarchy report");
  add_instance_arg(poa_cmd);
  add_wp_option(poa_cmd, wp_choice);
  bool csv = false, csv_header = false;
  poa_cmd->add_option("--tau", tau, "improvement tolerance");
  poa_cmd->add_option("--cap", cap, "profile-space cap");
  poa_cmd->add_flag("--csv", csv, "emit one CSV row");
  poa_cmd->add_flag("--csv-header", csv_header, "prefix the CSV header");

  CLI::App* graph_cmd =
      app.add_subcommand("deviation-graph", "improving-deviation digraph as DOT");
  add_instance_arg(graph_cmd);
  add_wp_option(graph_cmd, wp_choice);
  std::string dot_path;
  bool best_response_only = false;
  graph_cmd->add_option("--tau", tau, "improvement tolerance");
  graph_cmd->add_option("--cap", cap, "profile-space cap");
  graph_cmd->add_option("--dot", dot_path, "output DOT file (stdout when absent)");
  graph_cmd->add_flag("--best-response-only", best_response_only,
                      "edges only to best responses");

  CLI::App* coalitions_cmd =
      app.add_subcommand("coalitions", "merge coalitions and analyse incentives");
  add_instance_arg(coalitions_cmd);
  add_wp_option(coalitions_cmd, wp_choice);
  std::string coalition_spec, coalition_out, choices_spec;
  int member = 0;
  coalitions_cmd->add_option("--coalitions", coalition_spec, "blocks, e.g. \"1,2|3\"")
      ->required();
  coalitions_cmd->add_option("-o,--output", coalition_out, "write the merged instance");
  coalitions_cmd->add_option("--member", member, "party (1-based) leaving its block");
  coalitions_cmd->add_option("--choices", choices_spec,
                             "fixed candidate tuples, e.g. \"1,2|1\"");

  CLI::App* sat_cmd =
      app.add_subcommand("reduce-sat", "election game from a CNF formula");
  std::string cnf_path, sat_out;
  double epsilon = 0.5;
  bool skip_psne = false;
  sat_cmd->add_option("--cnf", cnf_path, "DIMACS input")->required();
  sat_cmd->add_option("--epsilon", epsilon, "filler utility in (0,1)")
      ->capture_default_str();
  sat_cmd->add_option("-o,--output", sat_out, "write the game instance");
  sat_cmd->add_option("--cap", cap, "profile-space cap");
  sat_cmd->add_flag("--skip-psne", skip_psne, "construction only");

  CLI::App* generate_cmd = app.add_subcommand("generate", "seeded random instance");
  GeneratorConfig gen_config;
  std::string gen_mode = "egoistic", gen_out;
  generate_cmd->add_option("--parties", gen_config.parties, "party count")
      ->capture_default_str();
  generate_cmd->add_option("--candidates", gen_config.candidates,
                           "candidates per party")
      ->capture_default_str();
  generate_cmd->add_option("--beta", gen_config.beta, "social-utility bound")
      ->capture_default_str();
  generate_cmd->add_option("--mode", gen_mode, "egoism guarantee")
      ->check(CLI::IsMember({"none", "egoistic", "strongly-egoistic"}))
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen_config.seed, "PRNG seed")->capture_default_str();
  generate_cmd->add_option("-o,--output", gen_out, "output file (stdout when absent)");

  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "built-in instances");
  std::string fixtures_action, fixtures_name, fixtures_out;
  fixtures_cmd->add_option("action", fixtures_action, "list | emit")
      ->required()
      ->check(CLI::IsMember({"list", "emit"}));
  fixtures_cmd->add_option("name", fixtures_name, "fixture name for emit");
  fixtures_cmd->add_option("-o,--output", fixtures_out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) return run_validate(instance_ref, normalize);
    if (app.got_subcommand(info_cmd))
      return run_info(instance_ref, normalize, wp_choice, trials, seed);
    if (app.got_subcommand(psne_cmd))
      return run_psne(instance_ref, normalize, wp_choice, method, tau, no_refine,
                      probe_monotone, list_all, cap);
    if (app.got_subcommand(approx_cmd))
      return run_approx_check(instance_ref, normalize, wp_choice);
    if (app.got_subcommand(poa_cmd))
      return run_poa(instance_ref, normalize, wp_choice, tau, cap, csv, csv_header);
    if (app.got_subcommand(graph_cmd))
      return run_deviation_graph(instance_ref, normalize, wp_choice, tau, dot_path,
                                 best_response_only, cap);
    if (app.got_subcommand(coalitions_cmd))
      return run_coalitions(instance_ref, normalize, wp_choice, coalition_spec,
                            coalition_out, member, choices_spec);
    if (app.got_subcommand(sat_cmd))
      return run_reduce_sat(cnf_path, epsilon, sat_out, skip_psne, cap);
    if (app.got_subcommand(generate_cmd)) {
      gen_config.mode = parse_egoism_mode(gen_mode);
      return run_generate(gen_config, gen_out);
    }
    if (app.got_subcommand(fixtures_cmd)) {
      if (fixtures_action == "emit" && fixtures_name.empty())
        fail(Errc::InvalidArgument, "fixtures emit needs a name");
      return run_fixtures(fixtures_action, fixtures_name, fixtures_out);
    }
  } catch (const GameError& e) {
    std::cerr << "{\"error\":{\"code\":\"" << e.code_name() << "\",\"message\":\""
              << e.what() << "\"}}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":{\"code\":\"Internal\",\"message\":\"" << e.what()
              << "\"}}\n";
    return 3;
  }
  return 1;
}
