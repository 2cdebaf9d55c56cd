#include "elgame/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elgame/efficiency.hpp"
#include "elgame/rng.hpp"

namespace elgame {

using nlohmann::json;

std::string render_instance(const GameInstance& g) {
  json doc;
  doc["version"] = 1;
  doc["beta"] = g.beta();
  json parties = json::array();
  for (std::size_t i = 0; i < g.num_parties(); ++i) {
    const Party& p = g.party(i);
    json party;
    if (!p.name.empty()) party["name"] = p.name;
    json candidates = json::array();
    for (const Candidate& c : p.candidates) {
      candidates.push_back(json{{"utilities", c.utilities}});
    }
    party["candidates"] = std::move(candidates);
    parties.push_back(std::move(party));
  }
  doc["parties"] = std::move(parties);
  if (!g.metadata().empty()) doc["metadata"] = g.metadata();
  return doc.dump(2) + "\n";
}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

double read_number(const json& value, const std::string& where) {
  if (!value.is_number())
    fail(Errc::ParseError, where + " must be a number");
  return value.get<double>();
}

}  // namespace

GameInstance parse_instance(const std::string& json_text, bool normalize) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) fail(Errc::ParseError, "top level must be an object");
  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
      fail(Errc::ParseError, "unsupported document version");
  }
  if (!doc.contains("beta")) fail(Errc::ParseError, "missing field 'beta'");
  if (!doc.contains("parties") || !doc["parties"].is_array())
    fail(Errc::ParseError, "missing array field 'parties'");

  RawInstance raw;
  raw.beta = read_number(doc["beta"], "'beta'");
  std::size_t index = 0;
  for (const json& party_doc : doc["parties"]) {
    ++index;
    const std::string where = "parties[" + std::to_string(index) + "]";
    if (!party_doc.is_object()) fail(Errc::ParseError, where + " must be an object");
    Party party;
    if (party_doc.contains("name")) {
      if (!party_doc["name"].is_string())
        fail(Errc::ParseError, where + ".name must be a string");
      party.name = party_doc["name"].get<std::string>();
    }
    if (!party_doc.contains("candidates") || !party_doc["candidates"].is_array())
      fail(Errc::ParseError, where + " needs an array field 'candidates'");
    std::size_t cand_index = 0;
    for (const json& cand_doc : party_doc["candidates"]) {
      ++cand_index;
      const std::string cand_where =
          where + ".candidates[" + std::to_string(cand_index) + "]";
      if (!cand_doc.is_object() || !cand_doc.contains("utilities") ||
          !cand_doc["utilities"].is_array())
        fail(Errc::ParseError, cand_where + " needs an array field 'utilities'");
      Candidate candidate;
      for (const json& u : cand_doc["utilities"])
        candidate.utilities.push_back(read_number(u, cand_where + ".utilities entry"));
      party.candidates.push_back(std::move(candidate));
    }
    raw.parties.push_back(std::move(party));
  }
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object())
      fail(Errc::ParseError, "'metadata' must be an object of strings");
    for (const auto& [key, value] : doc["metadata"].items()) {
      if (!value.is_string())
        fail(Errc::ParseError, "'metadata." + key + "' must be a string");
      raw.metadata[key] = value.get<std::string>();
    }
  }
  return GameInstance::validate(std::move(raw), {.normalize = normalize});
}

GameInstance load_instance(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), normalize);
}

void store_instance(const GameInstance& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot write '" + path.string() + "'");
  out << render_instance(g);
}

namespace {

GameInstance build_fixture(const std::string& name, double beta,
                           std::vector<Party> parties) {
  RawInstance raw;
  raw.beta = beta;
  raw.parties = std::move(parties);
  raw.metadata["source"] = "fixture:" + name;
  return GameInstance::validate(std::move(raw));
}

Party make_party(std::string name, std::vector<std::vector<double>> rows) {
  Party p;
  p.name = std::move(name);
  for (auto& row : rows) p.candidates.push_back({std::move(row)});
  return p;
}

// Three parties, hardmax-friendly: all four profiles with the first party on
// its opening candidate are equilibria, at half the optimal welfare.
GameInstance fixture_table1() {
  return build_fixture("table1", 100.0,
                       {make_party("P1", {{50, 0, 0}, {49, 29, 22}}),
                        make_party("P2", {{15, 31, 0}, {16, 30, 0}}),
                        make_party("P3", {{10, 10, 24}, {10, 10, 23}})});
}

// Three parties with no equilibrium under softmax.
GameInstance fixture_table2() {
  return build_fixture("table2", 100.0,
                       {make_party("P1", {{29, 4, 21}, {27, 43, 3}}),
                        make_party("P2", {{23, 59, 7}, {3, 57, 38}}),
                        make_party("P3", {{8, 32, 54}, {20, 13, 53}})});
}

}  // namespace

GameInstance fixture(std::string_view spec) {
  std::string text(spec);
  std::string name = text;
  std::string params;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    params = text.substr(colon + 1);
  }
  if (name == "table1") return fixture_table1();
  if (name == "table2") return fixture_table2();
  if (name == "table3") {
    std::size_t m = 3;
    double beta = 100.0;
    double eps = 0.001;
    std::istringstream fields(params);
    std::string field;
    while (std::getline(fields, field, ',')) {
      if (field.empty()) continue;
      const auto eq = field.find('=');
      if (eq == std::string::npos)
        fail(Errc::ParseError, "fixture parameter '" + field + "' needs key=value");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      try {
        if (key == "m") {
          const long long parsed = std::stoll(value);
          if (parsed < 2 || parsed > 64)
            fail(Errc::ParseError, "fixture parameter m must lie in [2, 64]");
          m = static_cast<std::size_t>(parsed);
        } else if (key == "beta") {
          beta = std::stod(value);
        } else if (key == "eps") {
          eps = std::stod(value);
        } else {
          fail(Errc::ParseError, "unknown fixture parameter '" + key + "'");
        }
      } catch (const GameError&) {
        throw;
      } catch (const std::exception&) {
        fail(Errc::ParseError, "bad fixture parameter value '" + field + "'");
      }
    }
    GameInstance g = make_poa_tight_instance(m, beta, eps);
    g.set_metadata("source", "fixture:table3");
    return g;
  }
  fail(Errc::ParseError, "unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() { return {"table1", "table2", "table3"}; }

GameInstance resolve_instance(std::string_view ref, bool normalize) {
  constexpr std::string_view prefix = "fixtures:";
  if (ref.substr(0, prefix.size()) == prefix) {
    return fixture(ref.substr(prefix.size()));
  }
  return load_instance(std::filesystem::path(std::string(ref)), normalize);
}

EgoismMode parse_egoism_mode(std::string_view name) {
  if (name == "none") return EgoismMode::None;
  if (name == "egoistic") return EgoismMode::Egoistic;
  if (name == "strongly-egoistic") return EgoismMode::StronglyEgoistic;
  fail(Errc::InvalidArgument, "unknown egoism mode '" + std::string(name) + "'");
}

std::string_view egoism_mode_name(EgoismMode mode) {
  switch (mode) {
    case EgoismMode::None: return "none";
    case EgoismMode::Egoistic: return "egoistic";
    case EgoismMode::StronglyEgoistic: return "strongly-egoistic";
  }
  return "unknown";
}

GameInstance generate(const GeneratorConfig& config) {
  if (config.parties < 2)
    fail(Errc::InfeasibleConfig, "generator needs at least 2 parties");
  if (config.candidates < 1)
    fail(Errc::InfeasibleConfig, "generator needs at least 1 candidate per party");
  if (!(config.beta >= 1.0))
    fail(Errc::InfeasibleConfig, "generator needs beta >= 1");

  const std::size_t m = config.parties;
  std::mt19937_64 rng(config.seed);
  RawInstance raw;
  raw.beta = config.beta;
  raw.parties.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    raw.parties[i].name = "P" + std::to_string(i + 1);
    raw.parties[i].candidates.assign(static_cast<std::size_t>(config.candidates),
                                     Candidate{std::vector<double>(m, 0.0)});
  }

  switch (config.mode) {
    case EgoismMode::None: {
      for (std::size_t i = 0; i < m; ++i)
        for (auto& c : raw.parties[i].candidates)
          for (std::size_t j = 0; j < m; ++j)
            c.utilities[j] = uniform_real(rng, 0.0, config.beta);
      break;
    }
    case EgoismMode::Egoistic: {
      // Per-party threshold: cross utilities for observer j stay below c_j,
      // own utilities sit strictly above c_i. Keeping own utilities close to
      // the threshold and spreading cross utilities over two bands makes the
      // ensemble cover games with delicate incentives, including ones without
      // any pure equilibrium under softmax.
      std::vector<double> threshold(m);
      for (std::size_t i = 0; i < m; ++i)
        threshold[i] = uniform_real(rng, 0.30 * config.beta, 0.50 * config.beta);
      for (std::size_t i = 0; i < m; ++i) {
        for (auto& c : raw.parties[i].candidates) {
          for (std::size_t j = 0; j < m; ++j) {
            if (j == i) {
              c.utilities[j] =
                  threshold[i] + uniform_real(rng, 0.01 * config.beta, 0.08 * config.beta);
            } else if (rng() & 1) {
              c.utilities[j] = uniform_real(rng, 0.0, 0.4 * threshold[j]);
            } else {
              c.utilities[j] = uniform_real(rng, 0.8 * threshold[j], threshold[j]);
            }
          }
        }
      }
      break;
    }
    case EgoismMode::StronglyEgoistic: {
      const double cross_max = config.beta / (3.0 * static_cast<double>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (auto& c : raw.parties[i].candidates)
          for (std::size_t j = 0; j < m; ++j)
            if (j != i) c.utilities[j] = uniform_real(rng, 0.0, cross_max);
      const double margin_max = config.beta / 3.0;
      for (std::size_t i = 0; i < m; ++i) {
        double rival_sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          if (j == i) continue;
          double best = 0.0;
          for (const auto& c : raw.parties[j].candidates)
            best = std::max(best, c.utilities[i]);
          rival_sum += best;
        }
        for (auto& c : raw.parties[i].candidates)
          c.utilities[i] = rival_sum + margin_max * (1.0 - uniform01(rng));
      }
      break;
    }
  }

  double max_social = 0.0;
  for (const auto& party : raw.parties) {
    for (const auto& c : party.candidates) {
      double total = 0.0;
      for (double u : c.utilities) total += u;
      max_social = std::max(max_social, total);
    }
  }
  if (max_social > config.beta) {
    const double scale = config.beta / max_social;
    for (auto& party : raw.parties)
      for (auto& c : party.candidates)
        for (double& u : c.utilities) u *= scale;
  }

  raw.metadata["source"] = "generator";
  raw.metadata["seed"] = std::to_string(config.seed);
  raw.metadata["mode"] = std::string(egoism_mode_name(config.mode));
  return GameInstance::validate(std::move(raw), {.normalize = true});
}

}  // namespace elgame
