#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "elgame/model.hpp"

namespace elgame {

/// Deterministic JSON rendering; parse(render(g)) reproduces g bit-exactly
/// on beta and all utilities.
std::string render_instance(const GameInstance& g);

GameInstance parse_instance(const std::string& json_text, bool normalize = false);

GameInstance load_instance(const std::filesystem::path& path, bool normalize = false);

void store_instance(const GameInstance& g, const std::filesystem::path& path);

/// Built-in instances: "table1", "table2" and the parametric
/// "table3[:m=M,beta=B,eps=E]" (defaults m=3, beta=100, eps=0.001).
GameInstance fixture(std::string_view spec);

std::vector<std::string> fixture_names();

/// Accepts a file path or a "fixtures:<name>" reference.
GameInstance resolve_instance(std::string_view ref, bool normalize = false);

enum class EgoismMode { None, Egoistic, StronglyEgoistic };

EgoismMode parse_egoism_mode(std::string_view name);
std::string_view egoism_mode_name(EgoismMode mode);

/// Seeded random instances. Egoistic mode separates own from cross utilities
/// by a fixed threshold; strongly-egoistic mode draws own utilities strictly
/// above each party's summed best cross draws. Everything is scaled down when
/// the largest social utility exceeds beta (the guarantees survive scaling).
/// Instances are reproducible across platforms for a fixed seed (mt19937_64
/// with pinned real-number derivation).
struct GeneratorConfig {
  std::size_t parties = 3;
  int candidates = 2;
  double beta = 100.0;
  EgoismMode mode = EgoismMode::Egoistic;
  std::uint64_t seed = 0;
};

GameInstance generate(const GeneratorConfig& config);

}  // namespace elgame
