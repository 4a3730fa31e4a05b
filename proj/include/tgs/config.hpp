#pragma once

#include "tgs/group.hpp"
#include "tgs/toeplitz.hpp"

#include <string>
#include <vector>

namespace tgs {

// One experiment: a chain schedule, how deep to build, which family, and what
// to compute.  `depth` is the tower depth; the family and all measure tables
// stop one level lower so every membership test has a finer quotient to use.
struct ExperimentConfig {
  BackendSpec backend;
  int depth = 0;  // 0 = full schedule length
  int r = 2;
  FamilyVariant variant = FamilyVariant::MultiSymbol;
  int window = 0;  // 0 = family depth
  std::vector<std::string> checks{"all"};
  std::uint64_t seed = 0;  // reserved; construction has no random choices

  int tower_depth() const;
  int family_depth() const { return tower_depth() - 1; }
  int window_level() const { return window > 0 ? window : family_depth(); }
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& cfg);

}  // namespace tgs
