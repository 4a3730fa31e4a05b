#include "tgs/config.hpp"

#include "tgs/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tgs {

namespace {

using json = nlohmann::json;

Backend backend_from_name(const std::string& s) {
  if (s == "z") return Backend::Z;
  if (s == "zd") return Backend::Zd;
  if (s == "f2") return Backend::F2;
  throw std::invalid_argument("backend.kind: unknown value '" + s + "'");
}

FamilyVariant variant_from_name(const std::string& s) {
  if (s == "multi") return FamilyVariant::MultiSymbol;
  if (s == "binary") return FamilyVariant::RegularBinary;
  throw std::invalid_argument("variant: unknown value '" + s + "'");
}

}  // namespace

int ExperimentConfig::tower_depth() const {
  return depth > 0 ? depth : backend.depth();
}

void ExperimentConfig::validate() const {
  backend.validate();
  if (depth < 0 || depth > backend.depth())
    throw std::invalid_argument("depth: must lie in 0.." + std::to_string(backend.depth()));
  if (tower_depth() < 2)
    throw std::invalid_argument("depth: the family needs a tower of depth >= 2");
  if (r < 1) throw std::invalid_argument("r: must be >= 1");
  if (window < 0 || window > tower_depth())
    throw std::invalid_argument("window: must lie in 0.." + std::to_string(tower_depth()));
  auto known = known_checks();
  for (const auto& c : checks) {
    if (c != "all" && std::find(known.begin(), known.end(), c) == known.end())
      throw std::invalid_argument("checks: unknown check '" + c + "'");
  }
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;

  if (!j.contains("backend") || !j["backend"].is_object())
    throw std::invalid_argument("backend: missing object");
  const json& b = j["backend"];
  cfg.backend.kind = backend_from_name(b.value("kind", std::string()));
  if (b.contains("multipliers"))
    cfg.backend.multipliers = b["multipliers"].get<std::vector<std::int64_t>>();
  if (b.contains("axes"))
    cfg.backend.axes = b["axes"].get<std::vector<std::vector<std::int64_t>>>();
  if (b.contains("levels")) cfg.backend.levels = b["levels"].get<std::vector<int>>();

  cfg.depth = j.value("depth", 0);
  cfg.r = j.value("r", 2);
  if (j.contains("variant")) cfg.variant = variant_from_name(j["variant"].get<std::string>());
  cfg.window = j.value("window", 0);
  if (j.contains("checks")) cfg.checks = j["checks"].get<std::vector<std::string>>();
  cfg.seed = j.value("seed", std::uint64_t{0});

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  json b;
  b["kind"] = backend_name(cfg.backend.kind);
  if (!cfg.backend.multipliers.empty()) b["multipliers"] = cfg.backend.multipliers;
  if (!cfg.backend.axes.empty()) b["axes"] = cfg.backend.axes;
  if (!cfg.backend.levels.empty()) b["levels"] = cfg.backend.levels;

  json j;
  j["backend"] = b;
  j["depth"] = cfg.depth;
  j["r"] = cfg.r;
  j["variant"] = variant_name(cfg.variant);
  j["window"] = cfg.window;
  j["checks"] = cfg.checks;
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

}  // namespace tgs
