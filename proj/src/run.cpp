#include "tgs/run.hpp"

#include "tgs/io.hpp"
#include "tgs/verify.hpp"

#include "json.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace tgs {

namespace {

using json = nlohmann::json;

std::string report_line(const LemmaReport& rep) {
  std::ostringstream out;
  out << (rep.pass ? "pass" : "FAIL") << "  " << rep.check;
  for (const auto& [k, v] : rep.params) out << " " << k << "=" << v;
  for (const auto& note : rep.notes) out << "  [" << note << "]";
  return out.str();
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log) {
  cfg.validate();
  auto chain = make_group_chain(cfg.backend);
  DomainTower tower = build_tower(*chain, cfg.tower_depth());
  log << "tower: " << backend_name(chain->kind()) << " depth " << tower.depth() << ", |D_"
      << tower.depth() << "| = " << tower.size(tower.depth()) << "\n";

  bool ok = true;
  TowerReport tr = validate_tower(tower);
  if (!tr.pass()) {
    ok = false;
    for (const auto& f : tr.failures) log << "tower invariant FAILED: " << f << "\n";
  }

  ToeplitzFamily family =
      build_family(tower, cfg.variant, cfg.r, cfg.family_depth());
  const bool multi = cfg.variant == FamilyVariant::MultiSymbol;
  log << "family: " << variant_name(cfg.variant) << " depth " << family.depth
      << (multi ? ", r = " + std::to_string(cfg.r) : "") << "\n";

  std::filesystem::create_directories(out_dir);
  auto emit = [&](const std::string& name, const std::string& bytes) {
    write_file(out_dir + "/" + name, bytes);
    log << "wrote " << name << " (" << bytes.size() << " bytes)\n";
  };

  emit("config.json", config_to_json_text(cfg));
  emit("tower.json", tower_to_json_text(tower));
  emit("jsets.json", jsets_to_json_text(family));

  int table_depth = multi ? tower.depth() : family.depth;
  std::vector<DensityRow> rows = density_sequence(family, table_depth);
  emit("density.csv", density_csv(family, rows));
  emit("measures.csv", measures_csv(family, multi ? family.depth + 1 : family.depth, cfg.window));
  emit("simplex.json", simplex_to_json_text(limit_vectors(family, table_depth)));

  std::vector<LemmaReport> reports = run_checks(family, cfg.checks, cfg.window);
  emit("verify.json", reports_to_json_text(reports));
  for (const auto& rep : reports) {
    log << report_line(rep) << "\n";
    if (!rep.pass) {
      ok = false;
      for (const auto& c : rep.counterexamples) log << "    " << c << "\n";
    }
  }
  log << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}

std::string plot_series(const std::string& bundle_dir, const std::string& series) {
  std::ostringstream out;
  if (series == "density") {
    std::istringstream in(read_file(bundle_dir + "/density.csv"));
    std::string line;
    std::getline(in, line);  // header
    out << "level\tdensity\tdefect\tclosed_form\n";
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::istringstream ls(line);
      std::string col;
      while (std::getline(ls, col, ',')) cols.push_back(col);
      if (cols.size() < 6) continue;
      out << cols[0] << "\t" << decimal_string(parse_fraction(cols[2])) << "\t"
          << decimal_string(parse_fraction(cols[4])) << "\t"
          << decimal_string(parse_fraction(cols[5])) << "\n";
    }
    return out.str();
  }

  if (series.rfind("masses:", 0) == 0) {
    std::string sym = series.substr(7);
    if (sym.empty()) throw std::invalid_argument("series needs a symbol: masses:<j>");
    std::istringstream in(read_file(bundle_dir + "/measures.csv"));
    std::string line;
    std::getline(in, line);
    out << "m\tmass\n";
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cols;
      std::istringstream ls(line);
      std::string col;
      while (std::getline(ls, col, ',')) cols.push_back(col);
      if (cols.size() < 3 || cols[1] != sym) continue;
      out << cols[0] << "\t" << decimal_string(parse_fraction(cols[2])) << "\n";
    }
    return out.str();
  }

  if (series.rfind("zmass:i=", 0) == 0) {
    int want = std::stoi(series.substr(8));
    json j = json::parse(read_file(bundle_dir + "/verify.json"));
    out << "k\tz_mass\tproduct_bound\n";
    for (const auto& rep : j["reports"]) {
      if (rep["check"] != "z_mass_trend") continue;
      int i = -1;
      for (const auto& p : rep["params"])
        if (p[0] == "i") i = std::stoi(p[1].get<std::string>());
      if (i != want) continue;
      // payload keys: k<k>_z_mass / k<k>_product_bound
      std::vector<std::pair<std::string, std::string>> kv;
      for (const auto& p : rep["payload"])
        kv.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      for (int k = 0;; ++k) {
        std::string zkey = "k" + std::to_string(k) + "_z_mass";
        std::string bkey = "k" + std::to_string(k) + "_product_bound";
        std::string zval, bval;
        for (const auto& [key, val] : kv) {
          if (key == zkey) zval = val;
          if (key == bkey) bval = val;
        }
        if (zval.empty()) break;
        out << k << "\t" << decimal_string(parse_fraction(zval)) << "\t"
            << decimal_string(parse_fraction(bval)) << "\n";
      }
      return out.str();
    }
    throw std::invalid_argument("bundle has no symbol-union trend report for i=" +
                                std::to_string(want));
  }

  throw std::invalid_argument("unknown series: " + series);
}

}  // namespace tgs
