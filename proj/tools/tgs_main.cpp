#include "tgs/io.hpp"
#include "tgs/run.hpp"
#include "tgs/verify.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <memory>

namespace {

struct Loaded {
  tgs::ExperimentConfig cfg;
  std::shared_ptr<const tgs::GroupChain> chain;
  tgs::DomainTower tower;
  tgs::ToeplitzFamily family;
};

Loaded load(const std::string& config_path, int depth_override) {
  Loaded l;
  l.cfg = tgs::load_config(config_path);
  if (depth_override > 0) l.cfg.depth = depth_override;
  l.cfg.validate();
  l.chain = tgs::make_group_chain(l.cfg.backend);
  l.tower = tgs::build_tower(*l.chain, l.cfg.tower_depth());
  l.family = tgs::build_family(l.tower, l.cfg.variant, l.cfg.r, l.cfg.family_depth());
  return l;
}

int print_reports(const std::vector<tgs::LemmaReport>& reports) {
  bool ok = true;
  for (const auto& rep : reports) {
    std::cout << (rep.pass ? "pass" : "FAIL") << "  " << rep.check;
    for (const auto& [k, v] : rep.params) std::cout << " " << k << "=" << v;
    std::cout << "\n";
    for (const auto& [k, v] : rep.payload) std::cout << "    " << k << " = " << v << "\n";
    for (const auto& c : rep.counterexamples) std::cout << "    counterexample: " << c << "\n";
    for (const auto& n : rep.notes) std::cout << "    note: " << n << "\n";
    ok = ok && rep.pass;
  }
  std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz subshift tables and exact combinatorial checks"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", cell_text, series, bundle_dir, check_name = "all";
  int level = 1, measure_level = 0, window = 0, radius = -1, depth_override = 0;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (json)")->required();
    cmd->add_option("--depth", depth_override, "override the tower depth");
  };

  // run: build everything and write the artifact bundle
  auto* run_cmd = app.add_subcommand("run", "build the tower and family, write the bundle");
  add_config(run_cmd);
  run_cmd->add_option("--out", out_dir, "bundle directory");

  // tower build | validate
  auto* tower_cmd = app.add_subcommand("tower", "fundamental-domain tower operations");
  tower_cmd->require_subcommand(1);
  auto* tower_build = tower_cmd->add_subcommand("build", "build and save the tower");
  add_config(tower_build);
  tower_build->add_option("--out", out_dir, "output directory");
  auto* tower_validate = tower_cmd->add_subcommand("validate", "build and check all invariants");
  add_config(tower_validate);

  // toeplitz eval | window | density
  auto* toe_cmd = app.add_subcommand("toeplitz", "family evaluation and densities");
  toe_cmd->require_subcommand(1);
  auto* toe_eval = toe_cmd->add_subcommand("eval", "evaluate the array at one position");
  add_config(toe_eval);
  toe_eval->add_option("--cell", cell_text, "group element")->required();
  auto* toe_window = toe_cmd->add_subcommand("window", "symbols over a domain level or ball");
  add_config(toe_window);
  toe_window->add_option("--level", level, "domain level D_n");
  toe_window->add_option("--radius", radius, "word-metric ball instead of a domain level");
  auto* toe_density = toe_cmd->add_subcommand("density", "periodic-part density table (csv)");
  add_config(toe_density);

  // measures masses | partition | matrix
  auto* meas_cmd = app.add_subcommand("measures", "orbit-average measure tables");
  meas_cmd->require_subcommand(1);
  auto* meas_masses = meas_cmd->add_subcommand("masses", "symbol masses at a measure level");
  add_config(meas_masses);
  meas_masses->add_option("--level", level, "measure level m")->required();
  auto* meas_part = meas_cmd->add_subcommand("partition", "cylinder-partition masses");
  add_config(meas_part);
  meas_part->add_option("--level", level, "partition level n")->required();
  meas_part->add_option("--measure", measure_level, "measure level m")->required();
  meas_part->add_option("--window", window, "window level W (default m)");
  auto* meas_matrix = meas_cmd->add_subcommand("matrix", "level transition matrix");
  add_config(meas_matrix);
  meas_matrix->add_option("--level", level, "matrix level n")->required();

  // verify [check]
  auto* verify_cmd = app.add_subcommand("verify", "run the exact combinatorial checks");
  add_config(verify_cmd);
  verify_cmd->add_option("check", check_name, "check name or 'all'");
  verify_cmd->add_option("--window", window, "window override for orbit checks");

  // report plot
  auto* report_cmd = app.add_subcommand("report", "read series back from a bundle");
  report_cmd->require_subcommand(1);
  auto* report_plot = report_cmd->add_subcommand("plot", "tsv series for external plotters");
  report_plot->add_option("--bundle", bundle_dir, "bundle directory")->required();
  report_plot->add_option("--series", series, "density | masses:<j> | zmass:i=<i>")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      tgs::ExperimentConfig cfg = tgs::load_config(config_path);
      if (depth_override > 0) cfg.depth = depth_override;
      return tgs::run_experiment(cfg, out_dir, std::cout);
    }

    if (tower_cmd->parsed()) {
      Loaded l = load(config_path, depth_override);
      tgs::TowerReport rep = tgs::validate_tower(l.tower);
      for (const auto& f : rep.failures) std::cout << "FAIL: " << f << "\n";
      std::cout << "tower depth " << l.tower.depth() << ", |D_" << l.tower.depth()
                << "| = " << l.tower.size(l.tower.depth())
                << (rep.pass() ? ", all invariants hold" : "") << "\n";
      if (tower_build->parsed() && rep.pass()) {
        std::filesystem::create_directories(out_dir);
        tgs::write_file(out_dir + "/tower.json", tgs::tower_to_json_text(l.tower));
        std::cout << "wrote " << out_dir << "/tower.json\n";
      }
      return rep.pass() ? 0 : 1;
    }

    if (toe_cmd->parsed()) {
      Loaded l = load(config_path, depth_override);
      if (toe_eval->parsed()) {
        tgs::GroupElement g = l.chain->parse(cell_text);
        tgs::EvalResult ev = l.family.eval(g);
        std::cout << "symbol " << ev.symbol << " at level " << ev.level << "\n";
      } else if (toe_window->parsed()) {
        std::vector<tgs::GroupElement> cells =
            radius >= 0 ? l.chain->ball(radius) : l.tower.domain(level);
        std::vector<int> syms = l.family.window(cells);
        for (std::size_t i = 0; i < syms.size(); ++i)
          std::cout << (i ? "," : "") << syms[i];
        std::cout << "\n";
      } else {
        int table_depth = l.cfg.variant == tgs::FamilyVariant::MultiSymbol
                              ? l.tower.depth()
                              : l.family.depth;
        std::cout << tgs::density_csv(l.family,
                                      tgs::density_sequence(l.family, table_depth));
      }
      return 0;
    }

    if (meas_cmd->parsed()) {
      Loaded l = load(config_path, depth_override);
      if (meas_masses->parsed()) {
        tgs::SymbolMasses sm = tgs::symbol_masses(l.family, level);
        for (std::size_t s = 0; s < sm.symbols.size(); ++s) {
          std::cout << "symbol " << sm.symbols[s] << ": "
                    << tgs::fraction_string(sm.counting[s]);
          if (sm.formula)
            std::cout << "  (closed form " << tgs::fraction_string((*sm.formula)[s]) << ")";
          std::cout << "\n";
        }
        std::cout << (sm.agree ? "routes agree" : "ROUTE MISMATCH") << "\n";
        return sm.agree ? 0 : 1;
      }
      if (meas_part->parsed()) {
        tgs::EmpiricalMeasure mu = tgs::empirical_measure(l.family, measure_level);
        int W = window > 0 ? window : measure_level;
        std::vector<tgs::Rat> masses = tgs::partition_masses(mu, level, W);
        for (std::size_t j = 0; j < masses.size(); ++j)
          std::cout << "symbol " << (j + 1) << ": " << tgs::fraction_string(masses[j]) << "\n";
        return 0;
      }
      tgs::LevelMatrix mat = tgs::an_matrix(l.tower, l.family.cycle, level);
      for (const auto& row : mat.a) {
        for (std::size_t j = 0; j < row.size(); ++j)
          std::cout << (j ? " " : "") << row[j].str();
        std::cout << "\n";
      }
      std::cout << "ratio " << mat.ratio.str() << ", det " << mat.det.str() << "\n";
      return 0;
    }

    if (verify_cmd->parsed()) {
      Loaded l = load(config_path, depth_override);
      int w = window > 0 ? window : l.cfg.window;
      std::vector<std::string> names{check_name};
      return print_reports(tgs::run_checks(l.family, names, w));
    }

    if (report_plot->parsed()) {
      std::cout << tgs::plot_series(bundle_dir, series);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
