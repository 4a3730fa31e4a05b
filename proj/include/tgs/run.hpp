#pragma once

#include "tgs/config.hpp"

#include <ostream>
#include <string>

namespace tgs {

// Builds chain → tower → family per the config and writes the artifact
// bundle into out_dir: tower.json, jsets.json, density.csv, measures.csv,
// simplex.json, verify.json, config.json.  Returns 0 iff every requested
// check passed.  Idempotent: identical config produces identical bytes.
int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, std::ostream& log);

// Two-column-plus TSV for external plotters, read back from a bundle dir.
// Series: "density" (level, d_n, defect, closed form), "masses:<j>" (symbol-j
// mass by level), "zmass:i=<i>" (k, empirical Z-mass, product bound).
std::string plot_series(const std::string& bundle_dir, const std::string& series);

}  // namespace tgs
