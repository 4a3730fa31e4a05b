#pragma once

#include "tgs/measures.hpp"
#include "tgs/tower.hpp"
#include "tgs/verify.hpp"

#include <string>
#include <vector>

namespace tgs {

// All emitters are deterministic: same inputs, identical bytes.  Fractions
// are serialized as "p/q" strings (canonical, exact); decimal columns are a
// display convenience at 12 significant digits and are never parsed back.

std::string tower_to_json_text(const DomainTower& tower);
DomainTower tower_from_json_text(const GroupChain& chain, const std::string& text);

std::string jsets_to_json_text(const ToeplitzFamily& family);

// level, |D_n|, d_n (fraction + decimal), then one fraction column per symbol.
std::string density_csv(const ToeplitzFamily& family,
                        const std::vector<DensityRow>& rows);

// One row per measure level m: symbol masses (both routes), partition masses
// at the configured (n, W), and the recursion residuals.
std::string measures_csv(const ToeplitzFamily& family, int depth, int window);

std::string simplex_to_json_text(const SimplexData& simplex);

std::string report_to_json_text(const LemmaReport& report);
std::string reports_to_json_text(const std::vector<LemmaReport>& reports);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace tgs
