#include "tgs/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tgs {

namespace {

using json = nlohmann::json;

Int pow10_int(int k) {
  Int out(1);
  for (int i = 0; i < k; ++i) out *= 10;
  return out;
}

// floor(a/b + 1/2) for a >= 0, b > 0.
Int div_half_up(const Int& a, const Int& b) { return (2 * a + b) / (2 * b); }

json element_json(const GroupElement& g) { return json(g.data); }

GroupElement element_from_json(const json& j) {
  GroupElement g;
  g.data = j.get<std::vector<std::int64_t>>();
  return g;
}

std::string mode_name(TowerMode m) {
  switch (m) {
    case TowerMode::Canonical: return "canonical";
    case TowerMode::Greedy: return "greedy";
    default: return "auto";
  }
}

TowerMode mode_from_name(const std::string& s) {
  if (s == "canonical") return TowerMode::Canonical;
  if (s == "greedy") return TowerMode::Greedy;
  if (s == "auto") return TowerMode::Auto;
  throw std::invalid_argument("unknown tower mode: " + s);
}

json report_json(const LemmaReport& rep) {
  json j;
  j["check"] = rep.check;
  j["pass"] = rep.pass;
  json params = json::array();
  for (const auto& [k, v] : rep.params) params.push_back(json::array({k, v}));
  j["params"] = params;
  json payload = json::array();
  for (const auto& [k, v] : rep.payload) payload.push_back(json::array({k, v}));
  j["payload"] = payload;
  j["counterexamples"] = rep.counterexamples;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace

std::string fraction_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_fraction(const std::string& s) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
          t.end());
  if (t.empty()) throw std::invalid_argument("empty fraction");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(t));
    Int p(t.substr(0, slash));
    Int q(t.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rat(p, q);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad fraction '" + s + "': " + e.what());
  }
}

std::string decimal_string(const Rat& r, int digits) {
  if (digits < 1) throw std::invalid_argument("need at least one significant digit");
  if (r == 0) return "0";
  bool neg = r < 0;
  Int p = numerator(r), q = denominator(r);
  if (p < 0) p = -p;

  // Exponent of the leading significant digit: value in [10^E, 10^{E+1}).
  int E;
  Int ip = p / q;
  if (ip > 0) {
    E = static_cast<int>(ip.str().size()) - 1;
  } else {
    E = 0;
    Int scaled = p;
    while (scaled < q) {
      scaled *= 10;
      --E;
    }
  }

  int k = digits - 1 - E;
  Int scaled = k >= 0 ? div_half_up(p * pow10_int(k), q) : div_half_up(p, q * pow10_int(-k));
  std::string s = scaled.str();  // `digits` digits, or one more after a carry

  int point = static_cast<int>(s.size()) + E + 1 - digits;
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + s;
  } else if (point >= static_cast<int>(s.size())) {
    out = s + std::string(static_cast<std::size_t>(point) - s.size(), '0');
  } else {
    out = s.substr(0, point) + "." + s.substr(point);
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

std::string tower_to_json_text(const DomainTower& tower) {
  json j;
  j["backend"] = backend_name(tower.chain->kind());
  j["mode"] = mode_name(tower.mode);
  j["depth"] = tower.depth();
  j["sizes"] = tower.sizes;
  json elems = json::array();
  for (const auto& g : tower.elements) elems.push_back(element_json(g));
  j["elements"] = elems;
  return j.dump() + "\n";
}

DomainTower tower_from_json_text(const GroupChain& chain, const std::string& text) {
  json j = json::parse(text);
  if (j.value("backend", std::string()) != backend_name(chain.kind()))
    throw std::invalid_argument("tower file was built for backend '" +
                                j.value("backend", std::string()) + "'");
  DomainTower t;
  t.chain = &chain;
  t.mode = mode_from_name(j.value("mode", std::string("auto")));
  t.sizes = j["sizes"].get<std::vector<std::uint64_t>>();
  if (t.depth() < 1 || t.depth() > chain.depth())
    throw std::invalid_argument("tower depth out of range for the chain");
  for (const auto& e : j["elements"]) t.elements.push_back(element_from_json(e));
  if (t.elements.size() != t.sizes.back())
    throw std::invalid_argument("element count does not match the recorded sizes");

  // Transversals are derived data: T_n = D_n ∩ Γ_{n-1} in domain order.
  for (int n = 2; n <= t.depth(); ++n) {
    std::vector<GroupElement> tr;
    for (std::uint64_t pos = 0; pos < t.sizes[n - 1]; ++pos)
      if (chain.in_subgroup(t.elements[pos], n - 1)) tr.push_back(t.elements[pos]);
    t.transversals.push_back(std::move(tr));
  }
  t.rebuild_index();
  return t;
}

std::string jsets_to_json_text(const ToeplitzFamily& family) {
  json j;
  j["variant"] = variant_name(family.variant);
  j["depth"] = family.depth;
  if (family.variant == FamilyVariant::MultiSymbol) {
    j["r"] = family.cycle.r;
    json sets = json::array();
    for (const auto& set : family.jsets) {
      json one = json::array();
      for (const auto& g : set) one.push_back(element_json(g));
      sets.push_back(one);
    }
    j["fresh_sets"] = sets;
  } else {
    json sets = json::array();
    for (const auto& set : family.ssets) {
      json one = json::array();
      for (const auto& g : set) one.push_back(element_json(g));
      sets.push_back(one);
    }
    j["step_sets"] = sets;
    json vs = json::array();
    for (const auto& g : family.vpoints) vs.push_back(element_json(g));
    j["chain_points"] = vs;
  }
  return j.dump() + "\n";
}

std::string density_csv(const ToeplitzFamily& family, const std::vector<DensityRow>& rows) {
  RegularityReport rr = regularity_report(family, static_cast<int>(rows.size()));
  std::ostringstream out;
  out << "level,size,density,density_decimal,defect,defect_closed_form";
  for (int sym : family.alphabet()) out << ",mass_" << sym;
  out << "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DensityRow& row = rows[k];
    out << row.n << "," << family.tower->size(row.n) << "," << fraction_string(row.d) << ","
        << decimal_string(row.d) << "," << fraction_string(rr.defect[k]) << ","
        << fraction_string(rr.closed_form[k]);
    for (const Rat& dj : row.by_symbol) out << "," << fraction_string(dj);
    out << "\n";
  }
  return out.str();
}

std::string measures_csv(const ToeplitzFamily& family, int depth, int window) {
  const DomainTower& tower = *family.tower;
  const bool multi = family.variant == FamilyVariant::MultiSymbol;
  std::ostringstream out;
  out << "m,symbol,mass,mass_decimal,formula_mass,agree,partition_level,partition_mass,residual\n";
  for (int m = 1; m <= depth; ++m) {
    SymbolMasses sm;
    try {
      sm = symbol_masses(family, m);
    } catch (const DepthExceeded& e) {
      out << "# level " << m << " unresolved within the built depth: " << e.what() << "\n";
      break;
    }

    // The recursion residual needs W = m (its own precondition) and a scan of
    // all (|D_m|/|D_n|)-coset members against the window cells; skip it when
    // that scan would be large.
    int n = m - 2;
    std::vector<Rat> partition, residual;
    if (multi && n >= 0 && n + 1 <= family.depth) {
      Int scan = Int(tower.size(m)) / Int(n == 0 ? 1 : tower.size(n)) * Int(tower.size(m));
      if (scan <= 50000000) {
        EmpiricalMeasure mu = empirical_measure(family, m);
        int W = (window >= n + 1 && window <= m) ? std::max(window, n + 1) : m;
        partition = partition_masses(mu, n, W);
        if (W >= n + 2) residual = verify_an_recursion(family, m, n, W);
      }
    }

    for (std::size_t s = 0; s < sm.symbols.size(); ++s) {
      out << m << "," << sm.symbols[s] << "," << fraction_string(sm.counting[s]) << ","
          << decimal_string(sm.counting[s]) << ",";
      if (sm.formula) out << fraction_string((*sm.formula)[s]);
      out << "," << (sm.agree ? "yes" : "no") << ",";
      if (!partition.empty())
        out << n << "," << fraction_string(partition[s]) << ","
            << (s < residual.size() ? fraction_string(residual[s]) : std::string());
      else
        out << ",,";
      out << "\n";
    }
  }
  return out.str();
}

std::string simplex_to_json_text(const SimplexData& simplex) {
  json j;
  j["depth"] = simplex.depth;
  json base = json::array();
  for (const Rat& b : simplex.base) base.push_back(fraction_string(b));
  j["base"] = base;
  j["defect"] = fraction_string(simplex.defect);
  json vecs = json::array();
  for (const auto& v : simplex.tvec) {
    json one = json::array();
    for (const Rat& x : v) one.push_back(fraction_string(x));
    vecs.push_back(one);
  }
  j["vectors"] = vecs;
  j["monotone_ok"] = simplex.monotone_ok;
  j["sums_ok"] = simplex.sums_ok;
  j["det"] = fraction_string(simplex.det);
  j["independent"] = simplex.independent;
  return j.dump(2) + "\n";
}

std::string report_to_json_text(const LemmaReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string reports_to_json_text(const std::vector<LemmaReport>& reports) {
  bool all = true;
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(report_json(r));
    all = all && r.pass;
  }
  json j;
  j["pass"] = all;
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tgs
