#include "tgs/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgs {

namespace {

std::uint64_t level_size(const DomainTower& t, int n) { return n == 0 ? 1 : t.size(n); }

int fallback_symbol(const ToeplitzFamily& fam, int m, const GroupElement& d) {
  // A position of D_m unresolved by every built level lies in the fresh set
  // J(m); that only happens at m = depth+1 for the multi-symbol family,
  // where its symbol is the next cycle entry.  Anywhere else the array value
  // genuinely needs deeper data.
  if (fam.variant == FamilyVariant::MultiSymbol && m == fam.depth + 1)
    return fam.cycle.alpha(m + 1);
  throw DepthExceeded(fam.tower->chain->format(d), fam.depth);
}

int base_symbol(const ToeplitzFamily& fam, int m, const GroupElement& d) {
  if (auto ev = fam.try_eval(d)) return ev->symbol;
  return fallback_symbol(fam, m, d);
}

// η_m by position over D_m, overrides applied.
std::vector<int> eta_table(const EmpiricalMeasure& mu) {
  const ToeplitzFamily& fam = *mu.family;
  const DomainTower& tower = mu.tower();
  std::vector<int> table(tower.size(mu.m));
  for (std::uint64_t pos = 0; pos < table.size(); ++pos)
    table[pos] = base_symbol(fam, mu.m, tower.element(pos));
  for (const auto& [pos, sym] : mu.overrides) {
    if (pos >= table.size()) throw std::out_of_range("override position beyond orbit");
    table[pos] = sym;
  }
  return table;
}

Rat det_by_elimination(std::vector<std::vector<Rat>> a) {
  std::size_t r = a.size();
  Rat det(1);
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    while (piv < r && a[piv][col] == 0) ++piv;
    if (piv == r) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < r; ++row) {
      if (a[row][col] == 0) continue;
      Rat f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < r; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

}  // namespace

int EmpiricalMeasure::eta_at(std::uint64_t pos) const {
  if (pos >= orbit_size()) throw std::out_of_range("orbit position beyond |D_m|");
  for (const auto& [p, sym] : overrides)
    if (p == pos) return sym;
  return base_symbol(*family, m, tower().element(pos));
}

int EmpiricalMeasure::eta(const GroupElement& g) const {
  return eta_at(tower().rep_position(chain().quotient_class(g, m), m));
}

EmpiricalMeasure empirical_measure(const ToeplitzFamily& family, int m) {
  int cap = family.variant == FamilyVariant::MultiSymbol ? family.depth + 1 : family.depth;
  if (m < 1 || m > cap)
    throw std::invalid_argument("measure level " + std::to_string(m) +
                                " out of range (1.." + std::to_string(cap) + ")");
  EmpiricalMeasure mu;
  mu.family = &family;
  mu.m = m;
  return mu;
}

namespace {

// Constraint cells sorted by resolution level, deepest first (ties by domain
// position), behind a short probe prefix drawn round-robin across the levels.
// Orbit points aligned with the array up to level l match every cell of
// level < l, so shallow-first scanning defeats the early exit; deep-first
// fixes that, but then generic points crawl through thousands of deep cells
// whose symbol they match by measure bias before reaching a level that can
// reject them.  No single level discriminates for every point population, so
// the prefix interleaves one cell from each level until every population has
// met its rejecting level a dozen times; the tail stays deep-first for the
// aligned points that survive the probe.  Pure reordering — membership and
// masses are conjunctions, so results are unchanged.
struct LeveledCell {
  int level;
  std::uint64_t pos;
  GroupElement g;
  int symbol;
};

CylinderPattern discriminating_order(std::vector<LeveledCell> cells) {
  std::sort(cells.begin(), cells.end(), [](const LeveledCell& a, const LeveledCell& b) {
    if (a.level != b.level) return a.level > b.level;
    return a.pos < b.pos;
  });
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end) per level
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j].level == cells[i].level) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  constexpr std::size_t kProbe = 64;
  std::vector<std::size_t> order;
  order.reserve(cells.size());
  std::vector<std::size_t> cursor(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) cursor[r] = runs[r].first;
  while (order.size() < std::min(kProbe, cells.size())) {
    for (std::size_t r = 0; r < runs.size(); ++r)
      if (cursor[r] < runs[r].second) order.push_back(cursor[r]++);
  }
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (std::size_t i = cursor[r]; i < runs[r].second; ++i) order.push_back(i);
  CylinderPattern pat;
  pat.cells.reserve(cells.size());
  for (std::size_t i : order) pat.cells.emplace_back(std::move(cells[i].g), cells[i].symbol);
  return pat;
}

}  // namespace

CylinderPattern cylinder_un(const ToeplitzFamily& family, int n) {
  const DomainTower& tower = *family.tower;
  if (n < 0 || n + 1 > tower.depth() ||
      (n > 0 && n > (family.variant == FamilyVariant::MultiSymbol ? family.depth + 1
                                                                  : family.depth)))
    throw std::invalid_argument("U_n level out of range");
  std::vector<LeveledCell> cells;
  cells.reserve(tower.size(n + 1));
  if (n == 0) {
    int s = family.eval(tower.chain->identity()).symbol;
    for (std::uint64_t pos = 0; pos < tower.size(1); ++pos)
      cells.push_back({0, pos, tower.element(pos), s});
    return discriminating_order(std::move(cells));
  }
  EmpiricalMeasure mu_n = empirical_measure(family, n);
  for (std::uint64_t pos = 0; pos < tower.size(n + 1); ++pos) {
    const GroupElement& g = tower.element(pos);
    auto ev = family.try_eval(g);
    cells.push_back({ev ? ev->level : family.depth + 1, pos, g, mu_n.eta(g)});
  }
  return discriminating_order(std::move(cells));
}

namespace {

std::vector<LeveledCell> cn_cells(const ToeplitzFamily& family, int n, int W) {
  const DomainTower& tower = *family.tower;
  if (family.variant != FamilyVariant::MultiSymbol)
    throw std::invalid_argument("cylinder partitions exist for the multi-symbol family only");
  if (n < 0 || n > family.depth + 1) throw std::invalid_argument("cylinder level out of range");
  if (W < 1 || W > tower.depth()) throw std::invalid_argument("window level out of range");
  std::vector<LeveledCell> cells;
  for (std::uint64_t pos = 0; pos < tower.size(W); ++pos) {
    const GroupElement& g = tower.element(pos);
    auto ev = family.try_eval(g);
    if (ev && ev->level < n) cells.push_back({ev->level, pos, g, ev->symbol});
  }
  return cells;
}

}  // namespace

CylinderPattern cylinder_cn(const ToeplitzFamily& family, int n, int W) {
  return discriminating_order(cn_cells(family, n, W));
}

CylinderPattern cylinder_cni(const ToeplitzFamily& family, int n, int symbol, int W) {
  if (n > family.depth)
    throw std::invalid_argument("symbol cylinder needs the level-" + std::to_string(n) +
                                " fresh set; family depth is " + std::to_string(family.depth));
  if (symbol < 1 || symbol > family.cycle.r) throw std::invalid_argument("symbol out of range");
  std::vector<LeveledCell> cells = cn_cells(family, n, W);
  // The fresh cells resolve at level n, deeper than every periodic cell here,
  // so the sort scans them ahead of the rest.
  cells.reserve(cells.size() + family.jsets[n].size());
  std::uint64_t jpos = 0;
  for (const auto& j : family.jsets[n]) cells.push_back({n, jpos++, j, symbol});
  return discriminating_order(std::move(cells));
}

bool orbit_point_matches(const EmpiricalMeasure& mu, std::uint64_t upos,
                         const CylinderPattern& pattern) {
  const GroupElement& u = mu.tower().element(upos);
  for (const auto& [f, s] : pattern.cells)
    if (mu.eta(mu.chain().multiply(u, f)) != s) return false;
  return true;
}

std::vector<char> orbit_membership(const EmpiricalMeasure& mu, const CylinderPattern& pattern) {
  const DomainTower& tower = mu.tower();
  const GroupChain& chain = mu.chain();
  const int m = mu.m;
  std::vector<int> table = eta_table(mu);

  // x_u(f) = η_m(u·f) only depends on q_m(u·f) = q_m(u)·q_m(f), so the scan
  // runs entirely in quotient-class arithmetic.
  std::vector<ClassId> cell_class;
  std::vector<int> cell_sym;
  cell_class.reserve(pattern.cells.size());
  for (const auto& [f, s] : pattern.cells) {
    cell_class.push_back(chain.quotient_class(f, m));
    cell_sym.push_back(s);
  }

  std::vector<char> member(table.size(), 1);
  for (std::uint64_t upos = 0; upos < table.size(); ++upos) {
    ClassId cu = chain.quotient_class(tower.element(upos), m);
    for (std::size_t k = 0; k < cell_class.size(); ++k) {
      std::uint64_t pos2 = tower.rep_position(chain.class_mul(m, cu, cell_class[k]), m);
      if (table[pos2] != cell_sym[k]) {
        member[upos] = 0;
        break;
      }
    }
  }
  return member;
}

Rat cylinder_mass(const EmpiricalMeasure& mu, const CylinderPattern& pattern) {
  std::vector<char> member = orbit_membership(mu, pattern);
  std::uint64_t hits = 0;
  for (char c : member) hits += c;
  return make_rat(Int(hits), Int(member.size()));
}

SymbolMasses symbol_masses(const ToeplitzFamily& family, int m) {
  SymbolMasses out;
  out.m = m;
  out.symbols = family.alphabet();

  EmpiricalMeasure mu = empirical_measure(family, m);
  std::vector<int> table = eta_table(mu);
  Int dm(table.size());
  for (int sym : out.symbols) {
    std::uint64_t hits = 0;
    for (int t : table) hits += (t == sym);
    out.counting.push_back(make_rat(Int(hits), dm));
  }

  if (family.variant == FamilyVariant::MultiSymbol) {
    PerSet ps = per_set(family, m);
    Int fresh(table.size());
    for (const auto& cls : ps.classes) fresh -= Int(cls.size());
    int fresh_symbol = family.cycle.alpha(m + 1);
    std::vector<Rat> formula;
    for (std::size_t j = 0; j < out.symbols.size(); ++j) {
      Int num(ps.classes[j].size());
      if (out.symbols[j] == fresh_symbol) num += fresh;
      formula.push_back(make_rat(num, dm));
    }
    out.formula = std::move(formula);
    out.agree = *out.formula == out.counting;
  }
  return out;
}

LevelMatrix an_matrix(const DomainTower& tower, const SymbolCycle& cycle, int n) {
  if (n < 0 || n + 1 > tower.depth()) throw std::invalid_argument("matrix level out of range");
  LevelMatrix mat;
  mat.n = n;
  Int up(tower.size(n + 1));
  Int dn(level_size(tower, n));
  mat.ratio = up / dn;
  if (mat.ratio * dn != up) throw std::logic_error("non-integral index ratio");

  int r = cycle.r;
  int fresh = cycle.alpha(n + 1);
  mat.a.assign(r, std::vector<Int>(r, Int(0)));
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      if (i == j)
        mat.a[i - 1][j - 1] = (i == fresh) ? mat.ratio : mat.ratio - 1;
      else if (i == fresh)
        mat.a[i - 1][j - 1] = 1;
    }
  }
  mat.det = mat.ratio;
  for (int k = 1; k < r; ++k) mat.det *= mat.ratio - 1;
  return mat;
}

std::vector<Rat> apply(const LevelMatrix& mat, const std::vector<Rat>& v) {
  if (v.size() != mat.a.size()) throw std::invalid_argument("vector size mismatch");
  std::vector<Rat> out(v.size(), Rat(0));
  for (std::size_t i = 0; i < mat.a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rat(mat.a[i][j]) * v[j];
  return out;
}

std::vector<Rat> partition_masses(const EmpiricalMeasure& mu, int n, int W) {
  const ToeplitzFamily& fam = *mu.family;
  if (fam.variant != FamilyVariant::MultiSymbol)
    throw std::invalid_argument("partition masses exist for the multi-symbol family only");
  if (n < 0 || mu.m <= n) throw std::invalid_argument("need m > n >= 0");
  if (W < n + 1 || W > mu.m) throw std::invalid_argument("need n+1 <= W <= m");
  std::vector<Rat> out;
  for (int j = 1; j <= fam.cycle.r; ++j)
    out.push_back(cylinder_mass(mu, cylinder_cni(fam, n, j, W)));
  return out;
}

std::vector<Rat> verify_an_recursion(const ToeplitzFamily& family, int m, int n, int W) {
  if (m <= n + 1) throw std::invalid_argument("need m > n+1");
  EmpiricalMeasure mu = empirical_measure(family, m);
  LevelMatrix mat = an_matrix(*family.tower, family.cycle, n);
  std::vector<Rat> upper = partition_masses(mu, n + 1, W);
  std::vector<Rat> lower = partition_masses(mu, n, W);
  std::vector<Rat> lifted = tgs::apply(mat, upper);
  std::vector<Rat> residual;
  for (std::size_t j = 0; j < lower.size(); ++j) residual.push_back(lifted[j] - lower[j]);
  return residual;
}

HaarReport haar_pushforward_check(const DomainTower& tower, int m, int n) {
  if (n < 1 || m < n || m > tower.depth())
    throw std::invalid_argument("need 1 <= n <= m <= depth");
  const GroupChain& chain = *tower.chain;
  HaarReport rep;
  rep.m = m;
  rep.n = n;
  rep.expected = make_rat(Int(1), Int(chain.class_count(n)));
  std::vector<std::uint64_t> counts(chain.class_count(n), 0);
  for (std::uint64_t pos = 0; pos < tower.size(m); ++pos)
    ++counts[chain.class_index(n, chain.quotient_class(tower.element(pos), n))];
  rep.uniform = true;
  for (std::uint64_t c : counts) {
    rep.masses.push_back(make_rat(Int(c), Int(tower.size(m))));
    if (rep.masses.back() != rep.expected) rep.uniform = false;
  }
  return rep;
}

SimplexData limit_vectors(const ToeplitzFamily& family, int depth) {
  std::vector<DensityRow> rows = density_sequence(family, depth);
  SimplexData out;
  out.depth = depth;
  out.monotone_ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].by_symbol.size(); ++j)
      if (rows[i].by_symbol[j] < rows[i - 1].by_symbol[j]) out.monotone_ok = false;

  out.base = rows.back().by_symbol;
  out.defect = Rat(1) - rows.back().d;

  std::size_t r = out.base.size();
  out.sums_ok = true;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rat> t = out.base;
    t[i] += out.defect;
    Rat sum(0);
    for (const Rat& x : t) sum += x;
    if (sum != 1) out.sums_ok = false;
    out.tvec.push_back(std::move(t));
  }

  out.det = det_by_elimination(out.tvec);
  out.independent = out.det != 0;
  return out;
}

}  // namespace tgs
