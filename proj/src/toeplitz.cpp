#include "tgs/toeplitz.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgs {

namespace {

bool class_in(const std::vector<ClassId>& sorted, ClassId c) {
  return std::binary_search(sorted.begin(), sorted.end(), c);
}

void sort_unique(std::vector<ClassId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string variant_name(FamilyVariant v) {
  return v == FamilyVariant::MultiSymbol ? "multi" : "binary";
}

std::vector<int> ToeplitzFamily::alphabet() const {
  std::vector<int> out;
  if (variant == FamilyVariant::MultiSymbol) {
    for (int i = 1; i <= cycle.r; ++i) out.push_back(i);
  } else {
    out = {0, 1};
  }
  return out;
}

std::optional<EvalResult> ToeplitzFamily::try_eval(const GroupElement& g) const {
  const GroupChain& chain = *tower->chain;
  if (variant == FamilyVariant::MultiSymbol) {
    for (int m = 0; m <= depth; ++m) {
      if (class_in(jclasses[m], chain.quotient_class(g, m + 1)))
        return EvalResult{cycle.alpha(m + 1), m};
    }
    return std::nullopt;
  }
  // Binary walk down the v-coset chain.  At odd l the position either left
  // the chain through S_{l-1} (symbol 0) or through a class other than
  // q_l(v_l) (symbol 1); at even l staying in the chain means staying in
  // q_l(S_l).  A position surviving every built level is undecided.
  for (int l = 1; l <= depth; ++l) {
    ClassId c = chain.quotient_class(g, l);
    if (l % 2 == 1) {
      if (class_in(s_eval_classes[l], c)) return EvalResult{0, (l - 1) / 2};
      if (c != v_classes[l]) return EvalResult{1, l};
    } else {
      if (!class_in(s_eval_classes[l], c)) return EvalResult{1, l};
    }
  }
  return std::nullopt;
}

EvalResult ToeplitzFamily::eval(const GroupElement& g) const {
  if (auto r = try_eval(g)) return *r;
  throw DepthExceeded(tower->chain->format(g), depth);
}

std::vector<int> ToeplitzFamily::window(const std::vector<GroupElement>& F) const {
  std::vector<int> out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(eval(f).symbol);
  return out;
}

ToeplitzFamily build_jsets(const DomainTower& tower, SymbolCycle cycle, int depth) {
  if (cycle.r < 1) throw std::invalid_argument("alphabet size r must be >= 1");
  if (depth < 1) throw std::invalid_argument("family depth must be >= 1");
  if (depth + 1 > tower.depth())
    throw std::invalid_argument("family depth " + std::to_string(depth) +
                                " needs tower depth " + std::to_string(depth + 1));
  const GroupChain& chain = *tower.chain;

  ToeplitzFamily fam;
  fam.tower = &tower;
  fam.variant = FamilyVariant::MultiSymbol;
  fam.cycle = cycle;
  fam.depth = depth;
  fam.jsets.resize(depth + 1);
  fam.jclasses.resize(depth + 1);

  fam.jsets[0] = {chain.identity()};
  fam.jclasses[0] = {chain.quotient_class(chain.identity(), 1)};
  for (int m = 1; m <= depth; ++m) {
    std::vector<GroupElement>& jm = fam.jsets[m];
    for (std::uint64_t pos = 0; pos < tower.size(m); ++pos) {
      const GroupElement& d = tower.element(pos);
      bool taken = false;
      for (int l = 0; l < m && !taken; ++l)
        taken = class_in(fam.jclasses[l], chain.quotient_class(d, l + 1));
      if (!taken) jm.push_back(d);
    }
    std::vector<ClassId>& jc = fam.jclasses[m];
    jc.reserve(jm.size());
    for (const auto& d : jm) jc.push_back(chain.quotient_class(d, m + 1));
    std::sort(jc.begin(), jc.end());
  }
  return fam;
}

ToeplitzFamily build_regular_binary(const DomainTower& tower, int depth) {
  if (depth < 1) throw std::invalid_argument("family depth must be >= 1");
  if (depth > tower.depth())
    throw std::invalid_argument("binary family depth " + std::to_string(depth) +
                                " exceeds tower depth " + std::to_string(tower.depth()));
  const GroupChain& chain = *tower.chain;

  ToeplitzFamily fam;
  fam.tower = &tower;
  fam.variant = FamilyVariant::RegularBinary;
  fam.depth = depth;
  fam.ssets.resize(depth + 1);
  fam.vpoints.resize(depth + 1, chain.identity());

  fam.ssets[0] = {chain.identity()};
  for (int n = 1; n <= depth; ++n) {
    std::vector<GroupElement>& sn = fam.ssets[n];
    std::uint64_t lo = n == 1 ? 1 : tower.size(n - 1);
    ClassId vprev = n == 1 ? 0 : chain.quotient_class(fam.vpoints[n - 1], n - 1);
    for (std::uint64_t pos = lo; pos < tower.size(n); ++pos) {
      const GroupElement& d = tower.element(pos);
      if (n == 1 || chain.quotient_class(d, n - 1) == vprev) sn.push_back(d);
    }
    if (sn.empty())
      throw std::logic_error("empty step set at level " + std::to_string(n));
    fam.vpoints[n] = sn.front();
  }

  fam.s_eval_classes.resize(depth + 1);
  fam.v_classes.resize(depth + 1, 0);
  for (int l = 1; l <= depth; ++l) {
    const std::vector<GroupElement>& src = fam.ssets[l % 2 == 1 ? l - 1 : l];
    std::vector<ClassId>& cls = fam.s_eval_classes[l];
    cls.reserve(src.size());
    for (const auto& s : src) cls.push_back(chain.quotient_class(s, l));
    sort_unique(cls);
    fam.v_classes[l] = chain.quotient_class(fam.vpoints[l], l);
  }
  return fam;
}

ToeplitzFamily build_family(const DomainTower& tower, FamilyVariant variant, int r, int depth) {
  if (variant == FamilyVariant::MultiSymbol) return build_jsets(tower, SymbolCycle{r}, depth);
  return build_regular_binary(tower, depth);
}

PerSet per_set(const ToeplitzFamily& family, int n) {
  const DomainTower& tower = *family.tower;
  const GroupChain& chain = *tower.chain;
  if (n < 1 || n > family.depth + 1 || n > tower.depth())
    throw std::invalid_argument("per-set level " + std::to_string(n) + " out of range");

  PerSet ps;
  ps.level = n;
  ps.symbols = family.alphabet();
  ps.classes.resize(ps.symbols.size());

  if (family.variant == FamilyVariant::MultiSymbol) {
    // Positions of D_n resolving at level l < n carry alpha(l+1); membership
    // in J(l)Γ_{l+1} is a q_{l+1}-class test, and every such test factors
    // through q_n because l+1 <= n.
    int cap = std::min(n - 1, family.depth);
    for (std::uint64_t pos = 0; pos < tower.size(n); ++pos) {
      const GroupElement& d = tower.element(pos);
      for (int l = 0; l <= cap; ++l) {
        if (class_in(family.jclasses[l], chain.quotient_class(d, l + 1))) {
          ps.classes[family.cycle.alpha(l + 1) - 1].push_back(chain.quotient_class(d, n));
          break;
        }
      }
    }
  } else {
    // Symbols certified by a level <= n; every certificate below is a
    // q_l-class test with l <= n, so it factors through q_n.
    int cap = std::min(n, family.depth);
    for (std::uint64_t pos = 0; pos < tower.size(n); ++pos) {
      const GroupElement& d = tower.element(pos);
      for (int l = 1; l <= cap; ++l) {
        ClassId c = chain.quotient_class(d, l);
        int sym = -1;
        if (l % 2 == 1) {
          if (class_in(family.s_eval_classes[l], c))
            sym = 0;
          else if (c != family.v_classes[l])
            sym = 1;
        } else if (!class_in(family.s_eval_classes[l], c)) {
          sym = 1;
        }
        if (sym >= 0) {
          ps.classes[sym].push_back(chain.quotient_class(d, n));
          break;
        }
      }
    }
  }
  for (auto& cls : ps.classes) std::sort(cls.begin(), cls.end());
  return ps;
}

EssentialResult essential_check(const GroupChain& chain, int n,
                                const std::vector<std::vector<ClassId>>& class_sets) {
  std::vector<const std::vector<ClassId>*> live;
  for (const auto& s : class_sets)
    if (!s.empty()) live.push_back(&s);

  ClassId id = chain.identity_class(n);
  if (live.empty()) {
    // Nothing constrains anything: every class is a stabilizer.
    for (std::uint64_t i = 0; i < chain.class_count(n); ++i) {
      ClassId c = chain.class_at(n, i);
      if (c != id) return {false, c};
    }
    return {true, std::nullopt};
  }

  const std::vector<ClassId>* smallest = live.front();
  for (const auto* s : live)
    if (s->size() < smallest->size()) smallest = s;

  // c with c⁻¹·P = P must satisfy c = p0·y⁻¹ for some y in P (take x = p0).
  ClassId p0 = smallest->front();
  std::vector<ClassId> candidates;
  candidates.reserve(smallest->size());
  for (ClassId y : *smallest) candidates.push_back(chain.class_mul(n, p0, chain.class_inv(n, y)));
  sort_unique(candidates);

  for (ClassId c : candidates) {
    if (c == id) continue;
    ClassId cinv = chain.class_inv(n, c);
    bool fixes_all = true;
    for (const auto* set : live) {
      for (ClassId x : *set) {
        if (!class_in(*set, chain.class_mul(n, cinv, x))) {
          fixes_all = false;
          break;
        }
      }
      if (!fixes_all) break;
    }
    if (fixes_all) return {false, c};
  }
  return {true, std::nullopt};
}

EssentialResult essential_check(const ToeplitzFamily& family, int n) {
  return essential_check(*family.tower->chain, n, per_set(family, n).classes);
}

std::vector<DensityRow> density_sequence(const ToeplitzFamily& family, int depth) {
  if (depth < 1 || depth > family.depth + 1 || depth > family.tower->depth())
    throw std::invalid_argument("density depth out of range");
  std::vector<DensityRow> rows;
  rows.reserve(depth);
  for (int n = 1; n <= depth; ++n) {
    PerSet ps = per_set(family, n);
    DensityRow row;
    row.n = n;
    row.d = 0;
    Int dn(family.tower->size(n));
    for (const auto& cls : ps.classes) {
      Rat dj = make_rat(Int(cls.size()), dn);
      row.by_symbol.push_back(dj);
      row.d += dj;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RegularityReport regularity_report(const ToeplitzFamily& family, int depth) {
  const DomainTower& tower = *family.tower;
  RegularityReport rep;
  rep.rows = density_sequence(family, depth);

  for (const auto& row : rep.rows) rep.defect.push_back(Rat(1) - row.d);

  if (family.variant == FamilyVariant::MultiSymbol) {
    // 1 − d_{n+1} = (1 − d_n)(1 − |D_n|/|D_{n+1}|), anchored at 1 − 1/|D_1|.
    Rat cf = Rat(1) - make_rat(Int(1), Int(tower.size(1)));
    rep.closed_form.push_back(cf);
    for (int n = 2; n <= depth; ++n) {
      cf *= Rat(1) - make_rat(Int(tower.size(n - 1)), Int(tower.size(n)));
      rep.closed_form.push_back(cf);
    }
  } else {
    // Odd levels miss exactly one cell of D_n; even levels miss the step set.
    for (int n = 1; n <= depth; ++n) {
      if (n % 2 == 1)
        rep.closed_form.push_back(make_rat(Int(1), Int(tower.size(n))));
      else
        rep.closed_form.push_back(make_rat(Int(1), Int(tower.size(n - 1))) -
                                  make_rat(Int(1), Int(tower.size(n))));
    }
  }

  rep.identity_ok = rep.defect == rep.closed_form;

  const Rat& d_last = rep.rows.back().d;
  rep.multi_measure_regime = d_last < make_rat(Int(1), Int(2));

  rep.notes.push_back("defect at level " + std::to_string(depth) + " = " +
                      fraction_string(rep.defect.back()));
  if (family.variant == FamilyVariant::MultiSymbol) {
    rep.notes.push_back(rep.multi_measure_regime
                            ? "level-" + std::to_string(depth) +
                                  " density below 1/2: distinct residue-class measures stay separated"
                            : "level-" + std::to_string(depth) +
                                  " density at or above 1/2: no separation certificate at this depth");
  } else {
    std::string bad;
    for (int i = 2; i <= depth; ++i) {
      Rat lhs = make_rat(Int(tower.size(i - 1)), Int(tower.size(i)));
      if (lhs >= make_rat(Int(1), Int(i))) bad += (bad.empty() ? "" : ", ") + std::to_string(i);
    }
    if (bad.empty())
      rep.notes.push_back("step-ratio condition |D_{i-1}|/|D_i| < 1/i holds at every built level");
    else
      rep.notes.push_back("step-ratio condition |D_{i-1}|/|D_i| < 1/i fails at i = " + bad);
  }
  return rep;
}

}  // namespace tgs
