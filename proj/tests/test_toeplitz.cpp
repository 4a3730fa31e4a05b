#include "doctest.h"
#include "oracle_helpers.hpp"

#include "tgs/toeplitz.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

using namespace tgs;
using fixtures::rat;
using fixtures::zel;

TEST_CASE("symbol cycle") {
  SymbolCycle c2{2};
  CHECK(c2.alpha(1) == 1);
  CHECK(c2.alpha(2) == 2);
  CHECK(c2.alpha(5) == 1);
  SymbolCycle c3{3};
  CHECK(c3.alpha(3) == 3);
  CHECK(c3.alpha(4) == 1);
  CHECK(c3.alpha(5) == 2);
}

TEST_CASE("level sets on the ternary schedule") {
  const ToeplitzFamily& f = fixtures::z3().family;
  CHECK(f.depth == 4);
  CHECK(f.jsets[0] == fixtures::zels({0}));
  CHECK(f.jsets[1] == fixtures::zels({1, 2}));
  CHECK(f.jsets[2] == fixtures::zels({4, 5, 7, 8}));
  CHECK(f.jsets[3] == fixtures::zels({13, 14, 16, 17, 22, 23, 25, 26}));
  CHECK(f.jsets[4].size() == 16);
}

TEST_CASE("evaluation resolves at the first defining level") {
  const ToeplitzFamily& f = fixtures::z3().family;
  auto at = [&](std::int64_t v) { return f.eval(zel(v)); };
  CHECK(at(0).symbol == 1);
  CHECK(at(0).level == 0);
  CHECK(at(1).symbol == 2);
  CHECK(at(1).level == 1);
  CHECK(at(4).symbol == 1);
  CHECK(at(4).level == 2);
  CHECK(at(13).symbol == 2);
  CHECK(at(13).level == 3);
  CHECK(at(3).level == 0);  // 3 lies in the coarsest subgroup
}

TEST_CASE("unresolved positions throw with the exact cell") {
  const ToeplitzFamily& f = fixtures::z3().family;
  CHECK(!f.try_eval(zel(-1)).has_value());
  CHECK_THROWS_AS(f.eval(zel(-1)), DepthExceeded);
  bool threw = false;
  try {
    f.eval(zel(-4));
  } catch (const DepthExceeded& e) {
    threw = true;
    CHECK(e.cell == "-4");
    CHECK(e.levels_checked == 4);
  }
  CHECK(threw);
}

TEST_CASE("window over the level-2 domain") {
  const ToeplitzFamily& f = fixtures::z3().family;
  auto w = f.window(fixtures::z3().tower.domain(2));
  CHECK(w == std::vector<int>{1, 2, 2, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("per-sets collect the defined classes by symbol") {
  const ToeplitzFamily& f = fixtures::z3().family;
  PerSet p2 = per_set(f, 2);
  CHECK(p2.symbols == std::vector<int>{1, 2});
  CHECK(p2.classes[0] == std::vector<ClassId>{0, 3, 6});
  CHECK(p2.classes[1] == std::vector<ClassId>{1, 2});
  PerSet p3 = per_set(f, 3);
  CHECK(p3.classes[0].size() == 13);
  CHECK(p3.classes[1].size() == 6);
}

// Independent route: bucket every domain element by its resolution level and
// compare with the per-set class lists.
static void per_set_brute(const fixtures::Built& b, int n) {
  const ToeplitzFamily& f = b.family;
  PerSet p = per_set(f, n);
  std::map<int, std::vector<ClassId>> by_symbol;
  for (std::uint64_t pos = 0; pos < b.tower.size(n); ++pos) {
    const GroupElement& g = b.tower.element(pos);
    auto ev = f.try_eval(g);
    if (ev && ev->level < n) by_symbol[ev->symbol].push_back(b.tower.chain->quotient_class(g, n));
  }
  for (auto& [sym, classes] : by_symbol) std::sort(classes.begin(), classes.end());
  for (std::size_t s = 0; s < p.symbols.size(); ++s) {
    auto it = by_symbol.find(p.symbols[s]);
    if (it == by_symbol.end())
      CHECK(p.classes[s].empty());
    else
      CHECK(p.classes[s] == it->second);
  }
}

TEST_CASE("per-sets agree with direct resolution bucketing") {
  for (int n = 1; n <= 4; ++n) per_set_brute(fixtures::z3(), n);
  for (int n = 1; n <= 3; ++n) per_set_brute(fixtures::f2(), n);
  for (int n = 1; n <= 3; ++n) per_set_brute(fixtures::zd(), n);
}

TEST_CASE("essential periods: only the identity fixes every per-class set") {
  const fixtures::Built& b = fixtures::z3();
  for (int n = 1; n <= 4; ++n) {
    EssentialResult r = essential_check(b.family, n);
    CHECK(r.essential);
    CHECK(!r.witness.has_value());
  }
  // degenerate control: a set fixed by everything is not essential
  std::vector<std::vector<ClassId>> whole(1);
  for (ClassId c = 0; c < 3; ++c) whole[0].push_back(c);
  EssentialResult r = essential_check(*b.chain, 1, whole);
  CHECK(!r.essential);
  CHECK(r.witness.has_value());
}

TEST_CASE("densities on the ternary schedule") {
  const ToeplitzFamily& f = fixtures::z3().family;
  auto rows = density_sequence(f, 5);
  CHECK(rows.size() == 5);
  CHECK(rows[0].d == rat(1, 3));
  CHECK(rows[1].d == rat(5, 9));
  CHECK(rows[2].d == rat(19, 27));
  CHECK(rows[3].d == rat(65, 81));
  CHECK(rows[4].d == rat(211, 243));
  CHECK(rows[2].by_symbol[0] == rat(13, 27));
  CHECK(rows[2].by_symbol[1] == rat(2, 9));
  // one-step recursion d_{n+1} = d_n + (|D_n|/|D_{n+1}|)(1 - d_n)
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    CHECK(rows[i + 1].d == rows[i].d + rat(1, 3) * (1 - rows[i].d));
}

TEST_CASE("regularity report closes the defect product") {
  RegularityReport rep = regularity_report(fixtures::z3().family, 5);
  CHECK(rep.identity_ok);
  CHECK(!rep.multi_measure_regime);
  CHECK(rep.defect[4] == rat(32, 243));
  RegularityReport wide = regularity_report(fixtures::z4j().family, 4);
  CHECK(wide.identity_ok);
  CHECK(wide.multi_measure_regime);  // d_4 < 1/2
  CHECK(wide.defect[3] == rat(722925, 1048576));
}

TEST_CASE("binary variant: step sets, chain points, densities") {
  const ToeplitzFamily& f = fixtures::zbin().family;
  CHECK(f.variant == FamilyVariant::RegularBinary);
  CHECK(f.depth == 5);
  CHECK(f.alphabet() == std::vector<int>{0, 1});
  CHECK(f.ssets[1] == fixtures::zels({1, 2}));
  CHECK(f.ssets[2] == fixtures::zels({4, 7}));
  CHECK(f.ssets[3] == fixtures::zels({13, 22, 31}));
  std::vector<std::int64_t> v{0, 1, 4, 13, 49, 229};
  for (std::size_t n = 0; n < v.size(); ++n) CHECK(f.vpoints[n] == zel(v[n]));
  // |S_n| = |D_n|/|D_{n-1}| - 1
  const DomainTower& t = fixtures::zbin().tower;
  for (int n = 2; n <= f.depth; ++n)
    CHECK(f.ssets[n].size() == t.size(n) / t.size(n - 1) - 1);
  auto rows = density_sequence(f, 5);
  CHECK(rows[0].d == rat(2, 3));
  CHECK(rows[1].d == rat(7, 9));
  CHECK(rows[2].d == rat(35, 36));
  CHECK(rows[3].d == rat(44, 45));
  CHECK(rows[4].d == rat(1079, 1080));
  RegularityReport rep = regularity_report(f, 5);
  CHECK(rep.identity_ok);
  CHECK(!rep.multi_measure_regime);
}

TEST_CASE("binary evaluation walks the v-chain") {
  const ToeplitzFamily& f = fixtures::zbin().family;
  CHECK(f.eval(zel(0)).symbol == 0);  // S_0 carries 0
  CHECK(f.eval(zel(1)).symbol == 1);  // S_1 carries 1
  CHECK(f.eval(zel(4)).symbol == 0);  // S_2 carries 0
  CHECK(f.eval(zel(13)).symbol == 1);
  // the diagonal point v_n stays undecided through every built level
  CHECK(!f.try_eval(zel(229)).has_value());
}

TEST_CASE("family construction guards") {
  const fixtures::Built& b = fixtures::z3();
  CHECK_THROWS_AS(build_family(b.tower, FamilyVariant::MultiSymbol, 2, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_family(b.tower, FamilyVariant::MultiSymbol, 0, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_family(b.tower, FamilyVariant::RegularBinary, 2, 7),
                  std::invalid_argument);
}
