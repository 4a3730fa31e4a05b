#include "doctest.h"
#include "oracle_helpers.hpp"

#include "tgs/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace tgs;
using fixtures::zel;

TEST_CASE("z element arithmetic and formatting") {
  const GroupChain& c = *fixtures::z3().chain;
  CHECK(c.kind() == Backend::Z);
  CHECK(c.depth() == 5);
  CHECK(c.identity() == zel(0));
  CHECK(c.multiply(zel(7), zel(-3)) == zel(4));
  CHECK(c.invert(zel(5)) == zel(-5));
  CHECK(c.format(zel(-12)) == "-12");
  CHECK(c.parse("-12") == zel(-12));
  for (const auto& g : c.ball(6)) CHECK(c.parse(c.format(g)) == g);
}

TEST_CASE("z quotient classes follow the multiplier schedule") {
  const GroupChain& c = *fixtures::z3().chain;
  CHECK(c.class_count(1) == 3);
  CHECK(c.class_count(3) == 27);
  CHECK(c.class_count(5) == 243);
  CHECK(c.quotient_class(zel(29), 3) == 2);
  CHECK(c.quotient_class(zel(-1), 2) == 8);
  CHECK(c.in_subgroup(zel(81), 4));
  CHECK(!c.in_subgroup(zel(81), 5));
}

TEST_CASE("z ball enumeration is shell-ordered") {
  const GroupChain& c = *fixtures::z3().chain;
  auto b = c.ball(2);
  CHECK(b == fixtures::zels({0, 1, -1, 2, -2}));
  CHECK(c.ball(20).size() == 41);
}

TEST_CASE("zd coordinates, classes, ball") {
  const GroupChain& c = *fixtures::zd().chain;
  CHECK(c.kind() == Backend::Zd);
  GroupElement a{{1, 2}}, b{{3, -1}}, ab{{4, 1}}, ainv{{-1, -2}};
  CHECK(c.multiply(a, b) == ab);
  CHECK(c.invert(a) == ainv);
  CHECK(c.parse(c.format(a)) == a);
  CHECK(c.class_count(1) == 4);
  CHECK(c.class_count(2) == 36);
  CHECK(c.class_count(3) == 324);
  CHECK(c.ball(1).size() == 9);
  CHECK(c.ball(2).size() == 25);
  CHECK(c.ball(1)[0] == c.identity());
  auto b3 = c.ball(3);
  std::set<GroupElement> uniq(b3.begin(), b3.end());
  CHECK(uniq.size() == b3.size());
}

TEST_CASE("f2 words reduce and quotients have the right orders") {
  const GroupChain& c = *fixtures::f2().chain;
  CHECK(c.kind() == Backend::F2);
  GroupElement a = c.parse("a"), b = c.parse("b");
  CHECK(c.multiply(a, c.invert(a)) == c.identity());
  CHECK(c.format(c.multiply(a, b)) == "ab");
  CHECK(c.parse("aB") == c.multiply(a, c.invert(b)));
  // |SL(2, Z/3^k)| for k = 1,2,3
  CHECK(c.class_count(1) == 24);
  CHECK(c.class_count(2) == 648);
  CHECK(c.class_count(3) == 17496);
  // a^3 and b^3 die mod 3 but not mod 9
  CHECK(c.in_subgroup(c.parse("aaa"), 1));
  CHECK(c.in_subgroup(c.parse("bbb"), 1));
  CHECK(!c.in_subgroup(c.parse("aaa"), 2));
  CHECK(!c.in_subgroup(a, 1));
  for (const auto& g : c.ball(3)) CHECK(c.parse(c.format(g)) == g);
}

TEST_CASE("f2 ball sizes follow free-group growth") {
  const GroupChain& c = *fixtures::f2().chain;
  CHECK(c.ball(0).size() == 1);
  CHECK(c.ball(1).size() == 5);
  CHECK(c.ball(2).size() == 17);
  CHECK(c.ball(3).size() == 53);
  CHECK(c.ball(4).size() == 161);
}

// Packed-class arithmetic must agree with element arithmetic everywhere; the
// class ops are the independent fast path used by every orbit scan.
static void check_class_ops(const GroupChain& c, int radius) {
  auto ball = c.ball(radius);
  for (int n = 1; n <= c.depth(); ++n) {
    CHECK(c.identity_class(n) == c.quotient_class(c.identity(), n));
    for (std::size_t i = 0; i < ball.size(); i += 3) {
      const auto& g = ball[i];
      ClassId cg = c.quotient_class(g, n);
      CHECK(c.class_inv(n, cg) == c.quotient_class(c.invert(g), n));
      CHECK(c.class_at(n, c.class_index(n, cg)) == cg);
      if (n < c.depth())
        CHECK(c.project(n, c.quotient_class(g, n + 1)) == cg);
      for (std::size_t j = 0; j < ball.size(); j += 7) {
        ClassId ch = c.quotient_class(ball[j], n);
        CHECK(c.class_mul(n, cg, ch) == c.quotient_class(c.multiply(g, ball[j]), n));
      }
    }
  }
}

TEST_CASE("class arithmetic matches element arithmetic") {
  check_class_ops(*fixtures::z3().chain, 15);
  check_class_ops(*fixtures::zd().chain, 4);
  check_class_ops(*fixtures::f2().chain, 3);
}

TEST_CASE("backend specs reject bad schedules") {
  CHECK_THROWS_AS(make_group_chain(fixtures::z_spec({2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(make_group_chain(fixtures::z_spec({3, 2})), std::invalid_argument);
  CHECK_THROWS_AS(make_group_chain(fixtures::z_spec({})), std::invalid_argument);
  CHECK_THROWS_AS(make_group_chain(fixtures::f2_spec({2, 2})), std::invalid_argument);
  CHECK_THROWS_AS(make_group_chain(fixtures::f2_spec({3, 1})), std::invalid_argument);
  // |Q_1| = 2 < 3 on the diagonal axis product
  CHECK_THROWS_AS(make_group_chain(fixtures::zd_spec({{2, 3}, {1, 3}})), std::invalid_argument);
  CHECK_THROWS_AS(make_group_chain(fixtures::zd_spec({{2, 3}, {2}})), std::invalid_argument);
}

TEST_CASE("separation: ball pairs split at some level") {
  SeparationReport r = separation_check(*fixtures::f2().chain, 2, 2);
  CHECK(r.pass());
  CHECK(r.pairs_checked == 17 * 16 / 2);
  SeparationReport z = separation_check(*fixtures::z3().chain, 20, 5);
  CHECK(z.pass());
  // radius 122 spans a difference of 243, invisible to every built quotient
  SeparationReport fail = separation_check(*fixtures::z3().chain, 122, 5);
  CHECK(!fail.pass());
  CHECK(!fail.unseparated.empty());
}
