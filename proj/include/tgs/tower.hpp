#pragma once

#include "tgs/group.hpp"
#include "tgs/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tgs {

enum class TowerMode {
  Auto,       // canonical boxes for z/zd, greedy for f2
  Canonical,  // boxes; rejected for f2
  Greedy      // quotient-graph BFS transversals, any backend
};

// Nested fundamental domains D_1 ⊆ D_2 ⊆ ... ⊆ D_N for the chain's
// subgroups, stored flat: D_n is the first sizes[n-1] entries of `elements`
// (construction tiles D_{n+1} = T_{n+1}·D_n with 1_G first, so nesting is a
// prefix property).  All queries are pure; nothing mutates after build.
struct DomainTower {
  const GroupChain* chain = nullptr;
  TowerMode mode = TowerMode::Auto;
  std::vector<GroupElement> elements;                 // D_N in tiling order
  std::vector<std::uint64_t> sizes;                   // sizes[n-1] = |D_n|
  std::vector<std::vector<GroupElement>> transversals;  // [n-2] = T_n = D_n ∩ Γ_{n-1}, n ≥ 2
  // rep_pos[n-1][class_index] = position of the class representative in D_n.
  std::vector<std::vector<std::uint64_t>> rep_pos;

  int depth() const { return static_cast<int>(sizes.size()); }
  std::uint64_t size(int n) const;
  // D_n as a view: first size(n) entries of `elements`.
  const GroupElement& element(std::uint64_t pos) const { return elements[pos]; }
  std::vector<GroupElement> domain(int n) const;
  const std::vector<GroupElement>& transversal(int n) const;  // n >= 2

  std::uint64_t rep_position(ClassId c, int n) const;
  const GroupElement& rep_by_class(ClassId c, int n) const;
  // The unique d ∈ D_n with gΓ_n = dΓ_n.
  const GroupElement& representative(const GroupElement& g, int n) const;
  // g = gamma·d with gamma ∈ Γ_n, d ∈ D_n.
  std::pair<GroupElement, GroupElement> coset_decompose(const GroupElement& g, int n) const;
  bool contains(const GroupElement& g, int n) const;

  // |∂_F D_n| / |D_n| with ∂_F D_n = {v ∈ D_n : vF ⊄ D_n}.
  Rat boundary_ratio(const std::vector<GroupElement>& F, int n) const;

  // Recompute rep_pos from `elements` (used after test fixtures mutate a
  // level; construction calls it internally).
  void rebuild_index();
};

// depth < 0 means the chain's full depth.
DomainTower build_tower(const GroupChain& chain, int depth = -1, TowerMode mode = TowerMode::Auto);

struct TowerReport {
  int depth = 0;
  std::vector<std::string> failures;  // one line per violated invariant, names the level
  bool pass() const { return failures.empty(); }
};

// Checks, from the raw element data: 1_G ∈ D_1 and prefix nesting; q_n
// restricted to D_n bijects onto Q_n; D_{n+1} = ⊔_{v∈T_{n+1}} v·D_n
// element-wise with no repeats; 1_G ∈ T_{n+1} and |T_{n+1}| = |Q_{n+1}|/|Q_n|;
// and that rep_pos agrees with the elements.
TowerReport validate_tower(const DomainTower& t);

// Diagnostic: whether D_n · D_n ⊆ D_{n+1}, per level n = 1..depth-1.  Not an
// invariant of the construction; some schedules fail it and that is reported,
// not fixed.
std::vector<bool> product_condition(const DomainTower& t);

}  // namespace tgs
