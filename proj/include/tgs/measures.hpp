#pragma once

#include "tgs/toeplitz.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tgs {

// The Γ_m-periodization η_m (η_m(g) = η(representative(g, m))) together with
// the uniform orbit average μ_m over {σ^{u⁻¹}η_m : u ∈ D_m}.  An orbit point
// is identified with the position of u in D_m; x_u(f) = η_m(u·f).
//
// `overrides` force symbols at chosen D_m positions.  They exist so tests can
// corrupt one cell and watch a check fail; nothing in the library sets them.
struct EmpiricalMeasure {
  const ToeplitzFamily* family = nullptr;
  int m = 0;
  std::vector<std::pair<std::uint64_t, int>> overrides;

  const DomainTower& tower() const { return *family->tower; }
  const GroupChain& chain() const { return *family->tower->chain; }
  std::uint64_t orbit_size() const { return tower().size(m); }
  int eta_at(std::uint64_t pos) const;          // η_m on D_m by position
  int eta(const GroupElement& g) const;         // η_m anywhere
};

EmpiricalMeasure empirical_measure(const ToeplitzFamily& family, int m);

// Finite constraint set: x(cell) = symbol for every listed cell.
struct CylinderPattern {
  std::vector<std::pair<GroupElement, int>> cells;
};

// U_n = {x : x(g) = η_n(g) for all g ∈ D_{n+1}} — already finite.
CylinderPattern cylinder_un(const ToeplitzFamily& family, int n);
// C_n truncated at window W: x(g) = η(g) for g ∈ Per(η,Γ_n) ∩ D_W.
CylinderPattern cylinder_cn(const ToeplitzFamily& family, int n, int W);
// C_{n,i} truncated at W: C_n constraints plus x(g) = i for g ∈ J(n).
CylinderPattern cylinder_cni(const ToeplitzFamily& family, int n, int symbol, int W);

bool orbit_point_matches(const EmpiricalMeasure& mu, std::uint64_t upos,
                         const CylinderPattern& pattern);
// One flag per orbit point, in D_m order.
std::vector<char> orbit_membership(const EmpiricalMeasure& mu, const CylinderPattern& pattern);

Rat cylinder_mass(const EmpiricalMeasure& mu, const CylinderPattern& pattern);

// μ_m([i]) by two independent routes: orbit counting, and the closed formula
// from the Per-set cardinalities ((|J(m)| + a_{m,i})/|D_m| on the fresh
// symbol, a_{m,i}/|D_m| elsewhere).  The formula route only exists for the
// multi-symbol family.
struct SymbolMasses {
  int m = 0;
  std::vector<int> symbols;
  std::vector<Rat> counting;
  std::optional<std::vector<Rat>> formula;
  bool agree = true;  // formula absent, or equal to counting coordinate-wise
};

SymbolMasses symbol_masses(const ToeplitzFamily& family, int m);

// A_n: column-stochastic-up-to-scale integer matrix with A_n μ^{(n+1)} = μ^{(n)}.
struct LevelMatrix {
  int n = 0;
  Int ratio;                       // |D_{n+1}| / |D_n|
  std::vector<std::vector<Int>> a;  // r x r, row-major
  Int det;                          // ratio · (ratio-1)^{r-1}
};

LevelMatrix an_matrix(const DomainTower& tower, const SymbolCycle& cycle, int n);
std::vector<Rat> apply(const LevelMatrix& mat, const std::vector<Rat>& v);

// μ^{(n)} = (μ_m(C^{(W)}_{n,1}), ..., μ_m(C^{(W)}_{n,r})).  Multi-symbol only.
std::vector<Rat> partition_masses(const EmpiricalMeasure& mu, int n, int W);

// A_n · partition_masses(m, n+1, W) − partition_masses(m, n, W); exactly zero
// whenever n+2 ≤ W ≤ m.
std::vector<Rat> verify_an_recursion(const ToeplitzFamily& family, int m, int n, int W);

// Mass of each Γ_n-coset cylinder under μ_m; tiling forces exactly 1/|Q_n|.
struct HaarReport {
  int m = 0;
  int n = 0;
  Rat expected;             // 1 / |Q_n|
  std::vector<Rat> masses;  // one per class, dense index order
  bool uniform = false;
};

HaarReport haar_pushforward_check(const DomainTower& tower, int m, int n);

// The limit-simplex certificate at the deepest built level: base point
// t_j = d_{depth,j}, defect 1−d, and the r vectors t⃗_i = base + defect·e_i.
struct SimplexData {
  int depth = 0;
  std::vector<Rat> base;
  Rat defect;
  std::vector<std::vector<Rat>> tvec;
  bool monotone_ok = false;  // every d_{n,j} non-decreasing in n
  bool sums_ok = false;      // each t⃗_i sums to 1
  Rat det;                   // det[t⃗_1; ...; t⃗_r], equals defect^{r-1}
  bool independent = false;  // det ≠ 0
};

SimplexData limit_vectors(const ToeplitzFamily& family, int depth);

}  // namespace tgs
