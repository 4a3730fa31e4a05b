#pragma once

#include "tgs/tower.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgs {

enum class FamilyVariant { MultiSymbol, RegularBinary };

std::string variant_name(FamilyVariant v);

// The r-periodic symbol schedule: alpha(i) ∈ {1..r} with alpha(i) ≡ i (mod r).
struct SymbolCycle {
  int r = 2;
  int alpha(int i) const {
    int m = ((i - 1) % r + r) % r;
    return m + 1;
  }
};

struct EvalResult {
  int symbol;
  int level;
};

// A position whose symbol genuinely needs levels beyond the built depth.
struct DepthExceeded : std::runtime_error {
  DepthExceeded(std::string cell_text, int depth)
      : std::runtime_error("symbol unresolved within depth " + std::to_string(depth) +
                           " at position " + cell_text),
        cell(std::move(cell_text)),
        levels_checked(depth) {}
  std::string cell;
  int levels_checked;
};

// One Toeplitz array over the tower's group, in one of two builds:
//
// MultiSymbol: the level sets J(0) = {1_G}, J(m) = D_m ∖ ⋃_{l<m} J(l)Γ_{l+1},
// with every position of J(m)Γ_{m+1} carrying the symbol alpha(m+1).
//
// RegularBinary: S_0 = {1_G}, S_n = (v_{n-1}Γ_{n-1} ∩ D_n) ∖ D_{n-1} with
// v_n the first element of S_n in domain order; a position carries 0 exactly
// when it lies in some S_{2n}Γ_{2n+1}, and 1 otherwise.
//
// Immutable after build.  Evaluation is by quotient-class membership, one
// sorted lookup per level, no coset expansion.
struct ToeplitzFamily {
  const DomainTower* tower = nullptr;
  FamilyVariant variant = FamilyVariant::MultiSymbol;
  SymbolCycle cycle;
  int depth = 0;  // J-sets (or S-sets) built for 0..depth; needs tower depth+1

  // MultiSymbol state
  std::vector<std::vector<GroupElement>> jsets;  // [m] = J(m) in domain order
  std::vector<std::vector<ClassId>> jclasses;    // [m] = sorted q_{m+1}(J(m))

  // RegularBinary state
  std::vector<std::vector<GroupElement>> ssets;  // [n] = S_n in domain order
  std::vector<GroupElement> vpoints;             // [n] = v_n, v_0 = 1_G
  // Per evaluation level l: the class set that certifies a symbol there
  // (odd l: q_l(S_{l-1}), even l: q_l(S_l)), plus q_l(v_l) for the coset walk.
  std::vector<std::vector<ClassId>> s_eval_classes;
  std::vector<ClassId> v_classes;

  int alphabet_size() const { return variant == FamilyVariant::MultiSymbol ? cycle.r : 2; }
  // Symbols as stored: MultiSymbol uses 1..r, RegularBinary uses 0/1.
  std::vector<int> alphabet() const;

  std::optional<EvalResult> try_eval(const GroupElement& g) const;
  EvalResult eval(const GroupElement& g) const;  // throws DepthExceeded

  // pattern(f) = eval(f).symbol for every f ∈ F, in F's order.
  std::vector<int> window(const std::vector<GroupElement>& F) const;
};

ToeplitzFamily build_jsets(const DomainTower& tower, SymbolCycle cycle, int depth);
ToeplitzFamily build_regular_binary(const DomainTower& tower, int depth);
ToeplitzFamily build_family(const DomainTower& tower, FamilyVariant variant, int r, int depth);

// Per(η, Γ_n, α) as quotient-class sets: classes[α-index] ⊆ Q_n, sorted.
// For MultiSymbol this is the union of q_n(J(l)Γ_{l+1}) over l < n with
// alpha(l+1) = α.  For RegularBinary, the classes of positions whose symbol
// is certified at a level ≤ n.
struct PerSet {
  int level = 0;
  std::vector<int> symbols;                    // symbol value per slot
  std::vector<std::vector<ClassId>> classes;   // parallel to symbols, each sorted
};

PerSet per_set(const ToeplitzFamily& family, int n);

struct EssentialResult {
  bool essential = false;
  std::optional<ClassId> witness;  // a non-identity class fixing every Per-class-set
};

// Decides whether only the identity class c satisfies c⁻¹P = P for every
// per-symbol class set P: the finite-level essential-period test.
EssentialResult essential_check(const GroupChain& chain, int n,
                                const std::vector<std::vector<ClassId>>& class_sets);
EssentialResult essential_check(const ToeplitzFamily& family, int n);

struct DensityRow {
  int n = 0;
  Rat d;                       // |D_n ∩ Per(η,Γ_n)| / |D_n|
  std::vector<Rat> by_symbol;  // d_{n,j}, one per alphabet slot; sums to d
};

std::vector<DensityRow> density_sequence(const ToeplitzFamily& family, int depth);

struct RegularityReport {
  std::vector<DensityRow> rows;
  std::vector<Rat> defect;        // 1 - d_n
  std::vector<Rat> closed_form;   // per-level closed form for the defect
  bool identity_ok = false;       // defect == closed_form at every level, exactly
  bool multi_measure_regime = false;  // d_depth < 1 - d_depth
  std::vector<std::string> notes;
};

RegularityReport regularity_report(const ToeplitzFamily& family, int depth);

}  // namespace tgs
