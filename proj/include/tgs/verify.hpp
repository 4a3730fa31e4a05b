#pragma once

#include "tgs/measures.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tgs {

// Outcome of one exact combinatorial check.  Everything numeric in the
// payload is a string rendering of an exact integer or fraction; reports are
// deterministic given the same inputs.
struct LemmaReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> payload;
  std::vector<std::string> counterexamples;  // empty iff pass
  std::vector<std::string> notes;
};

// 𝒢 = (Γ_{n+1} ∩ D_m) ∖ ⋃_{s=n+1}^{m-1} D_s Γ_{s+1}, the elements that carry
// whole untouched D_{n+1}-patches at level m.
std::vector<GroupElement> good_gamma_set(const DomainTower& tower, int n, int m);

// Cardinality bound N_{m,n} ≥ (|D_m|/|D_{n+1}|)·∏_{l=1}^{m-n-1}(1 − |D_{n+l}|/|D_{n+l+1}|),
// the growth inequality N_{m,n} ≥ (|D_m|/|D_{m-1}| − 1)·N_{m-1,n}, and
// γD_{n+1} ⊆ D_m ∖ ⋃ D_sΓ_{s+1} for every member.  Requires m ≥ n+2.
LemmaReport check_good_gamma(const DomainTower& tower, int n, int m);

// For every γ ∈ 𝒢: η(γg) = η_n(g) on all of D_{n+1}.  Requires m ≡ n (mod r).
LemmaReport check_good_patches(const ToeplitzFamily& family, int n, int m);

// J(i+1) = ⋃_{γ ∈ T_{i+1} ∖ {1_G}} γ·J(i) — exact set equality, both
// inclusions (T_{i+1} = D_{i+1} ∩ Γ_i is the level-(i+1) transversal).
LemmaReport check_jset_recursion(const ToeplitzFamily& family, int i);

// γ ∈ Γ_i: all of γJ(i) evaluates to one symbol at one level.
LemmaReport check_constancy(const ToeplitzFamily& family, int i, const GroupElement& gamma);

// C_{n+1} ⊆ C_{n,alpha(n+1)}, and σ^{γ⁻¹}C_{n+1,j} ⊆ C_{n,j} for every
// non-identity γ ∈ T_{n+1} — verified on the μ_m orbit with window W.
LemmaReport check_rel_partition(const EmpiricalMeasure& mu, int n, int W);

// With L = i + k·r − 1: U_L ∩ orbit = Y_{i,k} (both inclusions) and the
// shifted-Y inclusion into Z_{i,k} ∪ (⋃_{v ∉ kernel part} translates), on the
// μ_m orbit.  Window W should be ≥ L+1 (at W = L the two sides coincide
// definitionally).
LemmaReport check_uy_equality(const EmpiricalMeasure& mu, int i, int k, int W);

// Z_{i,k} ⊆ Z_{i,k+1} ∪ ⋃_{v ∈ D_{i+(k+1)r−1}} σ^{v⁻¹}C_{i+(k+1)r}.
LemmaReport check_z_chain(const EmpiricalMeasure& mu, int i, int k, int W);

// μ_m(Z_{i,k}) along the residue class m ≡ i−1 (mod r), against the product
// lower bounds implied by the level matrices; reports the schedule hypothesis
// flags and skips the trend assertion (with a note) when the hypotheses fail.
LemmaReport z_mass_trend(const ToeplitzFamily& family, int i, int depth);

// Named-check driver used by the CLI and the run bundle.  `names` may be
// {"all"}.  Unknown names throw std::invalid_argument.
std::vector<LemmaReport> run_checks(const ToeplitzFamily& family,
                                    const std::vector<std::string>& names, int window);

std::vector<std::string> known_checks();

}  // namespace tgs
