#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgs {

enum class Backend { Z, Zd, F2 };

std::string backend_name(Backend b);

/// Canonical element form shared by all backends:
///  - Z:  one entry, the integer itself
///  - Zd: d entries, the coordinate vector
///  - F2: a freely reduced word over {1,-1,2,-2}  (a, a^-1, b, b^-1)
///
/// Equality of canonical forms is group equality; the empty-vector convention
/// is never used (identity is {0}, {0,..,0} or the empty word {}).
struct GroupElement {
  std::vector<std::int64_t> data;

  bool operator==(const GroupElement& o) const { return data == o.data; }
  bool operator!=(const GroupElement& o) const { return data != o.data; }
  bool operator<(const GroupElement& o) const { return data < o.data; }
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

/// Coset id inside a finite quotient Q_n. Dense for Z/Zd (the mixed-radix
/// value itself), packed-matrix for F2; class_index() gives a dense index in
/// [0, |Q_n|) in all cases.
using ClassId = std::uint64_t;

/// Which concrete group and which subgroup chain to build.
struct BackendSpec {
  Backend kind = Backend::Z;
  // Z: multipliers m_1..m_N (M_n = m_1*...*m_n, Gamma_n = M_n Z).
  std::vector<std::int64_t> multipliers;
  // Zd: axes[a] = per-level multipliers for axis a; all axes equal length.
  std::vector<std::vector<std::int64_t>> axes;
  // F2: strictly increasing exponents n_1 < ... < n_N; Gamma_j is the kernel
  // of the Sanov representation a -> (1 2;0 1), b -> (1 0;2 1) mod 3^{n_j}.
  std::vector<int> levels;

  int depth() const;
  /// Throws std::invalid_argument naming the offending level on any violation
  /// (ratios < 3, |Q_1| < 3, non-increasing F2 exponents, packing limits...).
  void validate() const;
};

/// A concrete residually finite group together with its finite-index normal
/// subgroup chain G > Gamma_1 > Gamma_2 > ... and quotients Q_n = G/Gamma_n.
///
/// Immutable after construction; all methods are const and safe to call
/// concurrently. Levels are 1-based (level n <-> Gamma_n, Q_n).
class GroupChain {
 public:
  virtual ~GroupChain() = default;

  virtual Backend kind() const = 0;
  virtual int depth() const = 0;

  // --- element arithmetic (canonical forms in, canonical forms out) ---
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement invert(const GroupElement& a) const = 0;
  virtual std::string format(const GroupElement& g) const = 0;
  virtual GroupElement parse(const std::string& s) const = 0;

  /// Generating set used for balls and breadth-first searches, inverse-closed,
  /// in the documented fixed order (Z/Zd: +e1,-e1,..; F2: a,a^-1,b,b^-1).
  virtual const std::vector<GroupElement>& generators() const = 0;

  /// The radius-R ball in the word metric of generators(), in the canonical
  /// enumeration order: shells of increasing radius, deterministic order
  /// within each shell (Z: 0,1,-1,2,-2,...; F2: length-lex).
  virtual std::vector<GroupElement> ball(int radius) const = 0;

  // --- quotients ---
  virtual ClassId quotient_class(const GroupElement& g, int n) const = 0;
  bool in_subgroup(const GroupElement& g, int n) const {
    return quotient_class(g, n) == identity_class(n);
  }
  virtual std::uint64_t class_count(int n) const = 0;
  virtual ClassId identity_class(int n) const = 0;
  virtual ClassId class_mul(int n, ClassId a, ClassId b) const = 0;
  virtual ClassId class_inv(int n, ClassId a) const = 0;
  /// pi_n: Q_{n+1} -> Q_n (takes a level-(n+1) class, 1 <= n < depth).
  virtual ClassId project(int n, ClassId c) const = 0;
  /// Dense index of a class in [0, class_count(n)).
  virtual std::uint64_t class_index(int n, ClassId c) const = 0;
  virtual ClassId class_at(int n, std::uint64_t index) const = 0;

 protected:
  void check_level(int n) const;
};

std::shared_ptr<const GroupChain> make_group_chain(const BackendSpec& spec);

/// Finite-ball surrogate for trivial chain intersection: every distinct pair
/// in the radius-R ball should acquire distinct classes at some level <= N.
struct SeparationReport {
  int radius = 0;
  int depth = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<std::pair<GroupElement, GroupElement>> unseparated;
  bool pass() const { return unseparated.empty(); }
};

SeparationReport separation_check(const GroupChain& chain, int radius, int n);

}  // namespace tgs
