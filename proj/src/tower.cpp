#include "tgs/tower.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace tgs {
namespace {

constexpr std::uint64_t kNoRep = std::numeric_limits<std::uint64_t>::max();

// Per-axis period of the free-abelian chain at level n, recovered by probing
// multiples of the axis generator (the chain interface deliberately hides the
// schedule).  Terminates: k = the full quotient size works at the latest.
std::int64_t axis_period(const GroupChain& chain, std::size_t axis, int n) {
  GroupElement e = chain.identity();
  e.data[axis] = 1;
  GroupElement acc = e;
  for (std::int64_t k = 1;; ++k) {
    if (chain.in_subgroup(acc, n)) return k;
    acc = chain.multiply(acc, e);
  }
}

void build_canonical(DomainTower& t, int depth) {
  const GroupChain& chain = *t.chain;
  if (chain.kind() == Backend::F2)
    throw std::invalid_argument("canonical towers exist only for the abelian backends");
  const std::size_t dims = chain.identity().data.size();
  // periods[a][j] = per-axis period at level j+1
  std::vector<std::vector<std::int64_t>> periods(dims);
  for (std::size_t a = 0; a < dims; ++a)
    for (int n = 1; n <= depth; ++n) periods[a].push_back(axis_period(chain, a, n));

  // D_1: the level-1 box, axis 0 fastest.
  std::vector<GroupElement> cur;
  {
    std::vector<std::int64_t> idx(dims, 0);
    for (;;) {
      cur.push_back(GroupElement{idx});
      std::size_t a = 0;
      while (a < dims && ++idx[a] == periods[a][0]) idx[a++] = 0;
      if (a == dims) break;
    }
  }
  t.sizes.push_back(cur.size());

  for (int n = 1; n < depth; ++n) {
    // T_{n+1}: per-axis multiples of the level-n box edge, axis 0 fastest.
    std::vector<GroupElement> trans;
    std::vector<std::int64_t> k(dims, 0);
    for (;;) {
      GroupElement v = chain.identity();
      for (std::size_t a = 0; a < dims; ++a) v.data[a] = k[a] * periods[a][n - 1];
      trans.push_back(v);
      std::size_t a = 0;
      while (a < dims && ++k[a] * periods[a][n - 1] == periods[a][n]) k[a++] = 0;
      if (a == dims) break;
    }
    std::vector<GroupElement> next;
    next.reserve(trans.size() * cur.size());
    for (const auto& v : trans)
      for (const auto& d : cur) next.push_back(chain.multiply(v, d));
    t.transversals.push_back(std::move(trans));
    cur = std::move(next);
    t.sizes.push_back(cur.size());
  }
  t.elements = std::move(cur);
}

// Breadth-first search over the Cayley graph of Q_n, recording the first
// word that reaches each class.  Because generators are applied in their
// fixed order, discovery order equals the length-lex ball enumeration, and a
// word reaching a class in ker(Q_n -> Q_i) automatically lies in Gamma_i.
std::vector<std::pair<ClassId, GroupElement>> bfs_class_words(const GroupChain& chain, int n) {
  const auto& gens = chain.generators();
  std::vector<ClassId> gen_classes;
  for (const auto& g : gens) gen_classes.push_back(chain.quotient_class(g, n));
  std::vector<std::pair<ClassId, GroupElement>> found;
  found.reserve(chain.class_count(n));
  found.emplace_back(chain.identity_class(n), chain.identity());
  std::unordered_set<ClassId> seen{found[0].first};
  std::size_t head = 0;
  while (head < found.size()) {
    auto [c, w] = found[head++];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      ClassId nc = chain.class_mul(n, c, gen_classes[gi]);
      if (seen.insert(nc).second) found.emplace_back(nc, chain.multiply(w, gens[gi]));
    }
  }
  if (found.size() != chain.class_count(n))
    throw std::runtime_error("generators do not reach every class at level " + std::to_string(n));
  return found;
}

void build_greedy(DomainTower& t, int depth) {
  const GroupChain& chain = *t.chain;
  auto level1 = bfs_class_words(chain, 1);
  std::vector<GroupElement> cur;
  cur.reserve(level1.size());
  for (auto& [c, w] : level1) cur.push_back(std::move(w));
  t.sizes.push_back(cur.size());

  for (int n = 1; n < depth; ++n) {
    auto words = bfs_class_words(chain, n + 1);
    std::vector<GroupElement> trans;
    for (auto& [c, w] : words)
      if (chain.project(n, c) == chain.identity_class(n)) trans.push_back(std::move(w));
    std::vector<GroupElement> next;
    next.reserve(trans.size() * cur.size());
    for (const auto& v : trans)
      for (const auto& d : cur) next.push_back(chain.multiply(v, d));
    t.transversals.push_back(std::move(trans));
    cur = std::move(next);
    t.sizes.push_back(cur.size());
  }
  t.elements = std::move(cur);
}

}  // namespace

std::uint64_t DomainTower::size(int n) const {
  if (n < 1 || n > depth()) throw std::out_of_range("tower level " + std::to_string(n));
  return sizes[n - 1];
}

std::vector<GroupElement> DomainTower::domain(int n) const {
  return {elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(size(n))};
}

const std::vector<GroupElement>& DomainTower::transversal(int n) const {
  if (n < 2 || n > depth()) throw std::out_of_range("no transversal at level " + std::to_string(n));
  return transversals[n - 2];
}

std::uint64_t DomainTower::rep_position(ClassId c, int n) const {
  std::uint64_t pos = rep_pos[n - 1][chain->class_index(n, c)];
  if (pos == kNoRep) throw std::logic_error("class without representative (corrupt tower)");
  return pos;
}

const GroupElement& DomainTower::rep_by_class(ClassId c, int n) const {
  return elements[rep_position(c, n)];
}

const GroupElement& DomainTower::representative(const GroupElement& g, int n) const {
  return rep_by_class(chain->quotient_class(g, n), n);
}

std::pair<GroupElement, GroupElement> DomainTower::coset_decompose(const GroupElement& g,
                                                                   int n) const {
  const GroupElement& d = representative(g, n);
  return {chain->multiply(g, chain->invert(d)), d};
}

bool DomainTower::contains(const GroupElement& g, int n) const {
  return representative(g, n) == g;
}

Rat DomainTower::boundary_ratio(const std::vector<GroupElement>& F, int n) const {
  const std::uint64_t dn = size(n);
  std::uint64_t escaped = 0;
  for (std::uint64_t pos = 0; pos < dn; ++pos) {
    for (const auto& f : F) {
      GroupElement vf = chain->multiply(elements[pos], f);
      if (!contains(vf, n)) {
        ++escaped;
        break;
      }
    }
  }
  return Rat(Int(escaped), Int(dn));
}

void DomainTower::rebuild_index() {
  rep_pos.assign(depth(), {});
  for (int n = 1; n <= depth(); ++n) {
    auto& idx = rep_pos[n - 1];
    idx.assign(chain->class_count(n), kNoRep);
    for (std::uint64_t pos = 0; pos < sizes[n - 1]; ++pos) {
      std::uint64_t ci = chain->class_index(n, chain->quotient_class(elements[pos], n));
      if (idx[ci] == kNoRep) idx[ci] = pos;
    }
  }
}

DomainTower build_tower(const GroupChain& chain, int depth, TowerMode mode) {
  if (depth < 0) depth = chain.depth();
  if (depth < 1 || depth > chain.depth())
    throw std::out_of_range("tower depth " + std::to_string(depth) + " outside chain depth " +
                            std::to_string(chain.depth()));
  DomainTower t;
  t.chain = &chain;
  t.mode = mode != TowerMode::Auto ? mode
           : chain.kind() == Backend::F2 ? TowerMode::Greedy
                                         : TowerMode::Canonical;
  if (t.mode == TowerMode::Canonical)
    build_canonical(t, depth);
  else
    build_greedy(t, depth);
  t.rebuild_index();
  return t;
}

TowerReport validate_tower(const DomainTower& t) {
  const GroupChain& chain = *t.chain;
  TowerReport rep;
  rep.depth = t.depth();
  auto fail = [&rep](const std::string& msg) { rep.failures.push_back(msg); };

  if (t.elements.size() != t.sizes.back()) fail("element store does not match deepest size");
  if (t.transversals.size() + 1 != t.sizes.size()) fail("transversal count does not match depth");

  // (1) 1_G ∈ D_1 (nesting D_i ⊆ D_{i+1} is structural in the flat layout).
  {
    GroupElement id = chain.identity();
    auto end = t.elements.begin() + static_cast<std::ptrdiff_t>(t.sizes[0]);
    if (std::find(t.elements.begin(), end, id) == end) fail("level 1: identity not in D_1");
  }

  for (int n = 1; n <= t.depth(); ++n) {
    const std::uint64_t dn = t.sizes[n - 1];
    // (2) q_n bijects D_n onto Q_n.
    if (dn != chain.class_count(n)) {
      fail("level " + std::to_string(n) + ": |D_n| = " + std::to_string(dn) + " but |Q_n| = " +
           std::to_string(chain.class_count(n)));
    } else {
      std::vector<char> hit(dn, 0);
      bool dup = false, gap = false;
      for (std::uint64_t pos = 0; pos < dn && !dup; ++pos) {
        std::uint64_t ci = chain.class_index(n, chain.quotient_class(t.elements[pos], n));
        if (hit[ci]) dup = true;
        hit[ci] = 1;
      }
      if (dup)
        fail("level " + std::to_string(n) + ": duplicate class in D_n");
      else
        for (std::uint64_t ci = 0; ci < dn; ++ci)
          if (!hit[ci]) {
            fail("level " + std::to_string(n) + ": class index " + std::to_string(ci) +
                 " missing from q_n(D_n)");
            gap = true;
            break;
          }
      (void)gap;
    }
    // index consistency
    if (t.rep_pos[n - 1].size() != chain.class_count(n)) {
      fail("level " + std::to_string(n) + ": representative index has wrong size");
    } else {
      for (std::uint64_t pos = 0; pos < dn; ++pos) {
        std::uint64_t ci = chain.class_index(n, chain.quotient_class(t.elements[pos], n));
        if (t.rep_pos[n - 1][ci] != pos) {
          fail("level " + std::to_string(n) + ": representative index disagrees at position " +
               std::to_string(pos));
          break;
        }
      }
    }
  }

  // (3)+(4): transversals tile each level onto the next.
  for (int n = 2; n <= t.depth(); ++n) {
    const auto& trans = t.transversals[n - 2];
    const std::uint64_t prev = t.sizes[n - 2];
    if (trans.empty() || trans.front() != chain.identity())
      fail("level " + std::to_string(n) + ": transversal does not start with the identity");
    const std::uint64_t want = chain.class_count(n) / chain.class_count(n - 1);
    if (trans.size() != want)
      fail("level " + std::to_string(n) + ": |T| = " + std::to_string(trans.size()) +
           ", expected " + std::to_string(want));
    for (const auto& v : trans)
      if (!chain.in_subgroup(v, n - 1)) {
        fail("level " + std::to_string(n) + ": transversal element " + chain.format(v) +
             " outside the subgroup");
        break;
      }
    bool tiled = trans.size() * prev == t.sizes[n - 1];
    for (std::uint64_t vi = 0; tiled && vi < trans.size(); ++vi)
      for (std::uint64_t j = 0; j < prev; ++j) {
        if (t.elements[vi * prev + j] != chain.multiply(trans[vi], t.elements[j])) {
          fail("level " + std::to_string(n) + ": tiling broken at tile " + std::to_string(vi) +
               ", offset " + std::to_string(j));
          tiled = false;
          break;
        }
      }
    if (trans.size() * prev != t.sizes[n - 1])
      fail("level " + std::to_string(n) + ": tile count times |D_{n-1}| is not |D_n|");
  }
  return rep;
}

std::vector<bool> product_condition(const DomainTower& t) {
  const GroupChain& chain = *t.chain;
  std::vector<bool> ok;
  for (int n = 1; n < t.depth(); ++n) {
    bool holds = true;
    const std::uint64_t dn = t.sizes[n - 1];
    for (std::uint64_t i = 0; i < dn && holds; ++i)
      for (std::uint64_t j = 0; j < dn; ++j) {
        if (!t.contains(chain.multiply(t.elements[i], t.elements[j]), n + 1)) {
          holds = false;
          break;
        }
      }
    ok.push_back(holds);
  }
  return ok;
}

}  // namespace tgs
