#include "tgs/group.hpp"

#include "tgs/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>

namespace tgs::detail {
std::shared_ptr<const GroupChain> make_zd_chain(const BackendSpec& spec);
std::shared_ptr<const GroupChain> make_f2_chain(const BackendSpec& spec);
}  // namespace tgs::detail

namespace tgs {

std::shared_ptr<const GroupChain> make_group_chain(const BackendSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case Backend::Z:
    case Backend::Zd: return detail::make_zd_chain(spec);
    case Backend::F2: return detail::make_f2_chain(spec);
  }
  throw std::invalid_argument("backend spec: unknown kind");
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Z: return "z";
    case Backend::Zd: return "zd";
    case Backend::F2: return "f2";
  }
  return "?";
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  // FNV-1a over the raw words; canonical forms make this a group-element hash.
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : g.data) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

int BackendSpec::depth() const {
  switch (kind) {
    case Backend::Z: return static_cast<int>(multipliers.size());
    case Backend::Zd: return axes.empty() ? 0 : static_cast<int>(axes[0].size());
    case Backend::F2: return static_cast<int>(levels.size());
  }
  return 0;
}

void BackendSpec::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("backend spec: " + msg); };
  switch (kind) {
    case Backend::Z: {
      if (multipliers.empty()) fail("z schedule is empty");
      for (std::size_t j = 0; j < multipliers.size(); ++j) {
        if (multipliers[j] < 3)
          fail("z schedule ratio " + std::to_string(multipliers[j]) + " at level " +
               std::to_string(j + 1) + " is below the minimum of 3");
      }
      Int M = 1;
      for (auto m : multipliers) M *= m;
      if (M > Int(1) << 62) fail("z schedule overflows the 2^62 index budget");
      break;
    }
    case Backend::Zd: {
      if (axes.empty()) fail("zd schedule has no axes");
      const std::size_t d = axes[0].size();
      if (d == 0) fail("zd schedule is empty");
      for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].size() != d)
          fail("zd axis " + std::to_string(a + 1) + " has a schedule of different length");
        for (std::size_t j = 0; j < axes[a].size(); ++j)
          if (axes[a][j] < 1)
            fail("zd axis " + std::to_string(a + 1) + " multiplier at level " +
                 std::to_string(j + 1) + " is below 1");
      }
      Int q = 1;
      for (std::size_t j = 0; j < d; ++j) {
        Int ratio = 1;
        for (const auto& ax : axes) ratio *= ax[j];
        if (ratio < 3)
          fail("zd schedule ratio " + ratio.str() + " at level " + std::to_string(j + 1) +
               " is below the minimum of 3");
        q *= ratio;
        if (q > Int(1) << 62) fail("zd schedule overflows the 2^62 index budget");
      }
      break;
    }
    case Backend::F2: {
      if (levels.empty()) fail("f2 schedule is empty");
      int prev = 0;
      for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j] <= prev)
          fail("f2 exponents must be strictly increasing; offending level " +
               std::to_string(j + 1));
        if (levels[j] > 10)
          fail("f2 exponent " + std::to_string(levels[j]) + " at level " + std::to_string(j + 1) +
               " exceeds the packing limit of 10");
        prev = levels[j];
      }
      break;
    }
  }
}

void GroupChain::check_level(int n) const {
  if (n < 1 || n > depth())
    throw std::out_of_range("chain level " + std::to_string(n) + " outside built depth " +
                            std::to_string(depth()));
}

SeparationReport separation_check(const GroupChain& chain, int radius, int n) {
  if (n < 0 || n > chain.depth())
    throw std::out_of_range("separation depth outside built chain");
  SeparationReport rep;
  rep.radius = radius;
  rep.depth = n;
  const auto b = chain.ball(radius);
  // Per-level class vectors once, then pairwise comparison.
  std::vector<std::vector<ClassId>> cls(n);
  for (int lvl = 1; lvl <= n; ++lvl) {
    cls[lvl - 1].reserve(b.size());
    for (const auto& g : b) cls[lvl - 1].push_back(chain.quotient_class(g, lvl));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      ++rep.pairs_checked;
      bool separated = false;
      for (int lvl = 1; lvl <= n && !separated; ++lvl)
        separated = cls[lvl - 1][i] != cls[lvl - 1][j];
      if (!separated) rep.unseparated.emplace_back(b[i], b[j]);
    }
  }
  return rep;
}

}  // namespace tgs
