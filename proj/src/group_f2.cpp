#include "tgs/group.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace tgs {
namespace {

// Letters: 1 = a, -1 = a^-1, 2 = b, -2 = b^-1.  Elements are reduced words.
constexpr std::array<std::int64_t, 4> kLetters = {1, -1, 2, -2};

struct Mat {
  std::int64_t a, b, c, d;
};

Mat mat_mul(const Mat& x, const Mat& y, std::int64_t m) {
  return Mat{(x.a * y.a + x.b * y.c) % m, (x.a * y.b + x.b * y.d) % m,
             (x.c * y.a + x.d * y.c) % m, (x.c * y.b + x.d * y.d) % m};
}

// Rank-two free group mapped into SL(2, Z/3^k) by a -> (1 2; 0 1),
// b -> (1 0; 2 1).  The images generate the full congruence quotient, so the
// chain Gamma_n = ker(q_n) is a strictly decreasing normal chain.
class F2Chain final : public GroupChain {
 public:
  explicit F2Chain(const BackendSpec& spec) : levels_(spec.levels) {
    depth_ = static_cast<int>(levels_.size());
    mods_.resize(depth_ + 1);
    mods_[0] = 1;
    for (int n = 1; n <= depth_; ++n) {
      std::int64_t m = 1;
      for (int i = 0; i < levels_[n - 1]; ++i) m *= 3;
      mods_[n] = m;
    }
    counts_.assign(depth_ + 1, 1);
    for (int n = 1; n <= depth_; ++n) {
      std::uint64_t p = 1;
      for (int i = 0; i < 3 * levels_[n - 1]; ++i) p *= 3;
      counts_[n] = p - p / 9;  // |SL(2, Z/3^k)| = 3^{3k} - 3^{3k-2}
    }
    letter_class_.resize(depth_ + 1);
    for (int n = 1; n <= depth_; ++n) {
      const std::int64_t m = mods_[n];
      letter_class_[n] = {pack(Mat{1, 2 % m, 0, 1}, m), pack(Mat{1, (m - 2 % m) % m, 0, 1}, m),
                          pack(Mat{1, 0, 2 % m, 1}, m), pack(Mat{1, 0, (m - 2 % m) % m, 1}, m)};
    }
    order_.resize(depth_ + 1);
    rank_.resize(depth_ + 1);
    for (int n = 1; n <= depth_; ++n)
      if (counts_[n] <= (1u << 24)) enumerate(n);
  }

  Backend kind() const override { return Backend::F2; }
  int depth() const override { return depth_; }

  GroupElement identity() const override { return GroupElement{{}}; }

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    GroupElement out = g;
    for (std::int64_t l : h.data) {
      if (!out.data.empty() && out.data.back() == -l)
        out.data.pop_back();
      else
        out.data.push_back(l);
    }
    return out;
  }

  GroupElement invert(const GroupElement& g) const override {
    GroupElement out;
    out.data.reserve(g.data.size());
    for (auto it = g.data.rbegin(); it != g.data.rend(); ++it) out.data.push_back(-*it);
    return out;
  }

  std::string format(const GroupElement& g) const override {
    if (g.data.empty()) return "e";
    std::string s;
    for (std::int64_t l : g.data) {
      switch (l) {
        case 1: s += 'a'; break;
        case -1: s += 'A'; break;
        case 2: s += 'b'; break;
        case -2: s += 'B'; break;
        default: throw std::logic_error("corrupt word letter");
      }
    }
    return s;
  }

  GroupElement parse(const std::string& text) const override {
    if (text == "e" || text.empty()) return identity();
    GroupElement g = identity();
    for (char ch : text) {
      std::int64_t l;
      switch (ch) {
        case 'a': l = 1; break;
        case 'A': l = -1; break;
        case 'b': l = 2; break;
        case 'B': l = -2; break;
        default: throw std::invalid_argument(std::string("bad word letter '") + ch + "'");
      }
      if (!g.data.empty() && g.data.back() == -l)
        g.data.pop_back();
      else
        g.data.push_back(l);
    }
    return g;
  }

  const std::vector<GroupElement>& generators() const override { return gens_; }

  std::vector<GroupElement> ball(int radius) const override {
    std::vector<GroupElement> out{identity()};
    std::size_t layer_begin = 0;
    for (int r = 1; r <= radius; ++r) {
      const std::size_t layer_end = out.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i)
        for (std::int64_t l : kLetters) {
          if (!out[i].data.empty() && out[i].data.back() == -l) continue;
          GroupElement w = out[i];
          w.data.push_back(l);
          out.push_back(std::move(w));
        }
      layer_begin = layer_end;
    }
    return out;
  }

  ClassId quotient_class(const GroupElement& g, int n) const override {
    check_level(n);
    ClassId c = identity_class(n);
    for (std::int64_t l : g.data) c = class_mul(n, c, letter_class(l, n));
    return c;
  }

  std::uint64_t class_count(int n) const override {
    check_level(n);
    return counts_[n];
  }

  ClassId identity_class(int n) const override {
    check_level(n);
    return pack(Mat{1, 0, 0, 1}, mods_[n]);
  }

  ClassId class_mul(int n, ClassId c1, ClassId c2) const override {
    check_level(n);
    const std::int64_t m = mods_[n];
    return pack(mat_mul(unpack(c1, m), unpack(c2, m), m), m);
  }

  ClassId class_inv(int n, ClassId c) const override {
    check_level(n);
    const std::int64_t m = mods_[n];
    Mat x = unpack(c, m);
    return pack(Mat{x.d, (m - x.b) % m, (m - x.c) % m, x.a}, m);
  }

  ClassId project(int n, ClassId c) const override {
    check_level(n);
    check_level(n + 1);
    Mat x = unpack(c, mods_[n + 1]);
    const std::int64_t m = mods_[n];
    return pack(Mat{x.a % m, x.b % m, x.c % m, x.d % m}, m);
  }

  std::uint64_t class_index(int n, ClassId c) const override {
    check_level(n);
    require_enumerated(n);
    const auto& rank = rank_[n];
    auto it = std::lower_bound(rank.begin(), rank.end(), std::pair<ClassId, std::uint64_t>{c, 0},
                               [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
    if (it == rank.end() || it->first != c)
      throw std::invalid_argument("class id is not in the quotient");
    return it->second;
  }

  ClassId class_at(int n, std::uint64_t index) const override {
    check_level(n);
    require_enumerated(n);
    if (index >= order_[n].size()) throw std::out_of_range("class index outside quotient");
    return order_[n][index];
  }

 private:
  static ClassId pack(const Mat& x, std::int64_t m) {
    auto um = static_cast<std::uint64_t>(m);
    return ((static_cast<std::uint64_t>(x.a) * um + static_cast<std::uint64_t>(x.b)) * um +
            static_cast<std::uint64_t>(x.c)) *
               um +
           static_cast<std::uint64_t>(x.d);
  }

  static Mat unpack(ClassId c, std::int64_t m) {
    auto um = static_cast<std::uint64_t>(m);
    Mat x;
    x.d = static_cast<std::int64_t>(c % um);
    c /= um;
    x.c = static_cast<std::int64_t>(c % um);
    c /= um;
    x.b = static_cast<std::int64_t>(c % um);
    c /= um;
    x.a = static_cast<std::int64_t>(c % um);
    return x;
  }

  ClassId letter_class(std::int64_t l, int n) const {
    switch (l) {
      case 1: return letter_class_[n][0];
      case -1: return letter_class_[n][1];
      case 2: return letter_class_[n][2];
      case -2: return letter_class_[n][3];
      default: throw std::logic_error("corrupt word letter");
    }
  }

  void enumerate(int n) {
    // Plain BFS over the quotient Cayley graph; generator order is fixed so
    // the traversal (and hence every dense index) is deterministic.
    std::vector<ClassId> order{identity_class(n)};
    order.reserve(counts_[n]);
    std::unordered_set<ClassId> seen{order[0]};
    seen.reserve(counts_[n] * 2);
    std::size_t head = 0;
    while (head < order.size()) {
      ClassId c = order[head++];
      for (int li = 0; li < 4; ++li) {
        ClassId nc = class_mul(n, c, letter_class_[n][li]);
        if (seen.insert(nc).second) order.push_back(nc);
      }
    }
    if (order.size() != counts_[n])
      throw std::logic_error("quotient enumeration size mismatch at level " + std::to_string(n));
    std::vector<std::pair<ClassId, std::uint64_t>> rank;
    rank.reserve(order.size());
    for (std::uint64_t i = 0; i < order.size(); ++i) rank.emplace_back(order[i], i);
    std::sort(rank.begin(), rank.end());
    order_[n] = std::move(order);
    rank_[n] = std::move(rank);
  }

  void require_enumerated(int n) const {
    if (order_[n].empty())
      throw std::runtime_error("quotient at level " + std::to_string(n) +
                               " exceeds the enumeration cap");
  }

  std::vector<int> levels_;
  int depth_ = 0;
  std::vector<GroupElement> gens_{GroupElement{{1}}, GroupElement{{-1}}, GroupElement{{2}},
                                  GroupElement{{-2}}};
  std::vector<std::int64_t> mods_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::array<ClassId, 4>> letter_class_;
  std::vector<std::vector<ClassId>> order_;                       // BFS order per level
  std::vector<std::vector<std::pair<ClassId, std::uint64_t>>> rank_;  // sorted (id, index)
};

}  // namespace
}  // namespace tgs

namespace tgs::detail {
std::shared_ptr<const GroupChain> make_f2_chain(const BackendSpec& spec) {
  return std::make_shared<F2Chain>(spec);
}
}  // namespace tgs::detail
