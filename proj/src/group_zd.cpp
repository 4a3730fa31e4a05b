#include "tgs/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace tgs {
namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Free-abelian chain: Gamma_n = M_1 Z x ... x M_d Z with per-axis cumulative
// products M_a = prod_{j<=n} axes[a][j].  Classes are packed mixed-radix with
// axis 0 least significant, so for one axis the class id IS the residue.
class ZdChain final : public GroupChain {
 public:
  explicit ZdChain(const BackendSpec& spec) : kind_(spec.kind) {
    if (kind_ == Backend::Z) {
      axes_.push_back(spec.multipliers);
    } else {
      axes_ = spec.axes;
    }
    dims_ = axes_.size();
    depth_ = static_cast<int>(axes_[0].size());
    cum_.assign(dims_, std::vector<std::int64_t>(depth_ + 1, 1));
    for (std::size_t a = 0; a < dims_; ++a)
      for (int j = 1; j <= depth_; ++j) cum_[a][j] = cum_[a][j - 1] * axes_[a][j - 1];
    counts_.assign(depth_ + 1, 1);
    for (int j = 1; j <= depth_; ++j) {
      std::uint64_t c = 1;
      for (std::size_t a = 0; a < dims_; ++a) c *= static_cast<std::uint64_t>(cum_[a][j]);
      counts_[j] = c;
    }
    for (std::size_t a = 0; a < dims_; ++a) {
      GroupElement e{std::vector<std::int64_t>(dims_, 0)};
      e.data[a] = 1;
      gens_.push_back(e);
      e.data[a] = -1;
      gens_.push_back(e);
    }
  }

  Backend kind() const override { return kind_; }
  int depth() const override { return depth_; }

  GroupElement identity() const override {
    return GroupElement{std::vector<std::int64_t>(dims_, 0)};
  }

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    GroupElement out = g;
    for (std::size_t a = 0; a < dims_; ++a) out.data[a] += h.data[a];
    return out;
  }

  GroupElement invert(const GroupElement& g) const override {
    GroupElement out = g;
    for (auto& v : out.data) v = -v;
    return out;
  }

  std::string format(const GroupElement& g) const override {
    if (kind_ == Backend::Z) return std::to_string(g.data[0]);
    std::string s = "(";
    for (std::size_t a = 0; a < dims_; ++a) {
      if (a) s += ',';
      s += std::to_string(g.data[a]);
    }
    s += ')';
    return s;
  }

  GroupElement parse(const std::string& text) const override {
    GroupElement g = identity();
    if (kind_ == Backend::Z) {
      std::size_t pos = 0;
      g.data[0] = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("bad integer element: " + text);
      return g;
    }
    std::string body = text;
    if (!body.empty() && body.front() == '(' && body.back() == ')')
      body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    std::size_t a = 0;
    while (std::getline(ss, tok, ',')) {
      if (a >= dims_) throw std::invalid_argument("too many coordinates: " + text);
      g.data[a++] = std::stoll(tok);
    }
    if (a != dims_) throw std::invalid_argument("expected " + std::to_string(dims_) +
                                                " coordinates: " + text);
    return g;
  }

  const std::vector<GroupElement>& generators() const override { return gens_; }

  std::vector<GroupElement> ball(int radius) const override {
    // Sup-norm shells, each shell in lexicographic order of coordinates
    // mapped through 0,1,-1,2,-2,... so the one-axis ball starts 0,1,-1,2,-2.
    std::vector<GroupElement> out;
    std::vector<std::int64_t> cur(dims_, 0);
    for (int s = 0; s <= radius; ++s) shell(s, 0, false, cur, out);
    return out;
  }

  ClassId quotient_class(const GroupElement& g, int n) const override {
    check_level(n);
    ClassId id = 0;
    for (std::size_t a = dims_; a-- > 0;) {
      id = id * static_cast<std::uint64_t>(cum_[a][n]) +
           static_cast<std::uint64_t>(floor_mod(g.data[a], cum_[a][n]));
    }
    return id;
  }

  std::uint64_t class_count(int n) const override {
    check_level(n);
    return counts_[n];
  }

  ClassId identity_class(int) const override { return 0; }

  // The three packed-class ops below run digit-wise on the mixed-radix ids
  // instead of round-tripping through unpack/pack vectors: they sit on the
  // innermost loop of every orbit scan, so they must not allocate.
  ClassId class_mul(int n, ClassId c1, ClassId c2) const override {
    check_level(n);
    ClassId out = 0;
    std::uint64_t mult = 1;
    for (std::size_t a = 0; a < dims_; ++a) {
      const auto m = static_cast<std::uint64_t>(cum_[a][n]);
      out += (c1 % m + c2 % m) % m * mult;
      mult *= m;
      c1 /= m;
      c2 /= m;
    }
    return out;
  }

  ClassId class_inv(int n, ClassId c) const override {
    check_level(n);
    ClassId out = 0;
    std::uint64_t mult = 1;
    for (std::size_t a = 0; a < dims_; ++a) {
      const auto m = static_cast<std::uint64_t>(cum_[a][n]);
      const std::uint64_t d = c % m;
      out += (d == 0 ? 0 : m - d) * mult;
      mult *= m;
      c /= m;
    }
    return out;
  }

  ClassId project(int n, ClassId c) const override {
    // Q_{n+1} -> Q_n
    check_level(n);
    check_level(n + 1);
    ClassId out = 0;
    std::uint64_t mult = 1;
    for (std::size_t a = 0; a < dims_; ++a) {
      const auto mhi = static_cast<std::uint64_t>(cum_[a][n + 1]);
      const auto mlo = static_cast<std::uint64_t>(cum_[a][n]);
      out += c % mhi % mlo * mult;
      mult *= mlo;
      c /= mhi;
    }
    return out;
  }

  std::uint64_t class_index(int n, ClassId c) const override {
    check_level(n);
    return c;  // classes are densely packed
  }

  ClassId class_at(int n, std::uint64_t index) const override {
    check_level(n);
    return index;
  }

 private:
  void shell(int s, std::size_t axis, bool hit, std::vector<std::int64_t>& cur,
             std::vector<GroupElement>& out) const {
    if (axis == dims_) {
      if (hit || s == 0) out.push_back(GroupElement{cur});
      return;
    }
    for (std::int64_t mag = 0; mag <= s; ++mag) {
      for (int sign = 0; sign < (mag == 0 ? 1 : 2); ++sign) {
        cur[axis] = sign ? -mag : mag;
        shell(s, axis + 1, hit || mag == s, cur, out);
      }
    }
    cur[axis] = 0;
  }

  Backend kind_;
  std::vector<std::vector<std::int64_t>> axes_;
  std::size_t dims_ = 0;
  int depth_ = 0;
  std::vector<std::vector<std::int64_t>> cum_;   // cum_[axis][level]
  std::vector<std::uint64_t> counts_;            // |Q_n|
  std::vector<GroupElement> gens_;
};

}  // namespace
}  // namespace tgs

namespace tgs::detail {
std::shared_ptr<const GroupChain> make_zd_chain(const BackendSpec& spec) {
  return std::make_shared<ZdChain>(spec);
}
}  // namespace tgs::detail
