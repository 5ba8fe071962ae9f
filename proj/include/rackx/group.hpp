#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rackx/violation.hpp"

namespace rackx {

/// Finite group given by its full multiplication table.
class FiniteGroup {
 public:
  /// First violated group axiom, checked in the order shape, range, identity,
  /// associativity, inverses.
  static std::optional<Violation> check(const Table& mul, Index identity) {
    const Index n = mul.size();
    if (n == 0) return detail::violation("EmptyCarrier", {});
    for (Index a = 0; a < n; ++a)
      if (mul[a].size() != n) return detail::violation("NotSquare", {a});
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (mul[a][b] >= n) return detail::violation("IndexOutOfRange", {a, b});
    if (identity >= n) return detail::violation("IdentityOutOfRange", {identity});
    for (Index a = 0; a < n; ++a)
      if (mul[identity][a] != a || mul[a][identity] != a)
        return detail::violation("IdentityFail", {a});
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            return detail::violation("AssociativityFail", {a, b, c},
                                     "(ab)c != a(bc)");
    for (Index a = 0; a < n; ++a) {
      bool found = false;
      for (Index b = 0; b < n && !found; ++b)
        found = mul[a][b] == identity && mul[b][a] == identity;
      if (!found) return detail::violation("InverseMissing", {a});
    }
    return std::nullopt;
  }

  static FiniteGroup make(const Table& mul, Index identity,
                          std::vector<std::string> labels = {}) {
    detail::raise_if(check(mul, identity));
    if (!labels.empty() && labels.size() != mul.size())
      throw AxiomViolation(detail::violation("LabelCountMismatch", {labels.size()}));
    FiniteGroup g;
    g.n_ = mul.size();
    g.identity_ = identity;
    g.mul_.reserve(g.n_ * g.n_);
    for (const auto& row : mul) g.mul_.insert(g.mul_.end(), row.begin(), row.end());
    g.inv_.resize(g.n_);
    for (Index a = 0; a < g.n_; ++a)
      for (Index b = 0; b < g.n_; ++b)
        if (mul[a][b] == identity) g.inv_[a] = b;
    g.labels_ = std::move(labels);
    return g;
  }

  Index size() const noexcept { return n_; }
  Index identity() const noexcept { return identity_; }
  Index mul(Index a, Index b) const { return mul_[a * n_ + b]; }
  Index inv(Index a) const { return inv_[a]; }

  /// h^-1 g h
  Index conjugate(Index g, Index h) const { return mul(mul(inv(h), g), h); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(Index a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

  std::optional<Index> find(const std::string& label) const {
    for (Index a = 0; a < n_; ++a)
      if (this->label(a) == label) return a;
    return std::nullopt;
  }

  Table table() const {
    Table t(n_, std::vector<Index>(n_));
    for (Index a = 0; a < n_; ++a)
      for (Index b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }

  /// Structural equality; labels are display-only and ignored.
  bool operator==(const FiniteGroup& o) const {
    return n_ == o.n_ && identity_ == o.identity_ && mul_ == o.mul_;
  }

 private:
  FiniteGroup() = default;

  Index n_ = 0;
  Index identity_ = 0;
  std::vector<Index> mul_;
  std::vector<Index> inv_;
  std::vector<std::string> labels_;
};

class GroupHom {
 public:
  static std::optional<Violation> check(const FiniteGroup& dom, const FiniteGroup& cod,
                                        const std::vector<Index>& map) {
    if (map.size() != dom.size())
      return detail::violation("MapSizeMismatch", {map.size(), dom.size()});
    for (Index a = 0; a < map.size(); ++a)
      if (map[a] >= cod.size()) return detail::violation("IndexOutOfRange", {a});
    if (map[dom.identity()] != cod.identity())
      return detail::violation("IdentityNotPreserved", {dom.identity()});
    for (Index a = 0; a < dom.size(); ++a)
      for (Index b = 0; b < dom.size(); ++b)
        if (map[dom.mul(a, b)] != cod.mul(map[a], map[b]))
          return detail::violation("HomLawFail", {a, b}, "f(ab) != f(a)f(b)");
    return std::nullopt;
  }

  static GroupHom make(FiniteGroup dom, FiniteGroup cod, std::vector<Index> map) {
    detail::raise_if(check(dom, cod, map));
    return GroupHom(std::move(dom), std::move(cod), std::move(map));
  }

  static GroupHom identity(const FiniteGroup& g) {
    std::vector<Index> map(g.size());
    std::iota(map.begin(), map.end(), Index{0});
    return GroupHom(g, g, std::move(map));
  }

  const FiniteGroup& dom() const noexcept { return dom_; }
  const FiniteGroup& cod() const noexcept { return cod_; }
  const std::vector<Index>& map() const noexcept { return map_; }
  Index operator()(Index a) const { return map_[a]; }

  bool operator==(const GroupHom&) const = default;

 private:
  GroupHom(FiniteGroup dom, FiniteGroup cod, std::vector<Index> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}

  FiniteGroup dom_;
  FiniteGroup cod_;
  std::vector<Index> map_;
};

/// g ∘ f
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.cod() == g.dom()))
    throw AxiomViolation(detail::violation("EndpointMismatch", {}));
  std::vector<Index> map(f.dom().size());
  for (Index a = 0; a < map.size(); ++a) map[a] = g(f(a));
  return GroupHom::make(f.dom(), g.cod(), std::move(map));
}

inline FiniteGroup cyclic_group(Index n) {
  Table t(n, std::vector<Index>(n));
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (Index b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup::make(t, 0, std::move(labels));
}

namespace detail {

/// Cycle notation with 1-based points, "e" for the identity.
inline std::string cycle_label(const std::vector<Index>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (Index i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += "(";
    for (Index j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace detail

/// Permutations of {0..n-1} ordered by number of moved points, then by cycle
/// label, so S3 lists e, (12), (13), (23), (123), (132).
/// Products compose right to left: (g*h)(i) = g(h(i)).
inline std::vector<std::vector<Index>> permutations_of(Index n) {
  std::vector<std::vector<Index>> perms;
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto key = [](const std::vector<Index>& q) {
    Index moved = 0;
    for (Index i = 0; i < q.size(); ++i) moved += q[i] != i;
    return std::pair{moved, detail::cycle_label(q)};
  };
  std::stable_sort(perms.begin(), perms.end(),
                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return perms;
}

inline FiniteGroup symmetric_group(Index n) {
  const auto perms = permutations_of(n);
  const Index order = perms.size();
  auto index_of = [&](const std::vector<Index>& p) {
    return static_cast<Index>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  Table t(order, std::vector<Index>(order));
  std::vector<std::string> labels;
  for (Index a = 0; a < order; ++a) {
    labels.push_back(detail::cycle_label(perms[a]));
    for (Index b = 0; b < order; ++b) {
      std::vector<Index> c(n);
      for (Index i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(c);
    }
  }
  return FiniteGroup::make(t, 0, std::move(labels));
}

/// Sign homomorphism S_n -> Z2 (0 even, 1 odd).
inline GroupHom sign_hom(Index n) {
  const auto perms = permutations_of(n);
  std::vector<Index> map;
  for (const auto& p : perms) {
    Index inversions = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    map.push_back(inversions % 2);
  }
  return GroupHom::make(symmetric_group(n), cyclic_group(2), std::move(map));
}

/// The homomorphism Z_m -> G with 1 |-> g; fails unless g^m = e.
inline GroupHom cyclic_hom(Index m, const FiniteGroup& g, Index generator) {
  std::vector<Index> map(m);
  Index power = g.identity();
  for (Index k = 0; k < m; ++k) {
    map[k] = power;
    power = g.mul(power, generator);
  }
  return GroupHom::make(cyclic_group(m), g, std::move(map));
}

/// Inclusion of a subset closed under multiplication, as a hom into g.
/// The subgroup's elements are taken in ascending order of their index in g.
inline GroupHom subgroup_inclusion(const FiniteGroup& g, std::vector<Index> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<Index> local(g.size(), g.size());
  for (Index i = 0; i < subset.size(); ++i) {
    if (subset[i] >= g.size()) throw AxiomViolation(detail::violation("IndexOutOfRange", {subset[i]}));
    local[subset[i]] = i;
  }
  Table t(subset.size(), std::vector<Index>(subset.size()));
  for (Index i = 0; i < subset.size(); ++i)
    for (Index j = 0; j < subset.size(); ++j) {
      const Index p = g.mul(subset[i], subset[j]);
      if (local[p] == g.size())
        throw AxiomViolation(detail::violation("NotClosed", {subset[i], subset[j]},
                                               "product leaves the subset"));
      t[i][j] = local[p];
    }
  if (local[g.identity()] == g.size())
    throw AxiomViolation(detail::violation("IdentityMissing", {g.identity()}));
  std::vector<std::string> labels;
  for (Index a : subset) labels.push_back(g.label(a));
  auto sub = FiniteGroup::make(t, local[g.identity()], std::move(labels));
  return GroupHom::make(std::move(sub), g, std::move(subset));
}

}  // namespace rackx
