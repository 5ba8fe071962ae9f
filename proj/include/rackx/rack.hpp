#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rackx/group.hpp"
#include "rackx/violation.hpp"

namespace rackx {

namespace detail {

inline std::optional<Violation> check_square(const Table& t) {
  const Index n = t.size();
  if (n == 0) return violation("EmptyCarrier", {});
  for (Index a = 0; a < n; ++a)
    if (t[a].size() != n) return violation("NotSquare", {a});
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (t[a][b] >= n) return violation("IndexOutOfRange", {a, b});
  return std::nullopt;
}

/// Bijective right translations and self-distributivity.
inline std::optional<Violation> check_rack_axioms(const Table& t) {
  const Index n = t.size();
  for (Index b = 0; b < n; ++b) {
    std::vector<bool> hit(n, false);
    for (Index a = 0; a < n; ++a) {
      if (hit[t[a][b]]) return violation("NonBijectiveColumn", {b}, "a -> a<b is not a bijection");
      hit[t[a][b]] = true;
    }
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[t[a][c]][t[b][c]])
          return violation("SelfDistributivityFail", {a, b, c}, "(a<b)<c != (a<c)<(b<c)");
  return std::nullopt;
}

class OperationTable {
 public:
  Index size() const noexcept { return n_; }
  Index op(Index a, Index b) const { return table_[a * n_ + b]; }

  Table table() const {
    Table t(n_, std::vector<Index>(n_));
    for (Index a = 0; a < n_; ++a)
      for (Index b = 0; b < n_; ++b) t[a][b] = op(a, b);
    return t;
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(Index a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

 protected:
  void assign(const Table& t, std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != t.size())
      throw AxiomViolation(violation("LabelCountMismatch", {labels.size()}));
    n_ = t.size();
    table_.clear();
    table_.reserve(n_ * n_);
    for (const auto& row : t) table_.insert(table_.end(), row.begin(), row.end());
    labels_ = std::move(labels);
  }

  bool same_table(const OperationTable& o) const { return n_ == o.n_ && table_ == o.table_; }

 private:
  Index n_ = 0;
  std::vector<Index> table_;
  std::vector<std::string> labels_;
};

}  // namespace detail

/// Rack without a distinguished basepoint.
class UnpointedRack : public detail::OperationTable {
 public:
  static std::optional<Violation> check(const Table& t) {
    if (auto v = detail::check_square(t)) return v;
    return detail::check_rack_axioms(t);
  }

  static UnpointedRack make(const Table& t, std::vector<std::string> labels = {}) {
    detail::raise_if(check(t));
    UnpointedRack r;
    r.assign(t, std::move(labels));
    return r;
  }

  bool operator==(const UnpointedRack& o) const { return same_table(o); }

 private:
  UnpointedRack() = default;
};

/// Pointed rack: table[a][b] = a◁b with basepoint 1 satisfying 1◁a = 1, a◁1 = a.
class FiniteRack : public detail::OperationTable {
 public:
  /// Checks range, bijective columns, self-distributivity and pointedness,
  /// in that order, reporting the first failure.
  static std::optional<Violation> check(const Table& t, Index basepoint) {
    if (auto v = detail::check_square(t)) return v;
    if (basepoint >= t.size()) return detail::violation("BasepointOutOfRange", {basepoint});
    if (auto v = detail::check_rack_axioms(t)) return v;
    for (Index a = 0; a < t.size(); ++a)
      if (t[basepoint][a] != basepoint || t[a][basepoint] != a)
        return detail::violation("NotPointed", {a},
                                 "1<a = " + std::to_string(t[basepoint][a]) +
                                     ", a<1 = " + std::to_string(t[a][basepoint]));
    return std::nullopt;
  }

  static FiniteRack make(const Table& t, Index basepoint, std::vector<std::string> labels = {}) {
    detail::raise_if(check(t, basepoint));
    return unchecked(t, basepoint, std::move(labels));
  }

  /// Skips axiom checks; only for building deliberately broken fixtures.
  static FiniteRack unchecked(const Table& t, Index basepoint, std::vector<std::string> labels = {}) {
    FiniteRack r;
    r.assign(t, std::move(labels));
    r.basepoint_ = basepoint;
    return r;
  }

  Index basepoint() const noexcept { return basepoint_; }

  UnpointedRack unpointed() const { return UnpointedRack::make(table(), labels()); }

  std::optional<Index> find(const std::string& label) const {
    for (Index a = 0; a < size(); ++a)
      if (this->label(a) == label) return a;
    return std::nullopt;
  }

  /// Structural equality; labels are ignored.
  bool operator==(const FiniteRack& o) const {
    return basepoint_ == o.basepoint_ && same_table(o);
  }

 private:
  FiniteRack() = default;

  Index basepoint_ = 0;
};

class RackHom {
 public:
  static std::optional<Violation> check(const FiniteRack& dom, const FiniteRack& cod,
                                        const std::vector<Index>& map) {
    if (map.size() != dom.size())
      return detail::violation("MapSizeMismatch", {map.size(), dom.size()});
    for (Index a = 0; a < map.size(); ++a)
      if (map[a] >= cod.size()) return detail::violation("IndexOutOfRange", {a});
    if (map[dom.basepoint()] != cod.basepoint())
      return detail::violation("BasepointNotPreserved", {dom.basepoint()});
    for (Index a = 0; a < dom.size(); ++a)
      for (Index b = 0; b < dom.size(); ++b)
        if (map[dom.op(a, b)] != cod.op(map[a], map[b]))
          return detail::violation("HomLawFail", {a, b}, "f(a<b) != f(a)<f(b)");
    return std::nullopt;
  }

  static RackHom make(FiniteRack dom, FiniteRack cod, std::vector<Index> map) {
    detail::raise_if(check(dom, cod, map));
    return RackHom(std::move(dom), std::move(cod), std::move(map));
  }

  static RackHom identity(const FiniteRack& r) {
    std::vector<Index> map(r.size());
    std::iota(map.begin(), map.end(), Index{0});
    return RackHom(r, r, std::move(map));
  }

  /// The map sending everything to the basepoint of cod.
  static RackHom to_basepoint(const FiniteRack& dom, const FiniteRack& cod) {
    return make(dom, cod, std::vector<Index>(dom.size(), cod.basepoint()));
  }

  const FiniteRack& dom() const noexcept { return dom_; }
  const FiniteRack& cod() const noexcept { return cod_; }
  const std::vector<Index>& map() const noexcept { return map_; }
  Index operator()(Index a) const { return map_[a]; }

  bool is_bijective() const {
    if (dom_.size() != cod_.size()) return false;
    std::vector<bool> hit(cod_.size(), false);
    for (Index b : map_) {
      if (hit[b]) return false;
      hit[b] = true;
    }
    return true;
  }

  bool operator==(const RackHom&) const = default;

 private:
  RackHom(FiniteRack dom, FiniteRack cod, std::vector<Index> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}

  FiniteRack dom_;
  FiniteRack cod_;
  std::vector<Index> map_;
};

/// g ∘ f
inline RackHom compose(const RackHom& g, const RackHom& f) {
  if (!(f.cod() == g.dom())) throw AxiomViolation(detail::violation("EndpointMismatch", {}));
  std::vector<Index> map(f.dom().size());
  for (Index a = 0; a < map.size(); ++a) map[a] = g(f(a));
  return RackHom::make(f.dom(), g.cod(), std::move(map));
}

inline RackHom inverse(const RackHom& f) {
  if (!f.is_bijective()) throw AxiomViolation(detail::violation("NotBijective", {}));
  std::vector<Index> map(f.cod().size());
  for (Index a = 0; a < f.dom().size(); ++a) map[f(a)] = a;
  return RackHom::make(f.cod(), f.dom(), std::move(map));
}

// -- constructions ---------------------------------------------------------

/// Conj(G): g◁h = h⁻¹gh, pointed at the identity.
inline FiniteRack conj_rack(const FiniteGroup& g) {
  Table t(g.size(), std::vector<Index>(g.size()));
  for (Index a = 0; a < g.size(); ++a)
    for (Index b = 0; b < g.size(); ++b) t[a][b] = g.conjugate(a, b);
  return FiniteRack::make(t, g.identity(), g.labels());
}

/// Conj on morphisms.
inline RackHom conj_hom(const GroupHom& f) {
  return RackHom::make(conj_rack(f.dom()), conj_rack(f.cod()), f.map());
}

/// Core(G): g◁h = hg⁻¹h. Not pointed at the identity in general (e◁h = h²).
inline UnpointedRack core_rack(const FiniteGroup& g) {
  Table t(g.size(), std::vector<Index>(g.size()));
  for (Index a = 0; a < g.size(); ++a)
    for (Index b = 0; b < g.size(); ++b) t[a][b] = g.mul(g.mul(b, g.inv(a)), b);
  return UnpointedRack::make(t, g.labels());
}

/// Pair (p, r) is stored at index p * |R| + r.
inline FiniteRack product_rack(const FiniteRack& p, const FiniteRack& r) {
  const Index n = p.size() * r.size();
  Table t(n, std::vector<Index>(n));
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = "(" + p.label(a / r.size()) + "," + r.label(a % r.size()) + ")";
    for (Index b = 0; b < n; ++b)
      t[a][b] = p.op(a / r.size(), b / r.size()) * r.size() + r.op(a % r.size(), b % r.size());
  }
  return FiniteRack::make(t, p.basepoint() * r.size() + r.basepoint(), std::move(labels));
}

inline std::pair<RackHom, RackHom> product_projections(const FiniteRack& p, const FiniteRack& r) {
  auto prod = product_rack(p, r);
  std::vector<Index> first(prod.size()), second(prod.size());
  for (Index a = 0; a < prod.size(); ++a) {
    first[a] = a / r.size();
    second[a] = a % r.size();
  }
  return {RackHom::make(prod, p, std::move(first)), RackHom::make(prod, r, std::move(second))};
}

/// Adds a fresh element at index |R| acting as basepoint.
inline FiniteRack adjoin_basepoint(const UnpointedRack& r) {
  const Index n = r.size();
  Table t(n + 1, std::vector<Index>(n + 1));
  for (Index a = 0; a <= n; ++a)
    for (Index b = 0; b <= n; ++b) t[a][b] = (a == n || b == n) ? a : r.op(a, b);
  std::vector<std::string> labels;
  if (!r.labels().empty()) {
    labels = r.labels();
    labels.push_back("*");
  }
  return FiniteRack::make(t, n, std::move(labels));
}

/// Connected components of a ~ a◁b, each sorted, ordered by least element.
template <typename R>
std::vector<std::vector<Index>> orbits(const R& rack) {
  const Index n = rack.size();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Index x = find(a), y = find(rack.op(a, b));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  std::vector<std::vector<Index>> out;
  std::vector<Index> slot(n, n);
  for (Index a = 0; a < n; ++a) {
    const Index root = find(a);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(a);
  }
  return out;
}

// -- subracks --------------------------------------------------------------

namespace detail {

inline std::vector<Index> normalize_subset(std::vector<Index> subset, Index n) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (Index a : subset)
    if (a >= n) throw AxiomViolation(violation("IndexOutOfRange", {a}));
  return subset;
}

}  // namespace detail

/// Inclusion of a subrack; the subrack lists its elements in ascending order.
inline RackHom subrack_inclusion(const FiniteRack& r, std::vector<Index> subset) {
  subset = detail::normalize_subset(std::move(subset), r.size());
  if (!std::binary_search(subset.begin(), subset.end(), r.basepoint()))
    throw AxiomViolation(detail::violation("BasepointMissing", {r.basepoint()}));
  std::vector<Index> local(r.size(), r.size());
  for (Index i = 0; i < subset.size(); ++i) local[subset[i]] = i;
  Table t(subset.size(), std::vector<Index>(subset.size()));
  for (Index i = 0; i < subset.size(); ++i)
    for (Index j = 0; j < subset.size(); ++j) {
      const Index c = r.op(subset[i], subset[j]);
      if (local[c] == r.size())
        throw AxiomViolation(detail::violation("NotClosed", {subset[i], subset[j]}));
      t[i][j] = local[c];
    }
  std::vector<std::string> labels;
  if (!r.labels().empty())
    for (Index a : subset) labels.push_back(r.label(a));
  auto sub = FiniteRack::make(t, local[r.basepoint()], std::move(labels));
  return RackHom::make(std::move(sub), r, std::move(subset));
}

struct NormalityReport {
  bool normal = false;
  /// (n, r) with n◁r outside the subset, when not normal.
  std::optional<std::pair<Index, Index>> witness;
};

/// Closure of N under n◁r for every n ∈ N and r ∈ R, with N a rack under the
/// restricted table. The closure is into N (the condition into R is vacuous).
inline NormalityReport is_normal_subrack(const std::vector<Index>& subset, const FiniteRack& r) {
  auto n = detail::normalize_subset(subset, r.size());
  if (n.empty() || !std::binary_search(n.begin(), n.end(), r.basepoint()))
    throw AxiomViolation(detail::violation("BasepointMissing", {r.basepoint()}));
  std::vector<bool> member(r.size(), false);
  for (Index a : n) member[a] = true;
  for (Index a : n)
    for (Index b = 0; b < r.size(); ++b)
      if (!member[r.op(a, b)]) return {false, std::pair{a, b}};
  subrack_inclusion(r, n);
  return {true, std::nullopt};
}

inline std::vector<Index> preimage(const RackHom& f, const std::vector<Index>& subset) {
  std::vector<bool> member(f.cod().size(), false);
  for (Index a : subset) member.at(a) = true;
  std::vector<Index> out;
  for (Index a = 0; a < f.dom().size(); ++a)
    if (member[f(a)]) out.push_back(a);
  return out;
}

struct Kernel {
  std::vector<Index> elements;
  NormalityReport certificate;
};

inline Kernel kernel(const RackHom& f) {
  auto elements = preimage(f, {f.cod().basepoint()});
  auto cert = is_normal_subrack(elements, f.dom());
  return {std::move(elements), cert};
}

}  // namespace rackx
