#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "rackx/rack.hpp"

namespace rackx {

namespace detail {

/// Isomorphism-invariant fingerprint of one element.
struct ElementSignature {
  bool is_basepoint = false;
  Index orbit_size = 0;
  bool idempotent = false;
  Index row_image = 0;
  std::vector<Index> column_cycles;

  auto operator<=>(const ElementSignature&) const = default;
};

inline std::vector<ElementSignature> signatures(const FiniteRack& r) {
  const Index n = r.size();
  std::vector<ElementSignature> sig(n);
  for (const auto& orbit : orbits(r))
    for (Index a : orbit) sig[a].orbit_size = orbit.size();
  for (Index a = 0; a < n; ++a) {
    auto& s = sig[a];
    s.is_basepoint = a == r.basepoint();
    s.idempotent = r.op(a, a) == a;
    std::vector<bool> hit(n, false);
    for (Index x = 0; x < n; ++x) {
      if (!hit[r.op(a, x)]) ++s.row_image;
      hit[r.op(a, x)] = true;
    }
    std::vector<bool> seen(n, false);
    for (Index x = 0; x < n; ++x) {
      if (seen[x]) continue;
      Index len = 0;
      for (Index y = x; !seen[y]; y = r.op(y, a)) {
        seen[y] = true;
        ++len;
      }
      s.column_cycles.push_back(len);
    }
    std::sort(s.column_cycles.begin(), s.column_cycles.end());
  }
  return sig;
}

class IsoSearch {
 public:
  using Visitor = std::function<bool(const std::vector<Index>&)>;

  IsoSearch(const FiniteRack& a, const FiniteRack& b)
      : a_(a), b_(b), sig_a_(signatures(a)), sig_b_(signatures(b)) {}

  bool invariants_match() const {
    if (a_.size() != b_.size()) return false;
    auto x = sig_a_, y = sig_b_;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

  /// Visits every isomorphism in lexicographic-first order until the visitor
  /// returns false. Returns false if stopped early.
  bool run(const Visitor& visit) {
    if (!invariants_match()) return true;
    State s{std::vector<Index>(a_.size(), kNone), std::vector<bool>(b_.size(), false), {}};
    if (!extend(s, a_.basepoint(), b_.basepoint())) return true;
    return search(s, visit);
  }

 private:
  static constexpr Index kNone = static_cast<Index>(-1);

  struct State {
    std::vector<Index> map;
    std::vector<bool> used;
    std::vector<Index> assigned;
  };

  bool extend(State& s, Index x0, Index y0) const {
    std::vector<std::pair<Index, Index>> work{{x0, y0}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      if (s.map[x] == y) continue;
      if (s.map[x] != kNone || s.used[y] || sig_a_[x] != sig_b_[y]) return false;
      s.map[x] = y;
      s.used[y] = true;
      s.assigned.push_back(x);
      for (Index z : s.assigned) {
        work.emplace_back(a_.op(x, z), b_.op(y, s.map[z]));
        work.emplace_back(a_.op(z, x), b_.op(s.map[z], y));
      }
    }
    return true;
  }

  bool search(const State& s, const Visitor& visit) const {
    auto next = std::find(s.map.begin(), s.map.end(), kNone);
    if (next == s.map.end()) return visit(s.map);
    const Index x = static_cast<Index>(next - s.map.begin());
    for (Index y = 0; y < b_.size(); ++y) {
      if (s.used[y] || sig_a_[x] != sig_b_[y]) continue;
      State child = s;
      if (extend(child, x, y) && !search(child, visit)) return false;
    }
    return true;
  }

  const FiniteRack& a_;
  const FiniteRack& b_;
  std::vector<ElementSignature> sig_a_;
  std::vector<ElementSignature> sig_b_;
};

}  // namespace detail

/// Visits every basepoint-preserving rack isomorphism a -> b (as index maps).
/// The visitor returns false to stop.
inline void for_each_isomorphism(const FiniteRack& a, const FiniteRack& b,
                                 const std::function<bool(const std::vector<Index>&)>& visit) {
  detail::IsoSearch(a, b).run(visit);
}

/// First isomorphism found by the pruned backtracking search, preferring lower
/// target indices; std::nullopt after an exhaustive failure.
inline std::optional<RackHom> find_isomorphism(const FiniteRack& a, const FiniteRack& b) {
  std::optional<std::vector<Index>> found;
  for_each_isomorphism(a, b, [&](const std::vector<Index>& m) {
    found = m;
    return false;
  });
  if (!found) return std::nullopt;
  return RackHom::make(a, b, *found);
}

inline bool is_isomorphic(const FiniteRack& a, const FiniteRack& b) {
  return find_isomorphism(a, b).has_value();
}

/// Default ceiling on the order accepted by enumerate_pointed_racks.
inline constexpr Index kDefaultEnumerationBound = 4;

/// Bound from RACKX_BOUND when set, otherwise the default.
inline Index configured_bound() {
  if (const char* env = std::getenv("RACKX_BOUND")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<Index>(v);
  }
  return kDefaultEnumerationBound;
}

namespace detail {

/// Lexicographically least row-major table over relabelings fixing 0.
inline std::vector<Index> canonical_table(const std::vector<Index>& t, Index n) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> best = t, cur(n * n);
  do {
    // perm maps old label -> new label
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) cur[perm[a] * n + perm[b]] = perm[t[a * n + b]];
    if (cur < best) best = cur;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

}  // namespace detail

/// All pointed racks of order n up to isomorphism, each in canonical form
/// (basepoint 0, lexicographically least table), sorted by table.
inline std::vector<FiniteRack> enumerate_pointed_racks(Index n, Index bound = configured_bound()) {
  if (n == 0) throw AxiomViolation(detail::violation("EmptyCarrier", {}));
  if (n > bound) throw AxiomViolation(detail::violation("BoundExceeded", {n, bound}));

  // Column b is a permutation of the carrier fixing 0; column 0 is the identity.
  std::vector<std::vector<Index>> column_choices;
  {
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), Index{0});
    do column_choices.push_back(p);
    while (std::next_permutation(p.begin() + 1, p.end()));
  }

  std::vector<Index> t(n * n);
  for (Index a = 0; a < n; ++a) t[a * n] = a;
  for (Index b = 0; b < n; ++b) t[b] = 0;

  auto consistent_through = [&](Index c) {
    for (Index b = 0; b <= c; ++b)
      for (Index d = 0; d <= c; ++d) {
        if (t[b * n + d] > c) continue;
        for (Index a = 0; a < n; ++a)
          if (t[t[a * n + b] * n + d] != t[t[a * n + d] * n + t[b * n + d]]) return false;
      }
    return true;
  };

  std::vector<std::vector<Index>> found;
  std::function<void(Index)> fill = [&](Index c) {
    if (c == n) {
      if (detail::canonical_table(t, n) == t) found.push_back(t);
      return;
    }
    for (const auto& col : column_choices) {
      for (Index a = 0; a < n; ++a) t[a * n + c] = col[a];
      if (consistent_through(c)) fill(c + 1);
    }
  };
  if (consistent_through(0)) fill(1);

  std::sort(found.begin(), found.end());
  std::vector<FiniteRack> out;
  for (const auto& flat : found) {
    Table rows(n, std::vector<Index>(n));
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) rows[a][b] = flat[a * n + b];
    out.push_back(FiniteRack::make(rows, 0));
  }
  return out;
}

}  // namespace rackx
