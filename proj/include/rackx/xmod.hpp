#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rackx/group.hpp"
#include "rackx/rack.hpp"
#include "rackx/violation.hpp"

namespace rackx {

/// Right action of the actor rack R on the actee rack S, table[s][r] = s·r.
///
/// Besides the two action laws, a pointed action satisfies 1·r = 1 and
/// s·1 = s, and every translation s ↦ s·r is a bijection of S. Without the
/// last condition the hemi-semi-direct product can have non-bijective
/// columns (e.g. the constant action of T2 on T2 collapsing onto 1).
class RackAction {
 public:
  static std::optional<Violation> check(const FiniteRack& actee, const FiniteRack& actor,
                                        const Table& t) {
    const Index ns = actee.size(), nr = actor.size();
    if (t.size() != ns) return detail::violation("ShapeMismatch", {t.size(), ns});
    for (Index s = 0; s < ns; ++s)
      if (t[s].size() != nr) return detail::violation("ShapeMismatch", {s});
    for (Index s = 0; s < ns; ++s)
      for (Index r = 0; r < nr; ++r)
        if (t[s][r] >= ns) return detail::violation("IndexOutOfRange", {s, r});
    for (Index s = 0; s < ns; ++s)
      for (Index r = 0; r < nr; ++r)
        for (Index r2 = 0; r2 < nr; ++r2)
          if (t[t[s][r]][r2] != t[t[s][r2]][actor.op(r, r2)])
            return detail::violation("ActionAxiom1Fail", {s, r, r2},
                                     "(s.r).r' != (s.r').(r<r')");
    for (Index s = 0; s < ns; ++s)
      for (Index s2 = 0; s2 < ns; ++s2)
        for (Index r = 0; r < nr; ++r)
          if (t[actee.op(s, s2)][r] != actee.op(t[s][r], t[s2][r]))
            return detail::violation("ActionAxiom2Fail", {s, s2, r},
                                     "(s<s').r != (s.r)<(s'.r)");
    for (Index r = 0; r < nr; ++r)
      if (t[actee.basepoint()][r] != actee.basepoint())
        return detail::violation("PointednessFail", {actee.basepoint(), r}, "1.r != 1");
    for (Index s = 0; s < ns; ++s)
      if (t[s][actor.basepoint()] != s)
        return detail::violation("PointednessFail", {s, actor.basepoint()}, "s.1 != s");
    for (Index r = 0; r < nr; ++r) {
      std::vector<bool> hit(ns, false);
      for (Index s = 0; s < ns; ++s) {
        if (hit[t[s][r]]) return detail::violation("ActionNotBijective", {r});
        hit[t[s][r]] = true;
      }
    }
    return std::nullopt;
  }

  static RackAction make(FiniteRack actee, FiniteRack actor, const Table& t) {
    detail::raise_if(check(actee, actor, t));
    return unchecked(std::move(actee), std::move(actor), t);
  }

  /// Skips the action laws; only for deliberately broken fixtures.
  static RackAction unchecked(FiniteRack actee, FiniteRack actor, const Table& t) {
    return RackAction(std::move(actee), std::move(actor), t);
  }

  const FiniteRack& actee() const noexcept { return actee_; }
  const FiniteRack& actor() const noexcept { return actor_; }
  Index act(Index s, Index r) const { return table_[s][r]; }
  const Table& table() const noexcept { return table_; }

  bool operator==(const RackAction&) const = default;

 private:
  RackAction(FiniteRack actee, FiniteRack actor, Table t)
      : actee_(std::move(actee)), actor_(std::move(actor)), table_(std::move(t)) {}

  FiniteRack actee_;
  FiniteRack actor_;
  Table table_;
};

/// s·r = s
inline RackAction trivial_action(const FiniteRack& actee, const FiniteRack& actor) {
  Table t(actee.size(), std::vector<Index>(actor.size()));
  for (Index s = 0; s < actee.size(); ++s)
    for (Index r = 0; r < actor.size(); ++r) t[s][r] = s;
  return RackAction::make(actee, actor, t);
}

/// s·r = s◁r
inline RackAction self_action(const FiniteRack& r) {
  return RackAction::make(r, r, r.table());
}

/// S ⋊ R with (s,r)◁(s',r') = (s·r', r◁r'); the pair (s, r) sits at s*|R| + r.
/// Throws ResultNotRack when the table fails the rack axioms.
inline FiniteRack hemi_semidirect(const RackAction& a) {
  const Index ns = a.actee().size(), nr = a.actor().size();
  const Index n = ns * nr;
  Table t(n, std::vector<Index>(n));
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) {
    labels[x] = "(" + a.actee().label(x / nr) + "," + a.actor().label(x % nr) + ")";
    for (Index y = 0; y < n; ++y)
      t[x][y] = a.act(x / nr, y % nr) * nr + a.actor().op(x % nr, y % nr);
  }
  const Index bp = a.actee().basepoint() * nr + a.actor().basepoint();
  if (auto v = FiniteRack::check(t, bp))
    throw AxiomViolation(detail::violation("ResultNotRack", v->witness, v->message()));
  return FiniteRack::make(t, bp, std::move(labels));
}

/// Crossed module of racks: ∂: R → S with a right action of S on R.
class RackXMod {
 public:
  /// X2 is checked before X1.
  static std::optional<Violation> check(const RackHom& boundary, const RackAction& action) {
    if (!(action.actee() == boundary.dom()) || !(action.actor() == boundary.cod()))
      return detail::violation("ShapeMismatch", {}, "action must be of cod(boundary) on dom(boundary)");
    const FiniteRack& r = boundary.dom();
    const FiniteRack& s = boundary.cod();
    for (Index x = 0; x < r.size(); ++x)
      for (Index y = 0; y < r.size(); ++y)
        if (action.act(x, boundary(y)) != r.op(x, y))
          return detail::violation("X2Fail", {x, y}, "r.d(r') != r<r'");
    for (Index x = 0; x < r.size(); ++x)
      for (Index g = 0; g < s.size(); ++g)
        if (boundary(action.act(x, g)) != s.op(boundary(x), g))
          return detail::violation("X1Fail", {x, g}, "d(r.s) != d(r)<s");
    return std::nullopt;
  }

  static RackXMod make(RackHom boundary, RackAction action) {
    detail::raise_if(check(boundary, action));
    return RackXMod(std::move(boundary), std::move(action));
  }

  const RackHom& boundary() const noexcept { return boundary_; }
  const RackAction& action() const noexcept { return action_; }
  const FiniteRack& domain() const noexcept { return boundary_.dom(); }
  const FiniteRack& codomain() const noexcept { return boundary_.cod(); }
  Index act(Index r, Index s) const { return action_.act(r, s); }

  bool operator==(const RackXMod&) const = default;

 private:
  RackXMod(RackHom boundary, RackAction action)
      : boundary_(std::move(boundary)), action_(std::move(action)) {}

  RackHom boundary_;
  RackAction action_;
};

/// Inclusion of a normal subrack N ⊆ R with action n·r = n◁r.
inline RackXMod inclusion_xmod(const FiniteRack& r, const std::vector<Index>& subset) {
  const auto normal = is_normal_subrack(subset, r);
  if (!normal.normal)
    throw AxiomViolation(detail::violation(
        "NotNormal", {normal.witness->first, normal.witness->second}, "n<r leaves N"));
  auto incl = subrack_inclusion(r, subset);
  const FiniteRack& n = incl.dom();
  std::vector<Index> local(r.size(), r.size());
  for (Index i = 0; i < n.size(); ++i) local[incl(i)] = i;
  Table t(n.size(), std::vector<Index>(r.size()));
  for (Index i = 0; i < n.size(); ++i)
    for (Index g = 0; g < r.size(); ++g) t[i][g] = local[r.op(incl(i), g)];
  auto action = RackAction::make(n, r, t);
  return RackXMod::make(std::move(incl), std::move(action));
}

inline RackXMod identity_xmod(const FiniteRack& r) {
  std::vector<Index> all(r.size());
  std::iota(all.begin(), all.end(), Index{0});
  return inclusion_xmod(r, all);
}

/// Image of the boundary, as a sorted subset of the codomain.
inline std::vector<Index> boundary_image(const RackXMod& x) {
  std::vector<bool> hit(x.codomain().size(), false);
  for (Index r = 0; r < x.domain().size(); ++r) hit[x.boundary()(r)] = true;
  std::vector<Index> out;
  for (Index s = 0; s < hit.size(); ++s)
    if (hit[s]) out.push_back(s);
  return out;
}

/// Pair (f1, f0) between crossed modules of racks.
class RackXModMorphism {
 public:
  static std::optional<Violation> check(const RackXMod& src, const RackXMod& dst,
                                        const std::vector<Index>& f1,
                                        const std::vector<Index>& f0) {
    if (auto v = RackHom::check(src.domain(), dst.domain(), f1)) {
      v->detail = "f1: " + v->detail;
      return v;
    }
    if (auto v = RackHom::check(src.codomain(), dst.codomain(), f0)) {
      v->detail = "f0: " + v->detail;
      return v;
    }
    for (Index r = 0; r < src.domain().size(); ++r)
      if (dst.boundary()(f1[r]) != f0[src.boundary()(r)])
        return detail::violation("BoundarySquareFail", {r}, "d'(f1(r)) != f0(d(r))");
    for (Index r = 0; r < src.domain().size(); ++r)
      for (Index s = 0; s < src.codomain().size(); ++s)
        if (f1[src.act(r, s)] != dst.act(f1[r], f0[s]))
          return detail::violation("ActionSquareFail", {r, s}, "f1(r.s) != f1(r).f0(s)");
    return std::nullopt;
  }

  static RackXModMorphism make(RackXMod src, RackXMod dst, std::vector<Index> f1,
                               std::vector<Index> f0) {
    detail::raise_if(check(src, dst, f1, f0));
    return RackXModMorphism(std::move(src), std::move(dst), std::move(f1), std::move(f0));
  }

  static RackXModMorphism identity(const RackXMod& x) {
    return make(x, x, RackHom::identity(x.domain()).map(), RackHom::identity(x.codomain()).map());
  }

  const RackXMod& src() const noexcept { return src_; }
  const RackXMod& dst() const noexcept { return dst_; }
  const std::vector<Index>& f1() const noexcept { return f1_; }
  const std::vector<Index>& f0() const noexcept { return f0_; }
  RackHom f1_hom() const { return RackHom::make(src_.domain(), dst_.domain(), f1_); }
  RackHom f0_hom() const { return RackHom::make(src_.codomain(), dst_.codomain(), f0_); }

  bool operator==(const RackXModMorphism&) const = default;

 private:
  RackXModMorphism(RackXMod src, RackXMod dst, std::vector<Index> f1, std::vector<Index> f0)
      : src_(std::move(src)), dst_(std::move(dst)), f1_(std::move(f1)), f0_(std::move(f0)) {}

  RackXMod src_;
  RackXMod dst_;
  std::vector<Index> f1_;
  std::vector<Index> f0_;
};

/// second ∘ first
inline RackXModMorphism compose(const RackXModMorphism& second, const RackXModMorphism& first) {
  if (!(first.dst() == second.src()))
    throw AxiomViolation(detail::violation("EndpointMismatch", {}));
  std::vector<Index> f1(first.f1().size()), f0(first.f0().size());
  for (Index r = 0; r < f1.size(); ++r) f1[r] = second.f1()[first.f1()[r]];
  for (Index s = 0; s < f0.size(); ++s) f0[s] = second.f0()[first.f0()[s]];
  return RackXModMorphism::make(first.src(), second.dst(), std::move(f1), std::move(f0));
}

// -- group side ------------------------------------------------------------

/// Crossed module of groups μ: M → N with N acting on the right of M by
/// automorphisms, action[m][n] = m·n.
class GroupXMod {
 public:
  static std::optional<Violation> check(const GroupHom& boundary, const Table& t) {
    const FiniteGroup& m = boundary.dom();
    const FiniteGroup& n = boundary.cod();
    if (t.size() != m.size()) return detail::violation("ShapeMismatch", {t.size(), m.size()});
    for (Index x = 0; x < m.size(); ++x) {
      if (t[x].size() != n.size()) return detail::violation("ShapeMismatch", {x});
      for (Index g = 0; g < n.size(); ++g)
        if (t[x][g] >= m.size()) return detail::violation("IndexOutOfRange", {x, g});
    }
    for (Index x = 0; x < m.size(); ++x)
      if (t[x][n.identity()] != x) return detail::violation("ActionIdentityFail", {x}, "m.e != m");
    for (Index x = 0; x < m.size(); ++x)
      for (Index g = 0; g < n.size(); ++g)
        for (Index h = 0; h < n.size(); ++h)
          if (t[t[x][g]][h] != t[x][n.mul(g, h)])
            return detail::violation("ActionCompositionFail", {x, g, h}, "(m.n).n' != m.(nn')");
    for (Index x = 0; x < m.size(); ++x)
      for (Index y = 0; y < m.size(); ++y)
        for (Index g = 0; g < n.size(); ++g)
          if (t[m.mul(x, y)][g] != m.mul(t[x][g], t[y][g]))
            return detail::violation("ActionNotAutomorphism", {x, y, g}, "(mm').n != (m.n)(m'.n)");
    for (Index x = 0; x < m.size(); ++x)
      for (Index g = 0; g < n.size(); ++g)
        if (boundary(t[x][g]) != n.conjugate(boundary(x), g))
          return detail::violation("EquivarianceFail", {x, g}, "mu(m.n) != n^-1 mu(m) n");
    for (Index x = 0; x < m.size(); ++x)
      for (Index y = 0; y < m.size(); ++y)
        if (t[x][boundary(y)] != m.conjugate(x, y))
          return detail::violation("PeifferFail", {x, y}, "m.mu(m') != m'^-1 m m'");
    return std::nullopt;
  }

  static GroupXMod make(GroupHom boundary, Table action) {
    detail::raise_if(check(boundary, action));
    return GroupXMod(std::move(boundary), std::move(action));
  }

  const GroupHom& boundary() const noexcept { return boundary_; }
  const Table& action() const noexcept { return action_; }
  const FiniteGroup& domain() const noexcept { return boundary_.dom(); }
  const FiniteGroup& codomain() const noexcept { return boundary_.cod(); }
  Index act(Index m, Index n) const { return action_[m][n]; }

  bool operator==(const GroupXMod&) const = default;

 private:
  GroupXMod(GroupHom boundary, Table action)
      : boundary_(std::move(boundary)), action_(std::move(action)) {}

  GroupHom boundary_;
  Table action_;
};

/// Inclusion of a normal subgroup with conjugation action; reports
/// ActionNotClosed(m, n) when n⁻¹mn leaves the subset.
inline GroupXMod inclusion_group_xmod(const FiniteGroup& g, const std::vector<Index>& subset) {
  auto incl = subgroup_inclusion(g, subset);
  const FiniteGroup& m = incl.dom();
  std::vector<Index> local(g.size(), g.size());
  for (Index i = 0; i < m.size(); ++i) local[incl(i)] = i;
  Table t(m.size(), std::vector<Index>(g.size()));
  for (Index i = 0; i < m.size(); ++i)
    for (Index h = 0; h < g.size(); ++h) {
      const Index c = g.conjugate(incl(i), h);
      if (local[c] == g.size())
        throw AxiomViolation(detail::violation("ActionNotClosed", {incl(i), h},
                                               "conjugate leaves the subgroup"));
      t[i][h] = local[c];
    }
  return GroupXMod::make(std::move(incl), std::move(t));
}

/// id: G → G with conjugation action.
inline GroupXMod identity_group_xmod(const FiniteGroup& g) {
  std::vector<Index> all(g.size());
  std::iota(all.begin(), all.end(), Index{0});
  return inclusion_group_xmod(g, all);
}

class GroupXModMorphism {
 public:
  static std::optional<Violation> check(const GroupXMod& src, const GroupXMod& dst,
                                        const std::vector<Index>& f1,
                                        const std::vector<Index>& f0) {
    if (auto v = GroupHom::check(src.domain(), dst.domain(), f1)) {
      v->detail = "f1: " + v->detail;
      return v;
    }
    if (auto v = GroupHom::check(src.codomain(), dst.codomain(), f0)) {
      v->detail = "f0: " + v->detail;
      return v;
    }
    for (Index m = 0; m < src.domain().size(); ++m)
      if (dst.boundary()(f1[m]) != f0[src.boundary()(m)])
        return detail::violation("BoundarySquareFail", {m});
    for (Index m = 0; m < src.domain().size(); ++m)
      for (Index n = 0; n < src.codomain().size(); ++n)
        if (f1[src.act(m, n)] != dst.act(f1[m], f0[n]))
          return detail::violation("ActionSquareFail", {m, n});
    return std::nullopt;
  }

  static GroupXModMorphism make(GroupXMod src, GroupXMod dst, std::vector<Index> f1,
                                std::vector<Index> f0) {
    detail::raise_if(check(src, dst, f1, f0));
    return GroupXModMorphism(std::move(src), std::move(dst), std::move(f1), std::move(f0));
  }

  const GroupXMod& src() const noexcept { return src_; }
  const GroupXMod& dst() const noexcept { return dst_; }
  const std::vector<Index>& f1() const noexcept { return f1_; }
  const std::vector<Index>& f0() const noexcept { return f0_; }

 private:
  GroupXModMorphism(GroupXMod src, GroupXMod dst, std::vector<Index> f1, std::vector<Index> f0)
      : src_(std::move(src)), dst_(std::move(dst)), f1_(std::move(f1)), f0_(std::move(f0)) {}

  GroupXMod src_;
  GroupXMod dst_;
  std::vector<Index> f1_;
  std::vector<Index> f0_;
};

// -- Conj on crossed modules -----------------------------------------------

/// Conj applied to both groups; the action table is reused unchanged.
inline RackXMod conj_xmod(const GroupXMod& g) {
  auto boundary = conj_hom(g.boundary());
  auto action = RackAction::make(boundary.dom(), boundary.cod(), g.action());
  return RackXMod::make(std::move(boundary), std::move(action));
}

inline RackXModMorphism conj_xmod_morphism(const GroupXModMorphism& m) {
  return RackXModMorphism::make(conj_xmod(m.src()), conj_xmod(m.dst()), m.f1(), m.f0());
}

}  // namespace rackx
