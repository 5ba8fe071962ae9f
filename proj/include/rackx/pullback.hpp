#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rackx/isomorphism.hpp"
#include "rackx/rack.hpp"
#include "rackx/xmod.hpp"

namespace rackx {

/// Index of each pair (a, b) inside a list of pairs drawn from A × B.
class PairIndex {
 public:
  PairIndex() = default;
  PairIndex(const std::vector<std::pair<Index, Index>>& pairs, Index left, Index right)
      : right_(right), slots_(left * right, kMissing) {
    for (Index i = 0; i < pairs.size(); ++i) slots_[pairs[i].first * right + pairs[i].second] = i;
  }

  std::optional<Index> find(Index a, Index b) const {
    const Index i = slots_[a * right_ + b];
    if (i == kMissing) return std::nullopt;
    return i;
  }

 private:
  static constexpr Index kMissing = static_cast<Index>(-1);
  Index right_ = 0;
  std::vector<Index> slots_;
};

/// P ×_R S: the pairs on which α and β agree, in lexicographic order.
struct FiberProduct {
  FiniteRack carrier;
  std::vector<std::pair<Index, Index>> pairs;
  RackHom proj1;
  RackHom proj2;
  PairIndex index;
};

inline FiberProduct fiber_product(const RackHom& alpha, const RackHom& beta) {
  if (!(alpha.cod() == beta.cod()))
    throw AxiomViolation(detail::violation("CodomainMismatch", {}));
  const FiniteRack& p = alpha.dom();
  const FiniteRack& s = beta.dom();
  std::vector<std::pair<Index, Index>> pairs;
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < s.size(); ++b)
      if (alpha(a) == beta(b)) pairs.emplace_back(a, b);
  PairIndex index(pairs, p.size(), s.size());

  const Index n = pairs.size();
  Table t(n, std::vector<Index>(n));
  std::vector<std::string> labels(n);
  for (Index i = 0; i < n; ++i) {
    labels[i] = "(" + p.label(pairs[i].first) + "," + s.label(pairs[i].second) + ")";
    for (Index j = 0; j < n; ++j) {
      auto k = index.find(p.op(pairs[i].first, pairs[j].first),
                          s.op(pairs[i].second, pairs[j].second));
      if (!k) throw AxiomViolation(detail::violation("NotClosed", {i, j}));
      t[i][j] = *k;
    }
  }
  const Index bp = *index.find(p.basepoint(), s.basepoint());
  auto carrier = FiniteRack::make(t, bp, std::move(labels));

  std::vector<Index> first(n), second(n);
  for (Index i = 0; i < n; ++i) {
    first[i] = pairs[i].first;
    second[i] = pairs[i].second;
  }
  auto proj1 = RackHom::make(carrier, p, std::move(first));
  auto proj2 = RackHom::make(carrier, s, std::move(second));
  if (compose(alpha, proj1).map() != compose(beta, proj2).map())
    throw AxiomViolation(detail::violation("EqualizerFail", {}));
  return {std::move(carrier), std::move(pairs), std::move(proj1), std::move(proj2),
          std::move(index)};
}

/// P ×_R S → R for two crossed modules over R, with (p,s)·r = (p·r, s·r).
inline RackXMod fiber_product_xmod(const RackXMod& alpha, const RackXMod& beta) {
  if (!(alpha.codomain() == beta.codomain()))
    throw AxiomViolation(detail::violation("CodomainMismatch", {}));
  const FiniteRack& r = alpha.codomain();
  auto fp = fiber_product(alpha.boundary(), beta.boundary());
  const Index n = fp.pairs.size();
  Table t(n, std::vector<Index>(r.size()));
  std::vector<Index> boundary(n);
  for (Index i = 0; i < n; ++i) {
    const auto [a, b] = fp.pairs[i];
    boundary[i] = alpha.boundary()(a);
    for (Index g = 0; g < r.size(); ++g) {
      auto k = fp.index.find(alpha.act(a, g), beta.act(b, g));
      if (!k) throw AxiomViolation(detail::violation("ActionLeavesCarrier", {i, g}));
      t[i][g] = *k;
    }
  }
  auto action = RackAction::make(fp.carrier, r, t);
  return RackXMod::make(RackHom::make(fp.carrier, r, std::move(boundary)), std::move(action));
}

/// φ*(P) → S, built on P ×_R S with ∂*(p,s) = s and (p,s)·s' = (p·φ(s'), s◁s').
struct PullbackXMod {
  RackXMod xmod;
  RackHom phi_prime;
  RackXMod source;
  RackHom phi;
  std::vector<std::pair<Index, Index>> pairs;
  PairIndex index;

  /// (φ', φ): φ*(P) → (P, R, ∂)
  RackXModMorphism projection() const {
    return RackXModMorphism::make(xmod, source, phi_prime.map(), phi.map());
  }
};

inline PullbackXMod pullback_xmod(const RackXMod& source, const RackHom& phi) {
  if (!(phi.cod() == source.codomain()))
    throw AxiomViolation(detail::violation("CodomainMismatch", {}));
  const FiniteRack& s = phi.dom();
  auto fp = fiber_product(source.boundary(), phi);
  const Index n = fp.pairs.size();
  Table t(n, std::vector<Index>(s.size()));
  for (Index i = 0; i < n; ++i) {
    const auto [p, x] = fp.pairs[i];
    for (Index y = 0; y < s.size(); ++y) {
      auto k = fp.index.find(source.act(p, phi(y)), s.op(x, y));
      if (!k) throw AxiomViolation(detail::violation("ActionLeavesCarrier", {i, y}));
      t[i][y] = *k;
    }
  }
  auto action = RackAction::make(fp.carrier, s, t);
  auto xmod = RackXMod::make(fp.proj2, std::move(action));
  for (Index i = 0; i < n; ++i)
    if (phi(xmod.boundary()(i)) != source.boundary()(fp.proj1(i)))
      throw AxiomViolation(detail::violation("SquareFail", {i}, "phi(d*(x)) != d(phi'(x))"));
  PullbackXMod pb{std::move(xmod), std::move(fp.proj1), source, phi, std::move(fp.pairs),
                  std::move(fp.index)};
  pb.projection();
  return pb;
}

/// (f*, id_S) with f*(x) = (f(x), μ(x)) for a morphism (f, φ): (X,S,μ) → (P,R,∂).
inline RackXModMorphism mediating_morphism(const PullbackXMod& pb, const RackXModMorphism& test) {
  if (!(test.dst() == pb.source))
    throw AxiomViolation(detail::violation("TargetMismatch", {}));
  if (!(test.src().codomain() == pb.xmod.codomain()))
    throw AxiomViolation(detail::violation("SliceMismatch", {}));
  if (test.f0() != pb.phi.map()) throw AxiomViolation(detail::violation("PhiMismatch", {}));
  const RackXMod& x = test.src();
  std::vector<Index> fstar(x.domain().size());
  for (Index e = 0; e < fstar.size(); ++e) {
    auto k = pb.index.find(test.f1()[e], x.boundary()(e));
    if (!k) throw AxiomViolation(detail::violation("ImageOutsideCarrier", {e}));
    fstar[e] = *k;
  }
  auto med = RackXModMorphism::make(x, pb.xmod, std::move(fstar),
                                    RackHom::identity(x.codomain()).map());
  const auto through = compose(pb.projection(), med);
  if (through.f1() != test.f1() || through.f0() != test.f0())
    throw AxiomViolation(detail::violation("FactorizationFail", {}));
  return med;
}

inline RackXModMorphism mediating_morphism(const PullbackXMod& pb, const RackHom& f,
                                           const RackXMod& mu) {
  if (auto v = RackXModMorphism::check(mu, pb.source, f.map(), pb.phi.map()))
    throw AxiomViolation(detail::violation("NotAMorphism", v->witness, v->message()));
  return mediating_morphism(pb, RackXModMorphism::make(mu, pb.source, f.map(), pb.phi.map()));
}

struct UniversalityCertificate {
  /// f* as an index map into the pullback carrier (paired with id_S).
  std::vector<Index> mediating;
  /// Candidates h that are crossed-module morphisms (h, id_S) and factor the test morphism.
  Index count = 0;
  /// Candidates h for which (h, id_S) is a crossed-module morphism at all.
  Index morphisms = 0;
  std::uint64_t search_space = 0;
  std::vector<std::vector<Index>> witnesses;
  bool passed = false;
};

/// Hard ceiling on |carrier|^|X| for the brute-force certifiers.
inline constexpr std::uint64_t kMaxSearchSpace = 50'000'000;

namespace detail {

inline std::uint64_t checked_power(Index base, Index exp) {
  std::uint64_t total = 1;
  for (Index i = 0; i < exp; ++i) {
    total *= base;
    if (total > kMaxSearchSpace)
      throw AxiomViolation(violation("SearchSpaceTooLarge", {base, exp}));
  }
  return total;
}

/// Calls visit on every map {0..n-1} → {0..k-1} in lexicographic order.
template <typename Visit>
void for_each_map(Index n, Index k, Visit&& visit) {
  std::vector<Index> h(n, 0);
  while (true) {
    visit(h);
    Index i = n;
    while (i > 0 && ++h[i - 1] == k) h[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace detail

/// Exhaustive check that exactly one map h: X → φ*(P) makes (h, id_S) a
/// crossed-module morphism with φ'h = f and ∂*h = μ, and that it is f*.
inline UniversalityCertificate verify_universal_property(const PullbackXMod& pb,
                                                         const RackXModMorphism& test) {
  UniversalityCertificate cert;
  const auto med = mediating_morphism(pb, test);
  cert.mediating = med.f1();
  const RackXMod& x = test.src();
  const Index nx = x.domain().size(), nc = pb.xmod.domain().size();
  cert.search_space = detail::checked_power(nc, nx);
  const auto id_s = RackHom::identity(x.codomain()).map();
  detail::for_each_map(nx, nc, [&](const std::vector<Index>& h) {
    if (RackXModMorphism::check(x, pb.xmod, h, id_s)) return;
    ++cert.morphisms;
    for (Index e = 0; e < nx; ++e)
      if (pb.phi_prime(h[e]) != test.f1()[e] || pb.xmod.boundary()(h[e]) != x.boundary()(e))
        return;
    ++cert.count;
    cert.witnesses.push_back(h);
  });
  cert.passed = cert.count == 1 && cert.witnesses.front() == cert.mediating;
  return cert;
}

/// i* on a morphism (g, id_R) over R: (p,s) ↦ (g(p), s).
inline RackXModMorphism pullback_on_morphisms(const RackXModMorphism& m, const RackHom& phi) {
  if (!(m.src().codomain() == m.dst().codomain()) ||
      m.f0() != RackHom::identity(m.src().codomain()).map())
    throw AxiomViolation(detail::violation("NotOverIdentity", {}));
  const auto from = pullback_xmod(m.src(), phi);
  const auto to = pullback_xmod(m.dst(), phi);
  std::vector<Index> f1(from.pairs.size());
  for (Index i = 0; i < f1.size(); ++i) {
    auto k = to.index.find(m.f1()[from.pairs[i].first], from.pairs[i].second);
    if (!k) throw AxiomViolation(detail::violation("ImageOutsideCarrier", {i}));
    f1[i] = *k;
  }
  return RackXModMorphism::make(from.xmod, to.xmod, std::move(f1),
                                RackHom::identity(phi.dom()).map());
}

/// First crossed-module isomorphism (i1, i0) found by pairing rack
/// isomorphisms of codomains and domains and filtering by the morphism laws.
inline std::optional<RackXModMorphism> find_xmod_isomorphism(const RackXMod& a, const RackXMod& b) {
  std::optional<RackXModMorphism> found;
  for_each_isomorphism(a.codomain(), b.codomain(), [&](const std::vector<Index>& i0) {
    for_each_isomorphism(a.domain(), b.domain(), [&](const std::vector<Index>& i1) {
      if (RackXModMorphism::check(a, b, i1, i0)) return true;
      found = RackXModMorphism::make(a, b, i1, i0);
      return false;
    });
    return !found;
  });
  return found;
}

// -- group side ------------------------------------------------------------

struct GroupPullbackXMod {
  GroupXMod xmod;
  GroupHom phi_prime;
  GroupXMod source;
  GroupHom phi;
  std::vector<std::pair<Index, Index>> pairs;
  PairIndex index;

  GroupXModMorphism projection() const {
    return GroupXModMorphism::make(xmod, source, phi_prime.map(), phi.map());
  }
};

/// {(m,s) : ∂m = φ(s)} ≤ M × S with (m,s) ↦ s and (m,s)·s' = (m·φ(s'), s'⁻¹ss').
inline GroupPullbackXMod group_pullback_xmod(const GroupXMod& source, const GroupHom& phi) {
  if (!(phi.cod() == source.codomain()))
    throw AxiomViolation(detail::violation("CodomainMismatch", {}));
  const FiniteGroup& m = source.domain();
  const FiniteGroup& s = phi.dom();
  std::vector<std::pair<Index, Index>> pairs;
  for (Index a = 0; a < m.size(); ++a)
    for (Index b = 0; b < s.size(); ++b)
      if (source.boundary()(a) == phi(b)) pairs.emplace_back(a, b);
  PairIndex index(pairs, m.size(), s.size());
  const Index n = pairs.size();

  Table mul(n, std::vector<Index>(n));
  std::vector<std::string> labels(n);
  for (Index i = 0; i < n; ++i) {
    labels[i] = "(" + m.label(pairs[i].first) + "," + s.label(pairs[i].second) + ")";
    for (Index j = 0; j < n; ++j) {
      auto k = index.find(m.mul(pairs[i].first, pairs[j].first),
                          s.mul(pairs[i].second, pairs[j].second));
      if (!k) throw AxiomViolation(detail::violation("NotClosed", {i, j}));
      mul[i][j] = *k;
    }
  }
  auto carrier = FiniteGroup::make(mul, *index.find(m.identity(), s.identity()), std::move(labels));

  std::vector<Index> first(n), second(n);
  Table action(n, std::vector<Index>(s.size()));
  for (Index i = 0; i < n; ++i) {
    first[i] = pairs[i].first;
    second[i] = pairs[i].second;
    for (Index y = 0; y < s.size(); ++y) {
      auto k = index.find(source.act(pairs[i].first, phi(y)), s.conjugate(pairs[i].second, y));
      if (!k) throw AxiomViolation(detail::violation("ActionLeavesCarrier", {i, y}));
      action[i][y] = *k;
    }
  }
  auto phi_prime = GroupHom::make(carrier, m, std::move(first));
  auto xmod = GroupXMod::make(GroupHom::make(carrier, s, std::move(second)), std::move(action));
  GroupPullbackXMod pb{std::move(xmod), std::move(phi_prime), source, phi, std::move(pairs),
                       std::move(index)};
  pb.projection();
  return pb;
}

/// Group analogue of verify_universal_property for (f, φ): (X,S,μ) → (M,R,∂).
inline UniversalityCertificate verify_group_universal_property(const GroupPullbackXMod& pb,
                                                               const GroupXModMorphism& test) {
  if (!(test.dst() == pb.source) || !(test.src().codomain() == pb.xmod.codomain()) ||
      test.f0() != pb.phi.map())
    throw AxiomViolation(detail::violation("TargetMismatch", {}));
  UniversalityCertificate cert;
  const GroupXMod& x = test.src();
  const Index nx = x.domain().size(), nc = pb.xmod.domain().size();
  cert.mediating.resize(nx);
  for (Index e = 0; e < nx; ++e) {
    auto k = pb.index.find(test.f1()[e], x.boundary()(e));
    if (!k) throw AxiomViolation(detail::violation("ImageOutsideCarrier", {e}));
    cert.mediating[e] = *k;
  }
  const auto id_s = GroupHom::identity(x.codomain()).map();
  GroupXModMorphism::make(x, pb.xmod, cert.mediating, id_s);
  cert.search_space = detail::checked_power(nc, nx);
  detail::for_each_map(nx, nc, [&](const std::vector<Index>& h) {
    if (GroupXModMorphism::check(x, pb.xmod, h, id_s)) return;
    ++cert.morphisms;
    for (Index e = 0; e < nx; ++e)
      if (pb.phi_prime(h[e]) != test.f1()[e] || pb.xmod.boundary()(h[e]) != x.boundary()(e))
        return;
    ++cert.count;
    cert.witnesses.push_back(h);
  });
  cert.passed = cert.count == 1 && cert.witnesses.front() == cert.mediating;
  return cert;
}

struct ConjPreservationReport {
  /// Conj_X applied to the group pullback.
  RackXMod conj_of_pullback;
  /// Rack pullback of Conj_X(∂) along Conj(φ).
  RackXMod pullback_of_conj;
  std::optional<RackXModMorphism> isomorphism;
  std::optional<RackXModMorphism> inverse;
  bool passed = false;
};

/// Compares Conj_X(φ*(M)) with Conj(φ)*(Conj_X(M → R)) up to crossed-module
/// isomorphism. Throws NoIsomorphismFound when they differ.
inline ConjPreservationReport check_conj_preserves_pullback(const GroupXMod& source,
                                                           const GroupHom& phi) {
  auto a = conj_xmod(group_pullback_xmod(source, phi).xmod);
  auto b = pullback_xmod(conj_xmod(source), conj_hom(phi)).xmod;
  auto iso = find_xmod_isomorphism(a, b);
  if (!iso) throw AxiomViolation(detail::violation("NoIsomorphismFound", {}));
  std::vector<Index> inv1(iso->f1().size()), inv0(iso->f0().size());
  for (Index i = 0; i < inv1.size(); ++i) inv1[iso->f1()[i]] = i;
  for (Index i = 0; i < inv0.size(); ++i) inv0[iso->f0()[i]] = i;
  auto inv = RackXModMorphism::make(b, a, std::move(inv1), std::move(inv0));
  return {std::move(a), std::move(b), std::move(iso), std::move(inv), true};
}

}  // namespace rackx
