#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rackx/functors.hpp"
#include "rackx/group.hpp"
#include "rackx/isomorphism.hpp"
#include "rackx/pullback.hpp"
#include "rackx/rack.hpp"
#include "rackx/xmod.hpp"

/// Named small structures shared by the test suites and `rackx corpus`.
namespace rackx::corpus {

template <typename T>
struct Named {
  std::string name;
  T value;
};

inline Index at(const FiniteGroup& g, const std::string& label) {
  auto a = g.find(label);
  if (!a) throw std::out_of_range("no element labelled " + label);
  return *a;
}

inline Index at(const FiniteRack& r, const std::string& label) {
  auto a = r.find(label);
  if (!a) throw std::out_of_range("no element labelled " + label);
  return *a;
}

inline FiniteGroup z(Index n) { return cyclic_group(n); }
inline FiniteGroup s3() { return symmetric_group(3); }

/// {e, (123), (132)} as indices of S3.
inline std::vector<Index> a3_subset() {
  const auto g = s3();
  return {at(g, "e"), at(g, "(123)"), at(g, "(132)")};
}

inline GroupHom sgn() { return sign_hom(3); }
/// Z3 → S3, 1 ↦ (123)
inline GroupHom psi() { return cyclic_hom(3, s3(), at(s3(), "(123)")); }
/// Z2 → S3, 1 ↦ (12)
inline GroupHom tau() { return cyclic_hom(2, s3(), at(s3(), "(12)")); }

/// Trivial pointed rack on two elements, x◁y = x.
inline FiniteRack t2() { return FiniteRack::make({{0, 0}, {1, 1}}, 0); }
inline FiniteRack trivial_rack(Index n) {
  Table t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) t[a][b] = a;
  return FiniteRack::make(t, 0);
}
inline FiniteRack cz2() { return conj_rack(z(2)); }
inline FiniteRack cs3() { return conj_rack(s3()); }
/// Dihedral quandle on Z3, i◁j = 2j − i.
inline UnpointedRack r3() {
  Table t(3, std::vector<Index>(3));
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) t[i][j] = (2 * j + 3 - i) % 3;
  return UnpointedRack::make(t);
}
inline FiniteRack r3_plus() { return adjoin_basepoint(r3()); }
inline FiniteRack core_z3_plus() { return adjoin_basepoint(core_rack(z(3))); }

inline RackHom sgn_rack() { return conj_hom(sgn()); }

/// The normal subrack {e,(123),(132)} of CS3, with its inclusion crossed module.
inline RackXMod a3r_in_cs3() { return inclusion_xmod(cs3(), a3_subset()); }
inline GroupXMod a3_in_s3() { return inclusion_group_xmod(s3(), a3_subset()); }

/// The crossed module {1} ↪ CZ2.
inline RackXMod basepoint_in_cz2() { return inclusion_xmod(cz2(), {cz2().basepoint()}); }

/// (f, sgn) from the inclusion A3r ↪ CS3 into {1} ↪ CZ2, f the basepoint map.
inline RackXModMorphism kernel_test() {
  const auto target = basepoint_in_cz2();
  const auto src = a3r_in_cs3();
  return RackXModMorphism::make(src, target, std::vector<Index>(src.domain().size(), 0),
                                sgn_rack().map());
}

inline std::vector<Named<FiniteGroup>> groups() {
  return {{"z2", z(2)}, {"z3", z(3)}, {"z4", z(4)}, {"z6", z(6)}, {"s3", s3()}};
}

/// Pointed racks of order ≤ max_order from the enumerator, then the named racks.
inline std::vector<Named<FiniteRack>> racks(Index max_order = 3) {
  std::vector<Named<FiniteRack>> out;
  for (Index n = 1; n <= max_order; ++n) {
    const auto found = enumerate_pointed_racks(n, std::max(max_order, configured_bound()));
    for (Index k = 0; k < found.size(); ++k)
      out.push_back({"order" + std::to_string(n) + "-" + std::to_string(k), found[k]});
  }
  out.push_back({"cz2", cz2()});
  out.push_back({"cs3", cs3()});
  out.push_back({"r3plus", r3_plus()});
  out.push_back({"corez3plus", core_z3_plus()});
  return out;
}

/// Every subset containing the basepoint that is a normal subrack.
inline std::vector<std::vector<Index>> normal_subracks(const FiniteRack& r) {
  std::vector<std::vector<Index>> out;
  const Index n = r.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> r.basepoint() & 1)) continue;
    std::vector<Index> subset;
    for (Index a = 0; a < n; ++a)
      if (mask >> a & 1) subset.push_back(a);
    if (is_normal_subrack(subset, r).normal) out.push_back(std::move(subset));
  }
  return out;
}

inline std::vector<Named<GroupXMod>> group_xmods() {
  const auto g = s3();
  return {
      {"a3-in-s3", a3_in_s3()},
      {"1-in-z2", inclusion_group_xmod(z(2), {0})},
      {"id-z2", identity_group_xmod(z(2))},
      {"id-z3", identity_group_xmod(z(3))},
      {"id-z4", identity_group_xmod(z(4))},
      {"z2-in-z4", inclusion_group_xmod(z(4), {0, 2})},
      {"z3-in-z6", inclusion_group_xmod(z(6), {0, 2, 4})},
      {"1-in-s3", inclusion_group_xmod(g, {at(g, "e")})},
      {"id-s3", identity_group_xmod(g)},
  };
}

/// Inclusion crossed modules of every normal subrack of the small racks.
inline std::vector<Named<RackXMod>> rack_xmods(Index max_order = 3) {
  std::vector<Named<RackXMod>> out;
  for (const auto& [name, r] : racks(max_order)) {
    if (r.size() > 6) continue;
    for (const auto& n : normal_subracks(r)) {
      std::string tag;
      for (Index a : n) tag += std::to_string(a);
      out.push_back({"incl-" + tag + "-in-" + name, inclusion_xmod(r, n)});
    }
  }
  for (const auto& [name, g] : group_xmods()) out.push_back({"conj-" + name, conj_xmod(g)});
  return out;
}

struct PullbackCase {
  std::string name;
  RackXMod xmod;
  RackHom phi;
};

/// Pairs (∂, φ) with φ ranging over homs into the codomain of ∂ from the
/// small racks, at most per_pair homs for each (∂, source rack).
inline std::vector<PullbackCase> pullback_cases(Index per_pair = 3, Index max_order = 3) {
  std::vector<PullbackCase> out;
  const auto sources = racks(max_order);
  for (const auto& [xname, x] : rack_xmods(max_order)) {
    for (const auto& [sname, s] : sources) {
      if (s.size() * x.domain().size() > 36) continue;
      const auto homs = enumerate_rack_homs(s, x.codomain());
      // spread the picks across the hom list
      const Index step = std::max<Index>(1, homs.count() / per_pair);
      for (Index k = 0, used = 0; k < homs.count() && used < per_pair; k += step, ++used)
        out.push_back({xname + "|" + sname + "#" + std::to_string(k), x,
                       RackHom::make(s, x.codomain(), homs.maps[k])});
    }
  }
  return out;
}

/// Test morphisms (f, φ) into (P, R, ∂) from crossed modules over S: the
/// pullback's own projection, then every (f, φ) out of the inclusion
/// crossed modules of normal subracks of S.
inline std::vector<RackXModMorphism> universal_tests(const PullbackXMod& pb, Index limit = 8) {
  std::vector<RackXModMorphism> out{pb.projection()};
  const FiniteRack& s = pb.phi.dom();
  for (const auto& n : normal_subracks(s)) {
    const auto mu = inclusion_xmod(s, n);
    for (const auto& f : enumerate_rack_homs(mu.domain(), pb.source.domain()).maps) {
      if (out.size() >= limit) return out;
      if (!RackXModMorphism::check(mu, pb.source, f, pb.phi.map()))
        out.push_back(RackXModMorphism::make(mu, pb.source, f, pb.phi.map()));
    }
  }
  return out;
}

struct GroupPullbackCase {
  std::string name;
  GroupXMod xmod;
  GroupHom phi;
};

inline std::vector<GroupPullbackCase> group_pullback_cases() {
  const auto g = s3();
  return {
      {"a3-in-s3|psi", a3_in_s3(), psi()},
      {"1-in-z2|sgn", inclusion_group_xmod(z(2), {0}), sgn()},
      {"a3-in-s3|id", a3_in_s3(), GroupHom::identity(g)},
      {"id-s3|tau", identity_group_xmod(g), tau()},
      {"1-in-s3|psi", inclusion_group_xmod(g, {at(g, "e")}), psi()},
      {"a3-in-s3|tau", a3_in_s3(), tau()},
      {"id-z2|sgn", identity_group_xmod(z(2)), sgn()},
      {"z2-in-z4|double", inclusion_group_xmod(z(4), {0, 2}), cyclic_hom(2, z(4), 2)},
      {"z3-in-z6|z6", inclusion_group_xmod(z(6), {0, 2, 4}), GroupHom::identity(z(6))},
  };
}

}  // namespace rackx::corpus
