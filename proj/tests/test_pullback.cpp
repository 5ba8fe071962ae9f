#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "oracles.hpp"
#include "rackx/corpus.hpp"
#include "rackx/functors.hpp"
#include "rackx/pullback.hpp"

using namespace rackx;
namespace c = rackx::corpus;

namespace {

oracle::RawRack raw(const FiniteRack& r) { return {r.table(), r.basepoint()}; }

oracle::RawXMod raw(const RackXMod& x) {
  return {raw(x.domain()), raw(x.codomain()), x.boundary().map(), x.action().table()};
}

FiniteRack sub(const FiniteRack& r, const std::vector<Index>& subset) {
  return subrack_inclusion(r, subset).dom();
}

RackHom tau_rack() { return conj_hom(c::tau()); }

}  // namespace

// -- fiber product -----------------------------------------------------------

TEST(FiberProduct, IdentitiesGiveDiagonal) {
  const auto id = RackHom::identity(c::cs3());
  const auto fp = fiber_product(id, id);
  EXPECT_EQ(fp.pairs.size(), 6u);
  for (const auto& [a, b] : fp.pairs) EXPECT_EQ(a, b);
  EXPECT_TRUE(is_isomorphic(fp.carrier, c::cs3()));
}

TEST(FiberProduct, GraphOfSign) {
  const auto sgn = c::sgn_rack();
  const auto fp = fiber_product(sgn, RackHom::identity(c::cz2()));
  EXPECT_EQ(fp.pairs.size(), 6u);
  for (const auto& [p, q] : fp.pairs) EXPECT_EQ(q, sgn(p));
  EXPECT_TRUE(is_isomorphic(fp.carrier, c::cs3()));
}

TEST(FiberProduct, InclusionAgainstIdentity) {
  const auto a3 = c::a3r_in_cs3();
  const auto fp = fiber_product(a3.boundary(), RackHom::identity(c::cs3()));
  EXPECT_EQ(fp.pairs.size(), 3u);
  EXPECT_TRUE(is_isomorphic(fp.carrier, a3.domain()));
}

TEST(FiberProduct, CodomainMismatch) {
  try {
    fiber_product(RackHom::identity(c::cs3()), RackHom::identity(c::cz2()));
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_EQ(e.axiom(), "CodomainMismatch");
  }
}

TEST(FiberProduct, AgreesWithPairEnumerationAndEqualizes) {
  for (const auto& pc : c::pullback_cases(2, 3)) {
    const auto fp = fiber_product(pc.xmod.boundary(), pc.phi);
    ASSERT_EQ(fp.pairs, oracle::matching_pairs(pc.xmod.boundary().map(), pc.phi.map())) << pc.name;
    EXPECT_TRUE(oracle::is_pointed_rack(fp.carrier.table(), fp.carrier.basepoint()));
    for (Index i = 0; i < fp.pairs.size(); ++i)
      EXPECT_EQ(pc.xmod.boundary()(fp.proj1(i)), pc.phi(fp.proj2(i)));
  }
}

// -- fiber product crossed module --------------------------------------------

TEST(FiberProductXMod, Singleton) {
  const auto one = inclusion_xmod(c::cs3(), {0});
  EXPECT_EQ(fiber_product_xmod(one, one).domain().size(), 1u);
}

TEST(FiberProductXMod, DiagonalA3) {
  const auto a3 = c::a3r_in_cs3();
  const auto x = fiber_product_xmod(a3, a3);
  EXPECT_EQ(x.domain().size(), 3u);
  EXPECT_TRUE(oracle::is_xmod(raw(x)));
  EXPECT_TRUE(find_xmod_isomorphism(x, a3));
}

TEST(FiberProductXMod, IdentityAgainstA3) {
  const auto x = fiber_product_xmod(identity_xmod(c::cs3()), c::a3r_in_cs3());
  EXPECT_EQ(x.domain().size(), 3u);
  EXPECT_TRUE(oracle::is_xmod(raw(x)));
}

TEST(FiberProductXMod, EveryPairOverACommonCodomain) {
  const auto xs = c::rack_xmods(3);
  Index pairs = 0;
  for (const auto& [na, a] : xs)
    for (const auto& [nb, b] : xs) {
      if (!(a.codomain() == b.codomain())) continue;
      const auto x = fiber_product_xmod(a, b);
      EXPECT_TRUE(oracle::is_xmod(raw(x))) << na << " x " << nb;
      ++pairs;
    }
  EXPECT_GE(pairs, 10u);
}

// -- pullback ----------------------------------------------------------------

TEST(Pullback, KernelOfSign) {
  const auto pb = pullback_xmod(c::basepoint_in_cz2(), c::sgn_rack());
  EXPECT_EQ(pb.xmod.domain().size(), 3u);
  EXPECT_TRUE(is_isomorphic(pb.xmod.domain(), c::a3r_in_cs3().domain()));
  const auto k = kernel(c::sgn_rack());
  EXPECT_EQ(pb.xmod.boundary().map(), k.elements);
}

TEST(Pullback, AlongIdentityIsOriginal) {
  const auto a3 = c::a3r_in_cs3();
  const auto pb = pullback_xmod(a3, RackHom::identity(c::cs3()));
  EXPECT_TRUE(find_xmod_isomorphism(pb.xmod, a3));
}

TEST(Pullback, AlongTauMeetsA3OnlyAtIdentity) {
  const auto pb = pullback_xmod(c::a3r_in_cs3(), tau_rack());
  ASSERT_EQ(pb.pairs.size(), 1u);
  EXPECT_EQ(pb.pairs[0], (std::pair<Index, Index>{0, 0}));
}

TEST(Pullback, CodomainMismatch) {
  try {
    pullback_xmod(c::a3r_in_cs3(), RackHom::identity(c::cz2()));
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_EQ(e.axiom(), "CodomainMismatch");
  }
}

TEST(PullbackProperties, CorpusSweep) {
  const auto cases = c::pullback_cases();
  ASSERT_GE(cases.size(), 20u);
  for (const auto& pc : cases) {
    const auto pb = pullback_xmod(pc.xmod, pc.phi);
    ASSERT_TRUE(oracle::is_xmod(raw(pb.xmod))) << pc.name;
    ASSERT_EQ(pb.pairs, oracle::matching_pairs(pc.xmod.boundary().map(), pc.phi.map()));
    for (Index i = 0; i < pb.pairs.size(); ++i) {
      EXPECT_EQ(pb.xmod.boundary()(i), pb.pairs[i].second);
      EXPECT_EQ(pc.phi(pb.xmod.boundary()(i)), pc.xmod.boundary()(pb.phi_prime(i)));
    }
  }
}

TEST(PullbackProperties, AlongIdentityEverywhere) {
  for (const auto& [name, x] : c::rack_xmods(3)) {
    const auto pb = pullback_xmod(x, RackHom::identity(x.codomain()));
    EXPECT_TRUE(find_xmod_isomorphism(pb.xmod, x)) << name;
  }
}

// Pulling an inclusion back gives the preimage, which is normal.
TEST(PullbackProperties, PreimageOfNormalSubrack) {
  Index checked = 0;
  for (const auto& [rname, r] : c::racks(3)) {
    if (r.size() > 6) continue;
    for (const auto& n : c::normal_subracks(r)) {
      const auto x = inclusion_xmod(r, n);
      for (const auto& [sname, s] : c::racks(3)) {
        if (s.size() > 6) continue;
        for (const auto& f : enumerate_rack_homs(s, r).maps) {
          const auto phi = RackHom::make(s, r, f);
          const auto pre = preimage(phi, n);
          EXPECT_TRUE(is_normal_subrack(pre, s).normal) << rname << " " << sname;
          const auto pb = pullback_xmod(x, phi);
          auto image = pb.xmod.boundary().map();
          std::sort(image.begin(), image.end());
          EXPECT_EQ(image, pre);
          EXPECT_TRUE(is_isomorphic(pb.xmod.domain(), sub(s, pre)));
          ++checked;
        }
      }
    }
  }
  EXPECT_GE(checked, 5u);
}

// N = R with φ surjective: the construction gives the graph of φ, a copy of
// S, not R × S.
TEST(PullbackProperties, FullSubrackAlongSurjectionGivesGraph) {
  const auto x = identity_xmod(c::cz2());
  const auto phi = c::sgn_rack();
  const auto pb = pullback_xmod(x, phi);
  EXPECT_EQ(pb.pairs.size(), c::cs3().size());
  EXPECT_NE(pb.pairs.size(), c::cz2().size() * c::cs3().size());
  for (const auto& [p, s] : pb.pairs) EXPECT_EQ(p, phi(s));
  EXPECT_TRUE(is_isomorphic(pb.xmod.domain(), c::cs3()));
  EXPECT_FALSE(is_isomorphic(pb.xmod.domain(), product_rack(c::cz2(), c::cs3())));
}

// -- mediating morphism ------------------------------------------------------

TEST(Mediating, SelfIsIdentity) {
  const auto pb = pullback_xmod(c::a3r_in_cs3(), tau_rack());
  const auto m = mediating_morphism(pb, pb.projection());
  EXPECT_EQ(m.f1(), RackHom::identity(pb.xmod.domain()).map());
}

TEST(Mediating, SingletonMapsToBasepoint) {
  const auto pb = pullback_xmod(c::a3r_in_cs3(), RackHom::identity(c::cs3()));
  const auto one = inclusion_xmod(c::cs3(), {0});
  const auto m = mediating_morphism(pb, RackHom::make(one.domain(), pb.source.domain(), {0}), one);
  EXPECT_EQ(m.f1(), std::vector<Index>{pb.xmod.domain().basepoint()});
}

TEST(Mediating, DiagonalForIdentity) {
  const auto a3 = c::a3r_in_cs3();
  const auto pb = pullback_xmod(a3, RackHom::identity(c::cs3()));
  const auto m = mediating_morphism(pb, RackHom::identity(a3.domain()), a3);
  for (Index x = 0; x < m.f1().size(); ++x)
    EXPECT_EQ(pb.pairs[m.f1()[x]], (std::pair<Index, Index>{x, a3.boundary()(x)}));
}

TEST(Mediating, RejectsNonMorphism) {
  const auto a3 = c::a3r_in_cs3();
  const auto pb = pullback_xmod(a3, RackHom::identity(c::cs3()));
  // swapping the two 3-cycles is a rack automorphism of A3r but breaks the boundary square
  try {
    mediating_morphism(pb, RackHom::make(a3.domain(), a3.domain(), {0, 2, 1}), a3);
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_EQ(e.axiom(), "NotAMorphism");
  }
}

// -- universal property ------------------------------------------------------

TEST(Universal, KernelInstance) {
  const auto pb = pullback_xmod(c::basepoint_in_cz2(), c::sgn_rack());
  const auto cert = verify_universal_property(pb, c::kernel_test());
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.count, 1u);
  EXPECT_EQ(cert.search_space, 27u);
}

TEST(Universal, AlongIdentity) {
  const auto a3 = c::a3r_in_cs3();
  const auto pb = pullback_xmod(a3, RackHom::identity(c::cs3()));
  const auto test =
      RackXModMorphism::make(a3, a3, RackHom::identity(a3.domain()).map(),
                             RackHom::identity(c::cs3()).map());
  const auto cert = verify_universal_property(pb, test);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.witnesses.front(), mediating_morphism(pb, test).f1());
}

TEST(Universal, CorpusSweep) {
  const auto start = std::chrono::steady_clock::now();
  Index instances = 0;
  for (const auto& pc : c::pullback_cases()) {
    const auto pb = pullback_xmod(pc.xmod, pc.phi);
    for (const auto& t : c::universal_tests(pb, 4)) {
      const auto cert = verify_universal_property(pb, t);
      ASSERT_EQ(cert.count, 1u) << pc.name;
      ASSERT_TRUE(cert.passed) << pc.name;
      EXPECT_EQ(cert.search_space,
                static_cast<std::uint64_t>(std::pow(pb.xmod.domain().size(), t.src().domain().size())));
      ++instances;
    }
  }
  EXPECT_GE(instances, 20u);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
}

TEST(Universal, SearchSpaceCeiling) {
  EXPECT_THROW(detail::checked_power(10, 9), AxiomViolation);
  EXPECT_EQ(detail::checked_power(6, 6), 46656u);
}

// -- i* on morphisms ---------------------------------------------------------

TEST(PullbackFunctor, Identity) {
  for (const auto& pc : c::pullback_cases(1, 2)) {
    const auto m = pullback_on_morphisms(RackXModMorphism::identity(pc.xmod), pc.phi);
    EXPECT_EQ(m.f1(), RackHom::identity(m.src().domain()).map()) << pc.name;
  }
}

TEST(PullbackFunctor, SingletonIntoA3) {
  const auto cs3 = c::cs3();
  const auto id = RackHom::identity(cs3);
  const auto one = inclusion_xmod(cs3, {0});
  const auto a3 = c::a3r_in_cs3();
  const auto m = pullback_on_morphisms(RackXModMorphism::make(one, a3, {0}, id.map()), id);
  EXPECT_EQ(m.src().domain().size(), 1u);
  EXPECT_EQ(m.dst().domain().size(), 3u);
  EXPECT_EQ(m.f1(), std::vector<Index>{m.dst().domain().basepoint()});
}

TEST(PullbackFunctor, Composition) {
  const auto cs3 = c::cs3();
  const auto id = RackHom::identity(cs3).map();
  const auto one = inclusion_xmod(cs3, {0});
  const auto a3 = c::a3r_in_cs3();
  const auto all = identity_xmod(cs3);
  const auto m1 = RackXModMorphism::make(one, a3, {0}, id);
  const auto m2 = RackXModMorphism::make(a3, all, a3.boundary().map(), id);
  for (const auto& phi : {RackHom::identity(cs3), tau_rack(), conj_hom(c::psi())}) {
    const auto lhs = pullback_on_morphisms(compose(m2, m1), phi);
    const auto rhs = compose(pullback_on_morphisms(m2, phi), pullback_on_morphisms(m1, phi));
    EXPECT_EQ(lhs.f1(), rhs.f1());
    EXPECT_EQ(lhs.f0(), rhs.f0());
  }
}

TEST(PullbackFunctor, RejectsMorphismNotOverIdentity) {
  const auto a3 = c::a3r_in_cs3();
  try {
    pullback_on_morphisms(RackXModMorphism::make(a3, c::basepoint_in_cz2(), {0, 0, 0},
                                                 c::sgn_rack().map()),
                          RackHom::identity(c::cs3()));
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_EQ(e.axiom(), "NotOverIdentity");
  }
}

// -- group side --------------------------------------------------------------

TEST(GroupPullback, KernelOfSign) {
  const auto pb = group_pullback_xmod(inclusion_group_xmod(c::z(2), {0}), c::sgn());
  EXPECT_EQ(pb.xmod.domain().size(), 3u);
  EXPECT_EQ(pb.xmod.boundary().map(), c::a3_subset());
}

TEST(GroupPullback, GraphOfPsi) {
  const auto pb = group_pullback_xmod(c::a3_in_s3(), c::psi());
  EXPECT_EQ(pb.xmod.domain().size(), 3u);
  EXPECT_EQ(pb.xmod.domain().mul(1, 1), 2u);
}

TEST(GroupPullback, AlongIdentity) {
  for (const auto& [name, g] : c::group_xmods()) {
    const auto pb = group_pullback_xmod(g, GroupHom::identity(g.codomain()));
    EXPECT_EQ(pb.xmod.domain().size(), g.domain().size()) << name;
    EXPECT_EQ(pb.phi_prime.map().size(), g.domain().size());
  }
}

TEST(GroupPullback, UniversalProperty) {
  for (const auto& gc : c::group_pullback_cases()) {
    const auto pb = group_pullback_xmod(gc.xmod, gc.phi);
    const auto cert = verify_group_universal_property(pb, pb.projection());
    EXPECT_TRUE(cert.passed) << gc.name;
    EXPECT_EQ(cert.count, 1u);
  }
}

// -- Conj_X and pullbacks ----------------------------------------------------

TEST(ConjPreservation, A3AlongPsi) {
  const auto rep = check_conj_preserves_pullback(c::a3_in_s3(), c::psi());
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.conj_of_pullback.domain().size(), 3u);
  EXPECT_EQ(rep.pullback_of_conj.domain().size(), 3u);
}

TEST(ConjPreservation, KernelOfSign) {
  const auto rep = check_conj_preserves_pullback(inclusion_group_xmod(c::z(2), {0}), c::sgn());
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(is_isomorphic(rep.pullback_of_conj.domain(), c::a3r_in_cs3().domain()));
}

TEST(ConjPreservation, AlongIdentity) {
  const auto g = c::a3_in_s3();
  const auto rep = check_conj_preserves_pullback(g, GroupHom::identity(c::s3()));
  EXPECT_TRUE(find_xmod_isomorphism(rep.conj_of_pullback, conj_xmod(g)));
}

TEST(ConjPreservation, EveryGroupCase) {
  for (const auto& gc : c::group_pullback_cases()) {
    const auto rep = check_conj_preserves_pullback(gc.xmod, gc.phi);
    ASSERT_TRUE(rep.isomorphism && rep.inverse) << gc.name;
    const auto there = compose(*rep.inverse, *rep.isomorphism);
    EXPECT_EQ(there.f1(), RackHom::identity(rep.conj_of_pullback.domain()).map());
    EXPECT_EQ(there.f0(), RackHom::identity(rep.conj_of_pullback.codomain()).map());
  }
}
