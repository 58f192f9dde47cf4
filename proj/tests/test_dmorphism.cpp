#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "prokit/dmorphism.hpp"
#include "prokit/error.hpp"
#include "prokit/fuzz.hpp"

using namespace prokit;
using oracle::nat;

namespace {

DelaySystem strict_seq(std::size_t length = 24, std::uint64_t seed = 0) {
  PlantSpec s;
  s.length = length;
  s.seed = seed;
  return gen_strict_sequence(s);
}

// Constant two-point sequence with identity bonds.
DelaySystem two_point_constant() {
  const Obj x = Obj::finset_of_size(2);
  return DelaySystem(
      std::make_shared<NatPoset>(), [x](const IndexElem&) { return x; },
      [x](const IndexElem&, const IndexElem&) { return identity(x); });
}

// Components f_b = bond(b, f(b)) for an index map with f(b) >= b.
DelayMorphism shift(const DelaySystem& x, std::function<std::size_t(std::size_t)> f) {
  return DelayMorphism(
      x, x, [f](const IndexElem& b) { return nat(f(b.rank)); },
      [x, f](const IndexElem& b) { return x.bond(b, nat(f(b.rank))); });
}

std::shared_ptr<const FinitePoset> point() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"*"}, std::vector<std::pair<std::size_t, std::size_t>>{});
}

DelayMorphism constant_into(const DelaySystem& x, const DelaySystem& y, std::uint32_t value) {
  return DelayMorphism(
      x, y, [](const IndexElem& b) { return b; },
      [x, y, value](const IndexElem& b) {
        const Obj d = x.object_at(b);
        return Mor::finset_map(d, y.object_at(b), std::vector<std::uint32_t>(d.size(), value));
      });
}

bool squares_on_chain(const DelayMorphism& m, const std::vector<IndexElem>& chain) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i; j < chain.size(); ++j) {
      const auto& c = chain[i];
      const auto& d = chain[j];
      if (!mor_eq(compose(m.target().bond(c, d), m.component(d)), compose(m.component(c), m.source().bond(c, d))))
        return false;
    }
  return true;
}

}  // namespace

TEST(DelayMorphismCheck, IdentityOnStrictSequence) {
  const auto x = strict_seq();
  const auto v = check_delay_morphism(DelayMorphism::identity(x), Bounds(24, 12));
  ASSERT_TRUE(v.holds);
  for (std::size_t b = 0; b <= 12; ++b) {
    const auto* w = v.witness_for(nat(b));
    ASSERT_NE(w, nullptr);
    EXPECT_EQ((*w)[0], nat(b));
    EXPECT_EQ((*w)[1], nat(b));
  }
}

TEST(DelayMorphismCheck, ShiftedComponentsAbsorbed) {
  const auto x = strict_seq();
  const auto m = shift(x, [](std::size_t b) { return b + 2; });
  EXPECT_TRUE(check_delay_morphism(m, source_covering(m, Bounds(24, 12))).holds);
}

TEST(DelayMorphismCheck, AlternatingConstantsFailCofinally) {
  const auto x = strict_seq();
  const auto y = two_point_constant();
  const DelayMorphism m(
      x, y, [](const IndexElem& b) { return b; },
      [x, y](const IndexElem& b) {
        const Obj d = x.object_at(b);
        return Mor::finset_map(d, y.object_at(b), std::vector<std::uint32_t>(d.size(), b.rank % 2));
      });
  const auto v = check_delay_morphism(m, Bounds(20, 10));
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.exact());
}

TEST(DelayMorphismCheck, BoundaryMismatchDetected) {
  const auto x = strict_seq();
  const DelayMorphism m(
      x, x, [](const IndexElem& b) { return b; },
      [](const IndexElem&) { return identity(Obj::finset_of_size(9)); });
  EXPECT_FALSE(check_boundaries(m, Bounds(8)).holds);
}

TEST(DEquiv, ReflexiveWithTrivialWitness) {
  const auto m = shift(strict_seq(), [](std::size_t b) { return b + 1; });
  const auto v = d_equiv(m, m, Bounds(20, 10));
  ASSERT_TRUE(v.holds);
  EXPECT_EQ(v.witness_for(nat(4))->front(), nat(5));
}

TEST(DEquiv, ConstantsDifferExactly) {
  const Obj two = Obj::finset_of_size(2);
  const auto x = make_finite_system(point(), {two}, {});
  const auto y = make_finite_system(point(), {two}, {});
  const auto v = d_equiv(constant_into(x, y, 0), constant_into(x, y, 1), Bounds(4));
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.exact());
}

TEST(DEquiv, MismatchedEndsRejected) {
  const auto x = strict_seq(), y = strict_seq();
  EXPECT_THROW(d_equiv(DelayMorphism::identity(x), DelayMorphism::identity(y), Bounds(8)), PreconditionError);
}

TEST(DEquiv, ShiftsOfTheSameMorphismAgree) {
  const auto x = strict_seq();
  EXPECT_TRUE(d_equiv(shift(x, [](std::size_t b) { return b; }), shift(x, [](std::size_t b) { return b + 3; }),
                      Bounds(24, 12))
                  .holds);
}

TEST(Compose, UnitLaws) {
  const auto x = strict_seq();
  const auto m = shift(x, [](std::size_t b) { return b + 2; });
  const auto id = DelayMorphism::identity(x);
  EXPECT_TRUE(d_equiv(compose(id, m), m, Bounds(24, 12)).holds);
  EXPECT_TRUE(d_equiv(compose(m, id), m, Bounds(24, 12)).holds);
}

TEST(Compose, MismatchThrows) {
  const auto x = strict_seq(), y = strict_seq();
  EXPECT_THROW(compose(DelayMorphism::identity(x), DelayMorphism::identity(y)), CompositionError);
}

TEST(Compose, CompositeOfShiftsIsADelayMorphism) {
  const auto x = strict_seq(32);
  const auto m1 = shift(x, [](std::size_t b) { return b + 1; });
  const auto m2 = shift(x, [](std::size_t b) { return b + (b % 3); });
  const auto c = compose(m2, m1);
  EXPECT_EQ(c.index_map(nat(4)), nat(6));
  EXPECT_TRUE(check_delay_morphism(c, source_covering(c, Bounds(32, 12))).holds);
}

TEST(Compose, PlantedDelaySystemsComposeToDelayMorphisms) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PlantSpec s;
    s.length = 32;
    s.seed = seed;
    s.delay_profile = random_profile(32, 4, seed);
    const auto x = gen_planted_sequence(s);
    const auto d = s.delay_profile;
    // Components bond(b, b*) with b* the commutation index of b.
    const auto m = shift(x, [d](std::size_t b) { return b < d.size() ? d[b] : b; });
    const auto c = compose(m, m);
    EXPECT_TRUE(check_delay_morphism(c, source_covering(c, Bounds(36, 12))).holds) << seed;
  }
}

TEST(Special, AlreadyIncreasing) {
  const auto x = strict_seq();
  const auto m = shift(x, [](std::size_t b) { return b + 1; });
  EXPECT_TRUE(check_increasing(m, Bounds(20, 10)).holds);
  const auto sp = make_special(m, Bounds(24, 10));
  EXPECT_TRUE(sp.increasing.holds);
  EXPECT_TRUE(sp.special.holds);
  EXPECT_TRUE(sp.equivalent.holds);
  for (std::size_t b = 0; b <= 8; ++b) EXPECT_GE(sp.morphism.index_map(nat(b)).rank, b + 1);
}

TEST(Special, NonMonotoneIndexMapIsRaised) {
  const auto x = strict_seq(32);
  const auto m = shift(x, [](std::size_t b) { return b == 0 ? 5 : b == 1 ? 2 : b + 1; });
  EXPECT_FALSE(check_increasing(m, Bounds(20, 10)).holds);
  const auto sp = make_special(m, Bounds(32, 12));
  EXPECT_TRUE(sp.increasing.holds);
  EXPECT_TRUE(sp.equivalent.holds);
  std::size_t prev = 0;
  for (std::size_t b = 0; b <= 10; ++b) {
    const auto fb = sp.morphism.index_map(nat(b)).rank;
    EXPECT_GE(fb, m.index_map(nat(b)).rank);
    EXPECT_GE(fb, prev);
    prev = fb;
    EXPECT_TRUE(mor_eq(sp.morphism.component(nat(b)),
                       compose(m.component(nat(b)), x.bond(m.index_map(nat(b)), nat(fb)))));
  }
  EXPECT_GE(sp.morphism.index_map(nat(1)).rank, 5u);
}

TEST(Special, PartitionMorphismsBecomeIncreasingAndSpecial) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 25; ++t) {
    const auto x = random_partition_system(rng, 5, 6);
    const auto y = random_partition_system(rng, 5, 6);
    const auto m = partition_morphism(x, y, random_point_map(rng, x.points, y.points), rng);
    const auto sp = make_special(m, Bounds(64));
    EXPECT_TRUE(sp.increasing.holds && sp.increasing.exact());
    EXPECT_TRUE(sp.special.holds);
    EXPECT_TRUE(sp.equivalent.holds && sp.equivalent.exact());
    EXPECT_TRUE(oracle::dequiv_at_top(m, sp.morphism));
  }
}

TEST(Level, IdentityIndexPairCount) {
  const auto x = strict_seq(12);
  const auto pkg = level_reindex(DelayMorphism::identity(x), Bounds(12, 6));
  std::size_t count = 0;
  for (const auto& c : pkg.index->window(2)) count += pkg.index->first(c).rank <= 2 && pkg.index->second(c).rank <= 2;
  EXPECT_EQ(count, 6u);
  for (const auto& c : pkg.index->window(6)) EXPECT_LE(pkg.index->second(c).rank, pkg.index->first(c).rank);
}

TEST(Level, RejectsNonIncreasing) {
  const auto x = strict_seq();
  EXPECT_THROW(level_reindex(shift(x, [](std::size_t b) { return b == 0 ? 5 : b + 1; }), Bounds(20, 10)),
               PreconditionError);
}

TEST(Level, SquareHoldsOnPartitionSystems) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_partition_system(rng, 4, 5);
    const auto y = random_partition_system(rng, 4, 5);
    const auto m = partition_morphism(x, y, random_point_map(rng, x.points, y.points), rng);
    const auto sp = make_special(m, Bounds(64));
    const auto pkg = level_reindex(sp.morphism, Bounds(64));
    EXPECT_TRUE(pkg.square.holds && pkg.square.exact());
    EXPECT_TRUE(is_directed(*pkg.index, Bounds(64)).holds);
    EXPECT_TRUE(is_cofinite(*pkg.index, Bounds(64)).holds);
    EXPECT_TRUE(check_antisymmetric(*pkg.index, 64).holds);
    for (const auto& c : pkg.index->window(64))
      for (const auto& d : pkg.index->window(64))
        EXPECT_EQ(pkg.index->leq(c, d), x.index->leq(pkg.index->first(c), pkg.index->first(d)) &&
                                            y.index->leq(pkg.index->second(c), pkg.index->second(d)));
  }
}

TEST(IsoPair, NonSurjectiveComponentHasNoInverse) {
  const Obj two = Obj::finset_of_size(2), three = Obj::finset_of_size(3);
  const auto x = make_finite_system(point(), {two}, {});
  const auto y = make_finite_system(point(), {three}, {});
  const DelayMorphism m(
      x, y, [](const IndexElem& b) { return b; }, [two, three](const IndexElem&) { return Mor::finset_map(two, three, {0, 1}); });
  EXPECT_FALSE(oracle::finset_inverse(m.component(point()->elem(0))));
  // Every candidate w: Y -> X over the one-point index.
  for (std::uint32_t code = 0; code < 8; ++code) {
    const std::vector<std::uint32_t> img{code & 1, code >> 1 & 1, code >> 2 & 1};
    const DelayMorphism w(
        y, x, [](const IndexElem& b) { return b; }, [=](const IndexElem&) { return Mor::finset_map(three, two, img); });
    const auto v = verify_iso_pair(m, w, Bounds(4));
    EXPECT_FALSE(v.holds);
    EXPECT_TRUE(v.exact());
  }
}

TEST(IsoPair, MismatchedEndsThrow) {
  const auto x = strict_seq(), y = strict_seq();
  EXPECT_THROW(verify_iso_pair(DelayMorphism::identity(x), DelayMorphism::identity(y), Bounds(8)), CompositionError);
}

TEST(ExtractIso, StrictLevelIsoKeepsFullChain) {
  const auto x = strict_seq(20);
  const auto id = DelayMorphism::identity(x);
  const auto e = extract_pro_iso(id, id, Bounds(20, 10));
  ASSERT_GE(e.chain.size(), 11u);
  for (std::size_t i = 0; i < e.chain.size(); ++i) EXPECT_EQ(e.chain[i], nat(i));
  EXPECT_TRUE(e.strict_source.holds && e.strict_target.holds && e.squares.holds);
  ASSERT_TRUE(e.iso);
  EXPECT_TRUE(e.iso->holds);
}

TEST(ExtractIso, PlantedMorphismDelaySkipsEarlyIndices) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PlantSpec s;
    s.length = 32;
    s.seed = seed;
    s.morphism_delay = 4;
    const auto p = gen_planted_level_iso(s);
    EXPECT_FALSE(check_squares_strict(p.morphism, Bounds(32)).holds);
    const auto e = extract_pro_iso(p.morphism, p.inverse, Bounds(40, 20));
    ASSERT_GE(e.chain.size(), 2u);
    EXPECT_GE(e.chain[1].rank, 4u) << seed;
    for (std::size_t i = 2; i < e.chain.size(); ++i) EXPECT_GT(e.chain[i], e.chain[i - 1]);
    EXPECT_TRUE(squares_on_chain(p.morphism, e.chain)) << seed;
    std::vector<std::size_t> r;
    for (const auto& c : e.chain) r.push_back(c.rank);
    EXPECT_TRUE(oracle::strict_on_chain(p.source, r));
    EXPECT_TRUE(oracle::strict_on_chain(p.target, r));
    EXPECT_TRUE(e.squares.holds && e.strict_source.holds && e.strict_target.holds);
    ASSERT_TRUE(e.iso);
    EXPECT_TRUE(e.iso->holds);
  }
}

TEST(ExtractIso, MorphismDelaysUpToEight) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    PlantSpec s;
    s.length = 40;
    s.seed = seed;
    s.morphism_delay = seed % 9;
    const auto p = gen_planted_level_iso(s);
    EXPECT_EQ(check_squares_strict(p.morphism, Bounds(40)).holds, s.morphism_delay < 2) << seed;
    const auto e = extract_pro_iso(p.morphism, p.inverse, Bounds(48, 24));
    if (e.chain.size() > 1) EXPECT_GE(e.chain[1].rank, s.morphism_delay) << seed;
    EXPECT_TRUE(squares_on_chain(p.morphism, e.chain)) << seed;
    EXPECT_TRUE(e.strict_source.holds && e.strict_target.holds && e.squares.holds) << seed;
    EXPECT_TRUE(e.iso && e.iso->holds) << seed;
  }
}

// d-equivalence laws on finite systems with a maximum, against the evaluation at the top.
TEST(DEquivLaws, AgreesWithTopEvaluationAndCongruence) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    const auto x = random_partition_system(rng, 4, 5);
    const auto y = random_partition_system(rng, 4, 5);
    const auto z = random_partition_system(rng, 4, 5);
    const auto t1 = random_point_map(rng, x.points, y.points);
    const auto t2 = (rng() % 2) ? t1 : random_point_map(rng, x.points, y.points);
    const auto u = random_point_map(rng, y.points, z.points);
    const auto m1 = partition_morphism(x, y, t1, rng), m1b = partition_morphism(x, y, t2, rng);
    const auto m2 = partition_morphism(y, z, u, rng), m2b = partition_morphism(y, z, u, rng);
    const auto v = d_equiv(m1, m1b, Bounds(64));
    EXPECT_TRUE(v.exact());
    EXPECT_EQ(v.holds, oracle::dequiv_at_top(m1, m1b));
    EXPECT_EQ(v.holds, t1 == t2);
    EXPECT_EQ(d_equiv(m1b, m1, Bounds(64)).holds, v.holds);
    EXPECT_TRUE(d_equiv(m2, m2b, Bounds(64)).holds);
    if (v.holds) EXPECT_TRUE(d_equiv(compose(m2, m1), compose(m2b, m1b), Bounds(64)).holds);
  }
}
