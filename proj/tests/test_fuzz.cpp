#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prokit/error.hpp"
#include "prokit/fuzz.hpp"

using namespace prokit;
using oracle::nat;

namespace {

PlantSpec spec(std::size_t length, std::uint64_t seed, Backend backend = Backend::FinSet) {
  PlantSpec s;
  s.length = length;
  s.seed = seed;
  s.backend = backend;
  return s;
}

bool same_on_window(const DelaySystem& x, const DelaySystem& y, std::size_t h) {
  for (std::size_t a = 0; a <= h; ++a) {
    if (!(x.object_at(nat(a)) == y.object_at(nat(a)))) return false;
    for (std::size_t b = a; b <= h; ++b)
      if (!mor_eq(x.bond(nat(a), nat(b)), y.bond(nat(a), nat(b)))) return false;
  }
  return true;
}

}  // namespace

class Backends : public ::testing::TestWithParam<Backend> {};

TEST_P(Backends, StrictSequencesAreStrict) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x = gen_strict_sequence(spec(16, seed, GetParam()));
    EXPECT_TRUE(check_strict(x, Bounds(20)).holds);
    EXPECT_TRUE(oracle::strict(x, 20));
  }
}

TEST_P(Backends, SameSeedSameSystem) {
  auto s = spec(20, 42, GetParam());
  s.delay_profile = random_profile(20, 6, 42);
  EXPECT_TRUE(same_on_window(gen_planted_sequence(s), gen_planted_sequence(s), 24));
  auto t = s;
  t.seed = 43;
  EXPECT_FALSE(same_on_window(gen_planted_sequence(s), gen_planted_sequence(t), 24));
}

TEST_P(Backends, LengthOneIsRudimentary) {
  const auto x = gen_strict_sequence(spec(1, 3, GetParam()));
  for (std::size_t a = 0; a < 6; ++a) {
    EXPECT_EQ(x.object_at(nat(a)), x.object_at(nat(0)));
    for (std::size_t b = a; b < 6; ++b) EXPECT_TRUE(mor_eq(x.bond(nat(a), nat(b)), identity(x.object_at(nat(0)))));
  }
}

TEST_P(Backends, IdentityProfileEqualsStrict) {
  auto s = spec(16, 8, GetParam());
  for (std::size_t a = 0; a < 16; ++a) s.delay_profile.push_back(a);
  auto t = s;
  t.delay_profile.clear();
  EXPECT_TRUE(same_on_window(gen_planted_sequence(s), gen_strict_sequence(t), 20));
}

TEST_P(Backends, DelayFiveAtOne) {
  auto s = spec(16, 5, GetParam());
  for (std::size_t a = 0; a < 16; ++a) s.delay_profile.push_back(a);
  s.delay_profile[1] = 5;
  const auto x = gen_planted_sequence(s);
  EXPECT_EQ(oracle_min_commutation(x, nat(1), 20), nat(5));
  EXPECT_EQ(oracle::nat_commutation(x, 1, 20), std::optional<std::size_t>(5));
}

TEST_P(Backends, PlantSoundness) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto s = spec(32, seed, GetParam());
    s.delay_profile = random_profile(32, 8, seed);
    const auto x = gen_planted_sequence(s);
    EXPECT_TRUE(check_wellformed(x, Bounds(36)).holds);
    const auto report = check_delay(x, Bounds(36, 18));
    EXPECT_TRUE(report.holds());
    for (std::size_t a = 0; a <= 18; ++a) {
      const auto o = oracle_min_commutation(x, nat(a), 36);
      ASSERT_TRUE(o) << seed << " " << a;
      EXPECT_EQ(o->rank, s.delay_profile[a]) << seed << " " << a;
      EXPECT_EQ(report.find(nat(a))->witness, o) << seed << " " << a;
      EXPECT_EQ(oracle::nat_commutation(x, a, 36), std::optional<std::size_t>(s.delay_profile[a]));
    }
  }
}

TEST_P(Backends, NoDisagreementsOnASmallRun) {
  FuzzOptions o;
  o.seeds = 10;
  o.length = 32;
  o.backend = GetParam();
  o.horizon = 36;
  o.probe = 18;
  const auto r = run_fuzz(o);
  EXPECT_EQ(r.seeds_run, 10u);
  EXPECT_GT(r.comparisons, 0u);
  EXPECT_TRUE(r.disagreements.empty());
}

TEST_P(Backends, InjectedFaultIsCaught) {
  FuzzOptions o;
  o.seeds = 3;
  o.length = 24;
  o.backend = GetParam();
  o.horizon = 28;
  o.probe = 14;
  o.inject_fault = true;
  EXPECT_FALSE(run_fuzz(o).disagreements.empty());
}

INSTANTIATE_TEST_SUITE_P(All, Backends, ::testing::Values(Backend::FinSet, Backend::MatMod),
                         [](const auto& info) { return to_string(info.param); });

TEST(Oracle, StrictReturnsSelf) {
  const auto x = gen_strict_sequence(spec(16, 1));
  for (std::size_t a = 0; a < 10; ++a) EXPECT_EQ(oracle_min_commutation(x, nat(a), 16), nat(a));
}

TEST(Oracle, AdversarialAbsent) {
  for (std::size_t h : {3u, 8u, 17u, 40u}) EXPECT_FALSE(oracle_min_commutation(gen_adversarial_sequence(), nat(0), h));
}

TEST(Oracle, StepProfileExtraction) {
  auto s = spec(40, 6);
  s.delay_profile = step_profile(40, 2);
  const auto x = gen_planted_sequence(s);
  const auto e = commutative_extract(x, Bounds(44, 22), nat(1));
  ASSERT_GE(e.chain.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(e.chain[k], nat(1 + 3 * k));
}

TEST(Validate, RejectsBadSpecs) {
  auto s = spec(10, 0);
  s.delay_profile = std::vector<std::size_t>(9, 0);
  EXPECT_THROW(validate(s), GenerationError);
  s.delay_profile = {0, 2, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_THROW(validate(s), GenerationError);  // a + 1
  s.delay_profile = {0, 1, 2, 3, 4, 5, 6, 7, 8, 10};
  EXPECT_THROW(validate(s), GenerationError);  // past the end
  auto t = spec(10, 0);
  t.min_points = 1;
  EXPECT_THROW(validate(t), GenerationError);
  auto u = spec(0, 0);
  EXPECT_THROW(validate(u), GenerationError);
  EXPECT_THROW(step_profile(10, 1), GenerationError);
}

TEST(Profiles, RandomProfileIsValidAndSeeded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_profile(48, 8, seed);
    ASSERT_EQ(p.size(), 48u);
    for (std::size_t a = 0; a < p.size(); ++a) {
      EXPECT_TRUE(p[a] == a || (p[a] >= a + 2 && p[a] <= a + 8 && p[a] < 48));
    }
    EXPECT_EQ(p, random_profile(48, 8, seed));
  }
}

TEST(LevelIso, ZeroDelayIsStrict) {
  auto s = spec(24, 2);
  const auto p = gen_planted_level_iso(s);
  EXPECT_TRUE(check_squares_strict(p.morphism, Bounds(24)).holds);
  EXPECT_TRUE(check_strict(p.source, Bounds(24)).holds);
  EXPECT_TRUE(check_strict(p.target, Bounds(24)).holds);
  EXPECT_TRUE(verify_iso_pair(p.morphism, p.inverse, Bounds(24, 12)).holds);
}

TEST(LevelIso, ComponentsAreInvertible) {
  auto s = spec(24, 9);
  s.morphism_delay = 6;
  const auto p = gen_planted_level_iso(s);
  for (std::size_t n = 0; n < 24; ++n) {
    const auto f = p.morphism.component(nat(n)), g = p.inverse.component(nat(n));
    EXPECT_TRUE(mor_eq(compose(g, f), identity(f.dom())));
    EXPECT_TRUE(mor_eq(compose(f, g), identity(f.cod())));
  }
  EXPECT_TRUE(verify_iso_pair(p.morphism, p.inverse, Bounds(32, 16)).holds);
}

TEST(LevelIso, EarlySquareFailsLateSquaresHold) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = spec(20, seed);
    s.morphism_delay = 2 + seed % 7;
    const auto p = gen_planted_level_iso(s);
    const auto& m = p.morphism;
    auto square = [&](std::size_t c, std::size_t d) {
      return mor_eq(compose(m.target().bond(nat(c), nat(d)), m.component(nat(d))),
                    compose(m.component(nat(c)), m.source().bond(nat(c), nat(d))));
    };
    const auto depth = s.morphism_delay;
    EXPECT_FALSE(square(0, depth - 1)) << seed;
    for (std::size_t c = 0; c < 20; ++c)
      for (std::size_t d = std::max(c, depth); d < 24; ++d) EXPECT_TRUE(square(c, d)) << seed << " " << c << " " << d;
  }
}

TEST(LevelIso, MatModUnsupported) {
  EXPECT_THROW(gen_planted_level_iso(spec(8, 0, Backend::MatMod)), GenerationError);
}

TEST(Finite, RandomPosetsAreDirectedWithTopLast) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_directed_poset(rng, 5);
    const auto n = p->labels().size();
    ASSERT_GE(n, 1u);
    ASSERT_LE(n, 5u);
    EXPECT_TRUE(p->antisymmetric());
    EXPECT_TRUE(is_directed(*p, Bounds(16)).holds);
    EXPECT_EQ(oracle::maximum(*p), p->elem(n - 1));
  }
}

TEST(Finite, PartitionSystemsAreStrictAndDiscreteAtTop) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto ps = random_partition_system(rng, 5, 6);
    EXPECT_TRUE(check_wellformed(ps.system, Bounds(16)).holds);
    EXPECT_TRUE(oracle::strict(ps.system, 16));
    const auto top = *oracle::maximum(*ps.index);
    EXPECT_EQ(ps.system.object_at(top).size(), ps.points);
  }
}
