#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "prokit/error.hpp"
#include "prokit/fuzz.hpp"
#include "prokit/indexset.hpp"

using namespace prokit;

namespace {

std::shared_ptr<const FinitePoset> chain3() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"1", "2", "3"},
                                       std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}

std::shared_ptr<const FinitePoset> antichain2() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a", "b"},
                                       std::vector<std::pair<std::size_t, std::size_t>>{});
}

std::shared_ptr<const FinitePoset> vee() {  // a <= c, b <= c
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a", "b", "c"},
                                       std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}});
}

}  // namespace

TEST(Window, NatUpToHorizon) {
  const auto w = enumerate_window(NatPoset{}, 3);
  ASSERT_EQ(w.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(w[i], NatPoset::at(i));
}

TEST(Window, FiniteSaturates) {
  const auto p = chain3();
  EXPECT_EQ(enumerate_window(*p, 10).size(), 3u);
  EXPECT_TRUE(p->saturated(10));
  EXPECT_FALSE(NatPoset{}.saturated(1000));
}

TEST(Window, MardesicOfChainHasSeven) {
  const auto m = mardesic(chain3());
  EXPECT_EQ(enumerate_window(*m, 100).size(), 7u);
  EXPECT_EQ(m->cardinality(), std::optional<std::size_t>(7));
}

TEST(Window, EnumerationOrderIsRankThenKey) {
  const NatSquarePoset sq;
  const auto w = sq.window(4);
  EXPECT_EQ(w.size(), 25u);
  for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LT(w[i - 1], w[i]);
}

TEST(Directed, ChainHoldsExactly) {
  const auto v = is_directed(*chain3(), Bounds(10));
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.exact());
}

TEST(Directed, AntichainFailsWithPair) {
  const auto p = antichain2();
  const auto v = is_directed(*p, Bounds(10));
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.exact());
  ASSERT_TRUE(v.counterexample);
  ASSERT_EQ(v.counterexample->elements.size(), 2u);
  EXPECT_EQ(v.counterexample->elements[0], p->elem(0));
  EXPECT_EQ(v.counterexample->elements[1], p->elem(1));
}

TEST(Directed, NatSquareWitnessIsComponentwiseMax) {
  const NatSquarePoset sq;
  const auto v = is_directed(sq, Bounds(5));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.exact());
  std::size_t checked = 0;
  for (const auto& w : v.witnesses) {
    ASSERT_EQ(w.subject.size(), 2u);
    ASSERT_EQ(w.chosen.size(), 1u);
    const auto& x = w.subject[0].key;
    const auto& y = w.subject[1].key;
    EXPECT_EQ(w.chosen[0], NatSquarePoset::at(std::max(x[0], y[0]), std::max(x[1], y[1])));
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Cofinal, EvensInNat) {
  const auto v = is_cofinal(NatPoset{}, Subset::evens(), Bounds(10));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.exact());
}

TEST(Cofinal, SingletonBelowTopFails) {
  const auto p = chain3();
  const auto v = is_cofinal(*p, Subset::of("{2}", {p->elem(1)}), Bounds(10));
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.exact());
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->elements.front(), p->elem(2));
}

TEST(Cofinal, TailInNat) { EXPECT_TRUE(is_cofinal(NatPoset{}, Subset::tail(5), Bounds(20)).holds); }

TEST(Cofinite, NatPredecessorCounts) {
  const NatPoset n;
  EXPECT_TRUE(is_cofinite(n, Bounds(10)).holds);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(n.predecessors(NatPoset::at(k))->size(), k);
}

TEST(Cofinite, MardesicPairHasTwoPredecessors) {
  const auto m = mardesic(std::make_shared<NatPoset>());
  const auto b = m->make({NatPoset::at(0), NatPoset::at(3)});
  const auto pred = m->predecessors(b);
  ASSERT_TRUE(pred);
  ASSERT_EQ(pred->size(), 2u);
  EXPECT_NE(std::find(pred->begin(), pred->end(), m->singleton(NatPoset::at(0))), pred->end());
  EXPECT_NE(std::find(pred->begin(), pred->end(), m->singleton(NatPoset::at(3))), pred->end());
}

TEST(Cofinite, FiniteIsExact) {
  const auto v = is_cofinite(*vee(), Bounds(3));
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.exact());
}

TEST(Cofinite, OpaquePosetUnsupported) {
  struct Opaque final : IndexPoset {
    PosetKind kind() const override { return PosetKind::WindowedInfinite; }
    std::string name() const override { return "opaque"; }
    bool leq(const IndexElem& x, const IndexElem& y) const override { return x.key[0] <= y.key[0]; }
    std::vector<IndexElem> window(std::size_t h) const override { return NatPoset{}.window(h); }
    bool contains(const IndexElem&) const override { return true; }
    bool antisymmetric() const override { return true; }
  };
  EXPECT_THROW(is_cofinite(Opaque{}, Bounds(4)), UnsupportedQuery);
}

TEST(Mardesic, Singleton) {
  const auto p = std::make_shared<FinitePoset>(std::vector<std::string>{"a"},
                                               std::vector<std::pair<std::size_t, std::size_t>>{});
  EXPECT_EQ(mardesic(p)->window(5).size(), 1u);
}

TEST(Mardesic, VeeExcludesIncomparablePair) {
  const auto p = vee();
  const auto m = mardesic(p);
  EXPECT_EQ(m->window(10).size(), 6u);
  EXPECT_THROW(m->make({p->elem(0), p->elem(1)}), PreconditionError);
  EXPECT_EQ(m->max_of(m->make({p->elem(0), p->elem(1), p->elem(2)})), p->elem(2));
}

TEST(Mardesic, RejectsNonAntisymmetric) {
  const auto p = std::make_shared<FinitePoset>(std::vector<std::string>{"x", "y"},
                                               std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  EXPECT_FALSE(p->antisymmetric());
  EXPECT_FALSE(check_antisymmetric(*p, 5).holds);
  EXPECT_THROW(mardesic(p), PreconditionError);
}

TEST(Mardesic, WindowOverNatMatchesSubsetsWithRankBound) {
  const auto m = mardesic(std::make_shared<NatPoset>());
  // Subsets of {0..h} are all chains, so every nonempty one has a maximum.
  for (std::size_t h = 0; h < 6; ++h) EXPECT_EQ(m->window(h).size(), (std::size_t{1} << (h + 1)) - 1);
}

TEST(Mardesic, RandomPosetsMatchBruteCount) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const auto p = random_directed_poset(rng, 6);
    const auto m = mardesic(p);
    const auto w = m->window(64);
    EXPECT_EQ(w.size(), oracle::subsets_with_max(*p));
    EXPECT_TRUE(is_directed(*m, Bounds(64)).holds);
    EXPECT_TRUE(check_antisymmetric(*m, 64).holds);
    EXPECT_TRUE(is_cofinite(*m, Bounds(64)).holds);
    for (const auto& x : w)
      for (const auto& y : w)
        if (m->leq(x, y)) EXPECT_TRUE(p->leq(m->max_of(x), m->max_of(y)));
  }
}

TEST(UpperBound, NatIsMax) { EXPECT_EQ(upper_bound(NatPoset{}, NatPoset::at(3), NatPoset::at(5), 10), NatPoset::at(5)); }

TEST(UpperBound, AntichainAbsent) {
  const auto p = antichain2();
  EXPECT_FALSE(upper_bound(*p, p->elem(0), p->elem(1), 10));
}

TEST(UpperBound, MardesicUnionWhenItHasMax) {
  const auto m = mardesic(chain3());
  const auto base = chain3();
  const auto ub = upper_bound(*m, m->singleton(base->elem(0)), m->singleton(base->elem(1)), 10);
  ASSERT_TRUE(ub);
  EXPECT_EQ(*ub, m->make({base->elem(0), base->elem(1)}));
}

TEST(UpperBound, MardesicFirstSupersetWhenUnionLacksMax) {
  const auto p = vee();
  const auto m = mardesic(p);
  const auto ub = upper_bound(*m, m->singleton(p->elem(0)), m->singleton(p->elem(1)), 10);
  ASSERT_TRUE(ub);
  EXPECT_EQ(*ub, m->make({p->elem(0), p->elem(1), p->elem(2)}));
}

TEST(SubsetPoset, InheritsOrderAndRank) {
  const auto base = std::make_shared<NatPoset>();
  const SubsetPoset ev(base, Subset::evens());
  const auto w = ev.window(6);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[3], NatPoset::at(6));
  EXPECT_EQ(ev.predecessors(NatPoset::at(6))->size(), 3u);
}

TEST(PairPoset, CountOverIdentityOnSmallSquare) {
  const auto n = std::make_shared<NatPoset>();
  const PairPoset c(n, n, [](const IndexElem& b) { return b; });
  std::size_t count = 0;
  for (const auto& x : c.window(2)) count += c.first(x).rank <= 2 && c.second(x).rank <= 2;
  EXPECT_EQ(count, 6u);
}
