#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "prokit/document.hpp"
#include "prokit/error.hpp"

using namespace prokit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path corpus() { return fs::path(PROKIT_CORPUS); }

bool is_morphism_doc(const std::string& text) { return text.find("\"morphism\"") != std::string::npos; }

}  // namespace

TEST(Corpus, EveryDocumentRoundTripsByteForByte) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(corpus())) {
    if (e.path().extension() != ".json") continue;
    const auto text = slurp(e.path());
    if (is_morphism_doc(text)) {
      const auto doc = parse_morphism(text);
      EXPECT_EQ(serialize(doc), text) << e.path();
      EXPECT_EQ(parse_morphism(serialize(doc)), doc) << e.path();
    } else {
      const auto doc = parse_system(text);
      EXPECT_EQ(serialize(doc), text) << e.path();
      EXPECT_EQ(parse_system(serialize(doc)), doc) << e.path();
    }
    ++n;
  }
  EXPECT_GE(n, 10u);
}

TEST(Corpus, EveryValidDocumentBuilds) {
  for (const auto& e : fs::directory_iterator(corpus())) {
    if (e.path().extension() != ".json") continue;
    const auto text = slurp(e.path());
    if (is_morphism_doc(text)) EXPECT_NO_THROW(build_morphism(parse_morphism(text))) << e.path();
    else EXPECT_NO_THROW(build_system(parse_system(text))) << e.path();
  }
}

TEST(Corpus, InvalidDocumentsAreRejected) {
  for (const auto& e : fs::directory_iterator(corpus() / "invalid")) {
    const auto text = slurp(e.path());
    const bool rejected = [&] {
      try {
        if (is_morphism_doc(text)) build_morphism(parse_morphism(text));
        else build_system(parse_system(text));
      } catch (const ParseError&) {
        return true;
      } catch (const CompositionError&) {
        return true;
      }
      return false;
    }();
    EXPECT_TRUE(rejected) << e.path();
  }
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_system(slurp(corpus() / "invalid" / "syntax.json"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(Parse, UnknownFieldIsStructural) {
  try {
    parse_system(slurp(corpus() / "invalid" / "unknown_field.json"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 0u);
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(Parse, UnknownKindsRejected) {
  EXPECT_THROW(parse_system(R"({"category":{"backend":"groups"},"index":{"kind":"nat"}})"), ParseError);
  EXPECT_THROW(parse_system(R"({"category":{"backend":"finset"},"index":{"kind":"reals"}})"), ParseError);
  EXPECT_THROW(parse_system(R"({"category":{"backend":"finset","modulus":3},"index":{"kind":"nat"}})"), ParseError);
}

TEST(Build, FiniteChainMatchesDocument) {
  const auto s = build_system(parse_system(slurp(corpus() / "chain3_strict.json")));
  const auto& p = dynamic_cast<const FinitePoset&>(s.index());
  const auto a = *p.find("a"), c = *p.find("c");
  EXPECT_EQ(s.object_at(c).labels(), (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_TRUE(mor_eq(s.bond(a, c), Mor::finset_map(s.object_at(c), s.object_at(a), {0, 1, 1, 1})));
  EXPECT_TRUE(oracle::strict(s, 8));
}

TEST(Build, MissingBondIsAParseError) {
  EXPECT_THROW(build_system(parse_system(slurp(corpus() / "invalid" / "missing_bond.json"))), ParseError);
}

TEST(Build, FiniteDocumentIsStable) {
  for (const char* name : {"chain3_strict.json", "chain3_delay.json", "diamond_matmod.json"}) {
    const auto s = build_system(parse_system(slurp(corpus() / name)));
    const auto d1 = finite_document(s);
    const auto s2 = build_system(d1);
    const auto d2 = finite_document(s2);
    EXPECT_EQ(serialize(d1), serialize(d2)) << name;
    const auto w = s.index().window(8);
    for (const auto& x : w)
      for (const auto& y : w)
        if (s.index().leq(x, y)) EXPECT_TRUE(mor_eq(s.bond(x, y), s2.bond(x, y))) << name;
  }
}

TEST(Build, MardesicIndexOverChain) {
  const auto s = build_system(parse_system(slurp(corpus() / "mardesic_chain3.json")));
  EXPECT_EQ(s.index().window(16).size(), 7u);
}

TEST(Build, GeneratedDocumentIsDeterministic) {
  const auto text = slurp(corpus() / "nat_planted_matmod.json");
  const auto x = build_system(parse_system(text)), y = build_system(parse_system(text));
  for (std::size_t a = 0; a < 20; ++a)
    for (std::size_t b = a; b < 20; ++b) EXPECT_TRUE(mor_eq(x.bond(oracle::nat(a), oracle::nat(b)), y.bond(oracle::nat(a), oracle::nat(b))));
}

TEST(Build, ExplicitProfileIsPlanted) {
  const auto s = build_system(parse_system(slurp(corpus() / "nat_planted_explicit.json")));
  EXPECT_EQ(oracle::nat_commutation(s, 1, 16), std::optional<std::size_t>(5));
  EXPECT_EQ(oracle::nat_commutation(s, 2, 16), std::optional<std::size_t>(2));
}

TEST(Build, InvalidProfileIsAParseError) {
  const std::string doc = R"({"category":{"backend":"finset"},"index":{"kind":"nat"},
    "generator":{"name":"planted_sequence","length":4,"seed":0,"min_points":2,"max_points":6,"max_dim":3,
    "profile":{"kind":"explicit","values":[1,1,2,3]}}})";
  EXPECT_THROW(build_system(parse_system(doc)), ParseError);
}

TEST(Build, SubsetDocumentRestricts) {
  const auto doc = parse_system(slurp(corpus() / "chain3_strict.json"));
  const auto s = build_system(doc);
  const auto& p = dynamic_cast<const FinitePoset&>(s.index());
  const auto sub = subset_document(doc, {*p.find("b"), *p.find("c")}, p);
  const auto t = build_system(sub);
  EXPECT_EQ(t.index().window(8).size(), 2u);
  EXPECT_EQ(parse_system(serialize(sub)), sub);
}

TEST(Morphisms, ExplicitComponentsBuilt) {
  const auto built = build_morphism(parse_morphism(slurp(corpus() / "explicit_finite.json")));
  ASSERT_TRUE(built.other);
  const auto& B = dynamic_cast<const FinitePoset&>(built.morphism.target().index());
  const auto& A = dynamic_cast<const FinitePoset&>(built.morphism.source().index());
  EXPECT_EQ(built.morphism.index_map(*B.find("x")), *A.find("a"));
  EXPECT_EQ(built.other->index_map(*B.find("x")), *A.find("b"));
  EXPECT_TRUE(oracle::dequiv_at_top(built.morphism, *built.other));
}

TEST(Morphisms, MismatchedComponentIsACompositionError) {
  EXPECT_THROW(build_morphism(parse_morphism(slurp(corpus() / "invalid" / "mismatched_component.json"))),
               CompositionError);
}

TEST(Morphisms, PlantedLevelIsoStandsAlone) {
  const auto built = build_morphism(parse_morphism(slurp(corpus() / "level_iso.json")));
  EXPECT_TRUE(built.inverse);
  auto doc = parse_morphism(slurp(corpus() / "level_iso.json"));
  doc.source = parse_system(slurp(corpus() / "nat_strict.json"));
  EXPECT_THROW(build_morphism(doc), ParseError);
}

TEST(Morphisms, IdentityNeedsMatchingTarget) {
  auto doc = parse_morphism(slurp(corpus() / "id_nat.json"));
  EXPECT_NO_THROW(build_morphism(doc));
  doc.target = parse_system(slurp(corpus() / "nat_planted_step.json"));
  EXPECT_ANY_THROW(build_morphism(doc));
}
