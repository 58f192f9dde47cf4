// Turning documents into systems and morphisms, and systems back into documents.

#include <limits>
#include <map>
#include <set>

#include "prokit/document.hpp"
#include "prokit/error.hpp"

namespace prokit {

namespace {

constexpr std::size_t kEverything = std::size_t{1} << 30;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError((path.empty() ? "/" : path) + ": " + msg, 0, 0);
}

// Throws CompositionError when the data does not fit dom -> cod.
Mor make_map(const Obj& dom, const Obj& cod, const MapData& m) {
  if (dom.backend() == Backend::FinSet) {
    if (m.image.size() != dom.size())
      throw CompositionError("map from " + describe(dom) + " lists " + std::to_string(m.image.size()) + " images");
    std::vector<std::uint32_t> img;
    for (auto label : m.image) {
      const auto& ls = cod.labels();
      const auto it = std::find(ls.begin(), ls.end(), label);
      if (it == ls.end()) throw CompositionError("label " + std::to_string(label) + " is not a point of " + describe(cod));
      img.push_back(static_cast<std::uint32_t>(it - ls.begin()));
    }
    return Mor::finset_map(dom, cod, std::move(img));
  }
  Residues r(static_cast<Eigen::Index>(m.matrix.size()), m.matrix.empty() ? 0 : static_cast<Eigen::Index>(m.matrix[0].size()));
  for (std::size_t i = 0; i < m.matrix.size(); ++i) {
    if (m.matrix[i].size() != static_cast<std::size_t>(r.cols())) throw CompositionError("ragged matrix");
    for (std::size_t j = 0; j < m.matrix[i].size(); ++j) r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.matrix[i][j];
  }
  return Mor::matrix(dom, cod, r);
}

MapData map_data(const Mor& f) {
  MapData m;
  if (f.backend() == Backend::FinSet) {
    for (auto v : f.image()) m.image.push_back(f.cod().labels()[v]);
  } else {
    for (Eigen::Index i = 0; i < f.entries().rows(); ++i) {
      std::vector<std::int64_t> row;
      for (Eigen::Index j = 0; j < f.entries().cols(); ++j) row.push_back(f.entries()(i, j));
      m.matrix.push_back(std::move(row));
    }
  }
  return m;
}

std::map<std::string, IndexElem> labels_of(const IndexPoset& p) {
  std::map<std::string, IndexElem> out;
  for (const auto& e : p.window(kEverything)) out.emplace(p.label(e), e);
  return out;
}

DelaySystem build_finite(const SystemDocument& d, const IndexBlock& ix) {
  if (d.generator) fail("/generator", "finite index sets list their objects and bonds explicitly");
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ix.elements.size(); ++i)
    if (!pos.emplace(ix.elements[i], i).second) fail("/index/elements", "duplicate element '" + ix.elements[i] + "'");
  auto find = [&](const std::string& l, const std::string& path) {
    const auto it = pos.find(l);
    if (it == pos.end()) fail(path, "unknown element '" + l + "'");
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [lo, hi] : ix.leq) pairs.emplace_back(find(lo, "/index/leq"), find(hi, "/index/leq"));
  auto poset = std::make_shared<const FinitePoset>(ix.elements, pairs);

  std::vector<std::optional<Obj>> objs(ix.elements.size());
  for (const auto& o : d.objects) {
    auto& slot = objs[find(o.element, "/objects")];
    if (slot) fail("/objects", "two objects for '" + o.element + "'");
    try {
      slot = d.backend == Backend::FinSet ? Obj::finset(o.points) : Obj::matmod(o.dim, d.modulus);
    } catch (const Error& e) {
      fail("/objects/" + o.element, e.what());
    }
  }
  std::vector<Obj> objects;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!objs[i]) fail("/objects", "no object for '" + ix.elements[i] + "'");
    objects.push_back(*objs[i]);
  }

  std::map<std::pair<std::size_t, std::size_t>, Mor> bonds;
  for (const auto& b : d.bonds) {
    const auto i = find(b.lower, "/bonds");
    const auto j = find(b.upper, "/bonds");
    if (!poset->leq(poset->elem(i), poset->elem(j))) fail("/bonds", b.lower + " is not below " + b.upper);
    try {
      if (!bonds.emplace(std::make_pair(i, j), make_map(objects[j], objects[i], b.map)).second)
        fail("/bonds", "two bonds for " + b.lower + " <= " + b.upper);
    } catch (const Error& e) {
      fail("/bonds/" + b.lower + "," + b.upper, e.what());
    }
  }
  for (auto [i, j] : poset->strict_pairs())
    if (!bonds.count({i, j})) fail("/bonds", "missing bond for " + ix.elements[i] + " <= " + ix.elements[j]);
  return make_finite_system(poset, std::move(objects), std::move(bonds));
}

PlantSpec plant_spec(const GeneratorBlock& g, Backend backend, std::int64_t modulus) {
  PlantSpec s;
  s.length = g.length;
  s.backend = backend;
  s.min_points = g.min_points;
  s.max_points = g.max_points;
  s.modulus = modulus;
  s.max_dim = g.max_dim;
  s.seed = g.seed;
  if (g.profile == "explicit") s.delay_profile = g.values;
  if (g.profile == "step") s.delay_profile = step_profile(g.length, g.step);
  if (g.profile == "random") s.delay_profile = random_profile(g.length, g.max_delay, g.seed);
  return s;
}

DelaySystem build_generated(const SystemDocument& d) {
  if (!d.generator) fail("/generator", "infinite index sets need a generator");
  if (!d.objects.empty() || !d.bonds.empty()) fail("", "generated systems list no objects or bonds");
  try {
    return gen_planted_sequence(plant_spec(*d.generator, d.backend, d.modulus));
  } catch (const Error& e) {
    fail("/generator", e.what());
  }
}

Subset subset_of(const IndexBlock& ix, const DelaySystem& base) {
  if (ix.subset == "evens") return Subset::evens();
  if (ix.subset == "odds") return Subset::odds();
  if (ix.subset == "tail") return Subset::tail(ix.tail);
  std::vector<IndexElem> members;
  const auto& p = base.index();
  if (!ix.member_labels.empty()) {
    if (p.kind() != PosetKind::Finite) fail("/index/members", "labels need a finite base");
    const auto all = labels_of(p);
    for (const auto& l : ix.member_labels) {
      const auto it = all.find(l);
      if (it == all.end()) fail("/index/members", "unknown element '" + l + "'");
      members.push_back(it->second);
    }
  }
  for (const auto& k : ix.member_keys) {
    IndexElem e;
    if (dynamic_cast<const NatPoset*>(&p) && k.size() == 1 && k[0] >= 0) {
      e = NatPoset::at(static_cast<std::size_t>(k[0]));
    } else if (dynamic_cast<const NatSquarePoset*>(&p) && k.size() == 2 && k[0] >= 0 && k[1] >= 0) {
      e = NatSquarePoset::at(static_cast<std::size_t>(k[0]), static_cast<std::size_t>(k[1]));
    } else {
      fail("/index/members", "keys are only understood over nat and nat_square");
    }
    members.push_back(e);
  }
  return Subset::of("members", members);
}

DelaySystem build_over(const SystemDocument& d, const IndexBlock& ix) {
  if (ix.kind == "finite") return build_finite(d, ix);
  if (ix.kind == "nat") return build_generated(d);
  if (ix.kind == "nat_square") {
    const DelaySystem g = build_generated(d);
    auto sum = [](const IndexElem& e) { return NatPoset::at(static_cast<std::size_t>(e.key[0] + e.key[1])); };
    return DelaySystem(
        std::make_shared<const NatSquarePoset>(), [g, sum](const IndexElem& e) { return g.object_at(sum(e)); },
        [g, sum](const IndexElem& lo, const IndexElem& hi) { return g.bond(sum(lo), sum(hi)); });
  }
  if (ix.kind == "mardesic_of") {
    const DelaySystem base = build_over(d, ix.base.at(0));
    try {
      return mardesic_reindex(base).system;
    } catch (const Error& e) {
      fail("/index", e.what());
    }
  }
  if (ix.kind == "subset") {
    const DelaySystem base = build_over(d, ix.base.at(0));
    return base.over(std::make_shared<const SubsetPoset>(base.index_ptr(), subset_of(ix, base)));
  }
  fail("/index/kind", "unknown index kind '" + ix.kind + "'");
}

}  // namespace

DelaySystem build_system(const SystemDocument& doc) { return build_over(doc, doc.index); }

SystemDocument finite_document(const DelaySystem& s, std::optional<std::size_t> horizon) {
  const auto& p = s.index();
  if (p.kind() != PosetKind::Finite) throw PreconditionError("only finite systems have explicit documents");
  const auto w = p.window(kEverything);
  if (w.empty()) throw PreconditionError("empty index");
  SystemDocument d;
  const Obj first = s.object_at(w[0]);
  d.backend = first.backend();
  if (d.backend == Backend::MatMod) d.modulus = first.modulus();
  d.index.kind = "finite";
  for (const auto& e : w) d.index.elements.push_back(p.label(e));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (i != j && p.leq(w[i], w[j])) d.index.leq.emplace_back(p.label(w[i]), p.label(w[j]));
  for (const auto& e : w) {
    const Obj o = s.object_at(e);
    d.objects.push_back(ObjectEntry{p.label(e), o.backend() == Backend::FinSet ? o.labels() : std::vector<std::int64_t>{},
                                    o.backend() == Backend::MatMod ? o.dim() : 0});
  }
  for (const auto& [lo, hi] : d.index.leq) {
    const auto a = std::find_if(w.begin(), w.end(), [&](const IndexElem& e) { return p.label(e) == lo; });
    const auto b = std::find_if(w.begin(), w.end(), [&](const IndexElem& e) { return p.label(e) == hi; });
    d.bonds.push_back(BondEntry{lo, hi, map_data(s.bond(*a, *b))});
  }
  d.horizon = horizon;
  return d;
}

SystemDocument subset_document(const SystemDocument& doc, const std::vector<IndexElem>& members,
                               const IndexPoset& poset) {
  SystemDocument d = doc;
  IndexBlock ix;
  ix.kind = "subset";
  ix.base.push_back(doc.index);
  ix.subset = "members";
  for (const auto& m : members) {
    if (poset.kind() == PosetKind::Finite) ix.member_labels.push_back(poset.label(m));
    else ix.member_keys.push_back(m.key);
  }
  d.index = std::move(ix);
  return d;
}

BuiltMorphism build_morphism(const MorphismDocument& doc) {
  if (doc.morphism.kind == "planted_level_iso") {
    if (doc.source || doc.target || doc.other) fail("", "planted level isos generate their own systems");
    PlantSpec spec;
    spec.length = doc.morphism.plant.length;
    spec.seed = doc.morphism.plant.seed;
    spec.min_points = doc.morphism.plant.min_points;
    spec.max_points = doc.morphism.plant.max_points;
    spec.morphism_delay = doc.morphism.morphism_delay;
    try {
      auto iso = gen_planted_level_iso(spec);
      return BuiltMorphism{iso.morphism, iso.inverse, std::nullopt};
    } catch (const GenerationError& e) {
      fail("/morphism", e.what());
    }
  }
  if (!doc.source) fail("", "missing field 'source'");
  const DelaySystem x = build_system(*doc.source);
  const bool endo = !doc.target || *doc.target == *doc.source;
  const DelaySystem y = endo ? x : build_system(*doc.target);

  auto build = [&](const MorphismBlock& m, const std::string& path) -> DelayMorphism {
    if (m.kind == "identity") {
      if (!endo) throw CompositionError("identity needs the target to be the source");
      return DelayMorphism::identity(x);
    }
    if (m.kind != "explicit") fail(path, "planted level isos cannot be combined with other morphisms");
    if (x.index().kind() != PosetKind::Finite || y.index().kind() != PosetKind::Finite)
      fail(path, "explicit morphisms need finite index sets");
    const auto as = labels_of(x.index());
    const auto bs = labels_of(y.index());
    auto index = std::make_shared<std::map<IndexElem, IndexElem>>();
    auto comps = std::make_shared<std::map<IndexElem, Mor>>();
    for (const auto& [bl, al] : m.index_map) {
      const auto b = bs.find(bl);
      const auto a = as.find(al);
      if (b == bs.end()) fail(path + "/index_map", "unknown target element '" + bl + "'");
      if (a == as.end()) fail(path + "/index_map", "unknown source element '" + al + "'");
      if (!index->emplace(b->second, a->second).second) fail(path + "/index_map", "two images for '" + bl + "'");
    }
    for (const auto& [bl, map] : m.components) {
      const auto b = bs.find(bl);
      if (b == bs.end()) fail(path + "/components", "unknown target element '" + bl + "'");
      const auto fb = index->find(b->second);
      if (fb == index->end()) fail(path + "/components", "no index image for '" + bl + "'");
      Mor c = make_map(x.object_at(fb->second), y.object_at(b->second), map);
      if (!comps->emplace(b->second, std::move(c)).second) fail(path + "/components", "two components for '" + bl + "'");
    }
    for (const auto& [bl, b] : bs) {
      if (!index->count(b)) fail(path + "/index_map", "no image for '" + bl + "'");
      if (!comps->count(b)) fail(path + "/components", "no component for '" + bl + "'");
    }
    return DelayMorphism(
        x, y, [index](const IndexElem& b) { return index->at(b); }, [comps](const IndexElem& b) { return comps->at(b); });
  };

  BuiltMorphism out{build(doc.morphism, "/morphism"), std::nullopt, std::nullopt};
  if (doc.other) out.other = build(*doc.other, "/other");
  return out;
}

}  // namespace prokit
