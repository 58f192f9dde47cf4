#include "prokit/system.hpp"

#include <algorithm>

#include "prokit/error.hpp"

namespace prokit {

DelaySystem::DelaySystem(PosetPtr index, ObjectFn objects, BondFn bonds)
    : impl_(std::make_shared<const Impl>(Impl{std::move(index), std::move(objects), std::move(bonds)})) {}

DelaySystem DelaySystem::over(PosetPtr index) const { return DelaySystem(std::move(index), impl_->objects, impl_->bonds); }

DelaySystem make_finite_system(std::shared_ptr<const FinitePoset> index, std::vector<Obj> objects,
                               std::map<std::pair<std::size_t, std::size_t>, Mor> bonds) {
  if (objects.size() != index->labels().size()) throw PreconditionError("one object per index element is required");
  auto objs = std::make_shared<const std::vector<Obj>>(std::move(objects));
  auto table = std::make_shared<const std::map<std::pair<std::size_t, std::size_t>, Mor>>(std::move(bonds));
  auto object_at = [objs](const IndexElem& a) { return objs->at(static_cast<std::size_t>(a.key.at(0))); };
  auto bond = [objs, table, index](const IndexElem& lo, const IndexElem& hi) {
    const auto i = static_cast<std::size_t>(lo.key.at(0));
    const auto j = static_cast<std::size_t>(hi.key.at(0));
    if (auto it = table->find({i, j}); it != table->end()) return it->second;
    if (i == j) return identity(objs->at(i));
    throw PreconditionError("no bond declared for " + index->label(lo) + " <= " + index->label(hi));
  };
  return DelaySystem(std::move(index), std::move(object_at), std::move(bond));
}

DelayMorphism::DelayMorphism(DelaySystem source, DelaySystem target, IndexMap index_map, ComponentFn components)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(index_map)), components_(std::move(components)) {}

DelayMorphism DelayMorphism::identity(const DelaySystem& x) {
  return DelayMorphism(
      x, x, [](const IndexElem& a) { return a; }, [x](const IndexElem& a) { return prokit::identity(x.object_at(a)); });
}

bool CommutationReport::holds() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.verdict.holds; });
}

const CommutationEntry* CommutationReport::find(const IndexElem& a) const {
  for (const auto& e : entries)
    if (e.element == a) return &e;
  return nullptr;
}

Verdict check_wellformed(const DelaySystem& s, const Bounds& bounds) {
  const WindowView w(s.index(), bounds.horizon);
  Verdict v = Verdict::holding(mode_for(s.index(), Bounds{bounds.horizon}), bounds.horizon);
  auto fail = [&](std::size_t i, std::size_t j, std::string why) {
    v.holds = false;
    v.counterexample = Counterexample{{w[i], w[j]}, std::move(why)};
    return v;
  };
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!w.leq(i, j)) continue;
      try {
        const Mor p = s.bond(w[i], w[j]);
        if (!(p.cod() == s.object_at(w[i]))) return fail(i, j, "bond codomain differs from the lower object");
        if (!(p.dom() == s.object_at(w[j]))) return fail(i, j, "bond domain differs from the upper object");
        if (i == j && !mor_eq(p, identity(s.object_at(w[i])))) return fail(i, j, "diagonal bond is not an identity");
      } catch (const Error& e) {
        return fail(i, j, e.what());
      }
    }
  return v;
}

namespace detail {

CommutationSearch find_commutation_index(const DelaySystem& s, const WindowView& w, std::size_t ia) {
  const auto& a = w[ia];
  std::vector<std::size_t> up;
  for (std::size_t x = 0; x < w.size(); ++x)
    if (w.leq(ia, x)) up.push_back(x);

  std::vector<Mor> from_a;
  from_a.reserve(up.size());
  for (auto x : up) from_a.push_back(s.bond(a, w[x]));

  // bad[k] = first y with bond(a, x) o bond(x, y) != bond(a, y), for x = up[k].
  std::vector<std::optional<std::size_t>> bad(up.size());
  for (std::size_t kx = 0; kx < up.size(); ++kx)
    for (std::size_t ky = 0; ky < up.size(); ++ky) {
      if (!w.leq(up[kx], up[ky])) continue;
      if (!composite_equals(from_a[kx], s.bond(w[up[kx]], w[up[ky]]), from_a[ky])) {
        bad[kx] = up[ky];
        break;
      }
    }

  CommutationSearch out;
  for (std::size_t kc = 0; kc < up.size(); ++kc) {
    const auto c = up[kc];
    if (!w.admissible(c)) continue;
    bool works = true;
    for (std::size_t kx = 0; kx < up.size() && works; ++kx)
      if (w.leq(c, up[kx]) && bad[kx]) works = false;
    if (works) {
      out.witness = c;
      return out;
    }
  }
  for (std::size_t kx = up.size(); kx-- > 0;)
    if (bad[kx]) {
      out.bad_triple = std::array<std::size_t, 3>{ia, up[kx], *bad[kx]};
      break;
    }
  return out;
}

}  // namespace detail

namespace {

Verdict commutation_verdict(const WindowView& w, std::size_t ia, const detail::CommutationSearch& r, Mode mode) {
  Verdict v;
  v.mode = mode;
  v.horizon = w.horizon();
  v.holds = r.witness.has_value();
  if (r.witness) {
    v.witnesses.push_back(Witness{{w[ia]}, {w[*r.witness]}});
  } else if (r.bad_triple) {
    const auto& t = *r.bad_triple;
    v.counterexample = Counterexample{{w[t[0]], w[t[1]], w[t[2]]}, "bond(a,a') o bond(a',a'') != bond(a,a'')"};
  } else {
    v.counterexample = Counterexample{{w[ia]}, "no admissible commutation index in window"};
  }
  return v;
}

std::size_t require_in_window(const WindowView& w, const IndexPoset& p, const IndexElem& a) {
  const auto ia = w.find(a);
  if (!ia) throw PreconditionError("element " + p.label(a) + " is not in window(" + std::to_string(w.horizon()) + ")");
  return *ia;
}

}  // namespace

Verdict min_commutation_index(const DelaySystem& s, const IndexElem& a, const Bounds& bounds) {
  const WindowView w(s.index(), bounds.horizon);
  const auto ia = require_in_window(w, s.index(), a);
  return commutation_verdict(w, ia, detail::find_commutation_index(s, w, ia),
                             mode_for(s.index(), Bounds{bounds.horizon}));
}

CommutationReport check_delay(const DelaySystem& s, const Bounds& bounds) {
  const WindowView w(s.index(), bounds.horizon);
  CommutationReport report;
  report.mode = mode_for(s.index(), bounds);
  report.horizon = bounds.horizon;
  const auto probe = w.probe_count(bounds.probe);
  for (std::size_t i = 0; i < probe; ++i) {
    const auto r = detail::find_commutation_index(s, w, i);
    CommutationEntry e{w[i], commutation_verdict(w, i, r, report.mode), std::nullopt};
    if (r.witness) e.witness = w[*r.witness];
    report.entries.push_back(std::move(e));
  }
  return report;
}

Verdict check_strict(const DelaySystem& s, const Bounds& bounds) {
  const WindowView w(s.index(), bounds.horizon);
  const auto n = w.size();
  std::vector<std::optional<Mor>> bonds(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w.leq(i, j)) bonds[i * n + j] = s.bond(w[i], w[j]);
  Verdict v = Verdict::holding(mode_for(s.index(), Bounds{bounds.horizon}), bounds.horizon);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!w.leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!w.leq(j, k)) continue;
        if (!composite_equals(*bonds[i * n + j], *bonds[j * n + k], *bonds[i * n + k])) {
          v.holds = false;
          v.counterexample = Counterexample{{w[i], w[j], w[k]}, "bond(a,a') o bond(a',a'') != bond(a,a'')"};
          return v;
        }
      }
    }
  return v;
}

// ---------------------------------------------------------------------------
// Restriction

namespace {

// j(a): first subset element in window(horizon) above the minimal commutation index of a.
IndexElem retraction_target(const DelaySystem& s, const Subset& subset, const WindowView& w, const IndexElem& a) {
  const auto ia = w.find(a);
  if (!ia) throw InconclusiveError("element " + s.index().label(a) + " lies outside the window", w.horizon());
  const auto r = detail::find_commutation_index(s, w, *ia);
  if (!r.witness) throw InconclusiveError("no commutation index for " + s.index().label(a), w.horizon());
  for (std::size_t k = 0; k < w.size(); ++k)
    if (subset.contains(w[k]) && w.leq(*r.witness, k)) return w[k];
  throw InconclusiveError("no subset element above the commutation index of " + s.index().label(a), w.horizon());
}

}  // namespace

Restriction restrict(const DelaySystem& s, const Subset& subset, const Bounds& bounds) {
  const auto cofinal = is_cofinal(s.index(), subset, bounds);
  if (!cofinal.holds) throw PreconditionError("subset " + subset.name + " is not cofinal: " + cofinal.counterexample->reason);

  auto sub = std::make_shared<const SubsetPoset>(s.index_ptr(), subset);
  DelaySystem restricted = s.over(sub);

  auto view = std::make_shared<const WindowView>(s.index(), bounds.horizon);
  auto table = std::make_shared<std::map<IndexElem, IndexElem>>();
  for (std::size_t i = 0, probe = view->probe_count(bounds.probe); i < probe; ++i)
    table->emplace((*view)[i], retraction_target(s, subset, *view, (*view)[i]));
  std::shared_ptr<const std::map<IndexElem, IndexElem>> frozen = table;

  IndexMap j = [s, subset, view, frozen](const IndexElem& a) {
    if (auto it = frozen->find(a); it != frozen->end()) return it->second;
    return retraction_target(s, subset, *view, a);
  };
  auto j_components = [s, j](const IndexElem& a) { return s.bond(a, j(a)); };

  DelayMorphism inclusion(
      s, restricted, [](const IndexElem& a) { return a; },
      [s](const IndexElem& a) { return identity(s.object_at(a)); });
  DelayMorphism retraction(restricted, s, j, j_components);
  return Restriction{std::move(restricted), std::move(inclusion), std::move(retraction)};
}

MardesicReindex mardesic_reindex(const DelaySystem& s) {
  auto b = mardesic(s.index_ptr());
  DelaySystem y(
      b, [s, b](const IndexElem& e) { return s.object_at(b->max_of(e)); },
      [s, b](const IndexElem& lo, const IndexElem& hi) { return s.bond(b->max_of(lo), b->max_of(hi)); });
  DelayMorphism f(
      s, y, [b](const IndexElem& e) { return b->max_of(e); },
      [s, b](const IndexElem& e) { return identity(s.object_at(b->max_of(e))); });
  DelayMorphism g(
      y, s, [b](const IndexElem& a) { return b->singleton(a); },
      [s](const IndexElem& a) { return identity(s.object_at(a)); });
  return MardesicReindex{std::move(b), std::move(y), std::move(f), std::move(g)};
}

SequenceReduction to_sequence(const DelaySystem& s, const Bounds& bounds) {
  const auto& p = s.index();
  if (p.kind() == PosetKind::Finite) {
    const WindowView w(p, bounds.horizon);
    if (!w.saturated()) throw InconclusiveError("finite index not fully enumerated", bounds.horizon);
    for (std::size_t m = 0; m < w.size(); ++m) {
      bool top = true;
      for (std::size_t x = 0; x < w.size() && top; ++x) top = w.leq(x, m);
      if (top) {
        std::vector<IndexElem> chain{w[m]};
        auto r = restrict(s, Subset::of("maximum", chain), Bounds{bounds.horizon});
        return SequenceReduction{std::move(chain), true, std::move(r)};
      }
    }
    throw PreconditionError("finite index without a maximum is not directed");
  }

  const auto directed = is_directed(p, bounds);
  if (!directed.holds) throw PreconditionError("index is not directed within the window");

  const WindowView w(p, bounds.horizon);
  const auto probe = w.probe_count(bounds.probe);
  if (probe == 0) throw PreconditionError("empty probe window");
  std::vector<std::size_t> chain{0};
  for (std::size_t i = 1; i < probe; ++i) {
    std::optional<std::size_t> next;
    for (std::size_t x = 0; x < w.size() && !next; ++x)
      if (w.lt(chain.back(), x) && w.leq(i, x)) next = x;
    if (!next) throw InconclusiveError("no strictly larger element above " + p.label(w[i]), bounds.horizon);
    chain.push_back(*next);
  }
  std::vector<IndexElem> elems;
  for (auto k : chain) elems.push_back(w[k]);
  auto r = restrict(s, Subset::of("sequence", elems), bounds);
  return SequenceReduction{std::move(elems), false, std::move(r)};
}

Extraction commutative_extract(const DelaySystem& s, const Bounds& bounds, std::optional<IndexElem> start) {
  const WindowView w(s.index(), bounds.horizon);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (!w.leq(i, j) && !w.leq(j, i))
        throw PreconditionError("index is not a chain: " + s.index().label(w[i]) + ", " + s.index().label(w[j]));
  if (w.size() == 0) throw PreconditionError("empty window");

  std::size_t current = 0;
  if (start) current = require_in_window(w, s.index(), *start);
  const auto probe = w.probe_count(bounds.probe);

  // The chain must also reach past every probe element's commutation index, and one step
  // beyond that, or the retraction onto it has no admissible target.
  std::size_t needed = 0;
  for (std::size_t i = 0; i < probe; ++i) {
    const auto r = detail::find_commutation_index(s, w, i);
    if (!r.witness) throw InconclusiveError("no commutation index for " + s.index().label(w[i]), bounds.horizon);
    needed = std::max(needed, *r.witness);
  }

  std::vector<IndexElem> chain{w[current]};
  std::optional<std::size_t> covering;
  if (current >= needed) covering = current;
  while (current < probe || !covering || current == *covering) {
    const auto r = detail::find_commutation_index(s, w, current);
    if (!r.witness) throw InconclusiveError("no commutation index for " + s.index().label(w[current]), bounds.horizon);
    const auto next = *r.witness + 1;
    if (next >= w.size()) {
      if (*r.witness != current) chain.push_back(w[*r.witness]);
      break;
    }
    current = next;
    chain.push_back(w[current]);
    if (!covering && current >= needed) covering = current;
  }
  auto restriction = restrict(s, Subset::of("extracted", chain), bounds);
  return Extraction{std::move(chain), std::move(restriction)};
}

}  // namespace prokit
