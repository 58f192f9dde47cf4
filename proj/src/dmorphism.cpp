#include "prokit/dmorphism.hpp"

#include <algorithm>
#include <map>

#include "prokit/error.hpp"

namespace prokit {

namespace {

// Bonds between window positions, built on first use.
class BondCache {
 public:
  BondCache(const DelaySystem& s, const WindowView& w) : s_(s), w_(w), cache_(w.size() * w.size()) {}

  const Mor& operator()(std::size_t lo, std::size_t hi) {
    auto& slot = cache_[lo * w_.size() + hi];
    if (!slot) slot = s_.bond(w_[lo], w_[hi]);
    return *slot;
  }

 private:
  const DelaySystem& s_;
  const WindowView& w_;
  std::vector<std::optional<Mor>> cache_;
};

Mode pair_mode(const IndexPoset& outer, const IndexPoset& inner, const Bounds& bounds) {
  return mode_for(outer, bounds) == Mode::Exact && inner.saturated(bounds.source_horizon()) ? Mode::Exact : Mode::Windowed;
}

// Images of f on window(B) as positions in window(A).
std::vector<std::optional<std::size_t>> image_positions(const DelayMorphism& m, const WindowView& wb,
                                                        const WindowView& wa) {
  std::vector<std::optional<std::size_t>> out(wb.size());
  for (std::size_t i = 0; i < wb.size(); ++i) out[i] = wa.find(m.index_map(wb[i]));
  return out;
}

// First position x >= every position in lows, with no bad position above x.
std::optional<std::size_t> first_stable(const WindowView& w, const std::vector<std::size_t>& lows,
                                        const std::vector<char>& bad, bool need_admissible) {
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (!std::all_of(lows.begin(), lows.end(), [&](std::size_t l) { return w.leq(l, x); })) continue;
    if (need_admissible && !w.admissible(x)) continue;
    bool ok = true;
    for (std::size_t y = 0; y < w.size() && ok; ++y)
      if (bad[y] && w.leq(x, y)) ok = false;
    if (ok) return x;
  }
  return std::nullopt;
}

Verdict outside_window(Mode mode, std::size_t h, const IndexElem& b, const IndexPoset& a, const IndexElem& fb) {
  return Verdict::failing(mode, h, Counterexample{{b, fb}, "f(b) = " + a.label(fb) + " lies outside the window"});
}

}  // namespace

Bounds source_covering(const DelayMorphism& m, const Bounds& bounds) {
  std::size_t top = bounds.horizon;
  for (const auto& b : m.target().index().window(bounds.horizon)) top = std::max(top, m.index_map(b).rank);
  return bounds.with_source(std::max(bounds.source_horizon(), top + (bounds.horizon - bounds.probe)));
}

Verdict check_boundaries(const DelayMorphism& m, const Bounds& bounds) {
  const auto& x = m.source();
  const auto& y = m.target();
  const WindowView wb(y.index(), bounds.horizon);
  Verdict v = Verdict::holding(mode_for(y.index(), Bounds{bounds.horizon}), bounds.horizon);
  for (std::size_t i = 0; i < wb.size(); ++i) {
    const auto& b = wb[i];
    const auto fb = m.index_map(b);
    std::string why;
    if (!x.index().contains(fb)) {
      why = "f(b) is not an element of the source index";
    } else {
      const Mor c = m.component(b);
      if (!(c.dom() == x.object_at(fb))) why = "component domain differs from X_f(b)";
      else if (!(c.cod() == y.object_at(b))) why = "component codomain differs from Y_b";
    }
    if (!why.empty()) {
      v.holds = false;
      v.counterexample = Counterexample{{b, fb}, why};
      return v;
    }
  }
  return v;
}

namespace {

// Per-b data of the morphism condition over fixed windows: b* and a(b, b') for b' >= b.
class ConditionTable {
 public:
  struct Row {
    std::optional<std::size_t> star;
    std::vector<std::optional<std::size_t>> anchor;
  };

  ConditionTable(const DelayMorphism& m, const WindowView& wb, const WindowView& wa)
      : m_(m), wb_(wb), wa_(wa), fpos_(image_positions(m, wb, wa)), p_(m.source(), wa), q_(m.target(), wb),
        comp_(wb.size()) {}

  const std::optional<std::size_t>& image(std::size_t ib) const { return fpos_[ib]; }

  // Requires image(ib).
  Row row(std::size_t ib) {
    const auto fb = *fpos_[ib];
    std::vector<std::optional<Mor>> right(wa_.size());  // f_b p_{f(b)a'}
    for (std::size_t a = 0; a < wa_.size(); ++a)
      if (wa_.leq(fb, a)) right[a] = compose(component(ib), p_(fb, a));

    Row r{std::nullopt, std::vector<std::optional<std::size_t>>(wb_.size())};
    for (std::size_t jb = 0; jb < wb_.size(); ++jb) {
      if (!wb_.leq(ib, jb) || !fpos_[jb]) continue;
      const auto fb2 = *fpos_[jb];
      const Mor qf = compose(q_(ib, jb), component(jb));
      std::vector<char> bad(wa_.size(), 0);
      for (std::size_t a = 0; a < wa_.size(); ++a)
        if (wa_.leq(fb, a) && wa_.leq(fb2, a)) bad[a] = !composite_equals(qf, p_(fb2, a), *right[a]);
      r.anchor[jb] = first_stable(wa_, {fb, fb2}, bad, false);
    }
    for (std::size_t c = 0; c < wb_.size() && !r.star; ++c) {
      if (!wb_.leq(ib, c) || !wb_.admissible(c)) continue;
      bool ok = true;
      for (std::size_t jb = 0; jb < wb_.size() && ok; ++jb)
        if (wb_.leq(c, jb) && !r.anchor[jb]) ok = false;
      if (ok) r.star = c;
    }
    return r;
  }

 private:
  const Mor& component(std::size_t ib) {
    if (!comp_[ib]) comp_[ib] = m_.component(wb_[ib]);
    return *comp_[ib];
  }

  const DelayMorphism& m_;
  const WindowView& wb_;
  const WindowView& wa_;
  std::vector<std::optional<std::size_t>> fpos_;
  BondCache p_;
  BondCache q_;
  std::vector<std::optional<Mor>> comp_;
};

}  // namespace

Verdict check_delay_morphism(const DelayMorphism& m, const Bounds& bounds) {
  const auto& x = m.source();
  const WindowView wb(m.target().index(), bounds.horizon);
  const WindowView wa(x.index(), bounds.source_horizon());
  const Mode mode = pair_mode(m.target().index(), x.index(), bounds);
  ConditionTable table(m, wb, wa);

  Verdict v = Verdict::holding(mode, bounds.horizon);
  const auto probe = wb.probe_count(bounds.probe);
  for (std::size_t ib = 0; ib < probe; ++ib) {
    if (!table.image(ib)) return outside_window(mode, bounds.horizon, wb[ib], x.index(), m.index_map(wb[ib]));
    const auto r = table.row(ib);
    if (!r.star) {
      std::optional<std::size_t> worst;
      for (std::size_t jb = 0; jb < wb.size(); ++jb)
        if (wb.leq(ib, jb) && !r.anchor[jb]) worst = jb;
      v.holds = false;
      v.counterexample = worst ? Counterexample{{wb[ib], wb[*worst]}, "no a >= f(b), f(b') makes the shifted square commute"}
                               : Counterexample{{wb[ib]}, "no admissible b* in window"};
      return v;
    }
    v.witnesses.push_back(Witness{{wb[ib]}, {wb[*r.star], wa[*r.anchor[*r.star]]}});
  }
  return v;
}

Verdict d_equiv(const DelayMorphism& m1, const DelayMorphism& m2, const Bounds& bounds) {
  if (!m1.source().same_as(m2.source()) || !m1.target().same_as(m2.target()))
    throw PreconditionError("d-equivalence needs morphisms with the same source and target");
  const auto& x = m1.source();
  const auto& y = m1.target();
  const WindowView wb(y.index(), bounds.horizon);
  const WindowView wa(x.index(), bounds.source_horizon());
  const Mode mode = pair_mode(y.index(), x.index(), bounds);
  BondCache p(x, wa);

  Verdict v = Verdict::holding(mode, bounds.horizon);
  const auto probe = wb.probe_count(bounds.probe);
  for (std::size_t ib = 0; ib < probe; ++ib) {
    const auto& b = wb[ib];
    const auto f1 = wa.find(m1.index_map(b));
    const auto f2 = wa.find(m2.index_map(b));
    if (!f1) return outside_window(mode, bounds.horizon, b, x.index(), m1.index_map(b));
    if (!f2) return outside_window(mode, bounds.horizon, b, x.index(), m2.index_map(b));
    const Mor c1 = m1.component(b);
    const Mor c2 = m2.component(b);
    std::vector<char> bad(wa.size(), 0);
    for (std::size_t a = 0; a < wa.size(); ++a)
      if (wa.leq(*f1, a) && wa.leq(*f2, a)) bad[a] = !composite_equals(c1, p(*f1, a), compose(c2, p(*f2, a)));
    const auto ab = first_stable(wa, {*f1, *f2}, bad, true);
    if (!ab) {
      std::optional<std::size_t> worst;
      for (std::size_t a = 0; a < wa.size(); ++a)
        if (bad[a]) worst = a;
      v.holds = false;
      v.counterexample = worst ? Counterexample{{b, wa[*worst]}, "f_b p_{f(b)a} != f'_b p_{f'(b)a}"}
                               : Counterexample{{b}, "no admissible a_b in window"};
      return v;
    }
    v.witnesses.push_back(Witness{{b}, {wa[*ab]}});
  }
  return v;
}

DelayMorphism compose(const DelayMorphism& m2, const DelayMorphism& m1) {
  if (!m1.target().same_as(m2.source()))
    throw CompositionError("cannot compose delay-morphisms: target of the first is not the source of the second");
  auto f = m1.index_fn();
  auto g = m2.index_fn();
  auto c1 = m1.component_fn();
  auto c2 = m2.component_fn();
  return DelayMorphism(
      m1.source(), m2.target(), [f, g](const IndexElem& c) { return f(g(c)); },
      [g, c1, c2](const IndexElem& c) { return compose(c2(c), c1(g(c))); });
}

Verdict check_increasing(const DelayMorphism& m, const Bounds& bounds) {
  const auto& a = m.source().index();
  const WindowView wb(m.target().index(), bounds.horizon);
  std::vector<IndexElem> img;
  for (std::size_t i = 0; i < wb.size(); ++i) img.push_back(m.index_map(wb[i]));
  Verdict v = Verdict::holding(mode_for(m.target().index(), Bounds{bounds.horizon}), bounds.horizon);
  for (std::size_t i = 0; i < wb.size(); ++i)
    for (std::size_t j = 0; j < wb.size(); ++j)
      if (wb.leq(i, j) && !a.leq(img[i], img[j])) {
        v.holds = false;
        v.counterexample = Counterexample{{wb[i], wb[j]}, "b <= b' but f(b) is not below f(b')"};
        return v;
      }
  return v;
}

Verdict check_special(const DelayMorphism& m, const Bounds& bounds) {
  const auto& x = m.source();
  const auto& y = m.target();
  const WindowView wb(y.index(), bounds.horizon);
  const WindowView wa(x.index(), bounds.source_horizon());
  const Mode mode = pair_mode(y.index(), x.index(), bounds);
  const auto fpos = image_positions(m, wb, wa);
  BondCache p(x, wa);
  BondCache q(y, wb);
  std::vector<Mor> comp;
  for (std::size_t i = 0; i < wb.size(); ++i) comp.push_back(m.component(wb[i]));

  Verdict v = Verdict::holding(mode, bounds.horizon);
  const auto probe = wb.probe_count(bounds.probe);
  for (std::size_t ib = 0; ib < probe; ++ib) {
    if (!fpos[ib]) return outside_window(mode, bounds.horizon, wb[ib], x.index(), m.index_map(wb[ib]));
    std::vector<char> bad(wb.size(), 0);
    for (std::size_t jb = 0; jb < wb.size(); ++jb) {
      if (!wb.leq(ib, jb)) continue;
      if (!fpos[jb] || !wa.leq(*fpos[ib], *fpos[jb])) {
        bad[jb] = 1;
        continue;
      }
      bad[jb] = !composite_equals(q(ib, jb), comp[jb], compose(comp[ib], p(*fpos[ib], *fpos[jb])));
    }
    const auto star = first_stable(wb, {ib}, bad, true);
    if (!star) {
      std::optional<std::size_t> worst;
      for (std::size_t jb = 0; jb < wb.size(); ++jb)
        if (bad[jb]) worst = jb;
      v.holds = false;
      v.counterexample = worst ? Counterexample{{wb[ib], wb[*worst]}, "q_{bb'} f_{b'} != f_b p_{f(b)f(b')}"}
                               : Counterexample{{wb[ib]}, "no admissible b* in window"};
      return v;
    }
    v.witnesses.push_back(Witness{{wb[ib]}, {wb[*star]}});
  }
  return v;
}


Specialization make_special(const DelayMorphism& m, const Bounds& bounds) {
  const auto& x = m.source();
  const auto& y = m.target();
  if (!y.index().antisymmetric()) throw PreconditionError("make_special needs an antisymmetric target index");
  const WindowView wb(y.index(), bounds.horizon);
  const WindowView wa(x.index(), bounds.source_horizon());
  if (wb.size() == 0) throw PreconditionError("empty target window");
  ConditionTable table(m, wb, wa);
  const auto n = wb.size();

  std::vector<std::optional<ConditionTable::Row>> rows(n);
  auto row = [&](std::size_t ib) -> const ConditionTable::Row* {
    if (!table.image(ib)) return nullptr;
    if (!rows[ib]) rows[ib] = table.row(ib);
    return &*rows[ib];
  };

  std::vector<std::optional<std::size_t>> fprime(n);
  std::vector<std::string> why(n);
  std::vector<char> done(n, 0);
  std::function<void(std::size_t)> solve = [&](std::size_t ib) {
    if (done[ib]) return;
    done[ib] = 1;
    const auto& b = wb[ib];
    auto preds = y.index().predecessors(b);
    if (!preds) throw PreconditionError("target index does not list predecessors");
    if (!table.image(ib)) {
      why[ib] = "f(b) lies outside the window";
      return;
    }
    const auto fb = *table.image(ib);
    const auto astar = detail::find_commutation_index(x, wa, fb).witness;
    if (!astar) {
      why[ib] = "no commutation index for f(b) in window";
      return;
    }
    std::vector<std::size_t> lows{fb, *astar};
    std::vector<std::size_t> below{ib};
    for (const auto& pb : *preds) {
      const auto jp = wb.find(pb);
      if (!jp) {
        why[ib] = "predecessor " + y.index().label(pb) + " outside the window";
        return;
      }
      solve(*jp);
      if (!fprime[*jp]) {
        why[ib] = "f' undefined at predecessor " + y.index().label(pb);
        return;
      }
      lows.push_back(*fprime[*jp]);
      below.push_back(*jp);
    }
    for (auto b0 : below)
      if (const auto* r = row(b0); r && r->star && wb.leq(*r->star, ib)) lows.push_back(*r->anchor[ib]);
    for (std::size_t a = 0; a < wa.size(); ++a)
      if (std::all_of(lows.begin(), lows.end(), [&](std::size_t l) { return wa.leq(l, a); })) {
        fprime[ib] = a;
        return;
      }
    why[ib] = "no upper bound for f'(b) in window";
  };
  for (std::size_t ib = 0; ib < n; ++ib) solve(ib);

  std::size_t defined = bounds.horizon;
  for (std::size_t ib = 0; ib < n; ++ib)
    if (!fprime[ib]) {
      if (wb[ib].rank == 0)
        throw InconclusiveError("make_special: " + why[ib] + " at " + y.index().label(wb[ib]), bounds.horizon);
      defined = std::min(defined, wb[ib].rank - 1);
    }

  auto values = std::make_shared<std::map<IndexElem, IndexElem>>();
  auto failures = std::make_shared<std::map<IndexElem, std::string>>();
  for (std::size_t ib = 0; ib < n; ++ib) {
    if (fprime[ib]) values->emplace(wb[ib], wa[*fprime[ib]]);
    else failures->emplace(wb[ib], why[ib]);
  }
  const auto horizon = bounds.horizon;
  const PosetPtr bposet = y.index_ptr();
  IndexMap fp = [values, failures, bposet, horizon](const IndexElem& b) {
    if (auto it = values->find(b); it != values->end()) return it->second;
    auto f = failures->find(b);
    throw InconclusiveError("f' undefined at " + bposet->label(b) + (f != failures->end() ? ": " + f->second : ""),
                            horizon);
  };
  auto f = m.index_fn();
  auto c = m.component_fn();
  DelayMorphism special(x, y, fp, [x, f, c, fp](const IndexElem& b) { return compose(c(b), x.bond(f(b), fp(b))); });

  Bounds vb = Bounds{defined, std::min(bounds.probe, defined)}.with_source(bounds.source_horizon());
  Specialization out{special, check_increasing(special, vb), check_special(special, vb), d_equiv(m, special, vb),
                     defined};
  return out;
}

LevelPackage level_reindex(const DelayMorphism& m, const Bounds& bounds) {
  const auto& x = m.source();
  const auto& y = m.target();
  for (const auto* p : {&x.index(), &y.index()}) {
    if (!p->antisymmetric()) throw PreconditionError("level_reindex needs ordered index sets");
    const auto w = p->window(bounds.horizon);
    if (!w.empty() && !p->predecessors(w.front())) throw PreconditionError("level_reindex needs cofinite index sets");
  }
  if (const auto inc = check_increasing(m, bounds); !inc.holds)
    throw PreconditionError("index map is not increasing: " + inc.counterexample->reason);
  if (const auto sp = check_special(m, bounds); !sp.holds)
    throw PreconditionError("morphism is not special: " + sp.counterexample->reason);

  auto f = m.index_fn();
  auto c = std::make_shared<const PairPoset>(x.index_ptr(), y.index_ptr(), f);
  DelaySystem xs(
      c, [x, c](const IndexElem& e) { return x.object_at(c->first(e)); },
      [x, c](const IndexElem& lo, const IndexElem& hi) { return x.bond(c->first(lo), c->first(hi)); });
  DelaySystem ys(
      c, [y, c](const IndexElem& e) { return y.object_at(c->second(e)); },
      [y, c](const IndexElem& lo, const IndexElem& hi) { return y.bond(c->second(lo), c->second(hi)); });
  auto comp = m.component_fn();
  DelayMorphism level(
      xs, ys, [](const IndexElem& e) { return e; },
      [x, c, f, comp](const IndexElem& e) {
        const auto b = c->second(e);
        return compose(comp(b), x.bond(f(b), c->first(e)));
      });
  DelayMorphism i(
      x, xs, [c](const IndexElem& e) { return c->first(e); },
      [x, c](const IndexElem& e) { return identity(x.object_at(c->first(e))); });
  DelayMorphism j(
      y, ys, [c](const IndexElem& e) { return c->second(e); },
      [y, c](const IndexElem& e) { return identity(y.object_at(c->second(e))); });
  auto square = d_equiv(compose(j, m), compose(level, i), bounds);
  return LevelPackage{c, xs, ys, level, i, j, square};
}

Verdict verify_iso_pair(const DelayMorphism& m, const DelayMorphism& w, const Bounds& bounds) {
  if (!w.source().same_as(m.target()) || !w.target().same_as(m.source()))
    throw CompositionError("iso pair ends do not match: need m: X -> Y and w: Y -> X");
  return both(d_equiv(compose(w, m), DelayMorphism::identity(m.source()), bounds),
              d_equiv(compose(m, w), DelayMorphism::identity(m.target()), bounds));
}

namespace {

void require_level(const DelayMorphism& level, const WindowView& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(level.index_map(w[i]) == w[i]))
      throw PreconditionError("not a level morphism: index map moves " + level.target().index().label(w[i]));
    if (!level.source().index().contains(w[i]))
      throw PreconditionError("level morphism systems are indexed differently");
  }
}

// Positions c' >= c in w whose square q_{cc'} f_{c'} = f_c p_{cc'} fails.
std::vector<char> failing_squares(const DelayMorphism& level, const WindowView& w, std::size_t ic) {
  const auto& x = level.source();
  const auto& y = level.target();
  const Mor fc = level.component(w[ic]);
  std::vector<char> bad(w.size(), 0);
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w.leq(ic, j))
      bad[j] = !composite_equals(y.bond(w[ic], w[j]), level.component(w[j]), compose(fc, x.bond(w[ic], w[j])));
  return bad;
}

}  // namespace

Verdict square_witnesses(const DelayMorphism& level, const Bounds& bounds) {
  const WindowView w(level.target().index(), bounds.horizon);
  require_level(level, w);
  Verdict v = Verdict::holding(mode_for(level.target().index(), bounds), bounds.horizon);
  for (std::size_t ic = 0, probe = w.probe_count(bounds.probe); ic < probe; ++ic) {
    const auto bad = failing_squares(level, w, ic);
    const auto star = first_stable(w, {ic}, bad, true);
    if (!star) {
      v.holds = false;
      v.counterexample = Counterexample{{w[ic]}, "squares based here keep failing inside the window"};
      return v;
    }
    v.witnesses.push_back(Witness{{w[ic]}, {w[*star]}});
  }
  return v;
}

Verdict check_squares_strict(const DelayMorphism& level, const Bounds& bounds) {
  const WindowView w(level.target().index(), bounds.horizon);
  require_level(level, w);
  Verdict v = Verdict::holding(mode_for(level.target().index(), Bounds{bounds.horizon}), bounds.horizon);
  for (std::size_t ic = 0; ic < w.size(); ++ic) {
    const auto bad = failing_squares(level, w, ic);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (bad[j]) {
        v.holds = false;
        v.counterexample = Counterexample{{w[ic], w[j]}, "q_{cc'} f_{c'} != f_c p_{cc'}"};
        return v;
      }
  }
  return v;
}

namespace {

struct LevelData {
  DelaySystem source;
  DelaySystem target;
  DelayMorphism morphism;
  std::optional<DelayMorphism> inverse;
};

LevelData restrict_level(const DelayMorphism& level, const std::optional<DelayMorphism>& inverse,
                         const Subset& subset) {
  auto sub = std::make_shared<const SubsetPoset>(level.target().index_ptr(), subset);
  DelaySystem xs = level.source().over(sub);
  DelaySystem ys = level.target().over(sub);
  auto same = [](const IndexElem& e) { return e; };
  DelayMorphism lv(xs, ys, same, level.component_fn());
  std::optional<DelayMorphism> inv;
  if (inverse) inv = DelayMorphism(ys, xs, same, inverse->component_fn());
  return LevelData{xs, ys, lv, inv};
}

}  // namespace

ProIsoExtraction extract_pro_iso(const DelayMorphism& level, const std::optional<DelayMorphism>& inverse,
                                 const Bounds& bounds) {
  if (inverse && (!inverse->source().same_as(level.target()) || !inverse->target().same_as(level.source())))
    throw PreconditionError("inverse does not run between the level systems");
  const WindowView full(level.target().index(), bounds.horizon);
  require_level(level, full);

  bool chain = true;
  for (std::size_t i = 0; i < full.size() && chain; ++i)
    for (std::size_t j = i + 1; j < full.size() && chain; ++j) chain = full.leq(i, j) || full.leq(j, i);

  LevelData work{level.source(), level.target(), level, inverse};
  if (!chain) work = restrict_level(level, inverse, Subset::of("sequence", to_sequence(level.source(), bounds).chain));

  const WindowView w(work.target.index(), bounds.horizon);
  if (w.size() == 0) throw PreconditionError("empty window");
  const auto probe = w.probe_count(bounds.probe);
  std::size_t current = 0;
  std::vector<IndexElem> picked{w[0]};
  while (current < probe) {
    const auto ax = detail::find_commutation_index(work.source, w, current).witness;
    const auto ay = detail::find_commutation_index(work.target, w, current).witness;
    const auto sq = first_stable(w, {current}, failing_squares(work.morphism, w, current), true);
    if (!ax || !ay || !sq)
      throw InconclusiveError("no simultaneous witness for " + work.target.index().label(w[current]), bounds.horizon);
    const auto top = std::max({*ax, *ay, *sq});
    if (top + 1 >= w.size()) {
      if (top != current) picked.push_back(w[top]);
      break;
    }
    current = top + 1;
    picked.push_back(w[current]);
  }

  auto out = restrict_level(level, inverse, Subset::of("extracted", picked));
  ProIsoExtraction r{picked,
                     out.source,
                     out.target,
                     out.morphism,
                     out.inverse,
                     check_strict(out.source, bounds),
                     check_strict(out.target, bounds),
                     check_squares_strict(out.morphism, bounds),
                     std::nullopt};
  if (out.inverse) r.iso = verify_iso_pair(out.morphism, *out.inverse, bounds);
  return r;
}

ProIsoExtraction extract_pro_iso(const LevelPackage& package, const Bounds& bounds) {
  return extract_pro_iso(package.level, std::nullopt, bounds);
}

}  // namespace prokit
