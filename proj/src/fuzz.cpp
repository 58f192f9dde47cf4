#include "prokit/fuzz.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "prokit/error.hpp"

namespace prokit {

namespace {

// rng() % n keeps streams identical across standard libraries.
std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::vector<std::uint32_t> permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw(rng, i)]);
  return p;
}

std::vector<std::uint32_t> inverse_of(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint32_t>(i);
  return q;
}

std::vector<std::uint32_t> images(const Mor& f) { return {f.image().begin(), f.image().end()}; }

// Every nonempty fiber has at least two points, and the image has at most max_image points.
Mor fibered_map(std::mt19937_64& rng, const Obj& dom, const Obj& cod, std::size_t max_image) {
  const auto s = dom.size();
  const auto r = 1 + draw(rng, std::max<std::size_t>(1, std::min({cod.size(), s / 2, max_image})));
  const auto targets = permutation(rng, cod.size());
  const auto order = permutation(rng, s);
  std::vector<std::uint32_t> img(s);
  for (std::size_t i = 0; i < s; ++i) img[order[i]] = i < 2 * r ? targets[i / 2] : targets[draw(rng, r)];
  return Mor::finset_map(dom, cod, std::move(img));
}

// Random nonzero matrix with a planted kernel vector having a unit entry.
Mor singular_matrix(std::mt19937_64& rng, const Obj& dom, const Obj& cod, Residues& kernel) {
  const auto m = dom.modulus();
  for (;;) {
    Residues a(cod.dim(), dom.dim());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = static_cast<std::int64_t>(draw(rng, m));
    Residues u(dom.dim(), 1);
    for (Eigen::Index j = 0; j < u.rows(); ++j) u(j, 0) = static_cast<std::int64_t>(draw(rng, m));
    const auto pivot = static_cast<Eigen::Index>(draw(rng, dom.dim()));
    u(pivot, 0) = 1;
    Residues rest = a * u - a.col(pivot);
    a.col(pivot) = -rest;
    const Mor e = Mor::matrix(dom, cod, a);
    if ((e.entries().array() != 0).any()) {
      kernel = u;
      return e;
    }
  }
}

Obj sample_object(std::mt19937_64& rng, const PlantSpec& spec, std::size_t min_points) {
  if (spec.backend == Backend::FinSet) {
    const auto lo = std::max(spec.min_points, min_points);
    const auto hi = std::max(spec.max_points, lo);
    return Obj::finset_of_size(lo + draw(rng, hi - lo + 1));
  }
  const int dim = 2 + static_cast<int>(draw(rng, static_cast<std::size_t>(spec.max_dim - 1)));
  return Obj::matmod(dim, spec.modulus);
}

struct SequenceData {
  std::vector<Obj> objects;
  std::vector<Mor> steps;          // steps[n] : X_{n+1} -> X_n
  std::vector<Residues> kernels;   // matmod: kernel vector of steps[n]
  std::vector<std::vector<Mor>> strict;  // strict[a][b - a] = steps[a] o ... o steps[b-1]
  std::vector<std::vector<Mor>> bonds;   // same layout, after planting
};

void fill_composites(SequenceData& d) {
  const auto n = d.objects.size();
  d.strict.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    d.strict[a].push_back(identity(d.objects[a]));
    for (std::size_t b = a + 1; b < n; ++b) d.strict[a].push_back(compose(d.strict[a].back(), d.steps[b - 1]));
  }
  d.bonds = d.strict;
}

SequenceData sample_sequence(const PlantSpec& spec, std::mt19937_64& rng, std::size_t min_points,
                             std::size_t max_image_slack) {
  SequenceData d;
  const auto n = spec.length;
  for (std::size_t i = 0; i < n; ++i) d.objects.push_back(sample_object(rng, spec, min_points));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (spec.backend == Backend::FinSet) {
      d.steps.push_back(fibered_map(rng, d.objects[i + 1], d.objects[i], d.objects[i].size() - max_image_slack));
    } else {
      Residues k;
      d.steps.push_back(singular_matrix(rng, d.objects[i + 1], d.objects[i], k));
      d.kernels.push_back(k);
    }
  }
  fill_composites(d);
  return d;
}

// One object size N >= 4 throughout. Step n is the identity on N - 2 points and sends the
// other two into them, seen through random relabelings of every object.
SequenceData sample_level_sequence(const PlantSpec& spec, std::mt19937_64& rng) {
  SequenceData d;
  const auto n = spec.length;
  const auto lo = std::max<std::size_t>(spec.min_points, 4);
  const auto size = lo + draw(rng, std::max(spec.max_points, lo) - lo + 1);
  std::vector<std::vector<std::uint32_t>> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.objects.push_back(Obj::finset_of_size(size));
    label[i] = permutation(rng, size);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::uint32_t> img(size);
    for (std::size_t v = 0; v < size; ++v) img[label[i + 1][v]] = label[i][v < size - 2 ? v : draw(rng, size - 2)];
    d.steps.push_back(Mor::finset_map(d.objects[i + 1], d.objects[i], std::move(img)));
  }
  fill_composites(d);
  return d;
}

DelaySystem sequence_system(std::shared_ptr<const SequenceData> d, PosetPtr nat) {
  const auto last = d->objects.size() - 1;
  return DelaySystem(
      std::move(nat),
      [d, last](const IndexElem& e) { return d->objects[std::min<std::size_t>(e.key[0], last)]; },
      [d, last](const IndexElem& lo, const IndexElem& hi) {
        const auto i = static_cast<std::size_t>(lo.key[0]);
        if (i >= last) return identity(d->objects[last]);
        const auto j = std::min<std::size_t>(static_cast<std::size_t>(hi.key[0]), last);
        return d->bonds[i][j - i];
      });
}

// Replace bond(a, d(a) - 1) by a map that disagrees with the strict one after the step
// d(a)-1 <- d(a) but agrees after the strict bond to the largest e < a with d(e) <= a.
void plant(SequenceData& d, const PlantSpec& spec, std::mt19937_64& rng) {
  const auto& prof = spec.delay_profile;
  for (std::size_t a = 0; a < prof.size(); ++a) {
    const auto da = prof[a];
    if (da == a) continue;
    std::optional<std::size_t> emax;
    for (std::size_t e = 0; e < a; ++e)
      if (prof[e] <= a) emax = e;
    const Mor& orig = d.strict[a][da - 1 - a];
    const Mor& step = d.steps[da - 1];
    if (spec.backend == Backend::FinSet) {
      const auto o = images(orig);
      std::optional<std::vector<std::uint32_t>> k;
      if (emax) k = images(d.strict[*emax][a - *emax]);
      std::set<std::uint32_t> hit(step.image().begin(), step.image().end());
      std::vector<std::pair<std::uint32_t, std::uint32_t>> options;
      for (auto y : hit)
        for (std::uint32_t z = 0; z < d.objects[a].size(); ++z)
          if (z != o[y] && (!k || (*k)[z] == (*k)[o[y]])) options.emplace_back(y, z);
      if (options.empty()) throw GenerationError("no admissible perturbation at index " + std::to_string(a));
      const auto [y, z] = options[draw(rng, options.size())];
      auto p = o;
      p[y] = z;
      d.bonds[a][da - 1 - a] = Mor::finset_map(orig.dom(), orig.cod(), std::move(p));
    } else {
      Residues u;
      if (emax) {
        u = d.kernels[a - 1];
      } else {
        u = Residues::Zero(d.objects[a].dim(), 1);
        u(static_cast<Eigen::Index>(draw(rng, d.objects[a].dim())), 0) = 1;
      }
      std::vector<Eigen::Index> rows;
      for (Eigen::Index i = 0; i < step.entries().rows(); ++i)
        if ((step.entries().row(i).array() != 0).any()) rows.push_back(i);
      Residues v = Residues::Zero(1, step.entries().rows());
      v(0, rows[draw(rng, rows.size())]) = 1;
      d.bonds[a][da - 1 - a] = Mor::matrix(orig.dom(), orig.cod(), orig.entries() + u * v);
    }
  }
}

}  // namespace

void validate(const PlantSpec& spec) {
  if (spec.length == 0) throw GenerationError("length must be positive");
  if (spec.backend == Backend::FinSet && (spec.min_points < 2 || spec.max_points < spec.min_points))
    throw GenerationError("finset objects need 2 <= min_points <= max_points");
  if (spec.backend == Backend::MatMod && (spec.max_dim < 2 || spec.modulus < 2))
    throw GenerationError("matmod objects need max_dim >= 2 and modulus >= 2");
  const auto& p = spec.delay_profile;
  if (!p.empty() && p.size() != spec.length) throw GenerationError("delay profile must cover every index");
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] < a || p[a] >= spec.length)
      throw GenerationError("delay profile out of range at " + std::to_string(a));
    if (p[a] == a + 1) throw GenerationError("delay a+1 cannot be minimal (index " + std::to_string(a) + ")");
  }
  if (spec.morphism_delay >= spec.length && spec.morphism_delay != 0)
    throw GenerationError("morphism delay must lie below length");
}

std::vector<std::size_t> random_profile(std::size_t length, std::size_t max_delay, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::vector<std::size_t> p(length);
  for (std::size_t a = 0; a < length; ++a) {
    std::size_t k = max_delay < 2 ? 0 : draw(rng, max_delay);  // 0..max_delay-1, then shift 1 -> max_delay
    if (k == 1) k = max_delay;
    p[a] = a + k < length ? a + k : a;
  }
  return p;
}

std::vector<std::size_t> step_profile(std::size_t length, std::size_t step) {
  if (step == 1) throw GenerationError("step 1 cannot be a minimal delay");
  std::vector<std::size_t> p(length);
  for (std::size_t a = 0; a < length; ++a) p[a] = a + step < length ? a + step : a;
  return p;
}

DelaySystem gen_strict_sequence(const PlantSpec& spec) {
  PlantSpec strict = spec;
  strict.delay_profile.clear();
  return gen_planted_sequence(strict);
}

DelaySystem gen_planted_sequence(const PlantSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  auto d = std::make_shared<SequenceData>(sample_sequence(spec, rng, 2, 0));
  plant(*d, spec, rng);
  return sequence_system(d, std::make_shared<const NatPoset>());
}

PlantedLevelIso gen_planted_level_iso(const PlantSpec& spec) {
  validate(spec);
  if (spec.backend != Backend::FinSet) throw GenerationError("planted level isos are generated over finset only");
  std::mt19937_64 rng(spec.seed);
  const auto n = spec.length;
  const auto depth = std::min(spec.morphism_delay, n - 1);

  // rho[i] permutes X_i and fixes the image of bond(i, depth), so f_i = sigma_i rho_i
  // leaves every square reaching depth intact. The square (0, depth - 1) must break:
  // either by moving two points above depth - 1 that bond(0, depth - 1) separates, or,
  // when it collapses them to one value v outside the image of bond(0, depth), by moving v.
  std::shared_ptr<SequenceData> x;
  std::vector<std::vector<std::uint32_t>> rho(n);
  auto outside = [](const Mor& bond, std::size_t size) {
    std::vector<char> hit(size, 0);
    for (auto v : bond.image()) hit[v] = 1;
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < size; ++v)
      if (!hit[v]) free.push_back(v);
    return free;
  };
  auto swap_of = [](std::size_t size, std::uint32_t u, std::uint32_t v) {
    std::vector<std::uint32_t> r(size);
    for (std::uint32_t i = 0; i < size; ++i) r[i] = i;
    std::swap(r[u], r[v]);
    return r;
  };
  for (int attempt = 0;; ++attempt) {
    if (attempt == 64) throw GenerationError("no visible morphism delay after 64 samples");
    x = std::make_shared<SequenceData>(sample_level_sequence(spec, rng));
    for (std::size_t i = 0; i < n; ++i) {
      const auto size = x->objects[i].size();
      if (i >= depth) {
        rho[i] = swap_of(size, 0, 0);
        continue;
      }
      const auto free = outside(x->strict[i][depth - i], size);
      const auto u = draw(rng, free.size());
      auto v = draw(rng, free.size() - 1);
      if (v >= u) ++v;
      rho[i] = swap_of(size, free[u], free[v]);
    }
    if (depth < 2) break;

    const auto last = depth - 1;
    const auto& p = x->strict[0][last];
    const auto above = outside(x->strict[last][1], x->objects[last].size());
    std::optional<std::pair<std::uint32_t, std::uint32_t>> split;
    for (auto a : above)
      for (auto b : above)
        if (!split && p.image()[a] != p.image()[b]) split = std::pair{a, b};
    if (split) {
      rho[0] = swap_of(x->objects[0].size(), 0, 0);
      rho[last] = swap_of(x->objects[last].size(), split->first, split->second);
      break;
    }
    const auto value = p.image()[above.front()];
    const auto free0 = outside(x->strict[0][depth], x->objects[0].size());
    if (std::find(free0.begin(), free0.end(), value) == free0.end()) continue;
    const auto other = value == free0.front() ? free0.back() : free0.front();
    rho[0] = swap_of(x->objects[0].size(), value, other);
    rho[last] = swap_of(x->objects[last].size(), 0, 0);
    break;
  }

  std::vector<std::vector<std::uint32_t>> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = permutation(rng, x->objects[i].size());

  auto y = std::make_shared<SequenceData>(*x);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const auto p = images(x->strict[a][b - a]);
      const auto back = inverse_of(sigma[b]);
      std::vector<std::uint32_t> q(p.size());
      for (std::size_t v = 0; v < q.size(); ++v) q[v] = sigma[a][p[back[v]]];
      y->strict[a][b - a] = Mor::finset_map(y->objects[b], y->objects[a], std::move(q));
    }
  y->bonds = y->strict;

  auto forward = std::make_shared<std::vector<Mor>>();
  auto backward = std::make_shared<std::vector<Mor>>();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> f(rho[i].size());
    for (std::size_t v = 0; v < f.size(); ++v) f[v] = sigma[i][rho[i][v]];
    forward->push_back(Mor::finset_map(x->objects[i], y->objects[i], f));
    backward->push_back(Mor::finset_map(y->objects[i], x->objects[i], inverse_of(f)));
  }

  auto nat = std::make_shared<const NatPoset>();
  DelaySystem xs = sequence_system(x, nat);
  DelaySystem ys = sequence_system(y, nat);
  const auto last = n - 1;
  auto same = [](const IndexElem& e) { return e; };
  auto at = [last](const std::shared_ptr<std::vector<Mor>>& v) {
    return [v, last](const IndexElem& e) { return (*v)[std::min<std::size_t>(e.key[0], last)]; };
  };
  DelayMorphism f(xs, ys, same, at(forward));
  DelayMorphism g(ys, xs, same, at(backward));
  return PlantedLevelIso{xs, ys, f, g};
}

DelaySystem gen_adversarial_sequence() {
  const Obj two = Obj::finset_of_size(2);
  const Mor id = identity(two);
  const Mor swap = Mor::finset_map(two, two, {1, 0});
  return DelaySystem(
      std::make_shared<const NatPoset>(), [two](const IndexElem&) { return two; },
      [id, swap](const IndexElem& lo, const IndexElem& hi) { return lo.key[0] == 0 && hi.key[0] % 2 == 1 ? swap : id; });
}

std::optional<IndexElem> oracle_min_commutation(const DelaySystem& s, const IndexElem& a, std::size_t horizon) {
  const auto& poset = s.index();
  const auto elems = poset.window(horizon);
  const bool whole = poset.cardinality() && *poset.cardinality() == elems.size();
  std::vector<IndexElem> above;
  for (const auto& e : elems)
    if (poset.leq(a, e)) above.push_back(e);

  // Middles a' with some failing triple (a, a', a''), scanned from the top down.
  std::vector<char> bad(above.size(), 0);
  for (std::size_t i = above.size(); i-- > 0;) {
    const Mor head = s.bond(a, above[i]);
    for (std::size_t k = above.size(); k-- > 0;) {
      if (!poset.leq(above[i], above[k])) continue;
      if (!mor_eq(compose(head, s.bond(above[i], above[k])), s.bond(a, above[k]))) {
        bad[i] = 1;
        break;
      }
    }
  }
  for (const auto& c : above) {
    if (!whole && std::none_of(elems.begin(), elems.end(), [&](const IndexElem& e) { return poset.lt(c, e); }))
      continue;
    bool ok = true;
    for (std::size_t i = 0; i < above.size() && ok; ++i)
      if (bad[i] && poset.leq(c, above[i])) ok = false;
    if (ok) return c;
  }
  return std::nullopt;
}

std::shared_ptr<const FinitePoset> random_directed_poset(std::mt19937_64& rng, std::size_t max_size) {
  const auto n = 1 + draw(rng, max_size);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pairs.emplace_back(i, n - 1);
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      if (draw(rng, 5) < 2) pairs.emplace_back(i, j);
  }
  return std::make_shared<const FinitePoset>(std::move(labels), pairs);
}

std::vector<std::uint32_t> random_point_map(std::mt19937_64& rng, std::size_t from, std::size_t to) {
  std::vector<std::uint32_t> t(from);
  for (auto& v : t) v = static_cast<std::uint32_t>(draw(rng, to));
  return t;
}

PartitionSystem random_partition_system(std::mt19937_64& rng, std::size_t max_index, std::size_t max_points) {
  PartitionSystem out{random_directed_poset(rng, max_index), 2 + draw(rng, std::max<std::size_t>(1, max_points - 1)),
                      {}, DelaySystem(nullptr, nullptr, nullptr)};
  const auto& poset = *out.index;
  const auto n = poset.labels().size();
  const auto t = out.points;
  std::vector<std::vector<std::uint32_t>> raw(n);
  for (std::size_t x = 0; x < n; ++x) raw[x] = x + 1 == n ? permutation(rng, t) : random_point_map(rng, t, t);

  out.block_of.resize(n);
  std::vector<Obj> objects;
  for (std::size_t a = 0; a < n; ++a) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    for (std::size_t p = 0; p < t; ++p) {
      std::vector<std::uint32_t> sig;
      for (std::size_t x = 0; x < n; ++x)
        if (poset.leq(poset.elem(x), poset.elem(a))) sig.push_back(raw[x][p]);
      auto [it, fresh] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
      out.block_of[a].push_back(it->second);
    }
    objects.push_back(Obj::finset_of_size(ids.size()));
  }

  std::map<std::pair<std::size_t, std::size_t>, Mor> bonds;
  for (auto [lo, hi] : poset.strict_pairs()) {
    std::vector<std::uint32_t> img(objects[hi].size());
    for (std::size_t p = 0; p < t; ++p) img[out.block_of[hi][p]] = out.block_of[lo][p];
    bonds.emplace(std::make_pair(lo, hi), Mor::finset_map(objects[hi], objects[lo], std::move(img)));
  }
  out.system = make_finite_system(out.index, std::move(objects), std::move(bonds));
  return out;
}

DelayMorphism partition_morphism(const PartitionSystem& x, const PartitionSystem& y,
                                 const std::vector<std::uint32_t>& t, std::mt19937_64& rng) {
  if (t.size() != x.points) throw PreconditionError("point map has the wrong domain");
  const auto na = x.index->labels().size();
  const auto nb = y.index->labels().size();
  auto index = std::make_shared<std::vector<IndexElem>>();
  auto comps = std::make_shared<std::vector<Mor>>();
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<std::size_t> ok;
    for (std::size_t a = 0; a < na; ++a) {
      bool fits = true;
      for (std::size_t u = 0; u < x.points && fits; ++u)
        for (std::size_t v = 0; v < x.points && fits; ++v)
          if (x.block_of[a][u] == x.block_of[a][v] && y.block_of[b][t[u]] != y.block_of[b][t[v]]) fits = false;
      if (fits) ok.push_back(a);
    }
    const auto a = ok[draw(rng, ok.size())];
    const Obj dom = x.system.object_at(x.index->elem(a));
    std::vector<std::uint32_t> img(dom.size());
    for (std::size_t u = 0; u < x.points; ++u) img[x.block_of[a][u]] = y.block_of[b][t[u]];
    index->push_back(x.index->elem(a));
    comps->push_back(Mor::finset_map(dom, y.system.object_at(y.index->elem(b)), std::move(img)));
  }
  return DelayMorphism(
      x.system, y.system, [index](const IndexElem& b) { return (*index)[static_cast<std::size_t>(b.key[0])]; },
      [comps](const IndexElem& b) { return (*comps)[static_cast<std::size_t>(b.key[0])]; });
}

FuzzResult run_fuzz(const FuzzOptions& options) {
  FuzzResult r;
  for (std::size_t i = 0; i < options.seeds; ++i) {
    PlantSpec spec;
    spec.length = options.length;
    spec.backend = options.backend;
    spec.seed = options.base_seed + i;
    spec.delay_profile = random_profile(spec.length, options.max_delay, spec.seed);
    const DelaySystem s = gen_planted_sequence(spec);
    ++r.seeds_run;
    if (const auto wf = check_wellformed(s, options.horizon); !wf.holds) {
      r.disagreements.push_back({spec.seed, 0, std::nullopt, std::nullopt, std::nullopt,
                                 "generated system is not well formed: " + wf.counterexample->reason});
      continue;
    }
    const auto top = std::min(options.probe, spec.length - 1);
    for (std::size_t a = 0; a <= top; ++a) {
      const auto elem = NatPoset::at(a);
      const auto v = min_commutation_index(s, elem, Bounds{options.horizon});
      std::optional<std::size_t> engine;
      if (v.holds) engine = v.witnesses.front().chosen.front().rank;
      if (options.inject_fault && engine && a == 1) ++*engine;
      std::optional<std::size_t> oracle;
      if (auto o = oracle_min_commutation(s, elem, options.horizon)) oracle = o->rank;
      const auto planted = spec.delay_profile[a];
      ++r.comparisons;
      if (engine != oracle || oracle != planted)
        r.disagreements.push_back({spec.seed, a, planted, engine, oracle, "min commutation index mismatch"});
    }
  }
  return r;
}

}  // namespace prokit
