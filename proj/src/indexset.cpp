#include "prokit/indexset.hpp"

#include <algorithm>
#include <sstream>

#include "prokit/error.hpp"

namespace prokit {

// ---------------------------------------------------------------------------
// IndexPoset

std::optional<std::vector<IndexElem>> IndexPoset::predecessors(const IndexElem&) const { return std::nullopt; }

std::string IndexPoset::label(const IndexElem& x) const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < x.key.size(); ++i) os << (i ? "," : "") << x.key[i];
  os << ">";
  return os.str();
}

bool IndexPoset::saturated(std::size_t horizon) const {
  if (kind() != PosetKind::Finite) return false;
  const auto n = cardinality();
  return n && window(horizon).size() == *n;
}

// ---------------------------------------------------------------------------
// WindowView

WindowView::WindowView(const IndexPoset& poset, std::size_t horizon)
    : elems_(poset.window(horizon)), horizon_(horizon), saturated_(poset.saturated(horizon)) {
  const auto n = elems_.size();
  rel_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel_[i * n + j] = poset.leq(elems_[i], elems_[j]) ? 1 : 0;
  has_strict_upper_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lt(i, j)) {
        has_strict_upper_[i] = 1;
        break;
      }
}

std::optional<std::size_t> WindowView::find(const IndexElem& x) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

std::size_t WindowView::probe_count(std::size_t probe) const {
  return static_cast<std::size_t>(std::partition_point(elems_.begin(), elems_.end(),
                                                       [probe](const IndexElem& e) { return e.rank <= probe; }) -
                                  elems_.begin());
}

bool WindowView::admissible(std::size_t i) const { return saturated_ || has_strict_upper_[i] != 0; }

Mode mode_for(const IndexPoset& poset, const Bounds& bounds) {
  return poset.saturated(bounds.horizon) && poset.saturated(bounds.probe) ? Mode::Exact : Mode::Windowed;
}

Bounds standard_bounds(const IndexPoset& poset, std::size_t horizon) {
  if (poset.kind() == PosetKind::Finite) return Bounds{horizon};
  return Bounds{horizon, horizon / 2};
}

// ---------------------------------------------------------------------------
// FinitePoset

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs)
    : labels_(std::move(labels)) {
  const auto n = labels_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j]) throw PreconditionError("duplicate element label '" + labels_[i] + "'");
  rel_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) rel_[i * n + i] = 1;
  for (auto [i, j] : leq_pairs) {
    if (i >= n || j >= n) throw PreconditionError("order pair refers to a missing element");
    rel_[i * n + j] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel_[k * n + j]) rel_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rel_[i * n + j] && rel_[j * n + i]) antisymmetric_ = false;
}

std::size_t FinitePoset::index_of(const IndexElem& x) const {
  if (!contains(x)) throw PreconditionError("element not in finite poset: " + IndexPoset::label(x));
  return static_cast<std::size_t>(x.key[0]);
}

bool FinitePoset::leq(const IndexElem& x, const IndexElem& y) const {
  return rel_[index_of(x) * labels_.size() + index_of(y)] != 0;
}

std::vector<IndexElem> FinitePoset::window(std::size_t horizon) const {
  std::vector<IndexElem> out;
  for (std::size_t i = 0; i < labels_.size() && i <= horizon; ++i) out.push_back(elem(i));
  return out;
}

bool FinitePoset::contains(const IndexElem& x) const {
  return x.key.size() == 1 && x.key[0] >= 0 && static_cast<std::size_t>(x.key[0]) < labels_.size() &&
         x.rank == static_cast<std::size_t>(x.key[0]);
}

std::optional<std::vector<IndexElem>> FinitePoset::predecessors(const IndexElem& a) const {
  const auto ia = index_of(a);
  std::vector<IndexElem> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (i != ia && rel_[i * labels_.size() + ia]) out.push_back(elem(i));
  return out;
}

std::string FinitePoset::label(const IndexElem& x) const { return labels_[index_of(x)]; }

IndexElem FinitePoset::elem(std::size_t i) const { return IndexElem{{static_cast<std::int64_t>(i)}, i}; }

std::optional<IndexElem> FinitePoset::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return elem(i);
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::strict_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto n = labels_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rel_[i * n + j]) out.emplace_back(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// NatPoset, NatSquarePoset

IndexElem NatPoset::at(std::size_t n) { return IndexElem{{static_cast<std::int64_t>(n)}, n}; }

std::vector<IndexElem> NatPoset::window(std::size_t horizon) const {
  std::vector<IndexElem> out;
  out.reserve(horizon + 1);
  for (std::size_t n = 0; n <= horizon; ++n) out.push_back(at(n));
  return out;
}

bool NatPoset::contains(const IndexElem& x) const {
  return x.key.size() == 1 && x.key[0] >= 0 && x.rank == static_cast<std::size_t>(x.key[0]);
}

std::optional<std::vector<IndexElem>> NatPoset::predecessors(const IndexElem& a) const {
  std::vector<IndexElem> out;
  for (std::size_t n = 0; n < a.rank; ++n) out.push_back(at(n));
  return out;
}

std::string NatPoset::label(const IndexElem& x) const { return std::to_string(x.key[0]); }

IndexElem NatSquarePoset::at(std::size_t i, std::size_t j) {
  return IndexElem{{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, std::max(i, j)};
}

bool NatSquarePoset::leq(const IndexElem& x, const IndexElem& y) const {
  return x.key[0] <= y.key[0] && x.key[1] <= y.key[1];
}

std::vector<IndexElem> NatSquarePoset::window(std::size_t horizon) const {
  std::vector<IndexElem> out;
  for (std::size_t i = 0; i <= horizon; ++i)
    for (std::size_t j = 0; j <= horizon; ++j) out.push_back(at(i, j));
  std::sort(out.begin(), out.end());
  return out;
}

bool NatSquarePoset::contains(const IndexElem& x) const {
  return x.key.size() == 2 && x.key[0] >= 0 && x.key[1] >= 0 &&
         x.rank == static_cast<std::size_t>(std::max(x.key[0], x.key[1]));
}

std::optional<std::vector<IndexElem>> NatSquarePoset::predecessors(const IndexElem& a) const {
  std::vector<IndexElem> out;
  for (std::int64_t i = 0; i <= a.key[0]; ++i)
    for (std::int64_t j = 0; j <= a.key[1]; ++j)
      if (i != a.key[0] || j != a.key[1]) out.push_back(at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  std::sort(out.begin(), out.end());
  return out;
}

std::string NatSquarePoset::label(const IndexElem& x) const {
  return "(" + std::to_string(x.key[0]) + "," + std::to_string(x.key[1]) + ")";
}

// ---------------------------------------------------------------------------
// MardesicPoset
//
// Key layout: [cardinality, then per member: rank, key length, key...].

MardesicPoset::MardesicPoset(PosetPtr base) : base_(std::move(base)) {
  if (!base_->antisymmetric()) throw PreconditionError("Mardesic reindexing needs an antisymmetric index set");
}

std::vector<IndexElem> MardesicPoset::members(const IndexElem& b) const {
  std::vector<IndexElem> out;
  if (b.key.empty()) return out;
  const auto card = static_cast<std::size_t>(b.key[0]);
  std::size_t pos = 1;
  for (std::size_t m = 0; m < card; ++m) {
    if (pos + 2 > b.key.size()) throw PreconditionError("malformed Mardesic element");
    IndexElem e;
    e.rank = static_cast<std::size_t>(b.key[pos]);
    const auto len = static_cast<std::size_t>(b.key[pos + 1]);
    pos += 2;
    if (pos + len > b.key.size()) throw PreconditionError("malformed Mardesic element");
    e.key.assign(b.key.begin() + static_cast<std::ptrdiff_t>(pos), b.key.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    out.push_back(std::move(e));
  }
  if (pos != b.key.size()) throw PreconditionError("malformed Mardesic element");
  return out;
}

IndexElem MardesicPoset::encode(const std::vector<IndexElem>& sorted_members) const {
  IndexElem b;
  b.key.push_back(static_cast<std::int64_t>(sorted_members.size()));
  for (const auto& m : sorted_members) {
    b.key.push_back(static_cast<std::int64_t>(m.rank));
    b.key.push_back(static_cast<std::int64_t>(m.key.size()));
    b.key.insert(b.key.end(), m.key.begin(), m.key.end());
    b.rank = std::max(b.rank, m.rank);
  }
  return b;
}

std::optional<std::size_t> MardesicPoset::maximum_index(const std::vector<IndexElem>& ms) const {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool top = true;
    for (std::size_t j = 0; j < ms.size() && top; ++j) top = base_->leq(ms[j], ms[i]);
    if (top) return i;
  }
  return std::nullopt;
}

IndexElem MardesicPoset::make(std::vector<IndexElem> ms) const {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.empty()) throw PreconditionError("Mardesic elements are nonempty");
  if (!maximum_index(ms)) throw PreconditionError("member set has no maximum");
  return encode(ms);
}

IndexElem MardesicPoset::max_of(const IndexElem& b) const {
  const auto ms = members(b);
  const auto i = maximum_index(ms);
  if (!i) throw PreconditionError("member set has no maximum");
  return ms[*i];
}

IndexElem MardesicPoset::singleton(const IndexElem& a) const { return encode({a}); }

bool MardesicPoset::leq(const IndexElem& x, const IndexElem& y) const {
  const auto mx = members(x);
  const auto my = members(y);
  return std::includes(my.begin(), my.end(), mx.begin(), mx.end());
}

bool MardesicPoset::contains(const IndexElem& x) const {
  try {
    const auto ms = members(x);
    if (ms.empty() || !std::is_sorted(ms.begin(), ms.end())) return false;
    if (std::adjacent_find(ms.begin(), ms.end()) != ms.end()) return false;
    for (const auto& m : ms)
      if (!base_->contains(m)) return false;
    return maximum_index(ms).has_value() && encode(ms) == x;
  } catch (const PreconditionError&) {
    return false;
  }
}

namespace {

// All nonempty subsets (as sorted member lists) of `pool` that have a maximum.
template <typename HasMax>
std::vector<std::vector<IndexElem>> subsets_with_max(const std::vector<IndexElem>& pool, HasMax has_max) {
  if (pool.size() > MardesicPoset::kMaxBaseWindow)
    throw UnsupportedQuery("Mardesic window over " + std::to_string(pool.size()) + " base elements is too large");
  std::vector<std::vector<IndexElem>> out;
  const std::uint64_t count = std::uint64_t{1} << pool.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    std::vector<IndexElem> ms;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) ms.push_back(pool[i]);
    if (has_max(ms)) out.push_back(std::move(ms));
  }
  return out;
}

}  // namespace

std::vector<IndexElem> MardesicPoset::window(std::size_t horizon) const {
  auto pool = base_->window(horizon);
  std::vector<IndexElem> out;
  for (auto& ms : subsets_with_max(pool, [this](const auto& ms) { return maximum_index(ms).has_value(); }))
    out.push_back(encode(ms));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<IndexElem>> MardesicPoset::predecessors(const IndexElem& a) const {
  std::vector<IndexElem> out;
  for (auto& ms : subsets_with_max(members(a), [this](const auto& ms) { return maximum_index(ms).has_value(); })) {
    auto e = encode(ms);
    if (!(e == a)) out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> MardesicPoset::cardinality() const {
  if (base_->kind() != PosetKind::Finite) return std::nullopt;
  const auto n = base_->cardinality();
  if (!n) return std::nullopt;
  return window(*n).size();
}

std::string MardesicPoset::label(const IndexElem& x) const {
  std::string s = "{";
  const auto ms = members(x);
  for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? "," : "") + base_->label(ms[i]);
  return s + "}";
}

// ---------------------------------------------------------------------------
// PairPoset
//
// Key layout: [rank a, key length a, key a..., rank b, key b...].

PairPoset::PairPoset(PosetPtr first, PosetPtr second, IndexMap f)
    : first_(std::move(first)), second_(std::move(second)), f_(std::move(f)) {}

PosetKind PairPoset::kind() const {
  return first_->kind() == PosetKind::Finite && second_->kind() == PosetKind::Finite ? PosetKind::Finite
                                                                                     : PosetKind::WindowedInfinite;
}

IndexElem PairPoset::make(const IndexElem& a, const IndexElem& b) const {
  IndexElem c;
  c.key.push_back(static_cast<std::int64_t>(a.rank));
  c.key.push_back(static_cast<std::int64_t>(a.key.size()));
  c.key.insert(c.key.end(), a.key.begin(), a.key.end());
  c.key.push_back(static_cast<std::int64_t>(b.rank));
  c.key.insert(c.key.end(), b.key.begin(), b.key.end());
  c.rank = std::max(a.rank, b.rank);
  return c;
}

IndexElem PairPoset::first(const IndexElem& c) const {
  if (c.key.size() < 3) throw PreconditionError("malformed pair element");
  const auto len = static_cast<std::size_t>(c.key[1]);
  if (2 + len + 1 > c.key.size()) throw PreconditionError("malformed pair element");
  return IndexElem{Key(c.key.begin() + 2, c.key.begin() + 2 + static_cast<std::ptrdiff_t>(len)),
                   static_cast<std::size_t>(c.key[0])};
}

IndexElem PairPoset::second(const IndexElem& c) const {
  if (c.key.size() < 3) throw PreconditionError("malformed pair element");
  const auto len = static_cast<std::size_t>(c.key[1]);
  if (2 + len + 1 > c.key.size()) throw PreconditionError("malformed pair element");
  const auto pos = 2 + len;
  return IndexElem{Key(c.key.begin() + static_cast<std::ptrdiff_t>(pos + 1), c.key.end()),
                   static_cast<std::size_t>(c.key[pos])};
}

bool PairPoset::leq(const IndexElem& x, const IndexElem& y) const {
  return first_->leq(first(x), first(y)) && second_->leq(second(x), second(y));
}

std::vector<IndexElem> PairPoset::window(std::size_t horizon) const {
  const auto as = first_->window(horizon);
  const auto bs = second_->window(horizon);
  std::vector<IndexElem> out;
  for (const auto& b : bs) {
    const auto fb = f_(b);
    for (const auto& a : as)
      if (first_->leq(fb, a)) out.push_back(make(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PairPoset::contains(const IndexElem& x) const {
  try {
    const auto a = first(x);
    const auto b = second(x);
    return first_->contains(a) && second_->contains(b) && first_->leq(f_(b), a) && make(a, b) == x;
  } catch (const PreconditionError&) {
    return false;
  }
}

std::optional<std::vector<IndexElem>> PairPoset::predecessors(const IndexElem& c) const {
  const auto a = first(c);
  const auto b = second(c);
  auto pa = first_->predecessors(a);
  auto pb = second_->predecessors(b);
  if (!pa || !pb) return std::nullopt;
  pa->push_back(a);
  pb->push_back(b);
  std::vector<IndexElem> out;
  for (const auto& y : *pb) {
    const auto fy = f_(y);
    for (const auto& x : *pa)
      if (first_->leq(fy, x) && !(x == a && y == b)) out.push_back(make(x, y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> PairPoset::cardinality() const {
  if (kind() != PosetKind::Finite) return std::nullopt;
  const auto n = std::max(first_->cardinality().value_or(0), second_->cardinality().value_or(0));
  return window(n).size();
}

std::string PairPoset::label(const IndexElem& x) const {
  return "(" + first_->label(first(x)) + "," + second_->label(second(x)) + ")";
}

// ---------------------------------------------------------------------------
// Subsets

Subset Subset::evens() {
  return Subset{"evens", [](const IndexElem& x) { return x.rank % 2 == 0; }};
}

Subset Subset::odds() {
  return Subset{"odds", [](const IndexElem& x) { return x.rank % 2 == 1; }};
}

Subset Subset::tail(std::size_t n) {
  return Subset{"tail:" + std::to_string(n), [n](const IndexElem& x) { return x.rank >= n; }};
}

Subset Subset::of(std::string name, std::vector<IndexElem> members) {
  std::sort(members.begin(), members.end());
  return Subset{std::move(name), [ms = std::move(members)](const IndexElem& x) {
                  return std::binary_search(ms.begin(), ms.end(), x);
                }};
}

SubsetPoset::SubsetPoset(PosetPtr base, Subset subset) : base_(std::move(base)), subset_(std::move(subset)) {}

std::vector<IndexElem> SubsetPoset::window(std::size_t horizon) const {
  auto all = base_->window(horizon);
  std::erase_if(all, [this](const IndexElem& x) { return !subset_.contains(x); });
  return all;
}

std::optional<std::vector<IndexElem>> SubsetPoset::predecessors(const IndexElem& a) const {
  auto p = base_->predecessors(a);
  if (p) std::erase_if(*p, [this](const IndexElem& x) { return !subset_.contains(x); });
  return p;
}

std::optional<std::size_t> SubsetPoset::cardinality() const {
  if (base_->kind() != PosetKind::Finite) return std::nullopt;
  const auto n = base_->cardinality();
  if (!n) return std::nullopt;
  return window(*n).size();
}

// ---------------------------------------------------------------------------
// Operations

std::vector<IndexElem> enumerate_window(const IndexPoset& poset, std::size_t horizon) { return poset.window(horizon); }

Verdict is_directed(const IndexPoset& poset, const Bounds& bounds) {
  const WindowView w(poset, bounds.horizon);
  const auto probe = w.probe_count(bounds.probe);
  Verdict v = Verdict::holding(mode_for(poset, bounds), bounds.horizon);
  for (std::size_t i = 0; i < probe; ++i)
    for (std::size_t j = i; j < probe; ++j) {
      std::optional<std::size_t> ub;
      for (std::size_t k = 0; k < w.size() && !ub; ++k)
        if (w.leq(i, k) && w.leq(j, k)) ub = k;
      if (!ub) {
        v.holds = false;
        v.witnesses.clear();
        v.counterexample = Counterexample{{w[i], w[j]}, "no upper bound in window"};
        return v;
      }
      v.witnesses.push_back(Witness{{w[i], w[j]}, {w[*ub]}});
    }
  return v;
}

Verdict is_cofinal(const IndexPoset& poset, const Subset& subset, const Bounds& bounds) {
  const WindowView w(poset, bounds.horizon);
  const auto probe = w.probe_count(bounds.probe);
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (subset.contains(w[k])) members.push_back(k);
  Verdict v = Verdict::holding(mode_for(poset, bounds), bounds.horizon);
  for (std::size_t i = 0; i < probe; ++i) {
    auto it = std::find_if(members.begin(), members.end(), [&](std::size_t k) { return w.leq(i, k); });
    if (it == members.end()) {
      v.holds = false;
      v.witnesses.clear();
      v.counterexample = Counterexample{{w[i]}, "no element of " + subset.name + " above it in window"};
      return v;
    }
    v.witnesses.push_back(Witness{{w[i]}, {w[*it]}});
  }
  return v;
}

Verdict is_cofinite(const IndexPoset& poset, const Bounds& bounds) {
  const auto elems = poset.window(bounds.probe);
  Verdict v = Verdict::holding(mode_for(poset, bounds), bounds.horizon);
  for (const auto& a : elems) {
    auto preds = poset.predecessors(a);
    if (!preds) throw UnsupportedQuery("predecessors unavailable for " + poset.name());
    for (const auto& x : *preds)
      if (x == a || !poset.leq(x, a)) {
        v.holds = false;
        v.witnesses.clear();
        v.counterexample = Counterexample{{a, x}, "listed predecessor is not below the element"};
        return v;
      }
    v.witnesses.push_back(Witness{{a}, std::move(*preds)});
  }
  return v;
}

Verdict check_antisymmetric(const IndexPoset& poset, std::size_t horizon) {
  const WindowView w(poset, horizon);
  Verdict v = Verdict::holding(poset.saturated(horizon) ? Mode::Exact : Mode::Windowed, horizon);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w.leq(i, j) && w.leq(j, i)) {
        v.holds = false;
        v.counterexample = Counterexample{{w[i], w[j]}, "distinct elements below each other"};
        return v;
      }
  return v;
}

std::shared_ptr<const MardesicPoset> mardesic(const PosetPtr& poset) { return std::make_shared<MardesicPoset>(poset); }

std::optional<IndexElem> upper_bound(const IndexPoset& poset, const IndexElem& a, const IndexElem& b,
                                     std::size_t horizon) {
  for (const auto& x : poset.window(horizon))
    if (poset.leq(a, x) && poset.leq(b, x)) return x;
  return std::nullopt;
}

}  // namespace prokit
