#pragma once

// Directed preordered index sets.
//
// Finite posets are explicit; infinite ones (nat, nat_square, and anything built
// on top of them) are only ever looked at through window(H), the finite list of
// elements of rank <= H. Verdicts over an unsaturated window are marked windowed.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prokit/elem.hpp"
#include "prokit/verdict.hpp"

namespace prokit {

enum class PosetKind { Finite, WindowedInfinite };

class IndexPoset {
 public:
  virtual ~IndexPoset() = default;

  virtual PosetKind kind() const = 0;
  virtual std::string name() const = 0;
  virtual bool leq(const IndexElem& x, const IndexElem& y) const = 0;
  /// Elements of rank <= horizon, sorted in enumeration order (rank, then key).
  virtual std::vector<IndexElem> window(std::size_t horizon) const = 0;
  virtual bool contains(const IndexElem& x) const = 0;
  /// {x | x <= a, x != a}, or nullopt when the poset cannot enumerate it.
  virtual std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const;
  /// Claimed antisymmetry. Finite posets compute it; generators state it.
  virtual bool antisymmetric() const = 0;
  virtual std::optional<std::size_t> cardinality() const { return std::nullopt; }
  virtual std::string label(const IndexElem& x) const;

  bool lt(const IndexElem& x, const IndexElem& y) const { return leq(x, y) && !leq(y, x); }
  /// True when window(horizon) already holds every element.
  bool saturated(std::size_t horizon) const;
};

using PosetPtr = std::shared_ptr<const IndexPoset>;

/// Cached window: elements in enumeration order plus the order relation among them.
class WindowView {
 public:
  WindowView(const IndexPoset& poset, std::size_t horizon);

  std::size_t size() const noexcept { return elems_.size(); }
  const IndexElem& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<IndexElem>& elements() const noexcept { return elems_; }
  bool leq(std::size_t i, std::size_t j) const { return rel_[i * elems_.size() + j] != 0; }
  bool lt(std::size_t i, std::size_t j) const { return leq(i, j) && !leq(j, i); }
  std::optional<std::size_t> find(const IndexElem& x) const;
  std::size_t horizon() const noexcept { return horizon_; }
  bool saturated() const noexcept { return saturated_; }
  /// Number of leading elements with rank <= probe.
  std::size_t probe_count(std::size_t probe) const;
  /// A witness at position i is non-vacuous: either the window is the whole poset,
  /// or something in the window lies strictly above it.
  bool admissible(std::size_t i) const;

 private:
  std::vector<IndexElem> elems_;
  std::vector<char> rel_;
  std::vector<char> has_strict_upper_;
  std::size_t horizon_;
  bool saturated_;
};

/// Exact iff both the probe window and the horizon window cover the whole poset.
Mode mode_for(const IndexPoset& poset, const Bounds& bounds);

/// Library default: probe = horizon for finite posets, horizon / 2 otherwise.
Bounds standard_bounds(const IndexPoset& poset, std::size_t horizon);

// ---------------------------------------------------------------------------
// Concrete posets

class FinitePoset final : public IndexPoset {
 public:
  /// Elements are labels[i] with rank i; the order is the reflexive-transitive
  /// closure of the declared pairs (indices into labels).
  FinitePoset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs);

  PosetKind kind() const override { return PosetKind::Finite; }
  std::string name() const override { return "finite"; }
  bool leq(const IndexElem& x, const IndexElem& y) const override;
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override;
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const override;
  bool antisymmetric() const override { return antisymmetric_; }
  std::optional<std::size_t> cardinality() const override { return labels_.size(); }
  std::string label(const IndexElem& x) const override;

  IndexElem elem(std::size_t i) const;
  std::optional<IndexElem> find(const std::string& label) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Covering-free listing of all related pairs (i, j), i != j, as indices.
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

 private:
  std::size_t index_of(const IndexElem& x) const;

  std::vector<std::string> labels_;
  std::vector<char> rel_;
  bool antisymmetric_ = true;
};

/// The natural numbers 0, 1, 2, ... with rank n = n.
class NatPoset final : public IndexPoset {
 public:
  PosetKind kind() const override { return PosetKind::WindowedInfinite; }
  std::string name() const override { return "nat"; }
  bool leq(const IndexElem& x, const IndexElem& y) const override { return x.key[0] <= y.key[0]; }
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override;
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const override;
  bool antisymmetric() const override { return true; }
  std::string label(const IndexElem& x) const override;

  static IndexElem at(std::size_t n);
};

/// N x N with the componentwise order; rank (i, j) = max(i, j).
class NatSquarePoset final : public IndexPoset {
 public:
  PosetKind kind() const override { return PosetKind::WindowedInfinite; }
  std::string name() const override { return "nat_square"; }
  bool leq(const IndexElem& x, const IndexElem& y) const override;
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override;
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const override;
  bool antisymmetric() const override { return true; }
  std::string label(const IndexElem& x) const override;

  static IndexElem at(std::size_t i, std::size_t j);
};

/// Finite nonempty subsets of an antisymmetric base having a maximum, ordered by inclusion.
///
/// The rank of a subset is the largest rank among its members, so window(H) is exactly
/// the subsets of base.window(H) that have a maximum. Within a rank, subsets are
/// ordered by cardinality, then by their members in base enumeration order.
class MardesicPoset final : public IndexPoset {
 public:
  explicit MardesicPoset(PosetPtr base);

  PosetKind kind() const override { return base_->kind(); }
  std::string name() const override { return "mardesic_of(" + base_->name() + ")"; }
  bool leq(const IndexElem& x, const IndexElem& y) const override;
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override;
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const override;
  bool antisymmetric() const override { return true; }
  std::optional<std::size_t> cardinality() const override;
  std::string label(const IndexElem& x) const override;

  const PosetPtr& base() const noexcept { return base_; }
  /// Members of b in base enumeration order.
  std::vector<IndexElem> members(const IndexElem& b) const;
  IndexElem max_of(const IndexElem& b) const;
  IndexElem singleton(const IndexElem& a) const;
  /// Builds the element for a member set; throws PreconditionError if it has no maximum.
  IndexElem make(std::vector<IndexElem> members) const;

  /// Largest base window Mardesic windows will expand (2^n subsets).
  static constexpr std::size_t kMaxBaseWindow = 20;

 private:
  std::optional<std::size_t> maximum_index(const std::vector<IndexElem>& sorted_members) const;
  IndexElem encode(const std::vector<IndexElem>& sorted_members) const;

  PosetPtr base_;
};

/// Index map f: B -> A between index sets.
using IndexMap = std::function<IndexElem(const IndexElem&)>;

/// {(a, b) | f(b) <= a} inside A x B with the componentwise order; rank = max of ranks.
class PairPoset final : public IndexPoset {
 public:
  PairPoset(PosetPtr first, PosetPtr second, IndexMap f);

  PosetKind kind() const override;
  std::string name() const override { return "pairs(" + first_->name() + "," + second_->name() + ")"; }
  bool leq(const IndexElem& x, const IndexElem& y) const override;
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override;
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& c) const override;
  bool antisymmetric() const override { return first_->antisymmetric() && second_->antisymmetric(); }
  std::optional<std::size_t> cardinality() const override;
  std::string label(const IndexElem& x) const override;

  IndexElem make(const IndexElem& a, const IndexElem& b) const;
  IndexElem first(const IndexElem& c) const;
  IndexElem second(const IndexElem& c) const;
  const PosetPtr& first_poset() const noexcept { return first_; }
  const PosetPtr& second_poset() const noexcept { return second_; }

 private:
  PosetPtr first_;
  PosetPtr second_;
  IndexMap f_;
};

/// A named membership predicate on the elements of some poset.
struct Subset {
  std::string name;
  std::function<bool(const IndexElem&)> contains;

  /// Elements of even / odd rank (the even / odd numbers on nat).
  static Subset evens();
  static Subset odds();
  /// Elements of rank >= n.
  static Subset tail(std::size_t n);
  static Subset of(std::string name, std::vector<IndexElem> members);
};

/// The restriction of a base poset to a subset; ranks and order are inherited.
class SubsetPoset final : public IndexPoset {
 public:
  SubsetPoset(PosetPtr base, Subset subset);

  PosetKind kind() const override { return base_->kind(); }
  std::string name() const override { return base_->name() + "|" + subset_.name; }
  bool leq(const IndexElem& x, const IndexElem& y) const override { return base_->leq(x, y); }
  std::vector<IndexElem> window(std::size_t horizon) const override;
  bool contains(const IndexElem& x) const override { return base_->contains(x) && subset_.contains(x); }
  std::optional<std::vector<IndexElem>> predecessors(const IndexElem& a) const override;
  bool antisymmetric() const override { return base_->antisymmetric(); }
  std::optional<std::size_t> cardinality() const override;
  std::string label(const IndexElem& x) const override { return base_->label(x); }

  const PosetPtr& base() const noexcept { return base_; }
  const Subset& subset() const noexcept { return subset_; }

 private:
  PosetPtr base_;
  Subset subset_;
};

// ---------------------------------------------------------------------------
// Operations

std::vector<IndexElem> enumerate_window(const IndexPoset& poset, std::size_t horizon);

/// Every pair of probe elements has an upper bound in window(horizon).
Verdict is_directed(const IndexPoset& poset, const Bounds& bounds);

/// Every probe element lies below some element of the subset inside window(horizon).
Verdict is_cofinal(const IndexPoset& poset, const Subset& subset, const Bounds& bounds);

/// Every probe element has a finite, enumerated predecessor set.
/// Throws UnsupportedQuery when the poset cannot list predecessors.
Verdict is_cofinite(const IndexPoset& poset, const Bounds& bounds);

/// Pairwise antisymmetry over window(horizon).
Verdict check_antisymmetric(const IndexPoset& poset, std::size_t horizon);

/// Throws PreconditionError unless the poset claims antisymmetry.
std::shared_ptr<const MardesicPoset> mardesic(const PosetPtr& poset);

/// First element of window(horizon), in enumeration order, above both a and b.
std::optional<IndexElem> upper_bound(const IndexPoset& poset, const IndexElem& a, const IndexElem& b,
                                     std::size_t horizon);

}  // namespace prokit
