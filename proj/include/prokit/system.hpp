#pragma once

// Delay-inverse systems, delay-morphisms as data, and the object-level reductions.
//
// A system assigns an object to every index and a bond bond(a, a'): X_{a'} -> X_a to
// every related pair a <= a'. Bonds only need to commute above a commutation index:
//
//   for every a there is a* >= a with bond(a, a') o bond(a', a'') == bond(a, a'')
//   for all a* <= a' <= a''.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prokit/category.hpp"
#include "prokit/indexset.hpp"
#include "prokit/verdict.hpp"

namespace prokit {

class DelaySystem {
 public:
  using ObjectFn = std::function<Obj(const IndexElem&)>;
  /// bond(lower, upper) : object_at(upper) -> object_at(lower); only called for lower <= upper.
  using BondFn = std::function<Mor(const IndexElem& lower, const IndexElem& upper)>;

  DelaySystem(PosetPtr index, ObjectFn objects, BondFn bonds);

  const IndexPoset& index() const noexcept { return *impl_->index; }
  const PosetPtr& index_ptr() const noexcept { return impl_->index; }
  Obj object_at(const IndexElem& a) const { return impl_->objects(a); }
  Mor bond(const IndexElem& lower, const IndexElem& upper) const { return impl_->bonds(lower, upper); }

  /// The same objects and bonds viewed over another index set (e.g. a subset).
  DelaySystem over(PosetPtr index) const;

  /// Identity of the underlying system value; copies compare equal, rebuilt systems do not.
  bool same_as(const DelaySystem& other) const noexcept { return impl_ == other.impl_; }

 private:
  struct Impl {
    PosetPtr index;
    ObjectFn objects;
    BondFn bonds;
  };
  std::shared_ptr<const Impl> impl_;
};

/// A system over an explicit finite poset. Missing diagonal bonds default to identities;
/// any other missing related pair makes bond() throw PreconditionError.
DelaySystem make_finite_system(std::shared_ptr<const FinitePoset> index, std::vector<Obj> objects,
                               std::map<std::pair<std::size_t, std::size_t>, Mor> bonds);

/// A morphism X -> Y of delay systems: an index map f: B -> A (B indexes Y, A indexes X)
/// and components f_b : X_{f(b)} -> Y_b.
class DelayMorphism {
 public:
  using ComponentFn = std::function<Mor(const IndexElem&)>;

  DelayMorphism(DelaySystem source, DelaySystem target, IndexMap index_map, ComponentFn components);

  const DelaySystem& source() const noexcept { return source_; }
  const DelaySystem& target() const noexcept { return target_; }
  IndexElem index_map(const IndexElem& b) const { return map_(b); }
  Mor component(const IndexElem& b) const { return components_(b); }
  const IndexMap& index_fn() const noexcept { return map_; }
  const ComponentFn& component_fn() const noexcept { return components_; }

  /// (1_A, 1_{X_a}).
  static DelayMorphism identity(const DelaySystem& x);

 private:
  DelaySystem source_;
  DelaySystem target_;
  IndexMap map_;
  ComponentFn components_;
};

struct CommutationEntry {
  IndexElem element;
  Verdict verdict;
  std::optional<IndexElem> witness;
};

struct CommutationReport {
  Mode mode = Mode::Windowed;
  std::size_t horizon = 0;
  std::vector<CommutationEntry> entries;

  bool holds() const;
  const CommutationEntry* find(const IndexElem& a) const;
};

/// Bond boundaries match the objects and diagonal bonds are identities, on window(horizon).
Verdict check_wellformed(const DelaySystem& s, const Bounds& bounds);

/// Least a* >= a in enumeration order such that every a* <= a' <= a'' inside
/// window(horizon) commutes. Outside saturated windows, a* must have something
/// strictly above it in the window. Throws PreconditionError if a is not in the window.
Verdict min_commutation_index(const DelaySystem& s, const IndexElem& a, const Bounds& bounds);

/// min_commutation_index for every probe element.
CommutationReport check_delay(const DelaySystem& s, const Bounds& bounds);

/// Every a <= a' <= a'' in window(horizon) commutes.
Verdict check_strict(const DelaySystem& s, const Bounds& bounds);

/// Restriction to a cofinal subset together with its inverse up to d-equivalence.
struct Restriction {
  DelaySystem system;
  DelayMorphism inclusion;   // i : X -> X'
  DelayMorphism retraction;  // j : X' -> X, a |-> first subset element above a*
};

/// Throws PreconditionError if the subset is not cofinal at these bounds, and
/// InconclusiveError if some probe element has no commutation index in the window.
Restriction restrict(const DelaySystem& s, const Subset& subset, const Bounds& bounds);

struct MardesicReindex {
  std::shared_ptr<const MardesicPoset> index;
  DelaySystem system;      // Y_b = X_{max b}, q_{bb'} = p_{max b, max b'}
  DelayMorphism to_subsets;    // f : X -> Y, b |-> max b, identity components
  DelayMorphism from_subsets;  // g : Y -> X, a |-> {a}, identity components
};

/// Throws PreconditionError unless the index is antisymmetric.
MardesicReindex mardesic_reindex(const DelaySystem& s);

struct SequenceReduction {
  std::vector<IndexElem> chain;
  bool rudimentary = false;  // the index had a maximum; chain is that single element
  Restriction restriction;
};

/// Greedy strictly increasing cofinal chain a'_1 < a'_2 < ... with a'_i >= a_i for the
/// i-th probe element a_i, each choice the first eligible element in enumeration order.
/// Finite posets with a maximum reduce to the one-element system on it.
SequenceReduction to_sequence(const DelaySystem& s, const Bounds& bounds);

struct Extraction {
  std::vector<IndexElem> chain;
  Restriction restriction;
};

/// Iterates j_{k+1} = (element after min commutation index of j_k) from j_1 = start
/// (default: the first element), while j_k lies in the probe window and until the chain
/// has gone one step past every probe element's commutation index. The index must be a
/// chain inside the window. The subsystem on the chain is strictly commutative.
Extraction commutative_extract(const DelaySystem& s, const Bounds& bounds,
                               std::optional<IndexElem> start = std::nullopt);

namespace detail {
/// Position of the minimal admissible commutation index of w[ia] in w, or the bad triple.
struct CommutationSearch {
  std::optional<std::size_t> witness;
  std::optional<std::array<std::size_t, 3>> bad_triple;
};
CommutationSearch find_commutation_index(const DelaySystem& s, const WindowView& w, std::size_t ia);
}  // namespace detail

}  // namespace prokit
