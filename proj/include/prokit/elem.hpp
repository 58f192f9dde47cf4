#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace prokit {

/// Opaque element identifier; its layout is private to the owning poset.
using Key = std::vector<std::int64_t>;

/// An element of an index set. Enumeration order is (rank, key).
struct IndexElem {
  Key key;
  std::size_t rank = 0;

  friend bool operator==(const IndexElem&, const IndexElem&) = default;
  friend std::strong_ordering operator<=>(const IndexElem& x, const IndexElem& y) {
    if (auto c = x.rank <=> y.rank; c != 0) return c;
    return x.key <=> y.key;
  }
};

/// Quantifier ranges for windowed checks.
///
/// Universally quantified outer elements range over the elements of rank <= probe;
/// witnesses and the inner quantifiers range over the elements of rank <= horizon.
/// A single number means probe == horizon. Morphism checks may look further into the
/// source index than into the target one (source_horizon >= horizon).
struct Bounds {
  std::size_t horizon = 32;
  std::size_t probe = 32;
  std::optional<std::size_t> source;

  Bounds(std::size_t h) : horizon(h), probe(h) {}  // NOLINT(google-explicit-constructor)
  Bounds(std::size_t h, std::size_t p) : horizon(h), probe(p < h ? p : h) {}

  std::size_t source_horizon() const noexcept { return source && *source > horizon ? *source : horizon; }
  Bounds with_source(std::size_t h) const {
    Bounds b = *this;
    b.source = h;
    return b;
  }
};

}  // namespace prokit
