#pragma once

// JSON documents for systems and morphisms.
//
// Finite systems list their objects and bonds. Infinite ones name a generator from a
// fixed registry. Serialization is canonical: fixed field order, two-space indent.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prokit/dmorphism.hpp"
#include "prokit/fuzz.hpp"

namespace prokit {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  /// 1-based; 0 when the error is structural rather than syntactic.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct IndexBlock {
  std::string kind;  // finite | nat | nat_square | mardesic_of | subset
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
  std::vector<IndexBlock> base;  // mardesic_of, subset: exactly one
  std::string subset;            // subset: evens | odds | tail | members
  std::size_t tail = 0;
  std::vector<std::string> member_labels;  // members of a finite base
  std::vector<Key> member_keys;            // members of an infinite base

  friend bool operator==(const IndexBlock&, const IndexBlock&) = default;
};

struct ObjectEntry {
  std::string element;
  std::vector<std::int64_t> points;  // finset
  int dim = 0;                       // matmod

  friend bool operator==(const ObjectEntry&, const ObjectEntry&) = default;
};

/// A map between objects: FinSet maps list the labels hit by each domain point in
/// order; MatMod maps are row-major matrices.
struct MapData {
  std::vector<std::int64_t> image;
  std::vector<std::vector<std::int64_t>> matrix;

  friend bool operator==(const MapData&, const MapData&) = default;
};

struct BondEntry {
  std::string lower;
  std::string upper;
  MapData map;

  friend bool operator==(const BondEntry&, const BondEntry&) = default;
};

struct GeneratorBlock {
  std::string name;  // strict_sequence | planted_sequence
  std::size_t length = 64;
  std::uint64_t seed = 0;
  std::size_t min_points = 2;
  std::size_t max_points = 6;
  int max_dim = 3;
  std::string profile = "strict";  // strict | explicit | step | random
  std::vector<std::size_t> values;
  std::size_t step = 2;
  std::size_t max_delay = 8;

  friend bool operator==(const GeneratorBlock&, const GeneratorBlock&) = default;
};

struct SystemDocument {
  Backend backend = Backend::FinSet;
  std::int64_t modulus = 0;  // matmod only
  IndexBlock index;
  std::vector<ObjectEntry> objects;
  std::vector<BondEntry> bonds;
  std::optional<GeneratorBlock> generator;
  std::optional<std::size_t> horizon;

  friend bool operator==(const SystemDocument&, const SystemDocument&) = default;
};

struct MorphismBlock {
  std::string kind;  // identity | explicit | planted_level_iso
  std::vector<std::pair<std::string, std::string>> index_map;  // explicit: (b, f(b))
  std::vector<std::pair<std::string, MapData>> components;     // explicit: (b, f_b)
  GeneratorBlock plant;                                        // planted_level_iso
  std::size_t morphism_delay = 0;

  friend bool operator==(const MorphismBlock&, const MorphismBlock&) = default;
};

struct MorphismDocument {
  std::optional<SystemDocument> source;
  std::optional<SystemDocument> target;
  MorphismBlock morphism;
  std::optional<MorphismBlock> other;

  friend bool operator==(const MorphismDocument&, const MorphismDocument&) = default;
};

SystemDocument parse_system(const std::string& text);
std::string serialize(const SystemDocument& doc);
MorphismDocument parse_morphism(const std::string& text);
std::string serialize(const MorphismDocument& doc);

/// Throws ParseError when the document does not describe a valid system.
DelaySystem build_system(const SystemDocument& doc);

/// Explicit document for a fully enumerable finite system.
SystemDocument finite_document(const DelaySystem& s, std::optional<std::size_t> horizon = std::nullopt);

/// The document of doc's system restricted to the given members (labels for finite
/// bases, keys otherwise).
SystemDocument subset_document(const SystemDocument& doc, const std::vector<IndexElem>& members,
                               const IndexPoset& poset);

struct BuiltMorphism {
  DelayMorphism morphism;
  std::optional<DelayMorphism> inverse;  // planted level isos
  std::optional<DelayMorphism> other;
};

/// Throws ParseError on malformed blocks and CompositionError on boundary mismatches.
BuiltMorphism build_morphism(const MorphismDocument& doc);

}  // namespace prokit
