#pragma once

// Delay-morphisms: the shifted naturality condition, d-equivalence, composition,
// specialization to increasing index maps, level representatives, and extraction
// of a strict level isomorphism over a cofinal chain.

#include <optional>
#include <vector>

#include "prokit/system.hpp"

namespace prokit {

/// The same bounds with the source window reaching past f(window(B)) by horizon - probe.
Bounds source_covering(const DelayMorphism& m, const Bounds& bounds);

/// f is defined on window(B), lands in A, and every component runs X_{f(b)} -> Y_b.
Verdict check_boundaries(const DelayMorphism& m, const Bounds& bounds);

/// For every probe b there is b* >= b such that for all b' >= b* there is a >= f(b), f(b')
/// with q_{bb'} f_{b'} p_{f(b')a'} = f_b p_{f(b)a'} for every a' >= a.
/// Witnesses are b |-> (b*, a(b, b*)).
Verdict check_delay_morphism(const DelayMorphism& m, const Bounds& bounds);

/// For every probe b there is a_b >= f(b), f'(b) with f_b p_{f(b)a} = f'_b p_{f'(b)a}
/// for all a >= a_b. Witnesses are b |-> (a_b). Throws PreconditionError unless both
/// morphisms share source and target.
Verdict d_equiv(const DelayMorphism& m1, const DelayMorphism& m2, const Bounds& bounds);

/// m2 o m1. Throws CompositionError unless target(m1) is source(m2).
DelayMorphism compose(const DelayMorphism& m2, const DelayMorphism& m1);

/// b <= b' implies f(b) <= f(b') on window(B).
Verdict check_increasing(const DelayMorphism& m, const Bounds& bounds);

/// For every probe b there is b* >= b with q_{bb'} f_{b'} = f_b p_{f(b)f(b')} for all b' >= b*.
Verdict check_special(const DelayMorphism& m, const Bounds& bounds);

struct Specialization {
  DelayMorphism morphism;
  Verdict increasing;
  Verdict special;
  Verdict equivalent;  // d_equiv(input, output)
  /// Largest target horizon on which f' is fully defined; the verdicts use it, with the
  /// source window kept at the requested horizon.
  std::size_t defined_horizon = 0;
};

/// Increasing f' >= f built by recursion over predecessors, with components
/// f'_b = f_b p_{f(b)f'(b)}. f'(b) is the first upper bound in window(A) of f(b), the
/// commutation index of f(b), every morphism-condition witness a(b0, b) for
/// predecessors b0 whose b* lies below b, and f'(b0) for all predecessors b0.
/// Throws PreconditionError unless B is antisymmetric and lists predecessors.
/// Querying f' at an element where the recursion ran out of window throws InconclusiveError.
Specialization make_special(const DelayMorphism& m, const Bounds& bounds);

struct LevelPackage {
  std::shared_ptr<const PairPoset> index;  // C = {(a, b) | f(b) <= a}
  DelaySystem source;                      // X'_{(a,b)} = X_a
  DelaySystem target;                      // Y'_{(a,b)} = Y_b
  DelayMorphism level;                     // identity on C, components f_b p_{f(b)a}
  DelayMorphism i;                         // X -> X', c |-> a
  DelayMorphism j;                         // Y -> Y', c |-> b
  Verdict square;                          // j m ~ level i
};

/// Throws PreconditionError unless m is increasing and special and both index sets are
/// antisymmetric and list their predecessors.
LevelPackage level_reindex(const DelayMorphism& m, const Bounds& bounds);

/// d_equiv(w m, 1_X) and d_equiv(m w, 1_Y). Throws CompositionError on mismatched ends.
Verdict verify_iso_pair(const DelayMorphism& m, const DelayMorphism& w, const Bounds& bounds);

/// Level morphism squares q_{cc'} f_{c'} = f_c p_{cc'}: for every probe c the first
/// admissible c* >= c after which every square based at c commutes. Witnesses c |-> (c*).
Verdict square_witnesses(const DelayMorphism& level, const Bounds& bounds);

/// Every square q_{cc'} f_{c'} = f_c p_{cc'} with c <= c' in window(horizon).
Verdict check_squares_strict(const DelayMorphism& level, const Bounds& bounds);

struct ProIsoExtraction {
  std::vector<IndexElem> chain;
  DelaySystem source;
  DelaySystem target;
  DelayMorphism morphism;
  std::optional<DelayMorphism> inverse;
  Verdict strict_source;
  Verdict strict_target;
  Verdict squares;
  std::optional<Verdict> iso;  // present when an inverse was supplied
};

/// Runs the commutative extraction on both systems at once: the next chain element is
/// the one after the largest of the two commutation indices and the square witness of
/// the current element. Non-chain indices are first reduced with to_sequence.
/// Throws PreconditionError unless the index map is the identity, InconclusiveError
/// when a witness is missing from the window.
ProIsoExtraction extract_pro_iso(const DelayMorphism& level, const std::optional<DelayMorphism>& inverse,
                                 const Bounds& bounds);
ProIsoExtraction extract_pro_iso(const LevelPackage& package, const Bounds& bounds);

}  // namespace prokit
