#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prokit/elem.hpp"

namespace prokit {

/// Exact verdicts enumerate every quantifier domain; windowed ones only window(H).
enum class Mode { Exact, Windowed };

/// One quantifier witness: the outer elements and the elements chosen for them.
struct Witness {
  std::vector<IndexElem> subject;
  std::vector<IndexElem> chosen;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Concrete elements violating a condition, with a short reason.
struct Counterexample {
  std::vector<IndexElem> elements;
  std::string reason;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct Verdict {
  Mode mode = Mode::Windowed;
  std::size_t horizon = 0;
  bool holds = false;
  std::vector<Witness> witnesses;
  std::optional<Counterexample> counterexample;

  bool exact() const noexcept { return mode == Mode::Exact; }
  /// The chosen elements recorded for a single-element subject, if any.
  const std::vector<IndexElem>* witness_for(const IndexElem& subject) const;

  static Verdict holding(Mode m, std::size_t h) { return Verdict{m, h, true, {}, std::nullopt}; }
  static Verdict failing(Mode m, std::size_t h, Counterexample c) { return Verdict{m, h, false, {}, std::move(c)}; }
};

std::string to_string(Mode m);

/// Conjunction: holds iff both hold; exact iff both exact. Keeps the first counterexample.
Verdict both(const Verdict& x, const Verdict& y);

}  // namespace prokit
