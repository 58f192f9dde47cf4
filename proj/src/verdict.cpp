#include "prokit/verdict.hpp"

namespace prokit {

const std::vector<IndexElem>* Verdict::witness_for(const IndexElem& subject) const {
  for (const auto& w : witnesses)
    if (w.subject.size() == 1 && w.subject.front() == subject) return &w.chosen;
  return nullptr;
}

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "windowed"; }

Verdict both(const Verdict& x, const Verdict& y) {
  Verdict out;
  out.mode = (x.exact() && y.exact()) ? Mode::Exact : Mode::Windowed;
  out.horizon = x.horizon > y.horizon ? x.horizon : y.horizon;
  out.holds = x.holds && y.holds;
  out.witnesses = x.witnesses;
  out.witnesses.insert(out.witnesses.end(), y.witnesses.begin(), y.witnesses.end());
  if (!x.holds) out.counterexample = x.counterexample;
  else if (!y.holds) out.counterexample = y.counterexample;
  return out;
}

}  // namespace prokit
