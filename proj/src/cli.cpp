#include "prokit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "prokit/document.hpp"
#include "prokit/error.hpp"

namespace prokit::cli {

namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

ojson elem_json(const IndexElem& e, const IndexPoset* p) {
  ojson j;
  if (p) j["label"] = p->label(e);
  j["key"] = e.key;
  j["rank"] = e.rank;
  return j;
}

ojson elems_json(const std::vector<IndexElem>& es, const IndexPoset* p) {
  ojson a = ojson::array();
  for (const auto& e : es) a.push_back(elem_json(e, p));
  return a;
}

int severity(int code) { return code == kFails ? 2 : code == kInconclusive ? 1 : 0; }

class Run {
 public:
  explicit Run(ojson command) : command_(std::move(command)), start_(Clock::now()) {}

  // definite: a counterexample refutes the property even when the window is partial.
  void add(const std::string& name, const Verdict& v, const IndexPoset* p, bool definite) {
    ojson j;
    j["name"] = name;
    j["mode"] = to_string(v.mode);
    j["horizon"] = v.horizon;
    j["holds"] = v.holds;
    ojson ws = ojson::array();
    for (const auto& w : v.witnesses) {
      ojson e;
      e["subject"] = elems_json(w.subject, p);
      e["chosen"] = elems_json(w.chosen, p);
      ws.push_back(e);
    }
    j["witnesses"] = ws;
    if (v.counterexample) {
      ojson c;
      c["elements"] = elems_json(v.counterexample->elements, p);
      c["reason"] = v.counterexample->reason;
      j["counterexample"] = c;
    }
    verdicts_.push_back(j);
    const int code = v.holds ? kHolds : (definite || v.exact()) ? kFails : kInconclusive;
    raise(code);
    summary_ << name << ": " << (v.holds ? "holds" : code == kFails ? "fails" : "inconclusive") << " ("
             << to_string(v.mode) << ", H=" << v.horizon << ")";
    if (v.counterexample) summary_ << " - " << v.counterexample->reason;
    summary_ << "\n";
  }

  void raise(int code) {
    if (severity(code) > severity(code_) || code == kUsage) code_ = code;
  }
  int code() const { return code_; }
  ojson& extra() { return extra_; }

  Result finish(std::optional<std::string> document = std::nullopt) {
    ojson j;
    j["command"] = command_;
    j["status"] = code_ == kHolds ? "holds" : code_ == kFails ? "fails" : code_ == kInconclusive ? "inconclusive" : "error";
    j["verdicts"] = verdicts_;
    for (auto& [k, v] : extra_.items()) j[k] = v;
    j["timing_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return Result{code_, j.dump(2) + "\n", summary_.str(), std::move(document)};
  }

  Result error(const std::string& kind, const std::string& message, int code, std::size_t line = 0,
               std::size_t column = 0) {
    ojson e;
    e["kind"] = kind;
    e["message"] = message;
    if (line) {
      e["line"] = line;
      e["column"] = column;
    }
    extra_["error"] = e;
    code_ = code;
    summary_ << kind << " error: " << message;
    if (line) summary_ << " at line " << line << ", column " << column;
    summary_ << "\n";
    return finish();
  }

 private:
  ojson command_;
  Clock::time_point start_;
  ojson verdicts_ = ojson::array();
  ojson extra_ = ojson::object();
  std::ostringstream summary_;
  int code_ = kHolds;
};

template <class F>
Result guarded(Run& run, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return run.error("parse", e.what(), kUsage, e.line(), e.column());
  } catch (const CompositionError& e) {
    return run.error("boundary", e.what(), kUsage);
  } catch (const GenerationError& e) {
    return run.error("generation", e.what(), kUsage);
  } catch (const InconclusiveError& e) {
    return run.error("inconclusive", e.what(), kInconclusive);
  } catch (const UnsupportedQuery& e) {
    return run.error("unsupported", e.what(), kInconclusive);
  } catch (const PreconditionError& e) {
    return run.error("precondition", e.what(), kFails);
  } catch (const Error& e) {
    return run.error("failure", e.what(), kFails);
  }
}

Bounds resolve(const Window& w, std::optional<std::size_t> doc_horizon, const IndexPoset& p) {
  const auto h = w.horizon ? *w.horizon : doc_horizon ? *doc_horizon : default_horizon();
  Bounds b = standard_bounds(p, h);
  if (w.probe) b = Bounds{h, *w.probe};
  return b;
}

ojson command_json(const std::string& name, const Window& w) {
  ojson c;
  c["name"] = name;
  if (w.horizon) c["horizon"] = *w.horizon;
  if (w.probe) c["probe"] = *w.probe;
  return c;
}

void note_bounds(Run& run, const Bounds& b) {
  run.extra()["horizon"] = b.horizon;
  run.extra()["probe"] = b.probe;
}

Verdict delay_verdict(const CommutationReport& r) {
  Verdict v = Verdict::holding(r.mode, r.horizon);
  for (const auto& e : r.entries) {
    v.witnesses.insert(v.witnesses.end(), e.verdict.witnesses.begin(), e.verdict.witnesses.end());
    if (!e.verdict.holds && v.holds) {
      v.holds = false;
      v.counterexample = e.verdict.counterexample;
    }
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::optional<std::size_t> to_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(s));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// The subset flag and the index block describing it in an output document.
std::pair<Subset, IndexBlock> parse_subset(const std::string& flag, const DelaySystem& s, const IndexBlock& base) {
  IndexBlock ix;
  ix.kind = "subset";
  ix.base.push_back(base);
  if (flag == "evens" || flag == "odds") {
    ix.subset = flag;
    return {flag == "evens" ? Subset::evens() : Subset::odds(), ix};
  }
  if (flag.rfind("tail:", 0) == 0) {
    const auto n = to_size(flag.substr(5));
    if (!n) throw ParseError("--subset tail:N needs a number", 0, 0);
    ix.subset = "tail";
    ix.tail = *n;
    return {Subset::tail(*n), ix};
  }
  ix.subset = "members";
  std::vector<IndexElem> members;
  const auto& p = s.index();
  const auto window = p.kind() == PosetKind::Finite ? p.window(std::size_t{1} << 30) : std::vector<IndexElem>{};
  for (const auto& item : split(flag, ',')) {
    if (p.kind() == PosetKind::Finite) {
      const auto it = std::find_if(window.begin(), window.end(), [&](const IndexElem& e) { return p.label(e) == item; });
      if (it == window.end()) throw ParseError("--subset: unknown element '" + item + "'", 0, 0);
      members.push_back(*it);
      ix.member_labels.push_back(item);
    } else {
      const auto n = to_size(item);
      if (!n || !dynamic_cast<const NatPoset*>(&p)) throw ParseError("--subset: members of infinite indices are nat numbers", 0, 0);
      members.push_back(NatPoset::at(*n));
      ix.member_keys.push_back(members.back().key);
    }
  }
  return {Subset::of("members", members), ix};
}

// Output document for a reduction of doc's system onto the given index.
std::string reduced_document(const SystemDocument& doc, const DelaySystem& reduced, const IndexBlock& infinite_index) {
  if (reduced.index().kind() == PosetKind::Finite) return serialize(finite_document(reduced, doc.horizon));
  SystemDocument out = doc;
  out.index = infinite_index;
  return serialize(out);
}

IndexBlock members_block(const IndexBlock& base, const std::vector<IndexElem>& chain, const IndexPoset& p) {
  IndexBlock ix;
  ix.kind = "subset";
  ix.base.push_back(base);
  ix.subset = "members";
  for (const auto& e : chain) {
    if (p.kind() == PosetKind::Finite) ix.member_labels.push_back(p.label(e));
    else ix.member_keys.push_back(e.key);
  }
  return ix;
}

}  // namespace

std::size_t default_horizon() {
  if (const char* env = std::getenv("PROKIT_HORIZON")) {
    if (const auto h = to_size(env); h && *h > 0) return *h;
  }
  return 32;
}

Result check(const std::string& document, const std::string& mode, const Window& window) {
  ojson cmd = command_json("check", window);
  cmd["mode"] = mode;
  Run run(cmd);
  if (mode != "delay" && mode != "strict") return run.error("usage", "--mode must be delay or strict", kUsage);
  return guarded(run, [&] {
    const auto doc = parse_system(document);
    const auto s = build_system(doc);
    const auto b = resolve(window, doc.horizon, s.index());
    note_bounds(run, b);
    const auto* p = &s.index();
    const auto wf = check_wellformed(s, b);
    run.add("wellformed", wf, p, true);
    if (!wf.holds) return run.finish();
    if (mode == "strict") run.add("strict", check_strict(s, b), p, true);
    else run.add("delay", delay_verdict(check_delay(s, b)), p, false);
    return run.finish();
  });
}

Result reduce(const std::string& document, const std::string& op, const std::string& subset,
              std::optional<std::size_t> start, const Window& window) {
  ojson cmd = command_json("reduce", window);
  cmd["op"] = op;
  if (!subset.empty()) cmd["subset"] = subset;
  if (start) cmd["start"] = *start;
  Run run(cmd);
  if (op != "restrict" && op != "mardesic" && op != "sequence" && op != "extract")
    return run.error("usage", "--op must be restrict, mardesic, sequence or extract", kUsage);
  if (op == "restrict" && subset.empty()) return run.error("usage", "--op restrict needs --subset", kUsage);
  return guarded(run, [&] {
    const auto doc = parse_system(document);
    const auto s = build_system(doc);
    const auto b = resolve(window, doc.horizon, s.index());
    note_bounds(run, b);
    const auto* p = &s.index();
    const auto wf = check_wellformed(s, b);
    run.add("wellformed", wf, p, true);
    if (!wf.holds) return run.finish();

    if (op == "restrict") {
      const auto [sub, block] = parse_subset(subset, s, doc.index);
      const auto r = restrict(s, sub, b);
      run.add("iso_pair", verify_iso_pair(r.inclusion, r.retraction, b), nullptr, false);
      return run.finish(reduced_document(doc, r.system, block));
    }
    if (op == "mardesic") {
      const auto m = mardesic_reindex(s);
      const auto mb = standard_bounds(*m.index, b.horizon);
      const auto* mp = m.index.get();
      run.extra()["elements"] = m.index->window(b.horizon).size();
      run.add("antisymmetric", check_antisymmetric(*mp, b.horizon), mp, true);
      run.add("directed", is_directed(*mp, mb), mp, false);
      run.add("cofinite", is_cofinite(*mp, mb), mp, false);
      run.add("iso_pair", verify_iso_pair(m.to_subsets, m.from_subsets, mb), nullptr, false);
      IndexBlock ix;
      ix.kind = "mardesic_of";
      ix.base.push_back(doc.index);
      return run.finish(reduced_document(doc, m.system, ix));
    }
    if (op == "sequence") {
      const auto q = to_sequence(s, b);
      run.extra()["chain"] = elems_json(q.chain, p);
      run.extra()["rudimentary"] = q.rudimentary;
      run.add("iso_pair", verify_iso_pair(q.restriction.inclusion, q.restriction.retraction, b), nullptr, false);
      return run.finish(reduced_document(doc, q.restriction.system, members_block(doc.index, q.chain, *p)));
    }
    std::optional<IndexElem> first;
    if (start) {
      const auto w = p->window(b.horizon);
      if (*start >= w.size()) throw ParseError("--start lies outside the window", 0, 0);
      first = w[*start];
    }
    const auto x = commutative_extract(s, b, first);
    run.extra()["chain"] = elems_json(x.chain, p);
    run.add("strict", check_strict(x.restriction.system, b), p, true);
    run.add("iso_pair", verify_iso_pair(x.restriction.inclusion, x.restriction.retraction, b), nullptr, false);
    return run.finish(reduced_document(doc, x.restriction.system, members_block(doc.index, x.chain, *p)));
  });
}

Result morphism(const std::string& document, const std::string& op, const Window& window) {
  ojson cmd = command_json("morphism", window);
  cmd["op"] = op;
  Run run(cmd);
  if (op != "check" && op != "equiv" && op != "special" && op != "level" && op != "extract-iso")
    return run.error("usage", "--op must be check, equiv, special, level or extract-iso", kUsage);
  return guarded(run, [&] {
    const auto doc = parse_morphism(document);
    const auto built = build_morphism(doc);
    const auto& m = built.morphism;
    const auto b = source_covering(m, resolve(window, doc.source ? doc.source->horizon : std::nullopt, m.target().index()));
    note_bounds(run, b);
    const auto* bp = &m.target().index();
    const auto bounds_ok = check_boundaries(m, b);
    if (!bounds_ok.holds) {
      run.add("boundaries", bounds_ok, bp, true);
      return run.error("boundary", bounds_ok.counterexample->reason, kUsage);
    }
    if (op == "check") {
      run.add("delay_morphism", check_delay_morphism(m, b), nullptr, false);
    } else if (op == "equiv") {
      if (!built.other) return run.error("usage", "--op equiv needs an 'other' morphism", kUsage);
      run.add("d_equiv", d_equiv(m, *built.other, b), nullptr, false);
    } else if (op == "special") {
      const auto sp = make_special(m, b);
      run.extra()["defined_horizon"] = sp.defined_horizon;
      ojson table = ojson::array();
      for (const auto& e : bp->window(sp.defined_horizon)) {
        ojson row;
        row["b"] = elem_json(e, bp);
        row["f"] = elem_json(m.index_map(e), nullptr);
        row["f_special"] = elem_json(sp.morphism.index_map(e), nullptr);
        table.push_back(row);
      }
      run.extra()["index_map"] = table;
      run.add("increasing", sp.increasing, bp, true);
      run.add("special", sp.special, bp, false);
      run.add("d_equiv", sp.equivalent, nullptr, false);
    } else if (op == "level") {
      const auto pk = level_reindex(m, b);
      run.extra()["pairs"] = pk.index->window(b.horizon).size();
      run.add("square", pk.square, nullptr, false);
    } else {
      const auto ex = extract_pro_iso(m, built.inverse, b);
      run.extra()["chain"] = elems_json(ex.chain, bp);
      run.add("strict_source", ex.strict_source, bp, true);
      run.add("strict_target", ex.strict_target, bp, true);
      run.add("squares", ex.squares, bp, true);
      if (ex.iso) run.add("iso_pair", *ex.iso, nullptr, false);
    }
    return run.finish();
  });
}

Result fuzz(const FuzzOptions& options, std::size_t seeds) {
  ojson cmd;
  cmd["name"] = "fuzz";
  cmd["seeds"] = seeds;
  cmd["len"] = options.length;
  cmd["backend"] = to_string(options.backend);
  cmd["horizon"] = options.horizon;
  cmd["probe"] = options.probe;
  Run run(cmd);
  if (seeds == 0) return run.error("usage", "--seeds must be positive", kUsage);
  if (options.length < 2) return run.error("usage", "--len must be at least 2", kUsage);
  return guarded(run, [&] {
    FuzzOptions o = options;
    o.seeds = seeds;
    const auto r = run_fuzz(o);
    run.extra()["seeds_run"] = r.seeds_run;
    run.extra()["comparisons"] = r.comparisons;
    ojson ds = ojson::array();
    auto opt = [](const std::optional<std::size_t>& v) { return v ? ojson(*v) : ojson(nullptr); };
    for (const auto& d : r.disagreements) {
      ojson j;
      j["seed"] = d.seed;
      j["index"] = d.index;
      j["planted"] = opt(d.planted);
      j["engine"] = opt(d.engine);
      j["oracle"] = opt(d.oracle);
      j["note"] = d.note;
      ds.push_back(j);
    }
    run.extra()["disagreements"] = ds;
    if (!r.disagreements.empty()) {
      run.raise(kFails);
      return run.error("disagreement", "oracle disagreement at seed " + std::to_string(r.disagreements.front().seed),
                       kFails);
    }
    return run.finish();
  });
}

}  // namespace prokit::cli
