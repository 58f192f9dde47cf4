#include "prokit/document.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "prokit/error.hpp"

namespace prokit {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError((path.empty() ? "/" : path) + ": " + msg, 0, 0);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string("syntax error: ") + e.what(), line, col);
  }
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) fail(path, "unknown field '" + k + "'");
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::int64_t> int_list(const json& j, const std::string& path) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::pair<std::string, std::string> label_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a pair of labels");
  return {as_string(j[0], path + "/0"), as_string(j[1], path + "/1")};
}

// ---------------------------------------------------------------------------
// Reading

IndexBlock read_index(const json& j, const std::string& path) {
  IndexBlock b;
  b.kind = as_string(need(j, "kind", path), path + "/kind");
  if (b.kind == "finite") {
    only_keys(j, {"kind", "elements", "leq"}, path);
    const auto& el = as_array(need(j, "elements", path), path + "/elements");
    for (std::size_t i = 0; i < el.size(); ++i) b.elements.push_back(as_string(el[i], path + "/elements/" + std::to_string(i)));
    if (j.contains("leq")) {
      const auto& lq = as_array(j.at("leq"), path + "/leq");
      for (std::size_t i = 0; i < lq.size(); ++i) b.leq.push_back(label_pair(lq[i], path + "/leq/" + std::to_string(i)));
    }
  } else if (b.kind == "nat" || b.kind == "nat_square") {
    only_keys(j, {"kind"}, path);
  } else if (b.kind == "mardesic_of") {
    only_keys(j, {"kind", "base"}, path);
    b.base.push_back(read_index(need(j, "base", path), path + "/base"));
  } else if (b.kind == "subset") {
    only_keys(j, {"kind", "base", "subset", "n", "members"}, path);
    b.base.push_back(read_index(need(j, "base", path), path + "/base"));
    b.subset = as_string(need(j, "subset", path), path + "/subset");
    if (b.subset == "tail") {
      b.tail = as_uint(need(j, "n", path), path + "/n");
    } else if (b.subset == "members") {
      const auto& ms = as_array(need(j, "members", path), path + "/members");
      for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto p = path + "/members/" + std::to_string(i);
        if (ms[i].is_string()) b.member_labels.push_back(ms[i].get<std::string>());
        else b.member_keys.push_back(int_list(ms[i], p));
      }
      if (!b.member_labels.empty() && !b.member_keys.empty()) fail(path + "/members", "mixes labels and keys");
    } else if (b.subset != "evens" && b.subset != "odds") {
      fail(path + "/subset", "unknown subset '" + b.subset + "'");
    }
    if (b.subset != "tail" && j.contains("n")) fail(path, "'n' only applies to tail subsets");
    if (b.subset != "members" && j.contains("members")) fail(path, "'members' only applies to member subsets");
  } else {
    fail(path + "/kind", "unknown index kind '" + b.kind + "'");
  }
  return b;
}

MapData read_map(const json& j, Backend backend, const std::string& path) {
  MapData m;
  if (backend == Backend::FinSet) {
    m.image = int_list(need(j, "image", path), path + "/image");
  } else {
    const auto& rows = as_array(need(j, "matrix", path), path + "/matrix");
    for (std::size_t r = 0; r < rows.size(); ++r) m.matrix.push_back(int_list(rows[r], path + "/matrix/" + std::to_string(r)));
  }
  return m;
}

GeneratorBlock read_generator(const json& j, const std::string& path) {
  only_keys(j, {"name", "length", "seed", "min_points", "max_points", "max_dim", "profile"}, path);
  GeneratorBlock g;
  g.name = as_string(need(j, "name", path), path + "/name");
  if (g.name != "strict_sequence" && g.name != "planted_sequence") fail(path + "/name", "unknown generator '" + g.name + "'");
  if (j.contains("length")) g.length = as_uint(j.at("length"), path + "/length");
  if (j.contains("seed")) g.seed = as_uint(j.at("seed"), path + "/seed");
  if (j.contains("min_points")) g.min_points = as_uint(j.at("min_points"), path + "/min_points");
  if (j.contains("max_points")) g.max_points = as_uint(j.at("max_points"), path + "/max_points");
  if (j.contains("max_dim")) g.max_dim = static_cast<int>(as_uint(j.at("max_dim"), path + "/max_dim"));
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    const auto pp = path + "/profile";
    g.profile = as_string(need(p, "kind", pp), pp + "/kind");
    if (g.profile == "strict") {
      only_keys(p, {"kind"}, pp);
    } else if (g.profile == "explicit") {
      only_keys(p, {"kind", "values"}, pp);
      for (auto v : int_list(need(p, "values", pp), pp + "/values")) {
        if (v < 0) fail(pp + "/values", "negative delay");
        g.values.push_back(static_cast<std::size_t>(v));
      }
    } else if (g.profile == "step") {
      only_keys(p, {"kind", "step"}, pp);
      g.step = as_uint(need(p, "step", pp), pp + "/step");
    } else if (g.profile == "random") {
      only_keys(p, {"kind", "max_delay"}, pp);
      g.max_delay = as_uint(need(p, "max_delay", pp), pp + "/max_delay");
    } else {
      fail(pp + "/kind", "unknown profile '" + g.profile + "'");
    }
  }
  if (g.name == "strict_sequence" && g.profile != "strict") fail(path, "strict_sequence takes no delay profile");
  return g;
}

SystemDocument read_system(const json& j, const std::string& path) {
  only_keys(j, {"category", "index", "objects", "bonds", "generator", "horizon"}, path);
  SystemDocument d;
  const auto& cat = need(j, "category", path);
  const auto cp = path + "/category";
  const auto backend = as_string(need(cat, "backend", cp), cp + "/backend");
  if (backend == "finset") {
    only_keys(cat, {"backend"}, cp);
    d.backend = Backend::FinSet;
  } else if (backend == "matmod") {
    only_keys(cat, {"backend", "modulus"}, cp);
    d.backend = Backend::MatMod;
    d.modulus = as_int(need(cat, "modulus", cp), cp + "/modulus");
  } else {
    fail(cp + "/backend", "unknown backend '" + backend + "'");
  }
  d.index = read_index(need(j, "index", path), path + "/index");
  if (j.contains("generator")) {
    if (j.contains("objects") || j.contains("bonds")) fail(path, "generated systems list no objects or bonds");
    d.generator = read_generator(j.at("generator"), path + "/generator");
  } else {
    const auto& objs = as_array(need(j, "objects", path), path + "/objects");
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const auto p = path + "/objects/" + std::to_string(i);
      ObjectEntry o;
      o.element = as_string(need(objs[i], "element", p), p + "/element");
      if (d.backend == Backend::FinSet) {
        only_keys(objs[i], {"element", "points"}, p);
        o.points = int_list(need(objs[i], "points", p), p + "/points");
      } else {
        only_keys(objs[i], {"element", "dim"}, p);
        o.dim = static_cast<int>(as_uint(need(objs[i], "dim", p), p + "/dim"));
      }
      d.objects.push_back(std::move(o));
    }
    if (j.contains("bonds")) {
      const auto& bs = as_array(j.at("bonds"), path + "/bonds");
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const auto p = path + "/bonds/" + std::to_string(i);
        only_keys(bs[i], {"lower", "upper", d.backend == Backend::FinSet ? "image" : "matrix"}, p);
        d.bonds.push_back(BondEntry{as_string(need(bs[i], "lower", p), p + "/lower"),
                                    as_string(need(bs[i], "upper", p), p + "/upper"), read_map(bs[i], d.backend, p)});
      }
    }
  }
  if (j.contains("horizon")) d.horizon = as_uint(j.at("horizon"), path + "/horizon");
  return d;
}

MorphismBlock read_morphism_block(const json& j, Backend backend, const std::string& path) {
  MorphismBlock m;
  m.kind = as_string(need(j, "kind", path), path + "/kind");
  if (m.kind == "identity") {
    only_keys(j, {"kind"}, path);
  } else if (m.kind == "explicit") {
    only_keys(j, {"kind", "index_map", "components"}, path);
    const auto& im = as_array(need(j, "index_map", path), path + "/index_map");
    for (std::size_t i = 0; i < im.size(); ++i) m.index_map.push_back(label_pair(im[i], path + "/index_map/" + std::to_string(i)));
    const auto& cs = as_array(need(j, "components", path), path + "/components");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto p = path + "/components/" + std::to_string(i);
      only_keys(cs[i], {"element", backend == Backend::FinSet ? "image" : "matrix"}, p);
      m.components.emplace_back(as_string(need(cs[i], "element", p), p + "/element"), read_map(cs[i], backend, p));
    }
  } else if (m.kind == "planted_level_iso") {
    only_keys(j, {"kind", "length", "seed", "min_points", "max_points", "morphism_delay"}, path);
    if (j.contains("length")) m.plant.length = as_uint(j.at("length"), path + "/length");
    if (j.contains("seed")) m.plant.seed = as_uint(j.at("seed"), path + "/seed");
    if (j.contains("min_points")) m.plant.min_points = as_uint(j.at("min_points"), path + "/min_points");
    if (j.contains("max_points")) m.plant.max_points = as_uint(j.at("max_points"), path + "/max_points");
    if (j.contains("morphism_delay")) m.morphism_delay = as_uint(j.at("morphism_delay"), path + "/morphism_delay");
    m.plant.name = "planted_level_iso";
  } else {
    fail(path + "/kind", "unknown morphism kind '" + m.kind + "'");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Writing

ojson write_index(const IndexBlock& b) {
  ojson j;
  j["kind"] = b.kind;
  if (b.kind == "finite") {
    j["elements"] = b.elements;
    ojson lq = ojson::array();
    for (const auto& [lo, hi] : b.leq) lq.push_back({lo, hi});
    j["leq"] = lq;
  } else if (b.kind == "mardesic_of") {
    j["base"] = write_index(b.base.at(0));
  } else if (b.kind == "subset") {
    j["base"] = write_index(b.base.at(0));
    j["subset"] = b.subset;
    if (b.subset == "tail") j["n"] = b.tail;
    if (b.subset == "members") {
      ojson ms = ojson::array();
      for (const auto& l : b.member_labels) ms.push_back(l);
      for (const auto& k : b.member_keys) ms.push_back(k);
      j["members"] = ms;
    }
  }
  return j;
}

void write_map(ojson& j, const MapData& m, Backend backend) {
  if (backend == Backend::FinSet) j["image"] = m.image;
  else j["matrix"] = m.matrix;
}

ojson write_generator(const GeneratorBlock& g) {
  ojson j;
  j["name"] = g.name;
  j["length"] = g.length;
  j["seed"] = g.seed;
  j["min_points"] = g.min_points;
  j["max_points"] = g.max_points;
  j["max_dim"] = g.max_dim;
  ojson p;
  p["kind"] = g.profile;
  if (g.profile == "explicit") p["values"] = g.values;
  if (g.profile == "step") p["step"] = g.step;
  if (g.profile == "random") p["max_delay"] = g.max_delay;
  j["profile"] = p;
  return j;
}

ojson write_system(const SystemDocument& d) {
  ojson j;
  ojson cat;
  cat["backend"] = to_string(d.backend);
  if (d.backend == Backend::MatMod) cat["modulus"] = d.modulus;
  j["category"] = cat;
  j["index"] = write_index(d.index);
  if (d.generator) {
    j["generator"] = write_generator(*d.generator);
  } else {
    ojson objs = ojson::array();
    for (const auto& o : d.objects) {
      ojson e;
      e["element"] = o.element;
      if (d.backend == Backend::FinSet) e["points"] = o.points;
      else e["dim"] = o.dim;
      objs.push_back(e);
    }
    j["objects"] = objs;
    ojson bs = ojson::array();
    for (const auto& b : d.bonds) {
      ojson e;
      e["lower"] = b.lower;
      e["upper"] = b.upper;
      write_map(e, b.map, d.backend);
      bs.push_back(e);
    }
    j["bonds"] = bs;
  }
  if (d.horizon) j["horizon"] = *d.horizon;
  return j;
}

ojson write_morphism_block(const MorphismBlock& m, Backend backend) {
  ojson j;
  j["kind"] = m.kind;
  if (m.kind == "explicit") {
    ojson im = ojson::array();
    for (const auto& [b, a] : m.index_map) im.push_back({b, a});
    j["index_map"] = im;
    ojson cs = ojson::array();
    for (const auto& [b, map] : m.components) {
      ojson e;
      e["element"] = b;
      write_map(e, map, backend);
      cs.push_back(e);
    }
    j["components"] = cs;
  } else if (m.kind == "planted_level_iso") {
    j["length"] = m.plant.length;
    j["seed"] = m.plant.seed;
    j["min_points"] = m.plant.min_points;
    j["max_points"] = m.plant.max_points;
    j["morphism_delay"] = m.morphism_delay;
  }
  return j;
}

}  // namespace

SystemDocument parse_system(const std::string& text) { return read_system(parse_text(text), ""); }

std::string serialize(const SystemDocument& doc) { return write_system(doc).dump(2) + "\n"; }

MorphismDocument parse_morphism(const std::string& text) {
  const json j = parse_text(text);
  only_keys(j, {"source", "target", "morphism", "other"}, "");
  MorphismDocument d;
  if (j.contains("source")) d.source = read_system(j.at("source"), "/source");
  if (j.contains("target")) d.target = read_system(j.at("target"), "/target");
  const auto backend = d.source ? d.source->backend : Backend::FinSet;
  d.morphism = read_morphism_block(need(j, "morphism", ""), backend, "/morphism");
  if (j.contains("other")) d.other = read_morphism_block(j.at("other"), backend, "/other");
  return d;
}

std::string serialize(const MorphismDocument& doc) {
  ojson j;
  const auto backend = doc.source ? doc.source->backend : Backend::FinSet;
  if (doc.source) j["source"] = write_system(*doc.source);
  if (doc.target) j["target"] = write_system(*doc.target);
  j["morphism"] = write_morphism_block(doc.morphism, backend);
  if (doc.other) j["other"] = write_morphism_block(*doc.other, backend);
  return j.dump(2) + "\n";
}

}  // namespace prokit
