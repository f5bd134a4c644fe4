#include "duality/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace duality {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw IoError(where + ": " + what);
}

void require_object(const Json& j, const std::string& where,
                    const std::vector<std::string>& keys) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const std::string& k : keys)
    if (!j.contains(k)) bad(where, "missing field \"" + k + "\"");
  for (const auto& item : j.items())
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      bad(where, "unknown field \"" + item.key() + "\"");
}

void require_kind(const Json& j, const std::string& where, const std::string& kind) {
  if (!j.at("kind").is_string() || j.at("kind").get<std::string>() != kind)
    bad(where, "expected kind \"" + kind + "\"");
}

long long require_int(const Json& j, const std::string& where, long long lo, long long hi) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi)
    bad(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
  return v;
}

// sorted, duplicate-free list of indices below n, returned as a mask
Mask require_index_list(const Json& j, const std::string& where, int n) {
  if (!j.is_array()) bad(where, "expected an array of indices");
  Mask m = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    int v = static_cast<int>(require_int(j[i], where + "[" + std::to_string(i) + "]", 0, n - 1));
    if (has(m, v)) bad(where, "duplicate index " + std::to_string(v));
    m |= bit(v);
  }
  return m;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

Json poset_to_json(const FinPoset& p) {
  std::vector<std::pair<int, int>> covers = p.cover_pairs();
  std::sort(covers.begin(), covers.end());
  Json leq = Json::array();
  for (const auto& [i, j] : covers) leq.push_back(Json::array({i, j}));
  return Json{{"kind", "poset"}, {"size", p.n}, {"leq", leq}};
}

FinPoset poset_from_json(const Json& j) {
  require_object(j, "poset", {"kind", "size", "leq"});
  require_kind(j, "poset", "poset");
  int n = static_cast<int>(require_int(j.at("size"), "poset.size", 0, kMaxElems));
  if (!j.at("leq").is_array()) bad("poset.leq", "expected an array of pairs");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < j.at("leq").size(); ++k) {
    const Json& e = j.at("leq")[k];
    std::string where = "poset.leq[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) bad(where, "expected a pair [i, j]");
    int a = static_cast<int>(require_int(e[0], where, 0, n - 1));
    int b = static_cast<int>(require_int(e[1], where, 0, n - 1));
    pairs.emplace_back(a, b);
  }
  std::pair<int, int> w;
  std::optional<FinPoset> p = FinPoset::from_pairs(n, pairs, &w);
  if (!p)
    bad("poset.leq", "antisymmetry violation: a cycle through " + std::to_string(w.first) +
                         " and " + std::to_string(w.second));
  return *p;
}

Json lattice_to_json(const FinLattice& l) {
  return Json{{"kind", "lattice"}, {"poset", poset_to_json(l.order)}};
}

FinLattice lattice_from_json(const Json& j) {
  require_object(j, "lattice", {"kind", "poset"});
  require_kind(j, "lattice", "lattice");
  FinPoset p = poset_from_json(j.at("poset"));
  LatticeWitness w;
  std::optional<FinLattice> l = lattice_from_poset(p, &w);
  if (!l)
    bad("lattice.poset", "elements " + std::to_string(w.a) + " and " + std::to_string(w.b) +
                             " have no meet or join");
  return *l;
}

Json hom_to_json(const AlgHom& h) {
  return Json{{"kind", "hom"},
              {"dom", lattice_to_json(h.dom)},
              {"cod", lattice_to_json(h.cod)},
              {"map", h.map}};
}

AlgHom hom_from_json(const Json& j) {
  require_object(j, "hom", {"kind", "dom", "cod", "map"});
  require_kind(j, "hom", "hom");
  AlgHom h{lattice_from_json(j.at("dom")), lattice_from_json(j.at("cod")), {}};
  const Json& m = j.at("map");
  if (!m.is_array() || static_cast<int>(m.size()) != h.dom.size())
    bad("hom.map", "expected one image per domain element");
  for (std::size_t i = 0; i < m.size(); ++i)
    h.map.push_back(static_cast<int>(
        require_int(m[i], "hom.map[" + std::to_string(i) + "]", 0, h.cod.size() - 1)));
  return h;
}

Json fanspace_to_json(const FanSpace& x) {
  Json tails = Json::array();
  for (const Tail& t : x.tails)
    tails.push_back(Json{
        {"limit", t.limit}, {"below", mask_to_list(t.below)}, {"excluded", t.excluded}});
  return Json{{"kind", "fanspace"},
              {"skeleton", poset_to_json(x.skeleton)},
              {"tags", mask_to_list(x.limits)},
              {"tails", tails}};
}

FanSpace fanspace_from_json(const Json& j) {
  require_object(j, "fanspace", {"kind", "skeleton", "tags", "tails"});
  require_kind(j, "fanspace", "fanspace");
  FinPoset sk = poset_from_json(j.at("skeleton"));
  Mask limits = require_index_list(j.at("tags"), "fanspace.tags", sk.n);
  if (!j.at("tails").is_array()) bad("fanspace.tails", "expected an array");
  std::vector<Tail> tails;
  for (std::size_t k = 0; k < j.at("tails").size(); ++k) {
    const Json& e = j.at("tails")[k];
    std::string where = "fanspace.tails[" + std::to_string(k) + "]";
    require_object(e, where, {"limit", "below", "excluded"});
    Tail t;
    t.limit = static_cast<int>(require_int(e.at("limit"), where + ".limit", 0, sk.n - 1));
    t.below = require_index_list(e.at("below"), where + ".below", sk.n);
    if (!e.at("excluded").is_array()) bad(where + ".excluded", "expected an array");
    for (std::size_t i = 0; i < e.at("excluded").size(); ++i)
      t.excluded.push_back(static_cast<int>(require_int(
          e.at("excluded")[i], where + ".excluded[" + std::to_string(i) + "]", 0, 1 << 20)));
    tails.push_back(std::move(t));
  }
  std::string err;
  std::optional<FanSpace> x = FanSpace::make(sk, limits, std::move(tails), &err);
  if (!x) bad("fanspace", err);
  return *x;
}

Json defset_to_json(const DefinableSet& d) { return set_to_json(d); }

DefinableSet defset_from_json(const Json& j, const FanSpace& x) {
  require_object(j, "set", {"named", "tails"});
  DefinableSet d;
  d.named = require_index_list(j.at("named"), "set.named", x.skeleton.n);
  const Json& tails = j.at("tails");
  if (!tails.is_array() || static_cast<int>(tails.size()) != x.tail_count())
    bad("set.tails", "expected one trace per tail of the space");
  for (std::size_t k = 0; k < tails.size(); ++k) {
    const Json& e = tails[k];
    std::string where = "set.tails[" + std::to_string(k) + "]";
    require_object(e, where, {"mode", "exceptions"});
    TailTrace tr;
    if (!e.at("mode").is_string() ||
        (e.at("mode") != Json("FIN") && e.at("mode") != Json("COFIN")))
      bad(where + ".mode", "expected \"FIN\" or \"COFIN\"");
    tr.mode = e.at("mode") == Json("FIN") ? TailMode::FIN : TailMode::COFIN;
    if (!e.at("exceptions").is_array()) bad(where + ".exceptions", "expected an array");
    for (std::size_t i = 0; i < e.at("exceptions").size(); ++i)
      tr.exceptions.push_back(static_cast<int>(require_int(
          e.at("exceptions")[i], where + ".exceptions[" + std::to_string(i) + "]", 0, 1 << 20)));
    d.tails.push_back(std::move(tr));
  }
  if (!valid_set(x, d))
    bad("set", "exception lists must be sorted, duplicate-free, and avoid excluded indices");
  return d;
}

namespace {

FanPoint point_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected a point object");
  if (j.contains("skeleton")) {
    require_object(j, where, {"skeleton"});
    return FanPoint::sk(static_cast<int>(require_int(j.at("skeleton"), where, 0, kMaxElems - 1)));
  }
  require_object(j, where, {"tail", "index"});
  int t = static_cast<int>(require_int(j.at("tail"), where + ".tail", 0, kMaxElems - 1));
  long long n = require_int(j.at("index"), where + ".index", 0, 1 << 20);
  return FanPoint::gen(t, n);
}

Json overrides_to_json(const TailMap& tm) {
  Json out = Json::array();
  for (const auto& [idx, target] : tm.overrides)
    out.push_back(Json{{"index", idx}, {"target", point_to_json(target)}});
  return out;
}

std::vector<std::pair<int, FanPoint>> overrides_from_json(const Json& j,
                                                          const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::pair<int, FanPoint>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    require_object(j[i], w, {"index", "target"});
    out.emplace_back(static_cast<int>(require_int(j[i].at("index"), w + ".index", 0, 1 << 20)),
                     point_from_json(j[i].at("target"), w + ".target"));
  }
  return out;
}

}  // namespace

Json fanmap_to_json(const FanMap& f) {
  Json named = Json::array();
  for (const FanPoint& q : f.named) named.push_back(point_to_json(q));
  Json tails = Json::array();
  for (const TailMap& tm : f.tails) {
    if (tm.kind == TailMapKind::Const)
      tails.push_back(Json{{"kind", "const"},
                           {"target", point_to_json(tm.target)},
                           {"overrides", overrides_to_json(tm)}});
    else
      tails.push_back(Json{{"kind", "embed"},
                           {"tail", tm.cod_tail},
                           {"a", tm.a},
                           {"b", tm.b},
                           {"overrides", overrides_to_json(tm)}});
  }
  return Json{{"kind", "fanmap"},
              {"dom", fanspace_to_json(f.dom)},
              {"cod", fanspace_to_json(f.cod)},
              {"named", named},
              {"tails", tails}};
}

FanMap fanmap_from_json(const Json& j) {
  require_object(j, "fanmap", {"kind", "dom", "cod", "named", "tails"});
  require_kind(j, "fanmap", "fanmap");
  FanSpace dom = fanspace_from_json(j.at("dom"));
  FanSpace cod = fanspace_from_json(j.at("cod"));
  if (!j.at("named").is_array()) bad("fanmap.named", "expected an array of points");
  std::vector<FanPoint> named;
  for (std::size_t i = 0; i < j.at("named").size(); ++i)
    named.push_back(
        point_from_json(j.at("named")[i], "fanmap.named[" + std::to_string(i) + "]"));
  if (!j.at("tails").is_array()) bad("fanmap.tails", "expected an array");
  std::vector<TailMap> tails;
  for (std::size_t k = 0; k < j.at("tails").size(); ++k) {
    const Json& e = j.at("tails")[k];
    std::string where = "fanmap.tails[" + std::to_string(k) + "]";
    if (!e.is_object() || !e.contains("kind")) bad(where, "expected a tail map object");
    TailMap tm;
    if (e.at("kind") == Json("const")) {
      require_object(e, where, {"kind", "target", "overrides"});
      tm.kind = TailMapKind::Const;
      tm.target = point_from_json(e.at("target"), where + ".target");
    } else if (e.at("kind") == Json("embed")) {
      require_object(e, where, {"kind", "tail", "a", "b", "overrides"});
      tm.kind = TailMapKind::Embed;
      tm.cod_tail = static_cast<int>(require_int(e.at("tail"), where + ".tail", 0, kMaxElems));
      tm.a = static_cast<int>(require_int(e.at("a"), where + ".a", 1, 1 << 20));
      tm.b = static_cast<int>(require_int(e.at("b"), where + ".b", 0, 1 << 20));
    } else {
      bad(where + ".kind", "expected \"const\" or \"embed\"");
    }
    tm.overrides = overrides_from_json(e.at("overrides"), where + ".overrides");
    tails.push_back(std::move(tm));
  }
  std::string err;
  std::optional<FanMap> f =
      FanMap::make(std::move(dom), std::move(cod), std::move(named), std::move(tails), &err);
  if (!f) bad("fanmap", err);
  return *f;
}

Json relation_to_json(const GenRelation& r) {
  Json pairs = Json::array();
  for (std::size_t x = 0; x < r.rows.size(); ++x)
    for (int y : mask_to_list(r.rows[x])) pairs.push_back(Json::array({static_cast<int>(x), y}));
  return Json{{"kind", "relation"}, {"pairs", pairs}};
}

GenRelation relation_from_json(const Json& j, PointedGenSpace dom, PointedGenSpace cod) {
  require_object(j, "relation", {"kind", "pairs"});
  require_kind(j, "relation", "relation");
  if (!j.at("pairs").is_array()) bad("relation.pairs", "expected an array of pairs");
  GenRelation r{std::move(dom), std::move(cod), {}};
  r.rows.assign(r.dom.size(), 0);
  for (std::size_t k = 0; k < j.at("pairs").size(); ++k) {
    const Json& e = j.at("pairs")[k];
    std::string where = "relation.pairs[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) bad(where, "expected a pair [x, y]");
    int x = static_cast<int>(require_int(e[0], where, 0, r.dom.size() - 1));
    int y = static_cast<int>(require_int(e[1], where, 0, r.cod.size() - 1));
    r.rows[x] |= bit(y);
  }
  return r;
}

}  // namespace duality
