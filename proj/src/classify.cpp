#include "duality/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace duality {

namespace {

bool tail_index_valid(const FanSpace& x, int t, long long n) {
  if (n < 0) return false;
  const std::vector<int>& ex = x.tails[t].excluded;
  return !std::binary_search(ex.begin(), ex.end(), static_cast<int>(n));
}

bool valid_point(const FanSpace& x, const FanPoint& p) {
  if (p.tail < 0) return p.skeleton >= 0 && p.skeleton < x.skeleton.n;
  return p.skeleton < 0 && p.tail < x.tail_count() && tail_index_valid(x, p.tail, p.index);
}

// singleton {p}
DefinableSet point_set(const FanSpace& x, const FanPoint& p) {
  DefinableSet d = empty_set(x);
  if (p.tail < 0)
    d.named = bit(p.skeleton);
  else
    d.tails[p.tail].exceptions = {static_cast<int>(p.index)};
  return d;
}

bool trace_member(const TailTrace& tr, int n) {
  bool exc = std::binary_search(tr.exceptions.begin(), tr.exceptions.end(), n);
  return tr.mode == TailMode::FIN ? exc : !exc;
}

const FanPoint* override_target(const TailMap& tm, int n) {
  auto it = std::lower_bound(tm.overrides.begin(), tm.overrides.end(), n,
                             [](const std::pair<int, FanPoint>& o, int v) { return o.first < v; });
  return (it != tm.overrides.end() && it->first == n) ? &it->second : nullptr;
}

std::string set_key(const DefinableSet& d) {
  std::string k = std::to_string(d.named);
  for (const TailTrace& t : d.tails) {
    k += t.mode == TailMode::FIN ? "|F" : "|C";
    for (int e : t.exceptions) {
      k += ',';
      k += std::to_string(e);
    }
  }
  return k;
}

// Exception candidates per tail.  Codomain side: every index the map targets
// directly, plus a consecutive fresh run long enough to hit each residue
// class of each affine embedding.  Indices with no preimage beyond these
// behave exactly like an untested representative, so the families below
// decide the universally quantified conditions.
struct Pools {
  std::vector<std::vector<int>> cod, dom;
  int fresh = 0;
};

Pools map_pools(const FanMap& f, int depth) {
  Pools p;
  p.fresh = map_bound(f) + 1;
  p.cod.assign(f.cod.tail_count(), {});
  p.dom.assign(f.dom.tail_count(), {});
  auto add_target = [&p](const FanPoint& q) {
    if (q.tail >= 0) p.cod[q.tail].push_back(static_cast<int>(q.index));
  };
  for (const FanPoint& q : f.named) add_target(q);
  for (int t = 0; t < f.dom.tail_count(); ++t) {
    const TailMap& tm = f.tails[t];
    if (tm.kind == TailMapKind::Const) add_target(tm.target);
    for (const auto& o : tm.overrides) {
      p.dom[t].push_back(o.first);
      add_target(o.second);
    }
  }
  for (int u = 0; u < f.cod.tail_count(); ++u) {
    int run = std::max(1, depth);
    for (int t = 0; t < f.dom.tail_count(); ++t)
      if (f.tails[t].kind == TailMapKind::Embed && f.tails[t].cod_tail == u)
        run = std::max(run, f.tails[t].a);
    for (int j = 0; j < run; ++j) p.cod[u].push_back(p.fresh + j);
    std::sort(p.cod[u].begin(), p.cod[u].end());
    p.cod[u].erase(std::unique(p.cod[u].begin(), p.cod[u].end()), p.cod[u].end());
    std::erase_if(p.cod[u], [&](int i) { return !tail_index_valid(f.cod, u, i); });
  }
  for (int t = 0; t < f.dom.tail_count(); ++t) {
    for (int j = 0; j < std::max(1, depth); ++j) p.dom[t].push_back(p.fresh + j);
    std::sort(p.dom[t].begin(), p.dom[t].end());
    p.dom[t].erase(std::unique(p.dom[t].begin(), p.dom[t].end()), p.dom[t].end());
    std::erase_if(p.dom[t], [&](int i) { return !tail_index_valid(f.dom, t, i); });
  }
  return p;
}

// definable upsets with ≤ 1 pooled exception per tail, open or clopen
std::vector<DefinableSet> pooled_upsets(const FanSpace& x, const std::vector<std::vector<int>>& pool,
                                        bool clopen) {
  std::vector<std::vector<TailTrace>> opts(x.tail_count());
  for (int t = 0; t < x.tail_count(); ++t)
    for (TailMode m : {TailMode::FIN, TailMode::COFIN}) {
      opts[t].push_back({m, {}});
      for (int i : pool[t]) opts[t].push_back({m, {i}});
    }
  std::vector<DefinableSet> out;
  std::set<std::string> seen;
  for (Mask named : all_upsets(x.skeleton)) {
    DefinableSet d = empty_set(x);
    d.named = named;
    std::vector<std::size_t> idx(x.tail_count(), 0);
    while (true) {
      for (int t = 0; t < x.tail_count(); ++t) d.tails[t] = opts[t][idx[t]];
      if (is_upset_def(x, d) && (clopen ? is_clopen_def(x, d) : is_open_def(x, d)) &&
          seen.insert(set_key(d)).second)
        out.push_back(d);
      int t = 0;
      for (; t < x.tail_count(); ++t) {
        if (++idx[t] < opts[t].size()) break;
        idx[t] = 0;
      }
      if (t == x.tail_count()) break;
    }
  }
  return out;
}

// definable downsets: per tail empty, one pooled generic, all but one, or full
std::vector<DefinableSet> pooled_downsets(const FanSpace& x,
                                          const std::vector<std::vector<int>>& pool) {
  std::vector<std::vector<TailTrace>> opts(x.tail_count());
  for (int t = 0; t < x.tail_count(); ++t) {
    opts[t].push_back({TailMode::FIN, {}});
    opts[t].push_back({TailMode::COFIN, {}});
    for (int i : pool[t]) {
      opts[t].push_back({TailMode::FIN, {i}});
      opts[t].push_back({TailMode::COFIN, {i}});
    }
  }
  std::vector<DefinableSet> out;
  std::set<std::string> seen;
  for (Mask named : all_downsets(x.skeleton)) {
    DefinableSet d = empty_set(x);
    d.named = named;
    std::vector<std::size_t> idx(x.tail_count(), 0);
    while (true) {
      for (int t = 0; t < x.tail_count(); ++t) d.tails[t] = opts[t][idx[t]];
      if (is_downset_def(x, d) && seen.insert(set_key(d)).second) out.push_back(d);
      int t = 0;
      for (; t < x.tail_count(); ++t) {
        if (++idx[t] < opts[t].size()) break;
        idx[t] = 0;
      }
      if (t == x.tail_count()) break;
    }
  }
  return out;
}

// both sides of the spectral-closure equation at e
bool closure_eq(const FanMap& f, const DefinableSet& e, DefinableSet* lhs, DefinableSet* rhs) {
  *lhs = preimage(f, spectral_closure(f.cod, e));
  *rhs = spectral_closure(f.dom, preimage(f, e));
  return *lhs == *rhs;
}

// largest open upset contained in s: complement of the smallest closed
// downset containing the complement (iterated ↓cl, which converges because
// the named part only grows and each trace jumps at most once)
DefinableSet opup_interior(const FanSpace& x, const DefinableSet& s) {
  DefinableSet c = set_complement(x, s);
  for (int i = 0; i < 96; ++i) {
    DefinableSet n = spectral_closure(x, c);
    if (n == c) return set_complement(x, c);
    c = std::move(n);
  }
  require_internal(false, "iterated spectral closure failed to converge");
  return s;
}

}  // namespace

std::optional<FanMap> FanMap::make(FanSpace dom, FanSpace cod, std::vector<FanPoint> named,
                                   std::vector<TailMap> tails, std::string* err) {
  auto fail = [err](const char* m) -> std::optional<FanMap> {
    if (err) *err = m;
    return std::nullopt;
  };
  if (static_cast<int>(named.size()) != dom.skeleton.n)
    return fail("named assignment size mismatch");
  for (const FanPoint& q : named)
    if (!valid_point(cod, q)) return fail("named target is not a point of the codomain");
  if (static_cast<int>(tails.size()) != dom.tail_count()) return fail("tail map count mismatch");
  for (int t = 0; t < static_cast<int>(tails.size()); ++t) {
    TailMap& tm = tails[t];
    if (tm.kind == TailMapKind::Const) {
      if (!valid_point(cod, tm.target)) return fail("constant target is not a point of the codomain");
    } else {
      if (tm.cod_tail < 0 || tm.cod_tail >= cod.tail_count())
        return fail("embedding targets a tail the codomain does not have");
      if (tm.a < 1 || tm.b < 0) return fail("affine index map needs a >= 1 and b >= 0");
    }
    std::sort(tm.overrides.begin(), tm.overrides.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 1; i < tm.overrides.size(); ++i)
      if (tm.overrides[i - 1].first == tm.overrides[i].first)
        return fail("duplicate override index");
    for (const auto& o : tm.overrides) {
      if (!tail_index_valid(dom, t, o.first)) return fail("override at an invalid tail index");
      if (!valid_point(cod, o.second)) return fail("override target is not a point of the codomain");
    }
    if (tm.kind == TailMapKind::Embed)
      for (int e : cod.tails[tm.cod_tail].excluded) {
        if (e < tm.b || (e - tm.b) % tm.a != 0) continue;
        int n = (e - tm.b) / tm.a;
        if (tail_index_valid(dom, t, n) && override_target(tm, n) == nullptr)
          return fail("affine image hits an excluded index without an override");
      }
  }
  FanMap f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.named = std::move(named);
  f.tails = std::move(tails);
  return f;
}

FanPoint apply(const FanMap& f, const FanPoint& p) {
  if (p.tail < 0) return f.named[p.skeleton];
  const TailMap& tm = f.tails[p.tail];
  if (const FanPoint* o = override_target(tm, static_cast<int>(p.index))) return *o;
  if (tm.kind == TailMapKind::Const) return tm.target;
  return FanPoint::gen(tm.cod_tail, tm.a * p.index + tm.b);
}

DefinableSet preimage(const FanMap& f, const DefinableSet& d) {
  DefinableSet out = empty_set(f.dom);
  for (int s = 0; s < f.dom.skeleton.n; ++s)
    if (contains(f.cod, d, f.named[s])) out.named |= bit(s);
  for (int t = 0; t < f.dom.tail_count(); ++t) {
    const TailMap& tm = f.tails[t];
    TailTrace tr;
    if (tm.kind == TailMapKind::Const) {
      tr.mode = contains(f.cod, d, tm.target) ? TailMode::COFIN : TailMode::FIN;
    } else {
      const TailTrace& ct = d.tails[tm.cod_tail];
      tr.mode = ct.mode;
      for (int e : ct.exceptions)
        if (e >= tm.b && (e - tm.b) % tm.a == 0) tr.exceptions.push_back((e - tm.b) / tm.a);
    }
    for (const auto& o : tm.overrides) {
      bool want = contains(f.cod, d, o.second);
      if (want == trace_member(tr, o.first)) continue;
      auto it = std::lower_bound(tr.exceptions.begin(), tr.exceptions.end(), o.first);
      if (it != tr.exceptions.end() && *it == o.first)
        tr.exceptions.erase(it);
      else
        tr.exceptions.insert(it, o.first);
    }
    out.tails[t] = std::move(tr);
  }
  return canon_set(f.dom, std::move(out));
}

int map_bound(const FanMap& f) {
  long long m = std::max({f.dom.bound(), f.cod.bound(), 0});
  long long dmax = std::max(f.dom.bound(), 0);
  for (const FanPoint& q : f.named)
    if (q.tail >= 0) m = std::max(m, q.index);
  for (const TailMap& tm : f.tails) {
    if (tm.kind == TailMapKind::Const && tm.target.tail >= 0) m = std::max(m, tm.target.index);
    for (const auto& o : tm.overrides) {
      dmax = std::max<long long>(dmax, o.first);
      m = std::max<long long>(m, o.first);
      if (o.second.tail >= 0) m = std::max(m, o.second.index);
    }
  }
  // fresh codomain indices must lie beyond the image of every structural
  // domain index so that their preimages are unstructured too
  for (const TailMap& tm : f.tails)
    if (tm.kind == TailMapKind::Embed)
      m = std::max(m, static_cast<long long>(tm.a) * (dmax + 1) + tm.b);
  return static_cast<int>(m);
}

bool is_es_minus(const FanMap& f, Json* witness) {
  auto blame = [witness](Json w) {
    if (witness) *witness = std::move(w);
    return false;
  };
  for (int t = 0; t < f.dom.tail_count(); ++t) {
    const TailMap& tm = f.tails[t];
    FanPoint at_limit = f.named[f.dom.tails[t].limit];
    FanPoint wanted = tm.kind == TailMapKind::Const
                          ? tm.target
                          : FanPoint::sk(f.cod.tails[tm.cod_tail].limit);
    if (!(at_limit == wanted))
      return blame({{"kind", "continuity"},
                    {"tail", t},
                    {"limit_image", point_to_json(at_limit)},
                    {"tail_image_limit", point_to_json(wanted)}});
  }
  for (int a = 0; a < f.dom.skeleton.n; ++a)
    for (int b = 0; b < f.dom.skeleton.n; ++b)
      if (f.dom.skeleton.leq(a, b) && !point_leq(f.cod, f.named[a], f.named[b]))
        return blame({{"kind", "order"}, {"below", a}, {"above", b}});
  for (int t = 0; t < f.dom.tail_count(); ++t) {
    const TailMap& tm = f.tails[t];
    Mask below = f.dom.tails[t].below;
    for (int s = 0; s < f.dom.skeleton.n; ++s) {
      if (!((below >> s) & 1)) continue;
      FanPoint fs = f.named[s];
      bool ok = tm.kind == TailMapKind::Const
                    ? point_leq(f.cod, tm.target, fs)
                    : fs.tail < 0 && fs.skeleton >= 0 &&
                          ((f.cod.tails[tm.cod_tail].below >> fs.skeleton) & 1);
      if (!ok) return blame({{"kind", "order"}, {"tail", t}, {"above", s}});
      for (const auto& o : tm.overrides)
        if (!point_leq(f.cod, o.second, fs))
          return blame({{"kind", "order"}, {"tail", t}, {"override", o.first}, {"above", s}});
    }
  }
  return true;
}

bool is_es(const FanMap& f, Json* witness, int depth) {
  std::vector<FanPoint> ys;
  for (int s = 0; s < f.cod.skeleton.n; ++s) ys.push_back(FanPoint::sk(s));
  Pools p = map_pools(f, depth);
  for (int u = 0; u < f.cod.tail_count(); ++u)
    for (int j = 0; j < std::max(1, depth); ++j)
      if (tail_index_valid(f.cod, u, p.fresh + j)) ys.push_back(FanPoint::gen(u, p.fresh + j));
  for (const FanPoint& y : ys) {
    DefinableSet single = point_set(f.cod, y);
    DefinableSet lhs = preimage(f, down_closure(f.cod, single));
    DefinableSet rhs = down_closure(f.dom, preimage(f, single));
    if (!(lhs == rhs)) {
      if (witness)
        *witness = Json{{"y", point_to_json(y)},
                        {"preimage_of_down", set_to_json(lhs)},
                        {"down_of_preimage", set_to_json(rhs)}};
      return false;
    }
  }
  return true;
}

bool is_es_plus(const FanMap& f, Json* witness, int depth) {
  Pools p = map_pools(f, depth);
  std::vector<DefinableSet> ou = pooled_upsets(f.cod, p.cod, false);
  std::set<std::string> seen;
  for (const DefinableSet& u : ou)
    for (const DefinableSet& v : ou) {
      DefinableSet e = set_difference(f.cod, u, v);
      if (!seen.insert(set_key(e)).second) continue;
      DefinableSet lhs, rhs;
      if (!closure_eq(f, e, &lhs, &rhs)) {
        if (witness)
          *witness = Json{{"e", set_to_json(e)},
                          {"preimage_of_spectral_closure", set_to_json(lhs)},
                          {"spectral_closure_of_preimage", set_to_json(rhs)}};
        return false;
      }
    }
  return true;
}

bool is_es_star(const FanMap& f, Json* witness, int depth) {
  Pools p = map_pools(f, depth);
  for (const DefinableSet& d : pooled_downsets(f.cod, p.cod)) {
    DefinableSet lhs, rhs;
    if (!closure_eq(f, d, &lhs, &rhs)) {
      if (witness)
        *witness = Json{{"d", set_to_json(d)},
                        {"preimage_of_spectral_closure", set_to_json(lhs)},
                        {"spectral_closure_of_preimage", set_to_json(rhs)}};
      return false;
    }
  }
  return true;
}

bool is_spectral_open(const FanMap& f, Json* witness, int depth) {
  Pools p = map_pools(f, depth);
  for (const DefinableSet& u : pooled_upsets(f.dom, p.dom, false)) {
    // exact image shape: named mask, plus per codomain tail whether the image
    // meets it and which residue classes the infinite affine pieces cover
    Mask img = 0;
    std::vector<char> nonempty(f.cod.tail_count(), 0);
    std::vector<std::vector<std::pair<int, int>>> progs(f.cod.tail_count());
    auto add_point = [&](const FanPoint& q) {
      if (q.tail < 0)
        img |= bit(q.skeleton);
      else
        nonempty[q.tail] = 1;
    };
    for (int s = 0; s < f.dom.skeleton.n; ++s)
      if ((u.named >> s) & 1) add_point(f.named[s]);
    for (int t = 0; t < f.dom.tail_count(); ++t) {
      const TailMap& tm = f.tails[t];
      const TailTrace& tr = u.tails[t];
      for (const auto& o : tm.overrides)
        if (trace_member(tr, o.first)) add_point(o.second);
      if (tr.mode == TailMode::FIN) {
        bool plain = false;
        for (int e : tr.exceptions)
          if (override_target(tm, e) == nullptr) plain = true;
        if (plain) {
          if (tm.kind == TailMapKind::Const)
            add_point(tm.target);
          else
            nonempty[tm.cod_tail] = 1;
        }
      } else {
        if (tm.kind == TailMapKind::Const) {
          add_point(tm.target);
        } else {
          nonempty[tm.cod_tail] = 1;
          progs[tm.cod_tail].push_back({tm.a, tm.b % tm.a});
        }
      }
    }
    Json why;
    bool ok = true;
    for (int s = 0; s < f.cod.skeleton.n && ok; ++s)
      if (((img >> s) & 1) && (up_set(f.cod.skeleton, bit(s)) & ~img) != 0) {
        ok = false;
        why = Json{{"reason", "image is not an upset"}, {"at", s}};
      }
    for (int c = 0; c < f.cod.tail_count() && ok; ++c)
      if ((nonempty[c] || !progs[c].empty()) && (f.cod.tails[c].below & ~img) != 0) {
        ok = false;
        why = Json{{"reason", "image is not an upset"}, {"tail", c}};
      }
    for (int c = 0; c < f.cod.tail_count() && ok; ++c) {
      int lim = f.cod.tails[c].limit;
      if (!((img >> lim) & 1)) continue;
      long long mod = 1;
      for (const auto& pr : progs[c]) mod = std::lcm(mod, static_cast<long long>(pr.first));
      std::vector<char> covered(static_cast<std::size_t>(mod), 0);
      for (const auto& pr : progs[c])
        for (long long r = pr.second; r < mod; r += pr.first) covered[static_cast<std::size_t>(r)] = 1;
      if (progs[c].empty() ||
          !std::all_of(covered.begin(), covered.end(), [](char b) { return b != 0; })) {
        ok = false;
        why = Json{{"reason", "image is not open at a limit"}, {"limit", lim}, {"tail", c}};
      }
    }
    if (!ok) {
      if (witness) *witness = Json{{"open_upset", set_to_json(u)}, {"failure", why}};
      return false;
    }
  }
  return true;
}

Verdict classify(const FanMap& f, int depth) {
  Verdict v;
  v.witnesses = Json::object();
  Json w;
  v.es_minus = is_es_minus(f, &w);
  if (!v.es_minus) {
    v.witnesses["es_minus"] = w;
    return v;
  }
  v.es = is_es(f, &w, depth);
  if (!v.es) v.witnesses["es"] = w;
  v.es_plus = is_es_plus(f, &w, depth);
  if (!v.es_plus) v.witnesses["es_plus"] = w;
  v.es_star = is_es_star(f, &w, depth);
  if (!v.es_star) v.witnesses["es_star"] = w;
  v.es_dagger = v.es_plus && v.es_star;
  require_internal(!v.es_plus || v.es,
                   "spectral-closure class of open-upset differences must refine p-morphisms");
  return v;
}

Report preimage_hom_check(const FanMap& f, int depth) {
  Report r;
  Pools p = map_pools(f, depth);
  auto implication_route = [&](const std::vector<DefinableSet>& family, Json* w) {
    for (const DefinableSet& u : family)
      for (const DefinableSet& v : family) {
        DefinableSet lhs = preimage(f, open_upset_implication(f.cod, u, v));
        DefinableSet rhs =
            open_upset_implication(f.dom, preimage(f, u), preimage(f, v));
        if (!(lhs == rhs)) {
          *w = Json{{"u", set_to_json(u)},
                    {"v", set_to_json(v)},
                    {"preimage_of_implication", set_to_json(lhs)},
                    {"implication_of_preimages", set_to_json(rhs)}};
          return false;
        }
      }
    return true;
  };
  {
    bool direct = is_es(f, nullptr, depth);
    Json w = Json::object();
    bool via = implication_route(pooled_upsets(f.cod, p.cod, true), &w);
    r.add("xcheck.es", direct == via,
          Json{{"pointwise", direct}, {"clopen_upset_implication", via}, {"witness", w}});
  }
  std::vector<DefinableSet> ou = pooled_upsets(f.cod, p.cod, false);
  {
    bool direct = is_es_plus(f, nullptr, depth);
    Json w = Json::object();
    bool via = implication_route(ou, &w);
    r.add("xcheck.es_plus", direct == via,
          Json{{"constructible", direct}, {"open_upset_implication", via}, {"witness", w}});
  }
  {
    bool direct = is_es_star(f, nullptr, depth);
    Json w = Json::object();
    bool via = true;
    // materializable infinite meets: for each open upset W and each tail,
    // the meet of {W minus one tail point} over all but at most one index
    for (const DefinableSet& wset : ou) {
      for (int u = 0; u < f.cod.tail_count() && via; ++u) {
        std::vector<int> keeps = p.cod[u];
        keeps.push_back(-1);  // drop the whole tail
        for (int keep : keeps) {
          DefinableSet tailpart = empty_set(f.cod);
          tailpart.tails[u].mode = TailMode::COFIN;
          if (keep >= 0) tailpart.tails[u].exceptions = {keep};
          DefinableSet s = set_difference(f.cod, wset, tailpart);
          DefinableSet lhs = preimage(f, opup_interior(f.cod, s));
          DefinableSet rhs = opup_interior(f.dom, preimage(f, s));
          if (!(lhs == rhs)) {
            via = false;
            w = Json{{"w", set_to_json(wset)},
                     {"tail", u},
                     {"kept_index", keep},
                     {"preimage_of_meet", set_to_json(lhs)},
                     {"meet_of_preimages", set_to_json(rhs)}};
            break;
          }
        }
      }
      if (!via) break;
    }
    r.add("xcheck.es_star", direct == via,
          Json{{"downsets", direct}, {"open_upset_meets", via}, {"witness", w}});
  }
  return r;
}

FanMap fan_map_f1() {
  FanSpace x1 = space_x1();
  auto f = FanMap::make(x1, x1, {FanPoint::sk(0), FanPoint::sk(0)}, {});
  require_internal(f.has_value(), "bundled map must validate");
  return *f;
}

FanMap fan_map_f2() {
  TailMap even{TailMapKind::Embed, {}, 0, 1, 0, {}};
  TailMap odd{TailMapKind::Embed, {}, 1, 1, 0, {}};
  auto f = FanMap::make(space_x2(), space_x3(), {FanPoint::sk(0), FanPoint::sk(0)}, {even, odd});
  require_internal(f.has_value(), "bundled map must validate");
  return *f;
}

FanMap fan_map_f3() {
  auto f = FanMap::make(space_x1(), space_x4(), {FanPoint::gen(0, 0), FanPoint::sk(0)}, {});
  require_internal(f.has_value(), "bundled map must validate");
  return *f;
}

FanMap fan_map_f4() {
  auto f = FanMap::make(embed_finite_poset(FinPoset::antichain(1)), space_x4(),
                        {FanPoint::sk(0)}, {});
  require_internal(f.has_value(), "bundled map must validate");
  return *f;
}

}  // namespace duality
