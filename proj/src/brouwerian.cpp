#include "duality/brouwerian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace duality {

namespace {

Json mask_json(Mask m) { return Json(mask_to_list(m)); }

bool member(const std::vector<Mask>& sorted, Mask u) {
  return std::binary_search(sorted.begin(), sorted.end(), u);
}

int index_of(const std::vector<Mask>& sorted, Mask u) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), u);
  if (it == sorted.end() || *it != u) return -1;
  return static_cast<int>(it - sorted.begin());
}

// smallest family containing the subbasis, ∅ and X, closed under ∪ and ∩
std::vector<Mask> generate_topology(const std::vector<Mask>& subbasis, int n) {
  Mask full = full_mask(n);
  std::set<Mask> s = {Mask{0}, full};
  for (Mask u : subbasis) s.insert(u & full);
  for (;;) {
    std::vector<Mask> cur(s.begin(), s.end());
    std::size_t before = s.size();
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        s.insert(cur[i] | cur[j]);
        s.insert(cur[i] & cur[j]);
      }
    if (s.size() == before) break;
  }
  return {s.begin(), s.end()};
}

FinPoset inclusion_order(const std::vector<Mask>& sets) {
  int n = static_cast<int>(sets.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((sets[i] & ~sets[j]) == 0) up[i] |= bit(j);
  return FinPoset::from_up(n, up);
}

void require_distributive(const MeetSemilatticeView& a, const char* who) {
  if (!is_distributive_ms(a))
    throw std::invalid_argument(std::string(who) + ": not a distributive meet-semilattice");
}

}  // namespace

bool PointedGenSpace::is_open(Mask u) const { return member(opens, u); }

bool PointedGenSpace::is_clopen(Mask u) const {
  return is_open(u) && is_open(~u & full_mask(order.n));
}

Mask PointedGenSpace::topo_closure(Mask s) const {
  Mask away = 0;
  for (Mask o : opens)
    if ((o & s) == 0) away |= o;
  return full_mask(order.n) & ~away;
}

std::optional<PointedGenSpace> PointedGenSpace::make(FinPoset order, Mask x0, int m,
                                                     const std::vector<Mask>& subbasis,
                                                     std::string* err) {
  auto fail = [&](const char* what) -> std::optional<PointedGenSpace> {
    if (err) *err = what;
    return std::nullopt;
  };
  if (order.n <= 0 || order.n > kMaxElems) return fail("carrier size out of range");
  if (m < 0 || m >= order.n) return fail("maximum index out of range");
  for (int i = 0; i < order.n; ++i)
    if (!order.leq(i, m)) return fail("m is not the greatest element");
  if (x0 & ~full_mask(order.n)) return fail("x0 not a subset of the carrier");
  if (has(x0, m)) return fail("x0 must avoid the maximum");
  PointedGenSpace x;
  x.order = std::move(order);
  x.x0 = x0;
  x.m = m;
  x.opens = generate_topology(subbasis, x.order.n);
  x.admissibles = admissible_sets(x);
  return x;
}

std::optional<PointedGenSpace> PointedGenSpace::discrete(FinPoset order, Mask x0, int m,
                                                         std::string* err) {
  std::vector<Mask> singles;
  for (int i = 0; i < order.n; ++i) singles.push_back(bit(i));
  return make(std::move(order), x0, m, singles, err);
}

std::vector<Mask> admissible_sets(const PointedGenSpace& x) {
  Mask full = full_mask(x.order.n);
  std::vector<Mask> out;
  for (Mask u : all_upsets(x.order)) {
    if (!x.is_clopen(u)) continue;
    Mask rest = full & ~u;
    if ((rest & ~down_set(x.order, x.x0 & ~u)) == 0) out.push_back(u);
  }
  return out;
}

FinLattice admissible_lattice(const PointedGenSpace& x) {
  auto lat = lattice_from_poset(inclusion_order(x.admissibles));
  require_internal(lat.has_value(), "admissible sets must form a lattice under inclusion");
  return *lat;
}

Report validate_pgps(const PointedGenSpace& x) {
  Report rep;
  int n = x.order.n;
  Mask full = full_mask(n);

  bool greatest = true;
  for (int i = 0; i < n; ++i) greatest = greatest && x.order.leq(i, x.m);
  std::vector<Mask> clopups;
  for (Mask o : x.opens)
    if (x.is_clopen(o) && is_upset(x.order, o)) clopups.push_back(o);
  bool separated = true;
  Json sep_fail = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x.order.leq(i, j)) continue;
      bool found = false;
      for (Mask u : clopups)
        if (has(u, i) && !has(u, j)) found = true;
      if (!found) {
        separated = false;
        sep_fail.push_back({{"x", i}, {"y", j}});
      }
    }
  rep.add("pgps.pointed-priestley", greatest && separated,
          {{"greatest", greatest}, {"unseparated", sep_fail}});

  Mask below_m = full & ~bit(x.m);
  bool inside = (x.x0 & ~below_m) == 0;
  bool cofinal = (below_m & ~down_set(x.order, x.x0)) == 0;
  bool dense = (below_m & ~x.topo_closure(x.x0)) == 0;
  rep.add("pgps.x0-cofinal-dense", inside && cofinal && dense,
          {{"inside", inside}, {"cofinal", cofinal}, {"dense", dense}});

  bool charac = true;
  Json char_fail = Json::array(), ix_empty = Json::array();
  for (int i = 0; i < n; ++i) {
    std::vector<Mask> ix;
    for (Mask u : x.admissibles)
      if (!has(u, i)) ix.push_back(u);
    if (ix.empty()) ix_empty.push_back(i);
    bool directed = true;
    for (Mask u : ix)
      for (Mask v : ix) {
        bool covered = false;
        for (Mask w : ix)
          if (((u | v) & ~w) == 0) covered = true;
        directed = directed && covered;
      }
    bool qualifies = !ix.empty() && directed;
    if (qualifies != has(x.x0, i)) {
      charac = false;
      char_fail.push_back({{"point", i}, {"nonempty", !ix.empty()}, {"directed", directed}});
    }
  }
  rep.add("pgps.x0-characterization", charac,
          {{"mismatches", char_fail}, {"ix_empty", ix_empty}});

  bool determined = true;
  Json det_fail = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool dominated = true;
      for (Mask u : x.admissibles)
        if (has(u, i) && !has(u, j)) dominated = false;
      if (dominated != x.order.leq(i, j)) {
        determined = false;
        det_fail.push_back({{"x", i}, {"y", j}});
      }
    }
  rep.add("pgps.order-determined", determined, {{"mismatches", det_fail}});
  return rep;
}

bool validate_pges(const PointedGenSpace& x, Report* out) {
  Report rep = validate_pgps(x);
  bool clop = true;
  Json fail = Json::array();
  for (Mask u : x.admissibles)
    for (Mask v : x.admissibles) {
      Mask d = down_set(x.order, u & ~v);
      if (!x.is_clopen(d)) {
        clop = false;
        fail.push_back({{"u", mask_json(u)}, {"v", mask_json(v)}});
      }
    }
  rep.add("pges.down-difference-clopen", clop, {{"failures", fail}});
  bool pass = rep.all_pass();
  if (out) *out = std::move(rep);
  return pass;
}

bool is_e_clopen(const PointedGenSpace& x, Mask e) {
  if (e == 0) return true;
  std::set<Mask> diffs;
  for (Mask u : x.admissibles)
    for (Mask v : x.admissibles) diffs.insert(u & ~v);
  Mask covered = 0;
  for (Mask d : diffs)
    if ((d & ~e) == 0) covered |= d;
  return covered == e;
}

std::vector<Mask> all_ms_filters(const MeetSemilatticeView& a) {
  int n = a.size();
  std::vector<Mask> out;
  for (Mask f = 1; f <= full_mask(n); ++f) {
    if (up_set(a.base.order, f) != f) continue;
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      for (int j = i; j < n && closed; ++j)
        if (has(f, i) && has(f, j) && !has(f, a.base.mt(i, j))) closed = false;
    if (closed) out.push_back(f);
  }
  return out;
}

std::vector<Mask> prime_filters_ms(const MeetSemilatticeView& a) {
  require_distributive(a, "prime_filters_ms");
  std::vector<Mask> fs = all_ms_filters(a);
  Mask full = full_mask(a.size());
  std::vector<Mask> out;
  for (Mask f : fs) {
    if (f == full) continue;
    bool prime = true;
    for (Mask g : fs)
      for (Mask h : fs)
        if ((g & h & ~f) == 0 && (g & ~f) != 0 && (h & ~f) != 0) prime = false;
    if (prime) out.push_back(f);
  }
  return out;
}

std::vector<Mask> optimal_filters(const MeetSemilatticeView& a) {
  require_distributive(a, "optimal_filters");
  Mask full = full_mask(a.size());
  std::vector<Mask> out;
  for (Mask f : all_ms_filters(a)) {
    if (f == full) continue;
    bool optimal = true;
    Mask comp = full & ~f;
    for (Mask t = comp; t; t = (t - 1) & comp) {
      Mask inter = full;
      for (int i : mask_to_list(t)) inter &= a.base.order.up[i];
      for (int c : mask_to_list(f))
        if ((inter & ~a.base.order.up[c]) == 0) optimal = false;
    }
    if (optimal) out.push_back(f);
  }
  return out;
}

PointedSpectrum pointed_spectrum(const MeetSemilatticeView& a) {
  require_distributive(a, "pointed_spectrum");
  PointedSpectrum s;
  s.base = a;
  s.carrier = optimal_filters(a);
  s.carrier.push_back(full_mask(a.size()));
  std::sort(s.carrier.begin(), s.carrier.end());
  for (Mask p : prime_filters_ms(a))
    require_internal(member(s.carrier, p), "prime filters must be optimal");
  FinPoset order = inclusion_order(s.carrier);
  int m = index_of(s.carrier, full_mask(a.size()));
  Mask x0 = 0;
  for (Mask p : prime_filters_ms(a)) x0 |= bit(index_of(s.carrier, p));
  std::vector<Mask> subbasis;
  for (int e = 0; e < a.size(); ++e) {
    Mask phi = 0;
    for (std::size_t i = 0; i < s.carrier.size(); ++i)
      if (has(s.carrier[i], e)) phi |= bit(static_cast<int>(i));
    subbasis.push_back(phi);
    subbasis.push_back(full_mask(static_cast<int>(s.carrier.size())) & ~phi);
  }
  auto space = PointedGenSpace::make(order, x0, m, subbasis);
  require_internal(space.has_value(), "spectrum must form a pointed space");
  s.space = *space;
  return s;
}

Mask spectrum_phi(const PointedSpectrum& s, int a) {
  Mask phi = 0;
  for (std::size_t i = 0; i < s.carrier.size(); ++i)
    if (has(s.carrier[i], a)) phi |= bit(static_cast<int>(i));
  return phi;
}

Mask box_r(const GenRelation& r, Mask u) {
  Mask b = 0;
  for (int x = 0; x < r.dom.size(); ++x)
    if ((r.rows[x] & ~u) == 0) b |= bit(x);
  return b;
}

bool is_gp_morphism(const GenRelation& r, Json* witness) {
  for (int x = 0; x < r.dom.size(); ++x)
    for (int y = 0; y < r.cod.size(); ++y) {
      if (has(r.rows[x], y)) continue;
      bool separated = false;
      for (Mask u : r.cod.admissibles)
        if ((r.rows[x] & ~u) == 0 && !has(u, y)) separated = true;
      if (!separated) {
        if (witness) *witness = {{"condition", "separation"}, {"x", x}, {"y", y}};
        return false;
      }
    }
  for (Mask u : r.cod.admissibles)
    if (!member(r.dom.admissibles, box_r(r, u))) {
      if (witness) *witness = {{"condition", "box"}, {"u", mask_json(u)}};
      return false;
    }
  return true;
}

bool is_ge_morphism(const GenRelation& r, Json* witness) {
  if (!is_gp_morphism(r, witness)) return false;
  for (int x = 0; x < r.dom.size(); ++x)
    for (int y = 0; y < r.cod.size(); ++y) {
      if (!has(r.rows[x], y) || !has(r.cod.x0, y)) continue;
      bool lifted = false;
      for (int z = 0; z < r.dom.size(); ++z)
        if (has(r.dom.x0, z) && r.dom.order.leq(x, z) && r.rows[z] == r.cod.order.up[y])
          lifted = true;
      if (!lifted) {
        if (witness) *witness = {{"condition", "esakia"}, {"x", x}, {"y", y}};
        return false;
      }
    }
  return true;
}

GenRelation identity_relation(const PointedGenSpace& x) {
  GenRelation r{x, x, {}};
  for (int i = 0; i < x.size(); ++i) r.rows.push_back(x.order.up[i]);
  return r;
}

GenRelation compose_star(const GenRelation& s, const GenRelation& r) {
  require_internal(r.cod.order == s.dom.order && r.cod.x0 == s.dom.x0 && r.cod.m == s.dom.m,
                   "composition requires a shared middle space");
  std::vector<Mask> allowed(r.dom.size(), full_mask(s.cod.size()));
  for (Mask u : s.cod.admissibles) {
    Mask bx = box_r(r, box_r(s, u));
    for (int x = 0; x < r.dom.size(); ++x)
      if (has(bx, x)) allowed[x] &= u;
  }
  return GenRelation{r.dom, s.cod, std::move(allowed)};
}

GenRelation r_of_hom(const AlgHom& h, const PointedSpectrum& sb, const PointedSpectrum& sa) {
  require_internal(sb.base.size() == h.cod.size() && sa.base.size() == h.dom.size(),
                   "spectra must match the hom endpoints");
  GenRelation r{sb.space, sa.space, {}};
  for (Mask x : sb.carrier) {
    Mask pre = 0;
    for (int e = 0; e < h.dom.size(); ++e)
      if (has(x, h.map[e])) pre |= bit(e);
    Mask row = 0;
    for (std::size_t y = 0; y < sa.carrier.size(); ++y)
      if ((pre & ~sa.carrier[y]) == 0) row |= bit(static_cast<int>(y));
    r.rows.push_back(row);
  }
  return r;
}

bool is_dms_p(const AlgHom& h, Json* witness) {
  HomWitness hw;
  if (!is_ms_hom(h, &hw)) {
    if (witness) *witness = {{"op", hw.op}, {"a", hw.a}, {"b", hw.b}};
    return false;
  }
  for (int a = 0; a < h.dom.size(); ++a)
    for (int b = 0; b < h.dom.size(); ++b)
      if (h.map[h.dom.jn(a, b)] != h.cod.jn(h.map[a], h.map[b])) {
        if (witness) *witness = {{"op", "join"}, {"a", a}, {"b", b}};
        return false;
      }
  std::vector<Mask> pr_dom = prime_filters_ms(MeetSemilatticeView{h.dom});
  for (Mask p : prime_filters_ms(MeetSemilatticeView{h.cod})) {
    Mask pre = 0;
    for (int e = 0; e < h.dom.size(); ++e)
      if (has(p, h.map[e])) pre |= bit(e);
    if (!member(pr_dom, pre)) {
      if (witness) *witness = {{"op", "prime-preimage"}, {"filter", mask_json(p)}};
      return false;
    }
  }
  return true;
}

bool is_pgps_p_map(const SpaceMap& f, Json* witness) {
  require_internal(static_cast<int>(f.map.size()) == f.dom.size(), "map must cover the domain");
  PosetMap pm{f.dom.order, f.cod.order, f.map};
  if (!is_order_preserving(pm)) {
    if (witness) *witness = {{"condition", "order"}};
    return false;
  }
  for (Mask u : f.cod.admissibles) {
    Mask pre = 0;
    for (int x = 0; x < f.dom.size(); ++x)
      if (has(u, f.map[x])) pre |= bit(x);
    if (!member(f.dom.admissibles, pre)) {
      if (witness) *witness = {{"condition", "admissible-preimage"}, {"u", mask_json(u)}};
      return false;
    }
  }
  for (int x : mask_to_list(f.dom.x0))
    if (!has(f.cod.x0, f.map[x])) {
      if (witness) *witness = {{"condition", "x0-image"}, {"x", x}};
      return false;
    }
  return true;
}

bool is_pges_p_map(const SpaceMap& f, Json* witness) {
  if (!is_pgps_p_map(f, witness)) return false;
  for (int x = 0; x < f.dom.size(); ++x)
    for (int y : mask_to_list(f.cod.x0)) {
      if (!f.cod.order.leq(f.map[x], y)) continue;
      bool lifted = false;
      for (int z : mask_to_list(f.dom.x0))
        if (f.dom.order.leq(x, z) && f.map[z] == y) lifted = true;
      if (!lifted) {
        if (witness) *witness = {{"condition", "lift"}, {"x", x}, {"y", y}};
        return false;
      }
    }
  return true;
}

bool is_pes_p_map(const SpaceMap& f, Json* witness) {
  PosetMap pm{f.dom.order, f.cod.order, f.map};
  if (!is_order_preserving(pm)) {
    if (witness) *witness = {{"condition", "order"}};
    return false;
  }
  PMorphWitness pw;
  if (!is_p_morphism(pm, &pw)) {
    if (witness) *witness = {{"condition", "p-morphism"}, {"y", pw.y}, {"at", pw.at}};
    return false;
  }
  for (int x = 0; x < f.dom.size(); ++x)
    if ((f.map[x] == f.cod.m) != (x == f.dom.m)) {
      if (witness) *witness = {{"condition", "maximum-fiber"}, {"x", x}};
      return false;
    }
  return true;
}

FilterFrame filter_frame(const MeetSemilatticeView& a) {
  FilterFrame ff;
  ff.base = a;
  ff.filters = all_ms_filters(a);
  auto lat = lattice_from_poset(inclusion_order(ff.filters));
  require_internal(lat.has_value(), "filters must form a lattice under inclusion");
  ff.frame = *lat;
  return ff;
}

AlgHom f_of_hom(const AlgHom& h, const FilterFrame& fa, const FilterFrame& fb) {
  require_internal(fa.base.size() == h.dom.size() && fb.base.size() == h.cod.size(),
                   "filter frames must match the hom endpoints");
  std::vector<int> map;
  for (Mask f : fa.filters) {
    Mask img = 0;
    for (int e : mask_to_list(f)) img |= bit(h.map[e]);
    int idx = index_of(fb.filters, up_set(h.cod.order, img));
    require_internal(idx >= 0, "image up-closure must be a filter");
    map.push_back(idx);
  }
  return AlgHom{fa.frame, fb.frame, std::move(map)};
}

FinLattice dual_lattice(const FinLattice& l) {
  FinLattice d;
  d.order = l.order.dual();
  d.meet = l.join;
  d.join = l.meet;
  d.bottom = l.top;
  d.top = l.bottom;
  return d;
}

std::optional<int> dual_implication(const FinLattice& l, int x, int y) {
  std::vector<int> cand;
  for (int c = 0; c < l.size(); ++c)
    if (l.leq(y, l.jn(x, c))) cand.push_back(c);
  for (int c : cand) {
    bool least = true;
    for (int d : cand) least = least && l.leq(c, d);
    if (least) return c;
  }
  return std::nullopt;
}

std::vector<int> prime_elements(const FrameView& l) {
  std::vector<int> out;
  for (int p = 0; p < l.base.size(); ++p) {
    if (p == l.base.top) continue;
    bool prime = true;
    for (int a = 0; a < l.base.size() && prime; ++a)
      for (int b = 0; b < l.base.size(); ++b)
        if (l.base.leq(l.base.mt(a, b), p) && !l.base.leq(a, p) && !l.base.leq(b, p)) {
          prime = false;
          break;
        }
    if (prime) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<std::vector<bool>> way_below_table(const FrameView& l) {
  int n = l.base.size();
  std::vector<std::vector<bool>> wb(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) wb[a][b] = way_below(l, a, b);
  return wb;
}

int subset_meet(const FinLattice& l, Mask s) {
  int m = l.top;
  for (int i : mask_to_list(s)) m = l.mt(m, i);
  return m;
}

}  // namespace

std::vector<int> pseudoprime_elements(const FrameView& l) {
  auto wb = way_below_table(l);
  int n = l.base.size();
  std::vector<int> out;
  for (int p = 0; p < n; ++p) {
    if (p == l.base.top) continue;
    bool pseudo = true;
    for (Mask s = 1; s <= full_mask(n) && pseudo; ++s) {
      if (!wb[subset_meet(l.base, s)][p]) continue;
      bool some = false;
      for (int a : mask_to_list(s)) some = some || l.base.leq(a, p);
      pseudo = some;
    }
    if (pseudo) out.push_back(p);
  }
  return out;
}

std::vector<Mask> pseudopoints(const FrameView& l) {
  auto wb = way_below_table(l);
  int n = l.base.size();
  std::vector<Mask> out;
  for (Mask u : all_upsets(l.base.order)) {
    if (u == 0) continue;
    bool ok = true;
    for (Mask s = 0; s <= full_mask(n) && ok; ++s)
      if (has(u, l.vjoin[s]) && (s & u) == 0) ok = false;
    for (Mask t = u; t && ok; t = (t - 1) & u) {
      int m = subset_meet(l.base, t);
      for (int b = 0; b < n; ++b)
        if (wb[m][b] && !has(u, b)) ok = false;
    }
    if (ok) out.push_back(u);
  }
  return out;
}

YSpace y_space(const FrameView& l) {
  YSpace ys;
  ys.carrier = pseudoprime_elements(l);
  ys.carrier.push_back(l.base.top);
  std::sort(ys.carrier.begin(), ys.carrier.end());
  int n = static_cast<int>(ys.carrier.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (l.base.leq(ys.carrier[i], ys.carrier[j])) up[i] |= bit(j);
  FinPoset order = FinPoset::from_up(n, up);
  int m = static_cast<int>(std::lower_bound(ys.carrier.begin(), ys.carrier.end(), l.base.top) -
                           ys.carrier.begin());
  Mask x0 = 0;
  for (int p : prime_elements(l)) {
    auto it = std::lower_bound(ys.carrier.begin(), ys.carrier.end(), p);
    require_internal(it != ys.carrier.end() && *it == p, "prime elements must be pseudoprime");
    x0 |= bit(static_cast<int>(it - ys.carrier.begin()));
  }
  std::vector<Mask> subbasis;
  for (int k : mask_to_list(l.compacts)) {
    Mask upk = 0;
    for (int i = 0; i < n; ++i)
      if (l.base.leq(k, ys.carrier[i])) upk |= bit(i);
    subbasis.push_back(upk);
    subbasis.push_back(full_mask(n) & ~upk);
  }
  auto space = PointedGenSpace::make(order, x0, m, subbasis);
  require_internal(space.has_value(), "pseudoprime carrier must form a pointed space");
  ys.space = *space;
  return ys;
}

std::vector<Mask> admissible_closed_upsets(const PointedGenSpace& x) {
  Mask full = full_mask(x.order.n);
  std::vector<Mask> out;
  for (Mask u : all_upsets(x.order)) {
    if (!x.is_open(full & ~u)) continue;
    Mask rest = full & ~u;
    if ((rest & ~down_set(x.order, x.x0 & ~u)) == 0) out.push_back(u);
  }
  return out;
}

FinLattice va_frame(const PointedGenSpace& x) {
  std::vector<Mask> closed = admissible_closed_upsets(x);
  int n = static_cast<int>(closed.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((closed[j] & ~closed[i]) == 0) up[i] |= bit(j);  // reverse inclusion
  auto lat = lattice_from_poset(FinPoset::from_up(n, up));
  require_internal(lat.has_value(), "admissible closed upsets must form a frame");
  return *lat;
}

bool is_brouwerian_frame(const FrameView& l) {
  return is_brouwerian_semilattice(MeetSemilatticeView{dual_lattice(l.base)});
}

bool is_arithmetic(const FrameView& l) {
  for (int a : mask_to_list(l.compacts))
    for (int b : mask_to_list(l.compacts))
      if (!has(l.compacts, l.base.mt(a, b))) return false;
  return true;
}

bool is_brwfrm_morphism(const AlgHom& alpha, Json* witness) {
  HomWitness hw;
  if (!is_dl_hom(alpha, &hw)) {
    if (witness) *witness = {{"op", hw.op}, {"a", hw.a}, {"b", hw.b}};
    return false;
  }
  for (int a = 0; a < alpha.dom.size(); ++a)
    for (int b = 0; b < alpha.dom.size(); ++b) {
      auto li = dual_implication(alpha.dom, a, b);
      auto mi = dual_implication(alpha.cod, alpha.map[a], alpha.map[b]);
      if (!li || !mi || alpha.map[*li] != *mi) {
        if (witness)
          *witness = {{"op", "dual-implication"}, {"a", a}, {"b", b},
                      {"defined", li.has_value() && mi.has_value()}};
        return false;
      }
    }
  return true;
}

std::vector<int> right_adjoint(const AlgHom& alpha) {
  std::vector<int> r;
  for (int b = 0; b < alpha.cod.size(); ++b) {
    int acc = alpha.dom.bottom;
    for (int a = 0; a < alpha.dom.size(); ++a)
      if (alpha.cod.leq(alpha.map[a], b)) acc = alpha.dom.jn(acc, a);
    r.push_back(acc);
  }
  return r;
}

Report check_triangle_brw(const MeetSemilatticeView& a) {
  Report rep;
  int n = a.size();
  PointedSpectrum sp = pointed_spectrum(a);
  Report pges_rep;
  bool pges = validate_pges(sp.space, &pges_rep);
  rep.add("brw.spectrum-valid", pges,
          {{"points", sp.carrier.size()}, {"lines", pges_rep.to_json()}});

  std::vector<Mask> phis;
  for (int e = 0; e < n; ++e) phis.push_back(spectrum_phi(sp, e));
  std::vector<Mask> sorted = phis;
  std::sort(sorted.begin(), sorted.end());
  bool unit = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
              sorted == sp.space.admissibles;
  for (int x = 0; x < n && unit; ++x)
    for (int y = 0; y < n; ++y) {
      if (a.base.leq(x, y) != ((phis[x] & ~phis[y]) == 0)) unit = false;
      if (phis[a.base.mt(x, y)] != (phis[x] & phis[y])) unit = false;
    }
  rep.add("brw.unit-iso", unit, {{"admissibles", sp.space.admissibles.size()}});

  FilterFrame ff = filter_frame(a);
  auto fv = frame_view(ff.frame);
  require_internal(fv.has_value(), "filter frame must be a frame");
  bool compact_dual = fv->compacts == full_mask(ff.frame.size());
  std::vector<int> principal(n);
  std::vector<bool> seen(ff.filters.size(), false);
  for (int x = 0; x < n && compact_dual; ++x) {
    int idx = index_of(ff.filters, a.base.order.up[x]);
    if (idx < 0 || seen[idx]) compact_dual = false;
    else seen[idx] = true, principal[x] = idx;
  }
  compact_dual = compact_dual &&
                 std::find(seen.begin(), seen.end(), false) == seen.end();
  for (int x = 0; x < n && compact_dual; ++x)
    for (int y = 0; y < n; ++y)
      if (a.base.leq(x, y) != ff.frame.leq(principal[y], principal[x])) compact_dual = false;
  rep.add("brw.filter-frame-compact-dual", compact_dual, {{"filters", ff.filters.size()}});

  YSpace ys = y_space(*fv);
  std::vector<Mask> yfilters;
  for (int idx : ys.carrier) yfilters.push_back(ff.filters[idx]);
  bool spectra_match = yfilters == sp.carrier && ys.space.order == sp.space.order &&
                       ys.space.x0 == sp.space.x0 && ys.space.m == sp.space.m &&
                       ys.space.admissibles == sp.space.admissibles;
  rep.add("brw.spectrum-equals-y", spectra_match, {{"carrier", yfilters.size()}});

  FinLattice va = va_frame(sp.space);
  bool va_dual = find_lattice_isomorphism(dual_lattice(va), admissible_lattice(sp.space))
                     .has_value();
  rep.add("brw.va-compact-dual", va_dual, {{"closed_upsets", va.size()}});

  bool arith = is_arithmetic(*fv);
  std::vector<int> pr = prime_elements(*fv);
  bool contained = true;
  for (int p : pseudoprime_elements(*fv))
    contained = contained && std::find(pr.begin(), pr.end(), p) != pr.end();
  rep.add("brw.arithmetic-pseudoprime-prime", !arith || contained, {{"arithmetic", arith}});
  return rep;
}

}  // namespace duality
