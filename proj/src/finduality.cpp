#include "duality/finduality.hpp"

#include <algorithm>

namespace duality {

namespace {

bool is_filter_mask(const FinLattice& a, Mask f) {
  if (f == 0) return false;
  for (int x : mask_to_list(f)) {
    if ((a.order.up[x] & ~f) != 0) return false;  // up-closed
    for (int y : mask_to_list(f))
      if (!has(f, a.mt(x, y))) return false;  // ∧-closed
  }
  return true;
}

bool is_prime_filter_mask(const FinLattice& a, Mask f) {
  if (!is_filter_mask(a, f) || f == full_mask(a.size())) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (has(f, a.jn(x, y)) && !has(f, x) && !has(f, y)) return false;
  return true;
}

int index_of(const std::vector<Mask>& sets, Mask m) {
  auto it = std::find(sets.begin(), sets.end(), m);
  return it == sets.end() ? -1 : static_cast<int>(it - sets.begin());
}

FinPoset inclusion_order(const std::vector<Mask>& sets) {
  int n = static_cast<int>(sets.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((sets[i] & ~sets[j]) == 0) up[i] |= bit(j);
  return FinPoset::from_up(n, up);
}

}  // namespace

PrimeFilterSpace prime_filters(const FinLattice& a) {
  PrimeFilterSpace x;
  x.base = a;
  // every filter of a finite lattice is principal, so ↑e exhausts candidates
  for (int e = 0; e < a.size(); ++e)
    if (is_prime_filter_mask(a, a.order.up[e])) x.filters.push_back(a.order.up[e]);
  std::sort(x.filters.begin(), x.filters.end());
  x.order = inclusion_order(x.filters);
  return x;
}

Mask stone_map(const PrimeFilterSpace& x, int a) {
  Mask out = 0;
  for (size_t i = 0; i < x.filters.size(); ++i)
    if (has(x.filters[i], a)) out |= bit(static_cast<int>(i));
  return out;
}

SetLattice clopup(const FinPoset& x) {
  SetLattice s;
  s.sets = all_upsets(x);
  s.lat = family_lattice(s.sets);
  return s;
}

Mask clopup_implication(const FinPoset& x, Mask u, Mask v) {
  return full_mask(x.n) & ~down_set(x, u & ~v);
}

std::optional<PosetMap> dual_of_hom(const AlgHom& h, const PrimeFilterSpace& xa,
                                    const PrimeFilterSpace& xb) {
  PosetMap f{xb.order, xa.order, {}};
  for (Mask fb : xb.filters) {
    Mask pre = 0;
    for (int a = 0; a < h.dom.size(); ++a)
      if (has(fb, h.map[a])) pre |= bit(a);
    int idx = index_of(xa.filters, pre);
    if (idx < 0 || !is_prime_filter_mask(h.dom, pre)) return std::nullopt;
    f.map.push_back(idx);
  }
  if (!is_order_preserving(f)) return std::nullopt;
  return f;
}

AlgHom preimage_hom(const PosetMap& f) {
  SetLattice cy = clopup(f.cod), cx = clopup(f.dom);
  std::vector<int> map;
  for (Mask u : cy.sets) {
    Mask pre = 0;
    for (int x = 0; x < f.dom.n; ++x)
      if (has(u, f.map[x])) pre |= bit(x);
    int idx = index_of(cx.sets, pre);
    require_internal(idx >= 0, "preimage of an upset under a monotone map must be an upset");
    map.push_back(idx);
  }
  return AlgHom{cy.lat, cx.lat, map};
}

IdealFrame ideal_frame(const FinLattice& a) {
  IdealFrame j;
  j.base = a;
  // ideals of a finite lattice are exactly the principal downsets
  for (int e = 0; e < a.size(); ++e) j.ideals.push_back(a.order.down[e]);
  std::sort(j.ideals.begin(), j.ideals.end());
  j.frame = family_lattice(j.ideals);
  j.iso.resize(a.size());
  for (int e = 0; e < a.size(); ++e) {
    j.iso[e] = index_of(j.ideals, a.order.down[e]);
    require_internal(j.iso[e] >= 0, "principal ideal missing from ideal list");
  }
  return j;
}

Mask ideal_implication(const FinLattice& a, Mask i, Mask j) {
  Mask out = 0;
  for (int x = 0; x < a.size(); ++x) {
    bool in = true;
    for (int b : mask_to_list(i))
      if (!has(j, a.mt(x, b))) {
        in = false;
        break;
      }
    if (in) out |= bit(x);
  }
  return out;
}

std::vector<int> h_star(const AlgHom& h, const IdealFrame& ja, const IdealFrame& jb) {
  std::vector<int> map;
  for (Mask i : ja.ideals) {
    Mask img = 0;
    for (int x : mask_to_list(i)) img |= bit(h.map[x]);
    int idx = index_of(jb.ideals, down_set(h.cod.order, img));
    require_internal(idx >= 0, "down-closure of a hom image must be an ideal");
    map.push_back(idx);
  }
  return map;
}

std::optional<FrameView> frame_view(const FinLattice& l) {
  require_internal(l.size() <= 20, "frame view subset table capped at 20 elements");
  if (!is_distributive(l)) return std::nullopt;
  FrameView f;
  f.base = l;
  f.vjoin.assign(size_t{1} << l.size(), l.bottom);
  for (Mask s = 1; s < (Mask{1} << l.size()); ++s)
    f.vjoin[s] = l.jn(f.vjoin[s & (s - 1)], lowest_bit(s));
  // compact = way below itself; recorded definitionally, not assumed
  f.compacts = 0;
  for (int a = 0; a < l.size(); ++a)
    if (way_below(f, a, a)) f.compacts |= bit(a);
  return f;
}

bool way_below(const FrameView& l, int a, int b) {
  // finite S: a ≤ ⋁T for finite T ⊆ S iff a ≤ ⋁S, so the defining
  // quantification collapses to passing every subset once
  for (Mask s = 0; s < (Mask{1} << l.base.size()); ++s)
    if (l.base.leq(b, l.vjoin[s]) && !l.base.leq(a, l.vjoin[s])) return false;
  return true;
}

std::vector<Mask> frame_points(const FrameView& l) {
  std::vector<Mask> pts;
  for (int e = 0; e < l.base.size(); ++e) {
    Mask f = l.base.order.up[e];
    if (!is_filter_mask(l.base, f)) continue;
    bool cp = true;
    for (Mask s = 0; cp && s < (Mask{1} << l.base.size()); ++s)
      if (has(f, l.vjoin[s]) && (s & f) == 0) cp = false;
    if (cp) pts.push_back(f);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

Report pt_pf_iso(const FrameView& l) {
  Report r;
  r.add("pt_pf.compact_all", l.compacts == full_mask(l.base.size()),
        Json{{"compacts", l.compacts}});
  std::vector<Mask> pts = frame_points(l);
  PrimeFilterSpace pf = prime_filters(l.base);
  std::vector<Mask> cut;
  for (Mask p : pts) cut.push_back(p & l.compacts);
  std::sort(cut.begin(), cut.end());
  r.add("pt_pf.bijection", cut == pf.filters,
        Json{{"points", pts.size()}, {"prime_filters", pf.filters.size()}});
  bool order_ok = true;
  for (Mask p : pts)
    for (Mask q : pts)
      if (((p & ~q) == 0) != (((p & l.compacts) & ~(q & l.compacts)) == 0)) order_ok = false;
  r.add("pt_pf.order", order_ok, {});
  return r;
}

bool is_heyting_frame(const FrameView& l) {
  // route 1: implication computed in L stays within K(L)
  bool direct = true;
  for (int a : mask_to_list(l.compacts))
    for (int b : mask_to_list(l.compacts)) {
      auto i = heyting_implication(l.base, a, b);
      if (!i || !has(l.compacts, *i)) direct = false;
    }
  // route 2: K(L) as a lattice in its own right is Heyting and its residual
  // agrees with L's
  std::vector<int> elems = mask_to_list(l.compacts);
  int k = static_cast<int>(elems.size());
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && l.base.leq(elems[i], elems[j])) rel.emplace_back(i, j);
  auto sub = lattice_from_poset(*FinPoset::from_pairs(k, rel));
  bool inner = sub.has_value() && is_heyting_algebra(*sub);
  if (inner)
    for (int i = 0; i < k && inner; ++i)
      for (int j = 0; j < k && inner; ++j) {
        auto li = heyting_implication(l.base, elems[i], elems[j]);
        auto ki = heyting_implication(*sub, i, j);
        if (!li || !ki || *li != elems[*ki]) inner = false;
      }
  require_internal(direct == inner, "Heyting-frame routes disagree");
  return direct;
}

bool is_subfit(const FinLattice& l) {
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b) {
      if (l.leq(a, b)) continue;
      bool found = false;
      for (int c = 0; c < l.size() && !found; ++c)
        if (l.jn(a, c) == l.top && l.jn(b, c) != l.top) found = true;
      if (!found) return false;
    }
  return true;
}

Report check_triangle_dl(const FinLattice& a) {
  Report r;
  if (!is_distributive(a)) {
    r.add("triangle.distributive", false, {});
    return r;
  }
  r.add("triangle.distributive", true, {});

  // (i) a ↦ ↓a is an order-isomorphism A ≅ J(A) landing on all compacts
  IdealFrame ja = ideal_frame(a);
  auto fv = frame_view(ja.frame);
  bool iso_ok = fv.has_value() && static_cast<int>(ja.ideals.size()) == a.size() &&
                fv->compacts == full_mask(a.size());
  if (iso_ok)
    for (int x = 0; x < a.size() && iso_ok; ++x)
      for (int y = 0; y < a.size() && iso_ok; ++y)
        if (a.leq(x, y) != ja.frame.leq(ja.iso[x], ja.iso[y])) iso_ok = false;
  r.add("triangle.ideal_iso", iso_ok, Json{{"ideals", ja.ideals.size()}});

  // (ii) points of J(A) correspond to prime filters of A
  PrimeFilterSpace pf = prime_filters(a);
  bool pts_ok = fv.has_value();
  if (pts_ok) {
    std::vector<Mask> pts = frame_points(*fv);
    std::vector<Mask> transported;
    for (Mask p : pts) {
      Mask flt = 0;
      for (int x = 0; x < a.size(); ++x)
        if (has(p, ja.iso[x])) flt |= bit(x);
      transported.push_back(flt);
    }
    std::sort(transported.begin(), transported.end());
    pts_ok = transported == pf.filters;
    for (size_t i = 0; i < transported.size() && pts_ok; ++i)
      pts_ok = is_prime_filter_mask(a, transported[i]);
  }
  r.add("triangle.points_iso", pts_ok, Json{{"prime_filters", pf.filters.size()}});

  // (iii) the Stone map is an isomorphism A ≅ ClopUp(pf(A))
  SetLattice cu = clopup(pf.order);
  bool stone_ok = cu.sets.size() == static_cast<size_t>(a.size());
  Json stone_detail;
  for (int x = 0; x < a.size() && stone_ok; ++x) {
    Mask px = stone_map(pf, x);
    if (index_of(cu.sets, px) < 0) {
      stone_ok = false;
      stone_detail = Json{{"element", x}};
    }
    for (int y = 0; y < a.size() && stone_ok; ++y) {
      Mask py = stone_map(pf, y);
      if (stone_map(pf, a.mt(x, y)) != (px & py) || stone_map(pf, a.jn(x, y)) != (px | py) ||
          (a.leq(x, y) != ((px & ~py) == 0))) {
        stone_ok = false;
        stone_detail = Json{{"pair", {x, y}}};
      }
    }
  }
  if (stone_ok)
    stone_ok = stone_map(pf, a.bottom) == 0 &&
               stone_map(pf, a.top) == full_mask(static_cast<int>(pf.filters.size()));
  r.add("triangle.stone_iso", stone_ok, stone_detail);
  return r;
}

Report check_naturality_dl(const AlgHom& h) {
  Report r;
  PrimeFilterSpace xa = prime_filters(h.dom), xb = prime_filters(h.cod);
  auto f = dual_of_hom(h, xa, xb);
  r.add("natural.dual_map", f.has_value(), {});
  if (!f) return r;

  // Stone square: f⁻¹(φ_A(a)) = φ_B(h(a))
  bool stone_sq = true;
  Json sq_detail;
  for (int a = 0; a < h.dom.size(); ++a) {
    Mask pa = stone_map(xa, a), pre = 0;
    for (int i = 0; i < static_cast<int>(xb.filters.size()); ++i)
      if (has(pa, f->map[i])) pre |= bit(i);
    if (pre != stone_map(xb, h.map[a])) {
      stone_sq = false;
      sq_detail = Json{{"element", a}};
    }
  }
  r.add("natural.stone_square", stone_sq, sq_detail);

  IdealFrame ja = ideal_frame(h.dom), jb = ideal_frame(h.cod);
  std::vector<int> hs = h_star(h, ja, jb);

  // h_star is a frame homomorphism of the finite ideal frames
  r.add("natural.ideal_frame_hom", is_dl_hom(AlgHom{ja.frame, jb.frame, hs}), {});

  // ideal square: h_star(↓a) = ↓h(a)
  bool ideal_sq = true;
  for (int a = 0; a < h.dom.size(); ++a)
    if (hs[ja.iso[a]] != jb.iso[h.map[a]]) ideal_sq = false;
  r.add("natural.ideal_square", ideal_sq, {});

  // points square: pt(h_star) transported along both point/prime-filter
  // bijections equals the dual map
  auto fva = frame_view(ja.frame);
  auto fvb = frame_view(jb.frame);
  bool pts_sq = fva.has_value() && fvb.has_value();
  if (pts_sq)
    for (Mask p : frame_points(*fvb)) {
      Mask pre_p = 0;  // h_star⁻¹(p), a point of J(A)
      for (size_t i = 0; i < ja.ideals.size(); ++i)
        if (has(p, hs[i])) pre_p |= bit(static_cast<int>(i));
      Mask fa = 0, fb = 0;
      for (int x = 0; x < h.dom.size(); ++x)
        if (has(pre_p, ja.iso[x])) fa |= bit(x);
      for (int y = 0; y < h.cod.size(); ++y)
        if (has(p, jb.iso[y])) fb |= bit(y);
      int ia = index_of(xa.filters, fa), ib = index_of(xb.filters, fb);
      if (ia < 0 || ib < 0 || f->map[ib] != ia) pts_sq = false;
    }
  r.add("natural.points_square", pts_sq, {});
  return r;
}

}  // namespace duality
