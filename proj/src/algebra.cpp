#include "duality/algebra.hpp"

#include <algorithm>

namespace duality {

namespace {

// greatest element of the mask, or -1
int greatest_of(const FinPoset& p, Mask s) {
  for (int g : mask_to_list(s))
    if ((s & ~p.down[g]) == 0) return g;
  return -1;
}

int least_of(const FinPoset& p, Mask s) {
  for (int g : mask_to_list(s))
    if ((s & ~p.up[g]) == 0) return g;
  return -1;
}

}  // namespace

std::optional<FinLattice> lattice_from_poset(const FinPoset& p, LatticeWitness* w) {
  if (p.n == 0) {
    if (w) *w = {-1, -1};
    return std::nullopt;
  }
  FinLattice l;
  l.order = p;
  l.meet.assign(p.n, std::vector<int>(p.n, -1));
  l.join.assign(p.n, std::vector<int>(p.n, -1));
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b) {
      int m = greatest_of(p, p.down[a] & p.down[b]);
      int j = least_of(p, p.up[a] & p.up[b]);
      if (m < 0 || j < 0) {
        if (w) *w = {a, b};
        return std::nullopt;
      }
      l.meet[a][b] = m;
      l.join[a][b] = j;
    }
  int bot = least_of(p, full_mask(p.n));
  int top = greatest_of(p, full_mask(p.n));
  if (bot < 0 || top < 0) {
    if (w) *w = {-1, -1};
    return std::nullopt;
  }
  l.bottom = bot;
  l.top = top;
  return l;
}

bool is_distributive(const FinLattice& a) {
  int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (a.mt(x, a.jn(y, z)) != a.jn(a.mt(x, y), a.mt(x, z))) return false;
  return true;
}

std::optional<int> heyting_implication(const FinLattice& a, int x, int y) {
  Mask cand = 0;
  for (int c = 0; c < a.size(); ++c)
    if (a.leq(a.mt(x, c), y)) cand |= bit(c);
  int g = -1;
  for (int c : mask_to_list(cand))
    if ((cand & ~a.order.down[c]) == 0) g = c;
  if (g < 0) return std::nullopt;
  return g;
}

bool is_heyting_algebra(const FinLattice& a) {
  if (!is_distributive(a)) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (!heyting_implication(a, x, y)) return false;
  return true;
}

bool is_distributive_ms(const MeetSemilatticeView& v) {
  const FinLattice& l = v.base;
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!l.leq(l.mt(a, b), c)) continue;
        bool found = false;
        for (int a2 : mask_to_list(l.order.up[a])) {
          for (int b2 : mask_to_list(l.order.up[b]))
            if (l.mt(a2, b2) == c) {
              found = true;
              break;
            }
          if (found) break;
        }
        if (!found) return false;
      }
  return true;
}

bool is_brouwerian_semilattice(const MeetSemilatticeView& v) {
  for (int a = 0; a < v.size(); ++a)
    for (int b = 0; b < v.size(); ++b)
      if (!heyting_implication(v.base, a, b)) return false;
  return true;
}

namespace {

bool preserves_meet(const AlgHom& h, HomWitness* w) {
  for (int a = 0; a < h.dom.size(); ++a)
    for (int b = 0; b < h.dom.size(); ++b)
      if (h.map[h.dom.mt(a, b)] != h.cod.mt(h.map[a], h.map[b])) {
        if (w) *w = {"meet", a, b};
        return false;
      }
  return true;
}

bool preserves_join(const AlgHom& h, HomWitness* w) {
  for (int a = 0; a < h.dom.size(); ++a)
    for (int b = 0; b < h.dom.size(); ++b)
      if (h.map[h.dom.jn(a, b)] != h.cod.jn(h.map[a], h.map[b])) {
        if (w) *w = {"join", a, b};
        return false;
      }
  return true;
}

bool preserves_top(const AlgHom& h, HomWitness* w) {
  if (h.map[h.dom.top] != h.cod.top) {
    if (w) *w = {"top", h.dom.top, -1};
    return false;
  }
  return true;
}

bool preserves_bottom(const AlgHom& h, HomWitness* w) {
  if (h.map[h.dom.bottom] != h.cod.bottom) {
    if (w) *w = {"bottom", h.dom.bottom, -1};
    return false;
  }
  return true;
}

// h(a→b) = h(a)→h(b); a missing residual on either side is a failure.
bool preserves_implication(const AlgHom& h, HomWitness* w) {
  for (int a = 0; a < h.dom.size(); ++a)
    for (int b = 0; b < h.dom.size(); ++b) {
      auto d = heyting_implication(h.dom, a, b);
      auto c = heyting_implication(h.cod, h.map[a], h.map[b]);
      if (!d || !c || h.map[*d] != *c) {
        if (w) *w = {"imp", a, b};
        return false;
      }
    }
  return true;
}

}  // namespace

bool is_ms_hom(const AlgHom& h, HomWitness* w) {
  return preserves_meet(h, w) && preserves_top(h, w);
}

bool is_dl_hom(const AlgHom& h, HomWitness* w) {
  return preserves_meet(h, w) && preserves_join(h, w) && preserves_bottom(h, w) &&
         preserves_top(h, w);
}

bool is_ha_hom(const AlgHom& h, HomWitness* w) {
  return is_dl_hom(h, w) && preserves_implication(h, w);
}

bool is_brw_semilattice_hom(const AlgHom& h, HomWitness* w) {
  return is_ms_hom(h, w) && preserves_implication(h, w);
}

bool is_brw_algebra_hom(const AlgHom& h, HomWitness* w) {
  return is_brw_semilattice_hom(h, w) && preserves_join(h, w);
}

FinLattice family_lattice(const std::vector<Mask>& sets) {
  int n = static_cast<int>(sets.size());
  std::vector<Mask> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((sets[i] & ~sets[j]) == 0) up[i] |= bit(j);
  auto l = lattice_from_poset(FinPoset::from_up(n, up));
  // a ∩/∪-closed family is a lattice under inclusion
  return *l;
}

FinLattice downset_lattice(const FinPoset& p) { return family_lattice(all_downsets(p)); }

FinLattice make_chain(int n) { return *lattice_from_poset(FinPoset::chain(n)); }

FinLattice make_boolean(int atoms) { return downset_lattice(FinPoset::antichain(atoms)); }

FinLattice make_m3() {
  // 0 < a,b,c < 1
  auto p = FinPoset::from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  return *lattice_from_poset(*p);
}

std::vector<AlgHom> all_dl_homs(const FinLattice& dom, const FinLattice& cod) {
  std::vector<AlgHom> out;
  for (const std::vector<int>& m : monotone_maps(dom.order, cod.order)) {
    AlgHom h{dom, cod, m};
    if (is_dl_hom(h)) out.push_back(std::move(h));
  }
  return out;
}

std::vector<FinPoset> birkhoff_posets(int max_size) {
  std::vector<FinPoset> out;
  out.push_back(FinPoset::antichain(0));  // Down(∅) = 1-element lattice
  for (int k = 1; k + 1 <= max_size; ++k)
    for (const FinPoset& p : enumerate_posets(k))
      if (all_downsets(p).size() <= static_cast<size_t>(max_size)) out.push_back(p);
  return out;
}

std::optional<std::vector<int>> find_lattice_isomorphism(const FinLattice& a, const FinLattice& b) {
  // an order-isomorphism of finite lattices preserves all infs/sups
  return find_order_isomorphism(a.order, b.order);
}

}  // namespace duality
