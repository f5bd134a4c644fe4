#include "duality/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace duality {

int popcount(Mask m) { return std::popcount(m); }
int lowest_bit(Mask m) { return std::countr_zero(m); }

std::vector<int> mask_to_list(Mask m) {
  std::vector<int> xs;
  for (Mask s = m; s; s &= s - 1) xs.push_back(std::countr_zero(s));
  return xs;
}

Mask list_to_mask(const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) m |= bit(x);
  return m;
}

FinPoset FinPoset::antichain(int n) {
  FinPoset p;
  p.n = n;
  p.up.resize(n);
  p.down.resize(n);
  for (int i = 0; i < n; ++i) p.up[i] = p.down[i] = bit(i);
  return p;
}

FinPoset FinPoset::chain(int n) {
  FinPoset p;
  p.n = n;
  p.up.resize(n);
  p.down.resize(n);
  for (int i = 0; i < n; ++i) {
    p.up[i] = full_mask(n) & ~full_mask(i);
    p.down[i] = full_mask(i + 1);
  }
  return p;
}

std::optional<FinPoset> FinPoset::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs,
                                             std::pair<int, int>* witness) {
  if (n < 0 || n > kMaxElems) throw std::invalid_argument("poset size out of range");
  std::vector<Mask> up(n);
  for (int i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("poset pair out of range");
    up[a] |= bit(b);
  }
  // Warshall closure on the up-masks.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (has(up[i], k)) up[i] |= up[k];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (has(up[i], j) && has(up[j], i)) {
        if (witness) *witness = {i, j};
        return std::nullopt;
      }
  return from_up(n, std::move(up));
}

FinPoset FinPoset::from_up(int n, std::vector<Mask> up) {
  FinPoset p;
  p.n = n;
  p.up = std::move(up);
  p.down.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (has(p.up[i], j)) p.down[j] |= bit(i);
  return p;
}

FinPoset FinPoset::dual() const {
  FinPoset p;
  p.n = n;
  p.up = down;
  p.down = up;
  return p;
}

std::vector<std::pair<int, int>> FinPoset::cover_pairs() const {
  std::vector<std::pair<int, int>> cs;
  for (int j = 0; j < n; ++j)
    for (int i : mask_to_list(lower_covers(*this, j))) cs.emplace_back(i, j);
  return cs;
}

Mask up_set(const FinPoset& p, Mask s) {
  Mask r = 0;
  for (Mask t = s; t; t &= t - 1) r |= p.up[std::countr_zero(t)];
  return r;
}

Mask down_set(const FinPoset& p, Mask s) {
  Mask r = 0;
  for (Mask t = s; t; t &= t - 1) r |= p.down[std::countr_zero(t)];
  return r;
}

bool is_upset(const FinPoset& p, Mask s) { return up_set(p, s) == s; }
bool is_downset(const FinPoset& p, Mask s) { return down_set(p, s) == s; }

std::vector<Mask> all_upsets(const FinPoset& p) {
  if (p.n > 20) throw std::invalid_argument("all_upsets: carrier too large");
  std::vector<Mask> us;
  for (Mask s = 0, end = full_mask(p.n); ; ++s) {
    if (is_upset(p, s)) us.push_back(s);
    if (s == end) break;
  }
  return us;
}

std::vector<Mask> all_downsets(const FinPoset& p) {
  if (p.n > 20) throw std::invalid_argument("all_downsets: carrier too large");
  std::vector<Mask> ds;
  for (Mask s = 0, end = full_mask(p.n); ; ++s) {
    if (is_downset(p, s)) ds.push_back(s);
    if (s == end) break;
  }
  return ds;
}

Mask maximal_elements(const FinPoset& p, Mask s) {
  Mask r = 0;
  for (int i : mask_to_list(s))
    if (!(p.up[i] & s & ~bit(i))) r |= bit(i);
  return r;
}

Mask minimal_elements(const FinPoset& p, Mask s) {
  Mask r = 0;
  for (int i : mask_to_list(s))
    if (!(p.down[i] & s & ~bit(i))) r |= bit(i);
  return r;
}

Mask lower_covers(const FinPoset& p, int x) {
  return maximal_elements(p, p.down[x] & ~bit(x));
}

Mask upper_covers(const FinPoset& p, int x) {
  return minimal_elements(p, p.up[x] & ~bit(x));
}

Mask join_irreducibles(const FinPoset& p) {
  Mask r = 0;
  for (int x = 0; x < p.n; ++x)
    if (popcount(lower_covers(p, x)) == 1) r |= bit(x);
  return r;
}

bool is_order_preserving(const PosetMap& f) {
  for (int x = 0; x < f.dom.n; ++x)
    for (int y = 0; y < f.dom.n; ++y)
      if (f.dom.leq(x, y) && !f.cod.leq(f.map[x], f.map[y])) return false;
  return true;
}

bool is_p_morphism(const PosetMap& f, PMorphWitness* w) {
  for (int y = 0; y < f.cod.n; ++y) {
    Mask fiber = 0, pre_down = 0;
    for (int x = 0; x < f.dom.n; ++x) {
      if (f.map[x] == y) fiber |= bit(x);
      if (f.cod.leq(f.map[x], y)) pre_down |= bit(x);
    }
    Mask lhs = down_set(f.dom, fiber);
    if (lhs != pre_down) {
      if (w) *w = {y, lowest_bit(lhs ^ pre_down)};
      return false;
    }
  }
  return true;
}

namespace {

// Lex-least upper-triangular incidence bits over linear extensions.  Row k of
// the bit string holds leq(perm[i], perm[k]) for i < k.  A greedy labeling
// seeds `best`; the DFS then prunes any branch whose prefix exceeds it.  The
// prefix relation is recomputed at each node, so a mid-search update of `best`
// cannot leave stale pruning state behind.
struct CanonSearch {
  const FinPoset& p;
  std::vector<uint8_t> best;
  std::vector<int> best_perm;
  std::vector<uint8_t> cur;
  std::vector<int> perm;
  Mask used = 0;

  explicit CanonSearch(const FinPoset& p_) : p(p_) {}

  bool viable(int c) const { return !has(used, c) && !(p.down[c] & ~bit(c) & ~used); }

  void run() {
    greedy_seed();
    cur.reserve(best.size());
    perm.reserve(p.n);
    used = 0;
    dfs();
  }

  void greedy_seed() {
    best.clear();
    best_perm.clear();
    used = 0;
    for (int k = 0; k < p.n; ++k) {
      int pick = -1;
      std::vector<uint8_t> pick_row;
      for (int c = 0; c < p.n; ++c) {
        if (!viable(c)) continue;
        std::vector<uint8_t> row(k);
        for (int i = 0; i < k; ++i) row[i] = p.leq(best_perm[i], c) ? 1 : 0;
        if (pick < 0 || row < pick_row) {
          pick = c;
          pick_row = std::move(row);
        }
      }
      best_perm.push_back(pick);
      used |= bit(pick);
      best.insert(best.end(), pick_row.begin(), pick_row.end());
    }
  }

  void dfs() {
    int k = static_cast<int>(perm.size());
    if (k == p.n) {
      if (cur < best) {
        best = cur;
        best_perm = perm;
      }
      return;
    }
    bool tight = true;  // cur == best prefix of the same length?
    for (size_t i = 0; i < cur.size(); ++i)
      if (cur[i] != best[i]) {
        tight = false;
        break;
      }
    for (int c = 0; c < p.n; ++c) {
      if (!viable(c)) continue;
      size_t base = cur.size();
      bool prune = false;
      for (int i = 0; i < k; ++i) {
        uint8_t b = p.leq(perm[i], c) ? 1 : 0;
        cur.push_back(b);
        if (tight && b > best[base + i]) {
          prune = true;
          break;
        }
        if (tight && b < best[base + i]) tight = false;  // strictly smaller from here on
      }
      if (!prune) {
        perm.push_back(c);
        used |= bit(c);
        dfs();
        used &= ~bit(c);
        perm.pop_back();
      }
      cur.resize(base);
      tight = true;
      for (size_t i = 0; i < cur.size(); ++i)
        if (cur[i] != best[i]) {
          tight = false;
          break;
        }
    }
  }
};

CanonSearch canon_search(const FinPoset& p) {
  CanonSearch s(p);
  s.run();
  return s;
}

}  // namespace

std::string canonical_key(const FinPoset& p) {
  CanonSearch s = canon_search(p);
  std::string key = std::to_string(p.n) + ":";
  for (uint8_t b : s.best) key.push_back(b ? '1' : '0');
  return key;
}

std::vector<int> canonical_permutation(const FinPoset& p) {
  CanonSearch s = canon_search(p);
  if (p.n == 0) return {};
  return s.best_perm;
}

bool isomorphic(const FinPoset& a, const FinPoset& b) {
  if (a.n != b.n) return false;
  return canonical_key(a) == canonical_key(b);
}

std::optional<std::vector<int>> find_order_isomorphism(const FinPoset& a, const FinPoset& b) {
  if (a.n != b.n || canonical_key(a) != canonical_key(b)) return std::nullopt;
  std::vector<int> pa = canonical_permutation(a);  // canonical slot -> a-index
  std::vector<int> pb = canonical_permutation(b);
  std::vector<int> iso(a.n);
  for (int k = 0; k < a.n; ++k) iso[pa[k]] = pb[k];
  return iso;
}

std::vector<FinPoset> enumerate_posets(int n) {
  if (n < 0 || n > 8) throw std::invalid_argument("enumerate_posets: size out of range");
  std::vector<FinPoset> cur;
  cur.push_back(FinPoset::antichain(0));
  for (int k = 1; k <= n; ++k) {
    std::map<std::string, FinPoset> next;
    for (const FinPoset& p : cur) {
      // Extend by one new maximal element whose strict down-set is any downset.
      for (Mask d : all_downsets(p)) {
        FinPoset q;
        q.n = p.n + 1;
        q.up = p.up;
        q.up.push_back(bit(p.n));
        for (int i : mask_to_list(d)) q.up[i] |= bit(p.n);
        q = FinPoset::from_up(q.n, std::move(q.up));
        next.emplace(canonical_key(q), q);
      }
    }
    cur.clear();
    for (auto& [k2, v] : next) cur.push_back(std::move(v));
  }
  return cur;
}

std::vector<std::vector<int>> monotone_maps(const FinPoset& dom, const FinPoset& cod) {
  std::vector<std::vector<int>> out;
  // Assign along a linear extension of dom so only assigned comparisons matter.
  std::vector<int> order;
  Mask placed = 0;
  while (static_cast<int>(order.size()) < dom.n) {
    for (int i = 0; i < dom.n; ++i)
      if (!has(placed, i) && !(dom.down[i] & ~bit(i) & ~placed)) {
        order.push_back(i);
        placed |= bit(i);
      }
  }
  std::vector<int> f(dom.n, -1);
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == order.size()) {
      out.push_back(f);
      return;
    }
    int x = order[k];
    for (int v = 0; v < cod.n; ++v) {
      bool ok = true;
      for (size_t j = 0; j < k && ok; ++j) {
        int y = order[j];
        if (dom.leq(y, x) && !cod.leq(f[y], v)) ok = false;
        if (dom.leq(x, y) && !cod.leq(v, f[y])) ok = false;
      }
      if (!ok) continue;
      f[x] = v;
      self(self, k + 1);
      f[x] = -1;
    }
  };
  if (dom.n == 0) {
    out.push_back({});
    return out;
  }
  rec(rec, 0);
  return out;
}

}  // namespace duality
