#include "duality/fanspace.hpp"

#include <algorithm>

namespace duality {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool idx_in(const std::vector<int>& sorted, long long n) {
  if (n < 0 || n > static_cast<long long>(1) << 40) return false;
  return std::binary_search(sorted.begin(), sorted.end(), static_cast<int>(n));
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> unite(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> inter(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool trace_nonempty(const TailTrace& t) {
  return t.mode == TailMode::COFIN || !t.exceptions.empty();
}

}  // namespace

int FanSpace::bound() const {
  int b = -1;
  for (const Tail& t : tails)
    for (int e : t.excluded) b = std::max(b, e);
  return b;
}

std::optional<FanSpace> FanSpace::make(const FinPoset& skeleton, Mask limits,
                                       std::vector<Tail> tails, std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = m;
    return std::nullopt;
  };
  if ((limits & ~full_mask(skeleton.n)) != 0) return fail("limit tags outside skeleton");
  for (Tail& t : tails) {
    if (t.limit < 0 || t.limit >= skeleton.n) return fail("tail limit not a skeleton point");
    if (!has(limits, t.limit)) return fail("tail limit not tagged as a limit point");
    if ((t.below & ~full_mask(skeleton.n)) != 0) return fail("below outside skeleton");
    if (!is_upset(skeleton, t.below)) return fail("below is not an upset of the skeleton");
    for (int e : t.excluded)
      if (e < 0) return fail("negative excluded index");
    t.excluded = sorted_unique(t.excluded);
  }
  FanSpace x;
  x.skeleton = skeleton;
  x.limits = limits;
  x.tails = std::move(tails);
  return x;
}

DefinableSet canon_set(const FanSpace& x, DefinableSet d) {
  require_internal(d.tails.size() == x.tails.size(), "definable set has wrong tail count");
  d.named &= full_mask(x.skeleton.n);
  for (int t = 0; t < x.tail_count(); ++t)
    d.tails[t].exceptions = minus(sorted_unique(d.tails[t].exceptions), x.tails[t].excluded);
  return d;
}

DefinableSet empty_set(const FanSpace& x) {
  DefinableSet d;
  d.tails.resize(x.tails.size());
  return d;
}

DefinableSet whole_set(const FanSpace& x) {
  DefinableSet d = empty_set(x);
  d.named = full_mask(x.skeleton.n);
  for (TailTrace& t : d.tails) t.mode = TailMode::COFIN;
  return d;
}

DefinableSet named_only(const FanSpace& x, Mask named) {
  DefinableSet d = empty_set(x);
  d.named = named & full_mask(x.skeleton.n);
  return d;
}

bool valid_set(const FanSpace& x, const DefinableSet& d) {
  if (d.tails.size() != x.tails.size()) return false;
  if ((d.named & ~full_mask(x.skeleton.n)) != 0) return false;
  for (int t = 0; t < x.tail_count(); ++t) {
    const std::vector<int>& e = d.tails[t].exceptions;
    if (!std::is_sorted(e.begin(), e.end())) return false;
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) return false;
    for (int i : e)
      if (i < 0 || idx_in(x.tails[t].excluded, i)) return false;
  }
  return true;
}

bool contains(const FanSpace& x, const DefinableSet& d, const FanPoint& p) {
  if (p.tail < 0) return has(d.named, p.skeleton);
  if (idx_in(x.tails[p.tail].excluded, p.index) || p.index < 0) return false;
  bool exc = idx_in(d.tails[p.tail].exceptions, p.index);
  return d.tails[p.tail].mode == TailMode::FIN ? exc : !exc;
}

bool point_leq(const FanSpace& x, const FanPoint& a, const FanPoint& b) {
  if (a.tail < 0 && b.tail < 0) return x.skeleton.leq(a.skeleton, b.skeleton);
  if (a.tail < 0) return false;  // skeleton never below a generic
  if (b.tail < 0) return has(x.tails[a.tail].below, b.skeleton);
  return a == b;
}

DefinableSet set_union(const FanSpace& x, const DefinableSet& a, const DefinableSet& b) {
  DefinableSet r = empty_set(x);
  r.named = a.named | b.named;
  for (int t = 0; t < x.tail_count(); ++t) {
    const TailTrace &p = a.tails[t], &q = b.tails[t];
    TailTrace& o = r.tails[t];
    if (p.mode == TailMode::FIN && q.mode == TailMode::FIN)
      o = {TailMode::FIN, unite(p.exceptions, q.exceptions)};
    else if (p.mode == TailMode::FIN)
      o = {TailMode::COFIN, minus(q.exceptions, p.exceptions)};
    else if (q.mode == TailMode::FIN)
      o = {TailMode::COFIN, minus(p.exceptions, q.exceptions)};
    else
      o = {TailMode::COFIN, inter(p.exceptions, q.exceptions)};
  }
  return r;
}

DefinableSet set_intersect(const FanSpace& x, const DefinableSet& a, const DefinableSet& b) {
  DefinableSet r = empty_set(x);
  r.named = a.named & b.named;
  for (int t = 0; t < x.tail_count(); ++t) {
    const TailTrace &p = a.tails[t], &q = b.tails[t];
    TailTrace& o = r.tails[t];
    if (p.mode == TailMode::FIN && q.mode == TailMode::FIN)
      o = {TailMode::FIN, inter(p.exceptions, q.exceptions)};
    else if (p.mode == TailMode::FIN)
      o = {TailMode::FIN, minus(p.exceptions, q.exceptions)};
    else if (q.mode == TailMode::FIN)
      o = {TailMode::FIN, minus(q.exceptions, p.exceptions)};
    else
      o = {TailMode::COFIN, unite(p.exceptions, q.exceptions)};
  }
  return r;
}

DefinableSet set_complement(const FanSpace& x, const DefinableSet& a) {
  DefinableSet r = a;
  r.named = full_mask(x.skeleton.n) & ~a.named;
  for (TailTrace& t : r.tails)
    t.mode = (t.mode == TailMode::FIN) ? TailMode::COFIN : TailMode::FIN;
  return r;
}

DefinableSet set_difference(const FanSpace& x, const DefinableSet& a, const DefinableSet& b) {
  return set_intersect(x, a, set_complement(x, b));
}

bool set_empty(const FanSpace& x, const DefinableSet& a) {
  (void)x;
  if (a.named != 0) return false;
  for (const TailTrace& t : a.tails)
    if (trace_nonempty(t)) return false;
  return true;
}

DefinableSet down_closure(const FanSpace& x, const DefinableSet& a) {
  DefinableSet r = a;
  r.named = down_set(x.skeleton, a.named);
  for (int t = 0; t < x.tail_count(); ++t)
    if ((a.named & x.tails[t].below) != 0) r.tails[t] = {TailMode::COFIN, {}};
  return r;
}

DefinableSet up_closure(const FanSpace& x, const DefinableSet& a) {
  DefinableSet r = a;
  r.named = up_set(x.skeleton, a.named);
  for (int t = 0; t < x.tail_count(); ++t)
    if (trace_nonempty(a.tails[t])) r.named |= x.tails[t].below;  // below is an upset
  return r;
}

DefinableSet closure(const FanSpace& x, const DefinableSet& a) {
  DefinableSet r = a;
  for (int t = 0; t < x.tail_count(); ++t)
    if (a.tails[t].mode == TailMode::COFIN) r.named |= bit(x.tails[t].limit);
  return r;
}

DefinableSet interior(const FanSpace& x, const DefinableSet& a) {
  DefinableSet r = a;
  for (int t = 0; t < x.tail_count(); ++t)
    if (a.tails[t].mode != TailMode::COFIN && has(a.named, x.tails[t].limit))
      r.named &= ~bit(x.tails[t].limit);
  return r;
}

bool is_open_def(const FanSpace& x, const DefinableSet& a) { return interior(x, a) == a; }
bool is_closed_def(const FanSpace& x, const DefinableSet& a) { return closure(x, a) == a; }
bool is_clopen_def(const FanSpace& x, const DefinableSet& a) {
  return is_open_def(x, a) && is_closed_def(x, a);
}
bool is_upset_def(const FanSpace& x, const DefinableSet& a) { return up_closure(x, a) == a; }
bool is_downset_def(const FanSpace& x, const DefinableSet& a) { return down_closure(x, a) == a; }

DefinableSet box(const FanSpace& x, const DefinableSet& a) {
  return set_complement(x, down_closure(x, set_complement(x, a)));
}

DefinableSet open_upset_implication(const FanSpace& x, const DefinableSet& u,
                                    const DefinableSet& v) {
  return set_complement(x, down_closure(x, closure(x, set_difference(x, u, v))));
}

DefinableSet spectral_closure(const FanSpace& x, const DefinableSet& a) {
  return down_closure(x, closure(x, a));
}

DefinableSet min_open_upset(const FanSpace& x, Mask seed) {
  Mask named = up_set(x.skeleton, seed);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Tail& t : x.tails)
      if (has(named, t.limit) && (t.below & ~named) != 0) {
        named |= t.below;
        grew = true;
      }
  }
  DefinableSet d = empty_set(x);
  d.named = named;
  for (int t = 0; t < x.tail_count(); ++t)
    if (has(named, x.tails[t].limit)) d.tails[t].mode = TailMode::COFIN;
  return d;
}

namespace {

// all FIN/COFIN traces with exceptions drawn from {from, ..., from+depth-1}
std::vector<TailTrace> trace_options(int depth, int from) {
  std::vector<TailTrace> out;
  for (TailMode m : {TailMode::FIN, TailMode::COFIN})
    for (Mask s = 0; s < (Mask{1} << depth); ++s) {
      TailTrace t{m, {}};
      for (int i = 0; i < depth; ++i)
        if (has(s, i)) t.exceptions.push_back(from + i);
      out.push_back(std::move(t));
    }
  return out;
}

int fresh_base(const FanSpace& x, int fresh_from) {
  return fresh_from >= 0 ? fresh_from : x.bound() + 1;
}

}  // namespace

std::vector<DefinableSet> shape_basis(const FanSpace& x, int depth, int fresh_from) {
  int from = fresh_base(x, fresh_from);
  std::vector<TailTrace> opts = trace_options(depth, from);
  std::vector<DefinableSet> out;
  std::vector<DefinableSet> partial{empty_set(x)};
  for (int t = 0; t < x.tail_count(); ++t) {
    std::vector<DefinableSet> next;
    for (const DefinableSet& d : partial)
      for (const TailTrace& o : opts) {
        DefinableSet e = d;
        e.tails[t] = o;
        next.push_back(std::move(e));
      }
    partial = std::move(next);
  }
  for (Mask named = 0; named <= full_mask(x.skeleton.n); ++named)
    for (const DefinableSet& d : partial) {
      DefinableSet e = d;
      e.named = named;
      out.push_back(canon_set(x, std::move(e)));
    }
  return out;
}

std::vector<DefinableSet> clopen_basis(const FanSpace& x, int depth, int fresh_from) {
  std::vector<DefinableSet> out;
  for (DefinableSet& d : shape_basis(x, depth, fresh_from))
    if (is_clopen_def(x, d)) out.push_back(std::move(d));
  return out;
}

std::vector<DefinableSet> clopen_upset_basis(const FanSpace& x, int depth, int fresh_from) {
  std::vector<DefinableSet> out;
  for (DefinableSet& d : shape_basis(x, depth, fresh_from))
    if (is_clopen_def(x, d) && is_upset_def(x, d)) out.push_back(std::move(d));
  return out;
}

std::vector<DefinableSet> open_upset_basis(const FanSpace& x, int depth, int fresh_from) {
  std::vector<DefinableSet> out;
  for (DefinableSet& d : shape_basis(x, depth, fresh_from))
    if (is_open_def(x, d) && is_upset_def(x, d)) out.push_back(std::move(d));
  return out;
}

std::vector<DefinableSet> canonical_downsets(const FanSpace& x, int depth, int fresh_from) {
  int from = fresh_base(x, fresh_from);
  std::vector<DefinableSet> out;
  for (Mask named : all_downsets(x.skeleton)) {
    std::vector<DefinableSet> partial{named_only(x, named)};
    for (int t = 0; t < x.tail_count(); ++t) {
      std::vector<TailTrace> opts;
      if ((named & x.tails[t].below) != 0) {
        opts.push_back({TailMode::COFIN, {}});  // a point above the tail forces all of it
      } else {
        opts.push_back({TailMode::FIN, {}});
        opts.push_back({TailMode::COFIN, {}});
        for (int i = 0; i < depth; ++i) {
          opts.push_back({TailMode::FIN, {from + i}});
          opts.push_back({TailMode::COFIN, {from + i}});
        }
      }
      std::vector<DefinableSet> next;
      for (const DefinableSet& d : partial)
        for (const TailTrace& o : opts) {
          DefinableSet e = d;
          e.tails[t] = o;
          next.push_back(std::move(e));
        }
      partial = std::move(next);
    }
    for (DefinableSet& d : partial) {
      d = canon_set(x, std::move(d));
      require_internal(is_downset_def(x, d), "canonical downset fails the downset predicate");
      out.push_back(std::move(d));
    }
  }
  return out;
}

SpaceVerdict validate_space(const FanSpace& x, int depth) {
  SpaceVerdict v;
  int b = x.bound();
  int f1 = b + 1, f2 = b + 2;

  // separation witness: smallest clopen upset around `xp`, minus `yp` if generic
  auto separate = [&](const FanPoint& xp, const FanPoint& yp) -> bool {
    DefinableSet u =
        xp.tail < 0 ? min_open_upset(x, bit(xp.skeleton)) : min_open_upset(x, x.tails[xp.tail].below);
    if (xp.tail >= 0 && u.tails[xp.tail].mode == TailMode::FIN)
      u.tails[xp.tail].exceptions.push_back(static_cast<int>(xp.index));
    if (yp.tail >= 0) {
      TailTrace& t = u.tails[yp.tail];
      if (t.mode == TailMode::FIN) {
        t.exceptions.erase(std::remove(t.exceptions.begin(), t.exceptions.end(),
                                       static_cast<int>(yp.index)),
                           t.exceptions.end());
      } else {
        t.exceptions.push_back(static_cast<int>(yp.index));
      }
    }
    u = canon_set(x, std::move(u));
    return is_clopen_def(x, u) && is_upset_def(x, u) && contains(x, u, xp) && !contains(x, u, yp);
  };

  auto check_pairs = [&](const std::string& id, const std::vector<std::pair<FanPoint, FanPoint>>& ps) {
    for (const auto& [xp, yp] : ps) {
      if (point_leq(x, xp, yp)) continue;
      if (!separate(xp, yp)) {
        v.detail.add(id, false, Json{{"x", point_to_json(xp)}, {"y", point_to_json(yp)}});
        return;
      }
    }
    v.detail.add(id, true, {});
  };

  std::vector<std::pair<FanPoint, FanPoint>> sk_pairs, gs_pairs, sg_pairs, gg_pairs;
  for (int s = 0; s < x.skeleton.n; ++s)
    for (int r = 0; r < x.skeleton.n; ++r)
      if (s != r) sk_pairs.push_back({FanPoint::sk(s), FanPoint::sk(r)});
  for (int t = 0; t < x.tail_count(); ++t)
    for (int s = 0; s < x.skeleton.n; ++s) {
      gs_pairs.push_back({FanPoint::gen(t, f1), FanPoint::sk(s)});
      sg_pairs.push_back({FanPoint::sk(s), FanPoint::gen(t, f1)});
    }
  for (int t = 0; t < x.tail_count(); ++t)
    for (int t2 = 0; t2 < x.tail_count(); ++t2)
      gg_pairs.push_back({FanPoint::gen(t, f1), FanPoint::gen(t2, t == t2 ? f2 : f1)});

  check_pairs("priestley.skeleton_pairs", sk_pairs);
  check_pairs("priestley.generic_vs_skeleton", gs_pairs);
  check_pairs("priestley.skeleton_vs_generic", sg_pairs);
  check_pairs("priestley.generic_pairs", gg_pairs);
  v.priestley = v.detail.all_pass();

  // route 1: ↓ of every basis clopen is clopen
  bool route1 = true;
  for (const DefinableSet& c : clopen_basis(x, depth)) {
    DefinableSet d = down_closure(x, c);
    if (!is_clopen_def(x, d)) {
      route1 = false;
      v.detail.add("esakia.down_clopen", false,
                   Json{{"clopen", set_to_json(c)}, {"down", set_to_json(d)}});
      break;
    }
  }
  if (route1) v.detail.add("esakia.down_clopen", true, {});

  // route 2: definable clopen upsets closed under implication
  bool route2 = true;
  std::vector<DefinableSet> cu = clopen_upset_basis(x, depth);
  for (const DefinableSet& u : cu) {
    for (const DefinableSet& w : cu) {
      DefinableSet e = open_upset_implication(x, u, w);
      require_internal(is_upset_def(x, e), "implication output must be an upset");
      if (!is_clopen_def(x, e)) {
        route2 = false;
        v.detail.add("esakia.implication_closed", false,
                     Json{{"u", set_to_json(u)}, {"v", set_to_json(w)}, {"imp", set_to_json(e)}});
        break;
      }
    }
    if (!route2) break;
  }
  if (route2) v.detail.add("esakia.implication_closed", true, {});

  // the two routes coincide on Priestley spaces (mismatch would be a bug)
  if (v.priestley) require_internal(route1 == route2, "Esakia routes disagree");
  v.esakia = v.priestley && route1 && route2;
  return v;
}

FanSpace embed_finite_poset(const FinPoset& p) {
  FanSpace x;
  x.skeleton = p;
  return x;
}

FanSpace space_x1() { return embed_finite_poset(FinPoset::chain(2)); }

FanSpace space_x2() {
  return *FanSpace::make(FinPoset::antichain(2), bit(0) | bit(1),
                         {Tail{0, 0, {}}, Tail{1, 0, {}}});
}

FanSpace space_x3() {
  return *FanSpace::make(FinPoset::antichain(1), bit(0), {Tail{0, 0, {}}, Tail{0, 0, {}}});
}

FanSpace space_x4() {
  return *FanSpace::make(FinPoset::antichain(1), bit(0), {Tail{0, bit(0), {}}});
}

FanSpace space_ne() {
  return *FanSpace::make(*FinPoset::from_pairs(2, {{0, 1}}), bit(0), {Tail{0, 0, {}}});
}

Json set_to_json(const DefinableSet& d) {
  Json tails = Json::array();
  for (const TailTrace& t : d.tails)
    tails.push_back(Json{{"mode", t.mode == TailMode::FIN ? "FIN" : "COFIN"},
                         {"exceptions", t.exceptions}});
  return Json{{"named", mask_to_list(d.named)}, {"tails", tails}};
}

Json point_to_json(const FanPoint& p) {
  if (p.tail < 0) return Json{{"skeleton", p.skeleton}};
  return Json{{"tail", p.tail}, {"index", p.index}};
}

}  // namespace duality
