#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "duality/fanspace.hpp"

#include <algorithm>

using namespace duality;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

// sample frontier: all points the oracles evaluate; complete for the
// abstraction because indices beyond the bound behave uniformly
std::vector<FanPoint> sample_points(const FanSpace& x, int extra_bound) {
  std::vector<FanPoint> pts;
  for (int s = 0; s < x.skeleton.n; ++s) pts.push_back(FanPoint::sk(s));
  for (int t = 0; t < x.tail_count(); ++t)
    for (int n = 0; n <= extra_bound + 3; ++n)
      if (!std::binary_search(x.tails[t].excluded.begin(), x.tails[t].excluded.end(), n))
        pts.push_back(FanPoint::gen(t, n));
  return pts;
}

int set_bound(const FanSpace& x, const DefinableSet& d) {
  int b = x.bound();
  for (const TailTrace& t : d.tails)
    for (int e : t.exceptions) b = std::max(b, e);
  return b;
}

DefinableSet random_set(Rng& rng, const FanSpace& x) {
  DefinableSet d = empty_set(x);
  d.named = rng.next() & full_mask(x.skeleton.n);
  for (int t = 0; t < x.tail_count(); ++t) {
    d.tails[t].mode = rng.below(2) ? TailMode::COFIN : TailMode::FIN;
    for (int i = 0; i <= x.bound() + 2; ++i)
      if (rng.below(3) == 0) d.tails[t].exceptions.push_back(i);
  }
  return canon_set(x, d);
}

// pointwise down-closure: p ∈ ↓D iff p ∈ D or some q ≥ p lies in D; the only
// points above p are skeleton points (and p itself)
bool oracle_in_down(const FanSpace& x, const DefinableSet& d, const FanPoint& p) {
  if (contains(x, d, p)) return true;
  for (int q = 0; q < x.skeleton.n; ++q)
    if (point_leq(x, p, FanPoint::sk(q)) && contains(x, d, FanPoint::sk(q))) return true;
  return false;
}

// pointwise up-closure: q ranges over skeleton points and the generics below p
bool oracle_in_up(const FanSpace& x, const DefinableSet& d, const FanPoint& p, int bound) {
  if (contains(x, d, p)) return true;
  for (int q = 0; q < x.skeleton.n; ++q)
    if (point_leq(x, FanPoint::sk(q), p) && contains(x, d, FanPoint::sk(q))) return true;
  for (int t = 0; t < x.tail_count(); ++t)
    for (int n = 0; n <= bound + 3; ++n) {
      FanPoint g = FanPoint::gen(t, n);
      if (point_leq(x, g, p) && contains(x, d, g)) return true;
    }
  return false;
}

// pointwise box: every point above p lies in D
bool oracle_in_box(const FanSpace& x, const DefinableSet& d, const FanPoint& p) {
  if (!contains(x, d, p)) return false;
  for (int q = 0; q < x.skeleton.n; ++q)
    if (point_leq(x, p, FanPoint::sk(q)) && !contains(x, d, FanPoint::sk(q))) return false;
  return true;
}

bool subset_of(const FanSpace& x, const DefinableSet& a, const DefinableSet& b) {
  return set_empty(x, set_difference(x, a, b));
}

std::vector<FanSpace> bundled() {
  return {space_x1(), space_x2(), space_x3(), space_x4(), space_ne()};
}

}  // namespace

TEST_CASE("construction validates shape") {
  std::string err;
  // tail limit must carry the limit tag
  CHECK_FALSE(FanSpace::make(FinPoset::antichain(1), 0, {Tail{0, 0, {}}}, &err).has_value());
  // below must be an upset: in 0<1 the set {0} is not
  CHECK_FALSE(
      FanSpace::make(*FinPoset::from_pairs(2, {{0, 1}}), bit(0), {Tail{0, bit(0), {}}}, &err)
          .has_value());
  CHECK_FALSE(FanSpace::make(FinPoset::antichain(1), bit(0), {Tail{2, 0, {}}}, &err).has_value());
  CHECK(FanSpace::make(FinPoset::antichain(1), bit(0), {Tail{0, 0, {5, 2, 5}}}).has_value());
}

TEST_CASE("boolean operations agree with the membership oracle") {
  Rng rng(41);
  for (const FanSpace& x : bundled())
    for (int trial = 0; trial < 60; ++trial) {
      DefinableSet a = random_set(rng, x), b = random_set(rng, x);
      int bound = std::max(set_bound(x, a), set_bound(x, b));
      for (const FanPoint& p : sample_points(x, bound)) {
        bool ia = contains(x, a, p), ib = contains(x, b, p);
        CHECK(contains(x, set_union(x, a, b), p) == (ia || ib));
        CHECK(contains(x, set_intersect(x, a, b), p) == (ia && ib));
        CHECK(contains(x, set_complement(x, a), p) == !ia);
        CHECK(contains(x, set_difference(x, a, b), p) == (ia && !ib));
      }
      CHECK(set_union(x, a, empty_set(x)) == a);
      CHECK(set_complement(x, set_complement(x, a)) == a);
      CHECK(set_intersect(x, a, whole_set(x)) == a);
    }
}

TEST_CASE("order closures agree with the membership oracle") {
  Rng rng(43);
  for (const FanSpace& x : bundled())
    for (int trial = 0; trial < 60; ++trial) {
      DefinableSet a = random_set(rng, x);
      int bound = set_bound(x, a);
      DefinableSet dn = down_closure(x, a), up = up_closure(x, a), bx = box(x, a);
      for (const FanPoint& p : sample_points(x, bound)) {
        CHECK(contains(x, dn, p) == oracle_in_down(x, a, p));
        CHECK(contains(x, up, p) == oracle_in_up(x, a, p, bound));
        CHECK(contains(x, bx, p) == oracle_in_box(x, a, p));
      }
      // closure-operator laws
      CHECK(subset_of(x, a, dn));
      CHECK(down_closure(x, dn) == dn);
      CHECK(up_closure(x, up) == up);
      DefinableSet b = random_set(rng, x);
      CHECK(down_closure(x, set_union(x, a, b)) ==
            set_union(x, down_closure(x, a), down_closure(x, b)));
      CHECK(is_upset_def(x, up));
      CHECK(is_downset_def(x, dn));
      CHECK(is_upset_def(x, bx));
      CHECK(subset_of(x, bx, a));
    }
}

TEST_CASE("topological closure and interior") {
  Rng rng(47);
  for (const FanSpace& x : bundled())
    for (int trial = 0; trial < 60; ++trial) {
      DefinableSet a = random_set(rng, x);
      DefinableSet cl = closure(x, a), in = interior(x, a);
      CHECK(subset_of(x, a, cl));
      CHECK(closure(x, cl) == cl);
      CHECK(is_closed_def(x, cl));
      CHECK(subset_of(x, in, a));
      CHECK(interior(x, in) == in);
      CHECK(is_open_def(x, in));
      CHECK(in == set_complement(x, closure(x, set_complement(x, a))));
      DefinableSet b = random_set(rng, x);
      CHECK(closure(x, set_union(x, a, b)) == set_union(x, closure(x, a), closure(x, b)));
      // spectral closure is idempotent on bundled spaces
      DefinableSet sp = spectral_closure(x, a);
      CHECK(closure(x, sp) == sp);
      CHECK(spectral_closure(x, sp) == sp);
    }
}

TEST_CASE("frozen example values") {
  // one limit on top of its own tail: ↓{∞} is everything
  FanSpace x4 = space_x4();
  CHECK(down_closure(x4, named_only(x4, bit(0))) == whole_set(x4));
  // box over the tail alone is empty
  DefinableSet naturals = empty_set(x4);
  naturals.tails[0].mode = TailMode::COFIN;
  CHECK(box(x4, naturals) == empty_set(x4));
  CHECK_FALSE(is_open_def(x4, named_only(x4, bit(0))));
  CHECK(closure(x4, naturals) == whole_set(x4));
  // X → ({∞} ∪ tail∖{0}) returns the right-hand side
  DefinableSet v = whole_set(x4);
  v.tails[0].exceptions = {0};
  CHECK(open_upset_implication(x4, whole_set(x4), v) == v);

  // one limit, two interleaved tails: cl adds the limit to any infinite trace
  FanSpace x3 = space_x3();
  DefinableSet both = empty_set(x3);
  both.tails[0].mode = both.tails[1].mode = TailMode::COFIN;
  CHECK(closure(x3, both) == whole_set(x3));
  DefinableSet evens = empty_set(x3);
  evens.tails[0].mode = TailMode::COFIN;
  DefinableSet evens_cl = evens;
  evens_cl.named = bit(0);
  CHECK(closure(x3, evens) == evens_cl);

  // two limits: cl(E) = E ∪ {∞_E}, and that set is clopen
  FanSpace x2 = space_x2();
  DefinableSet e = empty_set(x2);
  e.tails[0].mode = TailMode::COFIN;
  DefinableSet ecl = e;
  ecl.named = bit(0);
  CHECK(closure(x2, e) == ecl);
  CHECK(is_clopen_def(x2, ecl));
  // trivial order: ↓ is the identity, so U→V collapses to X∖cl(U∖V)
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    DefinableSet u = random_set(rng, x2), w = random_set(rng, x2);
    CHECK(down_closure(x2, u) == u);
    CHECK(open_upset_implication(x2, u, w) ==
          set_complement(x2, closure(x2, set_difference(x2, u, w))));
  }

  // 0-tail two-chain: box({top}) = {top}
  FanSpace x1 = space_x1();
  CHECK(box(x1, named_only(x1, bit(1))) == named_only(x1, bit(1)));

  // limit below an isolated point: ↓{p₀} = {p₀, ∞}, closed but not open
  FanSpace ne = space_ne();
  DefinableSet dp = down_closure(ne, named_only(ne, bit(1)));
  CHECK(dp == named_only(ne, bit(0) | bit(1)));
  CHECK(is_closed_def(ne, dp));
  CHECK_FALSE(is_open_def(ne, dp));
}

TEST_CASE("minimal open upsets and bases") {
  FanSpace ne = space_ne();
  CHECK(min_open_upset(ne, bit(1)) == named_only(ne, bit(1)));
  DefinableSet m = min_open_upset(ne, bit(0));
  CHECK(m.named == (bit(0) | bit(1)));
  CHECK(m.tails[0].mode == TailMode::COFIN);
  for (const FanSpace& x : bundled())
    for (Mask seed = 0; seed <= full_mask(x.skeleton.n); ++seed) {
      DefinableSet u = min_open_upset(x, seed);
      CHECK(is_clopen_def(x, u));
      CHECK(is_upset_def(x, u));
      CHECK((seed & ~u.named) == 0);
    }

  FanSpace x4 = space_x4();
  CHECK(clopen_upset_basis(x4).size() == 3);  // ∅, X, X∖{one generic}
  for (const FanSpace& x : bundled()) {
    for (const DefinableSet& d : clopen_basis(x)) CHECK(is_clopen_def(x, d));
    for (const DefinableSet& d : clopen_upset_basis(x)) {
      CHECK(is_clopen_def(x, d));
      CHECK(is_upset_def(x, d));
    }
    for (const DefinableSet& d : canonical_downsets(x)) CHECK(is_downset_def(x, d));
    // deeper bases only refine the family
    CHECK(shape_basis(x, 2).size() >= shape_basis(x, 1).size());
  }
}

TEST_CASE("implication residuation on basis open upsets of Esakia spaces") {
  for (const FanSpace& x : {space_x2(), space_x3(), space_x4(), space_x1()}) {
    std::vector<DefinableSet> ou = open_upset_basis(x, 2);
    for (const DefinableSet& u : ou)
      for (const DefinableSet& v : ou) {
        DefinableSet imp = open_upset_implication(x, u, v);
        for (const DefinableSet& w : ou)
          CHECK(subset_of(x, w, imp) == subset_of(x, set_intersect(x, w, u), v));
      }
  }
}

TEST_CASE("validate: bundled spaces") {
  for (const FanSpace& x : {space_x2(), space_x3(), space_x4()}) {
    SpaceVerdict v = validate_space(x);
    CHECK(v.priestley);
    CHECK(v.esakia);
  }
  SpaceVerdict v1 = validate_space(space_x1());
  CHECK(v1.priestley);
  CHECK(v1.esakia);

  SpaceVerdict ne = validate_space(space_ne());
  CHECK(ne.priestley);
  CHECK_FALSE(ne.esakia);
  // both Esakia routes fail, each with a re-evaluable certificate
  bool down_fail = false, imp_fail = false;
  for (const CheckLine& l : ne.detail.lines) {
    if (l.id == "esakia.down_clopen") {
      CHECK_FALSE(l.pass);
      down_fail = !l.pass;
    }
    if (l.id == "esakia.implication_closed") {
      CHECK_FALSE(l.pass);
      imp_fail = !l.pass;
    }
  }
  CHECK(down_fail);
  CHECK(imp_fail);
}

TEST_CASE("validate: embedded finite posets and a non-Priestley shape") {
  for (int n = 1; n <= 3; ++n)
    for (const FinPoset& p : enumerate_posets(n)) {
      SpaceVerdict v = validate_space(embed_finite_poset(p));
      CHECK(v.priestley);
      CHECK(v.esakia);
    }
  CHECK(validate_space(embed_finite_poset(FinPoset::antichain(0))).priestley);

  // a tail pinned below an isolated point its limit cannot reach: every
  // clopen upset holding the limit swallows the isolated point
  auto bad = FanSpace::make(FinPoset::antichain(2), bit(0), {Tail{0, bit(1), {}}});
  REQUIRE(bad.has_value());
  SpaceVerdict v = validate_space(*bad);
  CHECK_FALSE(v.priestley);
}

TEST_CASE("materialized indices: excluded points never appear") {
  // tail with index 0 materialized as a skeleton point below the limit
  auto x = FanSpace::make(*FinPoset::from_pairs(2, {{1, 0}}), bit(0),
                          {Tail{0, bit(0), {0}}});
  REQUIRE(x.has_value());
  CHECK_FALSE(contains(*x, whole_set(*x), FanPoint::gen(0, 0)));
  CHECK(contains(*x, whole_set(*x), FanPoint::gen(0, 1)));
  DefinableSet d = empty_set(*x);
  d.tails[0].exceptions = {0, 3};
  d = canon_set(*x, d);
  CHECK(d.tails[0].exceptions == std::vector<int>{3});
  SpaceVerdict v = validate_space(*x);
  CHECK(v.priestley);
  CHECK(v.esakia);
}
