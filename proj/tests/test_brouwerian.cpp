#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "duality/brouwerian.hpp"

#include <algorithm>
#include <stdexcept>

using namespace duality;

namespace {

MeetSemilatticeView view(const FinLattice& l) { return MeetSemilatticeView{l}; }

std::vector<AlgHom> all_ms_homs(const FinLattice& dom, const FinLattice& cod) {
  std::vector<AlgHom> out;
  for (const std::vector<int>& m : monotone_maps(dom.order, cod.order)) {
    AlgHom h{dom, cod, m};
    if (is_ms_hom(h)) out.push_back(h);
  }
  return out;
}

std::vector<FinLattice> small_lattices(int max_size) {
  std::vector<FinLattice> out;
  for (const FinPoset& j : birkhoff_posets(max_size)) out.push_back(downset_lattice(j));
  return out;
}

int adm_index(const PointedGenSpace& x, Mask u) {
  auto it = std::lower_bound(x.admissibles.begin(), x.admissibles.end(), u);
  REQUIRE(it != x.admissibles.end());
  REQUIRE(*it == u);
  return static_cast<int>(it - x.admissibles.begin());
}

Mask map_preimage(const SpaceMap& f, Mask u) {
  Mask pre = 0;
  for (int x = 0; x < f.dom.size(); ++x)
    if (has(u, f.map[x])) pre |= bit(x);
  return pre;
}

}  // namespace

TEST_CASE("filters, prime and optimal filters at small scale") {
  FinLattice c2 = make_chain(2), c3 = make_chain(3), d2 = make_boolean(2);
  CHECK(all_ms_filters(view(c2)) == std::vector<Mask>{2, 3});
  CHECK(all_ms_filters(view(d2)) == std::vector<Mask>{8, 10, 12, 15});
  CHECK(prime_filters_ms(view(c2)) == std::vector<Mask>{2});
  CHECK(prime_filters_ms(view(c3)) == std::vector<Mask>{4, 6});
  CHECK(prime_filters_ms(view(d2)) == std::vector<Mask>{10, 12});
  CHECK(optimal_filters(view(d2)) == prime_filters_ms(view(d2)));

  // finite coincidence of the two filter classes, both brute-forced
  for (const FinLattice& l : small_lattices(8)) {
    CHECK(optimal_filters(view(l)) == prime_filters_ms(view(l)));
    // every filter is principal
    std::vector<Mask> expect;
    for (int x = 0; x < l.size(); ++x) expect.push_back(l.order.up[x]);
    std::sort(expect.begin(), expect.end());
    CHECK(all_ms_filters(view(l)) == expect);
  }

  CHECK_THROWS_AS((void)prime_filters_ms(view(make_m3())), std::invalid_argument);
  CHECK_THROWS_AS((void)pointed_spectrum(view(make_m3())), std::invalid_argument);
}

TEST_CASE("pointed spectra of small algebras") {
  PointedSpectrum s1 = pointed_spectrum(view(make_chain(1)));
  CHECK(s1.carrier == std::vector<Mask>{1});
  CHECK(s1.space.size() == 1);

  PointedSpectrum s2 = pointed_spectrum(view(make_chain(2)));
  CHECK(s2.carrier == std::vector<Mask>{2, 3});
  CHECK(s2.space.m == 1);
  CHECK(s2.space.x0 == bit(0));
  CHECK(s2.space.order.leq(0, 1));
  CHECK(s2.space.admissibles == std::vector<Mask>{2, 3});

  PointedSpectrum sd = pointed_spectrum(view(make_boolean(2)));
  CHECK(sd.carrier == std::vector<Mask>{10, 12, 15});
  CHECK(sd.space.m == 2);
  CHECK(sd.space.x0 == (bit(0) | bit(1)));
  CHECK_FALSE(sd.space.order.leq(0, 1));
  CHECK(sd.space.order.leq(0, 2));
  CHECK(sd.space.order.leq(1, 2));
  CHECK(sd.space.admissibles == std::vector<Mask>{4, 5, 6, 7});
  CHECK(spectrum_phi(sd, 0) == 4);
  CHECK(spectrum_phi(sd, 3) == 7);
  // the spectrum topology comes out discrete
  CHECK(sd.space.opens.size() == 8);

  for (const FinLattice& l : small_lattices(6)) {
    PointedSpectrum s = pointed_spectrum(view(l));
    Report rep = validate_pgps(s.space);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
    CHECK(validate_pges(s.space) == is_brouwerian_semilattice(view(l)));
  }
}

TEST_CASE("hand-built pointed spaces and the validator") {
  // the two-point chain pointed at the top, X0 the bottom point
  PointedGenSpace good = *PointedGenSpace::discrete(FinPoset::chain(2), bit(0), 1);
  CHECK(good.admissibles == std::vector<Mask>{2, 3});
  CHECK(validate_pges(good));

  // the same chain with empty X0: only the whole space is admissible, and
  // cofinality plus order determination fail
  PointedGenSpace empty0 = *PointedGenSpace::discrete(FinPoset::chain(2), 0, 1);
  CHECK(empty0.admissibles == std::vector<Mask>{3});
  Report rep = validate_pgps(empty0);
  CHECK_FALSE(rep.all_pass());
  for (const CheckLine& l : rep.lines) {
    if (l.id == "pgps.x0-cofinal-dense" || l.id == "pgps.order-determined")
      CHECK_FALSE(l.pass);
    if (l.id == "pgps.x0-characterization" || l.id == "pgps.pointed-priestley") CHECK(l.pass);
  }
  CHECK_FALSE(validate_pges(empty0));

  // an indiscrete topology breaks Priestley separation
  PointedGenSpace coarse = *PointedGenSpace::make(FinPoset::chain(2), bit(0), 1, {});
  CHECK(coarse.opens == std::vector<Mask>{0, 3});
  CHECK(coarse.topo_closure(bit(1)) == 3);
  CHECK(coarse.admissibles == std::vector<Mask>{3});
  Report crep = validate_pgps(coarse);
  for (const CheckLine& l : crep.lines)
    if (l.id == "pgps.pointed-priestley") CHECK_FALSE(l.pass);

  // malformed constructions are rejected
  CHECK_FALSE(PointedGenSpace::discrete(FinPoset::antichain(2), 0, 0).has_value());
  CHECK_FALSE(PointedGenSpace::discrete(FinPoset::chain(2), bit(1), 1).has_value());
  CHECK_FALSE(PointedGenSpace::discrete(FinPoset::chain(2), bit(0), 2).has_value());
}

TEST_CASE("e-clopen decomposition search") {
  PointedGenSpace x = pointed_spectrum(view(make_boolean(2))).space;
  CHECK(is_e_clopen(x, 0));
  CHECK(is_e_clopen(x, bit(0)));          // a non-upset singleton below m
  CHECK(is_e_clopen(x, bit(0) | bit(1)));
  // every admissible set contains m, so no set containing m decomposes
  CHECK_FALSE(is_e_clopen(x, bit(2)));
  for (Mask u : x.admissibles) {
    CHECK_FALSE(is_e_clopen(x, u));
    CHECK(is_e_clopen(x, u & ~bit(x.m)));
  }
}

TEST_CASE("generalized relations: identity, empty, duals of homs") {
  PointedSpectrum s2 = pointed_spectrum(view(make_chain(2)));
  GenRelation id2 = identity_relation(s2.space);
  CHECK(is_gp_morphism(id2));
  CHECK(is_ge_morphism(id2));

  // the literal diagonal is not a morphism: no admissible set omits m
  GenRelation diag{s2.space, s2.space, {bit(0), bit(1)}};
  Json w;
  CHECK_FALSE(is_gp_morphism(diag, &w));
  CHECK(w["condition"] == "separation");

  GenRelation none{s2.space, s2.space, {0, 0}};
  CHECK_FALSE(is_gp_morphism(none));

  // box of the admissible family under the empty relation is everything, so
  // the star composite with anything lands in the least admissible set
  GenRelation after_none = compose_star(none, id2);
  CHECK(after_none.rows == std::vector<Mask>{2, 2});

  // duals of meet-semilattice homs are generalized Priestley morphisms, and
  // the unit square box(φ(a)) = φ(h(a)) commutes
  for (const FinLattice& a : small_lattices(5))
    for (const FinLattice& b : small_lattices(5)) {
      PointedSpectrum sa = pointed_spectrum(view(a)), sb = pointed_spectrum(view(b));
      for (const AlgHom& h : all_ms_homs(a, b)) {
        GenRelation rh = r_of_hom(h, sb, sa);
        CHECK(is_gp_morphism(rh));
        for (int e = 0; e < a.size(); ++e)
          CHECK(box_r(rh, spectrum_phi(sa, e)) == spectrum_phi(sb, h.map[e]));
      }
    }
}

TEST_CASE("esakia relations match implication-preserving homs") {
  std::vector<FinLattice> pool = small_lattices(5);
  int ge_count = 0, non_ge = 0;
  for (const FinLattice& a : pool)
    for (const FinLattice& b : pool) {
      PointedSpectrum sa = pointed_spectrum(view(a)), sb = pointed_spectrum(view(b));
      for (const AlgHom& h : all_ms_homs(a, b)) {
        GenRelation rh = r_of_hom(h, sb, sa);
        bool ge = is_ge_morphism(rh);
        CHECK(ge == is_brw_semilattice_hom(h));
        (ge ? ge_count : non_ge)++;
      }
    }
  CHECK(ge_count > 50);
  CHECK(non_ge > 50);
}

TEST_CASE("star composition: functoriality, associativity, box") {
  std::vector<FinLattice> pool = {make_chain(2), make_chain(3), make_boolean(2)};
  std::vector<PointedSpectrum> specs;
  for (const FinLattice& l : pool) specs.push_back(pointed_spectrum(view(l)));
  for (std::size_t ia = 0; ia < pool.size(); ++ia)
    for (std::size_t ib = 0; ib < pool.size(); ++ib)
      for (std::size_t ic = 0; ic < pool.size(); ++ic)
        for (const AlgHom& h : all_ms_homs(pool[ia], pool[ib]))
          for (const AlgHom& g : all_ms_homs(pool[ib], pool[ic])) {
            GenRelation rh = r_of_hom(h, specs[ib], specs[ia]);
            GenRelation rg = r_of_hom(g, specs[ic], specs[ib]);
            GenRelation comp = compose_star(rh, rg);
            std::vector<int> gh(pool[ia].size());
            for (int e = 0; e < pool[ia].size(); ++e) gh[e] = g.map[h.map[e]];
            GenRelation direct =
                r_of_hom(AlgHom{pool[ia], pool[ic], gh}, specs[ic], specs[ia]);
            CHECK(comp.rows == direct.rows);
            for (Mask u : comp.cod.admissibles)
              CHECK(box_r(comp, u) == box_r(rg, box_r(rh, u)));
            // identities are neutral
            CHECK(compose_star(identity_relation(comp.cod), comp).rows == comp.rows);
            CHECK(compose_star(comp, identity_relation(comp.dom)).rows == comp.rows);
          }

  // associativity on a chain of three dual relations
  FinLattice c2 = pool[0], c3 = pool[1], d2 = pool[2];
  for (const AlgHom& h : all_ms_homs(c2, c3))
    for (const AlgHom& g : all_ms_homs(c3, d2))
      for (const AlgHom& k : all_ms_homs(d2, c2)) {
        GenRelation rh = r_of_hom(h, specs[1], specs[0]);
        GenRelation rg = r_of_hom(g, specs[2], specs[1]);
        GenRelation rk = r_of_hom(k, specs[0], specs[2]);
        CHECK(compose_star(rh, compose_star(rg, rk)).rows ==
              compose_star(compose_star(rh, rg), rk).rows);
      }
}

TEST_CASE("dms-p homs and their filter-frame images") {
  FinLattice c2 = make_chain(2), c3 = make_chain(3);
  AlgHom up{c2, c3, {1, 2}};  // bottom to the middle element
  Json w;
  CHECK(is_ms_hom(up));
  CHECK_FALSE(is_dms_p(up, &w));  // the preimage of ↑a is the improper filter
  CHECK(w["op"] == "prime-preimage");

  // the equivalence with algebraic frames: h is admissible exactly when its
  // filter image is a frame homomorphism
  for (const FinLattice& a : small_lattices(4))
    for (const FinLattice& b : small_lattices(4)) {
      FilterFrame fa = filter_frame(view(a)), fb = filter_frame(view(b));
      for (const AlgHom& h : all_ms_homs(a, b))
        CHECK(is_dms_p(h) == is_dl_hom(f_of_hom(h, fa, fb)));
    }

  // filter images compose
  FilterFrame f2 = filter_frame(view(c2)), f3 = filter_frame(view(c3));
  for (const AlgHom& h : all_ms_homs(c2, c3))
    for (const AlgHom& g : all_ms_homs(c3, c2)) {
      AlgHom fh = f_of_hom(h, f2, f3), fg = f_of_hom(g, f3, f2);
      std::vector<int> gh(c2.size());
      for (int e = 0; e < c2.size(); ++e) gh[e] = g.map[h.map[e]];
      AlgHom direct = f_of_hom(AlgHom{c2, c2, gh}, f2, f2);
      for (int i = 0; i < f2.frame.size(); ++i)
        CHECK(fg.map[fh.map[i]] == direct.map[i]);
    }
}

TEST_CASE("point maps between pointed spaces") {
  PointedGenSpace sd = pointed_spectrum(view(make_boolean(2))).space;
  SpaceMap idm{sd, sd, {0, 1, 2}};
  CHECK(is_pgps_p_map(idm));
  CHECK(is_pges_p_map(idm));
  CHECK(is_pes_p_map(idm));

  // collapsing a chain onto a point moves X0 into the maximum fiber
  PointedGenSpace two = *PointedGenSpace::discrete(FinPoset::chain(2), bit(0), 1);
  PointedGenSpace one = *PointedGenSpace::discrete(FinPoset::chain(1), 0, 0);
  SpaceMap collapse{two, one, {0, 0}};
  Json w;
  CHECK_FALSE(is_pes_p_map(collapse, &w));
  CHECK(w["condition"] == "maximum-fiber");
  CHECK_FALSE(is_pges_p_map(collapse));

  // with X0 = X∖{m} the pointed-Esakia maps are exactly the generalized ones
  std::vector<PointedGenSpace> spaces;
  for (int n = 1; n <= 3; ++n)
    for (const FinPoset& p : enumerate_posets(n)) {
      int m = -1;
      for (int i = 0; i < p.n; ++i)
        if (p.down[i] == full_mask(p.n)) m = i;
      if (m < 0) continue;
      spaces.push_back(*PointedGenSpace::discrete(p, full_mask(p.n) & ~bit(m), m));
    }
  for (const PointedGenSpace& dx : spaces) {
    REQUIRE(validate_pges(dx));
    for (const PointedGenSpace& cx : spaces) {
      std::vector<int> m(dx.size(), 0);
      for (;;) {
        SpaceMap f{dx, cx, m};
        CHECK(is_pes_p_map(f) == is_pges_p_map(f));
        int i = 0;
        for (; i < dx.size(); ++i) {
          if (++m[i] < cx.size()) break;
          m[i] = 0;
        }
        if (i == dx.size()) break;
      }
    }
  }

  // generalized Esakia maps are the ones whose preimage preserves implication
  std::vector<FinLattice> pool = {make_chain(2), make_chain(3), make_boolean(2)};
  for (const FinLattice& a : pool)
    for (const FinLattice& b : pool) {
      PointedGenSpace dx = pointed_spectrum(view(a)).space;
      PointedGenSpace cx = pointed_spectrum(view(b)).space;
      FinLattice la = admissible_lattice(dx), lc = admissible_lattice(cx);
      std::vector<int> m(dx.size(), 0);
      for (;;) {
        SpaceMap f{dx, cx, m};
        if (is_pgps_p_map(f)) {
          bool imp = true;
          for (std::size_t iu = 0; iu < cx.admissibles.size(); ++iu)
            for (std::size_t iv = 0; iv < cx.admissibles.size(); ++iv) {
              Mask u = cx.admissibles[iu], v = cx.admissibles[iv];
              auto uv = heyting_implication(lc, static_cast<int>(iu), static_cast<int>(iv));
              REQUIRE(uv.has_value());
              auto puv = heyting_implication(la, adm_index(dx, map_preimage(f, u)),
                                             adm_index(dx, map_preimage(f, v)));
              REQUIRE(puv.has_value());
              if (map_preimage(f, cx.admissibles[*uv]) != dx.admissibles[*puv]) imp = false;
            }
          CHECK(is_pges_p_map(f) == imp);
        }
        int i = 0;
        for (; i < dx.size(); ++i) {
          if (++m[i] < cx.size()) break;
          m[i] = 0;
        }
        if (i == dx.size()) break;
      }
    }
}

TEST_CASE("filter frames and compact duals") {
  FilterFrame fd = filter_frame(view(make_boolean(2)));
  CHECK(fd.filters == std::vector<Mask>{8, 10, 12, 15});
  CHECK(fd.frame.size() == 4);
  FilterFrame f2 = filter_frame(view(make_chain(2)));
  CHECK(f2.filters.size() == 2);

  for (const FinLattice& l : small_lattices(6)) {
    FilterFrame ff = filter_frame(view(l));
    // the frame of filters is the order dual of the algebra
    CHECK(find_lattice_isomorphism(ff.frame, dual_lattice(l)).has_value());
    AlgHom idh{l, l, {}};
    for (int i = 0; i < l.size(); ++i) idh.map.push_back(i);
    AlgHom fid = f_of_hom(idh, ff, ff);
    for (int i = 0; i < ff.frame.size(); ++i) CHECK(fid.map[i] == i);
  }
}

TEST_CASE("frame elements: prime, pseudoprime, pseudopoints, y-space") {
  FrameView c3 = *frame_view(make_chain(3));
  CHECK(prime_elements(c3) == std::vector<int>{0, 1});
  CHECK(pseudoprime_elements(c3) == std::vector<int>{0, 1});
  CHECK(pseudopoints(c3) == std::vector<Mask>{4, 6});

  for (const FinLattice& l : small_lattices(8)) {
    FrameView fv = *frame_view(l);
    std::vector<int> pp = pseudoprime_elements(fv);
    CHECK(pp == prime_elements(fv));  // finite scale: way-below is order
    // pseudopoints are the complements of the downsets of pseudoprimes
    std::vector<Mask> expect;
    for (int p : pp) expect.push_back(full_mask(l.size()) & ~l.order.down[p]);
    std::sort(expect.begin(), expect.end());
    CHECK(pseudopoints(fv) == expect);
  }

  YSpace y1 = y_space(*frame_view(make_chain(1)));
  CHECK(y1.carrier == std::vector<int>{0});
  YSpace y3 = y_space(c3);
  CHECK(y3.carrier == std::vector<int>{0, 1, 2});
  CHECK(y3.space.m == 2);
  CHECK(y3.space.x0 == (bit(0) | bit(1)));
  CHECK(validate_pges(y3.space));
}

TEST_CASE("brouwerian frame predicates and morphisms") {
  for (const FinLattice& l : small_lattices(8)) {
    FrameView fv = *frame_view(l);
    CHECK(is_brouwerian_frame(fv));
    CHECK(is_arithmetic(fv));
  }

  // a frame map that collapses the middle of a chain loses the dual
  // implication
  AlgHom drop{make_chain(3), make_chain(2), {0, 1, 1}};
  CHECK(is_dl_hom(drop));
  Json w;
  CHECK_FALSE(is_brwfrm_morphism(drop, &w));
  CHECK(w["op"] == "dual-implication");

  // filter images of implication-preserving admissible homs are exactly the
  // Brouwerian frame morphisms
  for (const FinLattice& a : small_lattices(4))
    for (const FinLattice& b : small_lattices(4)) {
      FilterFrame fa = filter_frame(view(a)), fb = filter_frame(view(b));
      for (const AlgHom& h : all_ms_homs(a, b)) {
        if (!is_dms_p(h)) continue;
        CHECK(is_brwfrm_morphism(f_of_hom(h, fa, fb)) == is_brw_semilattice_hom(h));
      }
    }
}

TEST_CASE("right adjoints of join-preserving maps") {
  for (const FinLattice& a : small_lattices(5))
    for (const FinLattice& b : small_lattices(5))
      for (const AlgHom& h : all_dl_homs(a, b)) {
        std::vector<int> r = right_adjoint(h);
        for (int x = 0; x < a.size(); ++x)
          for (int y = 0; y < b.size(); ++y)
            CHECK(b.leq(h.map[x], y) == a.leq(x, r[y]));
      }
}

TEST_CASE("triangle checks across enumerated algebras") {
  for (const FinLattice& l : small_lattices(8)) {
    Report rep = check_triangle_brw(view(l));
    INFO("size ", l.size(), "\n", rep.to_text());
    CHECK(rep.all_pass());
  }
}
