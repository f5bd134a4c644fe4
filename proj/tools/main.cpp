// Command-line front end: load structure files, run checks, dualize,
// classify, enumerate, replicate the bundled example table.  All output is
// deterministic: same inputs and options give byte-identical reports.
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "duality/brouwerian.hpp"
#include "duality/classify.hpp"
#include "duality/finduality.hpp"
#include "duality/io.hpp"

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

int print_report(const Report& rep, const std::string& format) {
  if (format == "json") {
    Json out{{"checks", rep.to_json()}, {"overall", rep.all_pass() ? "PASS" : "FAIL"}};
    std::cout << canonical_text(out);
  } else {
    std::cout << rep.to_text();
    std::cout << "overall " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

MeetSemilatticeView view_of(const FinLattice& l) { return MeetSemilatticeView{l}; }

int run_check(const std::string& fanspace_path, const std::string& brouwerian_path, int depth,
              const std::string& format) {
  if (fanspace_path.empty() == brouwerian_path.empty()) {
    std::cerr << "check needs exactly one of --fanspace or --brouwerian\n";
    return 2;
  }
  if (!fanspace_path.empty()) {
    FanSpace x = fanspace_from_json(load_json_file(fanspace_path));
    SpaceVerdict v = validate_space(x, depth);
    return print_report(v.detail, format);
  }
  FinLattice a = lattice_from_json(load_json_file(brouwerian_path));
  return print_report(check_triangle_brw(view_of(a)), format);
}

int run_dualize(const std::string& path, const std::string& mode) {
  Json j = load_json_file(path);
  if (mode == "pf")
    std::cout << canonical_text(poset_to_json(prime_filters(lattice_from_json(j)).order));
  else if (mode == "clopup")
    std::cout << canonical_text(lattice_to_json(clopup(poset_from_json(j)).lat));
  else if (mode == "joinirr") {
    FinLattice l = lattice_from_json(j);
    std::vector<int> irr = mask_to_list(join_irreducibles(l.order));
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t k = 0; k < irr.size(); ++k)
        if (i != k && l.leq(irr[i], irr[k])) pairs.emplace_back(static_cast<int>(i),
                                                                static_cast<int>(k));
    std::cout << canonical_text(
        poset_to_json(*FinPoset::from_pairs(static_cast<int>(irr.size()), pairs)));
  } else if (mode == "ideals")
    std::cout << canonical_text(lattice_to_json(ideal_frame(lattice_from_json(j)).frame));
  else if (mode == "filters")
    std::cout << canonical_text(
        lattice_to_json(filter_frame(view_of(lattice_from_json(j))).frame));
  else if (mode == "spectrum")
    std::cout << canonical_text(
        poset_to_json(pointed_spectrum(view_of(lattice_from_json(j))).space.order));
  else if (mode == "admissible")
    std::cout << canonical_text(lattice_to_json(
        admissible_lattice(pointed_spectrum(view_of(lattice_from_json(j))).space)));
  return 0;
}

Json verdict_to_json(const Verdict& v, bool spectral) {
  return Json{{"es-minus", v.es_minus},   {"es", v.es},
              {"es-plus", v.es_plus},     {"es-star", v.es_star},
              {"es-dagger", v.es_dagger}, {"spectral-open", spectral}};
}

int run_classify(const std::string& path, int depth, bool verify, const std::string& format) {
  FanMap f = fanmap_from_json(load_json_file(path));
  Verdict v = classify(f, depth);
  Json flags = verdict_to_json(v, is_spectral_open(f, nullptr, depth));
  if (format == "json") {
    Json out{{"flags", flags}, {"witnesses", v.witnesses}};
    if (verify) out["verify"] = preimage_hom_check(f, depth).to_json();
    std::cout << canonical_text(out);
    if (verify && !preimage_hom_check(f, depth).all_pass()) return 1;
    return 0;
  }
  for (const auto& item : flags.items())
    std::cout << item.key() << " " << (item.value().get<bool>() ? "yes" : "no") << "\n";
  if (!v.witnesses.empty()) std::cout << "witnesses " << v.witnesses.dump() << "\n";
  if (verify) {
    Report rep = preimage_hom_check(f, depth);
    std::cout << rep.to_text();
    if (!rep.all_pass()) return 1;
  }
  return 0;
}

// lean random fan maps over the bundled spaces for the fuzz section
std::vector<FanSpace> fuzz_pool() {
  std::vector<FanSpace> pool = {space_x1(), space_x2(), space_x3(), space_x4(),
                                embed_finite_poset(FinPoset::chain(3))};
  pool.push_back(*FanSpace::make(FinPoset::antichain(1), bit(0),
                                 {Tail{0, bit(0), {}}, Tail{0, bit(0), {}}}));
  return pool;
}

FanPoint random_point(Rng& rng, const FanSpace& x) {
  if (x.tail_count() == 0 || rng.below(5) < 3) return FanPoint::sk(rng.below(x.skeleton.n));
  return FanPoint::gen(rng.below(x.tail_count()), rng.below(5));
}

FanMap random_map(Rng& rng, const std::vector<FanSpace>& pool) {
  for (;;) {
    const FanSpace& dom = pool[rng.below(static_cast<int>(pool.size()))];
    const FanSpace& cod = pool[rng.below(static_cast<int>(pool.size()))];
    std::vector<FanPoint> named(dom.skeleton.n);
    for (FanPoint& q : named) q = random_point(rng, cod);
    std::vector<TailMap> tails(dom.tail_count());
    for (int t = 0; t < dom.tail_count(); ++t) {
      TailMap& tm = tails[t];
      if (cod.tail_count() == 0 || rng.below(3) == 0) {
        tm.kind = TailMapKind::Const;
        tm.target = random_point(rng, cod);
      } else {
        tm.kind = TailMapKind::Embed;
        tm.cod_tail = rng.below(cod.tail_count());
        tm.a = 1 + rng.below(3);
        tm.b = rng.below(3);
      }
      if (rng.below(4) == 0) tm.overrides.push_back({rng.below(6), random_point(rng, cod)});
    }
    if (rng.below(4) != 0)
      for (int t = 0; t < dom.tail_count(); ++t)
        named[dom.tails[t].limit] = tails[t].kind == TailMapKind::Const
                                        ? tails[t].target
                                        : FanPoint::sk(cod.tails[tails[t].cod_tail].limit);
    std::optional<FanMap> f = FanMap::make(dom, cod, named, tails);
    if (f) return *f;
  }
}

int run_roundtrip(bool brw, int max_size, std::uint64_t seed, const std::string& format) {
  Report rep;
  if (brw) {
    int fsize = std::min(max_size, 8);
    int count = 0;
    bool ok = true;
    Json first;
    for (const FinPoset& p : birkhoff_posets(fsize)) {
      FinLattice l = downset_lattice(p);
      ++count;
      if (ok && optimal_filters(view_of(l)) != prime_filters_ms(view_of(l))) {
        ok = false;
        first = lattice_to_json(l);
      }
    }
    rep.add("filters.optimal-equals-prime", ok, Json{{"algebras", count}});

    count = 0;
    ok = true;
    for (const FinPoset& p : birkhoff_posets(std::min(max_size, 8))) {
      FinLattice l = downset_lattice(p);
      ++count;
      Report tri = check_triangle_brw(view_of(l));
      if (ok && !tri.all_pass()) {
        ok = false;
        first = tri.to_json();
      }
    }
    rep.add("triangle.brw", ok, ok ? Json{{"algebras", count}} : first);

    std::vector<FinLattice> pool;
    for (const FinPoset& p : birkhoff_posets(std::min(max_size, 4)))
      pool.push_back(downset_lattice(p));
    std::vector<PointedSpectrum> specs;
    for (const FinLattice& l : pool) specs.push_back(pointed_spectrum(view_of(l)));
    int homs = 0;
    ok = true;
    for (std::size_t ia = 0; ia < pool.size() && ok; ++ia)
      for (std::size_t ib = 0; ib < pool.size() && ok; ++ib)
        for (std::size_t ic = 0; ic < pool.size() && ok; ++ic)
          for (const std::vector<int>& hm : monotone_maps(pool[ia].order, pool[ib].order)) {
            AlgHom h{pool[ia], pool[ib], hm};
            if (!is_ms_hom(h)) continue;
            GenRelation rh = r_of_hom(h, specs[ib], specs[ia]);
            for (const std::vector<int>& gm : monotone_maps(pool[ib].order, pool[ic].order)) {
              AlgHom g{pool[ib], pool[ic], gm};
              if (!is_ms_hom(g)) continue;
              ++homs;
              GenRelation rg = r_of_hom(g, specs[ic], specs[ib]);
              GenRelation comp = compose_star(rh, rg);
              std::vector<int> ghm(pool[ia].size());
              for (int e = 0; e < pool[ia].size(); ++e) ghm[e] = g.map[h.map[e]];
              GenRelation direct =
                  r_of_hom(AlgHom{pool[ia], pool[ic], ghm}, specs[ic], specs[ia]);
              if (comp.rows != direct.rows) ok = false;
              for (Mask u : comp.cod.admissibles)
                if (box_r(comp, u) != box_r(rg, box_r(rh, u))) ok = false;
              if (!ok) break;
            }
            if (!ok) break;
          }
    rep.add("relations.star-functorial", ok, Json{{"compositions", homs}});

    count = 0;
    ok = true;
    for (const FinPoset& p : birkhoff_posets(std::min(max_size, 8))) {
      FrameView fv = *frame_view(downset_lattice(p));
      ++count;
      if (pseudoprime_elements(fv) != prime_elements(fv)) ok = false;
    }
    rep.add("frames.pseudoprime-equals-prime", ok, Json{{"frames", count}});
    return print_report(rep, format);
  }

  // downset lattices double per extra point; size 4 keeps the frame views in
  // range and is already the exhaustive tier
  int lattices = 0;
  bool ok = true;
  Json first;
  for (int n = 1; n <= std::min(max_size, 4); ++n)
    for (const FinPoset& p : enumerate_posets(n)) {
      ++lattices;
      Report tri = check_triangle_dl(downset_lattice(p));
      if (ok && !tri.all_pass()) {
        ok = false;
        first = tri.to_json();
      }
    }
  rep.add("triangle.dl", ok, ok ? Json{{"lattices", lattices}} : first);

  std::vector<FinLattice> pool;
  for (int n = 1; n <= std::min(max_size, 3); ++n)
    for (const FinPoset& p : enumerate_posets(n)) pool.push_back(downset_lattice(p));
  int homs = 0;
  ok = true;
  for (const FinLattice& a : pool)
    for (const FinLattice& b : pool)
      for (const AlgHom& h : all_dl_homs(a, b)) {
        ++homs;
        Report nat = check_naturality_dl(h);
        if (ok && !nat.all_pass()) {
          ok = false;
          first = nat.to_json();
        }
      }
  rep.add("naturality.dl", ok, ok ? Json{{"homs", homs}} : first);

  Rng rng(seed);
  std::vector<FanSpace> spaces = fuzz_pool();
  int maps = 40 * std::max(1, max_size);
  bool contain = true, routes = true;
  int route_maps = 0;
  for (int i = 0; i < maps; ++i) {
    FanMap f = random_map(rng, spaces);
    Verdict v = classify(f);
    if ((v.es_plus && !v.es) || (v.es && !v.es_minus) || (v.es_star && !v.es_minus) ||
        (v.es_dagger != (v.es_plus && v.es_star)))
      contain = false;
    if (v.es_minus && route_maps < std::max(10, maps / 8)) {
      ++route_maps;
      if (!preimage_hom_check(f).all_pass()) routes = false;
    }
  }
  rep.add("classifier.containments", contain, Json{{"maps", maps}, {"seed", seed}});
  rep.add("classifier.preimage-routes", routes, Json{{"maps", route_maps}, {"seed", seed}});
  return print_report(rep, format);
}

int run_enumerate(const std::string& kind, int n) {
  if (kind == "posets") {
    if (n < 1 || n > 6) {
      std::cerr << "poset enumeration supports 1 <= n <= 6\n";
      return 2;
    }
    std::vector<FinPoset> all = enumerate_posets(n);
    std::sort(all.begin(), all.end(),
              [](const FinPoset& a, const FinPoset& b) {
                return canonical_key(a) < canonical_key(b);
              });
    for (const FinPoset& p : all) std::cout << poset_to_json(p).dump() << "\n";
    return 0;
  }
  if (kind == "lattices") {
    if (n < 1 || n > 12) {
      std::cerr << "distributive lattice enumeration supports 1 <= n <= 12\n";
      return 2;
    }
    std::vector<FinLattice> out;
    for (const FinPoset& p : birkhoff_posets(n)) {
      FinLattice l = downset_lattice(p);
      if (l.size() == n) out.push_back(std::move(l));
    }
    std::sort(out.begin(), out.end(), [](const FinLattice& a, const FinLattice& b) {
      return canonical_key(a.order) < canonical_key(b.order);
    });
    for (const FinLattice& l : out) std::cout << lattice_to_json(l).dump() << "\n";
    return 0;
  }
  std::cerr << "unknown enumeration kind \"" << kind << "\" (posets, lattices)\n";
  return 2;
}

int run_replicate(int depth, bool verify, const std::string& format) {
  struct Row {
    const char* name;
    FanMap map;
    bool flags[6];  // es-minus, es, es-plus, es-star, es-dagger, spectral-open
  };
  std::vector<Row> rows;
  rows.push_back({"f1", fan_map_f1(), {true, false, false, true, false, false}});
  rows.push_back({"f2", fan_map_f2(), {true, true, false, false, false, false}});
  rows.push_back({"f3", fan_map_f3(), {true, true, true, false, false, false}});
  rows.push_back({"f4", fan_map_f4(), {true, true, true, false, false, false}});
  Report rep;
  for (const Row& r : rows) {
    Verdict v = classify(r.map, depth);
    Json got = verdict_to_json(v, is_spectral_open(r.map, nullptr, depth));
    Json want{{"es-minus", r.flags[0]},   {"es", r.flags[1]},
              {"es-plus", r.flags[2]},    {"es-star", r.flags[3]},
              {"es-dagger", r.flags[4]},  {"spectral-open", r.flags[5]}};
    rep.add(std::string("replicate.") + r.name, got == want,
            Json{{"computed", got}, {"expected", want}});
    if (verify)
      rep.merge(preimage_hom_check(r.map, depth), std::string(r.name) + ".");
  }
  return print_report(rep, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite duality workbench"};
  app.require_subcommand(1);
  std::string format = "text";

  std::string fanspace_path, brouwerian_path;
  int depth = 1;
  CLI::App* check = app.add_subcommand("check", "validate a structure file");
  check->add_option("--fanspace", fanspace_path, "fan space file");
  check->add_option("--brouwerian", brouwerian_path, "algebra file for the pointed spectrum");
  check->add_option("--basis-depth", depth, "extra fresh indices for set families");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string dual_input;
  bool pf = false, clopup_f = false, joinirr = false, ideals = false, filters = false,
       spectrum = false, admissible = false;
  CLI::App* dualize = app.add_subcommand("dualize", "emit the dual of a structure");
  dualize->add_option("input", dual_input, "structure file")->required();
  dualize->add_flag("--pf", pf, "lattice -> poset of prime filters");
  dualize->add_flag("--clopup", clopup_f, "poset -> lattice of clopen upsets");
  dualize->add_flag("--joinirr", joinirr, "lattice -> poset of join-irreducibles");
  dualize->add_flag("--ideals", ideals, "lattice -> frame of ideals");
  dualize->add_flag("--filters", filters, "semilattice -> frame of filters");
  dualize->add_flag("--spectrum", spectrum, "semilattice -> pointed spectrum order");
  dualize->add_flag("--admissible", admissible, "semilattice -> admissible sets of the spectrum");

  std::string map_path;
  bool verify = false;
  CLI::App* classify_cmd = app.add_subcommand("classify", "place a fan map in the hierarchy");
  classify_cmd->add_option("--map", map_path, "fan map file")->required();
  classify_cmd->add_option("--basis-depth", depth, "extra fresh indices for set families");
  classify_cmd->add_flag("--verify-witnesses", verify, "re-check flags through the preimage");
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  bool brw = false;
  int max_size = 4;
  std::uint64_t seed = 1;
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "run the invariant suites");
  roundtrip->add_flag("--brw", brw, "run the Brouwerian suites instead");
  roundtrip->add_option("--max-size", max_size, "bound on enumerated structures")
      ->check(CLI::Range(1, 8));
  roundtrip->add_option("--seed", seed, "seed for the fuzz section");
  roundtrip->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string enum_kind;
  int enum_n = 1;
  CLI::App* enumerate = app.add_subcommand("enumerate", "stream canonical structure files");
  enumerate->add_option("kind", enum_kind, "posets or lattices")->required();
  enumerate->add_option("n", enum_n, "exact size")->required();

  CLI::App* replicate = app.add_subcommand("replicate-paper", "diff the bundled example table");
  replicate->add_option("--basis-depth", depth, "extra fresh indices for set families");
  replicate->add_flag("--verify-witnesses", verify, "re-check flags through the preimage");
  replicate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
    if (check->parsed()) return run_check(fanspace_path, brouwerian_path, depth, format);
    if (dualize->parsed()) {
      int picked = pf + clopup_f + joinirr + ideals + filters + spectrum + admissible;
      if (picked != 1) {
        std::cerr << "dualize needs exactly one of --pf --clopup --joinirr --ideals "
                     "--filters --spectrum --admissible\n";
        return 2;
      }
      std::string mode = pf          ? "pf"
                         : clopup_f  ? "clopup"
                         : joinirr   ? "joinirr"
                         : ideals    ? "ideals"
                         : filters   ? "filters"
                         : spectrum  ? "spectrum"
                                     : "admissible";
      return run_dualize(dual_input, mode);
    }
    if (classify_cmd->parsed()) return run_classify(map_path, depth, verify, format);
    if (roundtrip->parsed()) return run_roundtrip(brw, max_size, seed, format);
    if (enumerate->parsed()) return run_enumerate(enum_kind, enum_n);
    if (replicate->parsed()) return run_replicate(depth, verify, format);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
