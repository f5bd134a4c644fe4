#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "duality/algebra.hpp"
#include "duality/brouwerian.hpp"
#include "duality/classify.hpp"
#include "duality/fanspace.hpp"
#include "duality/poset.hpp"
#include "duality/report.hpp"

namespace duality {

// Structure files are JSON objects dispatched on a "kind" field.  Loaders
// validate the exact field set and every index; defects raise IoError with
// the structure path, parse errors with line and column.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

Json load_json_file(const std::string& path);

// stable text form: two-space indent, sorted keys, trailing newline
std::string canonical_text(const Json& j);

// {"kind":"poset","size":n,"leq":[[i,j],...]} — the emitted pairs are the
// covers; the loader closes transitively and rejects antisymmetry violations
Json poset_to_json(const FinPoset& p);
FinPoset poset_from_json(const Json& j);

// {"kind":"lattice","poset":...} — order tables are derived on load
Json lattice_to_json(const FinLattice& l);
FinLattice lattice_from_json(const Json& j);

// {"kind":"hom","dom":...,"cod":...,"map":[...]} — shape only; whether the
// map is a homomorphism of any flavour is the predicates' business
Json hom_to_json(const AlgHom& h);
AlgHom hom_from_json(const Json& j);

// {"kind":"fanspace","skeleton":...,"tags":[...],"tails":[{"limit":i,
//  "below":[...],"excluded":[...]}]} — tags lists the limit points
Json fanspace_to_json(const FanSpace& x);
FanSpace fanspace_from_json(const Json& j);

// {"named":[...],"tails":[{"mode":"FIN"|"COFIN","exceptions":[...]}]} —
// needs the space for arity and canonical form
Json defset_to_json(const DefinableSet& d);
DefinableSet defset_from_json(const Json& j, const FanSpace& x);

// {"kind":"fanmap","dom":...,"cod":...,"named":[point...],"tails":[...]}
// with constant tails {"kind":"const","target":p,"overrides":[...]} and
// affine ones {"kind":"embed","tail":t,"a":a,"b":b,"overrides":[...]}
Json fanmap_to_json(const FanMap& f);
FanMap fanmap_from_json(const Json& j);

// {"kind":"relation","pairs":[[x,y],...]} — the two spaces travel separately
Json relation_to_json(const GenRelation& r);
GenRelation relation_from_json(const Json& j, PointedGenSpace dom, PointedGenSpace cod);

}  // namespace duality
