#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duality/fanspace.hpp"
#include "duality/report.hpp"

namespace duality {

// Maps between fan spaces and their place in the morphism hierarchy:
// Priestley maps, Esakia (p-)morphisms, the two spectral-closure classes, and
// their intersection.  Universally quantified set conditions are decided over
// finite shape families; exception indices range over the map's structural
// indices plus enough consecutive fresh ones to hit every residue class of
// every affine embedding, beyond which membership behaves uniformly.

enum class TailMapKind { Const, Embed };

// behaviour of one domain tail: constant, or affine embedding n ↦ a·n+b into
// a codomain tail; finitely many indices may be overridden
struct TailMap {
  TailMapKind kind = TailMapKind::Const;
  FanPoint target;                                  // Const
  int cod_tail = 0;                                 // Embed
  int a = 1, b = 0;                                 // Embed: n ↦ a·n+b, a ≥ 1
  std::vector<std::pair<int, FanPoint>> overrides;  // sorted by index
};

struct FanMap {
  FanSpace dom, cod;
  std::vector<FanPoint> named;  // image of each dom skeleton point
  std::vector<TailMap> tails;   // one per dom tail

  // rejects out-of-range or excluded targets, duplicate or excluded override
  // indices, a < 1, and affine images hitting excluded codomain indices
  // without an override
  static std::optional<FanMap> make(FanSpace dom, FanSpace cod, std::vector<FanPoint> named,
                                    std::vector<TailMap> tails, std::string* err = nullptr);
};

FanPoint apply(const FanMap& f, const FanPoint& p);

// exact preimage of a definable set
DefinableSet preimage(const FanMap& f, const DefinableSet& d);

// largest index the map or either space mentions; fresh indices start above
int map_bound(const FanMap& f);

struct Verdict {
  bool es_minus = false, es = false, es_plus = false, es_star = false, es_dagger = false;
  Json witnesses;  // evaluable witness per failed class
};

// continuity plus order preservation
bool is_es_minus(const FanMap& f, Json* witness = nullptr);
// ↓f⁻¹(y) = f⁻¹(↓y); bites only at skeleton y since tail points are minimal
bool is_es(const FanMap& f, Json* witness = nullptr, int depth = 1);
// f⁻¹(↓cl E) = ↓cl f⁻¹(E) over differences of definable open upsets
bool is_es_plus(const FanMap& f, Json* witness = nullptr, int depth = 1);
// same equation over definable downsets
bool is_es_star(const FanMap& f, Json* witness = nullptr, int depth = 1);
// image of every definable open upset is an open upset
bool is_spectral_open(const FanMap& f, Json* witness = nullptr, int depth = 1);

// all five flags; gated on es_minus, dagger = plus ∧ star, and the containment
// of the plus class in the p-morphism class is asserted, never assumed
Verdict classify(const FanMap& f, int depth = 1);

// cross-validates the classifier against the preimage frame map f⁻¹: the
// p-morphism flag against implication of clopen upsets, the plus flag against
// implication of open upsets, the star flag against the materializable
// infinite meets of open upsets
Report preimage_hom_check(const FanMap& f, int depth = 1);

// bundled maps exercising every class combination
FanMap fan_map_f1();  // two-chain onto its bottom
FanMap fan_map_f2();  // two-point compactification onto the one-point one
FanMap fan_map_f3();  // two-chain into the ordered fan
FanMap fan_map_f4();  // singleton onto the fan's top

}  // namespace duality
