#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duality/poset.hpp"
#include "duality/report.hpp"

namespace duality {

// One countable tail of isolated points converging to `limit`.  Generic tail
// points sit strictly below every skeleton point in `below` (an upset) and are
// otherwise incomparable; `excluded` indices simply do not exist in the tail
// (materialize them as skeleton points to give them extra structure).
struct Tail {
  int limit = -1;
  Mask below = 0;
  std::vector<int> excluded;
};

// Finite skeleton poset, some points tagged as limits, plus tails.  Topology:
// skeleton non-limits and all tail points are isolated; basic neighbourhoods
// of a limit contain cofinitely many points of each of its tails.
struct FanSpace {
  FinPoset skeleton;
  Mask limits = 0;
  std::vector<Tail> tails;

  int tail_count() const { return static_cast<int>(tails.size()); }
  // largest tail index mentioned anywhere (excluded sets); -1 if none
  int bound() const;

  static std::optional<FanSpace> make(const FinPoset& skeleton, Mask limits,
                                      std::vector<Tail> tails, std::string* err = nullptr);
};

// skeleton point (tail = -1) or generic tail point (tail, index)
struct FanPoint {
  int skeleton = -1;
  int tail = -1;
  long long index = 0;

  static FanPoint sk(int s) { return {s, -1, 0}; }
  static FanPoint gen(int t, long long n) { return {-1, t, n}; }
  bool operator==(const FanPoint& o) const = default;
};

enum class TailMode { FIN, COFIN };

// FIN: the tail trace IS `exceptions`; COFIN: the trace is the tail minus
// `exceptions`.  Exceptions are sorted, unique, disjoint from `excluded`.
struct TailTrace {
  TailMode mode = TailMode::FIN;
  std::vector<int> exceptions;

  bool operator==(const TailTrace& o) const = default;
};

// named skeleton part plus one trace per tail; canonical after canon_set
struct DefinableSet {
  Mask named = 0;
  std::vector<TailTrace> tails;

  bool operator==(const DefinableSet& o) const = default;
};

DefinableSet canon_set(const FanSpace& x, DefinableSet d);
DefinableSet empty_set(const FanSpace& x);
DefinableSet whole_set(const FanSpace& x);
DefinableSet named_only(const FanSpace& x, Mask named);

bool valid_set(const FanSpace& x, const DefinableSet& d);

bool contains(const FanSpace& x, const DefinableSet& d, const FanPoint& p);
bool point_leq(const FanSpace& x, const FanPoint& a, const FanPoint& b);

DefinableSet set_union(const FanSpace& x, const DefinableSet& a, const DefinableSet& b);
DefinableSet set_intersect(const FanSpace& x, const DefinableSet& a, const DefinableSet& b);
DefinableSet set_complement(const FanSpace& x, const DefinableSet& a);
DefinableSet set_difference(const FanSpace& x, const DefinableSet& a, const DefinableSet& b);
bool set_empty(const FanSpace& x, const DefinableSet& a);

DefinableSet down_closure(const FanSpace& x, const DefinableSet& a);
DefinableSet up_closure(const FanSpace& x, const DefinableSet& a);
DefinableSet closure(const FanSpace& x, const DefinableSet& a);
DefinableSet interior(const FanSpace& x, const DefinableSet& a);

bool is_open_def(const FanSpace& x, const DefinableSet& a);
bool is_closed_def(const FanSpace& x, const DefinableSet& a);
bool is_clopen_def(const FanSpace& x, const DefinableSet& a);
bool is_upset_def(const FanSpace& x, const DefinableSet& a);
bool is_downset_def(const FanSpace& x, const DefinableSet& a);

// largest upset contained in a: X ∖ ↓(X ∖ a)
DefinableSet box(const FanSpace& x, const DefinableSet& a);

// U→V = X ∖ ↓cl(U∖V) for open upsets
DefinableSet open_upset_implication(const FanSpace& x, const DefinableSet& u,
                                    const DefinableSet& v);

// spectral closure ↓∘cl
DefinableSet spectral_closure(const FanSpace& x, const DefinableSet& a);

// smallest open upset containing `seed` (named part: fixpoint of adding
// `below` of every tail whose limit is swallowed); always clopen
DefinableSet min_open_upset(const FanSpace& x, Mask seed);

// Shape bases: named parts range over all skeleton subsets, each tail over
// FIN/COFIN with exception sets drawn from `depth` fresh indices starting at
// `fresh_from` (default bound()+1).  Universal set-quantifiers are decided
// over these families; indices beyond the bound behave uniformly.
std::vector<DefinableSet> shape_basis(const FanSpace& x, int depth = 1, int fresh_from = -1);
std::vector<DefinableSet> clopen_basis(const FanSpace& x, int depth = 1, int fresh_from = -1);
std::vector<DefinableSet> clopen_upset_basis(const FanSpace& x, int depth = 1,
                                             int fresh_from = -1);
std::vector<DefinableSet> open_upset_basis(const FanSpace& x, int depth = 1, int fresh_from = -1);

// downsets: named over skeleton downsets; tails over {empty, one fresh
// generic, cofinite-minus-one-fresh, full}; a named point above a tail forces
// the full tail
std::vector<DefinableSet> canonical_downsets(const FanSpace& x, int depth = 1,
                                             int fresh_from = -1);

struct SpaceVerdict {
  bool priestley = false;
  bool esakia = false;
  Report detail;
};

// Priestley: canonical separation witnesses over representative point pairs,
// each re-verified.  Esakia: ↓ of every basis clopen is clopen, cross-checked
// against closure of clopen upsets under implication; routes must agree.
SpaceVerdict validate_space(const FanSpace& x, int depth = 1);

FanSpace embed_finite_poset(const FinPoset& p);

// Bundled spaces: the two-chain as a 0-tail space; two disjoint convergent
// sequences; one limit with two interleaved tails; the fan over one limit
// with the limit on top; the non-Esakia witness (limit below an isolated
// point).
FanSpace space_x1();
FanSpace space_x2();
FanSpace space_x3();
FanSpace space_x4();
FanSpace space_ne();

Json set_to_json(const DefinableSet& d);
Json point_to_json(const FanPoint& p);

}  // namespace duality
