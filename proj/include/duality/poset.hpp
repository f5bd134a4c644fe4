#pragma once

// Finite posets on index carriers {0..n-1}.  The relation is stored as
// reflexive-transitive incidence masks, one up-set and one down-set word per
// element, so subsets of a carrier are plain 64-bit masks.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace duality {

using Mask = std::uint64_t;
inline constexpr int kMaxElems = 32;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr bool has(Mask m, int i) { return (m >> i) & Mask{1}; }
constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
int popcount(Mask m);
int lowest_bit(Mask m);  // pre: m != 0
std::vector<int> mask_to_list(Mask m);
Mask list_to_mask(const std::vector<int>& xs);

struct FinPoset {
  int n = 0;
  std::vector<Mask> up;    // up[i]   = { j : i <= j }
  std::vector<Mask> down;  // down[i] = { j : j <= i }

  bool leq(int i, int j) const { return has(up[i], j); }
  bool lt(int i, int j) const { return i != j && leq(i, j); }

  static FinPoset antichain(int n);
  static FinPoset chain(int n);
  // Reflexive-transitive closure of the given pairs.  Fails iff the closure
  // violates antisymmetry; the offending pair lands in *witness.
  static std::optional<FinPoset> from_pairs(int n, const std::vector<std::pair<int, int>>& pairs,
                                            std::pair<int, int>* witness = nullptr);
  // up[] already reflexive-transitive-antisymmetric; derives down[] and checks.
  static FinPoset from_up(int n, std::vector<Mask> up);
  FinPoset dual() const;
  std::vector<std::pair<int, int>> cover_pairs() const;  // i covered by j
  bool operator==(const FinPoset&) const = default;
};

Mask up_set(const FinPoset& p, Mask s);
Mask down_set(const FinPoset& p, Mask s);
bool is_upset(const FinPoset& p, Mask s);
bool is_downset(const FinPoset& p, Mask s);
std::vector<Mask> all_upsets(const FinPoset& p);    // ascending as integers
std::vector<Mask> all_downsets(const FinPoset& p);  // ascending as integers
Mask maximal_elements(const FinPoset& p, Mask s);
Mask minimal_elements(const FinPoset& p, Mask s);
Mask lower_covers(const FinPoset& p, int x);
Mask upper_covers(const FinPoset& p, int x);
// Elements with exactly one lower cover (for a lattice order these are the
// join-irreducibles; the bottom has none and is excluded).
Mask join_irreducibles(const FinPoset& p);

struct PosetMap {
  FinPoset dom, cod;
  std::vector<int> map;
  int operator()(int x) const { return map[x]; }
};

bool is_order_preserving(const PosetMap& f);
// down(f^-1(y)) != f^-1(down(y)); `at` is a point in the symmetric difference.
struct PMorphWitness {
  int y = -1;
  int at = -1;
};
// Esakia condition down(f^-1(y)) = f^-1(down(y)) for every y (pre: f order-preserving).
bool is_p_morphism(const PosetMap& f, PMorphWitness* w = nullptr);

// Canonical form: lexicographically least strictly-upper-triangular incidence
// matrix over all linear extensions.  Key strings compare equal iff isomorphic.
std::string canonical_key(const FinPoset& p);
std::vector<int> canonical_permutation(const FinPoset& p);  // new index -> old index
bool isomorphic(const FinPoset& a, const FinPoset& b);
std::optional<std::vector<int>> find_order_isomorphism(const FinPoset& a, const FinPoset& b);

// One representative per isomorphism class, deterministic order.
std::vector<FinPoset> enumerate_posets(int n);
std::vector<std::vector<int>> monotone_maps(const FinPoset& dom, const FinPoset& cod);

}  // namespace duality
