#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duality/poset.hpp"

namespace duality {

// Finite bounded lattice on 0..n-1 with eagerly computed operation tables.
// meet/join always agree with order-theoretic inf/sup (enforced at build).
struct FinLattice {
  FinPoset order;
  std::vector<std::vector<int>> meet, join;
  int bottom = 0;
  int top = 0;

  int size() const { return order.n; }
  bool leq(int a, int b) const { return order.leq(a, b); }
  int mt(int a, int b) const { return meet[a][b]; }
  int jn(int a, int b) const { return join[a][b]; }
};

// Witness: a pair with no inf/sup (or a missing extreme reported as (-1,-1)).
struct LatticeWitness {
  int a = -1, b = -1;
};

std::optional<FinLattice> lattice_from_poset(const FinPoset& p, LatticeWitness* w = nullptr);

// Same carrier, but only ∧ and top are structural; ∨/bottom are incidental.
// A finite meet-semilattice always has all joins, so the base stores them.
struct MeetSemilatticeView {
  FinLattice base;
  int size() const { return base.size(); }
};

bool is_distributive(const FinLattice& a);

// max{c : x∧c ≤ y}; nullopt when the set of candidates has no greatest element.
std::optional<int> heyting_implication(const FinLattice& a, int x, int y);

// distributive and the residual of ∧ is total
bool is_heyting_algebra(const FinLattice& a);

// a∧b ≤ c implies some a'≥a, b'≥b with a'∧b' = c
bool is_distributive_ms(const MeetSemilatticeView& v);

// the residual of ∧ is total (no distributivity or bottom demanded)
bool is_brouwerian_semilattice(const MeetSemilatticeView& v);

struct AlgHom {
  FinLattice dom, cod;
  std::vector<int> map;
};

// op names an operation symbol; a,b are the violating arguments (b = -1 for
// constants and unary failures).
struct HomWitness {
  std::string op;
  int a = -1, b = -1;
};

bool is_ms_hom(const AlgHom& h, HomWitness* w = nullptr);                // ∧, 1
bool is_dl_hom(const AlgHom& h, HomWitness* w = nullptr);                // ∧, ∨, 0, 1
bool is_ha_hom(const AlgHom& h, HomWitness* w = nullptr);                // DL and →
bool is_brw_semilattice_hom(const AlgHom& h, HomWitness* w = nullptr);   // ∧, 1, →
bool is_brw_algebra_hom(const AlgHom& h, HomWitness* w = nullptr);       // BrwMS and ∨

// Lattice of a ∩/∪-closed family of masks ordered by inclusion.
FinLattice family_lattice(const std::vector<Mask>& sets);

FinLattice downset_lattice(const FinPoset& p);

// Stock algebras: n-chain, Boolean algebra with k atoms, the modular
// non-distributive five-element diamond.
FinLattice make_chain(int n);
FinLattice make_boolean(int atoms);
FinLattice make_m3();

// All maps dom -> cod passing is_dl_hom (monotone-map enumeration, filtered).
std::vector<AlgHom> all_dl_homs(const FinLattice& dom, const FinLattice& cod);

// Join-irreducible representatives: posets P with |Down(P)| <= max_size, one
// per isomorphism class; downset_lattice over these enumerates all finite
// distributive lattices up to max_size elements (Birkhoff).
std::vector<FinPoset> birkhoff_posets(int max_size);

std::optional<std::vector<int>> find_lattice_isomorphism(const FinLattice& a, const FinLattice& b);

}  // namespace duality
