#pragma once

#include <optional>
#include <vector>

#include "duality/algebra.hpp"
#include "duality/poset.hpp"
#include "duality/report.hpp"

namespace duality {

// A family of subsets (masks over some carrier) realized as a lattice under
// inclusion; sets[i] is the carrier of lattice element i.
struct SetLattice {
  std::vector<Mask> sets;
  FinLattice lat;
};

// Prime-filter spectrum: filters listed ascending by mask, ordered by ⊆.
// Finite tier: the topology is discrete, so the space is just the poset.
struct PrimeFilterSpace {
  FinLattice base;
  std::vector<Mask> filters;
  FinPoset order;
};

PrimeFilterSpace prime_filters(const FinLattice& a);

// φ(a) = {x : a ∈ x}, as a mask over filter indices
Mask stone_map(const PrimeFilterSpace& x, int a);

// Clopen upsets of a finite Priestley space = all upsets of the poset.
SetLattice clopup(const FinPoset& x);

// U→V = X ∖ ↓(U∖V)
Mask clopup_implication(const FinPoset& x, Mask u, Mask v);

// prime filter F ↦ h⁻¹(F); nullopt if some preimage is not a prime filter
// (never happens when is_dl_hom(h))
std::optional<PosetMap> dual_of_hom(const AlgHom& h, const PrimeFilterSpace& xa,
                                    const PrimeFilterSpace& xb);

// f⁻¹ : ClopUp(cod) → ClopUp(dom) as an AlgHom between upset lattices
AlgHom preimage_hom(const PosetMap& f);

// Ideals (nonempty ∨-closed downsets; all principal at finite tier) under ⊆.
// iso[a] = index of ↓a, an isomorphism A ≅ J(A).
struct IdealFrame {
  FinLattice base;
  std::vector<Mask> ideals;
  FinLattice frame;
  std::vector<int> iso;
};

IdealFrame ideal_frame(const FinLattice& a);

// I→J = {a : a∧b ∈ J for every b ∈ I}
Mask ideal_implication(const FinLattice& a, Mask i, Mask j);

// J(A) → J(B), I ↦ ↓h[I], as indices into the two ideal lists
std::vector<int> h_star(const AlgHom& h, const IdealFrame& ja, const IdealFrame& jb);

// A finite frame is exactly a finite distributive lattice; vjoin caches the
// join of every subset so ≪ and complete primeness are checked definitionally.
struct FrameView {
  FinLattice base;
  std::vector<int> vjoin;  // size 2^n, vjoin[∅] = bottom
  Mask compacts;
};

// nullopt when the lattice is not distributive (not a frame); requires n ≤ 20
std::optional<FrameView> frame_view(const FinLattice& l);

// a ≪ b: every subset joining above b already joins above a
bool way_below(const FrameView& l, int a, int b);

// completely prime filters, each verified definitionally over all subsets
std::vector<Mask> frame_points(const FrameView& l);

// points of L ≅ prime filters of K(L) via P ↦ P∩K(L); report carries the
// matched bijection and order agreement
Report pt_pf_iso(const FrameView& l);

// K(L) closed under implication, via the direct route and via K-as-its-own-
// Heyting-algebra; the two routes must agree
bool is_heyting_frame(const FrameView& l);

// a ≰ b implies some c with a∨c = 1 and b∨c ≠ 1
bool is_subfit(const FinLattice& l);

// (i) A ≅ J(A) on compacts, (ii) pt(J(A)) ≅ pf(A), (iii) ClopUp(pf(A)) ≅ A
Report check_triangle_dl(const FinLattice& a);

// naturality squares for h : A → B under the three functors
Report check_naturality_dl(const AlgHom& h);

}  // namespace duality
