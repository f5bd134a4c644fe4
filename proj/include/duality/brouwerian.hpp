#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duality/algebra.hpp"
#include "duality/finduality.hpp"
#include "duality/poset.hpp"
#include "duality/report.hpp"

namespace duality {

// Finite pointed space: a poset with greatest element m, a distinguished
// subset X0 ⊆ X∖{m}, and a topology materialized from a subbasis (closed
// under finite ∪ and ∩, with ∅ and X).  Admissible sets are the clopen
// upsets U with X∖U ⊆ ↓(X0∖U); every admissible set contains m, so the
// family is a meet-semilattice under intersection with top X.
struct PointedGenSpace {
  FinPoset order;
  Mask x0 = 0;
  int m = 0;
  std::vector<Mask> opens;        // ascending
  std::vector<Mask> admissibles;  // ascending

  int size() const { return order.n; }
  bool is_open(Mask u) const;
  bool is_clopen(Mask u) const;
  Mask topo_closure(Mask s) const;

  // validates that m is greatest and x0 ⊆ X∖{m}; materializes the topology
  // generated by the subbasis and caches the admissible sets
  static std::optional<PointedGenSpace> make(FinPoset order, Mask x0, int m,
                                             const std::vector<Mask>& subbasis,
                                             std::string* err = nullptr);
  static std::optional<PointedGenSpace> discrete(FinPoset order, Mask x0, int m,
                                                 std::string* err = nullptr);
};

std::vector<Mask> admissible_sets(const PointedGenSpace& x);
FinLattice admissible_lattice(const PointedGenSpace& x);  // inclusion order on 𝒜(X)

// Definition-by-definition report: pointed Priestley separation, X0 cofinal
// and dense in X∖{m}, membership in X0 characterized by ℐ_x nonempty and
// updirected (points with empty ℐ_x are listed separately in the detail),
// and the order being determined by 𝒜(X).
Report validate_pgps(const PointedGenSpace& x);
// pgps and: ↓(U∖V) is clopen for all U,V ∈ 𝒜(X)
bool validate_pges(const PointedGenSpace& x, Report* out = nullptr);

// E = ⋃ᵢ (Uᵢ∖Vᵢ) with Uᵢ,Vᵢ ∈ 𝒜(X); since every admissible set contains m,
// no nonempty decomposition covers m
bool is_e_clopen(const PointedGenSpace& x, Mask e);

// Nonempty ∧-closed upsets, the improper filter included; ascending by mask.
std::vector<Mask> all_ms_filters(const MeetSemilatticeView& a);
// meet-prime elements of the filter poset
std::vector<Mask> prime_filters_ms(const MeetSemilatticeView& a);
// proper filters where a₁,…,aₙ ∉ F and ↑a₁∩⋯∩↑aₙ ⊆ ↑c force c ∉ F
std::vector<Mask> optimal_filters(const MeetSemilatticeView& a);

struct PointedSpectrum {
  MeetSemilatticeView base;
  std::vector<Mask> carrier;  // Opt(A) ∪ {A}, ascending by mask
  PointedGenSpace space;      // inclusion order, subbasis {φ(a)} ∪ {φ(b)ᶜ},
                              // X0 = prime filters, m = the improper filter
};

// throws std::invalid_argument unless the view is a distributive
// meet-semilattice
PointedSpectrum pointed_spectrum(const MeetSemilatticeView& a);
Mask spectrum_phi(const PointedSpectrum& s, int a);  // {x : a ∈ x}

struct GenRelation {
  PointedGenSpace dom, cod;
  std::vector<Mask> rows;  // rows[x] = R[x] ⊆ cod
};

Mask box_r(const GenRelation& r, Mask u);  // {x : R[x] ⊆ u}

// (a) refuted pairs are separated by an admissible set over the box image,
// (b) □_R maps 𝒜(cod) into 𝒜(dom)
bool is_gp_morphism(const GenRelation& r, Json* witness = nullptr);
// gp and: xRy with y ∈ Y0 is witnessed by z ∈ X0 with x ≤ z and R[z] = ↑y
bool is_ge_morphism(const GenRelation& r, Json* witness = nullptr);

// The identity morphism is the order relation x ≤ y; the literal diagonal
// fails separation at the maximum (no admissible set omits m).
GenRelation identity_relation(const PointedGenSpace& x);

// x (S∗R) z  iff  every U ∈ 𝒜(Z) with x ∈ □_R □_S U has z ∈ U
GenRelation compose_star(const GenRelation& s, const GenRelation& r);

// x R_h y iff h⁻¹(x) ⊆ y, from the spectrum of cod(h) to the spectrum of
// dom(h); sb, sa must be the spectra of h.cod, h.dom
GenRelation r_of_hom(const AlgHom& h, const PointedSpectrum& sb, const PointedSpectrum& sa);

// meet-semilattice hom preserving nonempty finite joins whose prime-filter
// preimages are prime
bool is_dms_p(const AlgHom& h, Json* witness = nullptr);

struct SpaceMap {
  PointedGenSpace dom, cod;
  std::vector<int> map;
};

// order-preserving, f⁻¹ maps 𝒜(cod) into 𝒜(dom), f[X0] ⊆ Y0
bool is_pgps_p_map(const SpaceMap& f, Json* witness = nullptr);
// pgps and: f(x) ≤ y ∈ Y0 lifts to z ∈ X0 with x ≤ z and f(z) = y
bool is_pges_p_map(const SpaceMap& f, Json* witness = nullptr);
// p-morphism of the underlying posets with f⁻¹({n}) = {m}
bool is_pes_p_map(const SpaceMap& f, Json* witness = nullptr);

struct FilterFrame {
  MeetSemilatticeView base;
  std::vector<Mask> filters;  // ascending by mask
  FinLattice frame;           // inclusion order; compacts are the principal
                              // filters, so the compact dual recovers base
};

FilterFrame filter_frame(const MeetSemilatticeView& a);

// ℱ(h): F ↦ ↑h[F] between filter frames; pre: h a meet-semilattice hom
AlgHom f_of_hom(const AlgHom& h, const FilterFrame& fa, const FilterFrame& fb);

FinLattice dual_lattice(const FinLattice& l);

// x → y computed in the order dual: the least c with y ≤ x ∨ c
std::optional<int> dual_implication(const FinLattice& l, int x, int y);

std::vector<int> prime_elements(const FrameView& l);        // top excluded
std::vector<int> pseudoprime_elements(const FrameView& l);  // finite scale: ≪ = ≤
// nonempty upsets U with ⋁S ∈ U ⇒ S∩U ≠ ∅ and a₁,…,aₙ ∈ U, ⋀aᵢ ≪ b ⇒ b ∈ U;
// in bijection with the pseudoprime elements via p ↦ {a : a ≰ p}
std::vector<Mask> pseudopoints(const FrameView& l);

struct YSpace {
  std::vector<int> carrier;  // frame elements PP(L) ∪ {1}, ascending
  PointedGenSpace space;     // restricted order, subbasis {↑k∩Y} ∪ {(↑k)ᶜ∩Y}
                             // over compacts k, X0 = prime elements, m = 1
};

YSpace y_space(const FrameView& l);

// admissible closed upsets; va_frame orders them by reverse inclusion
std::vector<Mask> admissible_closed_upsets(const PointedGenSpace& x);
FinLattice va_frame(const PointedGenSpace& x);

// the compact dual K(L)^d is a Brouwerian semilattice
bool is_brouwerian_frame(const FrameView& l);
// compacts closed under ∧
bool is_arithmetic(const FrameView& l);
// frame homomorphism preserving the dual implication on compacts
bool is_brwfrm_morphism(const AlgHom& alpha, Json* witness = nullptr);

// r(b) = ⋁{a : α(a) ≤ b}; pre: α join-preserving
std::vector<int> right_adjoint(const AlgHom& alpha);

// spectrum validity, 𝒜(𝒳(A)) ≅ A, K(ℱ(A))^d ≅ A, 𝒳(A) = 𝒴(ℱ(A)),
// K(𝒱ᵃ(𝒳(A)))^d ≅ 𝒜(𝒳(A)), and pseudoprime ⊆ prime on the arithmetic
// filter frame
Report check_triangle_brw(const MeetSemilatticeView& a);

}  // namespace duality
