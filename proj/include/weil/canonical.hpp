#pragma once

#include <memory>

#include "weil/intertwining.hpp"

namespace weil {

/// The canonical space H(V) of flat sections, represented at the first
/// oriented Lagrangian in enumeration order.
struct CanonicalSpace {
    SympSpace V;
    LagrangianTable lags;
    Model base_model;

    explicit CanonicalSpace(const SympSpace& v, long cap = 10000);
    const OrientedLagrangian& base() const { return lags[0]; }
    int dim() const { return base_model.dim(); }
};

/// Flat section, stored by its value at the base point; every other value is
/// recovered through the canonical intertwiners.
struct FlatSection {
    CycVec coords;
};

FlatSection zero_section(const CanonicalSpace& space);

ModelVector evaluate_section(const CanonicalSpace& space, const FlatSection& s,
                             const OrientedLagrangian& at);

/// τ_g: H_{src} → H_{tgt}, (τ_g f)(h) = f(g^{-1}·h); tgt must be the model of
/// the acted subspace.
CycMat translation_matrix(const SpElement& g, const Model& src, const Model& tgt);

/// Canonical model of the Weil representation in base coordinates:
/// ρ(g) = F_{base, g·base} ∘ τ_g. A genuine homomorphism, no metaplectic sign.
CycMat rho(const CanonicalSpace& space, const SpElement& g);

/// Heisenberg action in the canonical model (π at the base model).
CycMat pi_canonical(const CanonicalSpace& space, const HElement& h);

/// Sp-invariant idempotent on Γ(V) = ⊕ H_{L°}; blocks (1/#Lag°)·F_{M°,L°}
/// in enumeration order.
CycMat total_fourier(const CanonicalSpace& space, const IntertwinerTable& table);

/// Block-permutation matrix of the geometric Sp action on Γ(V).
CycMat geometric_action_matrix(const CanonicalSpace& space, const IntertwinerTable& table,
                               const SpElement& g);

CycMat kron(const CycMat& a, const CycMat& b);

/// α: H(V1×V2) → H(V1)⊗H(V2), evaluation at the product base pair followed
/// by the transversal factorization (Kronecker index i1·q^{n2} + i2).
CycMat cartesian_iso(const CanonicalSpace& sprod, const CanonicalSpace& s1, const CanonicalSpace& s2);

/// Pairing H(V̄,ψ) × H(V,ψ) → Q(ζ), evaluated through the models at `at`
/// (a Lagrangian of V; the same subspace and scale is used on the dual side).
Cyc duality_pairing_at(const CanonicalSpace& dual_space, const FlatSection& sbar,
                       const CanonicalSpace& space, const FlatSection& s,
                       const OrientedLagrangian& at);
/// Same, evaluated at the base point.
Cyc duality_pairing(const CanonicalSpace& dual_space, const FlatSection& sbar,
                    const CanonicalSpace& space, const FlatSection& s);
/// Gram matrix of the basis sections at the base point.
CycMat duality_gram(const CanonicalSpace& dual_space, const CanonicalSpace& space);

/// H(V)^I ≅ H(I^⊥/I): invariant vectors descend through a Lagrangian
/// envelope L ⊇ I whose orientation is split as o_I ∧ (reduced orientation).
struct ReductionIso {
    Reduction reduction;
    OrientedLagrangian envelope;                   // L ⊇ I, scale 1
    CycMat invariant_basis;                        // rows: basis of H(V)^I in base coords
    std::shared_ptr<CanonicalSpace> reduced_space; // null when I is Lagrangian
    std::shared_ptr<OrientedLagrangian> reduced_label;

    long invariant_dim() const { return invariant_basis.rows; }
};

ReductionIso reduction_iso(const CanonicalSpace& space, const OrientedIsotropic& iso);

/// Image of an I-invariant section: coordinates in H(I^⊥/I) at the reduced
/// base point (a single scalar when I is Lagrangian).
CycVec apply_reduction(const CanonicalSpace& space, const ReductionIso& iso, const FlatSection& s);

/// v_{L°}: the flat section through the normalized L-invariant vector
/// (ψ on Z·L, zero elsewhere).
FlatSection lagrangian_vector(const CanonicalSpace& space, const OrientedLagrangian& l);

/// Spaces backing the quantization of correspondences V1 → V2.
struct CorrespondenceContext {
    SympSpace v1, v2, vbar1, vprod;
    std::shared_ptr<CanonicalSpace> source, target, dual_source, prod;
};

CorrespondenceContext make_correspondence_context(const SympSpace& v1, const SympSpace& v2,
                                                  long cap = 10000);

/// A_{L°}: H(V1) → H(V2) for an oriented Lagrangian correspondence
/// L° ⊂ V̄1 × V2, through the Cartesian and duality identifications.
CycMat quantize_correspondence(const CorrespondenceContext& ctx, const OrientedLagrangian& l);

} // namespace weil
