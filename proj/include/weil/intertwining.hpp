#pragma once

#include <string>

#include "weil/heisenberg.hpp"
#include "weil/sweep.hpp"

namespace weil {

/// Intertwining morphism H_{L°} → H_{M°} in the transversal bases.
struct Intertwiner {
    Model source; // L°
    Model target; // M°
    CycMat matrix;
};

/// Intertwining kernel in C(M\H/L, ψ), stored densely over all of H in
/// enumeration order.
struct Kernel {
    OrientedLagrangian left;  // M°
    OrientedLagrangian right; // L°
    CycVec values;            // indexed by h_index

    const Cyc& at_index(long i) const { return values[static_cast<size_t>(i)]; }
    Cyc at(const HElement& h) const;
    bool is_zero() const;
};

/// Normalization-constant variant of the closed formula. The printed closed
/// formula and the general-position formula disagree by q^{-k}; the verify
/// suite demonstrates which variant is the multiplicative one.
enum class Normalizer { GaussOverQ, Gauss };

/// Convention knobs for the quadratic-character argument. The defaults are
/// the variant validated by the multiplicativity suite: σ is applied to the
/// plain pairing det[ω(l_i, m_j)] scaled by the orientations (the binomial
/// sign is absorbed into the pairing convention; adding it on top breaks
/// multiplicativity at n = 2). The alternatives exist so the verify report
/// can demonstrate the failure of the rejected variants.
struct KernelConvention {
    Normalizer normalizer = Normalizer::GaussOverQ;
    bool binomial_sign = false;     // add (−1)^(k choose 2) to the σ argument
    bool transpose_pairing = false; // pair rows of M against columns of L instead
};

constexpr KernelConvention canonical_convention() { return KernelConvention{}; }

/// Normalization constant C_{M°,L°} for a general-position pair.
Cyc ansatz_constant(const OrientedLagrangian& m, const OrientedLagrangian& l,
                    const KernelConvention& conv = canonical_convention());

/// Averaging-formula operator for pairs in general position.
Intertwiner ansatz_operator(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const KernelConvention& conv = canonical_convention());

/// Closed-formula operator for an arbitrary pair: averaging over M/(M∩L)
/// with the reduced-space normalization constant.
Intertwiner closed_operator(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const KernelConvention& conv = canonical_convention());

/// Kernel of the general-position operator: K(m·(0,z)·l) = C·ψ(z).
Kernel kernel_general(const OrientedLagrangian& m, const OrientedLagrangian& l,
                      const KernelConvention& conv = canonical_convention());

/// Convolution transform I[K](f) = K ∗ f, summed over (Z·L)\H representatives.
Intertwiner operator_of_kernel(const Kernel& k);

/// K₁ ∗ K₂ over (Z·M)\H representatives; middle labels must match.
Kernel kernel_convolve(const Kernel& k1, const Kernel& k2);

/// First Lagrangian (enumeration order) transversal to both arguments.
Subspace find_transversal_lagrangian(const Subspace& l, const Subspace& m);

/// The unique multiplicative kernel: the general-position formula on U,
/// extended to singular pairs by convolution through a transversal auxiliary.
Kernel canonical_kernel(const OrientedLagrangian& m, const OrientedLagrangian& l,
                        const KernelConvention& conv = canonical_convention());

/// As above but through one specific auxiliary (for independence checks).
Kernel canonical_kernel_via(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const OrientedLagrangian& aux,
                            const KernelConvention& conv = canonical_convention());

Kernel zero_kernel(const OrientedLagrangian& m, const OrientedLagrangian& l);

/// All q^k coset representatives spanned by the rows (zero included).
std::vector<FpVec> span_vectors(const Mat<Fp>& rows, long p);

/// Operator matrices for every ordered pair of enumerated oriented
/// Lagrangians; ops[target * size + source].
struct IntertwinerTable {
    LagrangianTable lags;
    std::vector<Model> models;
    std::vector<CycMat> ops;

    int size() const { return lags.size(); }
    const CycMat& op(int target, int source) const {
        return ops[static_cast<size_t>(target) * static_cast<size_t>(size()) + static_cast<size_t>(source)];
    }
};

IntertwinerTable build_operator_table(const SympSpace& V, ExecPolicy policy, long cap = 10000,
                                      const KernelConvention& conv = canonical_convention());

/// A = c·B for some scalar c (returned), with A = 0 allowed only when B = 0.
std::optional<Cyc> proportionality_scalar(const CycMat& a, const CycMat& b);

} // namespace weil
