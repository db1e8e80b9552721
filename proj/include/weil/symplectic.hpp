#pragma once

#include <map>
#include <optional>
#include <vector>

#include "weil/fp.hpp"
#include "weil/mat.hpp"

namespace weil {

using FpVec = std::vector<Fp>;

FpVec fp_vec(long p, const std::vector<long>& entries);
FpVec basis_vec(long p, int dim, int i);
FpVec vec_add(const FpVec& a, const FpVec& b);
FpVec vec_neg(const FpVec& a);
FpVec vec_scale(const Fp& c, const FpVec& a);
FpVec vec_concat(const FpVec& a, const FpVec& b);
bool vec_is_zero(const FpVec& a);

/// Coefficients y with Σ y_i rows_i = v, when v lies in the row space.
std::optional<FpVec> solve_combination(const Mat<Fp>& rows, const FpVec& v);

/// 2n-dimensional symplectic vector space over F_p, arbitrary invertible
/// antisymmetric form (standard block form by default).
struct SympSpace {
    long p = 0;
    int n = 0;
    Mat<Fp> form;

    static SympSpace standard(long p, int n);
    static SympSpace with_form(long p, const Mat<Fp>& form);

    int dim() const { return 2 * n; }
    Fp omega(const FpVec& u, const FpVec& v) const;
    SympSpace dual() const;

    bool operator==(const SympSpace& o) const { return p == o.p && n == o.n && form == o.form; }
    bool operator!=(const SympSpace& o) const { return !(*this == o); }
};

SympSpace product(const SympSpace& v1, const SympSpace& v2);

/// Subspace in canonical RREF representation; equality of subspaces is
/// equality of representations.
struct Subspace {
    SympSpace V;
    Mat<Fp> rows;             // RREF basis, one vector per row
    std::vector<int> pivots;  // pivot column per row

    static Subspace span(const SympSpace& V, const Mat<Fp>& vectors);
    static Subspace zero(const SympSpace& V);

    int dim() const { return rows.rows; }
    bool contains(const FpVec& v) const;
    /// Unique coefficients of v against the RREF basis (nullopt if outside).
    std::optional<FpVec> coefficients(const FpVec& v) const;
    bool is_isotropic() const;
    bool is_lagrangian() const { return is_isotropic() && dim() == V.n; }

    bool operator==(const Subspace& o) const { return V == o.V && rows == o.rows; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace perp(const Subspace& a);
bool in_general_position(const Subspace& l, const Subspace& m);

/// Lagrangian with a nonzero top-wedge scalar against its RREF basis:
/// o_L = scale · (r_1 ∧ … ∧ r_n).
struct OrientedLagrangian {
    Subspace sub;
    Fp scale;

    OrientedLagrangian(Subspace s, Fp sc);
    const SympSpace& space() const { return sub.V; }
    OrientedLagrangian rescaled(const Fp& t) const { return {sub, scale * t}; }

    bool operator==(const OrientedLagrangian& o) const { return sub == o.sub && scale == o.scale; }
    bool operator!=(const OrientedLagrangian& o) const { return !(*this == o); }
};

/// Oriented isotropic subspace of any dimension d ≤ n.
struct OrientedIsotropic {
    Subspace sub;
    Fp scale;

    OrientedIsotropic(Subspace s, Fp sc);
};

/// ω_∧(o_L, o_M) = s_L · s_M · det[ω(l_i, m_j)], rows from L, columns from M.
Fp wedge_pairing(const OrientedLagrangian& l, const OrientedLagrangian& m);

struct SpElement {
    SympSpace V;
    Mat<Fp> mat;

    static SpElement make(const SympSpace& V, const Mat<Fp>& m);
    static SpElement identity(const SympSpace& V);
    FpVec apply(const FpVec& v) const;
    SpElement operator*(const SpElement& o) const;
    SpElement inverse() const;

    bool operator==(const SpElement& o) const { return V == o.V && mat == o.mat; }
};

/// x ↦ x + λ·ω(x, v)·v; symplectic for every v, λ.
SpElement symplectic_transvection(const SympSpace& V, const FpVec& v, const Fp& lambda);
SpElement direct_sum(const SpElement& g1, const SpElement& g2, const SympSpace& vprod);

Subspace act(const SpElement& g, const Subspace& a);
/// Image subspace with the orientation transported by ∧^top(g).
OrientedLagrangian act(const SpElement& g, const OrientedLagrangian& l);

/// det of the change of basis expressing `vectors` against the RREF basis of
/// `target` (vectors must span target exactly).
Fp change_of_basis_det(const Mat<Fp>& vectors, const Subspace& target);

/// Rows of `outer` completing `inner` to a basis of outer (greedy, deterministic).
Mat<Fp> complement_rows(const Subspace& inner, const Subspace& outer);

/// Symplectic reduction W = I^⊥/I with explicit transversal bookkeeping.
struct Reduction {
    SympSpace W;
    Subspace isotropic;
    Subspace iperp;
    Mat<Fp> lift_rows; // representatives in V whose classes form W's basis

    FpVec project(const FpVec& v) const; // defined on I^⊥
    FpVec section(const FpVec& w) const; // project ∘ section = id
};

Reduction reduce(const SympSpace& V, const Subspace& isotropic);

/// Induced element of Sp(W) for g preserving I (hence I^⊥).
SpElement induced_on_reduction(const Reduction& red, const SpElement& g);

long lagrangian_count(long q, int n);
long oriented_lagrangian_count(long q, int n);

/// All RREF subspaces of dimension d (optionally isotropic only),
/// lexicographic on the flattened basis matrix.
std::vector<Subspace> enumerate_subspaces(const SympSpace& V, int d, bool isotropic_only);
std::vector<Subspace> enumerate_lagrangians(const SympSpace& V);

/// Deterministic enumeration: lexicographic on RREF, then ascending scale.
/// Throws when the count exceeds `cap`.
std::vector<OrientedLagrangian> enumerate_oriented_lagrangians(const SympSpace& V, long cap = 10000);

/// Brute-force enumeration of Sp(V) (feasible for n = 1 desk sizes only).
std::vector<SpElement> enumerate_sp(const SympSpace& V, long cap = 1000000);

/// Γ_g = {(v, gv)} in dual(V) × V, orientation pulled back from the standard
/// top form of V through the projection on the V-coordinate.
OrientedLagrangian graph_lagrangian(const SpElement& g);

/// L1 × L2 in the product space, orientation o_{L1} ∧ o_{L2}.
OrientedLagrangian product_oriented(const OrientedLagrangian& l1, const OrientedLagrangian& l2,
                                    const SympSpace& vprod);

/// Enumerated oriented Lagrangians with O(log) exact lookup.
struct LagrangianTable {
    std::vector<OrientedLagrangian> items;

    explicit LagrangianTable(const SympSpace& V, long cap = 10000);
    int size() const { return static_cast<int>(items.size()); }
    const OrientedLagrangian& operator[](int i) const { return items[static_cast<size_t>(i)]; }
    int index_of(const OrientedLagrangian& l) const;

  private:
    std::map<std::vector<long>, int> index_;
};

} // namespace weil
