#pragma once

#include <vector>

#include "weil/cyclotomic.hpp"
#include "weil/symplectic.hpp"

namespace weil {

using CycMat = Mat<Cyc>;
using CycVec = std::vector<Cyc>;

/// Element (v, z) of the Heisenberg group H = V × F_p.
struct HElement {
    FpVec v;
    Fp z;

    bool operator==(const HElement& o) const { return v == o.v && z == o.z; }
    bool operator!=(const HElement& o) const { return !(*this == o); }
};

HElement h_identity(const SympSpace& V);
/// (v,z)·(v',z') = (v+v', z+z'+½ω(v,v')).
HElement h_mul(const SympSpace& V, const HElement& a, const HElement& b);
HElement h_inv(const SympSpace& V, const HElement& a);

/// Sp acts through the V-coordinate, fixing the center.
HElement sp_act(const SpElement& g, const HElement& h);

long h_count(const SympSpace& V);
/// Deterministic order: v-digits big-endian, central coordinate fastest.
std::vector<HElement> enumerate_h(const SympSpace& V);
long h_index(const SympSpace& V, const HElement& h);

struct ModelIndex {
    Fp z0;
    int rep;
};

/// Model (π_L, H, H_L) with the coordinate-complement transversal of (Z·L)\H.
/// Vectors are stored by their values on the transversal; the index
/// factorization h = (0,z0)·l·t_rep evaluates them anywhere.
struct Model {
    OrientedLagrangian label;
    std::vector<int> free_cols;        // non-pivot columns of the RREF basis
    std::vector<HElement> transversal; // size q^n, digit order over free_cols

    const SympSpace& space() const { return label.space(); }
    int dim() const { return static_cast<int>(transversal.size()); }
    ModelIndex index(const HElement& h) const;
};

Model build_model(const OrientedLagrangian& l);

/// Matrix of π_L(h) f (h') = f(h'·h) on the transversal basis.
CycMat pi_matrix(const Model& m, const HElement& h);

/// Element of H_L as its value vector on the transversal.
struct ModelVector {
    Model model;
    CycVec values;

    Cyc evaluate(const HElement& h) const;
};

ModelVector zero_vector(const Model& m);

/// Dimension of {A : A·π(h) = π(h)·A for all h}, computed exactly from the
/// generalized-permutation structure of the generator matrices.
long commutant_dimension(const Model& m);

} // namespace weil
