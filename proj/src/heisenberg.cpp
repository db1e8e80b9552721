#include "weil/heisenberg.hpp"

#include <stdexcept>

namespace weil {

HElement h_identity(const SympSpace& V) {
    return {FpVec(static_cast<size_t>(V.dim()), Fp::zero(V.p)), Fp::zero(V.p)};
}

HElement h_mul(const SympSpace& V, const HElement& a, const HElement& b) {
    if (static_cast<int>(a.v.size()) != V.dim() || static_cast<int>(b.v.size()) != V.dim())
        throw std::invalid_argument("h_mul: ambient mismatch");
    Fp z = a.z + b.z + Fp::half(V.p) * V.omega(a.v, b.v);
    return {vec_add(a.v, b.v), z};
}

HElement h_inv(const SympSpace& V, const HElement& a) {
    (void)V;
    return {vec_neg(a.v), -a.z};
}

HElement sp_act(const SpElement& g, const HElement& h) { return {g.apply(h.v), h.z}; }

long h_count(const SympSpace& V) {
    long c = 1;
    for (int i = 0; i < V.dim() + 1; ++i) c *= V.p;
    return c;
}

std::vector<HElement> enumerate_h(const SympSpace& V) {
    std::vector<HElement> out;
    out.reserve(static_cast<size_t>(h_count(V)));
    std::vector<long> digits(static_cast<size_t>(V.dim()) + 1, 0); // [v..., z], last fastest
    while (true) {
        FpVec v;
        v.reserve(static_cast<size_t>(V.dim()));
        for (int i = 0; i < V.dim(); ++i) v.emplace_back(digits[static_cast<size_t>(i)], V.p);
        out.push_back({v, Fp(digits.back(), V.p)});
        size_t k = digits.size();
        while (k > 0 && ++digits[k - 1] == V.p) digits[--k] = 0;
        if (k == 0 && digits[0] == 0) break;
    }
    return out;
}

long h_index(const SympSpace& V, const HElement& h) {
    long idx = 0;
    for (int i = 0; i < V.dim(); ++i) idx = idx * V.p + h.v[static_cast<size_t>(i)].value();
    return idx * V.p + h.z.value();
}

Model build_model(const OrientedLagrangian& l) {
    const SympSpace& V = l.space();
    Model m{l, {}, {}};
    std::vector<bool> is_pivot(static_cast<size_t>(V.dim()), false);
    for (int c : l.sub.pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int c = 0; c < V.dim(); ++c)
        if (!is_pivot[static_cast<size_t>(c)]) m.free_cols.push_back(c);
    // transversal = {(c, 0)} over the free-coordinate complement, first free
    // column most significant
    long count = 1;
    for (size_t i = 0; i < m.free_cols.size(); ++i) count *= V.p;
    m.transversal.reserve(static_cast<size_t>(count));
    std::vector<long> digits(m.free_cols.size(), 0);
    for (long idx = 0; idx < count; ++idx) {
        FpVec v(static_cast<size_t>(V.dim()), Fp::zero(V.p));
        long rest = idx;
        for (size_t j = m.free_cols.size(); j-- > 0;) {
            v[static_cast<size_t>(m.free_cols[j])] = Fp(rest % V.p, V.p);
            rest /= V.p;
        }
        m.transversal.push_back({v, Fp::zero(V.p)});
    }
    return m;
}

ModelIndex Model::index(const HElement& h) const {
    const SympSpace& V = space();
    if (static_cast<int>(h.v.size()) != V.dim()) throw std::invalid_argument("model index: ambient mismatch");
    // split v = l + c against the pivot/free coordinate decomposition
    FpVec lpart(static_cast<size_t>(V.dim()), Fp::zero(V.p));
    for (int i = 0; i < label.sub.dim(); ++i) {
        Fp coeff = h.v[static_cast<size_t>(label.sub.pivots[static_cast<size_t>(i)])];
        if (!coeff.is_zero()) lpart = vec_add(lpart, vec_scale(coeff, label.sub.rows.row(i)));
    }
    FpVec cpart = vec_add(h.v, vec_neg(lpart));
    int rep = 0;
    for (int col : free_cols) rep = static_cast<int>(rep * V.p + cpart[static_cast<size_t>(col)].value());
    // h = (0,z0)·(l,0)·(c,0) with z = z0 + ½ω(l,c)
    Fp z0 = h.z - Fp::half(V.p) * V.omega(lpart, cpart);
    return {z0, rep};
}

CycMat pi_matrix(const Model& m, const HElement& h) {
    const SympSpace& V = m.space();
    CycMat out(m.dim(), m.dim(), Cyc::zero(V.p));
    for (int i = 0; i < m.dim(); ++i) {
        ModelIndex idx = m.index(h_mul(V, m.transversal[static_cast<size_t>(i)], h));
        out.at(i, idx.rep) += psi(idx.z0);
    }
    return out;
}

Cyc ModelVector::evaluate(const HElement& h) const {
    ModelIndex idx = model.index(h);
    return psi(idx.z0) * values[static_cast<size_t>(idx.rep)];
}

ModelVector zero_vector(const Model& m) {
    return {m, CycVec(static_cast<size_t>(m.dim()), Cyc::zero(m.space().p))};
}

namespace {

// weighted union-find over matrix positions; weights are ζ-exponents mod p
struct PhaseUnionFind {
    std::vector<int> parent;
    std::vector<long> offset; // val(i) = ζ^{offset} · val(parent(i))
    std::vector<bool> dead;
    long p;

    PhaseUnionFind(size_t n, long prime) : parent(n), offset(n, 0), dead(n, false), p(prime) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }

    std::pair<int, long> find(int x) {
        if (parent[static_cast<size_t>(x)] == x) return {x, 0};
        auto [root, off] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = root;
        offset[static_cast<size_t>(x)] = (offset[static_cast<size_t>(x)] + off) % p;
        return {root, offset[static_cast<size_t>(x)]};
    }

    // val(a) = ζ^δ · val(b)
    void relate(int a, int b, long delta) {
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) {
            if ((oa - ob - delta) % p != 0) dead[static_cast<size_t>(ra)] = true;
            return;
        }
        parent[static_cast<size_t>(ra)] = rb;
        offset[static_cast<size_t>(ra)] = ((delta + ob - oa) % p + p) % p;
        if (dead[static_cast<size_t>(ra)]) dead[static_cast<size_t>(rb)] = true;
    }
};

} // namespace

long commutant_dimension(const Model& m) {
    const SympSpace& V = m.space();
    int d = m.dim();
    PhaseUnionFind uf(static_cast<size_t>(d) * d, V.p);
    for (int gen = 0; gen < V.dim(); ++gen) {
        HElement h{basis_vec(V.p, V.dim(), gen), Fp::zero(V.p)};
        // row i carries its single entry ζ^{phi(i)} at column sig(i)
        std::vector<int> sig(static_cast<size_t>(d));
        std::vector<long> phi(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            ModelIndex idx = m.index(h_mul(V, m.transversal[static_cast<size_t>(i)], h));
            sig[static_cast<size_t>(i)] = idx.rep;
            phi[static_cast<size_t>(i)] = idx.z0.value();
        }
        // A·π = π·A  ⇔  A[sig(i)][sig(j)] = ζ^{phi(j)-phi(i)} A[i][j]
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int from = sig[static_cast<size_t>(i)] * d + sig[static_cast<size_t>(j)];
                long delta = phi[static_cast<size_t>(j)] - phi[static_cast<size_t>(i)];
                uf.relate(from, i * d + j, ((delta % V.p) + V.p) % V.p);
            }
    }
    long dim = 0;
    for (int x = 0; x < d * d; ++x) {
        auto [root, off] = uf.find(x);
        (void)off;
        if (root == x && !uf.dead[static_cast<size_t>(root)]) ++dim;
    }
    return dim;
}

} // namespace weil
