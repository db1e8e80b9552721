#include "weil/intertwining.hpp"

#include <stdexcept>

namespace weil {

Cyc Kernel::at(const HElement& h) const {
    return values[static_cast<size_t>(h_index(left.space(), h))];
}

bool Kernel::is_zero() const {
    for (const Cyc& v : values)
        if (!v.is_zero()) return false;
    return true;
}

std::vector<FpVec> span_vectors(const Mat<Fp>& rows, long p) {
    long count = 1;
    for (int i = 0; i < rows.rows; ++i) count *= p;
    std::vector<FpVec> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<long> digits(static_cast<size_t>(rows.rows), 0);
    for (long idx = 0; idx < count; ++idx) {
        FpVec v(static_cast<size_t>(rows.cols), Fp::zero(p));
        for (int i = 0; i < rows.rows; ++i)
            if (digits[static_cast<size_t>(i)] != 0)
                v = vec_add(v, vec_scale(Fp(digits[static_cast<size_t>(i)], p), rows.row(i)));
        out.push_back(v);
        size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    }
    return out;
}

static long binom2(long k) { return k * (k - 1) / 2; }

// σ argument sign factor (−1)^(k choose 2) as an element of F_p.
static Fp binomial_sign_factor(long p, long k) {
    return (binom2(k) % 2 == 0) ? Fp::one(p) : -Fp::one(p);
}

static Cyc normalizer_pow(long p, long k, Normalizer norm) {
    Cyc g = gauss_sum(p);
    if (norm == Normalizer::GaussOverQ) g = g.scaled(mpq_class(1, p));
    return cyc_pow(g, k);
}

static Cyc sigma_cyc(long p, const Fp& arg) {
    return Cyc::rational(p, mpq_class(legendre(arg)));
}

Cyc ansatz_constant(const OrientedLagrangian& m, const OrientedLagrangian& l, const KernelConvention& conv) {
    const SympSpace& V = m.space();
    Fp pairing = conv.transpose_pairing ? wedge_pairing(m, l) : wedge_pairing(l, m);
    Fp arg = pairing;
    if (conv.binomial_sign) arg *= binomial_sign_factor(V.p, V.n);
    return normalizer_pow(V.p, V.n, conv.normalizer) * sigma_cyc(V.p, arg);
}

Intertwiner ansatz_operator(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const KernelConvention& conv) {
    if (m.space() != l.space()) throw std::invalid_argument("ansatz_operator: ambient mismatch");
    if (!in_general_position(l.sub, m.sub))
        throw std::invalid_argument("ansatz_operator: pair not in general position");
    const SympSpace& V = m.space();
    Model source = build_model(l);
    Model target = build_model(m);
    CycMat avg(target.dim(), source.dim(), Cyc::zero(V.p));
    std::vector<FpVec> mvecs = span_vectors(m.sub.rows, V.p);
    for (int i = 0; i < target.dim(); ++i) {
        for (const FpVec& mv : mvecs) {
            HElement x = h_mul(V, {mv, Fp::zero(V.p)}, target.transversal[static_cast<size_t>(i)]);
            ModelIndex idx = source.index(x);
            avg.at(i, idx.rep) += psi(idx.z0);
        }
    }
    Cyc c = ansatz_constant(m, l, conv);
    for (auto& e : avg.a) e = e * c;
    return {std::move(source), std::move(target), std::move(avg)};
}

Intertwiner closed_operator(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const KernelConvention& conv) {
    if (m.space() != l.space()) throw std::invalid_argument("closed_operator: ambient mismatch");
    const SympSpace& V = m.space();
    Subspace common = intersect(m.sub, l.sub);
    int k = V.n - common.dim();

    // orientation bookkeeping against a fixed o_I = wedge of I's RREF rows:
    // o_X = (s_X / det C_X) · o_I ∧ (classes of the complement rows)
    Mat<Fp> comp_m = complement_rows(common, m.sub);
    Mat<Fp> comp_l = complement_rows(common, l.sub);
    auto stack = [&](const Mat<Fp>& top, const Mat<Fp>& bottom) {
        Mat<Fp> s(top.rows + bottom.rows, V.dim(), Fp::zero(V.p));
        for (int i = 0; i < top.rows; ++i)
            for (int j = 0; j < s.cols; ++j) s.at(i, j) = top.at(i, j);
        for (int i = 0; i < bottom.rows; ++i)
            for (int j = 0; j < s.cols; ++j) s.at(top.rows + i, j) = bottom.at(i, j);
        return s;
    };
    Fp det_cm = change_of_basis_det(stack(common.rows, comp_m), m.sub);
    Fp det_cl = change_of_basis_det(stack(common.rows, comp_l), l.sub);
    Fp iota_ratio = m.scale * det_cl * (l.scale * det_cm).inverse();

    Fp arg = iota_ratio;
    if (k > 0) {
        Reduction red = reduce(V, common);
        auto reduced_oriented = [&](const Mat<Fp>& comp) {
            Mat<Fp> rows(comp.rows, red.W.dim(), Fp::zero(V.p));
            for (int i = 0; i < comp.rows; ++i) {
                FpVec w = red.project(comp.row(i));
                for (int j = 0; j < rows.cols; ++j) rows.at(i, j) = w[static_cast<size_t>(j)];
            }
            Subspace s = Subspace::span(red.W, rows);
            return OrientedLagrangian(s, change_of_basis_det(rows, s));
        };
        OrientedLagrangian red_m = reduced_oriented(comp_m);
        OrientedLagrangian red_l = reduced_oriented(comp_l);
        arg *= conv.transpose_pairing ? wedge_pairing(red_m, red_l) : wedge_pairing(red_l, red_m);
    }
    if (conv.binomial_sign) arg *= binomial_sign_factor(V.p, k);
    Cyc c = normalizer_pow(V.p, k, conv.normalizer) * sigma_cyc(V.p, arg);

    Model source = build_model(l);
    Model target = build_model(m);
    CycMat avg(target.dim(), source.dim(), Cyc::zero(V.p));
    std::vector<FpVec> reps = span_vectors(comp_m, V.p);
    for (int i = 0; i < target.dim(); ++i) {
        for (const FpVec& mv : reps) {
            HElement x = h_mul(V, {mv, Fp::zero(V.p)}, target.transversal[static_cast<size_t>(i)]);
            ModelIndex idx = source.index(x);
            avg.at(i, idx.rep) += psi(idx.z0);
        }
    }
    for (auto& e : avg.a) e = e * c;
    return {std::move(source), std::move(target), std::move(avg)};
}

Kernel kernel_general(const OrientedLagrangian& m, const OrientedLagrangian& l,
                      const KernelConvention& conv) {
    if (m.space() != l.space()) throw std::invalid_argument("kernel_general: ambient mismatch");
    if (!in_general_position(l.sub, m.sub))
        throw std::invalid_argument("kernel_general: pair not in general position");
    const SympSpace& V = m.space();
    Cyc c = ansatz_constant(m, l, conv);
    Mat<Fp> basis(V.dim(), V.dim(), Fp::zero(V.p));
    for (int i = 0; i < m.sub.dim(); ++i)
        for (int j = 0; j < V.dim(); ++j) basis.at(i, j) = m.sub.rows.at(i, j);
    for (int i = 0; i < l.sub.dim(); ++i)
        for (int j = 0; j < V.dim(); ++j) basis.at(m.sub.dim() + i, j) = l.sub.rows.at(i, j);
    Kernel ker{m, l, {}};
    std::vector<HElement> hs = enumerate_h(V);
    ker.values.reserve(hs.size());
    for (const HElement& h : hs) {
        // h = (mv,0)·(0,z)·(lv,0) with v = mv + lv
        auto coeff = solve_combination(basis, h.v);
        if (!coeff) throw std::logic_error("kernel_general: M + L does not span V");
        FpVec mv(static_cast<size_t>(V.dim()), Fp::zero(V.p));
        for (int i = 0; i < m.sub.dim(); ++i)
            if (!(*coeff)[static_cast<size_t>(i)].is_zero())
                mv = vec_add(mv, vec_scale((*coeff)[static_cast<size_t>(i)], m.sub.rows.row(i)));
        FpVec lv = vec_add(h.v, vec_neg(mv));
        Fp z = h.z - Fp::half(V.p) * V.omega(mv, lv);
        ker.values.push_back(c * psi(z));
    }
    return ker;
}

Intertwiner operator_of_kernel(const Kernel& k) {
    const SympSpace& V = k.left.space();
    Model source = build_model(k.right);
    Model target = build_model(k.left);
    CycMat out(target.dim(), source.dim(), Cyc::zero(V.p));
    for (int i = 0; i < target.dim(); ++i)
        for (int j = 0; j < source.dim(); ++j) {
            HElement x = h_mul(V, target.transversal[static_cast<size_t>(i)],
                               h_inv(V, source.transversal[static_cast<size_t>(j)]));
            out.at(i, j) = k.at(x);
        }
    return {std::move(source), std::move(target), std::move(out)};
}

Kernel kernel_convolve(const Kernel& k1, const Kernel& k2) {
    if (k1.right != k2.left) throw std::invalid_argument("kernel_convolve: middle labels do not match");
    const SympSpace& V = k1.left.space();
    Model middle = build_model(k1.right);
    Kernel out{k1.left, k2.right, CycVec()};
    std::vector<HElement> hs = enumerate_h(V);
    out.values.reserve(hs.size());
    for (const HElement& h : hs) {
        Cyc acc = Cyc::zero(V.p);
        for (const HElement& t : middle.transversal) acc += k1.at(h_mul(V, h, h_inv(V, t))) * k2.at(t);
        out.values.push_back(acc);
    }
    return out;
}

Subspace find_transversal_lagrangian(const Subspace& l, const Subspace& m) {
    for (const Subspace& cand : enumerate_lagrangians(l.V))
        if (in_general_position(cand, l) && in_general_position(cand, m)) return cand;
    throw std::logic_error("no transversal Lagrangian exists"); // unreachable for q >= 3
}

Kernel canonical_kernel_via(const OrientedLagrangian& m, const OrientedLagrangian& l,
                            const OrientedLagrangian& aux, const KernelConvention& conv) {
    return kernel_convolve(kernel_general(m, aux, conv), kernel_general(aux, l, conv));
}

Kernel canonical_kernel(const OrientedLagrangian& m, const OrientedLagrangian& l,
                        const KernelConvention& conv) {
    if (in_general_position(l.sub, m.sub)) return kernel_general(m, l, conv);
    Subspace n = find_transversal_lagrangian(l.sub, m.sub);
    return canonical_kernel_via(m, l, OrientedLagrangian(n, Fp::one(n.V.p)), conv);
}

Kernel zero_kernel(const OrientedLagrangian& m, const OrientedLagrangian& l) {
    const SympSpace& V = m.space();
    return {m, l, CycVec(static_cast<size_t>(h_count(V)), Cyc::zero(V.p))};
}

IntertwinerTable build_operator_table(const SympSpace& V, ExecPolicy policy, long cap,
                                      const KernelConvention& conv) {
    IntertwinerTable table{LagrangianTable(V, cap), {}, {}};
    int n = table.size();
    table.models.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) table.models.push_back(build_model(table.lags[i]));
    table.ops.assign(static_cast<size_t>(n) * static_cast<size_t>(n), CycMat());
    sweep_for(static_cast<long>(n) * n, policy, [&](long idx) {
        int tgt = static_cast<int>(idx / n), src = static_cast<int>(idx % n);
        table.ops[static_cast<size_t>(idx)] = closed_operator(table.lags[tgt], table.lags[src], conv).matrix;
    });
    return table;
}

std::optional<Cyc> proportionality_scalar(const CycMat& a, const CycMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return std::nullopt;
    // locate a reference nonzero entry of b
    int ri = -1, rj = -1;
    for (int i = 0; i < b.rows && ri < 0; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (!b.at(i, j).is_zero()) {
                ri = i;
                rj = j;
                break;
            }
    if (ri < 0) {
        for (const Cyc& e : a.a)
            if (!e.is_zero()) return std::nullopt;
        return a.a.empty() ? std::nullopt : std::optional<Cyc>(a.a.front().zero_like());
    }
    Cyc c = a.at(ri, rj) * b.at(ri, rj).inverse();
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (a.at(i, j) != c * b.at(i, j)) return std::nullopt;
    return c;
}

} // namespace weil
