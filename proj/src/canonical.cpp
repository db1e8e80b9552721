#include "weil/canonical.hpp"

#include <stdexcept>

namespace weil {

CanonicalSpace::CanonicalSpace(const SympSpace& v, long cap)
    : V(v), lags(v, cap), base_model(build_model(lags[0])) {}

FlatSection zero_section(const CanonicalSpace& space) {
    return {CycVec(static_cast<size_t>(space.dim()), Cyc::zero(space.V.p))};
}

ModelVector evaluate_section(const CanonicalSpace& space, const FlatSection& s,
                             const OrientedLagrangian& at) {
    if (at.space() != space.V) throw std::invalid_argument("evaluate_section: ambient mismatch");
    Intertwiner f = closed_operator(at, space.base());
    return {f.target, mat_apply(f.matrix, s.coords)};
}

CycMat translation_matrix(const SpElement& g, const Model& src, const Model& tgt) {
    const SympSpace& V = src.space();
    if (act(g, src.label.sub) != tgt.label.sub)
        throw std::invalid_argument("translation_matrix: target is not the acted subspace");
    SpElement ginv = g.inverse();
    CycMat out(tgt.dim(), src.dim(), Cyc::zero(V.p));
    for (int i = 0; i < tgt.dim(); ++i) {
        ModelIndex idx = src.index(sp_act(ginv, tgt.transversal[static_cast<size_t>(i)]));
        out.at(i, idx.rep) += psi(idx.z0);
    }
    return out;
}

CycMat rho(const CanonicalSpace& space, const SpElement& g) {
    if (g.V != space.V) throw std::invalid_argument("rho: ambient mismatch");
    OrientedLagrangian moved = act(g, space.base());
    Model moved_model = build_model(moved);
    CycMat tau = translation_matrix(g, space.base_model, moved_model);
    Intertwiner back = closed_operator(space.base(), moved);
    return mat_mul(back.matrix, tau);
}

CycMat pi_canonical(const CanonicalSpace& space, const HElement& h) {
    return pi_matrix(space.base_model, h);
}

CycMat total_fourier(const CanonicalSpace& space, const IntertwinerTable& table) {
    int count = table.size();
    int d = space.dim();
    int total = count * d;
    mpq_class inv_count(1, count);
    CycMat big(total, total, Cyc::zero(space.V.p));
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            const CycMat& block = table.op(a, b);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) big.at(a * d + i, b * d + j) = block.at(i, j).scaled(inv_count);
        }
    return big;
}

CycMat geometric_action_matrix(const CanonicalSpace& space, const IntertwinerTable& table,
                               const SpElement& g) {
    int count = table.size();
    int d = space.dim();
    CycMat big(count * d, count * d, Cyc::zero(space.V.p));
    for (int a = 0; a < count; ++a) {
        OrientedLagrangian moved = act(g, table.lags[a]);
        int b = table.lags.index_of(moved);
        CycMat tau = translation_matrix(g, table.models[static_cast<size_t>(a)],
                                        table.models[static_cast<size_t>(b)]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) big.at(b * d + i, a * d + j) = tau.at(i, j);
    }
    return big;
}

CycMat kron(const CycMat& a, const CycMat& b) {
    CycMat out(a.rows * b.rows, a.cols * b.cols, a.a.front().zero_like());
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

CycMat cartesian_iso(const CanonicalSpace& sprod, const CanonicalSpace& s1, const CanonicalSpace& s2) {
    if (sprod.V != product(s1.V, s2.V)) throw std::invalid_argument("cartesian_iso: not the product space");
    OrientedLagrangian pair_base = product_oriented(s1.base(), s2.base(), sprod.V);
    // the product transversal factors with the first-factor index outermost,
    // so evaluation at the product base pair IS the Kronecker reshape
    return closed_operator(pair_base, sprod.base()).matrix;
}

Cyc duality_pairing_at(const CanonicalSpace& dual_space, const FlatSection& sbar,
                       const CanonicalSpace& space, const FlatSection& s,
                       const OrientedLagrangian& at) {
    if (dual_space.V != space.V.dual()) throw std::invalid_argument("duality_pairing: spaces are not dual");
    OrientedLagrangian at_bar(Subspace::span(dual_space.V, at.sub.rows), at.scale);
    ModelVector fbar = evaluate_section(dual_space, sbar, at_bar);
    ModelVector f = evaluate_section(space, s, at);
    Cyc acc = Cyc::zero(space.V.p);
    for (size_t j = 0; j < f.values.size(); ++j) acc += fbar.values[j] * f.values[j];
    return acc;
}

Cyc duality_pairing(const CanonicalSpace& dual_space, const FlatSection& sbar,
                    const CanonicalSpace& space, const FlatSection& s) {
    return duality_pairing_at(dual_space, sbar, space, s, space.base());
}

CycMat duality_gram(const CanonicalSpace& dual_space, const CanonicalSpace& space) {
    int d = space.dim();
    CycMat gram(d, d, Cyc::zero(space.V.p));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            FlatSection ei = zero_section(dual_space);
            ei.coords[static_cast<size_t>(i)] = Cyc::one(space.V.p);
            FlatSection ej = zero_section(space);
            ej.coords[static_cast<size_t>(j)] = Cyc::one(space.V.p);
            gram.at(i, j) = duality_pairing(dual_space, ei, space, ej);
        }
    return gram;
}

ReductionIso reduction_iso(const CanonicalSpace& space, const OrientedIsotropic& iso) {
    const SympSpace& V = space.V;
    if (iso.sub.V != V) throw std::invalid_argument("reduction_iso: ambient mismatch");
    Reduction red = reduce(V, iso.sub);
    int d = space.dim();
    int di = iso.sub.dim();

    // joint fixed space of π((i,0)) over the basis of I, in base coordinates
    CycMat system(di == 0 ? 0 : di * d, d, Cyc::zero(V.p));
    for (int r = 0; r < di; ++r) {
        HElement gen{iso.sub.rows.row(r), Fp::zero(V.p)};
        CycMat m = pi_canonical(space, gen);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Cyc e = m.at(i, j);
                if (i == j) e -= Cyc::one(V.p);
                system.at(r * d + i, j) = e;
            }
    }
    CycMat basis = di == 0 ? CycMat::identity(d, Cyc::one(V.p)) : nullspace(system, Cyc::one(V.p));

    // Lagrangian envelope: first in enumeration order containing I
    Subspace envelope_sub = [&]() {
        for (const Subspace& l : enumerate_lagrangians(V)) {
            bool contains_all = true;
            for (int r = 0; r < di; ++r)
                if (!l.contains(iso.sub.rows.row(r))) {
                    contains_all = false;
                    break;
                }
            if (contains_all) return l;
        }
        throw std::logic_error("no Lagrangian contains the isotropic subspace");
    }();
    OrientedLagrangian envelope(envelope_sub, Fp::one(V.p));

    ReductionIso out{red, envelope, basis, nullptr, nullptr};
    if (red.W.n > 0) {
        // split o_L = o_I ∧ lift(õ): the reduced orientation picks up the
        // change-of-basis determinant and the I° scale
        Mat<Fp> comp = complement_rows(iso.sub, envelope_sub);
        Mat<Fp> stacked(di + comp.rows, V.dim(), Fp::zero(V.p));
        for (int i = 0; i < di; ++i)
            for (int j = 0; j < V.dim(); ++j) stacked.at(i, j) = iso.sub.rows.at(i, j);
        for (int i = 0; i < comp.rows; ++i)
            for (int j = 0; j < V.dim(); ++j) stacked.at(di + i, j) = comp.at(i, j);
        Fp det_c = change_of_basis_det(stacked, envelope_sub);
        Mat<Fp> reduced_rows(comp.rows, red.W.dim(), Fp::zero(V.p));
        for (int i = 0; i < comp.rows; ++i) {
            FpVec w = red.project(comp.row(i));
            for (int j = 0; j < red.W.dim(); ++j) reduced_rows.at(i, j) = w[static_cast<size_t>(j)];
        }
        Subspace reduced_sub = Subspace::span(red.W, reduced_rows);
        Fp t = change_of_basis_det(reduced_rows, reduced_sub);
        Fp reduced_scale = envelope.scale * (det_c * iso.scale).inverse() * t;
        out.reduced_label = std::make_shared<OrientedLagrangian>(reduced_sub, reduced_scale);
        out.reduced_space = std::make_shared<CanonicalSpace>(red.W);
    }
    return out;
}

CycVec apply_reduction(const CanonicalSpace& space, const ReductionIso& iso, const FlatSection& s) {
    const SympSpace& V = space.V;
    ModelVector f = evaluate_section(space, s, iso.envelope);
    if (!iso.reduced_space) {
        // I Lagrangian: H(I^⊥/I) = H(0) is the scalars
        return {f.evaluate(h_identity(V))};
    }
    Model reduced_model = build_model(*iso.reduced_label);
    CycVec values;
    values.reserve(static_cast<size_t>(reduced_model.dim()));
    for (const HElement& t : reduced_model.transversal)
        values.push_back(f.evaluate({iso.reduction.section(t.v), t.z}));
    Intertwiner to_base = closed_operator(iso.reduced_space->base(), *iso.reduced_label);
    return mat_apply(to_base.matrix, values);
}

FlatSection lagrangian_vector(const CanonicalSpace& space, const OrientedLagrangian& l) {
    Model model = build_model(l);
    CycVec values(static_cast<size_t>(model.dim()), Cyc::zero(space.V.p));
    values[0] = Cyc::one(space.V.p); // support Z·L: value 1 at the identity representative
    Intertwiner to_base = closed_operator(space.base(), l);
    return {mat_apply(to_base.matrix, values)};
}

CorrespondenceContext make_correspondence_context(const SympSpace& v1, const SympSpace& v2, long cap) {
    CorrespondenceContext ctx;
    ctx.v1 = v1;
    ctx.v2 = v2;
    ctx.vbar1 = v1.dual();
    ctx.vprod = product(ctx.vbar1, v2);
    ctx.source = std::make_shared<CanonicalSpace>(v1, cap);
    ctx.target = std::make_shared<CanonicalSpace>(v2, cap);
    ctx.dual_source = std::make_shared<CanonicalSpace>(ctx.vbar1, cap);
    ctx.prod = std::make_shared<CanonicalSpace>(ctx.vprod, cap);
    return ctx;
}

CycMat quantize_correspondence(const CorrespondenceContext& ctx, const OrientedLagrangian& l) {
    if (l.space() != ctx.vprod)
        throw std::invalid_argument("quantize_correspondence: correspondence not in the product space");
    FlatSection v = lagrangian_vector(*ctx.prod, l);
    OrientedLagrangian pair_base = product_oriented(ctx.dual_source->base(), ctx.target->base(), ctx.vprod);
    ModelVector tensor = evaluate_section(*ctx.prod, v, pair_base);
    int d1 = ctx.source->dim(), d2 = ctx.target->dim();
    // identification H(V̄1) ≅ H(V1)* through the explicit Gram matrix
    CycMat gram = duality_gram(*ctx.dual_source, *ctx.source);
    CycMat out(d2, d1, Cyc::zero(ctx.v1.p));
    for (int i2 = 0; i2 < d2; ++i2)
        for (int j = 0; j < d1; ++j) {
            Cyc acc = Cyc::zero(ctx.v1.p);
            for (int i1 = 0; i1 < d1; ++i1)
                acc += tensor.values[static_cast<size_t>(i1 * d2 + i2)] * gram.at(i1, j);
            out.at(i2, j) = acc;
        }
    return out;
}

} // namespace weil
