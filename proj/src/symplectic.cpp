#include "weil/symplectic.hpp"

#include <algorithm>
#include <stdexcept>

namespace weil {

FpVec fp_vec(long p, const std::vector<long>& entries) {
    FpVec v;
    v.reserve(entries.size());
    for (long e : entries) v.emplace_back(e, p);
    return v;
}

FpVec basis_vec(long p, int dim, int i) {
    FpVec v(static_cast<size_t>(dim), Fp::zero(p));
    v[static_cast<size_t>(i)] = Fp::one(p);
    return v;
}

FpVec vec_add(const FpVec& a, const FpVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    FpVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

FpVec vec_neg(const FpVec& a) {
    FpVec r = a;
    for (auto& x : r) x = -x;
    return r;
}

FpVec vec_scale(const Fp& c, const FpVec& a) {
    FpVec r = a;
    for (auto& x : r) x *= c;
    return r;
}

FpVec vec_concat(const FpVec& a, const FpVec& b) {
    FpVec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

bool vec_is_zero(const FpVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

// Solved via RREF of the transposed system; unique when rows are independent.
std::optional<FpVec> solve_combination(const Mat<Fp>& rows, const FpVec& v) {
    if (rows.rows == 0) return vec_is_zero(v) ? std::optional<FpVec>(FpVec{}) : std::nullopt;
    long p = rows.a.front().modulus();
    Mat<Fp> m(rows.cols, rows.rows + 1, Fp::zero(p));
    for (int r = 0; r < rows.cols; ++r) {
        for (int i = 0; i < rows.rows; ++i) m.at(r, i) = rows.at(i, r);
        m.at(r, rows.rows) = v[static_cast<size_t>(r)];
    }
    std::vector<int> pivots = rref_in_place(m);
    FpVec y(static_cast<size_t>(rows.rows), Fp::zero(p));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == rows.rows) return std::nullopt; // inconsistent
        y[static_cast<size_t>(pivots[r])] = m.at(static_cast<int>(r), rows.rows);
    }
    return y;
}

SympSpace SympSpace::standard(long p, int n) {
    require_odd_prime(p);
    if (n < 1) throw std::invalid_argument("half-dimension must be >= 1");
    Mat<Fp> form(2 * n, 2 * n, Fp::zero(p));
    for (int i = 0; i < n; ++i) {
        form.at(i, n + i) = Fp::one(p);
        form.at(n + i, i) = -Fp::one(p);
    }
    SympSpace v;
    v.p = p;
    v.n = n;
    v.form = form;
    return v;
}

SympSpace SympSpace::with_form(long p, const Mat<Fp>& form) {
    require_odd_prime(p);
    if (form.rows != form.cols || form.rows % 2 != 0 || form.rows == 0)
        throw std::invalid_argument("symplectic form must be square of even dimension");
    for (int i = 0; i < form.rows; ++i)
        for (int j = 0; j < form.cols; ++j)
            if (form.at(i, j) != -form.at(j, i))
                throw std::invalid_argument("symplectic form must be antisymmetric");
    if (det(form).is_zero()) throw std::invalid_argument("symplectic form must be nondegenerate");
    SympSpace v;
    v.p = p;
    v.n = form.rows / 2;
    v.form = form;
    return v;
}

Fp SympSpace::omega(const FpVec& u, const FpVec& v) const {
    if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim())
        throw std::invalid_argument("omega: vector dimension mismatch");
    Fp acc = Fp::zero(p);
    for (int i = 0; i < dim(); ++i) {
        if (u[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < dim(); ++j)
            if (!form.at(i, j).is_zero()) acc += u[static_cast<size_t>(i)] * form.at(i, j) * v[static_cast<size_t>(j)];
    }
    return acc;
}

SympSpace SympSpace::dual() const {
    SympSpace v = *this;
    for (auto& x : v.form.a) x = -x;
    return v;
}

SympSpace product(const SympSpace& v1, const SympSpace& v2) {
    if (v1.p != v2.p) throw std::invalid_argument("product: prime mismatch");
    int d1 = v1.dim(), d2 = v2.dim();
    Mat<Fp> form(d1 + d2, d1 + d2, Fp::zero(v1.p));
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) form.at(i, j) = v1.form.at(i, j);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) form.at(d1 + i, d1 + j) = v2.form.at(i, j);
    return SympSpace::with_form(v1.p, form);
}

Subspace Subspace::span(const SympSpace& V, const Mat<Fp>& vectors) {
    Mat<Fp> m = vectors;
    if (m.rows > 0 && m.cols != V.dim()) throw std::invalid_argument("span: ambient dimension mismatch");
    std::vector<int> pivots = rref_in_place(m);
    Mat<Fp> rows(static_cast<int>(pivots.size()), V.dim(), Fp::zero(V.p));
    for (int i = 0; i < rows.rows; ++i)
        for (int j = 0; j < rows.cols; ++j) rows.at(i, j) = m.at(i, j);
    Subspace s;
    s.V = V;
    s.rows = rows;
    s.pivots = pivots;
    return s;
}

Subspace Subspace::zero(const SympSpace& V) {
    Subspace s;
    s.V = V;
    s.rows = Mat<Fp>(0, V.dim(), Fp::zero(V.p));
    return s;
}

bool Subspace::contains(const FpVec& v) const { return coefficients(v).has_value(); }

std::optional<FpVec> Subspace::coefficients(const FpVec& v) const {
    auto [coeff, ok] = express_in_rref(rows, pivots, v);
    if (!ok) return std::nullopt;
    return FpVec(coeff.begin(), coeff.end());
}

bool Subspace::is_isotropic() const {
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j)
            if (!V.omega(rows.row(i), rows.row(j)).is_zero()) return false;
    return true;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.V != b.V) throw std::invalid_argument("intersect: ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.V);
    long p = a.V.p;
    int d = a.V.dim();
    Mat<Fp> m(d, a.dim() + b.dim(), Fp::zero(p));
    for (int r = 0; r < d; ++r) {
        for (int i = 0; i < a.dim(); ++i) m.at(r, i) = a.rows.at(i, r);
        for (int j = 0; j < b.dim(); ++j) m.at(r, a.dim() + j) = -b.rows.at(j, r);
    }
    Mat<Fp> ker = nullspace(m, Fp::one(p));
    Mat<Fp> gens(ker.rows, d, Fp::zero(p));
    for (int k = 0; k < ker.rows; ++k) {
        FpVec v(static_cast<size_t>(d), Fp::zero(p));
        for (int i = 0; i < a.dim(); ++i)
            if (!ker.at(k, i).is_zero()) v = vec_add(v, vec_scale(ker.at(k, i), a.rows.row(i)));
        for (int c = 0; c < d; ++c) gens.at(k, c) = v[static_cast<size_t>(c)];
    }
    return Subspace::span(a.V, gens);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.V != b.V) throw std::invalid_argument("sum: ambient mismatch");
    Mat<Fp> m(a.dim() + b.dim(), a.V.dim(), Fp::zero(a.V.p));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = a.rows.at(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < m.cols; ++j) m.at(a.dim() + i, j) = b.rows.at(i, j);
    return Subspace::span(a.V, m);
}

Subspace perp(const Subspace& a) {
    long p = a.V.p;
    if (a.dim() == 0) {
        Mat<Fp> all = Mat<Fp>::identity(a.V.dim(), Fp::one(p));
        return Subspace::span(a.V, all);
    }
    // v ⊥ a  ⇔  (a.rows · form) v = 0
    Mat<Fp> m = mat_mul(a.rows, a.V.form);
    Mat<Fp> ker = nullspace(m, Fp::one(p));
    return Subspace::span(a.V, ker);
}

bool in_general_position(const Subspace& l, const Subspace& m) {
    return intersect(l, m).dim() == 0;
}

OrientedLagrangian::OrientedLagrangian(Subspace s, Fp sc) : sub(std::move(s)), scale(sc) {
    if (!sub.is_lagrangian()) throw std::invalid_argument("oriented Lagrangian: subspace is not Lagrangian");
    if (scale.is_zero()) throw std::invalid_argument("oriented Lagrangian: zero orientation");
}

OrientedIsotropic::OrientedIsotropic(Subspace s, Fp sc) : sub(std::move(s)), scale(sc) {
    if (!sub.is_isotropic()) throw std::invalid_argument("oriented isotropic: subspace is not isotropic");
    if (scale.is_zero()) throw std::invalid_argument("oriented isotropic: zero orientation");
}

Fp wedge_pairing(const OrientedLagrangian& l, const OrientedLagrangian& m) {
    if (l.space() != m.space()) throw std::invalid_argument("wedge_pairing: ambient mismatch");
    const SympSpace& V = l.space();
    int n = V.n;
    Mat<Fp> g(n, n, Fp::zero(V.p));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = V.omega(l.sub.rows.row(i), m.sub.rows.row(j));
    return l.scale * m.scale * det(g);
}

SpElement SpElement::make(const SympSpace& V, const Mat<Fp>& m) {
    if (m.rows != V.dim() || m.cols != V.dim()) throw std::invalid_argument("Sp element: dimension mismatch");
    Mat<Fp> check = mat_mul(transposed(m), mat_mul(V.form, m));
    if (check != V.form) throw std::invalid_argument("matrix does not preserve the symplectic form");
    SpElement g;
    g.V = V;
    g.mat = m;
    return g;
}

SpElement SpElement::identity(const SympSpace& V) {
    return make(V, Mat<Fp>::identity(V.dim(), Fp::one(V.p)));
}

FpVec SpElement::apply(const FpVec& v) const { return mat_apply(mat, v); }

SpElement SpElement::operator*(const SpElement& o) const {
    if (V != o.V) throw std::invalid_argument("Sp product: ambient mismatch");
    SpElement g;
    g.V = V;
    g.mat = mat_mul(mat, o.mat);
    return g;
}

SpElement SpElement::inverse() const {
    SpElement g;
    g.V = V;
    g.mat = mat_inverse(mat);
    return g;
}

SpElement symplectic_transvection(const SympSpace& V, const FpVec& v, const Fp& lambda) {
    Mat<Fp> m = Mat<Fp>::identity(V.dim(), Fp::one(V.p));
    for (int j = 0; j < V.dim(); ++j) {
        Fp w = V.omega(basis_vec(V.p, V.dim(), j), v);
        if (w.is_zero()) continue;
        for (int i = 0; i < V.dim(); ++i) m.at(i, j) += lambda * w * v[static_cast<size_t>(i)];
    }
    return SpElement::make(V, m);
}

SpElement direct_sum(const SpElement& g1, const SpElement& g2, const SympSpace& vprod) {
    int d1 = g1.V.dim(), d2 = g2.V.dim();
    Mat<Fp> m(d1 + d2, d1 + d2, Fp::zero(vprod.p));
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) m.at(i, j) = g1.mat.at(i, j);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) m.at(d1 + i, d1 + j) = g2.mat.at(i, j);
    return SpElement::make(vprod, m);
}

Subspace act(const SpElement& g, const Subspace& a) {
    if (g.V != a.V) throw std::invalid_argument("act: ambient mismatch");
    return Subspace::span(a.V, mat_mul(a.rows, transposed(g.mat)));
}

Fp change_of_basis_det(const Mat<Fp>& vectors, const Subspace& target) {
    if (vectors.rows != target.dim()) throw std::invalid_argument("change_of_basis_det: rank mismatch");
    if (vectors.rows == 0) return Fp::one(target.V.p);
    Mat<Fp> c(vectors.rows, vectors.rows, Fp::zero(target.V.p));
    for (int i = 0; i < vectors.rows; ++i) {
        auto [coeff, ok] = express_in_rref(target.rows, target.pivots, vectors.row(i));
        if (!ok) throw std::invalid_argument("change_of_basis_det: vector outside target");
        for (int j = 0; j < vectors.rows; ++j) c.at(i, j) = coeff[static_cast<size_t>(j)];
    }
    return det(c);
}

OrientedLagrangian act(const SpElement& g, const OrientedLagrangian& l) {
    Mat<Fp> image = mat_mul(l.sub.rows, transposed(g.mat));
    Subspace s = Subspace::span(l.space(), image);
    Fp factor = change_of_basis_det(image, s);
    return OrientedLagrangian(s, l.scale * factor);
}

Mat<Fp> complement_rows(const Subspace& inner, const Subspace& outer) {
    long p = outer.V.p;
    Mat<Fp> acc = inner.rows;
    Mat<Fp> comp(outer.dim() - inner.dim(), outer.V.dim(), Fp::zero(p));
    int taken = 0;
    for (int r = 0; r < outer.dim(); ++r) {
        Mat<Fp> trial(acc.rows + 1, acc.cols, Fp::zero(p));
        for (int i = 0; i < acc.rows; ++i)
            for (int j = 0; j < acc.cols; ++j) trial.at(i, j) = acc.at(i, j);
        for (int j = 0; j < acc.cols; ++j) trial.at(acc.rows, j) = outer.rows.at(r, j);
        if (rank(trial) == acc.rows + 1) {
            for (int j = 0; j < acc.cols; ++j) comp.at(taken, j) = outer.rows.at(r, j);
            ++taken;
            acc = trial;
        }
        if (taken == comp.rows) break;
    }
    if (taken != comp.rows) throw std::logic_error("complement_rows: inner subspace not contained in outer");
    return comp;
}

FpVec Reduction::project(const FpVec& v) const {
    Mat<Fp> basis(isotropic.dim() + lift_rows.rows, iperp.V.dim(), Fp::zero(W.p));
    for (int i = 0; i < isotropic.dim(); ++i)
        for (int j = 0; j < basis.cols; ++j) basis.at(i, j) = isotropic.rows.at(i, j);
    for (int i = 0; i < lift_rows.rows; ++i)
        for (int j = 0; j < basis.cols; ++j) basis.at(isotropic.dim() + i, j) = lift_rows.at(i, j);
    auto y = solve_combination(basis, v);
    if (!y) throw std::invalid_argument("project: vector outside I-perp");
    return FpVec(y->begin() + isotropic.dim(), y->end());
}

FpVec Reduction::section(const FpVec& w) const {
    FpVec v(static_cast<size_t>(iperp.V.dim()), Fp::zero(W.p));
    for (int i = 0; i < lift_rows.rows; ++i)
        if (!w[static_cast<size_t>(i)].is_zero()) v = vec_add(v, vec_scale(w[static_cast<size_t>(i)], lift_rows.row(i)));
    return v;
}

Reduction reduce(const SympSpace& V, const Subspace& isotropic) {
    if (!isotropic.is_isotropic()) throw std::invalid_argument("reduce: subspace is not isotropic");
    Subspace ip = perp(isotropic);
    Mat<Fp> lift = complement_rows(isotropic, ip);
    int k = lift.rows;
    Reduction red;
    red.isotropic = isotropic;
    red.iperp = ip;
    red.lift_rows = lift;
    if (k == 0) {
        // full Lagrangian reduction: zero symplectic space is represented as
        // n = 0 with an empty form; not constructible via with_form, so the
        // caller-facing contract exposes it through dimension 0 lift rows.
        SympSpace w;
        w.p = V.p;
        w.n = 0;
        w.form = Mat<Fp>(0, 0, Fp::zero(V.p));
        red.W = w;
        return red;
    }
    Mat<Fp> form(k, k, Fp::zero(V.p));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) form.at(i, j) = V.omega(lift.row(i), lift.row(j));
    red.W = SympSpace::with_form(V.p, form);
    return red;
}

SpElement induced_on_reduction(const Reduction& red, const SpElement& g) {
    if (act(g, red.isotropic) != red.isotropic)
        throw std::invalid_argument("induced_on_reduction: g does not preserve the isotropic subspace");
    int k = red.W.dim();
    Mat<Fp> m(k, k, Fp::zero(red.W.p));
    for (int j = 0; j < k; ++j) {
        FpVec w = basis_vec(red.W.p, k, j);
        FpVec image = red.project(g.apply(red.section(w)));
        for (int i = 0; i < k; ++i) m.at(i, j) = image[static_cast<size_t>(i)];
    }
    return SpElement::make(red.W, m);
}

long lagrangian_count(long q, int n) {
    long c = 1, qi = 1;
    for (int i = 1; i <= n; ++i) {
        qi *= q;
        c *= qi + 1;
    }
    return c;
}

long oriented_lagrangian_count(long q, int n) { return (q - 1) * lagrangian_count(q, n); }

std::vector<Subspace> enumerate_subspaces(const SympSpace& V, int d, bool isotropic_only) {
    long p = V.p;
    int dim = V.dim();
    std::vector<Subspace> out;
    std::vector<int> cols(static_cast<size_t>(d));
    // iterate pivot column combinations
    for (int i = 0; i < d; ++i) cols[static_cast<size_t>(i)] = i;
    auto advance = [&]() -> bool {
        int i = d - 1;
        while (i >= 0 && cols[static_cast<size_t>(i)] == dim - d + i) --i;
        if (i < 0) return false;
        ++cols[static_cast<size_t>(i)];
        for (int j = i + 1; j < d; ++j) cols[static_cast<size_t>(j)] = cols[static_cast<size_t>(j - 1)] + 1;
        return true;
    };
    if (d == 0) {
        out.push_back(Subspace::zero(V));
        return out;
    }
    do {
        std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
        for (int c : cols) is_pivot[static_cast<size_t>(c)] = true;
        std::vector<std::pair<int, int>> free_pos; // (row, col)
        for (int i = 0; i < d; ++i)
            for (int j = cols[static_cast<size_t>(i)] + 1; j < dim; ++j)
                if (!is_pivot[static_cast<size_t>(j)]) free_pos.emplace_back(i, j);
        std::vector<long> digits(free_pos.size(), 0);
        while (true) {
            Mat<Fp> m(d, dim, Fp::zero(p));
            for (int i = 0; i < d; ++i) m.at(i, cols[static_cast<size_t>(i)]) = Fp::one(p);
            for (size_t k = 0; k < free_pos.size(); ++k)
                m.at(free_pos[k].first, free_pos[k].second) = Fp(digits[k], p);
            Subspace s;
            s.V = V;
            s.rows = m;
            s.pivots = std::vector<int>(cols.begin(), cols.end());
            if (!isotropic_only || s.is_isotropic()) out.push_back(s);
            // odometer
            size_t k = 0;
            while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
            if (k == digits.size()) break;
        }
    } while (advance());
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        for (size_t i = 0; i < a.rows.a.size(); ++i) {
            long x = a.rows.a[i].value(), y = b.rows.a[i].value();
            if (x != y) return x < y;
        }
        return false;
    });
    return out;
}

std::vector<Subspace> enumerate_lagrangians(const SympSpace& V) {
    return enumerate_subspaces(V, V.n, true);
}

std::vector<OrientedLagrangian> enumerate_oriented_lagrangians(const SympSpace& V, long cap) {
    long expected = oriented_lagrangian_count(V.p, V.n);
    if (expected > cap) throw std::invalid_argument("oriented Lagrangian enumeration exceeds cap");
    std::vector<OrientedLagrangian> out;
    out.reserve(static_cast<size_t>(expected));
    for (const Subspace& l : enumerate_lagrangians(V))
        for (long s = 1; s < V.p; ++s) out.emplace_back(l, Fp(s, V.p));
    return out;
}

std::vector<SpElement> enumerate_sp(const SympSpace& V, long cap) {
    int d = V.dim();
    long total = 1;
    for (int i = 0; i < d * d; ++i) {
        total *= V.p;
        if (total > cap * 100) throw std::invalid_argument("Sp enumeration infeasible at this size");
    }
    std::vector<SpElement> out;
    std::vector<long> digits(static_cast<size_t>(d) * d, 0);
    while (true) {
        Mat<Fp> m(d, d, Fp::zero(V.p));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.at(i, j) = Fp(digits[static_cast<size_t>(i) * d + j], V.p);
        Mat<Fp> check = mat_mul(transposed(m), mat_mul(V.form, m));
        if (check == V.form) {
            SpElement g;
            g.V = V;
            g.mat = m;
            out.push_back(g);
            if (static_cast<long>(out.size()) > cap) throw std::invalid_argument("Sp enumeration exceeds cap");
        }
        size_t k = 0;
        while (k < digits.size() && ++digits[k] == V.p) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    return out;
}

OrientedLagrangian graph_lagrangian(const SpElement& g) {
    const SympSpace& V = g.V;
    SympSpace prod = product(V.dual(), V);
    Mat<Fp> rows(V.dim(), 2 * V.dim(), Fp::zero(V.p));
    for (int i = 0; i < V.dim(); ++i) {
        FpVec e = basis_vec(V.p, V.dim(), i);
        FpVec ge = g.apply(e);
        for (int j = 0; j < V.dim(); ++j) {
            rows.at(i, j) = e[static_cast<size_t>(j)];
            rows.at(i, V.dim() + j) = ge[static_cast<size_t>(j)];
        }
    }
    Subspace s = Subspace::span(prod, rows);
    Fp scale = change_of_basis_det(rows, s);
    return OrientedLagrangian(s, scale);
}

OrientedLagrangian product_oriented(const OrientedLagrangian& l1, const OrientedLagrangian& l2,
                                    const SympSpace& vprod) {
    int d1 = l1.space().dim(), d2 = l2.space().dim();
    Mat<Fp> rows(l1.sub.dim() + l2.sub.dim(), d1 + d2, Fp::zero(vprod.p));
    for (int i = 0; i < l1.sub.dim(); ++i)
        for (int j = 0; j < d1; ++j) rows.at(i, j) = l1.sub.rows.at(i, j);
    for (int i = 0; i < l2.sub.dim(); ++i)
        for (int j = 0; j < d2; ++j) rows.at(l1.sub.dim() + i, d1 + j) = l2.sub.rows.at(i, j);
    Subspace s = Subspace::span(vprod, rows);
    Fp factor = change_of_basis_det(rows, s);
    return OrientedLagrangian(s, l1.scale * l2.scale * factor);
}

static std::vector<long> oriented_key(const OrientedLagrangian& l) {
    std::vector<long> key;
    key.reserve(l.sub.rows.a.size() + 1);
    for (const Fp& x : l.sub.rows.a) key.push_back(x.value());
    key.push_back(l.scale.value());
    return key;
}

LagrangianTable::LagrangianTable(const SympSpace& V, long cap) : items(enumerate_oriented_lagrangians(V, cap)) {
    for (size_t i = 0; i < items.size(); ++i) index_[oriented_key(items[i])] = static_cast<int>(i);
}

int LagrangianTable::index_of(const OrientedLagrangian& l) const {
    auto it = index_.find(oriented_key(l));
    if (it == index_.end()) throw std::invalid_argument("oriented Lagrangian not in table");
    return it->second;
}

} // namespace weil
