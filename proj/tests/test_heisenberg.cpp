#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weil/heisenberg.hpp"

using namespace weil;

namespace {

OrientedLagrangian ol(const SympSpace& V, const std::vector<long>& v, long scale = 1) {
    Mat<Fp> m(1, static_cast<int>(v.size()), Fp::zero(V.p));
    for (size_t j = 0; j < v.size(); ++j) m.at(0, static_cast<int>(j)) = Fp(v[j], V.p);
    return OrientedLagrangian(Subspace::span(V, m), Fp(scale, V.p));
}

} // namespace

TEST_CASE("group law") {
    SympSpace V = SympSpace::standard(3, 1);
    HElement a{fp_vec(3, {1, 0}), Fp(0, 3)};
    HElement b{fp_vec(3, {0, 1}), Fp(0, 3)};
    HElement ab = h_mul(V, a, b);
    CHECK(ab.v == fp_vec(3, {1, 1}));
    CHECK(ab.z.value() == 2); // half = 2 in F_3 and omega = 1

    for (const HElement& h : enumerate_h(V)) {
        CHECK(h_mul(V, h, h_identity(V)) == h);
        CHECK(h_mul(V, h_identity(V), h) == h);
        CHECK(h_mul(V, h, h_inv(V, h)) == h_identity(V));
        CHECK(h_mul(V, h_inv(V, h), h) == h_identity(V));
    }
    CHECK(h_inv(V, HElement{fp_vec(3, {0, 0}), Fp(2, 3)}) == HElement{fp_vec(3, {0, 0}), Fp(1, 3)});
}

TEST_CASE("associativity and commutators") {
    SympSpace V = SympSpace::standard(3, 1);
    auto hs = enumerate_h(V);
    for (const auto& a : hs)
        for (const auto& b : hs) {
            // commutator [(v,0),(v',0)] = (0, omega(v,v'))
            HElement x{a.v, Fp(0, 3)}, y{b.v, Fp(0, 3)};
            HElement comm = h_mul(V, h_mul(V, x, y), h_inv(V, h_mul(V, y, x)));
            CHECK(vec_is_zero(comm.v));
            CHECK(comm.z == V.omega(a.v, b.v));
        }
    // spot-check associativity on a grid
    for (size_t i = 0; i < hs.size(); i += 5)
        for (size_t j = 0; j < hs.size(); j += 3)
            for (size_t k = 0; k < hs.size(); k += 7)
                CHECK(h_mul(V, h_mul(V, hs[i], hs[j]), hs[k]) == h_mul(V, hs[i], h_mul(V, hs[j], hs[k])));
}

TEST_CASE("enumeration order and index") {
    SympSpace V = SympSpace::standard(3, 1);
    auto hs = enumerate_h(V);
    CHECK(hs.size() == 27);
    for (size_t i = 0; i < hs.size(); ++i) CHECK(h_index(V, hs[i]) == static_cast<long>(i));
}

TEST_CASE("model transversal") {
    SympSpace V = SympSpace::standard(3, 1);
    Model m = build_model(ol(V, {1, 0}));
    CHECK(m.dim() == 3);
    for (long b = 0; b < 3; ++b) CHECK(m.transversal[static_cast<size_t>(b)].v == fp_vec(3, {0, b}));

    SympSpace V4 = SympSpace::standard(3, 2);
    for (const Subspace& l : enumerate_lagrangians(V4))
        CHECK(build_model(OrientedLagrangian(l, Fp::one(3))).dim() == 9);
}

TEST_CASE("index factorization") {
    SympSpace V = SympSpace::standard(3, 1);
    OrientedLagrangian l = ol(V, {1, 0});
    Model m = build_model(l);

    // closed form: ((a,b), z) = (0, z - ab/2)·((a,0),0)·((0,b),0)
    Fp half = Fp::half(3);
    for (const HElement& h : enumerate_h(V)) {
        ModelIndex idx = m.index(h);
        CHECK(idx.z0 == h.z - half * h.v[0] * h.v[1]);
        CHECK(idx.rep == h.v[1].value());
    }

    // oracle: the factorization is the unique one over Z x L x transversal
    for (const HElement& h : enumerate_h(V)) {
        ModelIndex idx = m.index(h);
        int hits = 0;
        for (long z0 = 0; z0 < 3; ++z0)
            for (long lc = 0; lc < 3; ++lc)
                for (int rep = 0; rep < 3; ++rep) {
                    HElement prod = h_mul(V, HElement{fp_vec(3, {0, 0}), Fp(z0, 3)},
                                          h_mul(V, HElement{fp_vec(3, {lc, 0}), Fp(0, 3)},
                                                m.transversal[static_cast<size_t>(rep)]));
                    if (prod == h) {
                        ++hits;
                        CHECK(idx.z0.value() == z0);
                        CHECK(idx.rep == rep);
                    }
                }
        CHECK(hits == 1);
    }
}

TEST_CASE("pi is a representation with central character psi") {
    for (auto [p, n] : {std::pair<long, int>{3, 1}, {5, 1}}) {
        SympSpace V = SympSpace::standard(p, n);
        for (const auto& lag : enumerate_oriented_lagrangians(V)) {
            Model m = build_model(lag);
            CHECK(pi_matrix(m, h_identity(V)) == CycMat::identity(m.dim(), Cyc::one(p)));
            for (long z = 0; z < p; ++z) {
                CycMat center = pi_matrix(m, {fp_vec(p, std::vector<long>(V.dim(), 0)), Fp(z, p)});
                CycMat expected = CycMat::identity(m.dim(), psi(Fp(z, p)));
                CHECK(center == expected);
            }
        }
    }

    // exhaustive homomorphism check at (3,1)
    SympSpace V = SympSpace::standard(3, 1);
    Model m = build_model(ol(V, {1, 0}));
    auto hs = enumerate_h(V);
    std::vector<CycMat> mats;
    mats.reserve(hs.size());
    for (const auto& h : hs) mats.push_back(pi_matrix(m, h));
    for (size_t i = 0; i < hs.size(); ++i)
        for (size_t j = 0; j < hs.size(); ++j) {
            long k = h_index(V, h_mul(V, hs[i], hs[j]));
            CHECK(mat_mul(mats[i], mats[j]) == mats[static_cast<size_t>(k)]);
        }
}

TEST_CASE("representation property, exhaustive at (3,2) and (5,1)") {
    // every pi(h) is a generalized permutation; composing in the
    // (permutation, phase-exponent) form makes the full sweep cheap while the
    // matrix route cross-checks a sample
    for (auto [p, n] : {std::pair<long, int>{3, 2}, {5, 1}}) {
        SympSpace V = SympSpace::standard(p, n);
        auto lags = enumerate_oriented_lagrangians(V);
        Model m = build_model(lags[0]);
        auto hs = enumerate_h(V);
        int d = m.dim();
        std::vector<std::vector<int>> sig(hs.size(), std::vector<int>(static_cast<size_t>(d)));
        std::vector<std::vector<long>> phi(hs.size(), std::vector<long>(static_cast<size_t>(d)));
        for (size_t x = 0; x < hs.size(); ++x)
            for (int i = 0; i < d; ++i) {
                ModelIndex idx = m.index(h_mul(V, m.transversal[static_cast<size_t>(i)], hs[x]));
                sig[x][static_cast<size_t>(i)] = idx.rep;
                phi[x][static_cast<size_t>(i)] = idx.z0.value();
            }
        long failures = 0;
        for (size_t x = 0; x < hs.size(); ++x)
            for (size_t y = 0; y < hs.size(); ++y) {
                size_t z = static_cast<size_t>(h_index(V, h_mul(V, hs[x], hs[y])));
                for (int i = 0; i < d; ++i) {
                    int mid = sig[x][static_cast<size_t>(i)];
                    if (sig[z][static_cast<size_t>(i)] != sig[y][static_cast<size_t>(mid)] ||
                        (phi[x][static_cast<size_t>(i)] + phi[y][static_cast<size_t>(mid)] -
                         phi[z][static_cast<size_t>(i)]) % p != 0)
                        ++failures;
                }
            }
        CHECK(failures == 0);
        // matrix-level cross-check on a grid of pairs
        for (size_t x = 0; x < hs.size(); x += 17)
            for (size_t y = 0; y < hs.size(); y += 29)
                CHECK(mat_mul(pi_matrix(m, hs[x]), pi_matrix(m, hs[y])) == pi_matrix(m, h_mul(V, hs[x], hs[y])));
    }
}

TEST_CASE("pi matrices are generalized permutations") {
    SympSpace V = SympSpace::standard(3, 1);
    Model m = build_model(ol(V, {1, 1}));
    for (const HElement& h : enumerate_h(V)) {
        CycMat mat = pi_matrix(m, h);
        for (int i = 0; i < mat.rows; ++i) {
            int nonzero_row = 0, nonzero_col = 0;
            for (int j = 0; j < mat.cols; ++j) {
                if (!mat.at(i, j).is_zero()) ++nonzero_row;
                if (!mat.at(j, i).is_zero()) ++nonzero_col;
            }
            CHECK(nonzero_row == 1);
            CHECK(nonzero_col == 1);
        }
    }
}

// dense nullity oracle for the commutant, independent of the orbit method
static long commutant_dim_dense(const Model& m) {
    const SympSpace& V = m.space();
    int d = m.dim();
    auto hs = enumerate_h(V);
    CycMat system(static_cast<int>(hs.size()) * d * d, d * d, Cyc::zero(V.p));
    int row = 0;
    for (const auto& h : hs) {
        CycMat pi = pi_matrix(m, h);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                // coefficient of A[a][b] in (A pi - pi A)[i][j]
                for (int b = 0; b < d; ++b) system.at(row, i * d + b) += pi.at(b, j);
                for (int a = 0; a < d; ++a) system.at(row, a * d + j) -= pi.at(i, a);
                ++row;
            }
    }
    return d * d - rank(system);
}

TEST_CASE("commutant is one-dimensional (irreducibility witness)") {
    SympSpace V3 = SympSpace::standard(3, 1);
    for (const auto& lag : enumerate_oriented_lagrangians(V3)) {
        Model m = build_model(lag);
        CHECK(commutant_dimension(m) == 1);
    }
    // cross-check the orbit computation against dense exact linear algebra
    Model m3 = build_model(ol(V3, {1, 0}));
    CHECK(commutant_dim_dense(m3) == 1);
    Model m3b = build_model(ol(V3, {1, 2}));
    CHECK(commutant_dim_dense(m3b) == 1);

    SympSpace V5 = SympSpace::standard(5, 1);
    for (const auto& lag : enumerate_oriented_lagrangians(V5)) CHECK(commutant_dimension(build_model(lag)) == 1);
}

TEST_CASE("model vector evaluation") {
    SympSpace V = SympSpace::standard(3, 1);
    Model m = build_model(ol(V, {1, 0}));
    ModelVector f = zero_vector(m);
    f.values[1] = Cyc::one(3);
    // f(z·l·t_1) = psi(z)
    HElement shifted = h_mul(V, HElement{fp_vec(3, {0, 0}), Fp(2, 3)},
                             h_mul(V, HElement{fp_vec(3, {2, 0}), Fp(0, 3)}, m.transversal[1]));
    CHECK(f.evaluate(shifted) == psi(Fp(2, 3)));
    CHECK(f.evaluate(m.transversal[0]).is_zero());
}
