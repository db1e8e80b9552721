#include "weil/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>

namespace weil {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::string sampled_scope(long count, std::uint64_t seed) {
    std::ostringstream os;
    os << "sampled(count=" << count << ",seed=" << seed << ")";
    return os.str();
}

void absorb(SuiteResult& suite, const SweepResult& r, std::size_t max_failures) {
    suite.checked += r.checked;
    suite.failed += r.failed;
    for (const auto& f : r.failures) {
        if (suite.failures.size() >= max_failures) break;
        suite.failures.push_back("#" + std::to_string(f.index) + ": " + f.what);
    }
    if (r.failed > 0) suite.passed = false;
}

void note_failure(SuiteResult& suite, const std::string& what, std::size_t max_failures) {
    ++suite.failed;
    suite.passed = false;
    if (suite.failures.size() < max_failures) suite.failures.push_back(what);
}

struct VerifyContext {
    VerifyConfig cfg;
    SympSpace V;
    IntertwinerTable table;
    CanonicalSpace space;

    VerifyContext(const VerifyConfig& c)
        : cfg(c),
          V(SympSpace::standard(c.p, c.n)),
          table(build_operator_table(V, c.policy, c.cap)),
          space(V, c.cap) {}
};

SuiteResult suite_multiplicativity(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"multiplicativity", "exhaustive", 0, true, 0, {}, 0};
    long n = ctx.table.size();
    long total = n * n * n;
    if (total <= 1000000) {
        SweepResult r = sweep_check(total, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            int a = static_cast<int>(idx / (n * n));
            int b = static_cast<int>((idx / n) % n);
            int c = static_cast<int>(idx % n);
            if (mat_mul(ctx.table.op(a, b), ctx.table.op(b, c)) != ctx.table.op(a, c))
                return "F(" + std::to_string(a) + "," + std::to_string(b) + ")∘F(" + std::to_string(b) + "," +
                       std::to_string(c) + ") != F(" + std::to_string(a) + "," + std::to_string(c) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    } else {
        suite.scope = sampled_scope(ctx.cfg.sample_size, ctx.cfg.seed);
        DetRng rng(ctx.cfg.seed);
        std::vector<std::array<int, 3>> triples(static_cast<size_t>(ctx.cfg.sample_size));
        for (auto& t : triples)
            t = {static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))};
        SweepResult r = sweep_check(ctx.cfg.sample_size, ctx.cfg.policy, ctx.cfg.max_failures,
                                    [&](long idx) -> std::optional<std::string> {
            auto [a, b, c] = triples[static_cast<size_t>(idx)];
            if (mat_mul(ctx.table.op(a, b), ctx.table.op(b, c)) != ctx.table.op(a, c))
                return "F(" + std::to_string(a) + "," + std::to_string(b) + ")∘F(" + std::to_string(b) + "," +
                       std::to_string(c) + ") != F(" + std::to_string(a) + "," + std::to_string(c) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_ansatz_consistency(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"ansatz-consistency", "exhaustive", 0, true, 0, {}, 0};
    long n = ctx.table.size();
    SweepResult r = sweep_check(n * n, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
        int a = static_cast<int>(idx / n), b = static_cast<int>(idx % n);
        if (!in_general_position(ctx.table.lags[a].sub, ctx.table.lags[b].sub)) return std::nullopt;
        if (ansatz_operator(ctx.table.lags[a], ctx.table.lags[b]).matrix != ctx.table.op(a, b))
            return "ansatz != closed at pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return std::nullopt;
    });
    absorb(suite, r, ctx.cfg.max_failures);
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_identity_sigma(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"identity-and-sigma-covariance", "exhaustive", 0, true, 0, {}, 0};
    long n = ctx.table.size();
    int d = ctx.space.dim();
    CycMat id = CycMat::identity(d, Cyc::one(ctx.cfg.p));
    for (int a = 0; a < n; ++a) {
        ++suite.checked;
        if (ctx.table.op(a, a) != id) note_failure(suite, "F(L,L) != Id at " + std::to_string(a), ctx.cfg.max_failures);
    }

    long pairs = n * n * (ctx.cfg.p - 1);
    if (pairs <= 20000) {
        SweepResult r = sweep_check(pairs, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            long t = 1 + idx % (ctx.cfg.p - 1);
            int a = static_cast<int>(idx / (ctx.cfg.p - 1) / n), b = static_cast<int>((idx / (ctx.cfg.p - 1)) % n);
            Cyc sig = Cyc::rational(ctx.cfg.p, legendre(Fp(t, ctx.cfg.p)));
            CycMat expected = ctx.table.op(a, b);
            for (auto& e : expected.a) e = e * sig;
            if (closed_operator(ctx.table.lags[a].rescaled(Fp(t, ctx.cfg.p)), ctx.table.lags[b]).matrix != expected)
                return "sigma covariance fails at (" + std::to_string(a) + "," + std::to_string(b) + ",t=" +
                       std::to_string(t) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    } else {
        suite.scope = sampled_scope(ctx.cfg.sample_size, ctx.cfg.seed + 1);
        DetRng rng(ctx.cfg.seed + 1);
        long count = std::min<long>(ctx.cfg.sample_size, 2000);
        std::vector<std::array<long, 3>> items(static_cast<size_t>(count));
        for (auto& it : items) it = {rng.below(n), rng.below(n), 1 + rng.below(ctx.cfg.p - 1)};
        SweepResult r = sweep_check(count, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            auto [a, b, t] = items[static_cast<size_t>(idx)];
            Cyc sig = Cyc::rational(ctx.cfg.p, legendre(Fp(t, ctx.cfg.p)));
            CycMat expected = ctx.table.op(static_cast<int>(a), static_cast<int>(b));
            for (auto& e : expected.a) e = e * sig;
            if (closed_operator(ctx.table.lags[static_cast<int>(a)].rescaled(Fp(t, ctx.cfg.p)),
                                ctx.table.lags[static_cast<int>(b)]).matrix != expected)
                return "sigma covariance fails at sampled (" + std::to_string(a) + "," + std::to_string(b) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_kernel_coherence(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"kernel-coherence", "exhaustive", 0, true, 0, {}, 0};
    long n = ctx.table.size();
    std::vector<std::pair<int, int>> pairs;
    if (n <= 24) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
    } else {
        suite.scope = sampled_scope(40, ctx.cfg.seed + 2);
        DetRng rng(ctx.cfg.seed + 2);
        for (int i = 0; i < 40; ++i)
            pairs.emplace_back(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)));
    }
    SweepResult r = sweep_check(static_cast<long>(pairs.size()), ctx.cfg.policy, ctx.cfg.max_failures,
                                [&](long idx) -> std::optional<std::string> {
        auto [a, b] = pairs[static_cast<size_t>(idx)];
        const OrientedLagrangian& m = ctx.table.lags[a];
        const OrientedLagrangian& l = ctx.table.lags[b];
        if (operator_of_kernel(canonical_kernel(m, l)).matrix != ctx.table.op(a, b))
            return "I[canonical_kernel] != closed at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (!in_general_position(m.sub, l.sub)) {
            Kernel reference = canonical_kernel(m, l);
            int auxiliaries = 0;
            for (int c = 0; c < n; ++c) {
                if (!in_general_position(ctx.table.lags[c].sub, m.sub)) continue;
                if (!in_general_position(ctx.table.lags[c].sub, l.sub)) continue;
                ++auxiliaries;
                if (canonical_kernel_via(m, l, ctx.table.lags[c]).values != reference.values)
                    return "auxiliary dependence at (" + std::to_string(a) + "," + std::to_string(b) + ") via " +
                           std::to_string(c);
            }
            if (auxiliaries == 0) return std::string("no auxiliary found");
        }
        return std::nullopt;
    });
    absorb(suite, r, ctx.cfg.max_failures);
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_heisenberg(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"heisenberg-representation", "exhaustive", 0, true, 0, {}, 0};
    const Model& model = ctx.space.base_model;
    auto hs = enumerate_h(ctx.V);
    long hn = static_cast<long>(hs.size());

    // central character
    for (long z = 0; z < ctx.cfg.p; ++z) {
        ++suite.checked;
        CycMat center = pi_matrix(model, {FpVec(static_cast<size_t>(ctx.V.dim()), Fp::zero(ctx.cfg.p)), Fp(z, ctx.cfg.p)});
        if (center != CycMat::identity(model.dim(), psi(Fp(z, ctx.cfg.p))))
            note_failure(suite, "center does not act by psi at z=" + std::to_string(z), ctx.cfg.max_failures);
    }

    // representation property
    if (hn * hn <= 20000) {
        std::vector<CycMat> mats;
        mats.reserve(hs.size());
        for (const auto& h : hs) mats.push_back(pi_matrix(model, h));
        SweepResult r = sweep_check(hn * hn, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            long i = idx / hn, j = idx % hn;
            long k = h_index(ctx.V, h_mul(ctx.V, hs[static_cast<size_t>(i)], hs[static_cast<size_t>(j)]));
            if (mat_mul(mats[static_cast<size_t>(i)], mats[static_cast<size_t>(j)]) != mats[static_cast<size_t>(k)])
                return "pi(h1)pi(h2) != pi(h1 h2) at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    } else {
        suite.scope = sampled_scope(2000, ctx.cfg.seed + 3);
        DetRng rng(ctx.cfg.seed + 3);
        std::vector<std::pair<long, long>> samples(2000);
        for (auto& s : samples) s = {rng.below(hn), rng.below(hn)};
        SweepResult r = sweep_check(2000, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            auto [i, j] = samples[static_cast<size_t>(idx)];
            HElement prod = h_mul(ctx.V, hs[static_cast<size_t>(i)], hs[static_cast<size_t>(j)]);
            if (mat_mul(pi_matrix(model, hs[static_cast<size_t>(i)]), pi_matrix(model, hs[static_cast<size_t>(j)])) !=
                pi_matrix(model, prod))
                return "pi(h1)pi(h2) != pi(h1 h2) at sampled (" + std::to_string(i) + "," + std::to_string(j) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    }

    // irreducibility witness: one-dimensional commutant for every model
    for (const Subspace& l : enumerate_lagrangians(ctx.V)) {
        ++suite.checked;
        long dim = commutant_dimension(build_model(OrientedLagrangian(l, Fp::one(ctx.cfg.p))));
        if (dim != 1) note_failure(suite, "commutant dimension " + std::to_string(dim) + " != 1", ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

std::vector<SpElement> sampled_sp(const SympSpace& V, DetRng& rng, long count) {
    std::vector<SpElement> out;
    out.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        SpElement g = SpElement::identity(V);
        for (int t = 0; t < 4; ++t) {
            FpVec v(static_cast<size_t>(V.dim()), Fp::zero(V.p));
            bool nonzero = false;
            while (!nonzero) {
                for (auto& x : v) x = Fp(rng.below(V.p), V.p);
                nonzero = !vec_is_zero(v);
            }
            g = g * symplectic_transvection(V, v, Fp(1 + rng.below(V.p - 1), V.p));
        }
        out.push_back(g);
    }
    return out;
}

SuiteResult suite_weil_homomorphism(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"weil-homomorphism", "exhaustive", 0, true, 0, {}, 0};
    if (ctx.cfg.n == 1) {
        auto sps = enumerate_sp(ctx.V);
        std::vector<CycMat> mats;
        mats.reserve(sps.size());
        for (const auto& g : sps) mats.push_back(rho(ctx.space, g));
        long n = static_cast<long>(sps.size());
        SweepResult r = sweep_check(n * n, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            long i = idx / n, j = idx % n;
            if (mat_mul(mats[static_cast<size_t>(i)], mats[static_cast<size_t>(j)]) !=
                rho(ctx.space, sps[static_cast<size_t>(i)] * sps[static_cast<size_t>(j)]))
                return "rho(g1)rho(g2) != rho(g1 g2) at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    } else {
        long count = std::min<long>(ctx.cfg.sample_size, 1000);
        suite.scope = sampled_scope(count, ctx.cfg.seed + 4);
        DetRng rng(ctx.cfg.seed + 4);
        std::vector<SpElement> gs = sampled_sp(ctx.V, rng, 2 * count);
        SweepResult r = sweep_check(count, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            const SpElement& g1 = gs[static_cast<size_t>(2 * idx)];
            const SpElement& g2 = gs[static_cast<size_t>(2 * idx + 1)];
            if (mat_mul(rho(ctx.space, g1), rho(ctx.space, g2)) != rho(ctx.space, g1 * g2))
                return "rho(g1)rho(g2) != rho(g1 g2) at sample " + std::to_string(idx);
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_weil_pi_compat(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"weil-heisenberg-compatibility", "exhaustive", 0, true, 0, {}, 0};
    auto hs = enumerate_h(ctx.V);
    if (ctx.cfg.n == 1) {
        auto sps = enumerate_sp(ctx.V);
        long hn = static_cast<long>(hs.size());
        long total = static_cast<long>(sps.size()) * hn;
        SweepResult r = sweep_check(total, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            const SpElement& g = sps[static_cast<size_t>(idx / hn)];
            const HElement& h = hs[static_cast<size_t>(idx % hn)];
            CycMat rg = rho(ctx.space, g);
            if (mat_mul(rg, pi_canonical(ctx.space, h)) != mat_mul(pi_canonical(ctx.space, sp_act(g, h)), rg))
                return "rho pi rho^-1 != pi(g·h) at index " + std::to_string(idx);
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    } else {
        long count = std::min<long>(ctx.cfg.sample_size, 500);
        suite.scope = sampled_scope(count, ctx.cfg.seed + 5);
        DetRng rng(ctx.cfg.seed + 5);
        std::vector<SpElement> gs = sampled_sp(ctx.V, rng, count);
        std::vector<long> hidx(static_cast<size_t>(count));
        for (auto& i : hidx) i = rng.below(static_cast<long>(hs.size()));
        SweepResult r = sweep_check(count, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
            const SpElement& g = gs[static_cast<size_t>(idx)];
            const HElement& h = hs[static_cast<size_t>(hidx[static_cast<size_t>(idx)])];
            CycMat rg = rho(ctx.space, g);
            if (mat_mul(rg, pi_canonical(ctx.space, h)) != mat_mul(pi_canonical(ctx.space, sp_act(g, h)), rg))
                return "rho pi rho^-1 != pi(g·h) at sample " + std::to_string(idx);
            return std::nullopt;
        });
        absorb(suite, r, ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_fourier(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"total-fourier-idempotent", "exhaustive", 0, true, 0, {}, 0};
    CycMat f = total_fourier(ctx.space, ctx.table);
    ++suite.checked;
    long expected_rank = 1;
    for (int i = 0; i < ctx.cfg.n; ++i) expected_rank *= ctx.cfg.p;
    long actual_rank = rank(f);
    suite.scope = "exhaustive; rank=" + std::to_string(actual_rank) + " on dimension " + std::to_string(f.rows);
    if (actual_rank != expected_rank)
        note_failure(suite, "rank(F) != q^n", ctx.cfg.max_failures);
    if (f.rows <= 200) {
        ++suite.checked;
        // idempotency via row-parallel product
        CycMat ff(f.rows, f.cols, Cyc::zero(ctx.cfg.p));
        sweep_for(f.rows, ctx.cfg.policy, [&](long i) {
            for (int k = 0; k < f.cols; ++k) {
                const Cyc& x = f.at(static_cast<int>(i), k);
                if (x.is_zero()) continue;
                for (int j = 0; j < f.cols; ++j) ff.at(static_cast<int>(i), j) += x * f.at(k, j);
            }
        });
        if (ff != f) note_failure(suite, "F^2 != F", ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_gauss(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"gauss-sums", "exhaustive", 0, true, 0, {}, 0};
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        ++suite.checked;
        Cyc g = gauss_sum(p);
        if (g * g.conj() != Cyc::rational(p, p))
            note_failure(suite, "G1·conj(G1) != p at p=" + std::to_string(p), ctx.cfg.max_failures);
        ComplexApprox e = g.embed();
        double root = std::sqrt(static_cast<double>(p));
        bool ok;
        if (p % 4 == 1)
            ok = std::abs(e.im) <= 1e-10 && std::abs(std::abs(e.re) - root) <= 1e-10;
        else
            ok = std::abs(e.re) <= 1e-10 && std::abs(std::abs(e.im) - root) <= 1e-10;
        if (!ok)
            note_failure(suite, "embed(G1) off the expected axis/magnitude at p=" + std::to_string(p),
                         ctx.cfg.max_failures);
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_unitarity(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"unitarity", "exhaustive", 0, true, 0, {}, 0};
    long n = ctx.table.size();
    SweepResult r = sweep_check(n * n, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
        double defect = unitarity_defect(ctx.table.ops[static_cast<size_t>(idx)]);
        if (defect > 1e-10) return "operator " + std::to_string(idx) + " defect " + std::to_string(defect);
        return std::nullopt;
    });
    absorb(suite, r, ctx.cfg.max_failures);

    if (ctx.cfg.n == 1) {
        for (const auto& g : enumerate_sp(ctx.V)) {
            ++suite.checked;
            double defect = unitarity_defect(rho(ctx.space, g));
            if (defect > 1e-10) note_failure(suite, "rho(g) defect " + std::to_string(defect), ctx.cfg.max_failures);
        }
    } else {
        DetRng rng(ctx.cfg.seed + 6);
        for (const auto& g : sampled_sp(ctx.V, rng, 50)) {
            ++suite.checked;
            double defect = unitarity_defect(rho(ctx.space, g));
            if (defect > 1e-10) note_failure(suite, "rho(g) defect " + std::to_string(defect), ctx.cfg.max_failures);
        }
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_cartesian(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"cartesian-compatibility", sampled_scope(100, ctx.cfg.seed + 7), 0, true, 0, {}, 0};
    SympSpace P = product(ctx.V, ctx.V);
    CanonicalSpace sp(P, std::max<long>(ctx.cfg.cap, oriented_lagrangian_count(ctx.cfg.p, 2)));
    CycMat alpha = cartesian_iso(sp, ctx.space, ctx.space);
    ++suite.checked;
    if (rank(alpha) != ctx.space.dim() * ctx.space.dim())
        note_failure(suite, "alpha is not invertible", ctx.cfg.max_failures);

    auto sps = enumerate_sp(ctx.V);
    DetRng rng(ctx.cfg.seed + 7);
    std::vector<std::pair<size_t, size_t>> pairs(100);
    for (auto& pr : pairs)
        pr = {static_cast<size_t>(rng.below(static_cast<long>(sps.size()))),
              static_cast<size_t>(rng.below(static_cast<long>(sps.size())))};
    SweepResult r = sweep_check(100, ctx.cfg.policy, ctx.cfg.max_failures, [&](long idx) -> std::optional<std::string> {
        auto [i, j] = pairs[static_cast<size_t>(idx)];
        SpElement g12 = direct_sum(sps[i], sps[j], P);
        if (mat_mul(alpha, rho(sp, g12)) != mat_mul(kron(rho(ctx.space, sps[i]), rho(ctx.space, sps[j])), alpha))
            return "cartesian intertwining fails at sampled pair " + std::to_string(idx);
        return std::nullopt;
    });
    absorb(suite, r, ctx.cfg.max_failures);
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_duality(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"duality-pairing", "exhaustive", 0, true, 0, {}, 0};
    CanonicalSpace dual_space(ctx.V.dual(), ctx.cfg.cap);
    CycMat gram = duality_gram(dual_space, ctx.space);
    ++suite.checked;
    if (rank(gram) != ctx.space.dim()) note_failure(suite, "Gram matrix is singular", ctx.cfg.max_failures);

    DetRng rng(ctx.cfg.seed + 8);
    for (int trial = 0; trial < 20; ++trial) {
        FlatSection sbar = zero_section(dual_space), s = zero_section(ctx.space);
        for (auto& c : sbar.coords) c = Cyc::zeta_pow(ctx.cfg.p, rng.below(ctx.cfg.p)).scaled(rng.below(5) - 2);
        for (auto& c : s.coords) c = Cyc::zeta_pow(ctx.cfg.p, rng.below(ctx.cfg.p)).scaled(rng.below(5) - 2);
        Cyc base_value = duality_pairing(dual_space, sbar, ctx.space, s);
        for (int a = 0; a < ctx.space.lags.size(); ++a) {
            ++suite.checked;
            if (duality_pairing_at(dual_space, sbar, ctx.space, s, ctx.space.lags[a]) != base_value) {
                note_failure(suite, "pairing depends on the evaluation Lagrangian", ctx.cfg.max_failures);
                break;
            }
        }
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_reduction(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"symplectic-reduction", "exhaustive", 0, true, 0, {}, 0};
    Mat<Fp> irows(1, ctx.V.dim(), Fp::zero(ctx.cfg.p));
    irows.at(0, 0) = Fp::one(ctx.cfg.p);
    OrientedIsotropic line(Subspace::span(ctx.V, irows), Fp::one(ctx.cfg.p));
    ReductionIso iso = reduction_iso(ctx.space, line);
    long expected = 1;
    for (int i = 0; i < ctx.cfg.n - 1; ++i) expected *= ctx.cfg.p;
    ++suite.checked;
    if (iso.invariant_dim() != expected) note_failure(suite, "invariant dimension != q^(n-1)", ctx.cfg.max_failures);

    // stabilizer elements: transvections along I-perp vectors fix I° exactly
    DetRng rng(ctx.cfg.seed + 9);
    Subspace iperp = perp(line.sub);
    std::vector<SpElement> stab;
    while (stab.size() < 10) {
        FpVec coeff(static_cast<size_t>(iperp.dim()), Fp::zero(ctx.cfg.p));
        for (auto& c : coeff) c = Fp(rng.below(ctx.cfg.p), ctx.cfg.p);
        FpVec v(static_cast<size_t>(ctx.V.dim()), Fp::zero(ctx.cfg.p));
        for (int r = 0; r < iperp.dim(); ++r)
            if (!coeff[static_cast<size_t>(r)].is_zero()) v = vec_add(v, vec_scale(coeff[static_cast<size_t>(r)], iperp.rows.row(r)));
        if (vec_is_zero(v)) continue;
        stab.push_back(symplectic_transvection(ctx.V, v, Fp(1 + rng.below(ctx.cfg.p - 1), ctx.cfg.p)));
    }
    for (const auto& g : stab) {
        CycMat rg = rho(ctx.space, g);
        std::optional<CycMat> rw;
        if (iso.reduced_space) rw = rho(*iso.reduced_space, induced_on_reduction(iso.reduction, g));
        for (int b = 0; b < iso.invariant_basis.rows; ++b) {
            ++suite.checked;
            FlatSection s{CycVec(iso.invariant_basis.row(b))};
            FlatSection gs{mat_apply(rg, s.coords)};
            CycVec lhs = apply_reduction(ctx.space, iso, gs);
            CycVec rhs = apply_reduction(ctx.space, iso, s);
            if (rw) rhs = mat_apply(*rw, rhs);
            if (lhs != rhs) {
                note_failure(suite, "reduction equivariance fails", ctx.cfg.max_failures);
                break;
            }
        }
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

SuiteResult suite_correspondences(VerifyContext& ctx) {
    auto start = Clock::now();
    SuiteResult suite{"correspondences", "exhaustive", 0, true, 0, {}, 0};
    auto sps = enumerate_sp(ctx.V);
    std::vector<size_t> picks;
    if (ctx.cfg.p == 3) {
        for (size_t i = 0; i < sps.size(); ++i) picks.push_back(i);
    } else {
        suite.scope = sampled_scope(20, ctx.cfg.seed + 10);
        DetRng rng(ctx.cfg.seed + 10);
        for (int i = 0; i < 20; ++i) picks.push_back(static_cast<size_t>(rng.below(static_cast<long>(sps.size()))));
    }
    CorrespondenceContext cctx = make_correspondence_context(ctx.V, ctx.V, 100000);
    for (size_t i : picks) {
        ++suite.checked;
        CycMat a = quantize_correspondence(cctx, graph_lagrangian(sps[i]));
        auto c = proportionality_scalar(a, rho(*cctx.source, sps[i]));
        if (!c || c->is_zero())
            note_failure(suite, "A(graph g) not proportional to rho(g) at g#" + std::to_string(i), ctx.cfg.max_failures);
    }

    // lagrangian-vector equivariance up to a scalar
    std::vector<FlatSection> vectors;
    for (int a = 0; a < ctx.space.lags.size(); ++a) vectors.push_back(lagrangian_vector(ctx.space, ctx.space.lags[a]));
    for (size_t i : picks) {
        CycMat rg = rho(ctx.space, sps[i]);
        for (int a = 0; a < ctx.space.lags.size(); ++a) {
            ++suite.checked;
            CycVec image = mat_apply(rg, vectors[static_cast<size_t>(a)].coords);
            FlatSection moved = lagrangian_vector(ctx.space, act(sps[i], ctx.space.lags[a]));
            CycMat m1(ctx.space.dim(), 1, Cyc::zero(ctx.cfg.p)), m2(ctx.space.dim(), 1, Cyc::zero(ctx.cfg.p));
            for (int r = 0; r < ctx.space.dim(); ++r) {
                m1.at(r, 0) = image[static_cast<size_t>(r)];
                m2.at(r, 0) = moved.coords[static_cast<size_t>(r)];
            }
            auto c = proportionality_scalar(m1, m2);
            if (!c || c->is_zero()) {
                note_failure(suite, "rho(g)v_L not in span(v_gL)", ctx.cfg.max_failures);
                break;
            }
        }
    }
    suite.millis = elapsed_ms(start);
    return suite;
}

} // namespace

double unitarity_defect(const CycMat& u) {
    int n = u.rows;
    std::vector<std::complex<double>> e(u.a.size());
    for (size_t i = 0; i < u.a.size(); ++i) {
        ComplexApprox a = u.a[i].embed();
        e[i] = {a.re, a.im};
    }
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += e[static_cast<size_t>(i) * n + k] * std::conj(e[static_cast<size_t>(j) * n + k]);
            if (i == j) acc -= 1.0;
            defect = std::max(defect, std::abs(acc));
        }
    return defect;
}

std::string normalization_statement() {
    std::ostringstream os;
    SympSpace V = SympSpace::standard(3, 1);
    LagrangianTable lags(V);
    int n = lags.size();

    auto first_mult_failure = [&](const KernelConvention& conv, int stride) -> long {
        std::vector<CycMat> ops(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) ops[static_cast<size_t>(a) * n + b] = closed_operator(lags[a], lags[b], conv).matrix;
        for (int a = 0; a < n; a += stride)
            for (int b = 0; b < n; b += stride)
                for (int c = 0; c < n; c += stride)
                    if (mat_mul(ops[static_cast<size_t>(a) * n + b], ops[static_cast<size_t>(b) * n + c]) !=
                        ops[static_cast<size_t>(a) * n + c])
                        return static_cast<long>(a) * n * n + b * n + c;
        return -1;
    };

    KernelConvention gauss_variant{Normalizer::Gauss, false, false};
    long gauss_witness = first_mult_failure(gauss_variant, 1);
    KernelConvention transposed{Normalizer::GaussOverQ, false, true};
    long transposed_witness = first_mult_failure(transposed, 1);

    // the binomial sign variant only differs for k >= 2: witness at (3,2)
    long binomial_witness = -1;
    {
        SympSpace V2 = SympSpace::standard(3, 2);
        LagrangianTable lags2(V2);
        KernelConvention with_sign{Normalizer::GaussOverQ, true, false};
        DetRng rng(0);
        for (long trial = 0; trial < 200 && binomial_witness < 0; ++trial) {
            int a = static_cast<int>(rng.below(lags2.size()));
            int b = static_cast<int>(rng.below(lags2.size()));
            int c = static_cast<int>(rng.below(lags2.size()));
            CycMat ab = closed_operator(lags2[a], lags2[b], with_sign).matrix;
            CycMat bc = closed_operator(lags2[b], lags2[c], with_sign).matrix;
            if (mat_mul(ab, bc) != closed_operator(lags2[a], lags2[c], with_sign).matrix) binomial_witness = trial;
        }
    }

    os << "closed-formula constant pinned to (G1/q)^k * sigma(iota_M/iota_L * wedge(o_L/I, o_M/I)),"
       << " pairing rows from L against columns from M, no extra binomial sign."
       << " Rejected variants (witnesses): (G1)^k normalizer fails multiplicativity at (3,1) triple index "
       << gauss_witness << "; transposed pairing fails at (3,1) triple index " << transposed_witness
       << "; extra (-1)^(k choose 2) sign fails at (3,2) seeded triple " << binomial_witness
       << " (indistinguishable at n=1). The multiplicativity, ansatz-consistency and"
       << " identity-and-sigma-covariance suites in this report ran the pinned variant.";
    return os.str();
}

VerifyReport run_verify(const VerifyConfig& config) {
    VerifyContext ctx(config);
    VerifyReport report;
    report.config = config;
    report.suites.push_back(suite_multiplicativity(ctx));
    report.suites.push_back(suite_ansatz_consistency(ctx));
    report.suites.push_back(suite_identity_sigma(ctx));
    report.suites.push_back(suite_kernel_coherence(ctx));
    report.suites.push_back(suite_heisenberg(ctx));
    report.suites.push_back(suite_weil_homomorphism(ctx));
    report.suites.push_back(suite_weil_pi_compat(ctx));
    report.suites.push_back(suite_fourier(ctx));
    report.suites.push_back(suite_gauss(ctx));
    report.suites.push_back(suite_unitarity(ctx));
    if (config.n == 1) {
        report.suites.push_back(suite_cartesian(ctx));
        report.suites.push_back(suite_correspondences(ctx));
    }
    report.suites.push_back(suite_duality(ctx));
    report.suites.push_back(suite_reduction(ctx));
    report.normalization_statement = normalization_statement();
    std::sort(report.suites.begin(), report.suites.end(),
              [](const SuiteResult& a, const SuiteResult& b) { return a.name < b.name; });
    return report;
}

namespace {

json config_json(const VerifyConfig& c) {
    return json{{"p", c.p},          {"n", c.n},
                {"sample_size", c.sample_size}, {"seed", c.seed},
                {"cap", c.cap},      {"policy", c.policy == ExecPolicy::Parallel ? "parallel" : "serial"}};
}

json oriented_json(const OrientedLagrangian& l) {
    json rows = json::array();
    for (int i = 0; i < l.sub.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < l.sub.rows.cols; ++j) row.push_back(l.sub.rows.at(i, j).value());
        rows.push_back(row);
    }
    return json{{"rows", rows}, {"scale", l.scale.value()}};
}

json cyc_json(const Cyc& c) {
    json out = json::array();
    for (const auto& s : c.coeff_strings()) out.push_back(s);
    return out;
}

json cyc_mat_json(const CycMat& m) {
    json out = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(cyc_json(m.at(i, j)));
        out.push_back(row);
    }
    return out;
}

} // namespace

std::string report_to_json(const VerifyReport& report, bool include_timings) {
    json suites = json::array();
    for (const auto& s : report.suites) {
        json item{{"name", s.name},     {"scope", s.scope},   {"checked", s.checked},
                  {"passed", s.passed}, {"failed", s.failed}, {"failures", s.failures}};
        if (include_timings) item["millis"] = s.millis;
        suites.push_back(item);
    }
    json j{{"schema", "weil-report/1"},
           {"config", config_json(report.config)},
           {"normalization", report.normalization_statement},
           {"all_passed", report.all_passed()},
           {"suites", suites}};
    return j.dump(1) + "\n";
}

std::string lagrangians_json(long p, int n, long cap) {
    SympSpace V = SympSpace::standard(p, n);
    json items = json::array();
    for (const auto& l : enumerate_oriented_lagrangians(V, cap)) items.push_back(oriented_json(l));
    json j{{"schema", "weil-lagrangians/1"}, {"config", json{{"p", p}, {"n", n}}}, {"items", items}};
    return j.dump(1) + "\n";
}

std::string lagrangians_csv(long p, int n, long cap) {
    SympSpace V = SympSpace::standard(p, n);
    std::ostringstream os;
    os << "index,rows,scale\n";
    long idx = 0;
    for (const auto& l : enumerate_oriented_lagrangians(V, cap)) {
        os << idx++ << ",";
        for (size_t i = 0; i < l.sub.rows.a.size(); ++i) {
            if (i) os << ';';
            os << l.sub.rows.a[i].value();
        }
        os << "," << l.scale.value() << "\n";
    }
    return os.str();
}

std::string kernels_json(long p, int n, long cap) {
    SympSpace V = SympSpace::standard(p, n);
    LagrangianTable lags(V, cap);
    long total = static_cast<long>(lags.size()) * lags.size() * h_count(V);
    if (total > 1000000) throw std::invalid_argument("kernel dump exceeds the enumeration cap");
    json pairs = json::array();
    for (int a = 0; a < lags.size(); ++a)
        for (int b = 0; b < lags.size(); ++b) {
            Kernel k = canonical_kernel(lags[a], lags[b]);
            json values = json::array();
            for (const Cyc& v : k.values) values.push_back(cyc_json(v));
            pairs.push_back(json{{"left", oriented_json(lags[a])},
                                 {"right", oriented_json(lags[b])},
                                 {"operator", cyc_mat_json(closed_operator(lags[a], lags[b]).matrix)},
                                 {"values", values}});
        }
    // Heisenberg action at the base model, one matrix per group element
    Model base = build_model(lags[0]);
    json pi_mats = json::array();
    for (const HElement& h : enumerate_h(V)) pi_mats.push_back(cyc_mat_json(pi_matrix(base, h)));
    json j{{"schema", "weil-kernels/1"},
           {"config", json{{"p", p}, {"n", n}}},
           {"element_order", "v-digits big-endian, central coordinate fastest"},
           {"pi", json{{"label", oriented_json(lags[0])}, {"matrices", pi_mats}}},
           {"pairs", pairs}};
    return j.dump(1) + "\n";
}

std::string rho_json(long p, int n, const Mat<Fp>& g, long cap) {
    SympSpace V = SympSpace::standard(p, n);
    SpElement el = SpElement::make(V, g); // throws on non-symplectic input
    CanonicalSpace space(V, cap);
    CycMat r = rho(space, el);
    json gm = json::array();
    for (int i = 0; i < g.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < g.cols; ++j) row.push_back(g.at(i, j).value());
        gm.push_back(row);
    }
    json approx = json::array();
    for (int i = 0; i < r.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < r.cols; ++j) {
            ComplexApprox a = r.at(i, j).embed();
            row.push_back(json::array({a.re, a.im}));
        }
        approx.push_back(row);
    }
    json j{{"schema", "weil-rho/1"},
           {"config", json{{"p", p}, {"n", n}}},
           {"g", gm},
           {"rho", cyc_mat_json(r)},
           {"rho_approx", approx}};
    return j.dump(1) + "\n";
}

std::string reduction_json(long p, int n, long cap) {
    SympSpace V = SympSpace::standard(p, n);
    CanonicalSpace space(V, cap);
    Mat<Fp> irows(1, V.dim(), Fp::zero(p));
    irows.at(0, 0) = Fp::one(p);
    OrientedIsotropic line(Subspace::span(V, irows), Fp::one(p));
    ReductionIso iso = reduction_iso(space, line);

    DetRng rng(0);
    Subspace iperp = perp(line.sub);
    long checked = 0, failed = 0;
    for (int trial = 0; trial < 10; ++trial) {
        FpVec v(static_cast<size_t>(V.dim()), Fp::zero(p));
        for (int r = 0; r < iperp.dim(); ++r) {
            Fp c(rng.below(p), p);
            if (!c.is_zero()) v = vec_add(v, vec_scale(c, iperp.rows.row(r)));
        }
        if (vec_is_zero(v)) continue;
        SpElement g = symplectic_transvection(V, v, Fp(1 + rng.below(p - 1), p));
        CycMat rg = rho(space, g);
        std::optional<CycMat> rw;
        if (iso.reduced_space) rw = rho(*iso.reduced_space, induced_on_reduction(iso.reduction, g));
        for (int b = 0; b < iso.invariant_basis.rows; ++b) {
            ++checked;
            FlatSection s{CycVec(iso.invariant_basis.row(b))};
            FlatSection gs{mat_apply(rg, s.coords)};
            CycVec lhs = apply_reduction(space, iso, gs);
            CycVec rhs = apply_reduction(space, iso, s);
            if (rw) rhs = mat_apply(*rw, rhs);
            if (lhs != rhs) ++failed;
        }
    }
    json j{{"schema", "weil-reduction/1"},
           {"config", json{{"p", p}, {"n", n}}},
           {"isotropic", json{{"rows", json::array({json::array({1})})}, {"note", "first basis line"}}},
           {"invariant_dimension", iso.invariant_dim()},
           {"reduced_half_dimension", iso.reduction.W.n},
           {"equivariance_checked", checked},
           {"equivariance_failed", failed}};
    return j.dump(1) + "\n";
}

namespace {

struct CorrespondenceRow {
    Mat<Fp> g;
    Cyc scalar;
};

std::vector<CorrespondenceRow> correspondence_rows(long p, int n, long cap) {
    if (n != 1) throw std::invalid_argument("correspondence tables require n = 1 (product space scale)");
    SympSpace V = SympSpace::standard(p, n);
    CorrespondenceContext ctx = make_correspondence_context(V, V, std::max(cap, 100000L));
    std::vector<CorrespondenceRow> rows;
    for (const auto& g : enumerate_sp(V)) {
        CycMat a = quantize_correspondence(ctx, graph_lagrangian(g));
        auto c = proportionality_scalar(a, rho(*ctx.source, g));
        if (!c) throw std::logic_error("graph correspondence not proportional to rho");
        rows.push_back({g.mat, *c});
    }
    return rows;
}

} // namespace

std::string correspondences_json(long p, int n, long cap) {
    json items = json::array();
    for (const auto& row : correspondence_rows(p, n, cap)) {
        json gm = json::array();
        for (int i = 0; i < row.g.rows; ++i) {
            json r = json::array();
            for (int j = 0; j < row.g.cols; ++j) r.push_back(row.g.at(i, j).value());
            gm.push_back(r);
        }
        items.push_back(json{{"g", gm}, {"scalar", cyc_json(row.scalar)}});
    }
    json j{{"schema", "weil-correspondences/1"},
           {"config", json{{"p", p}, {"n", n}}},
           {"relation", "A(graph g) = scalar * rho(g)"},
           {"items", items}};
    return j.dump(1) + "\n";
}

std::string correspondences_csv(long p, int n, long cap) {
    std::ostringstream os;
    os << "index,g,scalar\n";
    long idx = 0;
    for (const auto& row : correspondence_rows(p, n, cap)) {
        os << idx++ << ",";
        for (size_t i = 0; i < row.g.a.size(); ++i) {
            if (i) os << ';';
            os << row.g.a[i].value();
        }
        os << ",";
        auto strs = row.scalar.coeff_strings();
        for (size_t i = 0; i < strs.size(); ++i) {
            if (i) os << ';';
            os << strs[i];
        }
        os << "\n";
    }
    return os.str();
}

} // namespace weil
