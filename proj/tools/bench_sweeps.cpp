// Benchmark comparing the serial reference sweeps against the OpenMP kernels.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "weil/verify.hpp"

using namespace weil;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BenchRow {
    std::string name;
    double serial_s = 0.0;
    double parallel_s = 0.0;
};

void print_row(const BenchRow& row) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n", row.name.c_str(), row.serial_s,
                row.parallel_s, row.serial_s / row.parallel_s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weil_bench: serial reference vs OpenMP sweep kernels"};
    long p = 3;
    int n = 1;
    long sample = 4096;
    app.add_option("--p", p)->capture_default_str();
    app.add_option("--n", n)->capture_default_str();
    app.add_option("--sample", sample, "triples sampled when the space is not exhaustible")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    SympSpace V = SympSpace::standard(p, n);

    BenchRow table_row{"operator table", 0, 0};
    IntertwinerTable serial_table = [&] {
        auto t0 = Clock::now();
        IntertwinerTable t = build_operator_table(V, ExecPolicy::Serial);
        table_row.serial_s = seconds_since(t0);
        return t;
    }();
    IntertwinerTable parallel_table = [&] {
        auto t0 = Clock::now();
        IntertwinerTable t = build_operator_table(V, ExecPolicy::Parallel);
        table_row.parallel_s = seconds_since(t0);
        return t;
    }();
    if (serial_table.ops != parallel_table.ops) {
        std::cerr << "mismatch between serial and parallel operator tables\n";
        return 1;
    }
    print_row(table_row);

    long count = serial_table.size();
    long total = count * count * count;
    bool exhaustive = total <= 100000;
    long sweep_count = exhaustive ? total : sample;
    DetRng rng(12345);
    std::vector<std::array<int, 3>> triples;
    if (!exhaustive) {
        triples.resize(static_cast<size_t>(sample));
        for (auto& t : triples)
            t = {static_cast<int>(rng.below(count)), static_cast<int>(rng.below(count)),
                 static_cast<int>(rng.below(count))};
    }
    auto triple_of = [&](long idx) -> std::array<int, 3> {
        if (!exhaustive) return triples[static_cast<size_t>(idx)];
        return {static_cast<int>(idx / (count * count)), static_cast<int>((idx / count) % count),
                static_cast<int>(idx % count)};
    };
    auto run_mult = [&](ExecPolicy policy) {
        return sweep_check(sweep_count, policy, 4, [&](long idx) -> std::optional<std::string> {
            auto [a, b, c] = triple_of(idx);
            if (mat_mul(serial_table.op(a, b), serial_table.op(b, c)) != serial_table.op(a, c))
                return std::string("multiplicativity failure");
            return std::nullopt;
        });
    };

    BenchRow mult_row{exhaustive ? "multiplicativity (all)" : "multiplicativity (sampled)", 0, 0};
    auto t0 = Clock::now();
    SweepResult rs = run_mult(ExecPolicy::Serial);
    mult_row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    SweepResult rp = run_mult(ExecPolicy::Parallel);
    mult_row.parallel_s = seconds_since(t0);
    if (rs.failed != rp.failed || rs.checked != rp.checked || !rs.ok() || !rp.ok()) {
        std::cerr << "sweep results disagree or verification failed\n";
        return 1;
    }
    print_row(mult_row);

    CanonicalSpace space(V);
    CycMat f = total_fourier(space, serial_table);
    if (f.rows > 200) {
        std::printf("%-28s skipped (dimension %d)\n", "total Fourier square", f.rows);
        return 0;
    }
    auto square = [&](ExecPolicy policy) {
        CycMat ff(f.rows, f.cols, Cyc::zero(p));
        sweep_for(f.rows, policy, [&](long i) {
            for (int k = 0; k < f.cols; ++k) {
                const Cyc& x = f.at(static_cast<int>(i), k);
                if (x.is_zero()) continue;
                for (int j = 0; j < f.cols; ++j) ff.at(static_cast<int>(i), j) += x * f.at(k, j);
            }
        });
        return ff;
    };
    BenchRow fourier_row{"total Fourier square", 0, 0};
    t0 = Clock::now();
    CycMat ffs = square(ExecPolicy::Serial);
    fourier_row.serial_s = seconds_since(t0);
    t0 = Clock::now();
    CycMat ffp = square(ExecPolicy::Parallel);
    fourier_row.parallel_s = seconds_since(t0);
    if (ffs != ffp || ffs != f) {
        std::cerr << "Fourier square mismatch\n";
        return 1;
    }
    print_row(fourier_row);
    return 0;
}
