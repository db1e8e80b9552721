#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "weil/verify.hpp"

using namespace weil;

namespace {

Mat<Fp> parse_matrix(const std::string& spec, long p) {
    std::vector<std::vector<long>> rows;
    std::stringstream ss(spec);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<long> entries;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) entries.push_back(std::stol(cell));
        rows.push_back(entries);
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    Mat<Fp> m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), Fp::zero(p));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged matrix rows");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = Fp(rows[i][j], p);
    }
    return m;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + out_path);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weil: exact canonical quantization of symplectic vector spaces over F_p"};
    long p = 3;
    int n = 1;
    std::string mode = "verify";
    long sample = 10000;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";
    std::string gspec;
    bool serial = false;
    bool timings = false;

    app.add_option("--p", p, "odd prime modulus")->capture_default_str();
    app.add_option("--n", n, "half-dimension of the symplectic space")->capture_default_str();
    app.add_option("--mode", mode, "verify | weil | kernels | lagrangians | reduce | correspondences")
        ->check(CLI::IsMember({"verify", "weil", "kernels", "lagrangians", "reduce", "correspondences"}))
        ->capture_default_str();
    app.add_option("--sample", sample, "sample size for randomized suites")->capture_default_str();
    app.add_option("--seed", seed, "deterministic RNG seed")->capture_default_str();
    app.add_option("--out", out_path, "output path (stdout when omitted)");
    app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--g", gspec, "symplectic matrix, rows separated by ';', entries by ','");
    app.add_flag("--serial", serial, "run sweeps on the serial reference path");
    app.add_flag("--timings", timings, "include wall-clock millis in the verify report");
    CLI11_PARSE(app, argc, argv);

    try {
        if (!is_odd_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
        if (n < 1) throw std::invalid_argument("half-dimension must be >= 1");
        long cap = 10000;
        if (const char* env = std::getenv("WEIL_CAP")) cap = std::stol(env);
        if (oriented_lagrangian_count(p, n) > cap)
            throw std::invalid_argument("oriented Lagrangian count exceeds the cap (override with WEIL_CAP)");

        if (mode == "verify") {
            if (format != "json") throw std::invalid_argument("verify reports are JSON only");
            VerifyConfig cfg;
            cfg.p = p;
            cfg.n = n;
            cfg.sample_size = sample;
            cfg.seed = seed;
            cfg.cap = cap;
            cfg.policy = serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
            VerifyReport report = run_verify(cfg);
            emit(report_to_json(report, timings), out_path);
            return report.all_passed() ? 0 : 1;
        }
        if (mode == "weil") {
            if (format != "json") throw std::invalid_argument("rho dumps are JSON only");
            if (gspec.empty()) throw std::invalid_argument("--mode weil requires --g");
            emit(rho_json(p, n, parse_matrix(gspec, p), cap), out_path);
            return 0;
        }
        if (mode == "kernels") {
            if (format != "json") throw std::invalid_argument("kernel dumps are JSON only");
            emit(kernels_json(p, n, cap), out_path);
            return 0;
        }
        if (mode == "lagrangians") {
            emit(format == "json" ? lagrangians_json(p, n, cap) : lagrangians_csv(p, n, cap), out_path);
            return 0;
        }
        if (mode == "reduce") {
            if (format != "json") throw std::invalid_argument("reduction reports are JSON only");
            emit(reduction_json(p, n, cap), out_path);
            return 0;
        }
        // correspondences
        emit(format == "json" ? correspondences_json(p, n, cap) : correspondences_csv(p, n, cap), out_path);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
