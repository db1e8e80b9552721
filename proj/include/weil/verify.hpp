#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weil/canonical.hpp"

namespace weil {

struct VerifyConfig {
    long p = 3;
    int n = 1;
    long sample_size = 10000;
    std::uint64_t seed = 0;
    long cap = 10000;
    ExecPolicy policy = ExecPolicy::Parallel;
    std::size_t max_failures = 8;
};

struct SuiteResult {
    std::string name;
    std::string scope; // "exhaustive" or "sampled(count=...,seed=...)"
    long checked = 0;
    bool passed = true;
    long failed = 0;
    std::vector<std::string> failures; // capped at max_failures
    long millis = 0;
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<SuiteResult> suites; // sorted by name before emission
    std::string normalization_statement;

    bool all_passed() const {
        for (const auto& s : suites)
            if (!s.passed) return false;
        return true;
    }
};

/// Run every suite feasible at (p, n); exhaustive wherever the triple count
/// stays within 10^6, seeded sampling otherwise.
VerifyReport run_verify(const VerifyConfig& config);

/// max |(U·U* − Id)_{ij}| under the complex embedding.
double unitarity_defect(const CycMat& u);

/// Demonstrates which closed-formula constant variant satisfies the oracles,
/// by exhibiting failing witnesses for the rejected variants.
std::string normalization_statement();

std::string report_to_json(const VerifyReport& report, bool include_timings);

/// Dump payloads for the CLI; deterministic enumeration order throughout.
std::string lagrangians_json(long p, int n, long cap);
std::string lagrangians_csv(long p, int n, long cap);
std::string kernels_json(long p, int n, long cap);
std::string rho_json(long p, int n, const Mat<Fp>& g, long cap);
std::string reduction_json(long p, int n, long cap);
std::string correspondences_json(long p, int n, long cap);
std::string correspondences_csv(long p, int n, long cap);

} // namespace weil
