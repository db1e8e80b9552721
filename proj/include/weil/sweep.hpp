#pragma once

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weil {

/// Execution policy for the verification sweeps. Parallel and Serial must
/// produce identical results; Serial is the reference implementation.
enum class ExecPolicy { Serial, Parallel };

struct SweepFailure {
    long index = 0;
    std::string what;
};

struct SweepResult {
    long checked = 0;
    long failed = 0;
    std::vector<SweepFailure> failures; // lowest indices, capped

    bool ok() const { return failed == 0; }
};

/// Conjunction sweep over [0, count): pred(i) returns a failure description
/// or nullopt. Failure lists are sorted by index and capped identically for
/// both policies.
template <class Pred>
SweepResult sweep_check(long count, ExecPolicy policy, std::size_t max_failures, Pred&& pred) {
    SweepResult result;
    result.checked = count;
    if (policy == ExecPolicy::Serial) {
        for (long i = 0; i < count; ++i) {
            std::optional<std::string> f = pred(i);
            if (f) {
                ++result.failed;
                if (result.failures.size() < max_failures) result.failures.push_back({i, std::move(*f)});
            }
        }
        return result;
    }
    std::vector<std::vector<SweepFailure>> buckets(static_cast<size_t>(omp_get_max_threads()));
    long failed = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : failed)
    for (long i = 0; i < count; ++i) {
        std::optional<std::string> f = pred(i);
        if (f) {
            ++failed;
            buckets[static_cast<size_t>(omp_get_thread_num())].push_back({i, std::move(*f)});
        }
    }
    result.failed = failed;
    for (auto& b : buckets)
        result.failures.insert(result.failures.end(), std::make_move_iterator(b.begin()),
                               std::make_move_iterator(b.end()));
    std::sort(result.failures.begin(), result.failures.end(),
              [](const SweepFailure& a, const SweepFailure& b) { return a.index < b.index; });
    if (result.failures.size() > max_failures) result.failures.resize(max_failures);
    return result;
}

/// Plain parallel map; body(i) must be independent across i.
template <class Body>
void sweep_for(long count, ExecPolicy policy, Body&& body) {
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < count; ++i) body(i);
    } else {
        for (long i = 0; i < count; ++i) body(i);
    }
}

/// splitmix64; fixed algorithm so seeded sampling is platform-independent.
struct DetRng {
    std::uint64_t state;

    explicit DetRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

} // namespace weil
