#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weil/sweep.hpp"

using namespace weil;

namespace {

std::optional<std::string> fail_on_multiples_of_7(long i) {
    if (i % 7 == 0) return "multiple of 7: " + std::to_string(i);
    return std::nullopt;
}

} // namespace

TEST_CASE("serial and parallel sweeps produce identical results") {
    for (long count : {0L, 1L, 100L, 10007L}) {
        SweepResult s = sweep_check(count, ExecPolicy::Serial, 5, fail_on_multiples_of_7);
        SweepResult p = sweep_check(count, ExecPolicy::Parallel, 5, fail_on_multiples_of_7);
        CHECK(s.checked == count);
        CHECK(p.checked == count);
        CHECK(s.failed == p.failed);
        REQUIRE(s.failures.size() == p.failures.size());
        for (size_t i = 0; i < s.failures.size(); ++i) {
            CHECK(s.failures[i].index == p.failures[i].index);
            CHECK(s.failures[i].what == p.failures[i].what);
        }
    }
}

TEST_CASE("failure lists keep the lowest indices and respect the cap") {
    SweepResult r = sweep_check(100, ExecPolicy::Parallel, 3, fail_on_multiples_of_7);
    CHECK(r.failed == 15);
    REQUIRE(r.failures.size() == 3);
    CHECK(r.failures[0].index == 0);
    CHECK(r.failures[1].index == 7);
    CHECK(r.failures[2].index == 14);
    CHECK_FALSE(r.ok());
    CHECK(sweep_check(100, ExecPolicy::Parallel, 3, [](long) { return std::optional<std::string>(); }).ok());
}

TEST_CASE("sweep_for covers every index exactly once") {
    for (ExecPolicy policy : {ExecPolicy::Serial, ExecPolicy::Parallel}) {
        std::vector<int> hits(1000, 0);
        sweep_for(1000, policy, [&](long i) { hits[static_cast<size_t>(i)] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("seeded rng is reproducible and bounded") {
    DetRng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
    DetRng c(7);
    for (int i = 0; i < 1000; ++i) {
        long v = c.below(13);
        CHECK(v >= 0);
        CHECK(v < 13);
    }
    // distinct seeds diverge immediately
    CHECK(DetRng(1).next() != DetRng(2).next());
}
