#include "catch_amalgamated.hpp"

#include "chipfire/enumeration.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/montecarlo.hpp"

using namespace chipfire;

namespace {

std::uint64_t hit_total(const FrequencyReport& r) {
    std::uint64_t total = 0;
    for (const auto& [o, f] : r.per_outcome) total += f.hits;
    return total;
}

}  // namespace

TEST_CASE("random play on the 2x2 star reaches both outcomes") {
    const auto report = run_montecarlo(StarParams(2, 2), 10000, 17);
    CHECK(hit_total(report) == 10000);
    CHECK(report.per_outcome.size() == 2);
    std::set<StableOutcome> support;
    for (const auto& [o, f] : report.per_outcome) {
        support.insert(o);
        CHECK(f.is_syt);
        CHECK(f.is_totally_sorted == o.is_totally_sorted());
    }
    CHECK(support == reachable_set(StarParams(2, 2)));
}

TEST_CASE("one level per branch always ends totally sorted") {
    for (int k = 1; k <= 5; ++k) {
        const auto report = run_montecarlo(StarParams(k, 1), 300, k);
        REQUIRE(report.per_outcome.size() == 1);
        CHECK(report.per_outcome.begin()->second.hits == 300);
        CHECK(report.per_outcome.begin()->second.is_totally_sorted);
        CHECK(report.mode_is_totally_sorted());
        CHECK(report.syt_outnumber_non_syt());
    }
}

TEST_CASE("reports depend only on the seed") {
    const StarParams p(2, 3);
    const auto a = run_montecarlo(p, 2000, 99, 1);
    CHECK(a == run_montecarlo(p, 2000, 99, 1));
    CHECK(a == run_montecarlo(p, 2000, 99, 4));
    CHECK(a == run_montecarlo_serial(p, 2000, 99));
    CHECK_FALSE(a == run_montecarlo(p, 2000, 100, 1));
}

TEST_CASE("support is inside the reachable set") {
    for (const StarParams p : {StarParams(2, 3), StarParams(3, 2), StarParams(2, 4)}) {
        const auto reachable = reachable_set(p);
        const auto report = run_montecarlo(p, 3000, 5);
        CHECK(hit_total(report) == 3000);
        for (const auto& [o, f] : report.per_outcome) CHECK(reachable.contains(o));
    }
}

TEST_CASE("frequency annotations") {
    const StarParams p(2, 4);
    const auto sorted = totally_sorted_outcome(p);
    const auto standard = StableOutcome::from_rows({{1, 3, 5, 7}, {2, 4, 6, 8}});
    const auto other = StableOutcome::from_rows({{1, 2, 6, 7}, {3, 4, 5, 8}});
    FrequencyReport r{p, 10, 0, {{sorted, {5, true, true}}, {standard, {3, true, false}}, {other, {2, false, false}}}};
    CHECK(r.mode_is_totally_sorted());
    CHECK(r.syt_outnumber_non_syt());
    r.per_outcome[other].hits = 3;
    CHECK_FALSE(r.syt_outnumber_non_syt());
    r.per_outcome[standard].hits = 6;
    CHECK_FALSE(r.mode_is_totally_sorted());
}

TEST_CASE("at least one trial is required") {
    CHECK_THROWS_AS(run_montecarlo(StarParams(2, 2), 0, 1), PreconditionError);
    CHECK_THROWS_AS(run_montecarlo_serial(StarParams(2, 2), 0, 1), PreconditionError);
}
