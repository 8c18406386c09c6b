// Equal-count cohorts and return pooling.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tailkit/cohort.hpp"
#include "tailkit/rng.hpp"

using namespace tailkit;

namespace {

std::vector<StockProfile> make_profiles(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<StockProfile> profiles;
    for (int i = 0; i < n; ++i) {
        StockProfile p;
        char id[16];
        std::snprintf(id, sizeof id, "S%04d", i);
        p.stock_id = id;
        p.capitalization = std::exp(rng.uniform(18.0, 23.0));
        p.mean_traded_value = std::exp(rng.uniform(8.0, 13.0));
        p.turnover = p.mean_traded_value / p.capitalization;
        p.tradable_shares = p.capitalization / 10.0;
        profiles.push_back(std::move(p));
    }
    return profiles;
}

}  // namespace

TEST_CASE("40 stocks in 20 groups gives 20 pairs") {
    const auto partition = partition_stocks(make_profiles(40, 1), StockAttribute::turnover, 20);
    REQUIRE(partition.groups.size() == 20);
    for (const auto& g : partition.groups) CHECK(g.members.size() == 2);
}

TEST_CASE("43 stocks in 20 groups puts the remainder up front") {
    const auto partition = partition_stocks(make_profiles(43, 2), StockAttribute::turnover, 20);
    REQUIRE(partition.groups.size() == 20);
    for (size_t gi = 0; gi < 20; ++gi) CHECK(partition.groups[gi].members.size() == (gi < 3 ? 3 : 2));
}

TEST_CASE("group means ascend with the attribute") {
    for (StockAttribute attr : {StockAttribute::turnover, StockAttribute::capitalization,
                                StockAttribute::traded_value}) {
        const auto partition = partition_stocks(make_profiles(107, 3), attr, 20);
        for (size_t gi = 1; gi < partition.groups.size(); ++gi)
            CHECK(partition.groups[gi].attribute_stat >=
                  partition.groups[gi - 1].attribute_stat);
        // Group stat stays inside the member attribute range.
        // (Spot-check via the sorted order: first group min, last group max.)
    }
}

TEST_CASE("partition is a set partition of all stocks") {
    const auto profiles = make_profiles(53, 4);
    const auto partition = partition_stocks(profiles, StockAttribute::capitalization, 7);
    std::set<std::string> seen;
    size_t total = 0;
    for (const auto& g : partition.groups) {
        for (const auto& id : g.members) CHECK(seen.insert(id).second);
        total += g.members.size();
    }
    CHECK(total == profiles.size());
}

TEST_CASE("partitioning is deterministic, including ties") {
    auto profiles = make_profiles(30, 5);
    for (auto& p : profiles) p.turnover = 1e-4;  // all tied: order must fall back to ids
    const auto a = partition_to_json(partition_stocks(profiles, StockAttribute::turnover, 6));
    const auto b = partition_to_json(partition_stocks(profiles, StockAttribute::turnover, 6));
    CHECK(a == b);
    const auto partition = partition_stocks(profiles, StockAttribute::turnover, 6);
    CHECK(partition.groups.front().members.front() == "S0000");
    CHECK(partition.groups.back().members.back() == "S0029");
}

TEST_CASE("median group statistic is available") {
    auto profiles = make_profiles(4, 6);
    profiles[0].turnover = 1.0;
    profiles[1].turnover = 2.0;
    profiles[2].turnover = 3.0;
    profiles[3].turnover = 7.0;
    const auto partition =
        partition_stocks(profiles, StockAttribute::turnover, 2, GroupStat::median);
    CHECK(partition.groups[0].attribute_stat == doctest::Approx(1.5));
    CHECK(partition.groups[1].attribute_stat == doctest::Approx(5.0));
}

TEST_CASE("fewer stocks than groups is an error") {
    CHECK_THROWS(partition_stocks(make_profiles(5, 7), StockAttribute::turnover, 20));
    CHECK_THROWS(partition_stocks(make_profiles(5, 7), StockAttribute::turnover, 1));
}

TEST_CASE("pooling concatenates member series in member order") {
    std::map<std::string, ReturnSeries> store;
    store["A"] = {"A", {1.0, 2.0}, 0.0, 1.0};
    store["B"] = {"B", {3.0, 4.0, 5.0}, 0.0, 1.0};
    CohortGroup group;
    group.members = {"B", "A"};
    const auto pooled = pool_returns(group, store);
    CHECK(pooled == std::vector<double>{3.0, 4.0, 5.0, 1.0, 2.0});

    CohortGroup solo;
    solo.members = {"A"};
    CHECK(pool_returns(solo, store) == store["A"].values);

    CohortGroup missing;
    missing.members = {"A", "ZZ"};
    CHECK_THROWS_WITH_AS(pool_returns(missing, store), doctest::Contains("ZZ"),
                         std::runtime_error);
}

TEST_CASE("attribute names round-trip") {
    for (StockAttribute a : {StockAttribute::turnover, StockAttribute::capitalization,
                             StockAttribute::traded_value})
        CHECK(attribute_from_name(attribute_name(a)) == a);
    CHECK_THROWS(attribute_from_name("volume"));
}
