// Ingest chain: calendar, minute bars, intraday returns, standardization,
// traded value, and per-stock profiles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tailkit/bars.hpp"
#include "tailkit/io.hpp"
#include "tailkit/profile.hpp"
#include "tailkit/returns.hpp"
#include "tailkit/rng.hpp"
#include "tailkit/ticks.hpp"

using namespace tailkit;

namespace {

TradeTick tick(const char* id, const char* when, double price, double volume) {
    return {id, parse_timestamp(when), price, volume};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("timestamps parse and format round-trip") {
    const Timestamp t = parse_timestamp("2004-01-05 09:31:07");
    CHECK(format_timestamp(t) == "2004-01-05 09:31:07");
    CHECK(t.second_of_day() == 9 * 3600 + 31 * 60 + 7);
    CHECK(format_date(t.day()) == "2004-01-05");
    CHECK_THROWS(parse_timestamp("2004-13-05 09:31:07"));
    CHECK_THROWS(parse_timestamp("20040105"));
}

TEST_CASE("default calendar has 240 session minutes") {
    const auto cal = SessionCalendar::default_calendar();
    CHECK(cal.minutes_per_day() == 240);
    CHECK(cal.boundaries_sec().front() == 9 * 3600 + 31 * 60);
    CHECK(cal.boundaries_sec().back() == 15 * 3600);
    CHECK(cal.boundary_opens_window(0));
    CHECK(cal.boundary_opens_window(120));   // 13:01, after lunch
    CHECK(!cal.boundary_opens_window(119));  // 11:30
    CHECK(cal.in_session(9 * 3600 + 30 * 60));
    CHECK(!cal.in_session(12 * 3600));
}

TEST_CASE("calendar rejects overlapping or reversed windows") {
    CHECK_THROWS(SessionCalendar({{600, 570}}));
    CHECK_THROWS(SessionCalendar({{570, 690}, {680, 900}}));
    CHECK_THROWS(SessionCalendar(std::vector<SessionWindow>{}));
}

TEST_CASE("minute close is the last tick at or before each boundary") {
    const auto cal = SessionCalendar::default_calendar();
    const std::vector<TradeTick> ticks = {tick("A", "2004-01-05 09:30:05", 10.0, 1),
                                          tick("A", "2004-01-05 09:31:40", 10.2, 1)};
    const auto bars = build_minute_bars("A", ticks, cal);
    REQUIRE(bars.days.size() == 1);
    CHECK(bars.days[0].first_boundary == 0);
    REQUIRE(bars.days[0].closes.size() == 240);
    CHECK(bars.days[0].closes[0] == 10.0);  // 09:31
    CHECK(bars.days[0].closes[1] == 10.2);  // 09:32
    CHECK(bars.days[0].closes[239] == 10.2);
}

TEST_CASE("single tick per day carries its price through every minute") {
    const auto cal = SessionCalendar::default_calendar();
    const auto bars =
        build_minute_bars("A", {tick("A", "2004-01-05 09:30:00", 7.5, 1)}, cal);
    REQUIRE(bars.days[0].closes.size() == 240);
    for (double c : bars.days[0].closes) CHECK(c == 7.5);
}

TEST_CASE("minutes before the first tick of a day are dropped") {
    const auto cal = SessionCalendar::default_calendar();
    const auto bars =
        build_minute_bars("A", {tick("A", "2004-01-05 09:35:30", 3.0, 1)}, cal);
    CHECK(bars.days[0].first_boundary == 5);  // first close at 09:36
    CHECK(bars.days[0].closes.size() == 235);
}

TEST_CASE("decreasing timestamps are rejected with the offending index") {
    const auto cal = SessionCalendar::default_calendar();
    const std::vector<TradeTick> ticks = {tick("A", "2004-01-05 09:40:00", 10.0, 1),
                                          tick("A", "2004-01-05 09:35:00", 10.1, 1)};
    CHECK_THROWS_WITH_AS(build_minute_bars("A", ticks, cal),
                         doctest::Contains("index 1"), std::runtime_error);
}

TEST_CASE("intraday returns follow ln S(t) - ln S(t-1) within a day") {
    const auto cal = SessionCalendar::default_calendar();
    MinuteSeries bars;
    bars.stock_id = "A";
    const double e = std::exp(1.0);

    SUBCASE("day prices [1, e, e] give returns [1, 0]") {
        bars.days = {{12422, 0, {1.0, e, e}, {}}};
        const auto r = compute_intraday_returns(bars, cal);
        REQUIRE(r.size() == 2);
        CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r[1] == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("overnight pair is never formed") {
        bars.days = {{12422, 0, {2.0, 3.0}, {}}, {12423, 0, {5.0, 7.0}, {}}};
        const auto r = compute_intraday_returns(bars, cal);
        REQUIRE(r.size() == 2);
        CHECK(r[0] == doctest::Approx(std::log(3.0 / 2.0)));
        CHECK(r[1] == doctest::Approx(std::log(7.0 / 5.0)));
    }
    SUBCASE("constant prices give zero returns") {
        bars.days = {{12422, 0, std::vector<double>(240, 4.2), {}}};
        for (double r : compute_intraday_returns(bars, cal)) CHECK(r == 0.0);
    }
    SUBCASE("empty series is an error") {
        bars.days = {};
        CHECK_THROWS(compute_intraday_returns(bars, cal));
        bars.days = {{12422, 0, {1.0}, {}}};
        CHECK_THROWS(compute_intraday_returns(bars, cal));
    }
    SUBCASE("lunch-gap return is kept by default and dropped on request") {
        bars.days = {{12422, 118, {1.0, 2.0, 3.0, 4.0}, {}}};  // 11:29,11:30,13:01,13:02
        CHECK(compute_intraday_returns(bars, cal, true).size() == 3);
        const auto strict = compute_intraday_returns(bars, cal, false);
        REQUIRE(strict.size() == 2);
        CHECK(strict[0] == doctest::Approx(std::log(2.0)));
        CHECK(strict[1] == doctest::Approx(std::log(4.0 / 3.0)));
    }
}

TEST_CASE("return count equals sum over days of minutes minus one") {
    const auto cal = SessionCalendar::default_calendar();
    Rng rng(7);
    MinuteSeries bars;
    bars.stock_id = "A";
    size_t expected = 0;
    for (int d = 0; d < 5; ++d) {
        const size_t m = 2 + static_cast<size_t>(rng.uniform01() * 238);
        std::vector<double> closes;
        for (size_t k = 0; k < m; ++k) closes.push_back(1.0 + rng.uniform01());
        bars.days.push_back({12422 + d, 0, std::move(closes), {}});
        expected += m - 1;
    }
    CHECK(compute_intraday_returns(bars, cal).size() == expected);
}

TEST_CASE("standardization yields exact zero mean, unit variance") {
    const auto rs = standardize("A", {1.0, 2.0, 3.0});
    REQUIRE(rs.values.size() == 3);
    const double want = std::sqrt(1.5);  // 1/sqrt(2/3)
    CHECK(rs.values[0] == doctest::Approx(-want).epsilon(1e-12));
    CHECK(rs.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rs.values[2] == doctest::Approx(want).epsilon(1e-12));
    CHECK(rs.raw_mean == doctest::Approx(2.0));
    CHECK(rs.raw_sigma == doctest::Approx(std::sqrt(2.0 / 3.0)));

    double mean = 0.0, var = 0.0;
    for (double v : rs.values) mean += v;
    mean /= 3.0;
    for (double v : rs.values) var += (v - mean) * (v - mean);
    var /= 3.0;
    CHECK(std::fabs(mean) < 1e-9);
    CHECK(std::fabs(var - 1.0) < 1e-9);
}

TEST_CASE("standardize is idempotent and affine-invariant") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> raw;
        const size_t n = 3 + static_cast<size_t>(rng.uniform01() * 500);
        for (size_t i = 0; i < n; ++i) raw.push_back(rng.normal() * 0.01 + 0.001);
        const auto once = standardize("A", raw);
        const auto twice = standardize("A", once.values);
        const double a = std::exp(rng.uniform(-3.0, 3.0));
        const double b = rng.uniform(-5.0, 5.0);
        std::vector<double> affine;
        for (double r : raw) affine.push_back(a * r + b);
        const auto scaled = standardize("A", affine);
        for (size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(twice.values[i] - once.values[i]) < 1e-12);
            CHECK(std::fabs(scaled.values[i] - once.values[i]) < 1e-9);
        }
    }
}

TEST_CASE("degenerate series is rejected") {
    CHECK_THROWS_WITH_AS(standardize("A", {5.0, 5.0, 5.0}), doctest::Contains("degenerate"),
                         std::runtime_error);
    CHECK_THROWS(standardize("A", {1.0}));
}

TEST_CASE("minute traded value is sum of volume times price") {
    const std::vector<TradeTick> ticks = {tick("A", "2004-01-05 09:30:10", 10.0, 100),
                                          tick("A", "2004-01-05 09:30:40", 10.1, 200)};
    CHECK(minute_traded_value(ticks) == doctest::Approx(3020.0).epsilon(1e-12));
    CHECK(minute_traded_value({}) == 0.0);
    const std::vector<TradeTick> one = {tick("A", "2004-01-05 09:30:10", 12.34, 1)};
    CHECK(minute_traded_value(one) == doctest::Approx(12.34));
}

TEST_CASE("splitting a trade at the same price leaves traded value unchanged") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const double p = std::exp(rng.uniform(0.0, 4.0));
        const double v = std::exp(rng.uniform(0.0, 8.0));
        const double split = rng.uniform01() * v;
        const std::vector<TradeTick> whole = {tick("A", "2004-01-05 09:30:10", p, v)};
        const std::vector<TradeTick> parts = {tick("A", "2004-01-05 09:30:10", p, split),
                                              tick("A", "2004-01-05 09:30:20", p, v - split)};
        CHECK(minute_traded_value(whole) ==
              doctest::Approx(minute_traded_value(parts)).epsilon(1e-12));
    }
}

TEST_CASE("profile: mean traded value counts zero-trade minutes") {
    // Two-minute calendar keeps the arithmetic visible.
    const SessionCalendar cal({{9 * 60 + 30, 9 * 60 + 32}});
    REQUIRE(cal.minutes_per_day() == 2);
    const std::vector<TradeTick> ticks = {tick("A", "2004-01-05 09:31:30", 10.0, 10.0)};
    const auto bars = build_minute_bars("A", ticks, cal);
    REQUIRE(bars.days[0].traded_value.size() == 2);
    CHECK(bars.days[0].traded_value[0] == 0.0);
    CHECK(bars.days[0].traded_value[1] == doctest::Approx(100.0));

    const auto p = compute_profile(bars, 1e6, cal.minutes_per_day());
    CHECK(p.mean_traded_value == doctest::Approx(50.0));
    CHECK(p.capitalization == doctest::Approx(1e7));  // shares * first close
    CHECK(p.turnover == doctest::Approx(50.0 / 1e7));
    // Turnover identity, exact to 1 ulp scale.
    CHECK(std::fabs(p.turnover * p.capitalization - p.mean_traded_value) <=
          1e-12 * p.mean_traded_value);
    CHECK_THROWS(compute_profile(bars, 0.0, cal.minutes_per_day()));
}

TEST_CASE("tick CSV reader validates fields, session, and order") {
    const auto cal = SessionCalendar::default_calendar();
    const std::string good =
        "stock_id,timestamp,price,volume\n"
        "A,2004-01-05 09:30:05,10.0,100\n"
        "A,2004-01-05 09:31:40,10.2,50\n"
        "B,2004-01-05 09:30:09,5.0,10\n";
    const auto table = read_tick_csv(write_temp("tk_good.csv", good), cal);
    CHECK(table.size() == 2);
    CHECK(table.at("A").size() == 2);

    CHECK_THROWS_WITH_AS(
        read_tick_csv(write_temp("tk_unsorted.csv",
                                 "stock_id,timestamp,price,volume\n"
                                 "A,2004-01-05 09:31:40,10.2,50\n"
                                 "A,2004-01-05 09:30:05,10.0,100\n"),
                      cal),
        doctest::Contains("record 2"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_tick_csv(write_temp("tk_lunch.csv",
                                                  "stock_id,timestamp,price,volume\n"
                                                  "A,2004-01-05 12:15:00,10.0,1\n"),
                                       cal),
                         doctest::Contains("session"), std::runtime_error);
    CHECK_THROWS(read_tick_csv(write_temp("tk_header.csv", "a,b\n"), cal));
    CHECK_THROWS(read_tick_csv(write_temp("tk_price.csv",
                                          "stock_id,timestamp,price,volume\n"
                                          "A,2004-01-05 09:30:05,0.0,100\n"),
                               cal));
}

TEST_CASE("shares CSV reader") {
    const auto path = write_temp("sh.csv", "stock_id,tradable_shares\nA,1000000\nB,2.5e7\n");
    const auto shares = read_shares_csv(path);
    CHECK(shares.at("A") == doctest::Approx(1e6));
    CHECK(shares.at("B") == doctest::Approx(2.5e7));
    CHECK_THROWS(read_shares_csv(write_temp("sh_bad.csv", "stock_id,tradable_shares\nA,0\n")));
}
