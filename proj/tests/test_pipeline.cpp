// End-to-end pipeline on a small planted market: bundle layout, determinism,
// plot-data contracts, and config rejection.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "tailkit/io.hpp"
#include "tailkit/pipeline.hpp"
#include "tailkit/synth.hpp"

using namespace tailkit;
namespace fs = std::filesystem;

namespace {

struct MarketFixture {
    std::string dir;
    PipelineConfig config;

    explicit MarketFixture(const std::string& name, int n_stocks = 24,
                           size_t returns_per_stock = 3000) {
        dir = (fs::temp_directory_path() / name).string();
        fs::remove_all(dir);
        SyntheticMarketConfig market;
        market.n_stocks = n_stocks;
        market.returns_per_stock = returns_per_stock;
        market.master_seed = 7777;
        gen_synthetic_market(market, SessionCalendar::default_calendar(), dir + "/market");
        config.ticks_path = dir + "/market/ticks.csv";
        config.shares_path = dir + "/market/shares.csv";
        config.out_dir = dir + "/out";
        config.n_groups = 6;
        config.tail.max_candidates = 200;  // keep the scan quick at this scale
    }
};

std::map<std::string, std::string> snapshot_dir(const std::string& root) {
    std::map<std::string, std::string> contents;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            contents[fs::relative(entry.path(), root).string()] = read_file(entry.path().string());
    return contents;
}

}  // namespace

TEST_CASE("pipeline writes the full report bundle and is byte-identical on rerun") {
    MarketFixture fx("tk_pipe");
    const auto res = run_pipeline(fx.config);

    CHECK(res.returns.size() == 24);
    CHECK(res.stock_tails.size() == 48);  // both signs for every stock
    CHECK(res.attributes.size() == 3);

    const std::string out = fx.config.out_dir;
    for (const char* f :
         {"/manifest.json", "/profiles.csv", "/tails.csv", "/returns_meta.csv", "/exclusions.csv",
          "/partitions/partition_turnover.json", "/partitions/partition_capitalization.json",
          "/partitions/partition_traded_value.json", "/groups/groups_turnover.csv",
          "/groups/qgaussian_turnover.json", "/regressions/stocks_bivariate_positive.json",
          "/regressions/model_comparison_positive.csv",
          "/regressions/model_comparison_negative.txt",
          "/plotdata/group_scatter_turnover.csv"})
        CHECK(fs::exists(out + f));

    // 6 groups -> 6 PDF files + 1 group scatter per attribute.
    for (const char* attr : {"turnover", "capitalization", "traded_value"}) {
        int pdfs = 0, scatters = 0;
        for (const auto& entry : fs::directory_iterator(out + "/plotdata")) {
            const auto name = entry.path().filename().string();
            if (name.rfind(std::string("pdf_") + attr + "_g", 0) == 0) ++pdfs;
            if (name == std::string("group_scatter_") + attr + ".csv") ++scatters;
        }
        CHECK(pdfs == 6);
        CHECK(scatters == 1);
    }

    // Determinism: a rerun reproduces every byte.
    const auto before = snapshot_dir(out);
    fs::remove_all(out);
    run_pipeline(fx.config);
    const auto after = snapshot_dir(out);
    REQUIRE(before.size() == after.size());
    for (const auto& [name, content] : before) {
        INFO("file ", name);
        CHECK(after.at(name) == content);
    }
}

TEST_CASE("every alpha entering a per-stock regression is an emitted fit record") {
    MarketFixture fx("tk_pipe_acct");
    const auto res = run_pipeline(fx.config);
    for (const char* suffix : {"positive", "negative"}) {
        const auto& points = res.scatter.at(std::string("stocks_turnover_") + suffix);
        size_t fits = 0;
        for (const auto& [id, fit] : res.stock_tails)
            fits += tail_sign_name(fit.sign) == std::string(suffix);
        CHECK(points.size() == fits);
        CHECK(res.regressions.at(std::string("stocks_turnover_") + suffix).n_obs == points.size());
    }
    // Exclusions carry reasons.
    for (const auto& e : res.exclusions) {
        CHECK(!e.entity.empty());
        CHECK(!e.reason.empty());
    }
}

TEST_CASE("fit lines in plot data satisfy y = A + B ln x exactly") {
    MarketFixture fx("tk_pipe_line");
    const auto res = run_pipeline(fx.config);
    const auto csv = read_file(fx.config.out_dir + "/plotdata/stock_scatter_turnover_positive.csv");
    const auto& fit = res.regressions.at("stocks_turnover_positive");
    const double a = fit.coefficients[0].estimate;
    const double b = fit.coefficients[1].estimate;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int fit_rows = 0, ref_rows = 0;
    while (std::getline(lines, line)) {
        const auto f = split_csv_line(line);
        REQUIRE(f.size() == 3);
        if (f[0] == "fit") {
            const double x = std::strtod(f[1].c_str(), nullptr);
            CHECK(f[2] == fmt_double(a + b * std::log(x)));
            ++fit_rows;
        }
        if (f[0] == "reference_alpha2") {
            CHECK(f[2] == "2");
            ++ref_rows;
        }
    }
    CHECK(fit_rows == 2);
    CHECK(ref_rows == 2);
}

TEST_CASE("config validation rejects bad setups before any work") {
    MarketFixture fx("tk_pipe_cfg");
    PipelineConfig bad = fx.config;
    bad.n_groups = 1;
    CHECK_THROWS_AS(run_pipeline(bad), std::invalid_argument);
    CHECK(!fs::exists(bad.out_dir));

    bad = fx.config;
    bad.ticks_path = "/nonexistent/ticks.csv";
    CHECK_THROWS(run_pipeline(bad));

    bad = fx.config;
    bad.out_dir.clear();
    CHECK_THROWS_AS(run_pipeline(bad), std::invalid_argument);
}

TEST_CASE("emit_plot_data refuses an empty result") {
    PipelineResult empty;
    CHECK_THROWS(emit_plot_data(empty, (fs::temp_directory_path() / "tk_noplot").string()));
}

TEST_CASE("regression reports carry the no-flagged-points variant when flags fire") {
    std::vector<AttributePoint> points;
    for (int i = 1; i <= 40; ++i)
        points.push_back({std::exp(0.1 * i), 1.0 + 0.5 * (0.1 * i)});
    points[20].alpha += 10.0;  // gross outlier
    const auto fit = regress_alpha_turnover(points);
    REQUIRE(fit.outlier_indices == std::vector<size_t>{20});
    const auto report = regression_report_json(fit, nullptr, &points);
    CHECK(report.find("\"excluding_flagged\"") != std::string::npos);
    CHECK(report.find("\"outlier_indices\": [\n    20\n  ]") != std::string::npos);

    // Without flags the block stays absent.
    points[20].alpha -= 10.0;
    const auto clean = regress_alpha_turnover(points);
    CHECK(regression_report_json(clean, nullptr, &points).find("excluding_flagged") ==
          std::string::npos);
}

TEST_CASE("emit_ccdf writes exact per-group tail files") {
    MarketFixture fx("tk_pipe_ccdf", 8, 1000);
    fx.config.n_groups = 2;
    fx.config.emit_ccdf = true;
    run_pipeline(fx.config);
    const auto csv =
        read_file(fx.config.out_dir + "/plotdata/ccdf_turnover_g00_positive.csv");
    CHECK(csv.rfind("r,ccdf\n", 0) == 0);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    double prev_r = -1.0, prev_p = 2.0;
    size_t rows = 0;
    while (std::getline(lines, line)) {
        const auto f = split_csv_line(line);
        REQUIRE(f.size() == 2);
        const double r = std::strtod(f[0].c_str(), nullptr);
        const double p = std::strtod(f[1].c_str(), nullptr);
        CHECK(r > prev_r);
        CHECK(p < prev_p);
        prev_r = r;
        prev_p = p;
        ++rows;
    }
    CHECK(rows > 100);
}

TEST_CASE("bundle readers round-trip tails and partitions") {
    MarketFixture fx("tk_pipe_rt");
    const auto res = run_pipeline(fx.config);
    const auto tails = tail_fits_from_csv_file(fx.config.out_dir + "/tails.csv");
    REQUIRE(tails.size() == res.stock_tails.size());
    for (size_t i = 0; i < tails.size(); ++i) {
        CHECK(tails[i].first == res.stock_tails[i].first);
        CHECK(tails[i].second.alpha ==
              doctest::Approx(res.stock_tails[i].second.alpha).epsilon(1e-12));
        CHECK(tails[i].second.n_tail == res.stock_tails[i].second.n_tail);
    }
    const auto partition =
        partition_from_json_file(fx.config.out_dir + "/partitions/partition_turnover.json");
    CHECK(partition.attribute == StockAttribute::turnover);
    REQUIRE(partition.groups.size() == res.attributes[0].partition.groups.size());
    for (size_t gi = 0; gi < partition.groups.size(); ++gi)
        CHECK(partition.groups[gi].members == res.attributes[0].partition.groups[gi].members);

    const auto values =
        returns_from_csv_file(fx.config.out_dir + "/returns/" + res.profiles[0].stock_id + ".csv");
    const auto& original = res.returns.at(res.profiles[0].stock_id).values;
    REQUIRE(values.size() == original.size());
    for (size_t i = 0; i < values.size(); ++i) CHECK(values[i] == original[i]);
}

TEST_CASE("drop-session-gap removes one return per extra window per day") {
    MarketFixture fx("tk_pipe_gap", 6, 1000);
    PipelineConfig strict = fx.config;
    strict.n_groups = 2;
    strict.out_dir = fx.dir + "/out_strict";
    strict.drop_session_gap = true;
    const auto loose = run_pipeline(fx.config);
    const auto tight = run_pipeline(strict);
    for (const auto& [id, series] : loose.returns) {
        // 1000 returns pad to 5 days of 239; dropping the lunch return loses
        // one per day.
        CHECK(series.values.size() == 1195);
        CHECK(tight.returns.at(id).values.size() == 1195 - 5);
    }
}
