// tailkit command line: ingest -> profile -> group -> fit -> regress, plus
// synthetic-market generation, the full pipeline, and plot-data export.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailkit/cohort.hpp"
#include "tailkit/io.hpp"
#include "tailkit/pipeline.hpp"
#include "tailkit/synth.hpp"

namespace {

using namespace tailkit;

SessionCalendar load_calendar(const std::string& path) {
    return path.empty() ? SessionCalendar::default_calendar()
                        : SessionCalendar::from_json_file(path);
}

void write_exclusions(const std::vector<Exclusion>& exclusions, const std::string& path) {
    std::string csv = "entity,stage,reason\n";
    for (const auto& e : exclusions) {
        std::string reason = e.reason;
        for (auto& ch : reason)
            if (ch == ',' || ch == '\n') ch = ';';
        csv += e.entity + "," + e.stage + "," + reason + "\n";
    }
    atomic_write_file(path, csv);
}

struct TailFlagSet {
    size_t min_tail = 50;
    size_t max_candidates = 1000;
    bool discrete_shift = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--min-tail", min_tail, "Smallest admissible tail size")
            ->capture_default_str();
        cmd->add_option("--max-candidates", max_candidates, "Cutoff scan cap (quantile thinning)")
            ->capture_default_str();
        cmd->add_flag("--discrete-shift", discrete_shift,
                      "Use the r_min - 0.5 correction for integer-valued data");
    }
    TailFitOptions options() const { return {min_tail, max_candidates, discrete_shift, 4.0}; }
};

std::map<std::string, ReturnSeries> load_returns_dir(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".csv") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    std::map<std::string, ReturnSeries> store;
    for (const auto& p : paths) {
        ReturnSeries series;
        series.stock_id = std::filesystem::path(p).stem().string();
        series.values = returns_from_csv_file(p);
        store.emplace(series.stock_id, std::move(series));
    }
    if (store.empty()) throw std::runtime_error("no returns files under " + dir);
    return store;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tailkit: intraday return distributions, power-law tails, and\n"
                 "their dependence on turnover rate and market capitalization"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // ---- ingest -----------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "Ticks -> standardized returns + profiles");
    std::string in_ticks, in_shares, in_calendar, out_dir;
    bool drop_gap = false;
    ingest->add_option("--ticks", in_ticks, "Tick CSV (stock_id,timestamp,price,volume)")
        ->required();
    ingest->add_option("--shares", in_shares, "Shares CSV (stock_id,tradable_shares)")->required();
    ingest->add_option("--calendar", in_calendar, "Session calendar JSON (default sessions if unset)");
    ingest->add_option("--out", out_dir, "Output directory")
        ->envname("TAILKIT_OUTDIR")
        ->required();
    ingest->add_flag("--drop-session-gap", drop_gap, "Drop the return spanning the lunch gap");

    auto run_ingest = [&](bool profiles_only) {
        const auto calendar = load_calendar(in_calendar);
        const auto res = ingest_market(in_ticks, in_shares, calendar, drop_gap);
        if (res.profiles.empty()) throw std::runtime_error("no stock survived ingest");
        ensure_dir(out_dir);
        if (!profiles_only) {
            ensure_dir(out_dir + "/returns");
            std::string meta = "stock_id,n,raw_mean,raw_sigma\n";
            for (const auto& [id, series] : res.returns) {
                atomic_write_file(out_dir + "/returns/" + id + ".csv",
                                  returns_to_csv(series.values));
                meta += id + "," + std::to_string(series.values.size()) + "," +
                        fmt_double(series.raw_mean) + "," + fmt_double(series.raw_sigma) + "\n";
            }
            atomic_write_file(out_dir + "/returns_meta.csv", meta);
        }
        atomic_write_file(out_dir + "/profiles.csv", profiles_to_csv(res.profiles));
        write_exclusions(res.exclusions, out_dir + "/exclusions.csv");
        std::printf("ingested %zu stocks (%zu excluded)\n", res.returns.size(),
                    res.exclusions.size());
    };
    ingest->callback([&] { run_ingest(false); });

    // ---- profile ----------------------------------------------------------
    auto* profile = app.add_subcommand("profile", "Ticks -> per-stock profiles CSV only");
    profile->add_option("--ticks", in_ticks, "Tick CSV")->required();
    profile->add_option("--shares", in_shares, "Shares CSV")->required();
    profile->add_option("--calendar", in_calendar, "Session calendar JSON");
    profile->add_option("--out", out_dir, "Output directory")->envname("TAILKIT_OUTDIR")->required();
    profile->callback([&] { run_ingest(true); });

    // ---- group ------------------------------------------------------------
    auto* group = app.add_subcommand("group", "Partition stocks into equal-count cohorts");
    std::string in_profiles, attribute = "turnover", group_stat = "mean";
    int n_groups = 20;
    group->add_option("--profiles", in_profiles, "profiles.csv from ingest")->required();
    group->add_option("--attribute", attribute, "turnover | capitalization | traded_value");
    group->add_option("--groups", n_groups, "Number of cohorts");
    group->add_option("--group-stat", group_stat, "Group attribute statistic: mean | median");
    group->add_option("--out", out_dir, "Output directory")->envname("TAILKIT_OUTDIR")->required();
    group->callback([&] {
        const auto profiles = profiles_from_csv_file(in_profiles);
        const auto partition =
            partition_stocks(profiles, attribute_from_name(attribute), n_groups,
                             group_stat == "median" ? GroupStat::median : GroupStat::mean);
        ensure_dir(out_dir);
        const std::string path = out_dir + "/partition_" + attribute + ".json";
        atomic_write_file(path, partition_to_json(partition));
        std::printf("wrote %s\n", path.c_str());
    });

    // ---- fit --------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "Tail and q-Gaussian fits from return files");
    std::string returns_dir, partition_path, fit_mode = "tail";
    TailFlagSet tail_flags;
    bool unit_variance = false;
    fit->add_option("--returns-dir", returns_dir, "Directory of per-stock return CSVs")->required();
    fit->add_option("--partition", partition_path,
                    "Partition JSON; enables pooled per-group fitting");
    fit->add_option("--mode", fit_mode, "tail | qgaussian | both");
    fit->add_flag("--unit-variance", unit_variance, "Pin the q-Gaussian scale at alpha/(alpha-2)");
    tail_flags.attach(fit);
    fit->add_option("--out", out_dir, "Output directory")->envname("TAILKIT_OUTDIR")->required();
    fit->callback([&] {
        const FitMode mode = fit_mode_from_name(fit_mode);
        const auto store = load_returns_dir(returns_dir);
        ensure_dir(out_dir);
        if (partition_path.empty()) {
            if (mode != FitMode::tail)
                throw std::runtime_error("per-stock q-Gaussian fitting needs --partition");
            std::vector<std::pair<std::string, TailFit>> fits;
            std::vector<Exclusion> exclusions;
            for (const auto& [id, series] : store) {
                for (TailSign sign : {TailSign::positive, TailSign::negative}) {
                    try {
                        fits.emplace_back(id, fit_tail(series.values, sign, tail_flags.options()));
                    } catch (const std::exception& e) {
                        exclusions.push_back(
                            {id, std::string("tail_fit_") + tail_sign_name(sign), e.what()});
                    }
                }
            }
            atomic_write_file(out_dir + "/tails.csv", tail_fits_to_csv(fits));
            write_exclusions(exclusions, out_dir + "/exclusions.csv");
            std::printf("wrote %s (%zu fits)\n", (out_dir + "/tails.csv").c_str(), fits.size());
            return;
        }
        const auto partition = partition_from_json_file(partition_path);
        QGaussianFitOptions qopt;
        qopt.unit_variance = unit_variance;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (size_t gi = 0; gi < partition.groups.size(); ++gi) {
            const auto pooled = pool_returns(partition.groups[gi], store);
            nlohmann::ordered_json row;
            row["group"] = gi;
            row["attribute_stat"] = partition.groups[gi].attribute_stat;
            row["pooled_size"] = pooled.size();
            if (mode != FitMode::qgaussian) {
                for (TailSign sign : {TailSign::positive, TailSign::negative}) {
                    const TailFit f = fit_tail(pooled, sign, tail_flags.options());
                    auto& jt = row[sign == TailSign::positive ? "tail_positive" : "tail_negative"];
                    jt = {{"alpha", f.alpha}, {"r_min", f.r_min},   {"n_tail", f.n_tail},
                          {"ks", f.ks},       {"stderr", f.std_error}, {"flags", f.flags}};
                }
            }
            if (mode != FitMode::tail) {
                const auto qf = fit_qgaussian(estimate_pdf(pooled), qopt);
                row["qgaussian"] = nlohmann::ordered_json::parse(qgaussian_fit_to_json(qf));
            }
            rows.push_back(std::move(row));
        }
        const std::string path =
            out_dir + "/group_fits_" + attribute_name(partition.attribute) + ".json";
        atomic_write_file(path, rows.dump(2) + "\n");
        std::printf("wrote %s\n", path.c_str());
    });

    // ---- regress ----------------------------------------------------------
    auto* regress = app.add_subcommand("regress", "Per-stock regressions from tails + profiles");
    std::string tails_path;
    regress->add_option("--tails", tails_path, "tails.csv from fit/pipeline")->required();
    regress->add_option("--profiles", in_profiles, "profiles.csv from ingest")->required();
    regress->add_option("--out", out_dir, "Output directory")->envname("TAILKIT_OUTDIR")->required();
    regress->callback([&] {
        const auto profiles = profiles_from_csv_file(in_profiles);
        const auto tails = tail_fits_from_csv_file(tails_path);
        const auto set = regress_stock_tails(profiles, tails);
        if (set.regressions.empty()) throw std::runtime_error("regress: no regression could be fit");
        ensure_dir(out_dir);
        for (const auto& [key, fitres] : set.regressions) {
            const auto rp = set.reparametrized.find(key);
            const auto sc = set.scatter.find(key);
            atomic_write_file(
                out_dir + "/" + key + ".json",
                regression_report_json(fitres,
                                       rp != set.reparametrized.end() ? &rp->second : nullptr,
                                       sc != set.scatter.end() ? &sc->second : nullptr));
        }
        for (const char* suffix : {"positive", "negative"}) {
            std::vector<RegressionFit> fits;
            for (const char* base :
                 {"stocks_turnover_", "stocks_capitalization_", "stocks_bivariate_"}) {
                const auto it = set.regressions.find(std::string(base) + suffix);
                if (it != set.regressions.end()) fits.push_back(it->second);
            }
            if (fits.size() == 3) {
                const auto table = model_comparison(fits);
                atomic_write_file(out_dir + "/model_comparison_" + suffix + ".csv", table.csv);
                atomic_write_file(out_dir + "/model_comparison_" + suffix + ".txt", table.text);
            }
        }
        write_exclusions(set.exclusions, out_dir + "/exclusions.csv");
        std::printf("wrote %zu regression reports\n", set.regressions.size());
    });

    // ---- synth ------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "Generate a planted synthetic market");
    SyntheticMarketConfig market;
    synth->add_option("--stocks", market.n_stocks, "Number of stocks");
    synth->add_option("--returns-per-stock", market.returns_per_stock, "Planted returns per stock");
    synth->add_option("--seed", market.master_seed, "Master seed");
    synth->add_option("--intercept", market.intercept, "Planted plane intercept A");
    synth->add_option("--slope-turnover", market.slope_turnover, "Planted B_vc");
    synth->add_option("--slope-cap", market.slope_cap, "Planted B_c");
    synth->add_option("--alpha-noise", market.alpha_noise, "Noise on the planted exponent");
    synth->add_option("--cap-min", market.cap_min, "Capitalization range low");
    synth->add_option("--cap-max", market.cap_max, "Capitalization range high");
    synth->add_option("--turnover-min", market.turnover_min, "Turnover range low");
    synth->add_option("--turnover-max", market.turnover_max, "Turnover range high");
    synth->add_option("--tail-fraction", market.tail_fraction, "Pareto share of the mixture");
    synth->add_option("--body-cutoff", market.body_cutoff, "Pareto cutoff of the mixture");
    synth->add_option("--calendar", in_calendar, "Session calendar JSON");
    synth->add_option("--out", out_dir, "Output directory")->envname("TAILKIT_OUTDIR")->required();
    synth->callback([&] {
        const auto calendar = load_calendar(in_calendar);
        gen_synthetic_market(market, calendar, out_dir);
        std::printf("wrote synthetic market (%d stocks) under %s\n", market.n_stocks,
                    out_dir.c_str());
    });

    // ---- pipeline / plotdata ------------------------------------------------
    PipelineConfig pipe;
    std::string pipe_fit_mode = "both", pipe_group_stat = "mean", pipe_config_path;
    TailFlagSet pipe_tail_flags;
    auto add_pipeline_options = [&](CLI::App* cmd) {
        cmd->add_option("--ticks", pipe.ticks_path, "Tick CSV")->required();
        cmd->add_option("--shares", pipe.shares_path, "Shares CSV")->required();
        cmd->add_option("--calendar", pipe.calendar_path, "Session calendar JSON");
        cmd->add_option("--out", pipe.out_dir, "Output directory")
            ->envname("TAILKIT_OUTDIR")
            ->required();
        cmd->add_option("--groups", pipe.n_groups, "Number of cohorts per attribute");
        cmd->add_option("--group-stat", pipe_group_stat, "mean | median");
        cmd->add_option("--fit-mode", pipe_fit_mode, "tail | qgaussian | both");
        cmd->add_option("--gof-bootstrap", pipe.gof_bootstrap,
                        "Goodness-of-fit bootstrap replicates (0 = off)");
        cmd->add_flag("--drop-session-gap", pipe.drop_session_gap,
                      "Drop the return spanning the lunch gap");
        cmd->add_flag("--unit-variance", pipe.qgaussian.unit_variance,
                      "Pin the q-Gaussian scale at alpha/(alpha-2)");
        cmd->add_flag("--emit-ccdf", pipe.emit_ccdf,
                      "Also write exact per-group r,ccdf files (can be large)");
        cmd->add_option("--seed", pipe.seed, "Seed for the bootstrap stage");
        cmd->add_option("--config", pipe_config_path,
                        "JSON config; values in it override the flags above");
        pipe_tail_flags.attach(cmd);
    };
    auto finish_pipe_config = [&] {
        if (!pipe_config_path.empty()) {
            const auto doc = nlohmann::json::parse(read_file(pipe_config_path));
            auto set_str = [&](const char* key, std::string& target) {
                if (doc.contains(key)) target = doc.at(key).get<std::string>();
            };
            set_str("ticks", pipe.ticks_path);
            set_str("shares", pipe.shares_path);
            set_str("calendar", pipe.calendar_path);
            set_str("out", pipe.out_dir);
            set_str("group_stat", pipe_group_stat);
            set_str("fit_mode", pipe_fit_mode);
            if (doc.contains("groups")) pipe.n_groups = doc.at("groups").get<int>();
            if (doc.contains("gof_bootstrap"))
                pipe.gof_bootstrap = doc.at("gof_bootstrap").get<int>();
            if (doc.contains("drop_session_gap"))
                pipe.drop_session_gap = doc.at("drop_session_gap").get<bool>();
            if (doc.contains("unit_variance"))
                pipe.qgaussian.unit_variance = doc.at("unit_variance").get<bool>();
            if (doc.contains("emit_ccdf")) pipe.emit_ccdf = doc.at("emit_ccdf").get<bool>();
            if (doc.contains("seed")) pipe.seed = doc.at("seed").get<uint64_t>();
            if (doc.contains("min_tail")) pipe_tail_flags.min_tail = doc.at("min_tail").get<size_t>();
            if (doc.contains("max_candidates"))
                pipe_tail_flags.max_candidates = doc.at("max_candidates").get<size_t>();
            if (doc.contains("discrete_shift"))
                pipe_tail_flags.discrete_shift = doc.at("discrete_shift").get<bool>();
        }
        pipe.fit_mode = fit_mode_from_name(pipe_fit_mode);
        pipe.group_stat = pipe_group_stat == "median" ? GroupStat::median : GroupStat::mean;
        pipe.tail = pipe_tail_flags.options();
    };

    auto* pipeline = app.add_subcommand("pipeline", "Full run: ingest through reports");
    add_pipeline_options(pipeline);
    pipeline->callback([&] {
        finish_pipe_config();
        const auto res = run_pipeline(pipe);
        std::printf("pipeline wrote %zu files under %s (%zu exclusions)\n",
                    res.files_written.size(), pipe.out_dir.c_str(), res.exclusions.size());
    });

    auto* plotdata = app.add_subcommand("plotdata", "Compute fits and export plot data only");
    add_pipeline_options(plotdata);
    plotdata->callback([&] {
        finish_pipe_config();
        const auto res = compute_pipeline(pipe);
        const auto files = emit_plot_data(res, pipe.out_dir);
        std::printf("wrote %zu plot-data files under %s\n", files.size(), pipe.out_dir.c_str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
