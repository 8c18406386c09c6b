#include "tailkit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "tailkit/bars.hpp"
#include "tailkit/io.hpp"
#include "tailkit/rng.hpp"
#include "tailkit/ticks.hpp"

#include <json.hpp>

namespace tailkit {

FitMode fit_mode_from_name(const std::string& name) {
    if (name == "tail") return FitMode::tail;
    if (name == "qgaussian") return FitMode::qgaussian;
    if (name == "both") return FitMode::both;
    throw std::invalid_argument("unknown fit mode '" + name + "' (want tail, qgaussian, or both)");
}

void validate_config(const PipelineConfig& c) {
    if (c.n_groups < 2) throw std::invalid_argument("pipeline: need at least 2 groups");
    if (c.out_dir.empty()) throw std::invalid_argument("pipeline: output directory not set");
    if (c.gof_bootstrap < 0) throw std::invalid_argument("pipeline: negative bootstrap count");
    for (const std::string* p : {&c.ticks_path, &c.shares_path}) {
        if (p->empty()) throw std::invalid_argument("pipeline: tick and shares paths are required");
        if (!std::filesystem::exists(*p))
            throw std::runtime_error("pipeline: input " + *p + " does not exist");
    }
    if (!c.calendar_path.empty() && !std::filesystem::exists(c.calendar_path))
        throw std::runtime_error("pipeline: calendar " + c.calendar_path + " does not exist");
}

namespace {

const StockAttribute kAttributes[] = {StockAttribute::turnover, StockAttribute::capitalization,
                                      StockAttribute::traded_value};

struct Writer {
    std::vector<std::string>* files;
    void operator()(const std::string& path, const std::string& content) const {
        atomic_write_file(path, content);
        files->push_back(path);
    }
};

std::string group_label(StockAttribute attr, size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_g%02zu", index);
    return std::string(attribute_name(attr)) + buf;
}

std::string joined_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ';';
        out += flags[i];
    }
    return out;
}

}  // namespace

std::string returns_to_csv(const std::vector<double>& values) {
    std::string out = "r\n";
    for (double v : values) {
        out += fmt_double(v);
        out += '\n';
    }
    return out;
}

std::vector<double> returns_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open returns file " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"r"})
        throw std::runtime_error("returns file " + path + ": bad header");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        values.push_back(std::strtod(line.c_str(), nullptr));
    }
    return values;
}

std::vector<std::pair<std::string, TailFit>> tail_fits_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tail report " + path);
    std::string line;
    if (!std::getline(in, line) ||
        split_csv_line(line) != std::vector<std::string>{"stock_id", "sign", "alpha", "r_min",
                                                         "n_tail", "ks", "stderr", "flags"})
        throw std::runtime_error("tail report " + path + ": bad header");
    std::vector<std::pair<std::string, TailFit>> fits;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::runtime_error("tail report " + path + ": bad row '" + line + "'");
        TailFit fit;
        fit.sign = f[1] == "positive" ? TailSign::positive : TailSign::negative;
        fit.alpha = std::strtod(f[2].c_str(), nullptr);
        fit.r_min = std::strtod(f[3].c_str(), nullptr);
        fit.n_tail = static_cast<size_t>(std::strtoull(f[4].c_str(), nullptr, 10));
        fit.ks = std::strtod(f[5].c_str(), nullptr);
        fit.std_error = std::strtod(f[6].c_str(), nullptr);
        if (!f[7].empty()) {
            std::string token;
            for (char ch : f[7]) {
                if (ch == ';') {
                    fit.flags.push_back(token);
                    token.clear();
                } else {
                    token.push_back(ch);
                }
            }
            fit.flags.push_back(token);
        }
        fits.emplace_back(f[0], std::move(fit));
    }
    return fits;
}

CohortPartition partition_from_json_file(const std::string& path) {
    const auto doc = nlohmann::json::parse(read_file(path));
    CohortPartition p;
    p.attribute = attribute_from_name(doc.at("attribute").get<std::string>());
    p.stat = doc.at("group_stat").get<std::string>() == "median" ? GroupStat::median : GroupStat::mean;
    for (const auto& g : doc.at("groups")) {
        CohortGroup group;
        group.attribute_stat = g.at("attribute_stat").get<double>();
        for (const auto& m : g.at("members")) group.members.push_back(m.get<std::string>());
        p.groups.push_back(std::move(group));
    }
    return p;
}

std::string regression_report_json(const RegressionFit& fit,
                                   const ReparametrizedCoefficients* reparametrized,
                                   const std::vector<AttributePoint>* points) {
    auto doc = nlohmann::ordered_json::parse(regression_to_json(fit));
    if (reparametrized) {
        doc["reparametrized"] = {{"intercept", reparametrized->intercept},
                                 {"slope_traded_value", reparametrized->slope_traded_value},
                                 {"slope_cap", reparametrized->slope_cap},
                                 {"identity_checked", true}};
    }
    if (points && !fit.outlier_indices.empty()) {
        std::set<size_t> drop(fit.outlier_indices.begin(), fit.outlier_indices.end());
        std::vector<AttributePoint> kept;
        for (size_t i = 0; i < points->size(); ++i)
            if (!drop.count(i)) kept.push_back((*points)[i]);
        try {
            const RegressionFit refit =
                fit.model.find("cap") != std::string::npos         ? regress_alpha_cap(kept)
                : fit.model.find("traded") != std::string::npos    ? regress_alpha_traded_value(kept)
                                                                   : regress_alpha_turnover(kept);
            doc["excluding_flagged"] = nlohmann::ordered_json::parse(regression_to_json(refit));
        } catch (const std::exception&) {
            // too few points once flagged rows are held out; flags stand alone
        }
    }
    return doc.dump(2) + "\n";
}

std::string qgaussian_fit_to_json(const QGaussianFit& fit) {
    nlohmann::ordered_json doc;
    doc["alpha"] = fit.alpha;
    doc["L"] = fit.scale;
    doc["objective"] = fit.objective;
    doc["converged"] = fit.converged;
    doc["n_bins_used"] = fit.n_bins_used;
    auto warnings = nlohmann::ordered_json::array();
    if (fit.near_gaussian) warnings.push_back("near_gaussian_alpha_unstable");
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
}

IngestResult ingest_market(const std::string& ticks_path, const std::string& shares_path,
                           const SessionCalendar& calendar, bool drop_session_gap) {
    IngestResult res;
    TickTable ticks = read_tick_csv(ticks_path, calendar);
    const auto shares = read_shares_csv(shares_path);
    for (auto& [id, stock_ticks] : ticks) {
        try {
            const MinuteSeries bars = build_minute_bars(id, stock_ticks, calendar);
            const auto raw = compute_intraday_returns(bars, calendar, !drop_session_gap);
            ReturnSeries series = standardize(id, raw);
            const auto it = shares.find(id);
            if (it == shares.end())
                throw std::runtime_error("stock " + id + ": no tradable_shares entry");
            res.profiles.push_back(compute_profile(bars, it->second, calendar.minutes_per_day()));
            res.returns.emplace(id, std::move(series));
        } catch (const std::exception& e) {
            res.exclusions.push_back({id, "ingest", e.what()});
        }
        stock_ticks.clear();
        stock_ticks.shrink_to_fit();
    }
    return res;
}

StockRegressionSet regress_stock_tails(const std::vector<StockProfile>& profiles,
                                       const std::vector<std::pair<std::string, TailFit>>& tails) {
    StockRegressionSet set;
    for (TailSign sign : {TailSign::positive, TailSign::negative}) {
        const std::string suffix = tail_sign_name(sign);
        std::vector<AttributePoint> by_turnover, by_cap, by_value;
        std::vector<BivariatePoint> bivariate;
        for (const auto& p : profiles) {
            for (const auto& [tid, fit] : tails) {
                if (tid != p.stock_id || fit.sign != sign) continue;
                by_turnover.push_back({p.turnover, fit.alpha});
                by_cap.push_back({p.capitalization, fit.alpha});
                by_value.push_back({p.mean_traded_value, fit.alpha});
                bivariate.push_back({p.turnover, p.capitalization, fit.alpha});
                break;
            }
        }
        try {
            set.regressions.emplace("stocks_turnover_" + suffix, regress_alpha_turnover(by_turnover));
            set.scatter.emplace("stocks_turnover_" + suffix, by_turnover);
            set.regressions.emplace("stocks_capitalization_" + suffix, regress_alpha_cap(by_cap));
            set.scatter.emplace("stocks_capitalization_" + suffix, by_cap);
            set.regressions.emplace("stocks_traded_value_" + suffix,
                                    regress_alpha_traded_value(by_value));
            set.scatter.emplace("stocks_traded_value_" + suffix, by_value);
            RegressionFit biv = regress_alpha_bivariate(bivariate);
            set.reparametrized.emplace("stocks_bivariate_" + suffix,
                                       reparametrize_check(biv, bivariate));
            set.regressions.emplace("stocks_bivariate_" + suffix, std::move(biv));
        } catch (const std::exception& e) {
            set.exclusions.push_back({suffix, "stocks_regression", e.what()});
        }
    }
    return set;
}

PipelineResult compute_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    const SessionCalendar calendar = cfg.calendar_path.empty()
                                         ? SessionCalendar::default_calendar()
                                         : SessionCalendar::from_json_file(cfg.calendar_path);

    PipelineResult res;
    {
        IngestResult ingest = ingest_market(cfg.ticks_path, cfg.shares_path, calendar,
                                            cfg.drop_session_gap);
        res.profiles = std::move(ingest.profiles);
        res.returns = std::move(ingest.returns);
        res.exclusions = std::move(ingest.exclusions);
    }
    if (res.profiles.empty()) throw std::runtime_error("pipeline: no stock survived ingest");

    // Per-stock tail fits.
    uint64_t bootstrap_counter = 0;
    for (const auto& [id, series] : res.returns) {
        for (TailSign sign : {TailSign::positive, TailSign::negative}) {
            try {
                TailFit fit = fit_tail(series.values, sign, cfg.tail);
                if (cfg.gof_bootstrap > 0) {
                    const double p =
                        gof_pvalue_bootstrap(series.values, sign, fit, cfg.gof_bootstrap,
                                             sub_seed(cfg.seed, bootstrap_counter), cfg.tail);
                    fit.flags.push_back("gof_p:" + fmt_double(p));
                }
                res.stock_tails.emplace_back(id, std::move(fit));
            } catch (const std::exception& e) {
                res.exclusions.push_back(
                    {id, std::string("tail_fit_") + tail_sign_name(sign), e.what()});
            }
            ++bootstrap_counter;
        }
    }

    // Per-stock regressions.
    {
        StockRegressionSet set = regress_stock_tails(res.profiles, res.stock_tails);
        res.regressions.merge(set.regressions);
        res.reparametrized.merge(set.reparametrized);
        res.scatter.merge(set.scatter);
        for (auto& e : set.exclusions) res.exclusions.push_back(std::move(e));
    }

    // Cohorts, pooled group fits, grouped regressions.
    for (StockAttribute attr : kAttributes) {
        AttributeResults ar;
        ar.attribute = attr;
        try {
            ar.partition = partition_stocks(res.profiles, attr, cfg.n_groups, cfg.group_stat);
        } catch (const std::exception& e) {
            res.exclusions.push_back({attribute_name(attr), "partition", e.what()});
            continue;
        }

        for (size_t gi = 0; gi < ar.partition.groups.size(); ++gi) {
            const auto& group = ar.partition.groups[gi];
            GroupFitRow row;
            row.index = gi;
            row.attribute_stat = group.attribute_stat;
            row.n_members = group.members.size();
            const auto pooled = pool_returns(group, res.returns);
            row.pooled_size = pooled.size();
            const std::string label = group_label(attr, gi);
            try {
                row.pdf = estimate_pdf(pooled, cfg.binning);
            } catch (const std::exception& e) {
                res.exclusions.push_back({label, "group_pdf", e.what()});
            }
            if (cfg.fit_mode != FitMode::qgaussian) {
                for (TailSign sign : {TailSign::positive, TailSign::negative}) {
                    try {
                        TailFit fit = fit_tail(pooled, sign, cfg.tail);
                        (sign == TailSign::positive ? row.tail_positive : row.tail_negative) =
                            std::move(fit);
                    } catch (const std::exception& e) {
                        res.exclusions.push_back(
                            {label, std::string("group_tail_") + tail_sign_name(sign), e.what()});
                    }
                }
            }
            if (cfg.fit_mode != FitMode::tail && row.pdf) {
                try {
                    row.qgaussian = fit_qgaussian(*row.pdf, cfg.qgaussian);
                } catch (const std::exception& e) {
                    res.exclusions.push_back({label, "group_qgaussian", e.what()});
                }
            }
            ar.groups.push_back(std::move(row));
        }

        struct Series {
            const char* key;
            std::vector<AttributePoint> points;
        };
        Series series[3] = {{"positive", {}}, {"negative", {}}, {"qgaussian", {}}};
        for (const auto& row : ar.groups) {
            if (row.tail_positive)
                series[0].points.push_back({row.attribute_stat, row.tail_positive->alpha});
            if (row.tail_negative)
                series[1].points.push_back({row.attribute_stat, row.tail_negative->alpha});
            if (row.qgaussian)
                series[2].points.push_back({row.attribute_stat, row.qgaussian->alpha});
        }
        for (const auto& s : series) {
            if (s.points.size() < 3) continue;
            const std::string key = "grouped_" + std::string(attribute_name(attr)) + "_" + s.key;
            try {
                RegressionFit fit = attr == StockAttribute::capitalization
                                        ? regress_alpha_cap(s.points)
                                    : attr == StockAttribute::traded_value
                                        ? regress_alpha_traded_value(s.points)
                                        : regress_alpha_turnover(s.points);
                res.scatter.emplace(key, s.points);
                res.regressions.emplace(key, std::move(fit));
            } catch (const std::exception& e) {
                res.exclusions.push_back({key, "grouped_regression", e.what()});
            }
        }
        res.attributes.push_back(std::move(ar));
    }
    return res;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    PipelineResult res = compute_pipeline(cfg);
    Writer write{&res.files_written};
    ensure_dir(cfg.out_dir);
    ensure_dir(cfg.out_dir + "/returns");
    ensure_dir(cfg.out_dir + "/partitions");
    ensure_dir(cfg.out_dir + "/groups");
    ensure_dir(cfg.out_dir + "/regressions");

    std::string meta = "stock_id,n,raw_mean,raw_sigma\n";
    for (const auto& [id, series] : res.returns) {
        write(cfg.out_dir + "/returns/" + id + ".csv", returns_to_csv(series.values));
        meta += id + "," + std::to_string(series.values.size()) + "," + fmt_double(series.raw_mean) +
                "," + fmt_double(series.raw_sigma) + "\n";
    }
    write(cfg.out_dir + "/returns_meta.csv", meta);
    write(cfg.out_dir + "/profiles.csv", profiles_to_csv(res.profiles));
    write(cfg.out_dir + "/tails.csv", tail_fits_to_csv(res.stock_tails));

    for (const auto& ar : res.attributes) {
        const std::string attr = attribute_name(ar.attribute);
        write(cfg.out_dir + "/partitions/partition_" + attr + ".json",
              partition_to_json(ar.partition));

        std::string csv =
            "group,attribute_stat,n_members,pooled_size,"
            "alpha_pos,r_min_pos,n_tail_pos,ks_pos,stderr_pos,flags_pos,"
            "alpha_neg,r_min_neg,n_tail_neg,ks_neg,stderr_neg,flags_neg,"
            "qg_alpha,qg_L,qg_objective,qg_converged,qg_bins,qg_warnings\n";
        auto tail_cols = [](const std::optional<TailFit>& f) {
            if (!f) return std::string(",,,,,,");
            return "," + fmt_double(f->alpha) + "," + fmt_double(f->r_min) + "," +
                   std::to_string(f->n_tail) + "," + fmt_double(f->ks) + "," +
                   fmt_double(f->std_error) + "," + joined_flags(f->flags);
        };
        for (const auto& row : ar.groups) {
            csv += std::to_string(row.index) + "," + fmt_double(row.attribute_stat) + "," +
                   std::to_string(row.n_members) + "," + std::to_string(row.pooled_size);
            csv += tail_cols(row.tail_positive);
            csv += tail_cols(row.tail_negative);
            if (row.qgaussian) {
                const auto& q = *row.qgaussian;
                csv += "," + fmt_double(q.alpha) + "," + fmt_double(q.scale) + "," +
                       fmt_double(q.objective) + "," + (q.converged ? "true" : "false") + "," +
                       std::to_string(q.n_bins_used) + "," +
                       (q.near_gaussian ? "near_gaussian_alpha_unstable" : "");
            } else {
                csv += ",,,,,,";
            }
            csv += '\n';
        }
        write(cfg.out_dir + "/groups/groups_" + attr + ".csv", csv);

        if (cfg.fit_mode != FitMode::tail) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& row : ar.groups) {
                if (!row.qgaussian) continue;
                auto doc = nlohmann::ordered_json::parse(qgaussian_fit_to_json(*row.qgaussian));
                doc["group"] = row.index;
                doc["attribute_stat"] = row.attribute_stat;
                arr.push_back(std::move(doc));
            }
            write(cfg.out_dir + "/groups/qgaussian_" + attr + ".json", arr.dump(2) + "\n");
        }
    }

    for (const auto& [key, fit] : res.regressions) {
        const auto rp = res.reparametrized.find(key);
        const auto sc = res.scatter.find(key);
        write(cfg.out_dir + "/regressions/" + key + ".json",
              regression_report_json(fit, rp != res.reparametrized.end() ? &rp->second : nullptr,
                                     sc != res.scatter.end() ? &sc->second : nullptr));
    }
    for (TailSign sign : {TailSign::positive, TailSign::negative}) {
        const std::string suffix = tail_sign_name(sign);
        std::vector<RegressionFit> fits;
        for (const char* base : {"stocks_turnover_", "stocks_capitalization_", "stocks_bivariate_"}) {
            const auto it = res.regressions.find(base + suffix);
            if (it != res.regressions.end()) fits.push_back(it->second);
        }
        if (fits.size() == 3) {
            const auto table = model_comparison(fits);
            write(cfg.out_dir + "/regressions/model_comparison_" + suffix + ".csv", table.csv);
            write(cfg.out_dir + "/regressions/model_comparison_" + suffix + ".txt", table.text);
        }
    }

    const auto plot_files = emit_plot_data(res, cfg.out_dir + "/plotdata");
    res.files_written.insert(res.files_written.end(), plot_files.begin(), plot_files.end());

    if (cfg.emit_ccdf) {
        for (const auto& ar : res.attributes) {
            const std::string attr = attribute_name(ar.attribute);
            for (size_t gi = 0; gi < ar.partition.groups.size(); ++gi) {
                const auto pooled = pool_returns(ar.partition.groups[gi], res.returns);
                for (TailSign sign : {TailSign::positive, TailSign::negative}) {
                    char name[64];
                    std::snprintf(name, sizeof name, "/plotdata/ccdf_%s_g%02zu_%s.csv",
                                  attr.c_str(), gi, tail_sign_name(sign));
                    try {
                        write(cfg.out_dir + name, ccdf_to_csv(ccdf(pooled, sign)));
                    } catch (const std::exception& e) {
                        res.exclusions.push_back({group_label(ar.attribute, gi),
                                                  std::string("ccdf_") + tail_sign_name(sign),
                                                  e.what()});
                    }
                }
            }
        }
    }

    std::string excl = "entity,stage,reason\n";
    for (const auto& e : res.exclusions) {
        std::string reason = e.reason;
        for (auto& ch : reason)
            if (ch == ',' || ch == '\n') ch = ';';
        excl += e.entity + "," + e.stage + "," + reason + "\n";
    }
    write(cfg.out_dir + "/exclusions.csv", excl);

    nlohmann::ordered_json manifest;
    manifest["config"] = {{"ticks", cfg.ticks_path},
                          {"shares", cfg.shares_path},
                          {"calendar", cfg.calendar_path.empty() ? "default" : cfg.calendar_path},
                          {"n_groups", cfg.n_groups},
                          {"group_stat", cfg.group_stat == GroupStat::mean ? "mean" : "median"},
                          {"fit_mode", cfg.fit_mode == FitMode::tail        ? "tail"
                                       : cfg.fit_mode == FitMode::qgaussian ? "qgaussian"
                                                                            : "both"},
                          {"min_tail", cfg.tail.min_tail},
                          {"max_candidates", cfg.tail.max_candidates},
                          {"discrete_shift", cfg.tail.discrete_shift},
                          {"gof_bootstrap", cfg.gof_bootstrap},
                          {"drop_session_gap", cfg.drop_session_gap},
                          {"seed", cfg.seed}};
    manifest["n_stocks_ingested"] = res.returns.size();
    manifest["n_stock_tail_fits"] = res.stock_tails.size();
    manifest["n_exclusions"] = res.exclusions.size();
    std::vector<std::string> files = res.files_written;
    files.push_back(cfg.out_dir + "/manifest.json");
    std::sort(files.begin(), files.end());
    manifest["files"] = files;
    write(cfg.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return res;
}

std::vector<std::string> emit_plot_data(const PipelineResult& res, const std::string& out_dir) {
    bool any_fit = !res.stock_tails.empty();
    for (const auto& ar : res.attributes)
        for (const auto& row : ar.groups)
            any_fit = any_fit || row.tail_positive || row.tail_negative || row.qgaussian;
    if (!any_fit) throw std::runtime_error("emit_plot_data: no fits to emit");

    std::vector<std::string> files;
    Writer write{&files};
    ensure_dir(out_dir);

    auto line_y = [](const RegressionFit& fit, double x) {
        return fit.coefficients[0].estimate + fit.coefficients[1].estimate * std::log(x);
    };

    for (const auto& ar : res.attributes) {
        const std::string attr = attribute_name(ar.attribute);
        for (const auto& row : ar.groups) {
            if (!row.pdf) continue;
            char name[64];
            std::snprintf(name, sizeof name, "/pdf_%s_g%02zu.csv", attr.c_str(), row.index);
            write(out_dir + name, pdf_to_csv(*row.pdf));
        }

        std::string scatter = "series,x,y\n";
        for (const auto& row : ar.groups) {
            if (row.tail_positive)
                scatter += "positive," + fmt_double(row.attribute_stat) + "," +
                           fmt_double(row.tail_positive->alpha) + "\n";
            if (row.tail_negative)
                scatter += "negative," + fmt_double(row.attribute_stat) + "," +
                           fmt_double(row.tail_negative->alpha) + "\n";
            if (row.qgaussian)
                scatter += "qgaussian," + fmt_double(row.attribute_stat) + "," +
                           fmt_double(row.qgaussian->alpha) + "\n";
        }
        for (const char* series : {"positive", "negative", "qgaussian"}) {
            const auto it = res.regressions.find("grouped_" + attr + "_" + series);
            if (it == res.regressions.end()) continue;
            for (const auto& row : ar.groups)
                scatter += std::string("fit_") + series + "," + fmt_double(row.attribute_stat) +
                           "," + fmt_double(line_y(it->second, row.attribute_stat)) + "\n";
        }
        write(out_dir + "/group_scatter_" + attr + ".csv", scatter);
    }

    for (const auto& [key, points] : res.scatter) {
        if (key.rfind("stocks_", 0) != 0 || points.empty()) continue;
        const auto fit_it = res.regressions.find(key);
        if (fit_it == res.regressions.end()) continue;
        std::vector<double> xs;
        for (const auto& p : points) xs.push_back(p.attribute);
        std::sort(xs.begin(), xs.end());
        std::string csv = "series,x,y\n";
        for (const auto& p : points)
            csv += "point," + fmt_double(p.attribute) + "," + fmt_double(p.alpha) + "\n";
        for (double x : {xs.front(), xs.back()})
            csv += "fit," + fmt_double(x) + "," + fmt_double(line_y(fit_it->second, x)) + "\n";
        for (double x : {xs.front(), xs.back()})
            csv += "reference_alpha2," + fmt_double(x) + ",2\n";
        write(out_dir + "/stock_scatter_" + key.substr(7) + ".csv", csv);
    }
    return files;
}

}  // namespace tailkit
