// End-to-end orchestration: ingest -> profiles -> per-stock tail fits ->
// cohorts -> pooled group fits -> regressions -> report bundle on disk.
// Identical inputs, config, and seed produce a byte-identical bundle.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailkit/calendar.hpp"
#include "tailkit/cohort.hpp"
#include "tailkit/histogram.hpp"
#include "tailkit/profile.hpp"
#include "tailkit/qgaussian.hpp"
#include "tailkit/regression.hpp"
#include "tailkit/returns.hpp"
#include "tailkit/tail.hpp"

namespace tailkit {

enum class FitMode { tail, qgaussian, both };
FitMode fit_mode_from_name(const std::string& name);

struct PipelineConfig {
    std::string ticks_path;
    std::string shares_path;
    std::string calendar_path;  // empty: default sessions, days inferred
    std::string out_dir;
    int n_groups = 20;
    GroupStat group_stat = GroupStat::mean;
    FitMode fit_mode = FitMode::both;
    TailFitOptions tail;
    QGaussianFitOptions qgaussian;
    BinningConfig binning;
    int gof_bootstrap = 0;  // replicates; 0 disables
    bool drop_session_gap = false;
    bool emit_ccdf = false;  // exact per-group r,ccdf files (can be large)
    uint64_t seed = 1;       // consumed by the bootstrap only
};

// Rejects bad configs (g < 2, missing inputs) before any work happens.
void validate_config(const PipelineConfig& config);

struct GroupFitRow {
    size_t index = 0;
    double attribute_stat = 0.0;
    size_t n_members = 0;
    size_t pooled_size = 0;
    std::optional<EmpiricalPdf> pdf;
    std::optional<TailFit> tail_positive;
    std::optional<TailFit> tail_negative;
    std::optional<QGaussianFit> qgaussian;
};

struct AttributeResults {
    StockAttribute attribute = StockAttribute::turnover;
    CohortPartition partition;
    std::vector<GroupFitRow> groups;
};

struct Exclusion {
    std::string entity;  // stock id or group label
    std::string stage;
    std::string reason;
};

struct PipelineResult {
    std::vector<StockProfile> profiles;
    std::map<std::string, ReturnSeries> returns;
    std::vector<std::pair<std::string, TailFit>> stock_tails;
    std::vector<AttributeResults> attributes;  // turnover, capitalization, traded_value
    // Keyed by report name, e.g. "stocks_turnover_positive",
    // "grouped_capitalization_qgaussian", "stocks_bivariate_negative".
    std::map<std::string, RegressionFit> regressions;
    std::map<std::string, ReparametrizedCoefficients> reparametrized;
    // Scatter points behind each regression key (raw attribute, alpha).
    std::map<std::string, std::vector<AttributePoint>> scatter;
    std::vector<Exclusion> exclusions;
    std::vector<std::string> files_written;
};

struct IngestResult {
    std::vector<StockProfile> profiles;
    std::map<std::string, ReturnSeries> returns;
    std::vector<Exclusion> exclusions;
};

// Parse + bars + returns + standardization + profiles. Stocks that fail any
// step land in exclusions with the stage and reason; they never abort the run.
IngestResult ingest_market(const std::string& ticks_path, const std::string& shares_path,
                           const SessionCalendar& calendar, bool drop_session_gap);

struct StockRegressionSet {
    std::map<std::string, RegressionFit> regressions;
    std::map<std::string, ReparametrizedCoefficients> reparametrized;
    std::map<std::string, std::vector<AttributePoint>> scatter;
    std::vector<Exclusion> exclusions;
};

// The four per-stock models per tail sign, plus the reparametrization check
// on the bivariate fit.
StockRegressionSet regress_stock_tails(const std::vector<StockProfile>& profiles,
                                       const std::vector<std::pair<std::string, TailFit>>& tails);

// All stages in memory; writes nothing.
PipelineResult compute_pipeline(const PipelineConfig& config);

// compute_pipeline plus the full report bundle under config.out_dir.
PipelineResult run_pipeline(const PipelineConfig& config);

// One CSV per plot: per-group PDFs, group alpha-vs-attribute scatters with
// sampled regression lines, per-stock scatters with the fitted line and the
// alpha = 2 reference. Throws if there is nothing to emit.
std::vector<std::string> emit_plot_data(const PipelineResult& result, const std::string& out_dir);

// Readers for the bundle's intermediate formats (used by the CLI stages).
std::vector<double> returns_from_csv_file(const std::string& path);
std::string returns_to_csv(const std::vector<double>& values);
std::vector<std::pair<std::string, TailFit>> tail_fits_from_csv_file(const std::string& path);
CohortPartition partition_from_json_file(const std::string& path);
std::string qgaussian_fit_to_json(const QGaussianFit& fit);

// Full regression report: the fit, the rewritten-coefficient block when one
// applies, and, when studentized-residual flags fired and the points are at
// hand, the same model refit without the flagged rows (reported, not
// substituted).
std::string regression_report_json(const RegressionFit& fit,
                                   const ReparametrizedCoefficients* reparametrized,
                                   const std::vector<AttributePoint>* points);

}  // namespace tailkit
