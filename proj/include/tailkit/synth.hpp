// Deterministic synthetic-data generators. These double as independent
// oracles for the estimators: the Pareto sampler pins down the tail MLE, the
// Student-t sampler the density fit, and the planted market the end-to-end
// pipeline (ground truth is exported alongside the data).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailkit/calendar.hpp"

namespace tailkit {

// r = r_min * (1 - u)^(-1/alpha), inverse transform from the deterministic
// uniform stream. Byte-identical across runs and platforms for a fixed seed.
std::vector<double> gen_pareto(double alpha, double r_min, size_t n, uint64_t seed);

// Student-t draws via the normal / chi-square ratio. Raw scale: variance is
// df/(df-2) for df > 2; standardize downstream when unit variance is wanted.
std::vector<double> gen_student_t(double df, size_t n, uint64_t seed);

struct SyntheticMarketConfig {
    int n_stocks = 100;
    // Per-stock attributes, drawn log-uniformly.
    double cap_min = 1e8, cap_max = 1e10;             // currency
    double turnover_min = 1e-5, turnover_max = 1e-3;  // 1/minute
    // Planted tail-exponent plane: alpha_i = A + B_vc ln(v/c)_i + B_c ln c_i + eps_i.
    double intercept = -2.2;
    double slope_turnover = -0.1;
    double slope_cap = 0.2;
    double alpha_noise = 0.15;
    size_t returns_per_stock = 10000;
    uint64_t master_seed = 20040105;
    // Return mixture: P(tail) of magnitudes are exact Pareto(alpha_i) beyond
    // body_cutoff, the rest uniform on (0, body_cutoff); signs symmetric.
    double tail_fraction = 0.35;
    double body_cutoff = 1.5;
    double return_unit = 1e-3;  // raw log-return per unit of standardized magnitude
    double initial_price = 10.0;
    int32_t start_day = 12422;  // 2004-01-05
};

struct PlantedStock {
    std::string stock_id;
    double capitalization = 0.0;
    double turnover = 0.0;
    double mean_traded_value = 0.0;
    double tradable_shares = 0.0;
    double alpha = 0.0;  // planted CCDF tail exponent
    uint64_t seed = 0;
    std::vector<double> raw_returns;  // in log-return units, day gaps not marked
};

struct SyntheticMarket {
    SyntheticMarketConfig config;
    std::vector<PlantedStock> stocks;
};

// In-memory generation: attributes, planted exponents, and raw return draws.
// Rejects the config if any planted alpha_i fails to exceed 0.5.
SyntheticMarket gen_market_returns(const SyntheticMarketConfig& config);

// Full market emission: <out_dir>/ticks.csv, shares.csv, ground_truth.json in
// exactly the ingest formats. One trade per session minute reproduces each
// minute close and realizes the planted turnover. returns_per_stock is
// rounded up to whole trading days so the bar builder's carry-forward rule
// cannot pad the series.
SyntheticMarket gen_synthetic_market(const SyntheticMarketConfig& config,
                                     const SessionCalendar& calendar, const std::string& out_dir);

std::string ground_truth_to_json(const SyntheticMarket& market);

}  // namespace tailkit
