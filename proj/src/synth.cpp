#include "tailkit/synth.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tailkit/io.hpp"
#include "tailkit/rng.hpp"
#include "tailkit/time.hpp"

#include <json.hpp>

namespace tailkit {

std::vector<double> gen_pareto(double alpha, double r_min, size_t n, uint64_t seed) {
    if (!(alpha > 0.0) || !(r_min > 0.0) || n < 1)
        throw std::invalid_argument("gen_pareto: need alpha > 0, r_min > 0, n >= 1");
    Rng rng(seed);
    std::vector<double> sample(n);
    for (auto& r : sample) r = r_min * std::pow(1.0 - rng.uniform01(), -1.0 / alpha);
    return sample;
}

std::vector<double> gen_student_t(double df, size_t n, uint64_t seed) {
    if (!(df > 0.0)) throw std::invalid_argument("gen_student_t: df must be positive");
    Rng rng(seed);
    std::vector<double> sample(n);
    for (auto& r : sample) r = rng.student_t(df);
    return sample;
}

namespace {

std::string stock_label(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "S%04d", index);
    return buf;
}

void draw_stock_returns(PlantedStock& stock, const SyntheticMarketConfig& cfg, Rng& rng) {
    stock.raw_returns.resize(cfg.returns_per_stock);
    for (auto& r : stock.raw_returns) {
        const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        double magnitude;
        if (rng.uniform01() < cfg.tail_fraction)
            magnitude = cfg.body_cutoff * std::pow(1.0 - rng.uniform01(), -1.0 / stock.alpha);
        else
            magnitude = cfg.body_cutoff * rng.uniform01();
        r = sign * magnitude * cfg.return_unit;
    }
}

}  // namespace

SyntheticMarket gen_market_returns(const SyntheticMarketConfig& cfg) {
    if (cfg.n_stocks < 1 || cfg.returns_per_stock < 2)
        throw std::invalid_argument("synthetic market: need stocks and at least 2 returns each");
    if (!(cfg.cap_min > 0.0) || !(cfg.cap_max >= cfg.cap_min) || !(cfg.turnover_min > 0.0) ||
        !(cfg.turnover_max >= cfg.turnover_min))
        throw std::invalid_argument("synthetic market: bad attribute ranges");
    if (!(cfg.tail_fraction > 0.0) || cfg.tail_fraction >= 1.0 || !(cfg.body_cutoff > 0.0))
        throw std::invalid_argument("synthetic market: bad mixture shape");

    SyntheticMarket market;
    market.config = cfg;
    for (int i = 0; i < cfg.n_stocks; ++i) {
        PlantedStock stock;
        stock.stock_id = stock_label(i);
        stock.seed = sub_seed(cfg.master_seed, static_cast<uint64_t>(i));
        Rng rng(stock.seed);
        stock.capitalization =
            std::exp(rng.uniform(std::log(cfg.cap_min), std::log(cfg.cap_max)));
        stock.turnover =
            std::exp(rng.uniform(std::log(cfg.turnover_min), std::log(cfg.turnover_max)));
        stock.mean_traded_value = stock.turnover * stock.capitalization;
        stock.tradable_shares = stock.capitalization / cfg.initial_price;
        stock.alpha = cfg.intercept + cfg.slope_turnover * std::log(stock.turnover) +
                      cfg.slope_cap * std::log(stock.capitalization) +
                      cfg.alpha_noise * rng.normal();
        if (!(stock.alpha > 0.5))
            throw std::runtime_error("synthetic market config rejected: planted alpha for " +
                                     stock.stock_id + " is " + fmt_double(stock.alpha) +
                                     ", must exceed 0.5");
        draw_stock_returns(stock, cfg, rng);
        market.stocks.push_back(std::move(stock));
    }
    return market;
}

SyntheticMarket gen_synthetic_market(const SyntheticMarketConfig& cfg,
                                     const SessionCalendar& calendar, const std::string& out_dir) {
    const auto& bounds = calendar.boundaries_sec();
    const size_t per_day = bounds.size();
    if (per_day < 2) throw std::invalid_argument("synthetic market: calendar too small");

    // Bar construction carries prices forward through any minute without a
    // tick, so a partial final day would come back from ingest padded with
    // flat bars. Round the return count up to whole trading days instead;
    // the ground truth records the padded count.
    SyntheticMarketConfig padded = cfg;
    const size_t returns_per_day = per_day - 1;
    padded.returns_per_stock =
        (cfg.returns_per_stock + returns_per_day - 1) / returns_per_day * returns_per_day;

    SyntheticMarket market = gen_market_returns(padded);
    ensure_dir(out_dir);

    std::string ticks = "stock_id,timestamp,price,volume\n";
    std::string shares = "stock_id,tradable_shares\n";
    for (const auto& stock : market.stocks) {
        shares += stock.stock_id + "," + fmt_double(stock.tradable_shares) + "\n";

        // Minute closes: one per boundary; each day's first close is free (the
        // overnight step is flat), so a day consumes per_day-1 returns. Tick
        // volumes are scaled so the mean over all session minutes, zero-trade
        // minutes of the final partial day included, hits the planted value.
        const size_t n_ret = stock.raw_returns.size();
        const size_t n_days = (n_ret + per_day - 2) / (per_day - 1);
        const size_t n_ticks = n_ret + n_days;
        const double per_tick_value =
            stock.mean_traded_value * static_cast<double>(per_day * n_days) /
            static_cast<double>(n_ticks);

        double price = cfg.initial_price;
        size_t emitted = 0;
        int32_t day = cfg.start_day;
        while (emitted < n_ret) {
            for (size_t k = 0; k < per_day; ++k) {
                if (k > 0) {
                    if (emitted >= n_ret) break;
                    price *= std::exp(stock.raw_returns[emitted]);
                    ++emitted;
                }
                Timestamp ts;
                ts.sec = int64_t(day) * 86400 + bounds[k];
                ticks += stock.stock_id + "," + format_timestamp(ts) + "," + fmt_double(price) +
                         "," + fmt_double(per_tick_value / price) + "\n";
            }
            ++day;
        }
    }
    atomic_write_file(out_dir + "/ticks.csv", ticks);
    atomic_write_file(out_dir + "/shares.csv", shares);
    atomic_write_file(out_dir + "/ground_truth.json", ground_truth_to_json(market));
    return market;
}

std::string ground_truth_to_json(const SyntheticMarket& market) {
    const auto& cfg = market.config;
    nlohmann::ordered_json doc;
    doc["master_seed"] = cfg.master_seed;
    doc["n_stocks"] = cfg.n_stocks;
    doc["returns_per_stock"] = cfg.returns_per_stock;
    doc["planted"] = {{"intercept", cfg.intercept},
                      {"slope_turnover", cfg.slope_turnover},
                      {"slope_cap", cfg.slope_cap},
                      {"alpha_noise", cfg.alpha_noise}};
    doc["mixture"] = {{"tail_fraction", cfg.tail_fraction},
                      {"body_cutoff", cfg.body_cutoff},
                      {"return_unit", cfg.return_unit}};
    auto& stocks = doc["stocks"] = nlohmann::ordered_json::array();
    for (const auto& s : market.stocks) {
        nlohmann::ordered_json js;
        js["stock_id"] = s.stock_id;
        js["capitalization"] = s.capitalization;
        js["turnover"] = s.turnover;
        js["mean_traded_value"] = s.mean_traded_value;
        js["tradable_shares"] = s.tradable_shares;
        js["alpha"] = s.alpha;
        js["seed"] = s.seed;
        stocks.push_back(std::move(js));
    }
    return doc.dump(2) + "\n";
}

}  // namespace tailkit
