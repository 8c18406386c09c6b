// Per-stock attributes: capitalization, mean minute traded value, turnover.
#pragma once

#include <string>
#include <vector>

#include "tailkit/bars.hpp"

namespace tailkit {

struct StockProfile {
    std::string stock_id;
    double capitalization = 0.0;     // tradable_shares * first recorded minute close
    double mean_traded_value = 0.0;  // currency per minute, zero-trade minutes included
    double turnover = 0.0;           // mean_traded_value / capitalization, 1/minute
    double tradable_shares = 0.0;
};

// `minutes_per_day` must match the calendar used to build the bars; the mean
// traded value averages over every session minute of every day in the record.
StockProfile compute_profile(const MinuteSeries& bars, double tradable_shares,
                             int minutes_per_day);

// profiles CSV: `stock_id,c,mean_v,turnover`
std::string profiles_to_csv(const std::vector<StockProfile>& profiles);
std::vector<StockProfile> profiles_from_csv_file(const std::string& path);

}  // namespace tailkit
