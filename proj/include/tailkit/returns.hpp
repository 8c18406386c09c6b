// Intraday log returns and their standardization to zero mean, unit variance.
#pragma once

#include <string>
#include <vector>

#include "tailkit/bars.hpp"

namespace tailkit {

struct ReturnSeries {
    std::string stock_id;
    std::vector<double> values;  // standardized returns, day boundaries never spanned
    double raw_mean = 0.0;
    double raw_sigma = 1.0;  // population standard deviation of the raw returns
};

// r(t) = ln S(t) - ln S(t - 1min) over consecutive minutes of one trading day.
// The first bar of each day yields no return (overnight excluded). The return
// across an intraday session gap (lunch) is kept unless told otherwise.
std::vector<double> compute_intraday_returns(const MinuteSeries& bars,
                                             const SessionCalendar& calendar,
                                             bool include_session_gap = true);

// (r - mean) / sigma with the population (1/N) standard deviation, so the
// result has sample mean 0 and sample variance exactly 1.
ReturnSeries standardize(const std::string& stock_id, const std::vector<double>& raw_returns);

}  // namespace tailkit
