#include "tailkit/returns.hpp"

#include <cmath>
#include <stdexcept>

namespace tailkit {

std::vector<double> compute_intraday_returns(const MinuteSeries& bars,
                                             const SessionCalendar& calendar,
                                             bool include_session_gap) {
    if (bars.days.empty()) throw std::runtime_error("stock " + bars.stock_id + ": empty bar series");
    std::vector<double> returns;
    bool any_pair = false;
    for (const auto& day : bars.days) {
        for (size_t j = 1; j < day.closes.size(); ++j) {
            any_pair = true;
            const int k = day.first_boundary + static_cast<int>(j);
            if (!include_session_gap && calendar.boundary_opens_window(k)) continue;
            returns.push_back(std::log(day.closes[j]) - std::log(day.closes[j - 1]));
        }
    }
    if (!any_pair)
        throw std::runtime_error("stock " + bars.stock_id +
                                 ": no day has two consecutive minutes, cannot form returns");
    return returns;
}

ReturnSeries standardize(const std::string& stock_id, const std::vector<double>& raw) {
    if (raw.size() < 2)
        throw std::runtime_error("stock " + stock_id + ": need at least 2 returns to standardize");
    double mean = 0.0;
    for (double r : raw) mean += r;
    mean /= static_cast<double>(raw.size());
    double var = 0.0;
    for (double r : raw) var += (r - mean) * (r - mean);
    var /= static_cast<double>(raw.size());
    if (!(var > 0.0)) throw std::runtime_error("stock " + stock_id + ": degenerate series");
    const double sigma = std::sqrt(var);

    ReturnSeries out;
    out.stock_id = stock_id;
    out.raw_mean = mean;
    out.raw_sigma = sigma;
    out.values.reserve(raw.size());
    for (double r : raw) out.values.push_back((r - mean) / sigma);
    return out;
}

}  // namespace tailkit
