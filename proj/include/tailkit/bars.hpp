// One-minute bar construction: last tick at or before each boundary closes the
// bar; bars with no new tick carry the previous price forward within the day.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "tailkit/calendar.hpp"
#include "tailkit/ticks.hpp"

namespace tailkit {

struct DayBars {
    int32_t day = 0;         // day index (days since epoch)
    int first_boundary = 0;  // calendar boundary index of closes[0]; boundaries
                             // before the day's first tick are dropped
    std::vector<double> closes;
    // Traded value per session minute over the full grid (size ==
    // calendar.minutes_per_day()), including minutes before the first tick.
    std::vector<double> traded_value;
};

struct MinuteSeries {
    std::string stock_id;
    std::vector<DayBars> days;  // ascending by day

    size_t total_minutes() const;
};

// Eq-style total traded value of a set of ticks: sum of volume * price.
double minute_traded_value(std::span<const TradeTick> ticks);

// `ticks` must be sorted by timestamp (rejected otherwise, naming the index).
// Every tick must fall inside a session window. A declared calendar day with
// zero ticks is skipped with a warning on stderr.
MinuteSeries build_minute_bars(const std::string& stock_id, const std::vector<TradeTick>& ticks,
                               const SessionCalendar& calendar);

}  // namespace tailkit
