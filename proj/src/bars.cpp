#include "tailkit/bars.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

namespace tailkit {

size_t MinuteSeries::total_minutes() const {
    size_t n = 0;
    for (const auto& d : days) n += d.closes.size();
    return n;
}

double minute_traded_value(std::span<const TradeTick> ticks) {
    double v = 0.0;
    for (const auto& t : ticks) v += t.volume * t.price;
    return v;
}

MinuteSeries build_minute_bars(const std::string& stock_id, const std::vector<TradeTick>& ticks,
                               const SessionCalendar& calendar) {
    if (ticks.empty()) throw std::runtime_error("stock " + stock_id + ": no ticks");
    for (size_t i = 1; i < ticks.size(); ++i)
        if (ticks[i].ts < ticks[i - 1].ts)
            throw std::runtime_error("stock " + stock_id + ": ticks not sorted by timestamp at index " +
                                     std::to_string(i));

    const auto& bounds = calendar.boundaries_sec();
    const int nb = calendar.minutes_per_day();

    MinuteSeries series;
    series.stock_id = stock_id;

    size_t i = 0;
    std::set<int32_t> seen_days;
    while (i < ticks.size()) {
        const int32_t day = ticks[i].ts.day();
        seen_days.insert(day);
        size_t j = i;
        while (j < ticks.size() && ticks[j].ts.day() == day) ++j;

        DayBars bars;
        bars.day = day;
        bars.traded_value.assign(static_cast<size_t>(nb), 0.0);

        double last_price = 0.0;
        bool have_price = false;
        int first_boundary = -1;
        size_t t = i;
        auto consume = [&](size_t idx) {
            const int bucket = calendar.bucket_of_second(ticks[idx].ts.second_of_day());
            if (bucket < 0)
                throw std::runtime_error("stock " + stock_id + ": tick at index " +
                                         std::to_string(idx) + " falls outside every session window");
            bars.traded_value[size_t(bucket)] += ticks[idx].volume * ticks[idx].price;
            last_price = ticks[idx].price;
            have_price = true;
        };
        for (int k = 0; k < nb; ++k) {
            while (t < j && ticks[t].ts.second_of_day() <= bounds[size_t(k)]) consume(t++);
            if (!have_price) continue;  // minutes before the first tick are dropped
            if (first_boundary < 0) first_boundary = k;
            bars.closes.push_back(last_price);
        }
        // Anything left is past the session close; reject it the same way.
        if (t < j) consume(t);
        bars.first_boundary = first_boundary < 0 ? 0 : first_boundary;
        if (!bars.closes.empty()) series.days.push_back(std::move(bars));
        i = j;
    }

    for (int32_t day : calendar.declared_days()) {
        if (!seen_days.count(day))
            std::fprintf(stderr, "warning: stock %s has no ticks on declared day %s; day skipped\n",
                         stock_id.c_str(), format_date(day).c_str());
    }
    return series;
}

}  // namespace tailkit
