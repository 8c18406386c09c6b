// Raw trade records and the CSV readers for tick and shares files.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tailkit/calendar.hpp"
#include "tailkit/time.hpp"

namespace tailkit {

struct TradeTick {
    std::string stock_id;
    Timestamp ts;
    double price = 0.0;   // currency per share, > 0
    double volume = 0.0;  // shares, >= 0
};

// Ticks grouped per stock, each group in file order. Keys are sorted, which
// fixes the processing order for the whole pipeline.
using TickTable = std::map<std::string, std::vector<TradeTick>>;

// CSV with header `stock_id,timestamp,price,volume`. Validates field values,
// session membership, and per-stock timestamp ordering; errors carry the
// 1-based data-record index.
TickTable read_tick_csv(const std::string& path, const SessionCalendar& calendar);

// CSV with header `stock_id,tradable_shares`.
std::map<std::string, double> read_shares_csv(const std::string& path);

}  // namespace tailkit
