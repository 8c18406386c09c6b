#include "tailkit/ticks.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "tailkit/io.hpp"

namespace tailkit {

namespace {

double parse_positive_real(const std::string& field, const char* what, size_t record) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw std::runtime_error(std::string("record ") + std::to_string(record) +
                                 ": unparseable " + what + " '" + field + "'");
    return v;
}

}  // namespace

TickTable read_tick_csv(const std::string& path, const SessionCalendar& calendar) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tick file " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("tick file " + path + " is empty");
    if (split_csv_line(line) != std::vector<std::string>{"stock_id", "timestamp", "price", "volume"})
        throw std::runtime_error("tick file " + path +
                                 ": expected header stock_id,timestamp,price,volume");

    TickTable table;
    std::vector<TradeTick>* current = nullptr;
    std::string current_id;
    size_t record = 0;
    while (std::getline(in, line)) {
        ++record;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw std::runtime_error("record " + std::to_string(record) + ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        TradeTick tick;
        tick.stock_id = fields[0];
        tick.ts = parse_timestamp(fields[1]);
        tick.price = parse_positive_real(fields[2], "price", record);
        tick.volume = parse_positive_real(fields[3], "volume", record);
        if (!(tick.price > 0.0))
            throw std::runtime_error("record " + std::to_string(record) + ": price must be > 0");
        if (tick.volume < 0.0)
            throw std::runtime_error("record " + std::to_string(record) + ": volume must be >= 0");
        if (!calendar.in_session(tick.ts.second_of_day()))
            throw std::runtime_error("record " + std::to_string(record) + ": timestamp " + fields[1] +
                                     " falls outside every session window");
        if (tick.stock_id != current_id || current == nullptr) {
            current_id = tick.stock_id;
            current = &table[current_id];
        }
        if (!current->empty() && tick.ts < current->back().ts)
            throw std::runtime_error("record " + std::to_string(record) + ": ticks for stock " +
                                     current_id + " are not sorted by timestamp");
        current->push_back(std::move(tick));
    }
    return table;
}

std::map<std::string, double> read_shares_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open shares file " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("shares file " + path + " is empty");
    if (split_csv_line(line) != std::vector<std::string>{"stock_id", "tradable_shares"})
        throw std::runtime_error("shares file " + path + ": expected header stock_id,tradable_shares");
    std::map<std::string, double> shares;
    size_t record = 0;
    while (std::getline(in, line)) {
        ++record;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error("shares record " + std::to_string(record) + ": expected 2 fields");
        const double s = parse_positive_real(fields[1], "tradable_shares", record);
        if (!(s > 0.0))
            throw std::runtime_error("shares record " + std::to_string(record) +
                                     ": tradable_shares must be > 0");
        shares[fields[0]] = s;
    }
    return shares;
}

}  // namespace tailkit
