#include "tailkit/calendar.hpp"

#include <algorithm>
#include <stdexcept>

#include "tailkit/io.hpp"
#include "tailkit/time.hpp"

#include <json.hpp>

namespace tailkit {

SessionCalendar SessionCalendar::default_calendar() {
    return SessionCalendar({{9 * 60 + 30, 11 * 60 + 30}, {13 * 60, 15 * 60}});
}

SessionCalendar::SessionCalendar(std::vector<SessionWindow> windows,
                                 std::vector<int32_t> declared_days)
    : windows_(std::move(windows)), declared_days_(std::move(declared_days)) {
    if (windows_.empty()) throw std::invalid_argument("calendar needs at least one session window");
    int prev_close = -1;
    for (const auto& w : windows_) {
        if (w.open_minute < 0 || w.close_minute > 1440 || w.open_minute >= w.close_minute)
            throw std::invalid_argument("session window out of range or empty");
        if (w.open_minute <= prev_close)
            throw std::invalid_argument("session windows must be disjoint and ordered");
        prev_close = w.close_minute;
    }
    for (size_t wi = 0; wi < windows_.size(); ++wi) {
        for (int m = windows_[wi].open_minute + 1; m <= windows_[wi].close_minute; ++m) {
            boundaries_sec_.push_back(m * 60);
            boundary_window_.push_back(static_cast<int>(wi));
        }
    }
    if (!std::is_sorted(declared_days_.begin(), declared_days_.end()))
        throw std::invalid_argument("declared trading days must be ordered");
}

bool SessionCalendar::boundary_opens_window(int k) const {
    return k == 0 || boundary_window_[size_t(k)] != boundary_window_[size_t(k) - 1];
}

bool SessionCalendar::in_session(int32_t sod) const {
    for (const auto& w : windows_)
        if (sod >= w.open_minute * 60 && sod <= w.close_minute * 60) return true;
    return false;
}

int SessionCalendar::bucket_of_second(int32_t sod) const {
    int base = 0;
    for (const auto& w : windows_) {
        const int32_t open_s = w.open_minute * 60;
        const int32_t close_s = w.close_minute * 60;
        if (sod >= open_s && sod <= close_s) {
            int k = sod <= open_s + 60 ? 1 : (sod - open_s + 59) / 60;
            return base + k - 1;
        }
        base += w.close_minute - w.open_minute;
    }
    return -1;
}

SessionCalendar SessionCalendar::from_json_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("calendar " + path + ": " + e.what());
    }
    std::vector<SessionWindow> windows;
    for (const auto& s : doc.at("sessions")) {
        windows.push_back({parse_minute_of_day(s.at("open").get<std::string>()),
                           parse_minute_of_day(s.at("close").get<std::string>())});
    }
    std::vector<int32_t> days;
    if (doc.contains("days"))
        for (const auto& d : doc.at("days")) days.push_back(parse_date(d.get<std::string>()));
    return SessionCalendar(std::move(windows), std::move(days));
}

}  // namespace tailkit
