// Trading-session calendar. A day is carved into session windows with
// whole-minute boundaries; minute bars close on each boundary inside a window.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailkit {

struct SessionWindow {
    int open_minute = 0;   // minutes after midnight
    int close_minute = 0;  // exclusive of the next window, inclusive of its own close
};

class SessionCalendar {
public:
    // Mainland exchange default: 09:30-11:30 and 13:00-15:00.
    static SessionCalendar default_calendar();

    // JSON file: {"sessions": [{"open": "09:30", "close": "11:30"}, ...],
    //             "days": ["2004-01-05", ...]}   (days optional)
    static SessionCalendar from_json_file(const std::string& path);

    explicit SessionCalendar(std::vector<SessionWindow> windows,
                             std::vector<int32_t> declared_days = {});

    const std::vector<SessionWindow>& windows() const { return windows_; }

    // Session minutes per day == number of bar boundaries per day.
    int minutes_per_day() const { return static_cast<int>(boundaries_sec_.size()); }

    // Bar close boundaries as seconds of day, ascending. Window [open, close]
    // contributes boundaries open+1min .. close.
    const std::vector<int32_t>& boundaries_sec() const { return boundaries_sec_; }

    // Index of the window owning boundary k.
    int window_of_boundary(int k) const { return boundary_window_[static_cast<size_t>(k)]; }

    // True if the boundary is the first one of its window (the bar after a
    // session gap).
    bool boundary_opens_window(int k) const;

    bool in_session(int32_t second_of_day) const;

    // Bucket index for a tick at `second_of_day`, for per-minute traded value.
    // Bucket k covers (b_k - 60, b_k]; the first bucket of each window also
    // absorbs the window-open second. Returns -1 outside all sessions.
    int bucket_of_second(int32_t second_of_day) const;

    // Explicit trading-day list (day indices); empty means "infer from data".
    const std::vector<int32_t>& declared_days() const { return declared_days_; }

private:
    std::vector<SessionWindow> windows_;
    std::vector<int32_t> boundaries_sec_;
    std::vector<int> boundary_window_;
    std::vector<int32_t> declared_days_;
};

}  // namespace tailkit
