// Calendar timestamps with second resolution. Tick files carry exchange-local
// wall time; no time zone handling is done or wanted.
#pragma once

#include <cstdint>
#include <string>

namespace tailkit {

struct Timestamp {
    // Seconds since 1970-01-01 00:00:00 (proleptic Gregorian, no zone).
    int64_t sec = 0;

    // Day index (days since 1970-01-01) and second within that day.
    int32_t day() const {
        int64_t d = sec >= 0 ? sec / 86400 : (sec - 86399) / 86400;
        return static_cast<int32_t>(d);
    }
    int32_t second_of_day() const { return static_cast<int32_t>(sec - int64_t(day()) * 86400); }

    friend bool operator<(Timestamp a, Timestamp b) { return a.sec < b.sec; }
    friend bool operator<=(Timestamp a, Timestamp b) { return a.sec <= b.sec; }
    friend bool operator==(Timestamp a, Timestamp b) { return a.sec == b.sec; }
};

// Days since epoch for a civil date (Howard Hinnant's algorithm).
int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(int64_t days, int& year, unsigned& month, unsigned& day);

// "YYYY-MM-DD HH:MM:SS" -> Timestamp. Throws std::runtime_error on malformed input.
Timestamp parse_timestamp(const std::string& text);
std::string format_timestamp(Timestamp t);

// "YYYY-MM-DD" <-> day index.
int32_t parse_date(const std::string& text);
std::string format_date(int32_t day_index);

// "HH:MM" -> minute of day in [0, 1440].
int parse_minute_of_day(const std::string& text);
std::string format_minute_of_day(int minute);

}  // namespace tailkit
