#include "tailkit/time.hpp"

#include <cstdio>
#include <stdexcept>

namespace tailkit {

int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0, 146096]
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

Timestamp parse_timestamp(const std::string& text) {
    int y, mo, d, h, mi, s;
    char tail;
    if (std::sscanf(text.c_str(), "%d-%d-%d %d:%d:%d%c", &y, &mo, &d, &h, &mi, &s, &tail) != 6)
        throw std::runtime_error("malformed timestamp '" + text + "' (want YYYY-MM-DD HH:MM:SS)");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60)
        throw std::runtime_error("timestamp field out of range in '" + text + "'");
    Timestamp t;
    t.sec = days_from_civil(y, unsigned(mo), unsigned(d)) * 86400 + h * 3600 + mi * 60 + s;
    return t;
}

std::string format_timestamp(Timestamp t) {
    int y;
    unsigned mo, d;
    civil_from_days(t.day(), y, mo, d);
    int32_t sod = t.second_of_day();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", y, mo, d, sod / 3600,
                  (sod / 60) % 60, sod % 60);
    return buf;
}

int32_t parse_date(const std::string& text) {
    int y, mo, d;
    char tail;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &mo, &d, &tail) != 3 || mo < 1 || mo > 12 ||
        d < 1 || d > 31)
        throw std::runtime_error("malformed date '" + text + "' (want YYYY-MM-DD)");
    return static_cast<int32_t>(days_from_civil(y, unsigned(mo), unsigned(d)));
}

std::string format_date(int32_t day_index) {
    int y;
    unsigned mo, d;
    civil_from_days(day_index, y, mo, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, mo, d);
    return buf;
}

int parse_minute_of_day(const std::string& text) {
    int h, mi;
    char tail;
    if (std::sscanf(text.c_str(), "%d:%d%c", &h, &mi, &tail) != 2 || h < 0 || h > 24 || mi < 0 ||
        mi > 59 || h * 60 + mi > 1440)
        throw std::runtime_error("malformed time of day '" + text + "' (want HH:MM)");
    return h * 60 + mi;
}

std::string format_minute_of_day(int minute) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d", minute / 60, minute % 60);
    return buf;
}

}  // namespace tailkit
