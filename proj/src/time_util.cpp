#include "starident/time_util.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace starident::timeutil {

namespace {

constexpr double kGpsEpochUnix = 315964800.0;  // 1980-01-06T00:00:00Z

struct LeapEntry {
    double unix_effective;  // UTC instant the offset became effective
    int gps_minus_utc;
};

// GPS-UTC offset history since the GPS epoch.
constexpr std::array<LeapEntry, 19> kLeapTable = {{
    {315964800.0, 0},    // 1980-01-06
    {362793600.0, 1},    // 1981-07-01
    {394329600.0, 2},    // 1982-07-01
    {425865600.0, 3},    // 1983-07-01
    {489024000.0, 4},    // 1985-07-01
    {567993600.0, 5},    // 1988-01-01
    {631152000.0, 6},    // 1990-01-01
    {662688000.0, 7},    // 1991-01-01
    {709948800.0, 8},    // 1992-07-01
    {741484800.0, 9},    // 1993-07-01
    {773020800.0, 10},   // 1994-07-01
    {820454400.0, 11},   // 1996-01-01
    {867715200.0, 12},   // 1997-07-01
    {915148800.0, 13},   // 1999-01-01
    {1136073600.0, 14},  // 2006-01-01
    {1230768000.0, 15},  // 2009-01-01
    {1341100800.0, 16},  // 2012-07-01
    {1435708800.0, 17},  // 2015-07-01
    {1483228800.0, 18},  // 2017-01-01
}};

int offset_at_unix(double unix_seconds) {
    int offset = 0;
    for (const auto& e : kLeapTable) {
        if (unix_seconds >= e.unix_effective) offset = e.gps_minus_utc;
    }
    return offset;
}

}  // namespace

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

double unix_from_civil(int year, int month, int day) {
    return static_cast<double>(days_from_civil(year, month, day)) * 86400.0;
}

double gmst_rad(double jd_ut1) {
    const double two_pi = 2.0 * M_PI;
    const double tut1 = (jd_ut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                  (876600.0 * 3600.0 + 8640184.812866) * tut1 + 67310.54841;
    temp = std::fmod(temp * (M_PI / 180.0) / 240.0, two_pi);
    if (temp < 0.0) temp += two_pi;
    return temp;
}

double unix_from_gps(double gps_seconds) {
    const double naive = kGpsEpochUnix + gps_seconds;
    // Two rounds make the lookup self-consistent across entry boundaries.
    double unix = naive - offset_at_unix(naive);
    unix = naive - offset_at_unix(unix);
    return unix;
}

double gps_from_unix(double unix_seconds) {
    return unix_seconds - kGpsEpochUnix + offset_at_unix(unix_seconds);
}

double unix_from_tle_epoch(int two_digit_year, double day_of_year) {
    const int year = two_digit_year < 57 ? 2000 + two_digit_year : 1900 + two_digit_year;
    return unix_from_civil(year, 1, 1) + (day_of_year - 1.0) * 86400.0;
}

std::string format_utc_hms(double unix_seconds) {
    double day_sec = std::fmod(unix_seconds, 86400.0);
    if (day_sec < 0) day_sec += 86400.0;
    const int h = static_cast<int>(day_sec / 3600.0);
    const int m = static_cast<int>(std::fmod(day_sec, 3600.0) / 60.0);
    const double s = std::fmod(day_sec, 60.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%06.3f", h, m, s);
    return buf;
}

}  // namespace starident::timeutil
