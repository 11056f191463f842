/// Calendar and epoch conversions: Unix <-> Julian Date, GPS <-> UTC,
/// TLE epoch decoding.
#pragma once

#include <cstdint>
#include <string>

namespace starident::timeutil {

/// Days from civil date to the Unix epoch day count (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);

/// Unix seconds of UTC midnight for a civil date.
double unix_from_civil(int year, int month, int day);

/// Julian date from Unix seconds (UTC treated as UT1).
inline double julian_date(double unix_seconds) { return unix_seconds / 86400.0 + 2440587.5; }

/// Greenwich mean sidereal time in radians at the given Julian date, in [0, 2*pi).
double gmst_rad(double jd_ut1);

/// GPS -> Unix epoch conversion using the bundled leap-second table.
/// `gps_seconds` counts from 1980-01-06T00:00:00 UTC without leap adjustment.
double unix_from_gps(double gps_seconds);
double gps_from_unix(double unix_seconds);

/// Decode a TLE epoch field (two-digit year, fractional day of year) to Unix seconds.
double unix_from_tle_epoch(int two_digit_year, double day_of_year);

/// "HH:MM:SS.mmm" of the UTC day, for log/report text.
std::string format_utc_hms(double unix_seconds);

}  // namespace starident::timeutil
