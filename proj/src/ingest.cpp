#include "starident/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "starident/csv.hpp"
#include "starident/sgp4.hpp"
#include "starident/time_util.hpp"

namespace starident::ingest {

namespace {

constexpr double kQuaternionNormTolerance = 1e-3;

void note_malformed(ParseStats& stats, size_t line_number) {
    ++stats.malformed;
    if (stats.malformed_line_numbers.size() < 10) {
        stats.malformed_line_numbers.push_back(line_number);
    }
}

[[noreturn]] void fail_malformed_ratio(const std::string& path, const ParseStats& stats) {
    std::ostringstream os;
    os << path << ": " << stats.malformed << " of " << stats.data_lines
       << " lines malformed (tolerance 10%); first bad lines:";
    for (size_t n : stats.malformed_line_numbers) os << ' ' << n;
    throw ParseError(os.str());
}

void check_malformed_ratio(const std::string& path, const ParseStats& stats) {
    if (stats.data_lines == 0) return;
    if (static_cast<double>(stats.malformed) >
        kMalformedLineTolerance * static_cast<double>(stats.data_lines)) {
        fail_malformed_ratio(path, stats);
    }
}

/// Maps header names to column indices; throws when a required column is absent.
class HeaderIndex {
public:
    HeaderIndex(std::string_view header_line, const std::string& path) {
        const auto cols = csv::split(header_line);
        for (size_t i = 0; i < cols.size(); ++i) {
            index_.emplace(std::string(csv::strip(cols[i])), i);
        }
        path_ = path;
    }

    size_t require(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) {
            throw ParseError(path_ + ": missing required column '" + name + "'");
        }
        return it->second;
    }

    std::optional<size_t> find(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<std::string, size_t> index_;
    std::string path_;
};

template <typename Record>
void sort_and_dedup_by_timestamp(std::vector<Record>& records, ParseStats& stats) {
    std::stable_sort(records.begin(), records.end(),
                     [](const Record& a, const Record& b) { return a.timestamp < b.timestamp; });
    // Equal timestamps collapse keeping the last record.
    std::vector<Record> out;
    out.reserve(records.size());
    for (auto& r : records) {
        if (!out.empty() && out.back().timestamp == r.timestamp) {
            out.back() = std::move(r);
            ++stats.deduplicated;
        } else {
            out.push_back(std::move(r));
        }
    }
    records = std::move(out);
}

}  // namespace

int tle_checksum(std::string_view line68) {
    int sum = 0;
    for (char c : line68) {
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

bool tle_line_valid(std::string_view line) {
    if (line.size() < 69) return false;
    const char check = line[68];
    if (check < '0' || check > '9') return false;
    return tle_checksum(line.substr(0, 68)) == check - '0';
}

bool name_marks_dtc(std::string_view name) {
    for (size_t i = 0; i + 3 <= name.size(); ++i) {
        const auto upper = [&](size_t k) {
            return static_cast<char>(std::toupper(static_cast<unsigned char>(name[k])));
        };
        if (upper(i) == 'D' && upper(i + 1) == 'T' && upper(i + 2) == 'C') {
            const bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(name[i - 1]));
            const bool right_ok =
                i + 3 == name.size() || !std::isalnum(static_cast<unsigned char>(name[i + 3]));
            if (left_ok && right_ok) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// UT status
// ---------------------------------------------------------------------------

namespace {
const char* kStatusHeader =
    "timestamp,hardware_version,pop_ping_latency_ms,downlink_throughput_bps,"
    "uplink_throughput_bps,tilt_angle_deg,boresight_azimuth_deg,boresight_elevation_deg,"
    "attitude_estimation_state,attitude_uncertainty_deg,desired_boresight_azimuth_deg,"
    "desired_boresight_elevation_deg,q_scalar,q_x,q_y,q_z";
}

std::vector<UtStatusRecord> parse_status_log(const std::string& path, ParseStats* stats_out) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<UtStatusRecord> records;
    if (lines.empty()) {
        if (stats_out) *stats_out = stats;
        return records;
    }
    const HeaderIndex header(lines[0], path);
    const size_t c_ts = header.require("timestamp");
    const size_t c_hw = header.require("hardware_version");
    const size_t c_lat = header.require("pop_ping_latency_ms");
    const size_t c_down = header.require("downlink_throughput_bps");
    const size_t c_up = header.require("uplink_throughput_bps");
    const size_t c_tilt = header.require("tilt_angle_deg");
    const size_t c_az = header.require("boresight_azimuth_deg");
    const size_t c_el = header.require("boresight_elevation_deg");
    const size_t c_unc = header.require("attitude_uncertainty_deg");
    const size_t c_qw = header.require("q_scalar");
    const size_t c_qx = header.require("q_x");
    const size_t c_qy = header.require("q_y");
    const size_t c_qz = header.require("q_z");

    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        ++stats.data_lines;
        const auto f = csv::split(lines[i]);
        const size_t needed = std::max({c_ts, c_hw, c_lat, c_down, c_up, c_tilt, c_az, c_el,
                                        c_unc, c_qw, c_qx, c_qy, c_qz});
        if (f.size() <= needed) {
            note_malformed(stats, i + 1);
            continue;
        }
        UtStatusRecord r;
        const auto ts = csv::parse_double(f[c_ts]);
        const auto lat = csv::parse_double(f[c_lat]);
        const auto down = csv::parse_double(f[c_down]);
        const auto up = csv::parse_double(f[c_up]);
        const auto tilt = csv::parse_double(f[c_tilt]);
        const auto az = csv::parse_double(f[c_az]);
        const auto el = csv::parse_double(f[c_el]);
        const auto unc = csv::parse_double(f[c_unc]);
        if (!ts || !lat || !down || !up || !tilt || !az || !el || !unc) {
            note_malformed(stats, i + 1);
            continue;
        }
        r.timestamp = *ts;
        r.hardware_model = std::string(csv::strip(f[c_hw]));
        r.pop_ping_latency_ms = *lat;
        r.downlink_bps = *down;
        r.uplink_bps = *up;
        r.tilt_deg = *tilt;
        r.boresight_azimuth_deg = *az;
        r.boresight_elevation_deg = *el;
        r.attitude_uncertainty_deg = *unc;

        const bool q_absent = csv::strip(f[c_qw]).empty() && csv::strip(f[c_qx]).empty() &&
                              csv::strip(f[c_qy]).empty() && csv::strip(f[c_qz]).empty();
        if (q_absent) {
            r.has_quaternion = false;
        } else {
            const auto qw = csv::parse_double(f[c_qw]);
            const auto qx = csv::parse_double(f[c_qx]);
            const auto qy = csv::parse_double(f[c_qy]);
            const auto qz = csv::parse_double(f[c_qz]);
            if (!qw || !qx || !qy || !qz) {
                note_malformed(stats, i + 1);
                continue;
            }
            r.has_quaternion = true;
            r.q_w = *qw;
            r.q_x = *qx;
            r.q_y = *qy;
            r.q_z = *qz;
            const double n = std::sqrt(r.q_w * r.q_w + r.q_x * r.q_x + r.q_y * r.q_y +
                                       r.q_z * r.q_z);
            r.degraded = std::fabs(n - 1.0) > kQuaternionNormTolerance;
        }
        records.push_back(std::move(r));
    }
    check_malformed_ratio(path, stats);
    sort_and_dedup_by_timestamp(records, stats);
    if (stats_out) *stats_out = stats;
    return records;
}

void write_status_log(const std::string& path, const std::vector<UtStatusRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << kStatusHeader << '\n';
    for (const auto& r : records) {
        out << csv::format_timestamp(r.timestamp) << ',' << r.hardware_model << ','
            << csv::format_value(r.pop_ping_latency_ms) << ',' << csv::format_value(r.downlink_bps)
            << ',' << csv::format_value(r.uplink_bps) << ',' << csv::format_value(r.tilt_deg)
            << ',' << csv::format_value(r.boresight_azimuth_deg) << ','
            << csv::format_value(r.boresight_elevation_deg) << ",1,"
            << csv::format_value(r.attitude_uncertainty_deg) << ','
            << csv::format_value(r.boresight_azimuth_deg) << ','
            << csv::format_value(r.boresight_elevation_deg) << ',';
        if (r.has_quaternion) {
            out << csv::format_value(r.q_w) << ',' << csv::format_value(r.q_x) << ','
                << csv::format_value(r.q_y) << ',' << csv::format_value(r.q_z);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// UT location
// ---------------------------------------------------------------------------

namespace {
const char* kLocationHeader =
    "timestamp,latitude,longitude,altitude_meters,horizontal_speed_mps,vertical_speed_mps,"
    "source";
}

std::vector<UtLocationRecord> parse_location_log(const std::string& path, ParseStats* stats_out) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<UtLocationRecord> records;
    if (lines.empty()) {
        if (stats_out) *stats_out = stats;
        return records;
    }
    const HeaderIndex header(lines[0], path);
    const size_t c_ts = header.require("timestamp");
    const size_t c_lat = header.require("latitude");
    const size_t c_lon = header.require("longitude");
    const size_t c_alt = header.require("altitude_meters");
    const size_t c_hs = header.require("horizontal_speed_mps");
    const size_t c_vs = header.require("vertical_speed_mps");
    const size_t c_src = header.require("source");

    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        ++stats.data_lines;
        const auto f = csv::split(lines[i]);
        const size_t needed = std::max({c_ts, c_lat, c_lon, c_alt, c_hs, c_vs, c_src});
        if (f.size() <= needed) {
            note_malformed(stats, i + 1);
            continue;
        }
        const auto ts = csv::parse_double(f[c_ts]);
        const auto lat = csv::parse_double(f[c_lat]);
        const auto lon = csv::parse_double(f[c_lon]);
        const auto alt = csv::parse_double(f[c_alt]);
        const auto hs = csv::parse_double(f[c_hs]);
        const auto vs = csv::parse_double(f[c_vs]);
        const auto src = location_source_from_string(csv::strip(f[c_src]));
        if (!ts || !lat || !lon || !alt || !hs || !vs || !src) {
            note_malformed(stats, i + 1);
            continue;
        }
        if (std::fabs(*lat) > 90.0 || *lon < -180.0 || *lon >= 180.0 || *alt < -500.0 ||
            *alt > 10000.0) {
            ++stats.rejected;
            continue;
        }
        UtLocationRecord r;
        // Dish GNSS rows carry GPS-epoch timestamps; one time base downstream.
        r.timestamp = *src == LocationSource::kDishGnss ? timeutil::unix_from_gps(*ts) : *ts;
        r.latitude = *lat;
        r.longitude = *lon;
        r.altitude_m = *alt;
        r.horizontal_speed_mps = *hs;
        r.vertical_speed_mps = *vs;
        r.source = *src;
        records.push_back(r);
    }
    check_malformed_ratio(path, stats);
    sort_and_dedup_by_timestamp(records, stats);
    if (stats_out) *stats_out = stats;
    return records;
}

void write_location_log(const std::string& path, const std::vector<UtLocationRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << kLocationHeader << '\n';
    for (const auto& r : records) {
        const double ts = r.source == LocationSource::kDishGnss
                              ? timeutil::gps_from_unix(r.timestamp)
                              : r.timestamp;
        out << csv::format_timestamp(ts) << ',' << csv::format_value(r.latitude) << ','
            << csv::format_value(r.longitude) << ',' << csv::format_value(r.altitude_m) << ','
            << csv::format_value(r.horizontal_speed_mps) << ','
            << csv::format_value(r.vertical_speed_mps) << ',' << to_string(r.source) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Obstruction frames
// ---------------------------------------------------------------------------

namespace {

std::optional<ObstructionFrame> parse_frame_line(std::string_view line, size_t line_number,
                                                 ParseStats& stats) {
    const auto fields = csv::split(line);
    if (fields.size() != 2 + kCellCount) {
        ++stats.rejected;
        stats.warnings.push_back("frame record at line " + std::to_string(line_number) +
                                 " has " + std::to_string(fields.size() - 2) +
                                 " cells, expected " + std::to_string(kCellCount));
        return std::nullopt;
    }
    const auto ts = csv::parse_double(fields[0]);
    const auto type = frame_type_from_string(csv::strip(fields[1]));
    if (!ts || !type) {
        ++stats.rejected;
        stats.warnings.push_back("frame record at line " + std::to_string(line_number) +
                                 " has a bad timestamp or frame_type");
        return std::nullopt;
    }
    ObstructionFrame frame;
    frame.timestamp = *ts;
    frame.frame_type = *type;
    frame.cells.resize(kCellCount);
    for (int i = 0; i < kCellCount; ++i) {
        const auto v = csv::parse_double(fields[2 + i]);
        if (!v || *v > 1.0) {
            ++stats.rejected;
            stats.warnings.push_back("frame record at line " + std::to_string(line_number) +
                                     " cell " + std::to_string(i) + " out of range");
            return std::nullopt;
        }
        frame.cells[i] = static_cast<float>(*v);
    }
    return frame;
}

}  // namespace

std::vector<ObstructionFrame> parse_obstruction_frames(const std::string& path,
                                                       ParseStats* stats_out) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<ObstructionFrame> frames;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        ++stats.data_lines;
        auto frame = parse_frame_line(lines[i], i + 1, stats);
        if (frame) frames.push_back(std::move(*frame));
    }
    sort_and_dedup_by_timestamp(frames, stats);
    if (stats_out) *stats_out = stats;
    return frames;
}

ObstructionFrameReader::ObstructionFrameReader(const std::string& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "rb");
    if (!file_) throw ParseError("cannot open file: " + path);
}

ObstructionFrameReader::~ObstructionFrameReader() {
    if (file_) std::fclose(file_);
}

std::optional<ObstructionFrame> ObstructionFrameReader::read_record() {
    std::string line;
    line.reserve(1 << 16);
    int c;
    while (true) {
        line.clear();
        while ((c = std::fgetc(file_)) != EOF && c != '\n') line.push_back(static_cast<char>(c));
        if (line.empty() && c == EOF) return std::nullopt;
        ++line_number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (csv::strip(line).empty()) continue;
        ++stats_.data_lines;
        auto frame = parse_frame_line(line, line_number_, stats_);
        if (frame) return frame;
        if (c == EOF) return std::nullopt;
    }
}

std::optional<ObstructionFrame> ObstructionFrameReader::next() {
    if (!pending_) pending_ = read_record();
    if (!pending_) return std::nullopt;
    ObstructionFrame current = std::move(*pending_);
    pending_.reset();
    // Collapse duplicate timestamps keeping the last record.
    while (true) {
        auto nxt = read_record();
        if (!nxt) break;
        if (nxt->timestamp == current.timestamp) {
            current = std::move(*nxt);
            ++stats_.deduplicated;
            continue;
        }
        if (nxt->timestamp < current.timestamp) {
            throw ParseError(path_ + ": frame timestamps regress at line " +
                             std::to_string(line_number_));
        }
        pending_ = std::move(nxt);
        break;
    }
    return current;
}

void write_obstruction_frames(const std::string& path,
                              const std::vector<ObstructionFrame>& frames) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    std::string line;
    for (const auto& f : frames) {
        line.clear();
        line += csv::format_timestamp(f.timestamp);
        line += ',';
        line += to_string(f.frame_type);
        for (float v : f.cells) {
            line += ',';
            line += ObstructionFrame::is_unknown(v) ? "-1" : csv::format_value(v);
        }
        line += '\n';
        out << line;
    }
}

// ---------------------------------------------------------------------------
// TLE catalog
// ---------------------------------------------------------------------------

std::vector<TleRecord> parse_tle_catalog(const std::string& path, ParseStats* stats_out) {
    const auto raw_lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<TleRecord> catalog;

    std::vector<std::string> lines;
    for (const auto& l : raw_lines) {
        if (!csv::strip(l).empty()) lines.push_back(std::string(csv::strip(l)));
    }

    size_t i = 0;
    while (i < lines.size()) {
        // A group is: optional name line, then "1 ..." and "2 ..." element lines.
        std::string name;
        if (!lines[i].empty() && lines[i][0] != '1' && lines[i][0] != '2') {
            name = lines[i];
            ++i;
        }
        if (i + 1 >= lines.size()) break;
        const std::string& l1 = lines[i];
        const std::string& l2 = lines[i + 1];
        i += 2;
        ++stats.data_lines;
        if (!tle_line_valid(l1) || !tle_line_valid(l2)) {
            ++stats.rejected;
            stats.warnings.push_back("TLE group '" + name + "' failed the modulo-10 checksum");
            continue;
        }
        TleRecord rec;
        rec.name = name;
        rec.line1 = l1.substr(0, 69);
        rec.line2 = l2.substr(0, 69);
        try {
            const auto el = geometry::decode_tle_elements(rec.line1, rec.line2);
            rec.norad_id = el.norad_id;
            rec.epoch_unix = el.epoch_unix;
        } catch (const ParseError& e) {
            ++stats.rejected;
            stats.warnings.push_back("TLE group '" + name + "': " + e.what());
            continue;
        }
        rec.is_dtc = name_marks_dtc(rec.name);
        catalog.push_back(std::move(rec));
    }
    if (stats_out) *stats_out = stats;
    return catalog;
}

void write_tle_catalog(const std::string& path, const std::vector<TleRecord>& catalog) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (const auto& t : catalog) {
        out << t.name << '\n' << t.line1 << '\n' << t.line2 << '\n';
    }
}

// ---------------------------------------------------------------------------
// Outage log
// ---------------------------------------------------------------------------

namespace {
const char* kOutageHeader = "start_ns,duration_ns,cause,did_switch";
}

std::vector<OutageEvent> parse_outage_log(const std::string& path, ParseStats* stats_out) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<OutageEvent> events;
    if (lines.empty()) {
        if (stats_out) *stats_out = stats;
        return events;
    }
    const HeaderIndex header(lines[0], path);
    const size_t c_start = header.require("start_ns");
    const size_t c_dur = header.require("duration_ns");
    const size_t c_cause = header.require("cause");
    const size_t c_switch = header.require("did_switch");

    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        ++stats.data_lines;
        const auto f = csv::split(lines[i]);
        const size_t needed = std::max({c_start, c_dur, c_cause, c_switch});
        if (f.size() <= needed) {
            note_malformed(stats, i + 1);
            continue;
        }
        const auto start = csv::parse_int64(f[c_start]);
        const auto dur = csv::parse_int64(f[c_dur]);
        const auto sw = csv::parse_int64(f[c_switch]);
        if (!start || !dur || !sw) {
            note_malformed(stats, i + 1);
            continue;
        }
        if (*dur <= 0) {
            ++stats.rejected;
            stats.warnings.push_back("outage at line " + std::to_string(i + 1) +
                                     " has non-positive duration");
            continue;
        }
        OutageEvent ev;
        ev.start_ns = *start;
        ev.duration_ns = *dur;
        const auto cause = outage_cause_from_string(csv::strip(f[c_cause]));
        if (cause) {
            ev.cause = *cause;
        } else {
            ev.cause = OutageCause::kOutageUnknown;
            stats.warnings.push_back("unknown outage cause '" +
                                     std::string(csv::strip(f[c_cause])) + "' at line " +
                                     std::to_string(i + 1) + ", mapped to OUTAGE_UNKNOWN");
        }
        ev.did_switch = *sw != 0;
        events.push_back(ev);
    }
    check_malformed_ratio(path, stats);
    std::stable_sort(events.begin(), events.end(),
                     [](const OutageEvent& a, const OutageEvent& b) {
                         return a.start_ns < b.start_ns;
                     });
    if (stats_out) *stats_out = stats;
    return events;
}

void write_outage_log(const std::string& path, const std::vector<OutageEvent>& events) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << kOutageHeader << '\n';
    for (const auto& e : events) {
        out << e.start_ns << ',' << e.duration_ns << ',' << to_string(e.cause) << ','
            << (e.did_switch ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Ping log
// ---------------------------------------------------------------------------

namespace {

/// Parses one `ping -D` echo-reply line, e.g.
/// `[1712345678.901234] 64 bytes from 100.64.0.1: icmp_seq=100 ttl=117 time=42.1 ms`.
std::optional<PingSample> parse_raw_ping_line(std::string_view line) {
    if (line.empty() || line[0] != '[') return std::nullopt;
    const size_t close = line.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    const auto ts = csv::parse_double(line.substr(1, close - 1));
    if (!ts) return std::nullopt;
    const size_t seq_pos = line.find("icmp_seq=");
    const size_t time_pos = line.find("time=");
    if (seq_pos == std::string_view::npos || time_pos == std::string_view::npos) {
        return std::nullopt;
    }
    std::string_view seq_sv = line.substr(seq_pos + 9);
    seq_sv = seq_sv.substr(0, seq_sv.find(' '));
    std::string_view rtt_sv = line.substr(time_pos + 5);
    const size_t ms = rtt_sv.find(" ms");
    if (ms != std::string_view::npos) rtt_sv = rtt_sv.substr(0, ms);
    const auto seq = csv::parse_int64(seq_sv);
    const auto rtt = csv::parse_double(rtt_sv);
    if (!seq || !rtt) return std::nullopt;
    return PingSample{*ts, *seq, *rtt, false};
}

/// Inserts synthetic lost samples for sequence gaps between received replies.
std::vector<PingSample> synthesize_losses(std::vector<PingSample> received,
                                          double nominal_interval_s) {
    std::vector<PingSample> out;
    out.reserve(received.size());
    for (size_t i = 0; i < received.size(); ++i) {
        if (i > 0) {
            const PingSample& prev = received[i - 1];
            const PingSample& curr = received[i];
            const std::int64_t gap = curr.sequence - prev.sequence;
            if (gap > 1) {
                const double span = curr.response_timestamp - prev.response_timestamp;
                for (std::int64_t k = 1; k < gap; ++k) {
                    PingSample lost;
                    lost.sequence = prev.sequence + k;
                    const double frac = static_cast<double>(k) / static_cast<double>(gap);
                    lost.response_timestamp =
                        span > 0 ? prev.response_timestamp + frac * span
                                 : prev.response_timestamp + k * nominal_interval_s;
                    lost.rtt_ms = 0.0;
                    lost.lost = true;
                    out.push_back(lost);
                }
            }
        }
        out.push_back(received[i]);
    }
    return out;
}

}  // namespace

std::vector<PingSample> parse_ping_log(const std::string& path, ParseStats* stats_out,
                                       double nominal_interval_ms) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<PingSample> received;

    // Detect the format from the first non-empty line.
    bool raw_mode = false;
    bool csv_mode = false;
    std::optional<HeaderIndex> header;
    size_t c_ts = 0, c_seq = 0, c_rtt = 0, c_lost = 0;
    double last_ts = -std::numeric_limits<double>::infinity();

    for (size_t i = 0; i < lines.size(); ++i) {
        const auto stripped = csv::strip(lines[i]);
        if (stripped.empty()) continue;
        if (!raw_mode && !csv_mode) {
            if (stripped[0] == '[') {
                raw_mode = true;
            } else {
                csv_mode = true;
                header.emplace(lines[i], path);
                c_ts = header->require("response_timestamp");
                c_seq = header->require("sequence");
                c_rtt = header->require("rtt_ms");
                c_lost = header->require("lost");
                continue;
            }
        }
        ++stats.data_lines;
        std::optional<PingSample> sample;
        if (raw_mode) {
            sample = parse_raw_ping_line(stripped);
            if (!sample) {
                // ping output carries headers/summary lines; skip quietly but count.
                ++stats.rejected;
                continue;
            }
        } else {
            const auto f = csv::split(lines[i]);
            const size_t needed = std::max({c_ts, c_seq, c_rtt, c_lost});
            if (f.size() <= needed) {
                note_malformed(stats, i + 1);
                continue;
            }
            const auto ts = csv::parse_double(f[c_ts]);
            const auto seq = csv::parse_int64(f[c_seq]);
            const auto rtt = csv::parse_double(f[c_rtt]);
            const auto lost = csv::parse_int64(f[c_lost]);
            if (!ts || !seq || !rtt || !lost) {
                note_malformed(stats, i + 1);
                continue;
            }
            sample = PingSample{*ts, *seq, *rtt, *lost != 0};
        }
        if (!sample->lost && sample->rtt_ms <= 0.0) {
            note_malformed(stats, i + 1);
            continue;
        }
        if (sample->response_timestamp < last_ts - 1.0) {
            throw ParseError(path + ": ping timestamps regress by more than 1 s at line " +
                             std::to_string(i + 1));
        }
        last_ts = std::max(last_ts, sample->response_timestamp);
        if (!sample->lost) received.push_back(*sample);
    }
    check_malformed_ratio(path, stats);
    auto samples = synthesize_losses(std::move(received), nominal_interval_ms * 1e-3);
    if (stats_out) *stats_out = stats;
    return samples;
}

void write_ping_log(const std::string& path, const std::vector<PingSample>& samples) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "response_timestamp,sequence,rtt_ms,lost\n";
    for (const auto& s : samples) {
        out << csv::format_timestamp(s.response_timestamp) << ',' << s.sequence << ','
            << csv::format_value(s.rtt_ms) << ',' << (s.lost ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Throughput log
// ---------------------------------------------------------------------------

std::vector<ThroughputSample> parse_throughput_log(const std::string& path,
                                                   ParseStats* stats_out) {
    const auto lines = csv::read_lines(path);
    ParseStats stats;
    std::vector<ThroughputSample> samples;
    if (lines.empty()) {
        if (stats_out) *stats_out = stats;
        return samples;
    }
    const HeaderIndex header(lines[0], path);
    const size_t c_ts = header.require("timestamp");
    const size_t c_dir = header.require("direction");
    const size_t c_bps = header.require("bps");

    for (size_t i = 1; i < lines.size(); ++i) {
        if (csv::strip(lines[i]).empty()) continue;
        ++stats.data_lines;
        const auto f = csv::split(lines[i]);
        const size_t needed = std::max({c_ts, c_dir, c_bps});
        if (f.size() <= needed) {
            note_malformed(stats, i + 1);
            continue;
        }
        const auto ts = csv::parse_double(f[c_ts]);
        const auto dir = traffic_direction_from_string(csv::strip(f[c_dir]));
        const auto bps = csv::parse_double(f[c_bps]);
        if (!ts || !dir || !bps || *bps < 0.0) {
            note_malformed(stats, i + 1);
            continue;
        }
        samples.push_back({*ts, *dir, *bps});
    }
    check_malformed_ratio(path, stats);
    std::stable_sort(samples.begin(), samples.end(),
                     [](const ThroughputSample& a, const ThroughputSample& b) {
                         return a.timestamp < b.timestamp;
                     });
    if (stats_out) *stats_out = stats;
    return samples;
}

void write_throughput_log(const std::string& path, const std::vector<ThroughputSample>& samples) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "timestamp,direction,bps\n";
    for (const auto& s : samples) {
        out << csv::format_timestamp(s.timestamp) << ',' << to_string(s.direction) << ','
            << csv::format_value(s.bps) << '\n';
    }
}

}  // namespace starident::ingest
