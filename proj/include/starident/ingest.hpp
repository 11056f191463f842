/// Parsers and writers for every input artifact. Parsers emit records in
/// timestamp order, count malformed lines, and fail hard only on unreadable
/// files or schema-level breakage (>10% malformed lines). Writers produce the
/// canonical formats bit-exactly, so written corpora re-parse to identical
/// records.
#pragma once

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starident/types.hpp"

namespace starident::ingest {

struct ParseStats {
    size_t data_lines{};
    size_t malformed{};
    size_t rejected{};
    size_t deduplicated{};
    std::vector<size_t> malformed_line_numbers;  // 1-based, first few only
    std::vector<std::string> warnings;
};

inline constexpr double kMalformedLineTolerance = 0.10;

std::vector<UtStatusRecord> parse_status_log(const std::string& path,
                                             ParseStats* stats = nullptr);
std::vector<UtLocationRecord> parse_location_log(const std::string& path,
                                                 ParseStats* stats = nullptr);
std::vector<ObstructionFrame> parse_obstruction_frames(const std::string& path,
                                                       ParseStats* stats = nullptr);
std::vector<TleRecord> parse_tle_catalog(const std::string& path, ParseStats* stats = nullptr);
std::vector<OutageEvent> parse_outage_log(const std::string& path, ParseStats* stats = nullptr);
std::vector<PingSample> parse_ping_log(const std::string& path, ParseStats* stats = nullptr,
                                       double nominal_interval_ms = 10.0);
std::vector<ThroughputSample> parse_throughput_log(const std::string& path,
                                                   ParseStats* stats = nullptr);

/// Streaming reader for large obstruction-frame dumps: frames come back in
/// file order (which must be non-decreasing in timestamp), with duplicate
/// timestamps collapsed keeping the last record.
class ObstructionFrameReader {
public:
    explicit ObstructionFrameReader(const std::string& path);
    ~ObstructionFrameReader();
    ObstructionFrameReader(const ObstructionFrameReader&) = delete;
    ObstructionFrameReader& operator=(const ObstructionFrameReader&) = delete;

    std::optional<ObstructionFrame> next();
    const ParseStats& stats() const { return stats_; }

private:
    std::optional<ObstructionFrame> read_record();

    std::FILE* file_{};
    std::string path_;
    size_t line_number_{};
    std::optional<ObstructionFrame> pending_;
    ParseStats stats_;
};

/// TLE checksum: digit sum with '-' counted as 1, modulo 10.
int tle_checksum(std::string_view line68);
bool tle_line_valid(std::string_view line);

/// True when the catalog name marks a direct-to-cell unit ("DTC" token,
/// case-insensitive, bracketed or suffixed).
bool name_marks_dtc(std::string_view name);

// Writers for the canonical file forms (also used by the synthetic corpus).
void write_status_log(const std::string& path, const std::vector<UtStatusRecord>& records);
void write_location_log(const std::string& path, const std::vector<UtLocationRecord>& records);
void write_obstruction_frames(const std::string& path,
                              const std::vector<ObstructionFrame>& frames);
void write_tle_catalog(const std::string& path, const std::vector<TleRecord>& catalog);
void write_outage_log(const std::string& path, const std::vector<OutageEvent>& events);
void write_ping_log(const std::string& path, const std::vector<PingSample>& samples);
void write_throughput_log(const std::string& path, const std::vector<ThroughputSample>& samples);

}  // namespace starident::ingest
