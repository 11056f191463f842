/// Obstruction-map image pipeline: cell classification, FRAME_UT -> FRAME_EARTH
/// conversion, inter-frame XOR differencing, connected-component segmentation
/// and map-reset detection.
#pragma once

#include <bitset>
#include <vector>

#include "starident/geometry.hpp"
#include "starident/orientation.hpp"
#include "starident/types.hpp"

namespace starident::mapproc {

/// Boolean 123x123 mask stored flat, row-major.
class Mask {
public:
    bool test(int row, int col) const { return bits_[index(row, col)]; }
    void set(int row, int col, bool v = true) { bits_[index(row, col)] = v; }
    bool test(const Pixel& p) const { return test(p.row, p.col); }
    void set(const Pixel& p, bool v = true) { set(p.row, p.col, v); }
    size_t count() const { return bits_.count(); }
    bool any() const { return bits_.any(); }

    Mask operator^(const Mask& o) const {
        Mask m;
        m.bits_ = bits_ ^ o.bits_;
        return m;
    }
    Mask operator&(const Mask& o) const {
        Mask m;
        m.bits_ = bits_ & o.bits_;
        return m;
    }
    Mask operator|(const Mask& o) const {
        Mask m;
        m.bits_ = bits_ | o.bits_;
        return m;
    }
    bool operator==(const Mask& o) const { return bits_ == o.bits_; }

    /// True when every set bit of this mask is also set in `other`.
    bool subset_of(const Mask& other) const { return (bits_ & ~other.bits_).none(); }

    std::vector<Pixel> pixels() const;

    static size_t index(int row, int col) {
        return static_cast<size_t>(row) * kGridSize + static_cast<size_t>(col);
    }

private:
    std::bitset<kGridSize * kGridSize> bits_;
};

struct BinaryFrame {
    double timestamp{};
    FrameType frame_type{FrameType::kUt};
    Mask explored;    // cell holds any trajectory data
    Mask obstructed;  // explored with signal quality at or below the threshold

    double obstruction_ratio() const {
        const size_t e = explored.count();
        return e == 0 ? 0.0 : static_cast<double>(obstructed.count()) / static_cast<double>(e);
    }
};

struct DiffFrame {
    double t_prev{};
    double t_curr{};
    Mask changed;
    bool reset{};  // explored count dropped; diff suppressed
};

struct Segment {
    int label{};
    std::vector<Pixel> pixels;  // sorted by (row, col)
    Pixel midpoint;             // member pixel nearest the centroid
    double first_seen{};
    double last_seen{};
};

inline constexpr double kDefaultObstructionThreshold = 0.5;
inline constexpr int kResetGuardPixels = 50;
inline constexpr double kSegmentMatchGatePx = 6.0;

/// Binarize a raw frame: explored = non-sentinel cells, obstructed = explored
/// cells with value <= threshold (boundary inclusive).
BinaryFrame classify(const ObstructionFrame& frame,
                     double obstruction_threshold = kDefaultObstructionThreshold);

struct FrameConversion {
    BinaryFrame frame;       // FRAME_EARTH representation
    size_t dropped_pixels{}; // directions outside the earth-frame disc
};

/// Re-projects every set pixel of a FRAME_UT frame into FRAME_EARTH through
/// the attitude. Pixels whose directions fall outside the earth disc are
/// dropped and counted.
FrameConversion ut_to_earth_frame(const BinaryFrame& frame,
                                  const orientation::Attitude& attitude,
                                  const geometry::MapGeometry& geom);

/// XOR of the explored masks of two FRAME_EARTH frames. When the current
/// explored count drops by more than the reset guard the result is flagged
/// RESET and carries no diff.
DiffFrame xor_diff(const BinaryFrame& prev, const BinaryFrame& curr);

/// 8-connected components of the changed mask, labeled deterministically in
/// (min row, min col) order; each segment's midpoint is the member pixel
/// nearest its centroid.
std::vector<Segment> label_segments(const DiffFrame& diff);

struct SegmentMatch {
    int prev_index{-1};  // -1 marks a NEW segment
    int curr_index{};
    double midpoint_distance_px{};
    int growth{};        // pixel count delta vs the matched previous segment
};

struct TrackingReport {
    std::vector<SegmentMatch> matches;      // one entry per current segment
    std::vector<int> unmatched_prev;        // previous segments with no successor
};

/// Greedy minimal-midpoint-distance correspondence between two consecutive
/// segment lists, gated at kSegmentMatchGatePx. Unmatched current segments
/// come back as NEW (prev_index -1).
TrackingReport track_segments(const std::vector<Segment>& prev,
                              const std::vector<Segment>& curr);

/// Debug dump of a mask as a PGM image (set pixels white).
void write_mask_pgm(const Mask& mask, const std::string& path);

}  // namespace starident::mapproc
