#include "starident/mapproc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace starident::mapproc {

std::vector<Pixel> Mask::pixels() const {
    std::vector<Pixel> out;
    out.reserve(count());
    for (int row = 0; row < kGridSize; ++row) {
        for (int col = 0; col < kGridSize; ++col) {
            if (test(row, col)) out.push_back({col, row});
        }
    }
    return out;
}

BinaryFrame classify(const ObstructionFrame& frame, double obstruction_threshold) {
    if (obstruction_threshold <= 0.0 || obstruction_threshold >= 1.0) {
        throw ConfigError("obstruction threshold must lie in (0, 1)");
    }
    BinaryFrame bf;
    bf.timestamp = frame.timestamp;
    bf.frame_type = frame.frame_type;
    for (int row = 0; row < kGridSize; ++row) {
        for (int col = 0; col < kGridSize; ++col) {
            const float v = frame.at(row, col);
            if (ObstructionFrame::is_unknown(v)) continue;
            bf.explored.set(row, col);
            if (v <= obstruction_threshold) bf.obstructed.set(row, col);
        }
    }
    return bf;
}

FrameConversion ut_to_earth_frame(const BinaryFrame& frame,
                                  const orientation::Attitude& attitude,
                                  const geometry::MapGeometry& geom) {
    if (frame.frame_type != FrameType::kUt) {
        throw Error("ut_to_earth_frame expects a FRAME_UT frame");
    }
    FrameConversion out;
    out.frame.timestamp = frame.timestamp;
    out.frame.frame_type = FrameType::kEarth;
    for (int row = 0; row < kGridSize; ++row) {
        for (int col = 0; col < kGridSize; ++col) {
            if (!frame.explored.test(row, col)) continue;
            const Pixel src{col, row};
            if (!geometry::pixel_in_disc(src, geom)) {
                ++out.dropped_pixels;
                continue;
            }
            const auto dir = geometry::pixel_to_direction(src, FrameType::kUt, attitude, geom);
            Pixel dst;
            try {
                dst = geometry::direction_to_pixel(dir, FrameType::kEarth, attitude, geom);
            } catch (const Error&) {
                ++out.dropped_pixels;
                continue;
            }
            out.frame.explored.set(dst);
            if (frame.obstructed.test(row, col)) out.frame.obstructed.set(dst);
        }
    }
    return out;
}

DiffFrame xor_diff(const BinaryFrame& prev, const BinaryFrame& curr) {
    if (!(prev.timestamp < curr.timestamp)) {
        throw Error("xor_diff requires frames in increasing timestamp order");
    }
    DiffFrame diff;
    diff.t_prev = prev.timestamp;
    diff.t_curr = curr.timestamp;
    const auto prev_count = static_cast<long>(prev.explored.count());
    const auto curr_count = static_cast<long>(curr.explored.count());
    if (curr_count < prev_count - kResetGuardPixels) {
        diff.reset = true;
        return diff;
    }
    diff.changed = prev.explored ^ curr.explored;
    return diff;
}

namespace {

Pixel nearest_to_centroid(const std::vector<Pixel>& pixels) {
    double sum_col = 0.0, sum_row = 0.0;
    for (const auto& p : pixels) {
        sum_col += p.col;
        sum_row += p.row;
    }
    const double cc = sum_col / static_cast<double>(pixels.size());
    const double cr = sum_row / static_cast<double>(pixels.size());
    Pixel best = pixels.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& p : pixels) {
        const double d = (p.col - cc) * (p.col - cc) + (p.row - cr) * (p.row - cr);
        // Ties resolve to the smallest (row, col) because pixels are sorted.
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

}  // namespace

std::vector<Segment> label_segments(const DiffFrame& diff) {
    std::vector<Segment> segments;
    if (!diff.changed.any()) return segments;

    std::vector<int> labels(kGridSize * kGridSize, -1);
    std::vector<Pixel> stack;
    int next_label = 0;

    for (int row = 0; row < kGridSize; ++row) {
        for (int col = 0; col < kGridSize; ++col) {
            if (!diff.changed.test(row, col) || labels[Mask::index(row, col)] >= 0) continue;
            Segment seg;
            seg.label = next_label++;
            stack.push_back({col, row});
            labels[Mask::index(row, col)] = seg.label;
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                seg.pixels.push_back(p);
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        const int nr = p.row + dr;
                        const int nc = p.col + dc;
                        if (nr < 0 || nr >= kGridSize || nc < 0 || nc >= kGridSize) continue;
                        if (!diff.changed.test(nr, nc) || labels[Mask::index(nr, nc)] >= 0) {
                            continue;
                        }
                        labels[Mask::index(nr, nc)] = seg.label;
                        stack.push_back({nc, nr});
                    }
                }
            }
            std::sort(seg.pixels.begin(), seg.pixels.end(), [](const Pixel& a, const Pixel& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
            seg.midpoint = nearest_to_centroid(seg.pixels);
            seg.first_seen = diff.t_curr;
            seg.last_seen = diff.t_curr;
            segments.push_back(std::move(seg));
        }
    }

    // Deterministic label order by (min row, min col) over the whole component.
    const auto min_key = [](const Segment& s) {
        int min_col = s.pixels.front().col;
        for (const auto& p : s.pixels) min_col = std::min(min_col, p.col);
        return std::pair<int, int>{s.pixels.front().row, min_col};
    };
    std::sort(segments.begin(), segments.end(),
              [&](const Segment& a, const Segment& b) { return min_key(a) < min_key(b); });
    for (size_t i = 0; i < segments.size(); ++i) segments[i].label = static_cast<int>(i);
    return segments;
}

TrackingReport track_segments(const std::vector<Segment>& prev,
                              const std::vector<Segment>& curr) {
    struct Pair {
        double distance;
        int prev_index;
        int curr_index;
    };
    std::vector<Pair> pairs;
    for (size_t pi = 0; pi < prev.size(); ++pi) {
        for (size_t ci = 0; ci < curr.size(); ++ci) {
            const double d = pixel_distance(prev[pi].midpoint, curr[ci].midpoint);
            if (d <= kSegmentMatchGatePx) {
                pairs.push_back({d, static_cast<int>(pi), static_cast<int>(ci)});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.prev_index != b.prev_index) return a.prev_index < b.prev_index;
        return a.curr_index < b.curr_index;
    });

    TrackingReport report;
    report.matches.resize(curr.size());
    std::vector<bool> prev_used(prev.size(), false);
    std::vector<bool> curr_used(curr.size(), false);
    for (size_t ci = 0; ci < curr.size(); ++ci) {
        report.matches[ci].curr_index = static_cast<int>(ci);
        report.matches[ci].prev_index = -1;
        report.matches[ci].growth = static_cast<int>(curr[ci].pixels.size());
    }
    for (const auto& p : pairs) {
        if (prev_used[p.prev_index] || curr_used[p.curr_index]) continue;
        prev_used[p.prev_index] = true;
        curr_used[p.curr_index] = true;
        auto& m = report.matches[p.curr_index];
        m.prev_index = p.prev_index;
        m.midpoint_distance_px = p.distance;
        m.growth = static_cast<int>(curr[p.curr_index].pixels.size());
    }
    for (size_t pi = 0; pi < prev.size(); ++pi) {
        if (!prev_used[pi]) report.unmatched_prev.push_back(static_cast<int>(pi));
    }
    return report;
}

void write_mask_pgm(const Mask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << "P5\n" << kGridSize << ' ' << kGridSize << "\n255\n";
    for (int row = 0; row < kGridSize; ++row) {
        for (int col = 0; col < kGridSize; ++col) {
            out.put(mask.test(row, col) ? static_cast<char>(255) : static_cast<char>(0));
        }
    }
}

}  // namespace starident::mapproc
