#include "svt/redundancy.hpp"

#include <algorithm>
#include <cstdlib>

#include "svt/error.hpp"
#include "svt/metrics.hpp"

namespace svt {

void RedundancyConfig::validate() const {
    if (tau_int < 0.0 || tau_mot < 0.0 || m < 0) throw ConfigError("redundancy thresholds must be >= 0");
}

MotionMask::MotionMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)), count_(0) {
    for (auto b : bits_) count_ += b != 0;
}

namespace {

void require_same_dims(const Frame& a, const Frame& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DimensionError("redundancy check needs equal frame dimensions");
    }
}

}  // namespace

MotionMask motion_mask(const Frame& cur, const Frame& last, int m) {
    require_same_dims(cur, last);
    const Frame a = to_luma(cur);
    const Frame b = to_luma(last);
    std::vector<std::uint8_t> bits(a.plane_size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] = std::abs(static_cast<int>(a.plane(0)[i]) - static_cast<int>(b.plane(0)[i])) > m;
    }
    return MotionMask(a.width(), a.height(), std::move(bits));
}

double motion_region_mse(const Frame& cur, const Frame& last, const MotionMask& mask) {
    require_same_dims(cur, last);
    if (mask.width() != cur.width() || mask.height() != cur.height()) {
        throw DimensionError("motion mask does not match frame dimensions");
    }
    if (mask.empty()) return 0.0;
    const Frame a = to_luma(cur);
    const Frame b = to_luma(last);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.plane_size(); ++i) {
        if (!mask.bits()[i]) continue;
        const int d = static_cast<int>(a.plane(0)[i]) - static_cast<int>(b.plane(0)[i]);
        sum += d * d;
    }
    return static_cast<double>(sum) / static_cast<double>(mask.count());
}

bool is_redundant(const Frame& cur, const Frame& reference, const RedundancyConfig& cfg) {
    if (mse(cur, reference) > cfg.tau_int) return false;
    return motion_region_mse(cur, reference, motion_mask(cur, reference, cfg.m)) <= cfg.tau_mot;
}

RedundancyIndex detect_redundant(const VideoSequence& seq, const RedundancyConfig& cfg,
                                 std::span<const std::uint32_t> exempt) {
    cfg.validate();
    std::vector<std::uint32_t> redundant;
    std::size_t reference = 0;
    auto is_exempt = [&](std::uint32_t pos) { return std::find(exempt.begin(), exempt.end(), pos) != exempt.end(); };
    for (std::size_t t = 1; t < seq.size(); ++t) {
        const auto pos = static_cast<std::uint32_t>(t + 1);
        if (!is_exempt(pos) && is_redundant(seq[t], seq[reference], cfg)) {
            redundant.push_back(pos);
        } else {
            reference = t;
        }
    }
    return RedundancyIndex(std::move(redundant));
}

VideoSequence drop_redundant(const VideoSequence& seq, const RedundancyIndex& idx) {
    idx.check_range(seq.size(), 1);
    VideoSequence out({}, seq.frame_rate());
    for (std::size_t t = 0; t < seq.size(); ++t) {
        if (!idx.contains(static_cast<std::uint32_t>(t + 1))) out.push_back(seq[t]);
    }
    return out;
}

VideoSequence restore_redundant(const VideoSequence& surviving, const RedundancyIndex& idx) {
    const std::size_t total = surviving.size() + idx.size();
    if (idx.contains(1)) throw IndexError("frame 1 cannot be redundant");
    idx.check_range(total, 2);
    if (surviving.empty()) throw DataError("cannot restore an empty sequence");
    VideoSequence out({}, surviving.frame_rate());
    std::size_t next = 0;
    for (std::size_t t = 0; t < total; ++t) {
        if (idx.contains(static_cast<std::uint32_t>(t + 1))) {
            out.push_back(out[t - 1]);
        } else {
            out.push_back(surviving[next++]);
        }
    }
    return out;
}

std::vector<std::uint32_t> surviving_positions(std::size_t frame_count, const RedundancyIndex& idx) {
    idx.check_range(frame_count, 1);
    std::vector<std::uint32_t> out;
    out.reserve(frame_count - idx.size());
    for (std::uint32_t t = 1; t <= frame_count; ++t) {
        if (!idx.contains(t)) out.push_back(t);
    }
    return out;
}

}  // namespace svt
