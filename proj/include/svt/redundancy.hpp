#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "svt/frame.hpp"
#include "svt/index_set.hpp"

namespace svt {

struct RedundancyConfig {
    double tau_int = 0.5;  ///< global luma MSE threshold
    double tau_mot = 15.0; ///< motion-region MSE threshold
    int m = 2;             ///< gray-difference threshold for the motion mask

    void validate() const;
};

class MotionMask {
public:
    MotionMask(int width, int height, std::vector<std::uint8_t> bits);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    std::span<const std::uint8_t> bits() const { return bits_; }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
    std::size_t count_;
};

/// Marks pixels whose luma difference exceeds m.
MotionMask motion_mask(const Frame& cur, const Frame& last, int m);

/// Luma MSE restricted to masked pixels; 0 for an empty mask.
double motion_region_mse(const Frame& cur, const Frame& last, const MotionMask& mask);

/// True when `cur` passes both thresholds against `reference` (ties count as redundant).
bool is_redundant(const Frame& cur, const Frame& reference, const RedundancyConfig& cfg);

/// Sequential scan against the last non-redundant frame. Positions in
/// `exempt` (1-based) are never marked redundant.
RedundancyIndex detect_redundant(const VideoSequence& seq, const RedundancyConfig& cfg,
                                 std::span<const std::uint32_t> exempt = {});

VideoSequence drop_redundant(const VideoSequence& seq, const RedundancyIndex& idx);

/// Re-inserts dropped positions as copies of the preceding surviving frame.
/// The restored length is seq.size() + idx.size().
VideoSequence restore_redundant(const VideoSequence& surviving, const RedundancyIndex& idx);

/// 1-based positions that survive dropping, in order.
std::vector<std::uint32_t> surviving_positions(std::size_t frame_count, const RedundancyIndex& idx);

}  // namespace svt
