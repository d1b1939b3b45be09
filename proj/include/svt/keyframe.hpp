#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svt/frame.hpp"
#include "svt/index_set.hpp"
#include "svt/metrics.hpp"

namespace svt {

enum class SelectionMode { Fixed, Adaptive };

struct SelectionConfig {
    SelectionMode mode = SelectionMode::Fixed;
    int k = 33;                      ///< fixed interval, also the adaptive fallback
    int window = 13;                 ///< Hann smoothing length (odd)
    int min_spacing = 0;             ///< 0 means "use k"
    bool include_endpoints = false;  ///< force frames 1 and T
    int max_interior = 0;            ///< cap on adaptive picks; 0 = unlimited

    int spacing() const { return min_spacing > 0 ? min_spacing : k; }
    void validate() const;
};

/// {1, k+1, 2k+1, ...} up to T; `include_last` also forces T.
KeyFrameIndex fixed_interval(std::size_t frame_count, int k, bool include_last = false);

/// Hann window of odd length w, zero end taps for w > 1, normalised to unit sum.
std::vector<double> hann_window(int w);

/// Unit-sum Hann convolution with reflect padding (edge sample not repeated).
std::vector<double> smooth_curve(std::span<const double> curve, int w);

/// 0-based positions of interior local maxima. A flat-topped peak reports
/// the centre of its plateau, the left one of the two centres when even.
std::vector<std::size_t> local_maxima(std::span<const double> curve);

/// Adaptive placement from an inter-frame PSNR curve of length T-1.
KeyFrameIndex select_adaptive(std::span<const double> p_int, const SelectionConfig& cfg, std::size_t frame_count);

/// Dispatches on cfg.mode; adaptive mode measures the curve on `lr`.
KeyFrameIndex select_keyframes(const VideoSequence& lr, const SelectionConfig& cfg);

}  // namespace svt
