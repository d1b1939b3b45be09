#pragma once

#include "svt/frame.hpp"

namespace svt {

/// Keys cubic convolution parameter (Catmull-Rom).
inline constexpr double kBicubicA = -0.5;
inline constexpr int kScale = 4;

/// Piecewise-cubic Keys kernel; zero for |t| >= 2.
double kernel_weight(double t);

// Output sample (x, y) of the 4x downsampler reads the 4x4 block around
// HR position (4x + 1.5, 4y + 1.5); the upsampler maps output X to LR
// coordinate (X + 0.5) / 4 - 0.5. Borders replicate the edge sample.

RealImage downsample_4x(const RealImage& image);
RealImage upsample_4x(const RealImage& image);

/// Requires width and height divisible by 4.
Frame downsample_4x(const Frame& frame);
Frame upsample_4x(const Frame& frame);

VideoSequence downsample_4x(const VideoSequence& seq);
VideoSequence upsample_4x(const VideoSequence& seq);

}  // namespace svt
