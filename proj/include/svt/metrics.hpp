#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svt/frame.hpp"

namespace svt {

/// PSNR reported for identical frames; larger values are clamped to it.
inline constexpr double kPsnrCap = 100.0;

// All metrics operate on luma (see to_luma).

double mse(const Frame& a, const Frame& b);
double psnr_from_mse(double mse_value);
double psnr(const Frame& a, const Frame& b);

struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 255.0;
};

/// Mean of the local SSIM map over every fully-contained Gaussian window.
double ssim(const Frame& a, const Frame& b, const SsimParams& params = {});

/// Entry t (0-based) is psnr(frame t, frame t+1); length T-1.
using PsnrCurve = std::vector<double>;
PsnrCurve interframe_psnr_curve(const VideoSequence& seq);

struct BppRow {
    std::string label;
    double total_bits = 0.0;
    int width = 0;
    int height = 0;
    std::size_t frame_count = 0;

    double pixels() const { return static_cast<double>(width) * height * static_cast<double>(frame_count); }
    double bpp() const { return total_bits / pixels(); }

    /// Builds a row whose bpp equals `bpp` over the given denominator.
    static BppRow from_bpp(std::string label, double bpp, int width, int height, std::size_t frame_count);
};

struct BppSummary {
    BppRow system;
    std::optional<double> saving;  ///< (baseline - system) / baseline
};

/// Sums component rows over one shared HR pixel denominator.
BppSummary bpp_accounting(std::span<const BppRow> components, const std::optional<BppRow>& baseline = {});

double bpp_saving(double baseline_bpp, double system_bpp);

}  // namespace svt
