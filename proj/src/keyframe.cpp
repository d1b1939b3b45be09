#include "svt/keyframe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "svt/error.hpp"

namespace svt {

void SelectionConfig::validate() const {
    if (k < 2) throw ConfigError("key-frame interval k must be >= 2");
    if (window < 1 || window % 2 == 0) throw ConfigError("smoothing window must be odd and >= 1");
    if (min_spacing != 0 && min_spacing < 2) throw ConfigError("minimum key spacing must be >= 2");
    if (max_interior < 0) throw ConfigError("max_interior must be >= 0");
}

KeyFrameIndex fixed_interval(std::size_t frame_count, int k, bool include_last) {
    if (frame_count < 1) throw DataError("key-frame selection needs at least one frame");
    if (k < 2) throw ConfigError("key-frame interval k must be >= 2");
    std::vector<std::uint32_t> idx;
    for (std::size_t t = 1; t <= frame_count; t += static_cast<std::size_t>(k)) {
        idx.push_back(static_cast<std::uint32_t>(t));
    }
    if (include_last && idx.back() != frame_count) idx.push_back(static_cast<std::uint32_t>(frame_count));
    return KeyFrameIndex(std::move(idx));
}

std::vector<double> hann_window(int w) {
    if (w < 1 || w % 2 == 0) throw ConfigError("Hann window length must be odd and >= 1");
    if (w == 1) return {1.0};
    std::vector<double> win(w);
    double sum = 0.0;
    for (int n = 0; n < w; ++n) {
        win[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / (w - 1));
        sum += win[n];
    }
    for (double& v : win) v /= sum;
    return win;
}

std::vector<double> smooth_curve(std::span<const double> curve, int w) {
    if (w < 1 || w % 2 == 0) throw ConfigError("smoothing window must be odd and >= 1");
    if (static_cast<std::size_t>(w) > curve.size()) {
        throw ConfigError("smoothing window " + std::to_string(w) + " exceeds curve length " +
                          std::to_string(curve.size()));
    }
    const auto win = hann_window(w);
    const long n = static_cast<long>(curve.size());
    const long half = w / 2;
    auto reflect = [n](long i) {
        if (i < 0) return -i;
        if (i >= n) return 2 * (n - 1) - i;
        return i;
    };
    std::vector<double> out(curve.size());
    for (long p = 0; p < n; ++p) {
        double acc = 0.0;
        for (long i = 0; i < w; ++i) acc += win[i] * curve[reflect(p - half + i)];
        out[p] = acc;
    }
    return out;
}

std::vector<std::size_t> local_maxima(std::span<const double> curve) {
    std::vector<std::size_t> peaks;
    const std::size_t n = curve.size();
    if (n < 3) return peaks;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (curve[i] > curve[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && curve[j + 1] == curve[i]) ++j;
            if (j + 1 < n && curve[j + 1] < curve[i]) peaks.push_back((i + j) / 2);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

KeyFrameIndex select_adaptive(std::span<const double> p_int, const SelectionConfig& cfg, std::size_t frame_count) {
    cfg.validate();
    if (frame_count < 2) throw DataError("adaptive selection needs at least 2 frames");
    if (p_int.size() + 1 != frame_count) {
        throw DataError("PSNR curve length " + std::to_string(p_int.size()) + " does not match T-1 = " +
                        std::to_string(frame_count - 1));
    }

    // Short clips shrink the window to the largest odd length that fits.
    int w = cfg.window;
    if (static_cast<std::size_t>(w) > p_int.size()) {
        w = static_cast<int>(p_int.size());
        if (w % 2 == 0) --w;
    }
    // Snapping to a 1e-9 dB grid keeps plateaus and ties from depending on
    // summation order.
    auto smoothed = smooth_curve(p_int, w);
    for (double& v : smoothed) v = std::round(v * 1e9) / 1e9;
    const auto peaks = local_maxima(smoothed);
    if (peaks.empty()) return fixed_interval(frame_count, cfg.k, cfg.include_endpoints);

    struct Candidate {
        double value;
        std::uint32_t frame;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(peaks.size());
    // Curve entry p (0-based) compares frames p+1 and p+2; the later frame is picked.
    for (auto p : peaks) candidates.push_back({smoothed[p], static_cast<std::uint32_t>(p + 2)});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.value != b.value ? a.value > b.value : a.frame < b.frame;
    });

    const auto spacing = static_cast<std::uint32_t>(cfg.spacing());
    std::vector<std::uint32_t> kept;
    for (const auto& c : candidates) {
        if (cfg.max_interior > 0 && kept.size() >= static_cast<std::size_t>(cfg.max_interior)) break;
        const bool far = std::all_of(kept.begin(), kept.end(), [&](std::uint32_t k) {
            return (k > c.frame ? k - c.frame : c.frame - k) >= spacing;
        });
        if (far) kept.push_back(c.frame);
    }
    if (cfg.include_endpoints) {
        kept.push_back(1);
        kept.push_back(static_cast<std::uint32_t>(frame_count));
    }
    return KeyFrameIndex::from_unsorted(std::move(kept));
}

KeyFrameIndex select_keyframes(const VideoSequence& lr, const SelectionConfig& cfg) {
    cfg.validate();
    if (cfg.mode == SelectionMode::Fixed || lr.size() < 2) {
        return fixed_interval(lr.size(), cfg.k, cfg.include_endpoints);
    }
    return select_adaptive(interframe_psnr_curve(lr), cfg, lr.size());
}

}  // namespace svt
