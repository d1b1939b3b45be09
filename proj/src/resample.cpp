#include "svt/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "svt/error.hpp"

namespace svt {

double kernel_weight(double t) {
    constexpr double a = kBicubicA;
    const double x = std::abs(t);
    if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    return 0.0;
}

namespace {

struct Taps {
    std::array<int, 4> index;
    std::array<double, 4> weight;
};

// Four taps around source coordinate `pos`, clamped to [0, n).
Taps taps_at(double pos, int n) {
    Taps taps;
    const int base = static_cast<int>(std::floor(pos)) - 1;
    for (int i = 0; i < 4; ++i) {
        const int src = base + i;
        taps.index[i] = std::clamp(src, 0, n - 1);
        taps.weight[i] = kernel_weight(pos - src);
    }
    return taps;
}

std::vector<Taps> build_taps(int out_n, int in_n, bool down) {
    std::vector<Taps> taps(out_n);
    for (int i = 0; i < out_n; ++i) {
        const double pos = down ? kScale * i + 1.5 : (i + 0.5) / kScale - 0.5;
        taps[i] = taps_at(pos, in_n);
    }
    return taps;
}

RealImage resample(const RealImage& in, int out_w, int out_h, bool down) {
    const auto xt = build_taps(out_w, in.width, down);
    const auto yt = build_taps(out_h, in.height, down);

    RealImage rows(out_w, in.height, in.channels);
    RealImage out(out_w, out_h, in.channels);
    for (int c = 0; c < in.channels; ++c) {
        for (int y = 0; y < in.height; ++y) {
            for (int x = 0; x < out_w; ++x) {
                const Taps& t = xt[x];
                double acc = 0.0;
                for (int i = 0; i < 4; ++i) acc += t.weight[i] * in.at(t.index[i], y, c);
                rows.at(x, y, c) = acc;
            }
        }
        for (int y = 0; y < out_h; ++y) {
            const Taps& t = yt[y];
            for (int x = 0; x < out_w; ++x) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i) acc += t.weight[i] * rows.at(x, t.index[i], c);
                out.at(x, y, c) = acc;
            }
        }
    }
    return out;
}

}  // namespace

RealImage downsample_4x(const RealImage& image) {
    if (image.width % kScale != 0 || image.height % kScale != 0) {
        throw DimensionError("4x downsampling needs dimensions divisible by 4, got " +
                             std::to_string(image.width) + "x" + std::to_string(image.height));
    }
    return resample(image, image.width / kScale, image.height / kScale, true);
}

RealImage upsample_4x(const RealImage& image) {
    return resample(image, image.width * kScale, image.height * kScale, false);
}

Frame downsample_4x(const Frame& frame) { return quantize(downsample_4x(to_real(frame)), frame.layout()); }

Frame upsample_4x(const Frame& frame) { return quantize(upsample_4x(to_real(frame)), frame.layout()); }

VideoSequence downsample_4x(const VideoSequence& seq) {
    VideoSequence out({}, seq.frame_rate());
    for (const auto& f : seq) out.push_back(downsample_4x(f));
    return out;
}

VideoSequence upsample_4x(const VideoSequence& seq) {
    VideoSequence out({}, seq.frame_rate());
    for (const auto& f : seq) out.push_back(upsample_4x(f));
    return out;
}

}  // namespace svt
