#pragma once

// Naive reference implementations. Each one is written directly from the
// textual definition and shares no code with the library beyond Frame.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "svt/frame.hpp"

namespace oracle {

// Keys cubic, a = -0.5, written out for |t| <= 1 and 1 < |t| < 2.
inline double cubic(double t) {
    const long double a = -0.5L;
    const long double x = std::fabs(static_cast<long double>(t));
    if (x <= 1) return static_cast<double>((a + 2) * x * x * x - (a + 3) * x * x + 1);
    if (x < 2) return static_cast<double>(a * x * x * x - 5 * a * x * x + 8 * a * x - 4 * a);
    return 0.0;
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Output (x, y) reads the 16 HR samples nearest (4x + 1.5, 4y + 1.5), weight
// W(u - i) W(v - j), borders replicated.
inline svt::RealImage downsample(const svt::RealImage& in) {
    svt::RealImage out(in.width / 4, in.height / 4, in.channels);
    for (int c = 0; c < in.channels; ++c)
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out.width; ++x) {
                const double u = 4.0 * x + 1.5, v = 4.0 * y + 1.5;
                long double acc = 0;
                for (int j = static_cast<int>(std::floor(v)) - 1; j <= static_cast<int>(std::floor(v)) + 2; ++j)
                    for (int i = static_cast<int>(std::floor(u)) - 1; i <= static_cast<int>(std::floor(u)) + 2; ++i)
                        acc += static_cast<long double>(cubic(u - i)) * cubic(v - j) *
                               in.at(clampi(i, 0, in.width - 1), clampi(j, 0, in.height - 1), c);
                out.at(x, y, c) = static_cast<double>(acc);
            }
    return out;
}

inline svt::RealImage upsample(const svt::RealImage& in) {
    svt::RealImage out(in.width * 4, in.height * 4, in.channels);
    for (int c = 0; c < in.channels; ++c)
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out.width; ++x) {
                const double u = (x + 0.5) / 4.0 - 0.5, v = (y + 0.5) / 4.0 - 0.5;
                long double acc = 0;
                for (int j = static_cast<int>(std::floor(v)) - 1; j <= static_cast<int>(std::floor(v)) + 2; ++j)
                    for (int i = static_cast<int>(std::floor(u)) - 1; i <= static_cast<int>(std::floor(u)) + 2; ++i)
                        acc += static_cast<long double>(cubic(u - i)) * cubic(v - j) *
                               in.at(clampi(i, 0, in.width - 1), clampi(j, 0, in.height - 1), c);
                out.at(x, y, c) = static_cast<double>(acc);
            }
    return out;
}

// Gray frames only: the metric oracles skip colour conversion.
inline double mse(const svt::Frame& a, const svt::Frame& b) {
    std::int64_t s = 0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            const std::int64_t d = static_cast<std::int64_t>(a.at(x, y)) - b.at(x, y);
            s += d * d;
        }
    return static_cast<double>(s) / (static_cast<double>(a.width()) * a.height());
}

inline double psnr(const svt::Frame& a, const svt::Frame& b) {
    const double m = mse(a, b);
    if (m == 0) return 100.0;
    return std::min(100.0, 20.0 * std::log10(255.0) - 10.0 * std::log10(m));
}

// Window-by-window SSIM with a full 2-D Gaussian and two-pass moments.
inline double ssim(const svt::Frame& a, const svt::Frame& b) {
    const int n = 11;
    const long double sigma = 1.5L;
    long double g[n][n];
    long double gs = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            g[j][i] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * sigma * sigma));
            gs += g[j][i];
        }
    const long double c1 = (0.01L * 255) * (0.01L * 255), c2 = (0.03L * 255) * (0.03L * 255);
    long double total = 0;
    long count = 0;
    for (int y0 = 0; y0 + n <= a.height(); ++y0)
        for (int x0 = 0; x0 + n <= a.width(); ++x0) {
            long double mx = 0, my = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    mx += g[j][i] / gs * a.at(x0 + i, y0 + j);
                    my += g[j][i] / gs * b.at(x0 + i, y0 + j);
                }
            long double vx = 0, vy = 0, cv = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const long double dx = a.at(x0 + i, y0 + j) - mx, dy = b.at(x0 + i, y0 + j) - my;
                    vx += g[j][i] / gs * dx * dx;
                    vy += g[j][i] / gs * dy * dy;
                    cv += g[j][i] / gs * dx * dy;
                }
            total += (2 * mx * my + c1) * (2 * cv + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++count;
        }
    return static_cast<double>(total / count);
}

// Sequential scan, gray frames. Returns 1-based redundant positions.
inline std::vector<std::uint32_t> redundant(const std::vector<svt::Frame>& f, double tau_int, double tau_mot, int m,
                                            const std::set<std::uint32_t>& exempt = {}) {
    std::vector<std::uint32_t> out;
    if (f.empty()) return out;
    std::size_t ref = 0;
    for (std::size_t t = 1; t < f.size(); ++t) {
        double global = 0, motion = 0;
        long masked = 0;
        for (int y = 0; y < f[t].height(); ++y)
            for (int x = 0; x < f[t].width(); ++x) {
                const int d = f[t].at(x, y) - f[ref].at(x, y);
                global += d * d;
                if (std::abs(d) > m) {
                    motion += d * d;
                    ++masked;
                }
            }
        global /= static_cast<double>(f[t].width()) * f[t].height();
        motion = masked ? motion / masked : 0.0;
        if (!exempt.count(static_cast<std::uint32_t>(t + 1)) && global <= tau_int && motion <= tau_mot) {
            out.push_back(static_cast<std::uint32_t>(t + 1));
        } else {
            ref = t;
        }
    }
    return out;
}

// Copy rule replay: position t takes the last kept frame at or before t.
inline std::vector<svt::Frame> restore(const std::vector<svt::Frame>& original, const std::vector<std::uint32_t>& red) {
    std::set<std::uint32_t> r(red.begin(), red.end());
    std::vector<svt::Frame> out;
    for (std::size_t t = 0; t < original.size(); ++t) {
        if (r.count(static_cast<std::uint32_t>(t + 1))) out.push_back(out.back());
        else out.push_back(original[t]);
    }
    return out;
}

inline std::vector<std::uint32_t> fixed(std::size_t T, int k, bool last) {
    std::vector<std::uint32_t> out;
    for (std::size_t n = 0; n * k + 1 <= T; ++n) out.push_back(static_cast<std::uint32_t>(n * k + 1));
    if (last && out.back() != T) out.push_back(static_cast<std::uint32_t>(T));
    return out;
}

// sin^2 form of the Hann window, end taps zero, unit sum.
inline std::vector<double> hann(int w) {
    std::vector<double> h(w, 1.0);
    if (w == 1) return h;
    long double s = 0;
    for (int i = 0; i < w; ++i) {
        const long double v = std::sin(std::numbers::pi_v<long double> * i / (w - 1));
        h[i] = static_cast<double>(v * v);
        s += h[i];
    }
    for (double& v : h) v = static_cast<double>(v / s);
    return h;
}

// Explicit padded copy (mirror without repeating the edge), then direct convolution.
inline std::vector<double> smooth(const std::vector<double>& c, int w) {
    const int half = w / 2, n = static_cast<int>(c.size());
    std::vector<double> padded;
    for (int i = half; i >= 1; --i) padded.push_back(c[i]);
    padded.insert(padded.end(), c.begin(), c.end());
    for (int i = 1; i <= half; ++i) padded.push_back(c[n - 1 - i]);
    const auto h = hann(w);
    std::vector<double> out(n);
    for (int p = 0; p < n; ++p) {
        long double acc = 0;
        for (int i = 0; i < w; ++i) acc += static_cast<long double>(h[i]) * padded[p + i];
        out[p] = static_cast<double>(acc);
    }
    return out;
}

// Every maximal run of equal values is a peak when both neighbours are strictly lower.
inline std::vector<std::size_t> maxima(const std::vector<double>& c) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start < c.size()) {
        std::size_t end = start;
        while (end + 1 < c.size() && c[end + 1] == c[start]) ++end;
        if (start > 0 && end + 1 < c.size() && c[start - 1] < c[start] && c[end + 1] < c[start]) {
            out.push_back(start + (end - start) / 2);
        }
        start = end + 1;
    }
    return out;
}

struct AdaptiveParams {
    int k = 33;
    int window = 13;
    int spacing = 0;  // 0: k
    bool endpoints = false;
    int max_interior = 0;
};

inline std::vector<std::uint32_t> adaptive(const std::vector<double>& curve, std::size_t T, const AdaptiveParams& p) {
    int w = std::min<int>(p.window, static_cast<int>(curve.size()));
    if (w % 2 == 0) --w;
    auto s = smooth(curve, w);
    for (double& v : s) v = std::nearbyint(v * 1e9) / 1e9;
    const auto peaks = maxima(s);
    if (peaks.empty()) return fixed(T, p.k, p.endpoints);
    std::vector<std::size_t> order(peaks.begin(), peaks.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    const long d = p.spacing ? p.spacing : p.k;
    std::vector<std::uint32_t> kept;
    for (std::size_t q : order) {
        if (p.max_interior && static_cast<int>(kept.size()) == p.max_interior) break;
        const long frame = static_cast<long>(q) + 2;
        bool ok = true;
        for (auto k : kept) ok = ok && std::labs(frame - static_cast<long>(k)) >= d;
        if (ok) kept.push_back(static_cast<std::uint32_t>(frame));
    }
    if (p.endpoints) {
        kept.push_back(1);
        kept.push_back(static_cast<std::uint32_t>(T));
    }
    std::set<std::uint32_t> uniq(kept.begin(), kept.end());
    return {uniq.begin(), uniq.end()};
}

}  // namespace oracle
