#include "svt/metrics.hpp"

#include <cmath>
#include <cstdint>

#include "svt/error.hpp"

namespace svt {

namespace {

void require_same_dims(const Frame& a, const Frame& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw DimensionError("frame dimensions differ: " + std::to_string(a.width()) + "x" +
                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()));
    }
}

std::vector<double> gaussian_taps(const SsimParams& p) {
    std::vector<double> taps(p.window);
    const int r = p.window / 2;
    double sum = 0.0;
    for (int i = 0; i < p.window; ++i) {
        taps[i] = std::exp(-static_cast<double>((i - r) * (i - r)) / (2.0 * p.sigma * p.sigma));
        sum += taps[i];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// Separable "valid" filter: output is (w-n+1) x (h-n+1).
std::vector<double> filter_valid(const std::vector<double>& in, int w, int h, const std::vector<double>& taps) {
    const int n = static_cast<int>(taps.size());
    const int ow = w - n + 1;
    const int oh = h - n + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        const double* src = &in[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += taps[i] * src[x + i];
            rows[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += taps[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

}  // namespace

double mse(const Frame& a, const Frame& b) {
    require_same_dims(a, b);
    const Frame la = to_luma(a);
    const Frame lb = to_luma(b);
    auto pa = la.plane(0);
    auto pb = lb.plane(0);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
        sum += d * d;
    }
    return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double psnr_from_mse(double mse_value) {
    if (mse_value <= 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse_value));
}

double psnr(const Frame& a, const Frame& b) { return psnr_from_mse(mse(a, b)); }

double ssim(const Frame& a, const Frame& b, const SsimParams& params) {
    require_same_dims(a, b);
    if (a.width() < params.window || a.height() < params.window) {
        throw DimensionError("SSIM needs frames of at least " + std::to_string(params.window) + "x" +
                             std::to_string(params.window));
    }
    const int w = a.width();
    const int h = a.height();
    const Frame la = to_luma(a);
    const Frame lb = to_luma(b);
    const std::size_t n = la.plane_size();
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = la.plane(0)[i];
        y[i] = lb.plane(0)[i];
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto taps = gaussian_taps(params);
    const auto mu_x = filter_valid(x, w, h, taps);
    const auto mu_y = filter_valid(y, w, h, taps);
    const auto e_xx = filter_valid(xx, w, h, taps);
    const auto e_yy = filter_valid(yy, w, h, taps);
    const auto e_xy = filter_valid(xy, w, h, taps);

    const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
    const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cov = e_xy[i] - mx * my;
        total += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mu_x.size());
}

PsnrCurve interframe_psnr_curve(const VideoSequence& seq) {
    if (seq.size() < 2) throw DataError("inter-frame PSNR needs at least 2 frames");
    PsnrCurve curve;
    curve.reserve(seq.size() - 1);
    for (std::size_t t = 0; t + 1 < seq.size(); ++t) curve.push_back(psnr(seq[t], seq[t + 1]));
    return curve;
}

BppRow BppRow::from_bpp(std::string label, double bpp, int width, int height, std::size_t frame_count) {
    BppRow row{std::move(label), 0.0, width, height, frame_count};
    row.total_bits = bpp * row.pixels();
    return row;
}

double bpp_saving(double baseline_bpp, double system_bpp) {
    if (baseline_bpp <= 0.0) throw DataError("baseline bpp must be positive");
    return (baseline_bpp - system_bpp) / baseline_bpp;
}

BppSummary bpp_accounting(std::span<const BppRow> components, const std::optional<BppRow>& baseline) {
    if (components.empty()) throw DataError("bpp accounting needs at least one component");
    const BppRow& first = components.front();
    auto same_denominator = [&](const BppRow& r) {
        return r.width == first.width && r.height == first.height && r.frame_count == first.frame_count;
    };
    BppSummary summary;
    summary.system = BppRow{"system", 0.0, first.width, first.height, first.frame_count};
    for (const auto& row : components) {
        if (!same_denominator(row)) {
            throw DataError("bpp row '" + row.label + "' uses a different pixel denominator");
        }
        summary.system.total_bits += row.total_bits;
    }
    if (baseline) summary.saving = bpp_saving(baseline->bpp(), summary.system.bpp());
    return summary;
}

}  // namespace svt
