#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace svt {

/// Channel layout of a frame. Yuv holds full-resolution Y, Cb, Cr planes.
enum class Layout : std::uint8_t { Gray = 1, Rgb = 2, Yuv = 3 };

constexpr int channel_count(Layout layout) { return layout == Layout::Gray ? 1 : 3; }

const char* layout_name(Layout layout);
Layout layout_from_name(std::string_view name);

inline constexpr int kMinFrameSide = 4;

/// 8-bit planar image. Plane c occupies samples [c*w*h, (c+1)*w*h).
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, Layout layout = Layout::Gray, std::uint8_t fill = 0);
    Frame(int width, int height, Layout layout, std::vector<std::uint8_t> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    Layout layout() const { return layout_; }
    int channels() const { return channel_count(layout_); }
    std::size_t plane_size() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return samples_.empty(); }

    std::span<const std::uint8_t> samples() const { return samples_; }
    std::span<std::uint8_t> samples() { return samples_; }
    std::span<const std::uint8_t> plane(int c) const;
    std::span<std::uint8_t> plane(int c);

    std::uint8_t at(int x, int y, int c = 0) const { return samples_[index(x, y, c)]; }
    std::uint8_t& at(int x, int y, int c = 0) { return samples_[index(x, y, c)]; }

    bool same_shape(const Frame& other) const {
        return width_ == other.width_ && height_ == other.height_ && layout_ == other.layout_;
    }

    bool operator==(const Frame&) const = default;

private:
    std::size_t index(int x, int y, int c) const {
        return static_cast<std::size_t>(c) * plane_size() + static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    Layout layout_ = Layout::Gray;
    std::vector<std::uint8_t> samples_;
};

/// Real-valued planar image used for resampling and metric arithmetic.
struct RealImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> samples;

    RealImage() = default;
    RealImage(int w, int h, int c, double fill = 0.0)
        : width(w), height(h), channels(c), samples(static_cast<std::size_t>(w) * h * c, fill) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(width) * height; }
    double& at(int x, int y, int c = 0) {
        return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }
    double at(int x, int y, int c = 0) const {
        return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }
};

RealImage to_real(const Frame& frame);

/// Clamps to [0,255] and rounds half away from zero.
std::uint8_t quantize_sample(double value);
Frame quantize(const RealImage& image, Layout layout);

/// BT.601 luma; single-channel input is returned unchanged, Yuv yields its Y plane.
Frame to_luma(const Frame& frame);

struct FrameRate {
    std::uint32_t num = 25;
    std::uint32_t den = 1;

    double value() const { return static_cast<double>(num) / den; }
    bool operator==(const FrameRate&) const = default;
};

/// Ordered frames sharing one shape. Indices are 0-based here; external
/// artifacts use 1-based positions.
class VideoSequence {
public:
    VideoSequence() = default;
    explicit VideoSequence(std::vector<Frame> frames, FrameRate rate = {});

    void push_back(Frame frame);

    std::size_t size() const { return frames_.size(); }
    bool empty() const { return frames_.empty(); }
    const Frame& operator[](std::size_t i) const { return frames_[i]; }
    const Frame& front() const { return frames_.front(); }
    const std::vector<Frame>& frames() const { return frames_; }
    auto begin() const { return frames_.begin(); }
    auto end() const { return frames_.end(); }

    int width() const { return frames_.empty() ? 0 : frames_.front().width(); }
    int height() const { return frames_.empty() ? 0 : frames_.front().height(); }
    Layout layout() const { return frames_.empty() ? Layout::Gray : frames_.front().layout(); }

    FrameRate frame_rate() const { return rate_; }
    void set_frame_rate(FrameRate rate) { rate_ = rate; }

    bool operator==(const VideoSequence&) const = default;

private:
    std::vector<Frame> frames_;
    FrameRate rate_;
};

}  // namespace svt
