#include "svt/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svt/error.hpp"

namespace svt {

const char* layout_name(Layout layout) {
    switch (layout) {
        case Layout::Gray: return "gray";
        case Layout::Rgb: return "rgb";
        case Layout::Yuv: return "yuv";
    }
    return "unknown";
}

Layout layout_from_name(std::string_view name) {
    if (name == "gray") return Layout::Gray;
    if (name == "rgb") return Layout::Rgb;
    if (name == "yuv") return Layout::Yuv;
    throw FormatError("unknown channel layout '" + std::string(name) + "'");
}

namespace {

void check_dims(int width, int height) {
    if (width < kMinFrameSide || height < kMinFrameSide) {
        throw DimensionError("frame must be at least 4x4, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
}

}  // namespace

Frame::Frame(int width, int height, Layout layout, std::uint8_t fill)
    : width_(width), height_(height), layout_(layout) {
    check_dims(width, height);
    samples_.assign(plane_size() * channels(), fill);
}

Frame::Frame(int width, int height, Layout layout, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), layout_(layout), samples_(std::move(samples)) {
    check_dims(width, height);
    if (samples_.size() != plane_size() * channels()) {
        throw DimensionError("sample count " + std::to_string(samples_.size()) + " does not match " +
                             std::to_string(width) + "x" + std::to_string(height) + "x" +
                             std::to_string(channels()));
    }
}

std::span<const std::uint8_t> Frame::plane(int c) const {
    return std::span<const std::uint8_t>(samples_).subspan(c * plane_size(), plane_size());
}

std::span<std::uint8_t> Frame::plane(int c) {
    return std::span<std::uint8_t>(samples_).subspan(c * plane_size(), plane_size());
}

RealImage to_real(const Frame& frame) {
    RealImage image;
    image.width = frame.width();
    image.height = frame.height();
    image.channels = frame.channels();
    image.samples.assign(frame.samples().begin(), frame.samples().end());
    return image;
}

std::uint8_t quantize_sample(double value) {
    // std::round rounds half away from zero.
    return static_cast<std::uint8_t>(std::round(std::clamp(value, 0.0, 255.0)));
}

Frame quantize(const RealImage& image, Layout layout) {
    if (image.channels != channel_count(layout)) {
        throw DimensionError("channel count does not match layout");
    }
    std::vector<std::uint8_t> samples(image.samples.size());
    std::transform(image.samples.begin(), image.samples.end(), samples.begin(), quantize_sample);
    return Frame(image.width, image.height, layout, std::move(samples));
}

Frame to_luma(const Frame& frame) {
    switch (frame.layout()) {
        case Layout::Gray:
            return frame;
        case Layout::Yuv: {
            auto y = frame.plane(0);
            return Frame(frame.width(), frame.height(), Layout::Gray,
                         std::vector<std::uint8_t>(y.begin(), y.end()));
        }
        case Layout::Rgb: break;
    }
    auto r = frame.plane(0);
    auto g = frame.plane(1);
    auto b = frame.plane(2);
    std::vector<std::uint8_t> luma(frame.plane_size());
    for (std::size_t i = 0; i < luma.size(); ++i) {
        luma[i] = quantize_sample(0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i]);
    }
    return Frame(frame.width(), frame.height(), Layout::Gray, std::move(luma));
}

VideoSequence::VideoSequence(std::vector<Frame> frames, FrameRate rate) : rate_(rate) {
    frames_.reserve(frames.size());
    for (auto& f : frames) push_back(std::move(f));
}

void VideoSequence::push_back(Frame frame) {
    if (!frames_.empty() && !frames_.front().same_shape(frame)) {
        throw DimensionError("frame " + std::to_string(frames_.size() + 1) + " is " +
                             std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                             ", sequence is " + std::to_string(width()) + "x" +
                             std::to_string(height()));
    }
    frames_.push_back(std::move(frame));
}

}  // namespace svt
