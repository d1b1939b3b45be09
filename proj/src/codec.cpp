#include "svt/codec.hpp"

#include <map>

#include "svt/error.hpp"
#include "svt/process.hpp"
#include "svt/sequence_io.hpp"

namespace svt {

namespace {

std::string rate_text(FrameRate fps) { return std::to_string(fps.num) + "/" + std::to_string(fps.den); }

std::map<std::string, std::string> placeholders(const std::filesystem::path& in, const std::filesystem::path& out,
                                                int width, int height, FrameRate fps, std::size_t frames) {
    return {{"input", shell_quote(in.string())},
            {"output", shell_quote(out.string())},
            {"width", std::to_string(width)},
            {"height", std::to_string(height)},
            {"fps", rate_text(fps)},
            {"frames", std::to_string(frames)}};
}

// PNG round trips store Yuv samples verbatim in the RGB channels.
Frame as_layout(Frame frame, Layout layout) {
    if (layout == Layout::Yuv && frame.layout() == Layout::Rgb) {
        auto s = frame.samples();
        return Frame(frame.width(), frame.height(), Layout::Yuv, std::vector<std::uint8_t>(s.begin(), s.end()));
    }
    return convert_layout(frame, layout);
}

}  // namespace

CodecAdapter::CodecAdapter(CodecCommands commands) : commands_(std::move(commands)) {}

std::vector<std::uint8_t> CodecAdapter::encode_video(const VideoSequence& seq) const {
    if (seq.empty()) return {};
    if (video_codec() == CodecId::Raw) {
        std::vector<std::uint8_t> out;
        out.reserve(seq.size() * seq.front().samples().size());
        for (const auto& f : seq) out.insert(out.end(), f.samples().begin(), f.samples().end());
        return out;
    }
    TempDir dir("svt-venc");
    const auto in = dir.path() / "input.yuv";
    const auto out = dir.path() / "output.bin";
    write_raw(in, seq);
    run_command(expand_template(commands_.video_encode,
                                placeholders(in, out, seq.width(), seq.height(), seq.frame_rate(), seq.size())));
    return read_file(out);
}

VideoSequence CodecAdapter::decode_video(CodecId codec, std::span<const std::uint8_t> payload, int width,
                                         int height, Layout layout, FrameRate fps, std::size_t frame_count) const {
    VideoSequence seq({}, fps);
    if (frame_count == 0) return seq;
    if (codec == CodecId::Raw) {
        const std::size_t frame_bytes = static_cast<std::size_t>(width) * height * channel_count(layout);
        if (payload.size() != frame_bytes * frame_count) {
            throw FormatError("raw video payload holds " + std::to_string(payload.size()) + " bytes, expected " +
                              std::to_string(frame_bytes * frame_count));
        }
        for (std::size_t i = 0; i < frame_count; ++i) {
            auto s = payload.subspan(i * frame_bytes, frame_bytes);
            seq.push_back(Frame(width, height, layout, std::vector<std::uint8_t>(s.begin(), s.end())));
        }
        return seq;
    }
    if (!commands_.has_video()) throw ConfigError("bundle uses an external video codec but none is configured");
    TempDir dir("svt-vdec");
    const auto in = dir.path() / "input.bin";
    const auto out = dir.path() / "output.yuv";
    write_file(in, payload);
    run_command(expand_template(commands_.video_decode, placeholders(in, out, width, height, fps, frame_count)));
    VideoSequence decoded = read_raw(out, width, height, fps);
    if (decoded.size() != frame_count) {
        throw FormatError("external video decoder produced " + std::to_string(decoded.size()) + " frames, expected " +
                          std::to_string(frame_count));
    }
    for (const auto& f : decoded) seq.push_back(convert_layout(f, layout));
    return seq;
}

std::vector<std::uint8_t> CodecAdapter::encode_image(const Frame& frame) const {
    if (image_codec() == CodecId::Raw) return {frame.samples().begin(), frame.samples().end()};
    TempDir dir("svt-ienc");
    const auto in = dir.path() / "input.png";
    const auto out = dir.path() / "output.bin";
    write_png(in, frame);
    run_command(expand_template(commands_.image_encode,
                                placeholders(in, out, frame.width(), frame.height(), {}, 1)));
    return read_file(out);
}

Frame CodecAdapter::decode_image(CodecId codec, std::span<const std::uint8_t> payload, int width, int height,
                                 Layout layout) const {
    if (codec == CodecId::Raw) {
        return Frame(width, height, layout, std::vector<std::uint8_t>(payload.begin(), payload.end()));
    }
    if (!commands_.has_image()) throw ConfigError("bundle uses an external image codec but none is configured");
    TempDir dir("svt-idec");
    const auto in = dir.path() / "input.bin";
    const auto out = dir.path() / "output.png";
    write_file(in, payload);
    run_command(expand_template(commands_.image_decode, placeholders(in, out, width, height, {}, 1)));
    Frame frame = read_png(out);
    if (frame.width() != width || frame.height() != height) {
        throw DimensionError("external image decoder produced " + std::to_string(frame.width()) + "x" +
                             std::to_string(frame.height()) + ", expected " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
    return as_layout(std::move(frame), layout);
}

}  // namespace svt
