#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svt/frame.hpp"

namespace svt {

enum class CodecId : std::uint8_t { Raw = 0, External = 1 };

/// Shell command templates for external encoders. Placeholders:
/// {input} {output} {width} {height} {fps} {frames}. Video commands exchange
/// raw planar 4:2:0 files, image commands exchange PNG files.
struct CodecCommands {
    std::string video_encode;
    std::string video_decode;
    std::string image_encode;
    std::string image_decode;

    bool has_video() const { return !video_encode.empty() && !video_decode.empty(); }
    bool has_image() const { return !image_encode.empty() && !image_decode.empty(); }
};

/// Raw mode stores planar samples verbatim; external mode shells out to the
/// configured commands. Video and image streams pick their mode independently.
class CodecAdapter {
public:
    CodecAdapter() = default;
    explicit CodecAdapter(CodecCommands commands);

    static CodecAdapter raw() { return CodecAdapter(); }

    CodecId video_codec() const { return commands_.has_video() ? CodecId::External : CodecId::Raw; }
    CodecId image_codec() const { return commands_.has_image() ? CodecId::External : CodecId::Raw; }
    const CodecCommands& commands() const { return commands_; }

    std::vector<std::uint8_t> encode_video(const VideoSequence& seq) const;
    VideoSequence decode_video(CodecId codec, std::span<const std::uint8_t> payload, int width, int height,
                               Layout layout, FrameRate fps, std::size_t frame_count) const;

    std::vector<std::uint8_t> encode_image(const Frame& frame) const;
    Frame decode_image(CodecId codec, std::span<const std::uint8_t> payload, int width, int height,
                       Layout layout) const;

private:
    CodecCommands commands_;
};

}  // namespace svt
