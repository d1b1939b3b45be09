#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "svt/frame.hpp"

namespace svt {

enum class SequenceFormat { Raw420, PngDirectory };

/// Contents of a `key=value` sidecar header (`width=`, `height=`, `fps=`,
/// `frames=`, optional `layout=`).
struct SidecarHeader {
    int width = 0;
    int height = 0;
    FrameRate fps;
    std::size_t frames = 0;
    std::optional<Layout> layout;
};

/// `clip.raw` -> `clip.hdr`.
std::filesystem::path sidecar_path(const std::filesystem::path& raw_path);

void write_sidecar(const std::filesystem::path& path, const SidecarHeader& header);
SidecarHeader read_sidecar(const std::filesystem::path& path);

/// Bytes in one planar 8-bit 4:2:0 frame (chroma planes are ceil(w/2) x ceil(h/2)).
std::size_t raw420_frame_bytes(int width, int height);

/// Raw planar 4:2:0 encoding of a frame. Gray frames get neutral (128) chroma;
/// Rgb frames are converted with full-range BT.601.
std::vector<std::uint8_t> encode_raw420(const Frame& frame);
/// Decodes one 4:2:0 frame into a Yuv frame with 2x2-replicated chroma.
Frame decode_raw420(std::span<const std::uint8_t> bytes, int width, int height);

/// Converts a Yuv-decoded frame back to the requested layout.
Frame convert_layout(const Frame& frame, Layout target);

void write_raw(const std::filesystem::path& path, const VideoSequence& seq);
/// Reads a raw file using its sidecar header.
VideoSequence read_raw(const std::filesystem::path& path);
/// Reads a raw file of known geometry; the frame count follows from the size.
VideoSequence read_raw(const std::filesystem::path& path, int width, int height, FrameRate fps);

void write_png(const std::filesystem::path& path, const Frame& frame);
Frame read_png(const std::filesystem::path& path);

/// Directory of `000001.png`, `000002.png`, ... plus `sequence.hdr`.
void write_png_directory(const std::filesystem::path& dir, const VideoSequence& seq);
VideoSequence read_png_directory(const std::filesystem::path& dir);

SequenceFormat detect_format(const std::filesystem::path& path);
VideoSequence read_sequence(const std::filesystem::path& path, std::optional<SequenceFormat> format = {});
void write_sequence(const std::filesystem::path& path, const VideoSequence& seq, SequenceFormat format);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace svt
