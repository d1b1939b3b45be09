#include "svt/sequence_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "svt/error.hpp"

namespace fs = std::filesystem;

namespace svt {

namespace {

constexpr const char* kDirectoryHeader = "sequence.hdr";

int chroma_side(int n) { return (n + 1) / 2; }

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

long parse_long(const std::string& text, const std::string& key) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FormatError("bad value for '" + key + "': '" + text + "'");
    }
    return value;
}

FrameRate parse_rate(const std::string& text) {
    auto slash = text.find('/');
    FrameRate rate;
    if (slash == std::string::npos) {
        rate.num = static_cast<std::uint32_t>(parse_long(text, "fps"));
        rate.den = 1;
    } else {
        rate.num = static_cast<std::uint32_t>(parse_long(text.substr(0, slash), "fps"));
        rate.den = static_cast<std::uint32_t>(parse_long(text.substr(slash + 1), "fps"));
    }
    if (rate.num == 0 || rate.den == 0) throw FormatError("frame rate must be positive: " + text);
    return rate;
}

std::array<std::uint8_t, 3> rgb_to_yuv(double r, double g, double b) {
    return {quantize_sample(0.299 * r + 0.587 * g + 0.114 * b),
            quantize_sample(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b),
            quantize_sample(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b)};
}

std::array<std::uint8_t, 3> yuv_to_rgb(double y, double cb, double cr) {
    return {quantize_sample(y + 1.402 * (cr - 128.0)),
            quantize_sample(y - 0.344136 * (cb - 128.0) - 0.714136 * (cr - 128.0)),
            quantize_sample(y + 1.772 * (cb - 128.0))};
}

}  // namespace

fs::path sidecar_path(const fs::path& raw_path) {
    fs::path p = raw_path;
    p.replace_extension(".hdr");
    return p;
}

void write_sidecar(const fs::path& path, const SidecarHeader& header) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << "width=" << header.width << "\n"
        << "height=" << header.height << "\n"
        << "fps=" << header.fps.num << "/" << header.fps.den << "\n"
        << "frames=" << header.frames << "\n";
    if (header.layout) out << "layout=" << layout_name(*header.layout) << "\n";
}

SidecarHeader read_sidecar(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read sidecar header " + path.string());
    SidecarHeader header;
    bool has_w = false, has_h = false, has_frames = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("bad sidecar line: '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "width") {
            header.width = static_cast<int>(parse_long(value, key));
            has_w = true;
        } else if (key == "height") {
            header.height = static_cast<int>(parse_long(value, key));
            has_h = true;
        } else if (key == "fps") {
            header.fps = parse_rate(value);
        } else if (key == "frames") {
            header.frames = static_cast<std::size_t>(parse_long(value, key));
            has_frames = true;
        } else if (key == "layout") {
            header.layout = layout_from_name(value);
        }
    }
    if (!has_w || !has_h || !has_frames) {
        throw FormatError("sidecar " + path.string() + " needs width, height and frames");
    }
    return header;
}

std::size_t raw420_frame_bytes(int width, int height) {
    return static_cast<std::size_t>(width) * height +
           2 * static_cast<std::size_t>(chroma_side(width)) * chroma_side(height);
}

Frame convert_layout(const Frame& frame, Layout target) {
    if (frame.layout() == target) return frame;
    if (target == Layout::Gray) return to_luma(frame);

    const int w = frame.width();
    const int h = frame.height();
    Frame out(w, h, target);
    if (frame.layout() == Layout::Gray) {
        auto y = frame.plane(0);
        std::copy(y.begin(), y.end(), out.plane(0).begin());
        if (target == Layout::Yuv) {
            std::fill(out.plane(1).begin(), out.plane(1).end(), 128);
            std::fill(out.plane(2).begin(), out.plane(2).end(), 128);
        } else {
            std::copy(y.begin(), y.end(), out.plane(1).begin());
            std::copy(y.begin(), y.end(), out.plane(2).begin());
        }
        return out;
    }
    auto a = frame.plane(0);
    auto b = frame.plane(1);
    auto c = frame.plane(2);
    for (std::size_t i = 0; i < frame.plane_size(); ++i) {
        auto px = frame.layout() == Layout::Rgb ? rgb_to_yuv(a[i], b[i], c[i]) : yuv_to_rgb(a[i], b[i], c[i]);
        out.plane(0)[i] = px[0];
        out.plane(1)[i] = px[1];
        out.plane(2)[i] = px[2];
    }
    return out;
}

std::vector<std::uint8_t> encode_raw420(const Frame& frame) {
    const Frame yuv = convert_layout(frame, Layout::Yuv);
    const int w = yuv.width();
    const int h = yuv.height();
    const int cw = chroma_side(w);
    const int ch = chroma_side(h);
    std::vector<std::uint8_t> bytes;
    bytes.reserve(raw420_frame_bytes(w, h));
    auto luma = yuv.plane(0);
    bytes.insert(bytes.end(), luma.begin(), luma.end());
    for (int c = 1; c <= 2; ++c) {
        for (int cy = 0; cy < ch; ++cy) {
            for (int cx = 0; cx < cw; ++cx) {
                int sum = 0;
                int count = 0;
                for (int y = 2 * cy; y < std::min(2 * cy + 2, h); ++y) {
                    for (int x = 2 * cx; x < std::min(2 * cx + 2, w); ++x) {
                        sum += yuv.at(x, y, c);
                        ++count;
                    }
                }
                bytes.push_back(quantize_sample(static_cast<double>(sum) / count));
            }
        }
    }
    return bytes;
}

Frame decode_raw420(std::span<const std::uint8_t> bytes, int width, int height) {
    if (bytes.size() != raw420_frame_bytes(width, height)) {
        throw FormatError("4:2:0 frame needs " + std::to_string(raw420_frame_bytes(width, height)) +
                          " bytes, got " + std::to_string(bytes.size()));
    }
    Frame frame(width, height, Layout::Yuv);
    const std::size_t luma = frame.plane_size();
    std::copy(bytes.begin(), bytes.begin() + luma, frame.plane(0).begin());
    const int cw = chroma_side(width);
    const std::size_t chroma = static_cast<std::size_t>(cw) * chroma_side(height);
    for (int c = 1; c <= 2; ++c) {
        auto src = bytes.subspan(luma + (c - 1) * chroma, chroma);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                frame.at(x, y, c) = src[static_cast<std::size_t>(y / 2) * cw + x / 2];
            }
        }
    }
    return frame;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("short write to " + path.string());
}

void write_raw(const fs::path& path, const VideoSequence& seq) {
    if (seq.empty()) throw DataError("cannot write an empty sequence");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    for (const auto& frame : seq) {
        auto bytes = encode_raw420(frame);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
    if (!out) throw FormatError("short write to " + path.string());
    write_sidecar(sidecar_path(path),
                  {seq.width(), seq.height(), seq.frame_rate(), seq.size(), seq.layout()});
}

namespace {

VideoSequence decode_raw_bytes(const std::vector<std::uint8_t>& bytes, int width, int height, FrameRate fps,
                               std::optional<Layout> layout, const fs::path& path) {
    const std::size_t frame_bytes = raw420_frame_bytes(width, height);
    if (bytes.empty() || bytes.size() % frame_bytes != 0) {
        throw FormatError(path.string() + ": size " + std::to_string(bytes.size()) +
                          " is not a multiple of the " + std::to_string(frame_bytes) + "-byte frame");
    }
    VideoSequence seq({}, fps);
    std::span<const std::uint8_t> all(bytes);
    for (std::size_t off = 0; off < bytes.size(); off += frame_bytes) {
        Frame frame = decode_raw420(all.subspan(off, frame_bytes), width, height);
        seq.push_back(layout ? convert_layout(frame, *layout) : std::move(frame));
    }
    return seq;
}

}  // namespace

VideoSequence read_raw(const fs::path& path) {
    SidecarHeader header = read_sidecar(sidecar_path(path));
    auto bytes = read_file(path);
    VideoSequence seq = decode_raw_bytes(bytes, header.width, header.height, header.fps, header.layout, path);
    if (seq.size() != header.frames) {
        throw FormatError(path.string() + ": sidecar declares " + std::to_string(header.frames) +
                          " frames, file holds " + std::to_string(seq.size()));
    }
    return seq;
}

VideoSequence read_raw(const fs::path& path, int width, int height, FrameRate fps) {
    return decode_raw_bytes(read_file(path), width, height, fps, std::nullopt, path);
}

void write_png(const fs::path& path, const Frame& frame) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frame.width());
    image.height = static_cast<png_uint_32>(frame.height());
    image.format = frame.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

    // libpng wants interleaved samples.
    std::vector<std::uint8_t> packed(frame.samples().size());
    const int channels = frame.channels();
    for (int c = 0; c < channels; ++c) {
        auto plane = frame.plane(c);
        for (std::size_t i = 0; i < plane.size(); ++i) packed[i * channels + c] = plane[i];
    }
    if (!png_image_write_to_file(&image, path.c_str(), 0, packed.data(), 0, nullptr)) {
        throw FormatError("cannot write " + path.string() + ": " + image.message);
    }
}

Frame read_png(const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw FormatError("cannot read " + path.string() + ": " + image.message);
    }
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int channels = color ? 3 : 1;
    std::vector<std::uint8_t> packed(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, packed.data(), 0, nullptr)) {
        png_image_free(&image);
        throw FormatError("cannot decode " + path.string() + ": " + image.message);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    Frame frame(w, h, color ? Layout::Rgb : Layout::Gray);
    for (int c = 0; c < channels; ++c) {
        auto plane = frame.plane(c);
        for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = packed[i * channels + c];
    }
    return frame;
}

void write_png_directory(const fs::path& dir, const VideoSequence& seq) {
    if (seq.empty()) throw DataError("cannot write an empty sequence");
    fs::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::snprintf(name, sizeof(name), "%06zu.png", i + 1);
        write_png(dir / name, seq[i]);
    }
    write_sidecar(dir / kDirectoryHeader,
                  {seq.width(), seq.height(), seq.frame_rate(), seq.size(), seq.layout()});
}

VideoSequence read_png_directory(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir.string());
    static const std::regex pattern(R"((\d{6})\.png)");
    std::vector<std::pair<long, fs::path>> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pattern)) files.emplace_back(std::stol(m[1]), entry.path());
    }
    if (files.empty()) throw FormatError(dir.string() + " holds no NNNNNN.png frames");
    std::sort(files.begin(), files.end());
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (files[i].first != static_cast<long>(i + 1)) {
            throw FormatError(dir.string() + ": frame numbering must run 1..N without gaps");
        }
    }

    std::optional<SidecarHeader> header;
    if (fs::exists(dir / kDirectoryHeader)) header = read_sidecar(dir / kDirectoryHeader);

    VideoSequence seq({}, header ? header->fps : FrameRate{});
    for (const auto& [index, path] : files) {
        Frame frame = read_png(path);
        if (!seq.empty() && (frame.width() != seq.width() || frame.height() != seq.height())) {
            throw DimensionError(path.string() + " is " + std::to_string(frame.width()) + "x" +
                                 std::to_string(frame.height()) + ", expected " +
                                 std::to_string(seq.width()) + "x" + std::to_string(seq.height()));
        }
        if (header && header->layout) {
            // Yuv samples are stored verbatim in the RGB channels.
            if (*header->layout == Layout::Yuv && frame.layout() == Layout::Rgb) {
                auto samples = frame.samples();
                frame = Frame(frame.width(), frame.height(), Layout::Yuv,
                              std::vector<std::uint8_t>(samples.begin(), samples.end()));
            } else {
                frame = convert_layout(frame, *header->layout);
            }
        }
        seq.push_back(std::move(frame));
    }
    return seq;
}

SequenceFormat detect_format(const fs::path& path) {
    return fs::is_directory(path) ? SequenceFormat::PngDirectory : SequenceFormat::Raw420;
}

VideoSequence read_sequence(const fs::path& path, std::optional<SequenceFormat> format) {
    if (!fs::exists(path)) throw FormatError("no such file or directory: " + path.string());
    switch (format.value_or(detect_format(path))) {
        case SequenceFormat::Raw420: return read_raw(path);
        case SequenceFormat::PngDirectory: return read_png_directory(path);
    }
    return {};
}

void write_sequence(const fs::path& path, const VideoSequence& seq, SequenceFormat format) {
    switch (format) {
        case SequenceFormat::Raw420: write_raw(path, seq); break;
        case SequenceFormat::PngDirectory: write_png_directory(path, seq); break;
    }
}

}  // namespace svt
