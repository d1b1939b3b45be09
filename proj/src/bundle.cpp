#include "svt/bundle.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "svt/error.hpp"

namespace svt {

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks.
    std::size_t off = 0;
    while (off < bytes.size()) {
        const auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
        crc = ::crc32(crc, bytes.data() + off, n);
        off += n;
    }
    return static_cast<std::uint32_t>(crc);
}

namespace {

constexpr std::size_t kSectionFraming = 8;

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    std::size_t size() const { return out_.size(); }
    std::span<const std::uint8_t> view(std::size_t from, std::size_t to) const {
        return std::span<const std::uint8_t>(out_).subspan(from, to - from);
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::span<const std::uint8_t> take(std::size_t n, const char* what) {
        if (in_.size() - pos_ < n) {
            throw FormatError(std::string("truncated bundle: ") + what + " needs " + std::to_string(n) +
                              " bytes, " + std::to_string(in_.size() - pos_) + " left");
        }
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint8_t u8(const char* what) { return take(1, what)[0]; }
    std::uint16_t u16(const char* what) {
        auto s = take(2, what);
        return static_cast<std::uint16_t>(s[0] | (s[1] << 8));
    }
    std::uint32_t u32(const char* what) {
        auto s = take(4, what);
        return static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
               (static_cast<std::uint32_t>(s[2]) << 16) | (static_cast<std::uint32_t>(s[3]) << 24);
    }
    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

struct ParsedHeader {
    BundleMeta meta;
    std::vector<std::uint32_t> keys;
    std::vector<std::uint32_t> redundant;
    std::size_t header_bytes = 0;
};

struct ParsedSections {
    std::span<const std::uint8_t> lr;
    std::vector<std::span<const std::uint8_t>> keys;
};

CodecId codec_from_byte(std::uint8_t b) {
    if (b > 1) throw FormatError("unknown codec id " + std::to_string(b));
    return static_cast<CodecId>(b);
}

Layout layout_from_byte(std::uint8_t b) {
    if (b < 1 || b > 3) throw FormatError("unknown layout id " + std::to_string(b));
    return static_cast<Layout>(b);
}

void check_indices(const KeyFrameIndex& keys, const RedundancyIndex& redundant, std::uint32_t frame_count) {
    keys.check_range(frame_count, 1);
    redundant.check_range(frame_count, 2);
    for (auto r : redundant) {
        if (keys.contains(r)) throw IndexError("frame " + std::to_string(r) + " is both key and redundant");
    }
}

ParsedHeader parse_header(Reader& in) {
    ParsedHeader h;
    auto magic = in.take(4, "magic");
    if (!std::equal(magic.begin(), magic.end(), std::begin(kBundleMagic))) throw FormatError("bad bundle magic");
    const auto version = in.u16("version");
    if (version != kBundleVersion) throw FormatError("unsupported bundle version " + std::to_string(version));
    h.meta.layout = layout_from_byte(in.u8("layout"));
    h.meta.lr_codec = codec_from_byte(in.u8("lr codec"));
    h.meta.key_codec = codec_from_byte(in.u8("key codec"));
    in.take(3, "reserved");
    h.meta.hr_width = static_cast<int>(in.u32("width"));
    h.meta.hr_height = static_cast<int>(in.u32("height"));
    h.meta.fps.num = in.u32("fps numerator");
    h.meta.fps.den = in.u32("fps denominator");
    h.meta.frame_count = in.u32("frame count");
    const auto key_count = in.u32("key count");
    const auto redundant_count = in.u32("redundant count");
    if (key_count > h.meta.frame_count || redundant_count > h.meta.frame_count) {
        throw FormatError("index counts exceed frame count");
    }
    for (std::uint32_t i = 0; i < key_count; ++i) h.keys.push_back(in.u32("key index"));
    for (std::uint32_t i = 0; i < redundant_count; ++i) h.redundant.push_back(in.u32("redundant index"));
    return h;
}

ParsedHeader verified_header(std::span<const std::uint8_t> bytes, Reader& in) {
    ParsedHeader h = parse_header(in);
    const std::size_t covered = in.pos();
    const auto stored = in.u32("header crc");
    if (stored != crc32(bytes.subspan(0, covered))) throw CorruptionError("header CRC mismatch");
    h.header_bytes = in.pos();
    if (h.meta.hr_width % 4 != 0 || h.meta.hr_height % 4 != 0 || h.meta.lr_width() < kMinFrameSide ||
        h.meta.lr_height() < kMinFrameSide) {
        throw FormatError("bad HR dimensions in bundle header");
    }
    if (h.meta.fps.num == 0 || h.meta.fps.den == 0) throw FormatError("bad frame rate in bundle header");
    return h;
}

std::span<const std::uint8_t> read_section(Reader& in, const char* what) {
    const auto length = in.u32(what);
    auto payload = in.take(length, what);
    const auto stored = in.u32(what);
    if (stored != crc32(payload)) throw CorruptionError(std::string(what) + " CRC mismatch");
    return payload;
}

ParsedSections read_sections(Reader& in, std::size_t key_count) {
    ParsedSections s;
    s.lr = read_section(in, "LR section");
    for (std::size_t i = 0; i < key_count; ++i) s.keys.push_back(read_section(in, "key-frame section"));
    if (in.remaining() != 0) {
        throw FormatError(std::to_string(in.remaining()) + " trailing bytes after the last section");
    }
    return s;
}

}  // namespace

std::vector<std::uint8_t> pack(const BundleContents& c, const CodecAdapter& codec) {
    const BundleMeta& m = c.meta;
    if (m.hr_width % 4 != 0 || m.hr_height % 4 != 0) throw DimensionError("HR dimensions must be divisible by 4");
    if (m.frame_count == 0) throw DataError("bundle needs at least one frame");
    check_indices(c.keys, c.redundant, m.frame_count);
    if (c.lr.size() + c.redundant.size() != m.frame_count) {
        throw DataError("bundle carries " + std::to_string(c.lr.size()) + " LR frames, expected " +
                        std::to_string(m.frame_count - c.redundant.size()));
    }
    if (c.keyframes.size() != c.keys.size()) throw DataError("key-frame count does not match key indices");
    if (!c.lr.empty() && (c.lr.width() != m.lr_width() || c.lr.height() != m.lr_height() || c.lr.layout() != m.layout)) {
        throw DimensionError("LR frames do not match the bundle geometry");
    }
    for (const auto& k : c.keyframes) {
        if (k.width() != m.hr_width || k.height() != m.hr_height || k.layout() != m.layout) {
            throw DimensionError("key frame does not match the bundle geometry");
        }
    }

    Writer out;
    out.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(kBundleMagic), 4));
    out.u16(kBundleVersion);
    out.u8(static_cast<std::uint8_t>(m.layout));
    out.u8(static_cast<std::uint8_t>(codec.video_codec()));
    out.u8(static_cast<std::uint8_t>(codec.image_codec()));
    for (int i = 0; i < 3; ++i) out.u8(0);
    out.u32(static_cast<std::uint32_t>(m.hr_width));
    out.u32(static_cast<std::uint32_t>(m.hr_height));
    out.u32(m.fps.num);
    out.u32(m.fps.den);
    out.u32(m.frame_count);
    out.u32(static_cast<std::uint32_t>(c.keys.size()));
    out.u32(static_cast<std::uint32_t>(c.redundant.size()));
    for (auto k : c.keys) out.u32(k);
    for (auto r : c.redundant) out.u32(r);
    out.u32(crc32(out.view(0, out.size())));

    auto section = [&](const std::vector<std::uint8_t>& payload) {
        if (payload.size() > 0xFFFFFFFFull) throw DataError("section exceeds 4 GiB");
        out.u32(static_cast<std::uint32_t>(payload.size()));
        out.bytes(payload);
        out.u32(crc32(payload));
    };
    section(codec.encode_video(c.lr));
    for (const auto& k : c.keyframes) section(codec.encode_image(k));
    return out.take();
}

BundleContents unpack(std::span<const std::uint8_t> bytes, const CodecAdapter& codec) {
    Reader in(bytes);
    ParsedHeader h = verified_header(bytes, in);
    BundleContents c;
    c.meta = h.meta;
    c.keys = KeyFrameIndex(std::move(h.keys));
    c.redundant = RedundancyIndex(std::move(h.redundant));
    check_indices(c.keys, c.redundant, c.meta.frame_count);
    const ParsedSections s = read_sections(in, c.keys.size());

    const BundleMeta& m = c.meta;
    c.lr = codec.decode_video(m.lr_codec, s.lr, m.lr_width(), m.lr_height(), m.layout, m.fps,
                              m.frame_count - c.redundant.size());
    for (const auto& payload : s.keys) {
        c.keyframes.push_back(codec.decode_image(m.key_codec, payload, m.hr_width, m.hr_height, m.layout));
    }
    return c;
}

BundleMeta read_meta(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    return verified_header(bytes, in).meta;
}

SectionBits measure_bits(std::span<const std::uint8_t> bytes) {
    Reader in(bytes);
    ParsedHeader h = verified_header(bytes, in);
    const ParsedSections s = read_sections(in, h.keys.size());
    SectionBits bits;
    bits.header = 8ull * h.header_bytes;
    bits.framing = 8ull * kSectionFraming * (1 + s.keys.size());
    bits.lr = 8ull * s.lr.size();
    for (const auto& k : s.keys) bits.keys += 8ull * k.size();
    return bits;
}

std::vector<BppRow> bpp_rows(const SectionBits& bits, const BundleMeta& meta) {
    auto row = [&](std::string label, std::uint64_t b) {
        return BppRow{std::move(label), static_cast<double>(b), meta.hr_width, meta.hr_height, meta.frame_count};
    };
    return {row("lr_stream", bits.lr), row("key_frames", bits.keys), row("overhead", bits.overhead())};
}

}  // namespace svt
