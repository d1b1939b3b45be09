#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "svt/codec.hpp"
#include "svt/frame.hpp"
#include "svt/index_set.hpp"
#include "svt/metrics.hpp"

namespace svt {

inline constexpr char kBundleMagic[4] = {'S', 'V', 'B', '1'};
inline constexpr std::uint16_t kBundleVersion = 1;

struct BundleMeta {
    int hr_width = 0;
    int hr_height = 0;
    Layout layout = Layout::Gray;
    FrameRate fps;
    std::uint32_t frame_count = 0;  ///< original T, before redundancy dropping
    CodecId lr_codec = CodecId::Raw;
    CodecId key_codec = CodecId::Raw;

    int lr_width() const { return hr_width / 4; }
    int lr_height() const { return hr_height / 4; }
    bool operator==(const BundleMeta&) const = default;
};

/// Everything that travels in one code stream.
struct BundleContents {
    BundleMeta meta;
    VideoSequence lr;              ///< surviving LR frames, T - |redundant| of them
    std::vector<Frame> keyframes;  ///< HR key frames, one per key index
    KeyFrameIndex keys;
    RedundancyIndex redundant;
};

/// Bit counts per container region; they sum to the container size.
struct SectionBits {
    std::uint64_t header = 0;   ///< fixed header, index lists, header CRC
    std::uint64_t framing = 0;  ///< per-section length prefixes and CRCs
    std::uint64_t lr = 0;       ///< LR payload
    std::uint64_t keys = 0;     ///< all key-frame payloads

    std::uint64_t overhead() const { return header + framing; }
    std::uint64_t total() const { return header + framing + lr + keys; }
};

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Validates the contents, encodes each section with `codec`, serialises.
/// meta.lr_codec / meta.key_codec are taken from the adapter.
std::vector<std::uint8_t> pack(const BundleContents& contents, const CodecAdapter& codec = {});

/// Parses and verifies a container; nothing is decoded before every CRC checks out.
BundleContents unpack(std::span<const std::uint8_t> bytes, const CodecAdapter& codec = {});

BundleMeta read_meta(std::span<const std::uint8_t> bytes);
SectionBits measure_bits(std::span<const std::uint8_t> bytes);

/// LR stream, key frames and overhead as bpp rows over HR width x height x T.
std::vector<BppRow> bpp_rows(const SectionBits& bits, const BundleMeta& meta);

}  // namespace svt
