#include <gtest/gtest.h>

#include <random>

#include "svt/bundle.hpp"
#include "svt/error.hpp"
#include "svt/redundancy.hpp"
#include "synth.hpp"

using namespace svt;

namespace {

BundleContents make_contents(std::mt19937& rng, int w, int h, int T, Layout layout = Layout::Gray) {
    BundleContents c;
    c.meta.hr_width = w;
    c.meta.hr_height = h;
    c.meta.layout = layout;
    c.meta.fps = {30, 1};
    c.meta.frame_count = static_cast<std::uint32_t>(T);
    std::vector<std::uint32_t> keys, red;
    std::bernoulli_distribution coin(0.3);
    for (int t = 1; t <= T; ++t) {
        if (t == 1 || (t % 5 == 1)) keys.push_back(t);
        else if (coin(rng)) red.push_back(t);
    }
    c.keys = KeyFrameIndex(keys);
    c.redundant = RedundancyIndex(red);
    c.lr = synth::random_video(rng, w / 4, h / 4, T - static_cast<int>(red.size()), layout);
    c.lr.set_frame_rate(c.meta.fps);
    for (std::size_t i = 0; i < keys.size(); ++i) c.keyframes.push_back(synth::random_frame(rng, w, h, layout));
    return c;
}

void expect_same(const BundleContents& a, const BundleContents& b) {
    EXPECT_EQ(a.meta, b.meta);
    EXPECT_EQ(a.lr, b.lr);
    EXPECT_EQ(a.keyframes, b.keyframes);
    EXPECT_EQ(a.keys, b.keys);
    EXPECT_EQ(a.redundant, b.redundant);
}

CodecCommands gzip_xz() {
    CodecCommands c;
    c.video_encode = "gzip -c {input} > {output}";
    c.video_decode = "gzip -dc {input} > {output}";
    c.image_encode = "xz -c {input} > {output}";
    c.image_decode = "xz -dc {input} > {output}";
    return c;
}

}  // namespace

TEST(Bundle, RawRoundTrip) {
    std::mt19937 rng(20);
    for (Layout l : {Layout::Gray, Layout::Rgb, Layout::Yuv}) {
        const BundleContents c = make_contents(rng, 32, 24, 12, l);
        const auto bytes = pack(c);
        expect_same(unpack(bytes), c);
        EXPECT_EQ(measure_bits(bytes).total(), bytes.size() * 8);
    }
}

TEST(Bundle, SingleKeyNoRedundancy) {
    BundleContents c;
    c.meta.hr_width = 16;
    c.meta.hr_height = 16;
    c.meta.frame_count = 1;
    c.lr.push_back(Frame(4, 4, Layout::Gray, 3));
    c.keyframes.push_back(Frame(16, 16, Layout::Gray, 9));
    c.keys = KeyFrameIndex({1});
    const auto bytes = pack(c);
    expect_same(unpack(bytes), c);
    EXPECT_EQ(read_meta(bytes).frame_count, 1u);
}

TEST(Bundle, EveryByteCorruptionDetected) {
    std::mt19937 rng(21);
    const BundleContents c = make_contents(rng, 16, 16, 6);
    const auto bytes = pack(c);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        auto bad = bytes;
        bad[i] ^= 0x5a;
        EXPECT_THROW(unpack(bad), FormatError) << "byte " << i;
    }
}

TEST(Bundle, TruncationAndTrailingBytes) {
    std::mt19937 rng(22);
    const auto bytes = pack(make_contents(rng, 16, 16, 6));
    for (std::size_t n : {std::size_t{0}, std::size_t{3}, std::size_t{39}, bytes.size() / 2, bytes.size() - 1}) {
        EXPECT_THROW(unpack(std::span(bytes).first(n)), FormatError) << n;
    }
    auto longer = bytes;
    longer.push_back(0);
    EXPECT_THROW(unpack(longer), FormatError);
}

TEST(Bundle, BadMagicAndVersion) {
    std::mt19937 rng(23);
    auto bytes = pack(make_contents(rng, 16, 16, 4));
    auto m = bytes;
    m[0] = 'X';
    EXPECT_THROW(unpack(m), FormatError);
    auto v = bytes;
    v[4] = 9;
    EXPECT_THROW(unpack(v), FormatError);
}

TEST(Bundle, PackValidatesContents) {
    std::mt19937 rng(24);
    BundleContents c = make_contents(rng, 16, 16, 6);
    BundleContents overlap = c;
    overlap.redundant = RedundancyIndex({1});
    EXPECT_THROW(pack(overlap), IndexError);
    BundleContents shared = c;
    shared.redundant = RedundancyIndex({c.keys[1]});
    EXPECT_THROW(pack(shared), Error);
    BundleContents count = c;
    count.keyframes.pop_back();
    EXPECT_THROW(pack(count), DataError);
    BundleContents dims = c;
    dims.meta.hr_width = 18;
    EXPECT_THROW(pack(dims), DimensionError);
    BundleContents range = c;
    range.keys = KeyFrameIndex({1, 99});
    range.keyframes.resize(2, c.keyframes[0]);
    EXPECT_THROW(pack(range), IndexError);
    BundleContents lr = c;
    lr.lr.push_back(lr.lr[0]);
    EXPECT_THROW(pack(lr), DataError);
}

TEST(Bundle, RawLumaLrSectionIsHalfBpp) {
    BundleContents c;
    c.meta.hr_width = 64;
    c.meta.hr_height = 32;
    c.meta.frame_count = 5;
    for (int t = 0; t < 5; ++t) c.lr.push_back(Frame(16, 8));
    c.keyframes.push_back(Frame(64, 32));
    c.keys = KeyFrameIndex({1});
    const auto rows = bpp_rows(measure_bits(pack(c)), c.meta);
    EXPECT_DOUBLE_EQ(rows[0].bpp(), 0.5);
}

TEST(Bundle, HeaderOverheadNegligibleAt720p) {
    // Header and framing bits only depend on index counts, not on frame size.
    BundleContents c;
    c.meta.hr_width = 1280;
    c.meta.hr_height = 720;
    c.meta.frame_count = 100;
    for (int t = 0; t < 100; ++t) c.lr.push_back(Frame(320, 180));
    for (std::uint32_t k : {1u, 34u, 67u, 100u}) c.keyframes.push_back(Frame(1280, 720));
    c.keys = KeyFrameIndex({1, 34, 67, 100});
    const auto bits = measure_bits(pack(c));
    const auto rows = bpp_rows(bits, c.meta);
    EXPECT_LT(rows[2].bpp(), 0.001);
    EXPECT_EQ(bits.total(), bits.header + bits.framing + bits.lr + bits.keys);
}

TEST(Bundle, ExternalCodecRoundTrip) {
    std::mt19937 rng(25);
    const BundleContents c = make_contents(rng, 32, 16, 8);
    const CodecAdapter codec(gzip_xz());
    const auto bytes = pack(c, codec);
    EXPECT_EQ(read_meta(bytes).lr_codec, CodecId::External);
    EXPECT_EQ(read_meta(bytes).key_codec, CodecId::External);
    // gzip/xz are lossless, so even the external path is exact here.
    expect_same(unpack(bytes, codec), [&] {
        BundleContents e = c;
        e.meta.lr_codec = e.meta.key_codec = CodecId::External;
        return e;
    }());
    EXPECT_THROW(unpack(bytes), ConfigError);
}

TEST(Bundle, ExternalCodecFailureSurfaces) {
    std::mt19937 rng(26);
    CodecCommands bad = gzip_xz();
    bad.video_encode = "false";
    EXPECT_THROW(pack(make_contents(rng, 16, 16, 4), CodecAdapter(bad)), ExternalProcessError);
}

TEST(Bundle, Crc32KnownValue) {
    const std::string s = "123456789";
    EXPECT_EQ(crc32(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())), 0xCBF43926u);
}
