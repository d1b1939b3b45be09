#include <gtest/gtest.h>

#include "svt/error.hpp"
#include "svt/frame.hpp"

using namespace svt;

TEST(Frame, RejectsTinyOrMismatchedSamples) {
    EXPECT_THROW(Frame(3, 8), DimensionError);
    EXPECT_THROW(Frame(8, 8, Layout::Rgb, std::vector<std::uint8_t>(64)), DimensionError);
    Frame f(8, 4, Layout::Rgb, 7);
    EXPECT_EQ(f.samples().size(), 96u);
    EXPECT_EQ(f.plane(2).size(), 32u);
}

TEST(Frame, PlanarIndexing) {
    Frame f(4, 4, Layout::Rgb);
    f.at(1, 2, 1) = 9;
    EXPECT_EQ(f.samples()[16 + 2 * 4 + 1], 9);
}

TEST(Frame, QuantizeRoundsHalfAwayAndClamps) {
    EXPECT_EQ(quantize_sample(-3.0), 0);
    EXPECT_EQ(quantize_sample(300.0), 255);
    EXPECT_EQ(quantize_sample(2.5), 3);
    EXPECT_EQ(quantize_sample(2.4999), 2);
}

TEST(Frame, LumaBt601) {
    Frame f(4, 4, Layout::Rgb);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            f.at(x, y, 0) = 200;
            f.at(x, y, 1) = 100;
            f.at(x, y, 2) = 50;
        }
    const Frame l = to_luma(f);
    EXPECT_EQ(l.layout(), Layout::Gray);
    EXPECT_EQ(l.at(0, 0), 124);  // 59.8 + 58.7 + 5.7
    Frame yuv(4, 4, Layout::Yuv, 0);
    yuv.at(2, 2, 0) = 77;
    EXPECT_EQ(to_luma(yuv).at(2, 2), 77);
}

TEST(Frame, SequenceRequiresOneShape) {
    VideoSequence s;
    s.push_back(Frame(8, 8));
    EXPECT_THROW(s.push_back(Frame(8, 12)), DimensionError);
    EXPECT_THROW(s.push_back(Frame(8, 8, Layout::Rgb)), DimensionError);
    EXPECT_EQ(s.size(), 1u);
}

TEST(Frame, LayoutNames) {
    for (Layout l : {Layout::Gray, Layout::Rgb, Layout::Yuv}) EXPECT_EQ(layout_from_name(layout_name(l)), l);
    EXPECT_THROW(layout_from_name("cmyk"), Error);
}
