#include <gtest/gtest.h>

#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <random>

#include "svt/endcloud.hpp"
#include "svt/error.hpp"
#include "svt/process.hpp"
#include "svt/resample.hpp"
#include "svt/sequence_io.hpp"
#include "synth.hpp"

using namespace svt;

namespace {

VideoSequence static_video(int T) {
    VideoSequence s;
    const Frame bg = synth::background(64, 32, 1);
    for (int t = 0; t < T; ++t) s.push_back(bg);
    return s;
}

EndNodeConfig fixed(int k, bool endpoints = false) {
    EndNodeConfig c;
    c.selection.k = k;
    c.selection.include_endpoints = endpoints;
    return c;
}

std::string stub_command(const std::string& mode) {
    return std::string(SVT_STUB_RECONSTRUCTOR) + " {workdir} " + mode;
}

}  // namespace

TEST(EndNode, StaticVideoExample) {
    const EndProduct p = run_end_pipeline(static_video(10), fixed(5));
    EXPECT_EQ(p.contents.keys.values(), (std::vector<std::uint32_t>{1, 6}));
    EXPECT_EQ(p.contents.redundant.values(), (std::vector<std::uint32_t>{2, 3, 4, 5, 7, 8, 9, 10}));
    EXPECT_EQ(p.contents.lr.size(), 2u);
    EXPECT_EQ(p.bits.total(), p.bytes.size() * 8);
}

TEST(EndNode, HeaderCarriesLrDims) {
    VideoSequence s;
    s.push_back(Frame(1280, 720));
    const EndProduct p = run_end_pipeline(s, fixed(5));
    const BundleMeta m = read_meta(p.bytes);
    EXPECT_EQ(m.lr_width(), 320);
    EXPECT_EQ(m.lr_height(), 180);
    EXPECT_EQ(p.contents.lr[0].width(), 320);
}

TEST(EndNode, StageIdentityInErrors) {
    VideoSequence s;
    s.push_back(Frame(30, 32));
    try {
        run_end_pipeline(s, fixed(5));
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "downsample");
        EXPECT_EQ(e.kind(), ErrorKind::Data);
    }
    EndNodeConfig bad = fixed(5);
    bad.codec.video_encode = "exit 3";
    bad.codec.video_decode = "cat {input} > {output}";
    try {
        run_end_pipeline(static_video(4), bad);
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "pack");
        EXPECT_EQ(e.kind(), ErrorKind::External);
    }
}

TEST(EndNode, EliminateThenSelectOrder) {
    // Frames 1-4 static, 5-8 static at another level: survivors are 1 and 5;
    // keys at k=2 over survivors -> just survivor 1.
    VideoSequence s;
    for (int t = 0; t < 8; ++t) s.push_back(Frame(16, 16, Layout::Gray, t < 4 ? 20 : 200));
    EndNodeConfig c = fixed(2);
    c.order = PipelineOrder::EliminateThenSelect;
    const EndProduct p = run_end_pipeline(s, c);
    EXPECT_EQ(p.contents.redundant.values(), (std::vector<std::uint32_t>{2, 3, 4, 6, 7, 8}));
    EXPECT_EQ(p.contents.keys.values(), (std::vector<std::uint32_t>{1}));
    c.order = PipelineOrder::SelectThenEliminate;
    EXPECT_EQ(run_end_pipeline(s, c).contents.keys.values(), (std::vector<std::uint32_t>{1, 3, 5, 7}));
}

TEST(CloudNode, StaticVideoRestoresAllFrames) {
    const VideoSequence hr = static_video(10);
    const EndProduct p = run_end_pipeline(hr, fixed(5));
    const CloudNode node(std::make_shared<ClassicalReconstructor>());
    const CloudResult r = node.process(p.bytes, &hr);
    ASSERT_EQ(r.hr.size(), 10u);
    for (int t = 1; t < 5; ++t) EXPECT_EQ(r.hr[t], r.hr[0]);
    for (int t = 6; t < 10; ++t) EXPECT_EQ(r.hr[t], r.hr[5]);
    ASSERT_TRUE(r.quality);
    EXPECT_EQ(r.quality->frames[0].psnr_db, 100.0);
    EXPECT_EQ(r.quality->frames[5].psnr_db, 100.0);
}

TEST(CloudNode, KeyPositionsExactWithoutRedundancy) {
    const VideoSequence hr = synth::surveillance(64, 48, 20, 0, 5, 8);
    EndNodeConfig c = fixed(6);
    c.eliminate_redundant = false;
    const EndProduct p = run_end_pipeline(hr, c);
    const CloudResult r = CloudNode(std::make_shared<ClassicalReconstructor>()).process(p.bytes, &hr);
    for (const auto& f : r.quality->frames) {
        if (f.is_keyframe) EXPECT_EQ(f.psnr_db, 100.0);
        else EXPECT_LT(f.psnr_db, 100.0);
    }
    EXPECT_LT(r.quality->excluding_keys.mean_psnr, r.quality->all_frames.mean_psnr);
}

TEST(CloudNode, ClassicalReconstructCases) {
    std::mt19937 rng(30);
    const VideoSequence lr = synth::random_video(rng, 4, 4, 3);
    EXPECT_EQ(classical_reconstruct(lr, {}, {}), upsample_4x(lr));
    std::vector<Frame> keys;
    for (int i = 0; i < 3; ++i) keys.push_back(synth::random_frame(rng, 16, 16));
    const std::vector<std::uint32_t> slots = {1, 2, 3};
    EXPECT_EQ(classical_reconstruct(lr, keys, slots).frames(), keys);
    const std::vector<std::uint32_t> bad_slot = {4};
    EXPECT_THROW(classical_reconstruct(lr, std::span(keys).first(1), bad_slot), IndexError);
    std::vector<Frame> small = {Frame(8, 8)};
    const std::vector<std::uint32_t> one = {1};
    EXPECT_THROW(classical_reconstruct(lr, small, one), DimensionError);
}

TEST(CloudNode, KeySlotsSkipDroppedFrames) {
    EXPECT_EQ(key_slots(KeyFrameIndex({1, 6, 9}), RedundancyIndex({2, 3, 7})),
              (std::vector<std::uint32_t>{1, 4, 6}));
}

TEST(CloudNode, ExternalStubMatchesPlainUpsampling) {
    const VideoSequence hr = synth::surveillance(32, 32, 12, 4, 7);
    const EndProduct p = run_end_pipeline(hr, fixed(4));
    const ExternalReconstructor ext(stub_command("bicubic"));
    const BundleContents& c = p.contents;
    const VideoSequence out = ext.reconstruct({c.lr, c.keyframes, c.keys, c.redundant});
    EXPECT_EQ(out, upsample_4x(c.lr));
    const CloudResult r = CloudNode(std::make_shared<ExternalReconstructor>(stub_command("bicubic"))).process(p.bytes);
    EXPECT_EQ(r.hr.size(), 12u);
}

TEST(CloudNode, ExternalWorkdirLayout) {
    const VideoSequence hr = synth::surveillance(32, 32, 10, 6, 8);
    const EndProduct p = run_end_pipeline(hr, fixed(4));
    const BundleContents& c = p.contents;
    TempDir dir;
    ExternalReconstructor::write_workdir(dir.path(), {c.lr, c.keyframes, c.keys, c.redundant});
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "lr.hdr"));
    EXPECT_EQ(read_raw(dir.path() / "lr.raw"), c.lr);
    for (std::size_t i = 0; i < c.keys.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "key_%06u.png", c.keys[i]);
        EXPECT_EQ(read_png(dir.path() / name), c.keyframes[i]);
    }
    std::ifstream in(dir.path() / "indices.txt");
    std::string keys_line, red_line;
    std::getline(in, keys_line);
    std::getline(in, red_line);
    EXPECT_EQ(keys_line, join_indices(c.keys.values()));
    EXPECT_EQ(red_line, join_indices(c.redundant.values()));
}

TEST(CloudNode, ExternalContractViolations) {
    const VideoSequence hr = synth::surveillance(32, 32, 6, 0, 9, 10);
    const EndProduct p = run_end_pipeline(hr, fixed(3));
    const BundleContents& c = p.contents;
    const ReconstructionRequest req{c.lr, c.keyframes, c.keys, c.redundant};
    EXPECT_THROW(ExternalReconstructor(stub_command("wrong-count")).reconstruct(req), DataError);
    EXPECT_THROW(ExternalReconstructor(stub_command("wrong-dims")).reconstruct(req), DimensionError);
    EXPECT_THROW(ExternalReconstructor(stub_command("fail")).reconstruct(req), ExternalProcessError);
    try {
        CloudNode(std::make_shared<ExternalReconstructor>(stub_command("fail"))).process(p.bytes);
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "reconstruct");
    }
}

TEST(CloudServer, LoopbackMatchesLocal) {
    const VideoSequence hr = synth::surveillance(64, 32, 15, 5, 11, 1);
    const EndNodeConfig cfg = fixed(5);
    const EndProduct local = run_end_pipeline(hr, cfg);
    const CloudNode node(std::make_shared<ClassicalReconstructor>());
    const CloudResult expected = node.process(local.bytes, &hr);

    std::mutex mu;
    std::vector<CloudResult> got;
    CloudServer server(node, "127.0.0.1", 0, std::make_shared<VideoSequence>(hr),
                       [&](std::uint64_t, const CloudResult& r) {
                           std::lock_guard lock(mu);
                           got.push_back(r);
                       });
    server.start();
    const std::string report = run_end_node(hr, cfg, "127.0.0.1", server.port());
    server.wait_for(1);
    server.stop();
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].decoded.lr, local.contents.lr);
    EXPECT_EQ(got[0].decoded.keyframes, local.contents.keyframes);
    EXPECT_EQ(got[0].decoded.keys, local.contents.keys);
    EXPECT_EQ(got[0].decoded.redundant, local.contents.redundant);
    EXPECT_EQ(got[0].hr, expected.hr);
    const auto j = nlohmann::json::parse(report);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["frames"], 15);
    EXPECT_EQ(j["keyframes"], local.contents.keys.values());
}

TEST(CloudServer, ConcurrentStreams) {
    CloudServer server(CloudNode(std::make_shared<ClassicalReconstructor>()), "127.0.0.1", 0);
    server.start();
    std::vector<std::thread> clients;
    std::atomic<int> ok{0};
    for (int i = 0; i < 4; ++i) {
        clients.emplace_back([&, i] {
            const VideoSequence hr = synth::surveillance(32, 32, 8, 2, 20 + i);
            const auto j = nlohmann::json::parse(run_end_node(hr, fixed(3), "127.0.0.1", server.port()));
            if (j["status"] == "ok" && j["frames"] == 8) ++ok;
        });
    }
    for (auto& t : clients) t.join();
    server.wait_for(4);
    server.stop();
    EXPECT_EQ(ok.load(), 4);
    EXPECT_EQ(server.handled(), 4u);
}

TEST(CloudServer, CorruptBundleGetsErrorReportAndNoAck) {
    std::atomic<int> results{0};
    CloudServer server(CloudNode(std::make_shared<ClassicalReconstructor>()), "127.0.0.1", 0, nullptr,
                       [&](std::uint64_t, const CloudResult&) { ++results; });
    server.start();
    auto bytes = run_end_pipeline(static_video(4), fixed(2)).bytes;
    bytes[bytes.size() / 2] ^= 1;
    try {
        send_bundle(bytes, "127.0.0.1", server.port());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Data);
        EXPECT_NE(std::string(e.what()).find("CRC"), std::string::npos);
    }
    server.wait_for(1);
    server.stop();
    EXPECT_EQ(server.failed(), 1u);
    EXPECT_EQ(results.load(), 0);
}

TEST(CloudServer, MalformedLengthAborts) {
    CloudServer server(CloudNode(std::make_shared<ClassicalReconstructor>()), "127.0.0.1", 0);
    server.start();
    {
        Connection c = Connection::connect("127.0.0.1", server.port());
        c.send(Message::text(MessageType::Hello, "{}"));
        EXPECT_EQ(c.receive().type, MessageType::Hello);
        // Declares 1000 body bytes, delivers 3, then closes.
        const std::vector<std::uint8_t> partial = {2, 0xe8, 0x03, 0, 0, 1, 2, 3};
        c.send_bytes(partial);
        c.finish_writes();
    }
    server.wait_for(1);
    server.stop();
    EXPECT_EQ(server.failed(), 1u);
    EXPECT_EQ(server.handled(), 0u);
}
