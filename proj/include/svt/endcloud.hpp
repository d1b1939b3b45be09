#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "svt/bundle.hpp"
#include "svt/codec.hpp"
#include "svt/evaluate.hpp"
#include "svt/keyframe.hpp"
#include "svt/reconstruct.hpp"
#include "svt/redundancy.hpp"
#include "svt/transport.hpp"

namespace svt {

enum class PipelineOrder {
    SelectThenEliminate,  ///< keys picked on the full LR video, exempt from dropping
    EliminateThenSelect,  ///< keys picked among the frames that survive dropping
};

struct EndNodeConfig {
    SelectionConfig selection;
    RedundancyConfig redundancy;
    bool eliminate_redundant = true;
    PipelineOrder order = PipelineOrder::SelectThenEliminate;
    CodecCommands codec;
};

/// What the camera side produces for one video.
struct EndProduct {
    BundleContents contents;
    std::vector<std::uint8_t> bytes;
    SectionBits bits;
};

/// Downsample, select keys, drop redundant frames, pack.
EndProduct run_end_pipeline(const VideoSequence& hr, const EndNodeConfig& cfg);

/// Runs the pipeline, ships the bundle and returns the cloud's REPORT body.
std::string run_end_node(const VideoSequence& hr, const EndNodeConfig& cfg, const std::string& host,
                         std::uint16_t port);

/// Sends an already packed bundle; returns the REPORT body.
std::string send_bundle(std::span<const std::uint8_t> bundle, const std::string& host, std::uint16_t port);

struct CloudResult {
    BundleContents decoded;
    VideoSequence hr;  ///< T frames after copy-back restoration
    std::optional<QualityReport> quality;
};

/// Cloud-side processing of one bundle: unpack, reconstruct surviving frames,
/// restore dropped ones, optionally evaluate against ground truth.
class CloudNode {
public:
    explicit CloudNode(std::shared_ptr<const Reconstructor> reconstructor, CodecAdapter codec = {},
                       EvaluationFlags flags = {});

    CloudResult process(std::span<const std::uint8_t> bundle, const VideoSequence* ground_truth = nullptr) const;

    const Reconstructor& reconstructor() const { return *reconstructor_; }

private:
    std::shared_ptr<const Reconstructor> reconstructor_;
    CodecAdapter codec_;
    EvaluationFlags flags_;
};

/// Thread-per-connection TCP front end for a CloudNode.
///
/// Per connection: client HELLO, server HELLO, then any number of BUNDLE
/// messages each answered by REPORT and ACK, closed by BYE. A failure sends
/// an error REPORT and drops the connection without ACK.
class CloudServer {
public:
    using ResultHandler = std::function<void(std::uint64_t stream_id, const CloudResult&)>;

    CloudServer(CloudNode node, const std::string& host, std::uint16_t port,
                std::shared_ptr<const VideoSequence> ground_truth = nullptr, ResultHandler on_result = {});
    ~CloudServer();
    CloudServer(const CloudServer&) = delete;
    CloudServer& operator=(const CloudServer&) = delete;

    std::uint16_t port() const { return listener_.port(); }
    void start();
    /// Stops accepting and joins every connection thread.
    void stop();
    /// Blocks until `count` bundles were handled (successfully or not).
    void wait_for(std::uint64_t count);

    std::uint64_t handled() const { return handled_.load(); }
    std::uint64_t failed() const { return failed_.load(); }

private:
    void accept_loop();
    void serve_connection(Connection conn);

    CloudNode node_;
    Listener listener_;
    std::shared_ptr<const VideoSequence> ground_truth_;
    ResultHandler on_result_;
    std::thread acceptor_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
    std::mutex done_mutex_;
    std::condition_variable done_cv_;
    std::atomic<std::uint64_t> next_stream_{1};
    std::atomic<std::uint64_t> handled_{0};
    std::atomic<std::uint64_t> failed_{0};
    std::atomic<bool> running_{false};
};

}  // namespace svt
