#include "svt/endcloud.hpp"

#include <iostream>

#include <json.hpp>

#include "svt/error.hpp"
#include "svt/resample.hpp"

namespace svt {

namespace {

template <class F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e);
    }
}

std::string error_report(const std::string& message) {
    nlohmann::json j;
    j["status"] = "error";
    j["message"] = message;
    return j.dump();
}

std::string success_report(std::uint64_t stream_id, const CloudResult& result, const std::string& reconstructor) {
    nlohmann::json j;
    j["status"] = "ok";
    j["stream"] = stream_id;
    j["reconstructor"] = reconstructor;
    j["frames"] = result.hr.size();
    j["width"] = result.hr.width();
    j["height"] = result.hr.height();
    j["keyframes"] = result.decoded.keys.values();
    j["redundant"] = result.decoded.redundant.values();
    if (result.quality) j["quality"] = nlohmann::json::parse(quality_summary_json(*result.quality));
    return j.dump();
}

}  // namespace

EndProduct run_end_pipeline(const VideoSequence& hr, const EndNodeConfig& cfg) {
    if (hr.empty()) throw DataError("source video is empty");
    cfg.selection.validate();
    cfg.redundancy.validate();

    const VideoSequence lr = stage("downsample", [&] { return downsample_4x(hr); });

    KeyFrameIndex keys;
    RedundancyIndex redundant;
    if (cfg.order == PipelineOrder::SelectThenEliminate) {
        keys = stage("select-keyframes", [&] { return select_keyframes(lr, cfg.selection); });
        if (cfg.eliminate_redundant) {
            redundant = stage("detect-redundant", [&] { return detect_redundant(lr, cfg.redundancy, keys.values()); });
        }
    } else {
        if (cfg.eliminate_redundant) {
            redundant = stage("detect-redundant", [&] { return detect_redundant(lr, cfg.redundancy); });
        }
        const VideoSequence surviving = drop_redundant(lr, redundant);
        const KeyFrameIndex local = stage("select-keyframes", [&] { return select_keyframes(surviving, cfg.selection); });
        const auto positions = surviving_positions(lr.size(), redundant);
        std::vector<std::uint32_t> original;
        for (auto s : local) original.push_back(positions[s - 1]);
        keys = KeyFrameIndex(std::move(original));
    }

    EndProduct product;
    BundleContents& c = product.contents;
    c.meta.hr_width = hr.width();
    c.meta.hr_height = hr.height();
    c.meta.layout = hr.layout();
    c.meta.fps = hr.frame_rate();
    c.meta.frame_count = static_cast<std::uint32_t>(hr.size());
    c.keys = keys;
    c.redundant = redundant;
    for (auto k : keys) c.keyframes.push_back(hr[k - 1]);
    c.lr = drop_redundant(lr, redundant);

    const CodecAdapter codec(cfg.codec);
    c.meta.lr_codec = codec.video_codec();
    c.meta.key_codec = codec.image_codec();
    product.bytes = stage("pack", [&] { return pack(c, codec); });
    product.bits = measure_bits(product.bytes);
    return product;
}

std::string send_bundle(std::span<const std::uint8_t> bundle, const std::string& host, std::uint16_t port) {
    return stage("send", [&] {
        Connection conn = Connection::connect(host, port);
        conn.send(Message::text(MessageType::Hello, R"({"role":"end-node","version":1})"));
        if (conn.receive().type != MessageType::Hello) throw ProtocolError("cloud did not answer HELLO");
        conn.send(Message{MessageType::Bundle, std::vector<std::uint8_t>(bundle.begin(), bundle.end())});
        const Message report = conn.receive();
        if (report.type != MessageType::Report) {
            throw ProtocolError(std::string("expected REPORT, got ") + message_type_name(report.type));
        }
        const std::string body = report.body_text();
        const auto parsed = nlohmann::json::parse(body, nullptr, false);
        if (parsed.is_discarded() || parsed.value("status", "") != "ok") {
            throw DataError("cloud rejected bundle: " + body);
        }
        const Message ack = conn.receive();
        if (ack.type != MessageType::Ack) throw ProtocolError(std::string("expected ACK, got ") + message_type_name(ack.type));
        conn.send(Message{MessageType::Bye, {}});
        return body;
    });
}

std::string run_end_node(const VideoSequence& hr, const EndNodeConfig& cfg, const std::string& host,
                         std::uint16_t port) {
    const EndProduct product = run_end_pipeline(hr, cfg);
    return send_bundle(product.bytes, host, port);
}

CloudNode::CloudNode(std::shared_ptr<const Reconstructor> reconstructor, CodecAdapter codec, EvaluationFlags flags)
    : reconstructor_(std::move(reconstructor)), codec_(std::move(codec)), flags_(flags) {
    if (!reconstructor_) throw ConfigError("cloud node needs a reconstructor");
}

CloudResult CloudNode::process(std::span<const std::uint8_t> bundle, const VideoSequence* ground_truth) const {
    CloudResult result;
    result.decoded = stage("unpack", [&] { return unpack(bundle, codec_); });
    const BundleContents& d = result.decoded;
    const VideoSequence surviving_hr = stage("reconstruct", [&] {
        VideoSequence hr = reconstructor_->reconstruct({d.lr, d.keyframes, d.keys, d.redundant});
        check_reconstruction(hr, d.lr);
        return hr;
    });
    result.hr = restore_redundant(surviving_hr, d.redundant);
    if (ground_truth) {
        result.quality = stage("evaluate", [&] { return evaluate(result.hr, *ground_truth, d.keys, d.redundant, flags_); });
    }
    return result;
}

CloudServer::CloudServer(CloudNode node, const std::string& host, std::uint16_t port,
                         std::shared_ptr<const VideoSequence> ground_truth, ResultHandler on_result)
    : node_(std::move(node)),
      listener_(host, port),
      ground_truth_(std::move(ground_truth)),
      on_result_(std::move(on_result)) {}

CloudServer::~CloudServer() { stop(); }

void CloudServer::start() {
    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
}

void CloudServer::stop() {
    if (!running_.exchange(false)) return;
    listener_.close();
    if (acceptor_.joinable()) acceptor_.join();
    std::lock_guard lock(workers_mutex_);
    for (auto& t : workers_) {
        if (t.joinable()) t.join();
    }
    workers_.clear();
}

void CloudServer::wait_for(std::uint64_t count) {
    std::unique_lock lock(done_mutex_);
    done_cv_.wait(lock, [&] { return handled_.load() + failed_.load() >= count; });
}

void CloudServer::accept_loop() {
    while (running_) {
        auto conn = listener_.accept();
        if (!conn) break;
        std::lock_guard lock(workers_mutex_);
        workers_.emplace_back([this, c = std::move(*conn)]() mutable { serve_connection(std::move(c)); });
    }
}

void CloudServer::serve_connection(Connection conn) {
    auto finish = [this](bool ok) {
        {
            std::lock_guard lock(done_mutex_);
            (ok ? handled_ : failed_)++;
        }
        done_cv_.notify_all();
    };
    try {
        if (conn.receive().type != MessageType::Hello) throw ProtocolError("expected HELLO");
        conn.send(Message::text(MessageType::Hello, R"({"role":"cloud","version":1})"));
        while (true) {
            Message msg = conn.receive();
            if (msg.type == MessageType::Bye) return;
            if (msg.type != MessageType::Bundle) {
                throw ProtocolError(std::string("unexpected ") + message_type_name(msg.type));
            }
            const std::uint64_t id = next_stream_++;
            CloudResult result;
            try {
                result = node_.process(msg.body, ground_truth_.get());
                if (on_result_) on_result_(id, result);
            } catch (const Error& e) {
                conn.send(Message::text(MessageType::Report, error_report(e.what())));
                finish(false);
                return;
            }
            conn.send(Message::text(MessageType::Report, success_report(id, result, node_.reconstructor().name())));
            conn.send(Message{MessageType::Ack, {}});
            finish(true);
        }
    } catch (const std::exception& e) {
        std::cerr << "svt: connection aborted: " << e.what() << "\n";
        try {
            conn.send(Message::text(MessageType::Report, error_report(e.what())));
        } catch (...) {
        }
        finish(false);
    }
}

}  // namespace svt
