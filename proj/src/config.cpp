#include "svt/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "svt/error.hpp"

namespace svt {

using nlohmann::json;

const char* order_name(PipelineOrder order) {
    return order == PipelineOrder::SelectThenEliminate ? "select-then-eliminate" : "eliminate-then-select";
}

PipelineOrder order_from_name(const std::string& name) {
    if (name == "select-then-eliminate") return PipelineOrder::SelectThenEliminate;
    if (name == "eliminate-then-select") return PipelineOrder::EliminateThenSelect;
    throw ConfigError("unknown pipeline order '" + name + "'");
}

const char* mode_name(SelectionMode mode) { return mode == SelectionMode::Fixed ? "fixed" : "adaptive"; }

SelectionMode mode_from_name(const std::string& name) {
    if (name == "fixed") return SelectionMode::Fixed;
    if (name == "adaptive") return SelectionMode::Adaptive;
    throw ConfigError("unknown selection mode '" + name + "'");
}

namespace {

const char* format_name(SequenceFormat f) { return f == SequenceFormat::Raw420 ? "raw420" : "png-dir"; }

SequenceFormat format_from_name(const std::string& name) {
    if (name == "raw420") return SequenceFormat::Raw420;
    if (name == "png-dir") return SequenceFormat::PngDirectory;
    throw ConfigError("unknown source format '" + name + "'");
}

// Reads `key` from `obj` into `dst` if present; wrong types become ConfigError.
template <class T>
void take(const json& obj, const char* key, T& dst) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        dst = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

const json& section(const json& root, const char* key) {
    static const json empty = json::object();
    auto it = root.find(key);
    if (it == root.end()) return empty;
    if (!it->is_object()) throw ConfigError(std::string("config section '") + key + "' must be an object");
    return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown config key '" + where + it.key() + "'");
    }
}

}  // namespace

EndNodeConfig ExperimentConfig::end_node() const {
    EndNodeConfig e;
    e.selection = selection;
    e.redundancy = redundancy;
    e.eliminate_redundant = eliminate_redundant;
    e.order = order;
    e.codec = codec;
    return e;
}

std::shared_ptr<const Reconstructor> ExperimentConfig::make_reconstructor() const {
    if (reconstructor == ReconstructorKind::Classical) return std::make_shared<ClassicalReconstructor>();
    return std::make_shared<ExternalReconstructor>(reconstructor_command, keep_workdir);
}

void ExperimentConfig::validate(bool check_paths) const {
    try {
        selection.validate();
        redundancy.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (codec.video_encode.empty() != codec.video_decode.empty()) {
        throw ConfigError("codec.video needs both encode and decode commands");
    }
    if (codec.image_encode.empty() != codec.image_decode.empty()) {
        throw ConfigError("codec.image needs both encode and decode commands");
    }
    if (reconstructor == ReconstructorKind::External && reconstructor_command.empty()) {
        throw ConfigError("external reconstructor needs reconstructor.command");
    }
    if (evaluation.exclude_redundant && !eliminate_redundant) {
        throw ConfigError("evaluation.exclude_redundant requires redundancy.enabled");
    }
    if (check_paths) {
        if (!source.empty() && !std::filesystem::exists(source)) {
            throw ConfigError("source does not exist: " + source.string());
        }
        if (!ground_truth.empty() && !std::filesystem::exists(ground_truth)) {
            throw ConfigError("ground truth does not exist: " + ground_truth.string());
        }
    }
}

ExperimentConfig config_from_json(const std::string& text) {
    json root = json::parse(text, nullptr, false, true);
    if (root.is_discarded() || !root.is_object()) throw ConfigError("config is not a JSON object");
    reject_unknown(root,
                   {"source", "ground_truth", "selection", "redundancy", "pipeline", "codec", "reconstructor",
                    "evaluation", "network", "output_dir"},
                   "");

    ExperimentConfig cfg;
    const json& src = section(root, "source");
    reject_unknown(src, {"path", "format"}, "source.");
    std::string path, format;
    take(src, "path", path);
    take(src, "format", format);
    cfg.source = path;
    if (!format.empty() && format != "auto") cfg.source_format = format_from_name(format);
    std::string gt;
    take(root, "ground_truth", gt);
    cfg.ground_truth = gt;

    const json& sel = section(root, "selection");
    reject_unknown(sel, {"mode", "k", "window", "min_spacing", "include_endpoints", "max_interior"}, "selection.");
    std::string mode = mode_name(cfg.selection.mode);
    take(sel, "mode", mode);
    cfg.selection.mode = mode_from_name(mode);
    take(sel, "k", cfg.selection.k);
    take(sel, "window", cfg.selection.window);
    take(sel, "min_spacing", cfg.selection.min_spacing);
    take(sel, "include_endpoints", cfg.selection.include_endpoints);
    take(sel, "max_interior", cfg.selection.max_interior);

    const json& red = section(root, "redundancy");
    reject_unknown(red, {"enabled", "tau_int", "tau_mot", "m"}, "redundancy.");
    take(red, "enabled", cfg.eliminate_redundant);
    take(red, "tau_int", cfg.redundancy.tau_int);
    take(red, "tau_mot", cfg.redundancy.tau_mot);
    take(red, "m", cfg.redundancy.m);

    const json& pipe = section(root, "pipeline");
    reject_unknown(pipe, {"order"}, "pipeline.");
    std::string order = order_name(cfg.order);
    take(pipe, "order", order);
    cfg.order = order_from_name(order);

    const json& codec = section(root, "codec");
    reject_unknown(codec, {"video", "image"}, "codec.");
    const json& video = section(codec, "video");
    const json& image = section(codec, "image");
    reject_unknown(video, {"encode", "decode"}, "codec.video.");
    reject_unknown(image, {"encode", "decode"}, "codec.image.");
    take(video, "encode", cfg.codec.video_encode);
    take(video, "decode", cfg.codec.video_decode);
    take(image, "encode", cfg.codec.image_encode);
    take(image, "decode", cfg.codec.image_decode);

    const json& rec = section(root, "reconstructor");
    reject_unknown(rec, {"kind", "command", "keep_workdir"}, "reconstructor.");
    std::string kind = "classical";
    take(rec, "kind", kind);
    if (kind == "classical") cfg.reconstructor = ReconstructorKind::Classical;
    else if (kind == "external") cfg.reconstructor = ReconstructorKind::External;
    else throw ConfigError("unknown reconstructor kind '" + kind + "'");
    take(rec, "command", cfg.reconstructor_command);
    take(rec, "keep_workdir", cfg.keep_workdir);

    const json& ev = section(root, "evaluation");
    reject_unknown(ev, {"exclude_keyframes", "exclude_redundant"}, "evaluation.");
    take(ev, "exclude_keyframes", cfg.evaluation.exclude_keyframes);
    take(ev, "exclude_redundant", cfg.evaluation.exclude_redundant);

    const json& net = section(root, "network");
    reject_unknown(net, {"host", "port"}, "network.");
    take(net, "host", cfg.host);
    int port = cfg.port;
    take(net, "port", port);
    if (port < 0 || port > 65535) throw ConfigError("network.port out of range");
    cfg.port = static_cast<std::uint16_t>(port);

    std::string out;
    take(root, "output_dir", out);
    cfg.output_dir = out;

    cfg.validate();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json root;
    root["source"] = {{"path", cfg.source.string()},
                      {"format", cfg.source_format ? format_name(*cfg.source_format) : "auto"}};
    root["ground_truth"] = cfg.ground_truth.string();
    root["selection"] = {{"mode", mode_name(cfg.selection.mode)},
                         {"k", cfg.selection.k},
                         {"window", cfg.selection.window},
                         {"min_spacing", cfg.selection.min_spacing},
                         {"include_endpoints", cfg.selection.include_endpoints},
                         {"max_interior", cfg.selection.max_interior}};
    root["redundancy"] = {{"enabled", cfg.eliminate_redundant},
                          {"tau_int", cfg.redundancy.tau_int},
                          {"tau_mot", cfg.redundancy.tau_mot},
                          {"m", cfg.redundancy.m}};
    root["pipeline"] = {{"order", order_name(cfg.order)}};
    root["codec"] = {{"video", {{"encode", cfg.codec.video_encode}, {"decode", cfg.codec.video_decode}}},
                     {"image", {{"encode", cfg.codec.image_encode}, {"decode", cfg.codec.image_decode}}}};
    root["reconstructor"] = {
        {"kind", cfg.reconstructor == ReconstructorKind::Classical ? "classical" : "external"},
        {"command", cfg.reconstructor_command},
        {"keep_workdir", cfg.keep_workdir}};
    root["evaluation"] = {{"exclude_keyframes", cfg.evaluation.exclude_keyframes},
                          {"exclude_redundant", cfg.evaluation.exclude_redundant}};
    root["network"] = {{"host", cfg.host}, {"port", cfg.port}};
    root["output_dir"] = cfg.output_dir.string();
    return root.dump(2) + "\n";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << config_to_json(cfg);
    if (!out) throw DataError("cannot write config " + path.string());
}

}  // namespace svt
