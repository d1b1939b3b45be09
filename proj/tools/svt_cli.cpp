// svt: command-line front end for the end/cloud transmission pipeline.

#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>

#include <CLI11.hpp>

#include "svt/bundle.hpp"
#include "svt/config.hpp"
#include "svt/error.hpp"
#include "svt/harness.hpp"
#include "svt/metrics.hpp"
#include "svt/resample.hpp"
#include "svt/sequence_io.hpp"

namespace fs = std::filesystem;
using namespace svt;

namespace {

// Flags shared by every subcommand that runs (part of) the pipeline. Each
// optional overrides the corresponding config-file value when given.
struct Overrides {
    std::string config;
    std::optional<std::string> mode;
    std::optional<int> k;
    std::optional<int> window;
    std::optional<int> min_spacing;
    std::optional<int> max_interior;
    bool endpoints = false;
    std::optional<double> tau_int;
    std::optional<double> tau_mot;
    std::optional<int> m;
    bool no_redundancy = false;
    std::optional<std::string> order;
    std::optional<std::string> video_encode, video_decode, image_encode, image_decode;
    std::optional<std::string> reconstructor;
    std::optional<std::string> reconstructor_command;
    bool keep_workdir = false;
    bool include_keys = false;
    bool exclude_redundant = false;
    std::optional<std::string> host;
    std::optional<int> port;
};

void add_config_flag(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
}

void add_selection_flags(CLI::App* app, Overrides& o) {
    app->add_option("--mode", o.mode, "key-frame selection: fixed or adaptive")
        ->check(CLI::IsMember({"fixed", "adaptive"}));
    app->add_option("--k", o.k, "key-frame interval");
    app->add_option("--window", o.window, "Hann smoothing length (adaptive)");
    app->add_option("--min-spacing", o.min_spacing, "minimum gap between adaptive picks (default k)");
    app->add_option("--max-interior", o.max_interior, "cap on adaptive interior picks");
    app->add_flag("--endpoints", o.endpoints, "force the first and last frame");
}

void add_redundancy_flags(CLI::App* app, Overrides& o) {
    app->add_option("--tau-int", o.tau_int, "global MSE threshold");
    app->add_option("--tau-mot", o.tau_mot, "motion-region MSE threshold");
    app->add_option("--m", o.m, "motion mask gray-difference threshold");
}

void add_codec_flags(CLI::App* app, Overrides& o) {
    app->add_option("--video-encode", o.video_encode, "external video encode command template");
    app->add_option("--video-decode", o.video_decode, "external video decode command template");
    app->add_option("--image-encode", o.image_encode, "external image encode command template");
    app->add_option("--image-decode", o.image_decode, "external image decode command template");
}

void add_pipeline_flags(CLI::App* app, Overrides& o) {
    add_config_flag(app, o);
    add_selection_flags(app, o);
    add_redundancy_flags(app, o);
    add_codec_flags(app, o);
    app->add_flag("--no-redundancy", o.no_redundancy, "keep every frame");
    app->add_option("--order", o.order, "select-then-eliminate or eliminate-then-select")
        ->check(CLI::IsMember({"select-then-eliminate", "eliminate-then-select"}));
}

void add_cloud_flags(CLI::App* app, Overrides& o) {
    app->add_option("--reconstructor", o.reconstructor, "classical or external")
        ->check(CLI::IsMember({"classical", "external"}));
    app->add_option("--reconstructor-command", o.reconstructor_command, "command template for the external reconstructor");
    app->add_flag("--keep-workdir", o.keep_workdir, "keep the external reconstructor's working directory");
    app->add_flag("--include-keys", o.include_keys, "headline aggregate over all frames");
    app->add_flag("--exclude-redundant", o.exclude_redundant, "also aggregate without restored frames");
}

void add_network_flags(CLI::App* app, Overrides& o) {
    app->add_option("--host", o.host, "address");
    app->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
}

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    if (o.mode) c.selection.mode = mode_from_name(*o.mode);
    if (o.k) c.selection.k = *o.k;
    if (o.window) c.selection.window = *o.window;
    if (o.min_spacing) c.selection.min_spacing = *o.min_spacing;
    if (o.max_interior) c.selection.max_interior = *o.max_interior;
    if (o.endpoints) c.selection.include_endpoints = true;
    if (o.tau_int) c.redundancy.tau_int = *o.tau_int;
    if (o.tau_mot) c.redundancy.tau_mot = *o.tau_mot;
    if (o.m) c.redundancy.m = *o.m;
    if (o.no_redundancy) c.eliminate_redundant = false;
    if (o.order) c.order = order_from_name(*o.order);
    if (o.video_encode) c.codec.video_encode = *o.video_encode;
    if (o.video_decode) c.codec.video_decode = *o.video_decode;
    if (o.image_encode) c.codec.image_encode = *o.image_encode;
    if (o.image_decode) c.codec.image_decode = *o.image_decode;
    if (o.reconstructor) {
        c.reconstructor = *o.reconstructor == "external" ? ReconstructorKind::External : ReconstructorKind::Classical;
    }
    if (o.reconstructor_command) {
        c.reconstructor_command = *o.reconstructor_command;
        if (!o.reconstructor) c.reconstructor = ReconstructorKind::External;
    }
    if (o.keep_workdir) c.keep_workdir = true;
    if (o.include_keys) c.evaluation.exclude_keyframes = false;
    if (o.exclude_redundant) c.evaluation.exclude_redundant = true;
    if (o.host) c.host = *o.host;
    if (o.port) c.port = static_cast<std::uint16_t>(*o.port);
    return c;
}

std::optional<SequenceFormat> parse_format(const std::string& s) {
    if (s.empty() || s == "auto") return std::nullopt;
    if (s == "raw420") return SequenceFormat::Raw420;
    if (s == "png-dir") return SequenceFormat::PngDirectory;
    throw ConfigError("unknown format '" + s + "'");
}

SequenceFormat output_format(const fs::path& path, const std::string& flag) {
    if (auto f = parse_format(flag)) return *f;
    return path.extension() == ".raw" || path.extension() == ".yuv" ? SequenceFormat::Raw420
                                                                     : SequenceFormat::PngDirectory;
}

void write_report_outputs(const fs::path& dir, const QualityReport& q) {
    fs::create_directories(dir);
    std::ofstream csv(dir / "quality.csv");
    write_quality_csv(csv, q);
    std::ofstream js(dir / "summary.json");
    js << quality_summary_json(q) << '\n';
}

// Captures the resolved config next to the run's artifacts.
void capture_config(ExperimentConfig cfg, const fs::path& dir) {
    if (dir.empty()) return;
    cfg.output_dir = dir;
    save_config(dir / "config.json", cfg);
}

std::string format_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << std::fixed << v;
    return ss.str();
}

void print_bits(const SectionBits& bits, const BundleMeta& meta) {
    for (const auto& row : bpp_rows(bits, meta)) {
        std::cout << row.label << "_bits=" << static_cast<std::uint64_t>(row.total_bits)
                  << " " << row.label << "_bpp=" << format_double(row.bpp()) << "\n";
    }
    const auto rows = bpp_rows(bits, meta);
    std::cout << "total_bits=" << bits.total() << " system_bpp=" << format_double(bpp_accounting(rows).system.bpp())
              << "\n";
}

std::pair<int, fs::path> parse_point(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--point expects k=path, got '" + s + "'");
    try {
        return {std::stoi(s.substr(0, eq)), fs::path(s.substr(eq + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError("--point expects an integer k, got '" + s + "'");
    }
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (auto v : parse_indices(s)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGPIPE, SIG_IGN);
    CLI::App app{"Surveillance video end/cloud transmission tools"};
    app.require_subcommand(1);
    Overrides o;

    // downsample
    std::string in_path, out_path, in_format, out_format_flag;
    auto* down = app.add_subcommand("downsample", "4x bicubic downsampling of a video");
    down->add_option("input", in_path, "raw file or PNG directory")->required();
    down->add_option("output", out_path, "output path")->required();
    down->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    down->add_option("--output-format", out_format_flag, "raw420 or png-dir (default from extension)");

    // detect-redundant
    std::string exempt;
    auto* detect = app.add_subcommand("detect-redundant", "print redundant frame indices");
    detect->add_option("input", in_path, "video")->required();
    detect->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    detect->add_option("--exempt", exempt, "comma-separated positions never marked redundant");
    add_config_flag(detect, o);
    add_redundancy_flags(detect, o);

    // select-keyframes
    std::size_t frame_count = 0;
    std::string curve_path;
    auto* select = app.add_subcommand("select-keyframes", "print key-frame indices");
    select->add_option("input", in_path, "LR video (adaptive mode measures its PSNR curve)");
    select->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    select->add_option("--T", frame_count, "frame count, for fixed mode without a video");
    select->add_option("--curve", curve_path, "file with T-1 inter-frame PSNR values (adaptive mode)");
    add_config_flag(select, o);
    add_selection_flags(select, o);

    // pack
    std::string out_dir;
    auto* pack_cmd = app.add_subcommand("pack", "run the end-node pipeline and write a bundle");
    pack_cmd->add_option("input", in_path, "HR video")->required();
    pack_cmd->add_option("output", out_path, "bundle file")->required();
    pack_cmd->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    pack_cmd->add_option("--output-dir", out_dir, "directory that receives the resolved config");
    add_pipeline_flags(pack_cmd, o);

    // unpack
    std::string recon_path, truth_path;
    auto* unpack_cmd = app.add_subcommand("unpack", "verify and unpack a bundle into a working directory");
    unpack_cmd->add_option("input", in_path, "bundle file")->required();
    unpack_cmd->add_option("output", out_dir, "directory for lr.raw, key images and indices.txt")->required();
    unpack_cmd->add_option("--reconstruct", recon_path, "also reconstruct the full HR video to this path");
    unpack_cmd->add_option("--ground-truth", truth_path, "evaluate the reconstruction against this video");
    add_config_flag(unpack_cmd, o);
    add_codec_flags(unpack_cmd, o);
    add_cloud_flags(unpack_cmd, o);

    // send
    auto* send_cmd = app.add_subcommand("send", "run the end-node pipeline and send the bundle to a cloud node");
    send_cmd->add_option("input", in_path, "HR video or, with --bundle, a packed bundle")->required();
    send_cmd->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    bool send_packed = false;
    send_cmd->add_flag("--bundle", send_packed, "input is an already packed bundle");
    add_pipeline_flags(send_cmd, o);
    add_network_flags(send_cmd, o);

    // serve
    std::uint64_t serve_count = 0;
    auto* serve_cmd = app.add_subcommand("serve", "cloud node: receive bundles, reconstruct, report");
    serve_cmd->add_option("--output-dir", out_dir, "per-stream outputs (hr video, quality CSV)");
    serve_cmd->add_option("--ground-truth", truth_path, "HR video for evaluation mode");
    serve_cmd->add_option("--count", serve_count, "exit after this many bundles (0 = run forever)");
    std::string port_file;
    serve_cmd->add_option("--port-file", port_file, "write the bound port here once listening");
    add_config_flag(serve_cmd, o);
    add_codec_flags(serve_cmd, o);
    add_cloud_flags(serve_cmd, o);
    add_network_flags(serve_cmd, o);

    // evaluate
    std::string keys_flag, redundant_flag, bundle_path;
    auto* eval_cmd = app.add_subcommand("evaluate", "per-frame PSNR/SSIM of a reconstruction");
    eval_cmd->add_option("reconstruction", recon_path, "reconstructed HR video")->required();
    eval_cmd->add_option("truth", truth_path, "ground-truth HR video")->required();
    eval_cmd->add_option("--keys", keys_flag, "comma-separated key positions");
    eval_cmd->add_option("--redundant", redundant_flag, "comma-separated restored positions");
    eval_cmd->add_option("--bundle", bundle_path, "take both index lists from this bundle");
    eval_cmd->add_option("--output-dir", out_dir, "write quality.csv and summary.json here");
    eval_cmd->add_flag("--include-keys", o.include_keys, "headline aggregate over all frames");
    eval_cmd->add_flag("--exclude-redundant", o.exclude_redundant, "also aggregate without restored frames");

    // report
    auto* report_cmd = app.add_subcommand("report", "CSV summaries: key-interval sweeps and bpp tables");
    report_cmd->require_subcommand(1);
    std::vector<std::string> points;
    std::string report_out;
    auto* rep_sweep = report_cmd->add_subcommand("sweep", "aggregate per-frame CSVs into one row per k");
    rep_sweep->add_option("--point", points, "k=quality.csv")->required();
    rep_sweep->add_option("-o,--output", report_out, "CSV path (default stdout)");

    std::vector<std::string> bundles, components;
    std::optional<double> hr_bpp_flag;
    std::string hr_video;
    auto* rep_bpp = report_cmd->add_subcommand("bpp", "bpp table from bundles or published components");
    rep_bpp->add_option("--bundle", bundles, "label=bundle.svb");
    rep_bpp->add_option("--hr-bpp", hr_bpp_flag, "baseline bpp for bundle rows");
    rep_bpp->add_option("--hr-video", hr_video, "measure the baseline by encoding this HR video");
    rep_bpp->add_option("--components", components, "label:hr_bpp:lr_bpp:key_bpp:k");
    rep_bpp->add_option("-o,--output", report_out, "CSV path (default stdout)");
    add_config_flag(rep_bpp, o);
    add_codec_flags(rep_bpp, o);

    std::string intervals_flag;
    auto* rep_run = report_cmd->add_subcommand("run", "run a key-interval sweep on one video");
    rep_run->add_option("input", in_path, "HR video")->required();
    rep_run->add_option("output", out_dir, "output directory")->required();
    rep_run->add_option("--input-format", in_format, "auto, raw420 or png-dir");
    rep_run->add_option("--intervals", intervals_flag, "comma-separated k values (default 15,25,33,41,50)");
    add_pipeline_flags(rep_run, o);
    add_cloud_flags(rep_run, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::Usage);
    }

    try {
        if (*down) {
            const VideoSequence hr = read_sequence(in_path, parse_format(in_format));
            const VideoSequence lr = downsample_4x(hr);
            write_sequence(out_path, lr, output_format(out_path, out_format_flag));
            std::cout << lr.width() << "x" << lr.height() << " frames=" << lr.size() << "\n";
        } else if (*detect) {
            const ExperimentConfig cfg = resolve(o);
            cfg.validate();
            const VideoSequence seq = read_sequence(in_path, parse_format(in_format));
            const auto ex = parse_indices(exempt);
            std::cout << join_indices(detect_redundant(seq, cfg.redundancy, ex).values()) << "\n";
        } else if (*select) {
            const ExperimentConfig cfg = resolve(o);
            cfg.validate();
            KeyFrameIndex keys;
            if (!curve_path.empty()) {
                std::ifstream in(curve_path);
                if (!in) throw FormatError("cannot read " + curve_path);
                std::vector<double> curve;
                for (double v; in >> v;) curve.push_back(v);
                if (!in.eof()) throw FormatError("curve file holds a non-numeric value");
                const std::size_t T = frame_count ? frame_count : curve.size() + 1;
                if (curve.size() + 1 != T) throw DataError("curve length must be T-1");
                SelectionConfig sc = cfg.selection;
                sc.mode = SelectionMode::Adaptive;
                keys = select_adaptive(curve, sc, T);
            } else if (!in_path.empty()) {
                keys = select_keyframes(read_sequence(in_path, parse_format(in_format)), cfg.selection);
            } else {
                if (frame_count == 0) throw ConfigError("select-keyframes needs a video, --curve or --T");
                if (cfg.selection.mode == SelectionMode::Adaptive) {
                    throw ConfigError("adaptive selection needs a video or --curve");
                }
                keys = fixed_interval(frame_count, cfg.selection.k, cfg.selection.include_endpoints);
            }
            std::cout << join_indices(keys.values()) << "\n";
        } else if (*pack_cmd) {
            ExperimentConfig cfg = resolve(o);
            cfg.source = in_path;
            cfg.source_format = parse_format(in_format);
            cfg.validate(true);
            const VideoSequence hr = read_sequence(in_path, cfg.source_format);
            const EndProduct product = run_end_pipeline(hr, cfg.end_node());
            write_file(out_path, product.bytes);
            capture_config(cfg, out_dir);
            const BundleContents& c = product.contents;
            std::cout << "keys=" << join_indices(c.keys.values()) << "\n";
            std::cout << "redundant=" << join_indices(c.redundant.values()) << "\n";
            print_bits(product.bits, c.meta);
        } else if (*unpack_cmd) {
            ExperimentConfig cfg = resolve(o);
            cfg.validate();
            const auto bytes = read_file(in_path);
            const CodecAdapter codec(cfg.codec);
            const BundleContents c = unpack(bytes, codec);
            ExternalReconstructor::write_workdir(out_dir, {c.lr, c.keyframes, c.keys, c.redundant});
            capture_config(cfg, out_dir);
            std::cout << "frames=" << c.meta.frame_count << " surviving=" << c.lr.size()
                      << " keys=" << join_indices(c.keys.values()) << "\n";
            if (!recon_path.empty() || !truth_path.empty()) {
                const CloudNode node(cfg.make_reconstructor(), codec, cfg.evaluation);
                std::optional<VideoSequence> truth;
                if (!truth_path.empty()) truth = read_sequence(truth_path);
                const CloudResult r = node.process(bytes, truth ? &*truth : nullptr);
                if (!recon_path.empty()) write_sequence(recon_path, r.hr, output_format(recon_path, ""));
                if (r.quality) {
                    write_report_outputs(out_dir, *r.quality);
                    std::cout << quality_summary_json(*r.quality) << "\n";
                }
            }
        } else if (*send_cmd) {
            ExperimentConfig cfg = resolve(o);
            cfg.validate(true);
            std::string reply;
            if (send_packed) {
                const auto bytes = read_file(in_path);
                read_meta(bytes);
                reply = send_bundle(bytes, cfg.host, cfg.port);
            } else {
                const VideoSequence hr = read_sequence(in_path, parse_format(in_format));
                reply = run_end_node(hr, cfg.end_node(), cfg.host, cfg.port);
            }
            std::cout << reply << "\n";
        } else if (*serve_cmd) {
            ExperimentConfig cfg = resolve(o);
            cfg.ground_truth = truth_path;
            cfg.validate(true);
            std::shared_ptr<const VideoSequence> truth;
            if (!truth_path.empty()) truth = std::make_shared<VideoSequence>(read_sequence(truth_path));
            if (!out_dir.empty()) capture_config(cfg, out_dir);
            std::mutex out_mutex;
            auto on_result = [&](std::uint64_t id, const CloudResult& r) {
                if (out_dir.empty()) return;
                const fs::path dir = fs::path(out_dir) / ("stream_" + std::to_string(id));
                fs::create_directories(dir);
                write_raw(dir / "hr.raw", r.hr);
                if (r.quality) write_report_outputs(dir, *r.quality);
                std::lock_guard lock(out_mutex);
                std::cerr << "svt: stream " << id << " -> " << dir.string() << "\n";
            };
            CloudServer server(CloudNode(cfg.make_reconstructor(), CodecAdapter(cfg.codec), cfg.evaluation),
                               cfg.host, cfg.port, truth, on_result);
            server.start();
            std::cerr << "svt: listening on " << cfg.host << ":" << server.port() << "\n";
            if (!port_file.empty()) {
                std::ofstream pf(port_file + ".tmp");
                pf << server.port() << "\n";
                pf.close();
                fs::rename(port_file + ".tmp", port_file);
            }
            if (serve_count == 0) {
                // Runs until killed.
                for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
            }
            server.wait_for(serve_count);
            server.stop();
            if (server.failed() > 0) {
                std::cerr << "svt: " << server.failed() << " bundle(s) failed\n";
                return static_cast<int>(ErrorKind::Data);
            }
        } else if (*eval_cmd) {
            const VideoSequence recon = read_sequence(recon_path);
            const VideoSequence truth = read_sequence(truth_path);
            KeyFrameIndex keys;
            RedundancyIndex redundant;
            if (!bundle_path.empty()) {
                if (!keys_flag.empty() || !redundant_flag.empty()) {
                    throw ConfigError("--bundle cannot be combined with --keys/--redundant");
                }
                const BundleContents c = unpack(read_file(bundle_path));
                keys = c.keys;
                redundant = c.redundant;
            } else {
                keys = KeyFrameIndex::from_unsorted(parse_indices(keys_flag));
                redundant = RedundancyIndex::from_unsorted(parse_indices(redundant_flag));
            }
            EvaluationFlags flags;
            flags.exclude_keyframes = !o.include_keys;
            flags.exclude_redundant = o.exclude_redundant;
            const QualityReport q = evaluate(recon, truth, keys, redundant, flags);
            if (!out_dir.empty()) {
                write_report_outputs(out_dir, q);
            } else {
                write_quality_csv(std::cout, q);
            }
            std::cerr << quality_summary_json(q) << "\n";
        } else if (*rep_sweep) {
            std::vector<std::pair<int, fs::path>> pts;
            for (const auto& p : points) pts.push_back(parse_point(p));
            std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            const auto rows = aggregate_points(pts);
            if (report_out.empty()) {
                write_sweep_csv(std::cout, rows);
            } else {
                std::ofstream out(report_out);
                write_sweep_csv(out, rows);
            }
        } else if (*rep_bpp) {
            if (bundles.empty() && components.empty()) throw ConfigError("report bpp needs --bundle or --components");
            if (hr_bpp_flag && !hr_video.empty()) throw ConfigError("--hr-bpp and --hr-video are exclusive");
            ExperimentConfig cfg = resolve(o);
            cfg.validate();
            std::optional<double> baseline = hr_bpp_flag;
            if (!hr_video.empty()) baseline = hr_stream_bpp(read_sequence(hr_video), CodecAdapter(cfg.codec));
            std::vector<BppTableRow> rows;
            for (const auto& spec : components) {
                std::vector<std::string> f;
                std::stringstream ss(spec);
                for (std::string part; std::getline(ss, part, ':');) f.push_back(part);
                if (f.size() != 5) throw ConfigError("--components expects label:hr_bpp:lr_bpp:key_bpp:k");
                try {
                    rows.push_back(bpp_table_row(f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3]),
                                                 std::stoi(f[4])));
                } catch (const std::logic_error&) {
                    throw ConfigError("--components has a non-numeric field: " + spec);
                }
            }
            for (const auto& spec : bundles) {
                const auto eq = spec.find('=');
                const std::string label = eq == std::string::npos ? fs::path(spec).stem().string() : spec.substr(0, eq);
                const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
                const auto bytes = read_file(path);
                const BundleContents c = unpack(bytes, CodecAdapter(cfg.codec));
                int interval = 0;
                if (c.keys.size() >= 2) interval = static_cast<int>(c.keys[1] - c.keys[0]);
                rows.push_back(bpp_table_row(label, c.meta, measure_bits(bytes), interval, baseline));
            }
            if (report_out.empty()) {
                write_bpp_csv(std::cout, rows);
            } else {
                std::ofstream out(report_out);
                write_bpp_csv(out, rows);
            }
        } else if (*rep_run) {
            ExperimentConfig cfg = resolve(o);
            cfg.source = in_path;
            cfg.source_format = parse_format(in_format);
            cfg.output_dir = out_dir;
            cfg.validate(true);
            std::vector<int> ks(kSweepIntervals.begin(), kSweepIntervals.end());
            if (!intervals_flag.empty()) ks = parse_ints(intervals_flag);
            const VideoSequence hr = read_sequence(in_path, cfg.source_format);
            const SweepOutcome res = run_sweep(hr, cfg, ks, out_dir);
            write_sweep_csv(std::cout, res.quality);
        }
    } catch (const Error& e) {
        std::cerr << "svt: error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "svt: error: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::Data);
    }
    return 0;
}
