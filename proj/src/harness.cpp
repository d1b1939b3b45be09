#include "svt/harness.hpp"

#include <fstream>
#include <future>

#include "svt/error.hpp"
#include "svt/sequence_io.hpp"

namespace svt {

LocalRun run_local(const VideoSequence& hr, const ExperimentConfig& cfg, const VideoSequence* ground_truth) {
    LocalRun run;
    run.end = run_end_pipeline(hr, cfg.end_node());
    const CloudNode node(cfg.make_reconstructor(), CodecAdapter(cfg.codec), cfg.evaluation);
    run.cloud = node.process(run.end.bytes, ground_truth);
    return run;
}

double hr_stream_bpp(const VideoSequence& hr, const CodecAdapter& codec) {
    if (hr.empty()) throw DataError("empty video");
    const auto bytes = codec.encode_video(hr);
    const double pixels = static_cast<double>(hr.width()) * hr.height() * hr.size();
    return static_cast<double>(bytes.size()) * 8.0 / pixels;
}

BppTableRow bpp_table_row(std::string label, const BundleMeta& meta, const SectionBits& bits, int key_interval,
                          std::optional<double> hr_bpp) {
    BppTableRow row;
    row.label = std::move(label);
    row.hr_width = meta.hr_width;
    row.hr_height = meta.hr_height;
    row.fps = meta.fps.value();
    row.frame_count = meta.frame_count;
    row.key_interval = key_interval;
    const auto parts = bpp_rows(bits, meta);
    row.lr_bpp = parts[0].bpp();
    row.key_bpp = parts[1].bpp();
    row.overhead_bpp = parts[2].bpp();
    row.system_bpp = bpp_accounting(parts).system.bpp();
    if (hr_bpp) {
        row.hr_bpp = *hr_bpp;
        row.saving_pct = 100.0 * bpp_saving(*hr_bpp, row.system_bpp);
    }
    return row;
}

BppTableRow bpp_table_row(std::string label, double hr_bpp, double lr_bpp, double key_bpp, int key_interval) {
    BppTableRow row;
    row.label = std::move(label);
    row.key_interval = key_interval;
    row.hr_bpp = hr_bpp;
    row.lr_bpp = lr_bpp;
    row.key_bpp = key_bpp;
    row.overhead_bpp = 0.0;
    // Any fixed denominator works; the components are already normalised.
    const std::vector<BppRow> parts = {BppRow::from_bpp("lr_stream", lr_bpp, 1, 1, 1),
                                       BppRow::from_bpp("key_frames", key_bpp, 1, 1, 1)};
    row.system_bpp = bpp_accounting(parts).system.bpp();
    row.saving_pct = 100.0 * bpp_saving(hr_bpp, row.system_bpp);
    return row;
}

std::vector<SweepRow> aggregate_points(std::span<const std::pair<int, std::filesystem::path>> points,
                                       const EvaluationFlags& flags) {
    std::vector<SweepRow> rows;
    for (const auto& [k, path] : points) {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot read " + path.string());
        const QualityReport report = read_quality_csv(in, flags);
        rows.push_back({k, report.excluding_keys, report.all_frames});
    }
    return rows;
}

SweepOutcome run_sweep(const VideoSequence& hr, const ExperimentConfig& base, std::span<const int> intervals,
                       const std::filesystem::path& out_dir) {
    if (intervals.empty()) throw ConfigError("sweep needs at least one key interval");
    std::filesystem::create_directories(out_dir);
    save_config(out_dir / "config.json", base);
    const double hr_bpp = hr_stream_bpp(hr, CodecAdapter(base.codec));

    struct Point {
        SweepRow quality;
        BppTableRow bpp;
    };
    auto run_point = [&](int k) {
        ExperimentConfig cfg = base;
        cfg.selection.mode = SelectionMode::Fixed;
        cfg.selection.k = k;
        cfg.output_dir = out_dir / ("k_" + std::to_string(k));
        cfg.validate();
        std::filesystem::create_directories(cfg.output_dir);
        save_config(cfg.output_dir / "config.json", cfg);

        const LocalRun run = run_local(hr, cfg, &hr);
        write_file(cfg.output_dir / "bundle.svb", run.end.bytes);
        const QualityReport& q = *run.cloud.quality;
        {
            std::ofstream csv(cfg.output_dir / "quality.csv");
            write_quality_csv(csv, q);
            std::ofstream js(cfg.output_dir / "summary.json");
            js << quality_summary_json(q) << '\n';
        }
        Point p;
        p.quality = {k, q.excluding_keys, q.all_frames};
        p.bpp = bpp_table_row("k=" + std::to_string(k), run.end.contents.meta, run.end.bits, k, hr_bpp);
        return p;
    };

    std::vector<std::future<Point>> futures;
    for (int k : intervals) futures.push_back(std::async(std::launch::async, run_point, k));
    SweepOutcome outcome;
    for (auto& f : futures) {
        Point p = f.get();
        outcome.quality.push_back(p.quality);
        outcome.bpp.push_back(p.bpp);
    }
    std::ofstream sweep(out_dir / "sweep.csv");
    write_sweep_csv(sweep, outcome.quality);
    std::ofstream bpp(out_dir / "bpp.csv");
    write_bpp_csv(bpp, outcome.bpp);
    return outcome;
}

}  // namespace svt
