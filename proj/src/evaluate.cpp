#include "svt/evaluate.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "svt/error.hpp"
#include "svt/metrics.hpp"

namespace svt {

namespace {

template <class Pred>
QualityAggregate aggregate(std::span<const FrameQuality> frames, Pred keep) {
    QualityAggregate agg;
    double psnr_sum = 0.0;
    double ssim_sum = 0.0;
    for (const auto& f : frames) {
        if (!keep(f)) continue;
        psnr_sum += f.psnr_db;
        ssim_sum += f.ssim;
        ++agg.count;
    }
    if (agg.count > 0) {
        agg.mean_psnr = psnr_sum / static_cast<double>(agg.count);
        agg.mean_ssim = ssim_sum / static_cast<double>(agg.count);
    }
    return agg;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        cells.push_back(cell);
    }
    return cells;
}

double to_double(const std::string& s) {
    if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw FormatError("bad number '" + s + "' in CSV");
    }
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::json aggregate_json(const QualityAggregate& a) {
    nlohmann::json j;
    j["count"] = a.count;
    j["mean_psnr_db"] = a.count ? nlohmann::json(a.mean_psnr) : nlohmann::json(nullptr);
    j["mean_ssim"] = a.count ? nlohmann::json(a.mean_ssim) : nlohmann::json(nullptr);
    return j;
}

}  // namespace

void recompute_aggregates(QualityReport& report) {
    report.excluding_keys = aggregate(report.frames, [](const FrameQuality& f) { return !f.is_keyframe; });
    report.all_frames = aggregate(report.frames, [](const FrameQuality&) { return true; });
    if (report.flags.exclude_redundant) {
        report.excluding_keys_and_redundant =
            aggregate(report.frames, [](const FrameQuality& f) { return !f.is_keyframe && !f.is_redundant; });
    } else {
        report.excluding_keys_and_redundant.reset();
    }
}

QualityReport evaluate(const VideoSequence& reconstructed, const VideoSequence& truth, const KeyFrameIndex& keys,
                       const RedundancyIndex& redundant, const EvaluationFlags& flags) {
    if (reconstructed.size() != truth.size()) {
        throw DataError("reconstruction has " + std::to_string(reconstructed.size()) + " frames, ground truth has " +
                        std::to_string(truth.size()));
    }
    keys.check_range(truth.size());
    redundant.check_range(truth.size());
    QualityReport report;
    report.flags = flags;
    report.frames.reserve(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t) {
        const auto pos = static_cast<std::uint32_t>(t + 1);
        report.frames.push_back({pos, psnr(reconstructed[t], truth[t]), ssim(reconstructed[t], truth[t]),
                                 keys.contains(pos), redundant.contains(pos)});
    }
    recompute_aggregates(report);
    return report;
}

void write_quality_csv(std::ostream& out, const QualityReport& report) {
    out << "frame_index,psnr_db,ssim,is_keyframe,is_redundant\n";
    for (const auto& f : report.frames) {
        out << f.frame_index << ',' << fmt(f.psnr_db) << ',' << fmt(f.ssim) << ',' << (f.is_keyframe ? 1 : 0) << ','
            << (f.is_redundant ? 1 : 0) << '\n';
    }
}

QualityReport read_quality_csv(std::istream& in, const EvaluationFlags& flags) {
    QualityReport report;
    report.flags = flags;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty quality CSV");
    if (split_csv(line) != std::vector<std::string>{"frame_index", "psnr_db", "ssim", "is_keyframe", "is_redundant"}) {
        throw FormatError("unexpected quality CSV header: " + line);
    }
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv(line);
        if (cells.size() != 5) throw FormatError("quality CSV row needs 5 columns: " + line);
        FrameQuality f;
        f.frame_index = static_cast<std::uint32_t>(std::stoul(cells[0]));
        f.psnr_db = to_double(cells[1]);
        f.ssim = to_double(cells[2]);
        f.is_keyframe = cells[3] == "1";
        f.is_redundant = cells[4] == "1";
        report.frames.push_back(f);
    }
    recompute_aggregates(report);
    return report;
}

std::string quality_summary_json(const QualityReport& report) {
    nlohmann::json j;
    j["frames"] = report.frames.size();
    j["excluding_keyframes"] = aggregate_json(report.excluding_keys);
    j["all_frames"] = aggregate_json(report.all_frames);
    if (report.excluding_keys_and_redundant) {
        j["excluding_keyframes_and_redundant"] = aggregate_json(*report.excluding_keys_and_redundant);
    }
    return j.dump();
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "k,frames_excluding_keys,mean_psnr_excluding_keys,mean_ssim_excluding_keys,frames_all,mean_psnr_all,"
           "mean_ssim_all\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.excluding_keys.count << ',' << fmt(r.excluding_keys.mean_psnr) << ','
            << fmt(r.excluding_keys.mean_ssim) << ',' << r.all_frames.count << ',' << fmt(r.all_frames.mean_psnr)
            << ',' << fmt(r.all_frames.mean_ssim) << '\n';
    }
}

namespace {
const std::vector<std::string> kBppColumns = {
    "label",        "hr_width",    "hr_height",    "fps",        "frames",     "hr_bpp",
    "lr_bpp",       "key_interval", "key_bpp",     "overhead_bpp", "system_bpp", "bpp_saving_pct"};
}

void write_bpp_csv(std::ostream& out, std::span<const BppTableRow> rows) {
    for (std::size_t i = 0; i < kBppColumns.size(); ++i) out << (i ? "," : "") << kBppColumns[i];
    out << '\n';
    for (const auto& r : rows) {
        out << r.label << ',' << r.hr_width << ',' << r.hr_height << ',' << fmt(r.fps) << ',' << r.frame_count << ','
            << fmt(r.hr_bpp) << ',' << fmt(r.lr_bpp) << ',' << r.key_interval << ',' << fmt(r.key_bpp) << ','
            << fmt(r.overhead_bpp) << ',' << fmt(r.system_bpp) << ',' << fmt(r.saving_pct) << '\n';
    }
}

std::vector<BppTableRow> read_bpp_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != kBppColumns) throw FormatError("unexpected bpp CSV header");
    std::vector<BppTableRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto c = split_csv(line);
        if (c.size() != kBppColumns.size()) throw FormatError("bpp CSV row has wrong column count: " + line);
        BppTableRow r;
        r.label = c[0];
        r.hr_width = std::stoi(c[1]);
        r.hr_height = std::stoi(c[2]);
        r.fps = to_double(c[3]);
        r.frame_count = std::stoul(c[4]);
        r.hr_bpp = to_double(c[5]);
        r.lr_bpp = to_double(c[6]);
        r.key_interval = std::stoi(c[7]);
        r.key_bpp = to_double(c[8]);
        r.overhead_bpp = to_double(c[9]);
        r.system_bpp = to_double(c[10]);
        r.saving_pct = to_double(c[11]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace svt
