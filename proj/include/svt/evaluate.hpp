#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svt/frame.hpp"
#include "svt/index_set.hpp"

namespace svt {

struct EvaluationFlags {
    bool exclude_keyframes = true;  ///< headline aggregate skips key positions
    bool exclude_redundant = false; ///< also report an aggregate without restored positions
};

struct FrameQuality {
    std::uint32_t frame_index = 0;  ///< 1-based
    double psnr_db = 0.0;
    double ssim = 0.0;
    bool is_keyframe = false;
    bool is_redundant = false;
};

struct QualityAggregate {
    double mean_psnr = std::numeric_limits<double>::quiet_NaN();
    double mean_ssim = std::numeric_limits<double>::quiet_NaN();
    std::size_t count = 0;
};

struct QualityReport {
    std::vector<FrameQuality> frames;
    QualityAggregate excluding_keys;
    QualityAggregate all_frames;
    std::optional<QualityAggregate> excluding_keys_and_redundant;
    EvaluationFlags flags;

    const QualityAggregate& headline() const { return flags.exclude_keyframes ? excluding_keys : all_frames; }
};

QualityReport evaluate(const VideoSequence& reconstructed, const VideoSequence& truth, const KeyFrameIndex& keys,
                       const RedundancyIndex& redundant, const EvaluationFlags& flags = {});

/// Fills the aggregates of a report from its per-frame rows.
void recompute_aggregates(QualityReport& report);

/// Columns: frame_index,psnr_db,ssim,is_keyframe,is_redundant
void write_quality_csv(std::ostream& out, const QualityReport& report);
QualityReport read_quality_csv(std::istream& in, const EvaluationFlags& flags = {});

std::string quality_summary_json(const QualityReport& report);

/// One point of a key-interval sweep.
struct SweepRow {
    int k = 0;
    QualityAggregate excluding_keys;
    QualityAggregate all_frames;
};

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// One line of a bpp comparison table.
struct BppTableRow {
    std::string label;
    int hr_width = 0;
    int hr_height = 0;
    double fps = 0.0;
    std::size_t frame_count = 0;
    double hr_bpp = std::numeric_limits<double>::quiet_NaN();  ///< baseline: whole HR video
    double lr_bpp = 0.0;
    int key_interval = 0;
    double key_bpp = 0.0;
    double overhead_bpp = 0.0;
    double system_bpp = 0.0;
    double saving_pct = std::numeric_limits<double>::quiet_NaN();  ///< percent of hr_bpp
};

void write_bpp_csv(std::ostream& out, std::span<const BppTableRow> rows);
std::vector<BppTableRow> read_bpp_csv(std::istream& in);

}  // namespace svt
