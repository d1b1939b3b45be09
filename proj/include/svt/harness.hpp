#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "svt/config.hpp"
#include "svt/endcloud.hpp"
#include "svt/evaluate.hpp"

namespace svt {

inline constexpr std::array<int, 5> kSweepIntervals = {15, 25, 33, 41, 50};

/// End pipeline and cloud processing in one process, no socket in between.
struct LocalRun {
    EndProduct end;
    CloudResult cloud;
};

LocalRun run_local(const VideoSequence& hr, const ExperimentConfig& cfg, const VideoSequence* ground_truth = nullptr);

/// bpp of the whole HR video through the configured video codec (raw 4:2:0 without one).
double hr_stream_bpp(const VideoSequence& hr, const CodecAdapter& codec);

/// Table row for a packed bundle. Overhead counts toward system_bpp.
BppTableRow bpp_table_row(std::string label, const BundleMeta& meta, const SectionBits& bits, int key_interval,
                          std::optional<double> hr_bpp = {});

/// Table row from component bpps alone: system = lr + key.
BppTableRow bpp_table_row(std::string label, double hr_bpp, double lr_bpp, double key_bpp, int key_interval);

/// Reads per-frame quality CSVs, one per key interval.
std::vector<SweepRow> aggregate_points(std::span<const std::pair<int, std::filesystem::path>> points,
                                       const EvaluationFlags& flags = {});

struct SweepOutcome {
    std::vector<SweepRow> quality;
    std::vector<BppTableRow> bpp;
};

/// Runs one local experiment per k (fixed interval) against `hr` as ground
/// truth. Each point writes config.json, bundle.svb, quality.csv and
/// summary.json under out_dir/k_<k>; sweep.csv and bpp.csv go to out_dir.
SweepOutcome run_sweep(const VideoSequence& hr, const ExperimentConfig& base, std::span<const int> intervals,
                       const std::filesystem::path& out_dir);

}  // namespace svt
