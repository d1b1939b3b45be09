#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "svt/codec.hpp"
#include "svt/endcloud.hpp"
#include "svt/evaluate.hpp"
#include "svt/keyframe.hpp"
#include "svt/redundancy.hpp"
#include "svt/sequence_io.hpp"

namespace svt {

enum class ReconstructorKind { Classical, External };

/// Everything needed to rerun an experiment. Stored as JSON; see docs/config.md.
struct ExperimentConfig {
    std::filesystem::path source;
    std::optional<SequenceFormat> source_format;  ///< unset: detect from the path
    std::filesystem::path ground_truth;           ///< optional, enables evaluation on the cloud side

    SelectionConfig selection;
    RedundancyConfig redundancy;
    bool eliminate_redundant = true;
    PipelineOrder order = PipelineOrder::SelectThenEliminate;
    CodecCommands codec;

    ReconstructorKind reconstructor = ReconstructorKind::Classical;
    std::string reconstructor_command;
    bool keep_workdir = false;

    EvaluationFlags evaluation;

    std::string host = "127.0.0.1";
    std::uint16_t port = 7421;
    std::filesystem::path output_dir;

    EndNodeConfig end_node() const;
    std::shared_ptr<const Reconstructor> make_reconstructor() const;

    /// Flag combinations and value ranges. `check_paths` also requires the
    /// referenced input files to exist.
    void validate(bool check_paths = false) const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg);

const char* order_name(PipelineOrder order);
PipelineOrder order_from_name(const std::string& name);
const char* mode_name(SelectionMode mode);
SelectionMode mode_from_name(const std::string& name);

}  // namespace svt
