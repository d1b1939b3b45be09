#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "svt/frame.hpp"
#include "svt/index_set.hpp"

namespace svt {

/// Decoded inputs of the cloud-side super-resolution step.
struct ReconstructionRequest {
    const VideoSequence& lr;          ///< surviving LR frames
    std::span<const Frame> keyframes; ///< HR key frames, in key order
    const KeyFrameIndex& keys;        ///< 1-based positions in the original video
    const RedundancyIndex& redundant; ///< 1-based positions in the original video
};

/// Maps original key positions to 1-based positions in the surviving LR
/// sequence: original t becomes t - |{r in redundant : r < t}|.
std::vector<std::uint32_t> key_slots(const KeyFrameIndex& keys, const RedundancyIndex& redundant);

/// Produces one HR frame (4x the LR size) per surviving LR frame.
class Reconstructor {
public:
    virtual ~Reconstructor() = default;
    virtual std::string name() const = 0;
    virtual VideoSequence reconstruct(const ReconstructionRequest& request) const = 0;
};

/// Bicubic upsampling with received key frames substituted at their slots.
VideoSequence classical_reconstruct(const VideoSequence& lr, std::span<const Frame> keyframes,
                                    std::span<const std::uint32_t> slots);

class ClassicalReconstructor final : public Reconstructor {
public:
    std::string name() const override { return "classical"; }
    VideoSequence reconstruct(const ReconstructionRequest& request) const override;
};

/// Runs a command over a working directory holding `lr.raw` + `lr.hdr`,
/// `key_NNNNNN.png` (NNNNNN = original frame index) and `indices.txt` (line 1:
/// key indices, line 2: redundant indices). The command must write `hr.raw`
/// with one 4x frame per surviving LR frame. Placeholders: {workdir} {lr}
/// {hr} {indices} {scale}.
class ExternalReconstructor final : public Reconstructor {
public:
    explicit ExternalReconstructor(std::string command_template, bool keep_workdir = false);

    std::string name() const override { return "external"; }
    VideoSequence reconstruct(const ReconstructionRequest& request) const override;

    /// Writes the working-directory inputs; exposed for tools that produce them offline.
    static void write_workdir(const std::filesystem::path& dir, const ReconstructionRequest& request);

private:
    std::string command_;
    bool keep_workdir_;
};

/// Checks the reconstructor contract: same count, 4x dimensions.
void check_reconstruction(const VideoSequence& hr, const VideoSequence& lr);

}  // namespace svt
