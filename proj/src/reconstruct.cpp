#include "svt/reconstruct.hpp"

#include <fstream>

#include "svt/error.hpp"
#include "svt/process.hpp"
#include "svt/resample.hpp"
#include "svt/sequence_io.hpp"

namespace fs = std::filesystem;

namespace svt {

std::vector<std::uint32_t> key_slots(const KeyFrameIndex& keys, const RedundancyIndex& redundant) {
    std::vector<std::uint32_t> slots;
    slots.reserve(keys.size());
    std::size_t dropped_before = 0;
    auto r = redundant.begin();
    for (auto k : keys) {
        if (redundant.contains(k)) throw IndexError("key frame " + std::to_string(k) + " was dropped as redundant");
        while (r != redundant.end() && *r < k) {
            ++dropped_before;
            ++r;
        }
        slots.push_back(static_cast<std::uint32_t>(k - dropped_before));
    }
    return slots;
}

void check_reconstruction(const VideoSequence& hr, const VideoSequence& lr) {
    if (hr.size() != lr.size()) {
        throw DataError("reconstructor returned " + std::to_string(hr.size()) + " frames for " +
                        std::to_string(lr.size()) + " LR frames");
    }
    if (!hr.empty() && (hr.width() != 4 * lr.width() || hr.height() != 4 * lr.height())) {
        throw DimensionError("reconstructor returned " + std::to_string(hr.width()) + "x" +
                             std::to_string(hr.height()) + " frames, expected " + std::to_string(4 * lr.width()) +
                             "x" + std::to_string(4 * lr.height()));
    }
}

VideoSequence classical_reconstruct(const VideoSequence& lr, std::span<const Frame> keyframes,
                                    std::span<const std::uint32_t> slots) {
    if (keyframes.size() != slots.size()) throw DataError("key-frame count does not match key positions");
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] < 1 || slots[i] > lr.size()) throw IndexError("key slot out of range");
        const Frame& k = keyframes[i];
        if (k.width() != 4 * lr.width() || k.height() != 4 * lr.height() || k.layout() != lr.layout()) {
            throw DimensionError("key frame is " + std::to_string(k.width()) + "x" + std::to_string(k.height()) +
                                 ", expected 4x the LR size");
        }
    }
    std::vector<Frame> out;
    out.reserve(lr.size());
    for (const auto& f : lr) out.push_back(upsample_4x(f));
    for (std::size_t i = 0; i < slots.size(); ++i) out[slots[i] - 1] = keyframes[i];
    return VideoSequence(std::move(out), lr.frame_rate());
}

VideoSequence ClassicalReconstructor::reconstruct(const ReconstructionRequest& request) const {
    return classical_reconstruct(request.lr, request.keyframes, key_slots(request.keys, request.redundant));
}

ExternalReconstructor::ExternalReconstructor(std::string command_template, bool keep_workdir)
    : command_(std::move(command_template)), keep_workdir_(keep_workdir) {
    if (command_.empty()) throw ConfigError("external reconstructor needs a command");
}

void ExternalReconstructor::write_workdir(const fs::path& dir, const ReconstructionRequest& request) {
    fs::create_directories(dir);
    write_raw(dir / "lr.raw", request.lr);
    char name[32];
    for (std::size_t i = 0; i < request.keyframes.size(); ++i) {
        std::snprintf(name, sizeof(name), "key_%06u.png", request.keys[i]);
        write_png(dir / name, request.keyframes[i]);
    }
    std::ofstream idx(dir / "indices.txt");
    idx << join_indices(request.keys.values()) << "\n" << join_indices(request.redundant.values()) << "\n";
    if (!idx) throw FormatError("cannot write indices.txt");
}

VideoSequence ExternalReconstructor::reconstruct(const ReconstructionRequest& request) const {
    TempDir dir("svt-recon");
    if (keep_workdir_) dir.keep();
    write_workdir(dir.path(), request);
    const fs::path hr_path = dir.path() / "hr.raw";
    run_command(expand_template(command_, {{"workdir", shell_quote(dir.path().string())},
                                           {"lr", shell_quote((dir.path() / "lr.raw").string())},
                                           {"hr", shell_quote(hr_path.string())},
                                           {"indices", shell_quote((dir.path() / "indices.txt").string())},
                                           {"scale", "4"}}));
    if (!fs::exists(hr_path)) throw DataError("external reconstructor did not write hr.raw");
    const int w = 4 * request.lr.width();
    const int h = 4 * request.lr.height();
    // A sidecar, when the command wrote one, lets us report wrong dimensions
    // instead of a size mismatch.
    VideoSequence raw = fs::exists(sidecar_path(hr_path)) ? read_raw(hr_path)
                                                          : read_raw(hr_path, w, h, request.lr.frame_rate());
    VideoSequence hr({}, request.lr.frame_rate());
    for (const auto& f : raw) hr.push_back(convert_layout(f, request.lr.layout()));
    check_reconstruction(hr, request.lr);
    return hr;
}

}  // namespace svt
