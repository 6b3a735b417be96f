#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rdaug/model.hpp"

namespace rdaug {

inline constexpr int kCheckpointFormatVersion = 1;

struct Checkpoint {
    ModelConfig config;
    ClassifierParams params;
    std::uint64_t step = 0;
    double val_f1 = 0.0;
};

// JSON: {format_version, model_config, params: {E, W1, b1, W2, b2}, step, val_f1}.
// Matrices are nested arrays of rows. Doubles are written in shortest
// round-trip form, so save/load is bit-exact.
std::string checkpoint_to_json(const Checkpoint& ckpt);
// Throws FormatError on malformed JSON, a version other than
// kCheckpointFormatVersion, or tensors that do not match model_config.
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace rdaug
