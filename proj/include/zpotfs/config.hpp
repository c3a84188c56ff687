#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zpotfs/sim.hpp"

namespace zpotfs {

// Ordered key=value pairs; later entries override earlier ones. Config files
// and CLI flags share the same key names.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat key=value file; '#' starts a comment, blank lines ignored.
KeyValues read_config_file(const std::string& path);

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string timestamp;

    // Rendered as a valid config file: resolving it reproduces the same
    // experiment (the timestamp is a comment, not a key).
    std::string to_text() const;
};

struct ResolvedConfig {
    ExperimentConfig experiment;
    RunManifest manifest;
    std::string out_path;
};

// Applies defaults, then preset, then file values, then flag values; derives
// nu_max, l_max, k_max, l_zp from (fc, speed, delta_f, m, n, profile) and
// validates every grid invariant. Explicit l_max/k_max/l_zp keys (as emitted
// in a manifest) are cross-checked against the derived values.
ResolvedConfig resolve_config(const KeyValues& file_kv, const KeyValues& flag_kv);

// Known presets: "paper-fig2" (64x64 NMSE/BER setup) and "paper-fig3"
// (64x64 PAPR setup, transmit-only, 2000 frames).
KeyValues preset_values(const std::string& name);

}  // namespace zpotfs
