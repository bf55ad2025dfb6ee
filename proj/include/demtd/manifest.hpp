#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace demtd {

struct ManifestEntry {
    std::string id;
    std::filesystem::path volume;
    std::filesystem::path mask;
    int label = 0;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    std::optional<int> root_power;
    std::optional<int> levels;
    std::optional<std::uint64_t> seed;
};

/// Either a bare array of {id, volume, mask, label} or an object with
/// "lesions" and optional "defaults" {n, levels, seed}. Relative paths
/// resolve against the manifest's directory.
/// Throws MissingFile, HeaderParse, DuplicateId, BadParam (label not 0/1).
Manifest read_manifest(const std::filesystem::path& path);

} // namespace demtd
