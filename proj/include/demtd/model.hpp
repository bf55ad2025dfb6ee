#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "demtd/kl_transform.hpp"
#include "demtd/random_forest.hpp"

namespace demtd {

/// Trained classifier as stored on disk: optional KL basis applied to the
/// raw features, then the selected columns, then the forest.
struct Model {
    std::size_t input_dim = 0;
    std::optional<KlBasis> kl;
    std::vector<int> features; // columns fed to the forest, after KL
    RandomForest forest;

    // Throws DimMismatch.
    double predict(std::span<const double> sample) const;

    void save(const std::filesystem::path& path) const;
    // Throws MissingFile, HeaderParse.
    static Model load(const std::filesystem::path& path);
};

} // namespace demtd
