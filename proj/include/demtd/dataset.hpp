#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "demtd/descriptor.hpp"

namespace demtd {

/// Labeled samples with a uniform feature dimension, stored row-major.
struct Dataset {
    std::vector<std::string> ids;
    std::vector<int> labels;
    std::size_t dim = 0;
    std::vector<double> x;

    std::size_t size() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const { return {x.data() + i * dim, dim}; }
    std::vector<double> row_vector(std::size_t i) const { return {x.begin() + static_cast<std::ptrdiff_t>(i * dim), x.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim)}; }
    std::size_t count(int label) const;

    // Throws DimMismatch (ragged), BadParam (non-binary label), NonFinite.
    static Dataset from_features(const std::vector<FeatureVector>& features);
    void push_back(std::string id, int label, std::span<const double> values);

    Dataset rows(const std::vector<std::size_t>& index) const;
    Dataset columns(const std::vector<int>& features) const;
};

/// Shortest round-trip decimal text for a double ('.' decimal point).
std::string format_double(double v);

/// `id,label,f000,...` with one row per sample.
void write_feature_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& features);
std::vector<FeatureVector> read_feature_csv(const std::filesystem::path& path);

} // namespace demtd
