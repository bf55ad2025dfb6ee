#pragma once

#include <array>
#include <string>
#include <vector>

#include "demtd/glcm.hpp"

namespace demtd {

/// Karhunen-Loeve basis per texture measure across the 13 directions.
/// rows[k] is the k-th eigenvector (descending eigenvalue); its first
/// nonzero component is positive.
struct KlBasis {
    struct Measure {
        std::array<double, kDirections> mean{};
        std::array<std::array<double, kDirections>, kDirections> rows{};
        std::array<double, kDirections> eigenvalues{};
    };
    std::array<Measure, kMeasures> measures{};
};

/// Fit on direction-major 364-vectors. Throws TooFewSamples (< 2),
/// BasisMismatch (wrong length).
KlBasis kl_transform_fit(const std::vector<std::vector<double>>& train);

/// y = B (x - mean) per measure; coefficient k lands in direction slot k.
std::vector<double> kl_transform_apply(const KlBasis& basis, const std::vector<double>& v);
std::vector<double> kl_transform_inverse(const KlBasis& basis, const std::vector<double>& y);

std::string kl_basis_to_json(const KlBasis& basis);
KlBasis kl_basis_from_json(const std::string& text);

} // namespace demtd
