#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "demtd/suppression.hpp"
#include "demtd/volume.hpp"

namespace demtd {

using Offset = std::array<int, 3>;

constexpr std::size_t kDirections = 13;
constexpr std::size_t kMeasures = 28;
constexpr std::size_t kFeatureLength = kDirections * kMeasures;

using DirectionSet = std::array<Offset, kDirections>;

/// One representative of each antipodal pair of the 26-neighborhood, in
/// canonical order. Feature blocks follow this order.
const DirectionSet& directions_13();

/// Position of d or -d in directions_13(); -1 if neither is present.
int direction_index(const Offset& d);

/// Normalized symmetric co-occurrence matrix, L x L, row-major.
struct Glcm {
    int levels = 0;
    Offset direction{};
    std::vector<double> p;

    double operator()(int i, int j) const { return p[static_cast<std::size_t>(i * levels + j)]; }
};

/// Counts pairs (v, v + d) with both endpoints in the mask and labeled,
/// accumulating (l(v), l(v+d)) and (l(v+d), l(v)), then normalizes.
/// Throws DimMismatch, NoValidPairs.
Glcm build_glcm(const LabelMap& labels, const MaskROI& mask, const Offset& d);

using HaralickMeasures = std::array<double, kMeasures>;

/// Registry names in output order.
const std::array<std::string_view, kMeasures>& haralick_names();

/// The 28 texture measures of one normalized GLCM (see haralick.cpp for
/// the formulas).
HaralickMeasures haralick_28(const Glcm& glcm);

} // namespace demtd
