#pragma once

#include <string>
#include <vector>

#include "demtd/glcm.hpp"
#include "demtd/invariants.hpp"
#include "demtd/suppression.hpp"

namespace demtd {

/// 364 texture values, direction-major (13 blocks of 28 measures).
struct FeatureVector {
    std::string id;
    int label = 0; // 0 benign, 1 malignant
    std::vector<double> values;
};

struct FeatureParams {
    int root_power = 4;
    int levels = 104;
    InvariantParams invariants;
};

/// 13 GLCMs x 28 measures from a label map. A direction with no valid pair
/// contributes a zero block; NoValidPairs only if every direction is empty.
std::vector<double> glcm_descriptor(const LabelMap& labels, const MaskROI& mask);

/// Suppress, quantize and describe a precomputed invariant map.
std::vector<double> descriptor_from_map(const InvariantMap& map, const MaskROI& mask, int root_power, int levels);

/// Full pipeline: invariant map -> suppression -> quantization -> 364 values.
/// Throws BadParam for root power outside [1, 9].
FeatureVector demtd_features(const Volume3D& volume, const MaskROI& mask, const FeatureParams& params = {});

void check_root_power(int root_power);

} // namespace demtd
