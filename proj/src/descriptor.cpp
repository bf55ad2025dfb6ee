#include "demtd/descriptor.hpp"

#include <algorithm>

#include "demtd/error.hpp"

namespace demtd {

void check_root_power(int root_power)
{
    if (root_power < 1 || root_power > 9)
        throw Error(ErrorCode::BadParam, "root power n must lie in [1, 9], got " + std::to_string(root_power));
}

std::vector<double> glcm_descriptor(const LabelMap& labels, const MaskROI& mask)
{
    std::vector<double> values(kFeatureLength, 0.0);
    std::size_t populated = 0;
    const DirectionSet& dirs = directions_13();
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        Glcm g;
        try {
            g = build_glcm(labels, mask, dirs[d]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoValidPairs)
                throw;
            continue;
        }
        const HaralickMeasures m = haralick_28(g);
        std::copy(m.begin(), m.end(), values.begin() + static_cast<std::ptrdiff_t>(d * kMeasures));
        ++populated;
    }
    if (populated == 0)
        throw Error(ErrorCode::NoValidPairs, "ROI has no adjacent voxel pair in any of the 13 directions");
    return values;
}

std::vector<double> descriptor_from_map(const InvariantMap& map, const MaskROI& mask, int root_power, int levels)
{
    check_root_power(root_power);
    const SuppressedMap q = suppress_map(map, root_power);
    const LabelMap labels = quantize(q, mask, levels);
    return glcm_descriptor(labels, mask);
}

FeatureVector demtd_features(const Volume3D& volume, const MaskROI& mask, const FeatureParams& params)
{
    check_root_power(params.root_power);
    const InvariantMap map = invariant_map(volume, mask, params.invariants);
    FeatureVector out;
    out.values = descriptor_from_map(map, mask, params.root_power, params.levels);
    return out;
}

} // namespace demtd
