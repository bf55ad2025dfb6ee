#include "demtd/glcm.hpp"

#include <cstdint>

#include "demtd/error.hpp"

namespace demtd {

const DirectionSet& directions_13()
{
    static const DirectionSet set = {{
        {1, 0, 0},
        {0, 1, 0},
        {0, 0, 1},
        {1, 1, 0},
        {1, -1, 0},
        {1, 0, 1},
        {1, 0, -1},
        {0, 1, 1},
        {0, 1, -1},
        {1, 1, 1},
        {1, 1, -1},
        {1, -1, 1},
        {-1, 1, 1},
    }};
    return set;
}

int direction_index(const Offset& d)
{
    const DirectionSet& set = directions_13();
    const Offset neg{-d[0], -d[1], -d[2]};
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set[i] == d || set[i] == neg)
            return static_cast<int>(i);
    return -1;
}

Glcm build_glcm(const LabelMap& labels, const MaskROI& mask, const Offset& d)
{
    if (labels.dims != mask.dims())
        throw Error(ErrorCode::DimMismatch, "label map and mask differ in dims");
    if (labels.levels < 1)
        throw Error(ErrorCode::BadParam, "label map has no gray levels");
    const Dims& dims = labels.dims;
    const auto L = static_cast<std::size_t>(labels.levels);
    std::vector<std::uint64_t> counts(L * L, 0);
    std::uint64_t pairs = 0;

    auto usable = [&](std::size_t i) { return mask.at(i) && labels.labels[i] != LabelMap::kExcluded; };
    for (int z = 0; z < dims.nz; ++z) {
        const int z2 = z + d[2];
        if (z2 < 0 || z2 >= dims.nz)
            continue;
        for (int y = 0; y < dims.ny; ++y) {
            const int y2 = y + d[1];
            if (y2 < 0 || y2 >= dims.ny)
                continue;
            for (int x = 0; x < dims.nx; ++x) {
                const int x2 = x + d[0];
                if (x2 < 0 || x2 >= dims.nx)
                    continue;
                const std::size_t a = dims.index(x, y, z);
                const std::size_t b = dims.index(x2, y2, z2);
                if (!usable(a) || !usable(b))
                    continue;
                const auto la = static_cast<std::size_t>(labels.labels[a]);
                const auto lb = static_cast<std::size_t>(labels.labels[b]);
                ++counts[la * L + lb];
                ++counts[lb * L + la];
                ++pairs;
            }
        }
    }
    if (pairs == 0)
        throw Error(ErrorCode::NoValidPairs, "no masked voxel pairs along direction (" + std::to_string(d[0]) + "," +
                                                 std::to_string(d[1]) + "," + std::to_string(d[2]) + ")");
    Glcm g;
    g.levels = labels.levels;
    g.direction = d;
    g.p.resize(counts.size());
    const double total = static_cast<double>(2 * pairs);
    for (std::size_t i = 0; i < counts.size(); ++i)
        g.p[i] = static_cast<double>(counts[i]) / total;
    return g;
}

} // namespace demtd
