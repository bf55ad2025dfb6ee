#include "demtd/suppression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "demtd/error.hpp"

namespace demtd {

namespace {

double root(double magnitude, int n)
{
    switch (n) {
    case 1: return magnitude;
    case 2: return std::sqrt(magnitude);
    case 3: return std::cbrt(magnitude);
    default: return std::pow(magnitude, 1.0 / n);
    }
}

} // namespace

double suppress(double e, int root_power)
{
    if (root_power < 1)
        throw Error(ErrorCode::BadParam, "root power must be >= 1");
    if (e == 0.0)
        return std::numbers::pi / 2.0;
    const double q = std::atan(1.0 / root(std::abs(e), root_power));
    return e > 0.0 ? q : -q;
}

SuppressedMap suppress_map(const InvariantMap& map, int root_power)
{
    if (root_power < 1)
        throw Error(ErrorCode::BadParam, "root power must be >= 1");
    SuppressedMap out;
    out.dims = map.dims;
    out.root_power = root_power;
    out.q.assign(map.e.size(), 0.0);
    out.included.assign(map.e.size(), 0);
    for (std::size_t i = 0; i < map.e.size(); ++i) {
        if (!map.included(i))
            continue;
        out.q[i] = suppress(map.e[i], root_power);
        out.included[i] = 1;
    }
    return out;
}

std::vector<int> standard_gray_levels()
{
    std::vector<int> levels;
    for (int l = 16; l <= 128; l += 8)
        levels.push_back(l);
    return levels;
}

bool is_standard_gray_level(int levels)
{
    return levels >= 16 && levels <= 128 && levels % 8 == 0;
}

LabelMap quantize(const SuppressedMap& map, const MaskROI& mask, int levels)
{
    if (levels < kMinLevels || levels > kMaxLevels)
        throw Error(ErrorCode::BadParam, "gray levels must lie in [2, 256]");
    if (mask.dims() != map.dims)
        throw Error(ErrorCode::DimMismatch, "mask dims do not match map dims");
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (std::size_t i = 0; i < map.q.size(); ++i) {
        if (!mask.at(i) || !map.included[i])
            continue;
        qmin = std::min(qmin, map.q[i]);
        qmax = std::max(qmax, map.q[i]);
        ++count;
    }
    if (count == 0)
        throw Error(ErrorCode::EmptyMask, "no masked voxels to quantize");

    LabelMap out;
    out.dims = map.dims;
    out.levels = levels;
    out.labels.assign(map.q.size(), LabelMap::kExcluded);
    const double range = qmax - qmin;
    for (std::size_t i = 0; i < map.q.size(); ++i) {
        if (!mask.at(i) || !map.included[i])
            continue;
        int label = 0;
        if (range > 0.0) {
            const double scaled = std::floor((map.q[i] - qmin) / range * levels);
            label = std::clamp(static_cast<int>(scaled), 0, levels - 1);
        }
        out.labels[i] = static_cast<std::int16_t>(label);
    }
    return out;
}

std::vector<double> histogram(const LabelMap& labels, int bins)
{
    if (bins < 1)
        throw Error(ErrorCode::BadParam, "bins must be positive");
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    std::size_t total = 0;
    for (std::int16_t l : labels.labels) {
        if (l == LabelMap::kExcluded)
            continue;
        const auto bin = static_cast<std::size_t>((static_cast<long long>(l) * bins) / labels.levels);
        ++counts[std::min(bin, counts.size() - 1)];
        ++total;
    }
    if (total == 0)
        throw Error(ErrorCode::EmptyMask, "no labeled voxels");
    std::vector<double> p(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
        p[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
    return p;
}

} // namespace demtd
