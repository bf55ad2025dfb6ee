#pragma once

#include <cstdint>
#include <vector>

#include "demtd/invariants.hpp"
#include "demtd/volume.hpp"

namespace demtd {

/// Odd one-to-one compression of E into [-pi/2, pi/2]:
///   E > 0:  atan(1 / E^(1/n))
///   E = 0:  pi/2 (limit of the nonnegative branch)
///   E < 0: -atan(1 / |E|^(1/n))
/// Throws BadParam for n < 1.
double suppress(double e, int root_power);

struct SuppressedMap {
    Dims dims;
    int root_power = 1;
    std::vector<double> q;
    std::vector<std::uint8_t> included;
};

SuppressedMap suppress_map(const InvariantMap& map, int root_power);

/// Quantized gray levels over the ROI; excluded voxels hold kExcluded.
struct LabelMap {
    static constexpr std::int16_t kExcluded = -1;

    Dims dims;
    int levels = 0;
    std::vector<std::int16_t> labels;

    bool included(std::size_t i) const { return labels[i] != kExcluded; }
};

/// Gray-level counts searched by the grid: 16, 24, ..., 128.
std::vector<int> standard_gray_levels();
bool is_standard_gray_level(int levels);

/// Accepted range for quantization; the on-disk label map is u8.
constexpr int kMinLevels = 2;
constexpr int kMaxLevels = 256;

/// label = floor((Q - Qmin) / (Qmax - Qmin) * L), clamped to L - 1, with
/// Qmin/Qmax over masked voxels. A flat map quantizes to 0.
/// Throws EmptyMask, DimMismatch, BadParam.
LabelMap quantize(const SuppressedMap& map, const MaskROI& mask, int levels);

/// Probability per bin over included voxels; label l goes to bin
/// floor(l * bins / L). Throws EmptyMask, BadParam.
std::vector<double> histogram(const LabelMap& labels, int bins);

} // namespace demtd
