#pragma once

#include <string>
#include <vector>

#include "demtd/cross_validation.hpp"
#include "demtd/invariants.hpp"
#include "demtd/volume.hpp"

namespace demtd {

struct Lesion {
    std::string id;
    Volume3D volume;
    MaskROI mask;
    int label = 0;
};

struct GridParams {
    std::vector<int> root_powers{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> levels = standard_gray_levels();
    CvParams cv;
    InvariantParams invariants;
    int threads = 1; // cells evaluated concurrently
};

struct GridRow {
    int root_power = 0;
    int levels = 0;
    MetricsSummary summary;
};

struct GridResult {
    std::vector<GridRow> rows; // root power major, level list order
    std::size_t best = 0;      // first row with the highest mean AUC
};

/// Invariant maps are computed once per lesion and shared by all cells.
GridResult grid_search(const std::vector<Lesion>& lesions, const GridParams& params);

/// Same, from precomputed invariant maps (maps[i] belongs to lesions[i]).
GridResult grid_search(const std::vector<Lesion>& lesions, const std::vector<InvariantMap>& maps, const GridParams& params);

} // namespace demtd
