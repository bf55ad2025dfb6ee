#pragma once

#include <cstdint>
#include <vector>

#include "demtd/dataset.hpp"
#include "demtd/feature_selection.hpp"
#include "demtd/metrics.hpp"
#include "demtd/random_forest.hpp"

namespace demtd {

struct CvParams {
    ForestParams forest;
    int repeats = 50;
    std::uint64_t seed = 1;
    double threshold = 0.5;
    bool kl = false;   // fit a KL basis on each training fold (needs 364 features)
    bool fsfs = false; // forward selection inside each training fold
    FsfsParams fsfs_params;
};

struct Split {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
};

/// Stratified half/half split. Odd class counts put the spare class-0
/// sample in fold A and the spare class-1 sample in fold B.
Split stratified_halves(const std::vector<int>& labels, std::uint64_t seed);

struct CvResult {
    MetricsSummary summary;
    std::vector<std::vector<double>> scores; // per repeat, dataset order
    std::vector<int> selected_features;      // with fsfs: chosen in at least half of the folds, most frequent first; else all
    std::vector<int> selection_counts;       // per feature, over all folds
};

/// Repeated two-fold cross-validation with pooled fold scores.
/// Throws TooFewSamples (< 2 per class), BasisMismatch.
CvResult cross_validate(const Dataset& data, const CvParams& params);

} // namespace demtd
