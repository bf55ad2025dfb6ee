#pragma once

#include <cstdint>
#include <vector>

#include "demtd/dataset.hpp"
#include "demtd/random_forest.hpp"

namespace demtd {

struct FsfsParams {
    double epsilon = 1e-4; // minimum AUC gain to accept a feature
    int budget = 30;
    int inner_folds = 5;
    ForestParams forest{.n_trees = 100};
    std::uint64_t seed = 1;
};

struct FsfsResult {
    std::vector<int> selected;   // in order of selection
    std::vector<double> auc_trace; // inner CV AUC after each accepted feature
};

/// Stratified k-fold assignment: fold index per sample.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed);

/// Out-of-fold AUC of a forest restricted to `features`, pooled over folds.
double inner_cv_auc(const Dataset& data, const std::vector<int>& features, const std::vector<int>& folds, int n_folds,
                    const ForestParams& forest);

/// Greedy forward selection on inner stratified CV AUC. The starting
/// reference is chance level (0.5); a feature is accepted only when it
/// raises the best AUC by at least epsilon. Ties go to the lower index.
FsfsResult fsfs(const Dataset& train, const FsfsParams& params);

} // namespace demtd
