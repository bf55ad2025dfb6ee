#include "demtd/feature_selection.hpp"

#include <algorithm>

#include "demtd/error.hpp"
#include "demtd/metrics.hpp"
#include "demtd/rng.hpp"

namespace demtd {

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed)
{
    if (folds < 2)
        throw Error(ErrorCode::BadParam, "at least two folds are required");
    Rng rng(seed);
    std::vector<int> assignment(labels.size(), 0);
    int offset = 0;
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls)
                members.push_back(i);
        rng.shuffle(members.begin(), members.end());
        // Continue the round robin across classes so fold sizes stay balanced.
        for (std::size_t k = 0; k < members.size(); ++k)
            assignment[members[k]] = static_cast<int>((static_cast<std::size_t>(offset) + k) % static_cast<std::size_t>(folds));
        offset = static_cast<int>((static_cast<std::size_t>(offset) + members.size()) % static_cast<std::size_t>(folds));
    }
    return assignment;
}

double inner_cv_auc(const Dataset& data, const std::vector<int>& features, const std::vector<int>& folds, int n_folds,
                    const ForestParams& forest)
{
    const Dataset view = data.columns(features);
    std::vector<double> scores(data.size(), 0.0);
    for (int f = 0; f < n_folds; ++f) {
        std::vector<std::size_t> train_idx, test_idx;
        for (std::size_t i = 0; i < data.size(); ++i)
            (folds[i] == f ? test_idx : train_idx).push_back(i);
        if (test_idx.empty())
            continue;
        ForestParams fp = forest;
        fp.seed = Rng::derive(forest.seed, static_cast<std::uint64_t>(f));
        const RandomForest model = RandomForest::train(view.rows(train_idx), fp);
        for (std::size_t i : test_idx)
            scores[i] = model.predict(view.row(i));
    }
    return auc(scores, data.labels);
}

FsfsResult fsfs(const Dataset& train, const FsfsParams& params)
{
    if (train.dim == 0)
        throw Error(ErrorCode::BadParam, "feature selection needs at least one feature");
    if (params.budget < 1)
        throw Error(ErrorCode::BadParam, "feature budget must be >= 1");
    const std::size_t smaller = std::min(train.count(0), train.count(1));
    if (smaller < 2)
        throw Error(ErrorCode::TooFewSamples, "feature selection needs >= 2 samples per class");
    const int n_folds = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(params.inner_folds, 2)), smaller));
    const std::vector<int> folds = stratified_folds(train.labels, n_folds, Rng::derive(params.seed, 0));
    ForestParams forest = params.forest;
    forest.seed = Rng::derive(params.seed, 1);

    FsfsResult result;
    std::vector<bool> used(train.dim, false);
    double current = 0.5;
    const std::size_t budget = std::min<std::size_t>(static_cast<std::size_t>(params.budget), train.dim);
    while (result.selected.size() < budget) {
        int best_feature = -1;
        double best_auc = -1.0;
        std::vector<int> candidate = result.selected;
        candidate.push_back(0);
        for (std::size_t j = 0; j < train.dim; ++j) {
            if (used[j])
                continue;
            candidate.back() = static_cast<int>(j);
            const double a = inner_cv_auc(train, candidate, folds, n_folds, forest);
            if (a > best_auc) {
                best_auc = a;
                best_feature = static_cast<int>(j);
            }
        }
        if (best_feature < 0 || best_auc - current < params.epsilon)
            break;
        used[static_cast<std::size_t>(best_feature)] = true;
        result.selected.push_back(best_feature);
        result.auc_trace.push_back(best_auc);
        current = best_auc;
    }
    return result;
}

} // namespace demtd
