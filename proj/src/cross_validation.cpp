#include "demtd/cross_validation.hpp"

#include <algorithm>

#include "demtd/error.hpp"
#include "demtd/kl_transform.hpp"
#include "demtd/rng.hpp"

namespace demtd {

Split stratified_halves(const std::vector<int>& labels, std::uint64_t seed)
{
    Rng rng(seed);
    Split s;
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls)
                members.push_back(i);
        rng.shuffle(members.begin(), members.end());
        const std::size_t in_a = cls == 0 ? (members.size() + 1) / 2 : members.size() / 2;
        s.a.insert(s.a.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(in_a));
        s.b.insert(s.b.end(), members.begin() + static_cast<std::ptrdiff_t>(in_a), members.end());
    }
    std::sort(s.a.begin(), s.a.end());
    std::sort(s.b.begin(), s.b.end());
    return s;
}

namespace {

Dataset kl_project(const KlBasis& basis, const Dataset& d)
{
    Dataset out = d;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto y = kl_transform_apply(basis, d.row_vector(i));
        std::copy(y.begin(), y.end(), out.x.begin() + static_cast<std::ptrdiff_t>(i * d.dim));
    }
    return out;
}

} // namespace

CvResult cross_validate(const Dataset& data, const CvParams& params)
{
    if (params.repeats < 1)
        throw Error(ErrorCode::BadParam, "repeats must be >= 1");
    if (data.count(0) < 2 || data.count(1) < 2)
        throw Error(ErrorCode::TooFewSamples, "cross-validation needs >= 2 samples per class");
    if (params.kl && data.dim != kFeatureLength)
        throw Error(ErrorCode::BasisMismatch, "KL transform needs " + std::to_string(kFeatureLength) + " features, got " +
                                                  std::to_string(data.dim));

    CvResult result;
    result.selection_counts.assign(data.dim, 0);
    std::vector<Metrics> runs;
    int fold_total = 0;
    for (int r = 0; r < params.repeats; ++r) {
        const std::uint64_t base = Rng::derive(params.seed, static_cast<std::uint64_t>(r));
        const Split split = stratified_halves(data.labels, Rng::derive(base, 0));
        std::vector<double> scores(data.size(), 0.0);
        for (int f = 0; f < 2; ++f) {
            const auto& train_idx = f == 0 ? split.a : split.b;
            const auto& test_idx = f == 0 ? split.b : split.a;
            Dataset train = data.rows(train_idx);
            Dataset test = data.rows(test_idx);
            if (params.kl) {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < train.size(); ++i)
                    rows.push_back(train.row_vector(i));
                const KlBasis basis = kl_transform_fit(rows);
                train = kl_project(basis, train);
                test = kl_project(basis, test);
            }
            if (params.fsfs) {
                FsfsParams fp = params.fsfs_params;
                fp.seed = Rng::derive(base, 3 + static_cast<std::uint64_t>(f));
                const FsfsResult sel = fsfs(train, fp);
                std::vector<int> features = sel.selected;
                if (features.empty()) {
                    // Nothing beat chance: fall back to the full feature set.
                    features.resize(train.dim);
                    for (std::size_t j = 0; j < train.dim; ++j)
                        features[j] = static_cast<int>(j);
                } else {
                    for (int j : features)
                        ++result.selection_counts[static_cast<std::size_t>(j)];
                }
                train = train.columns(features);
                test = test.columns(features);
            }
            ++fold_total;
            ForestParams forest = params.forest;
            forest.seed = Rng::derive(base, 1 + static_cast<std::uint64_t>(f));
            const RandomForest model = RandomForest::train(train, forest);
            for (std::size_t k = 0; k < test_idx.size(); ++k)
                scores[test_idx[k]] = model.predict(test.row(k));
        }
        runs.push_back(metrics(scores, data.labels, params.threshold));
        result.scores.push_back(std::move(scores));
    }
    result.summary = summarize(runs);

    if (params.fsfs) {
        std::vector<int> chosen;
        for (std::size_t j = 0; j < result.selection_counts.size(); ++j)
            if (2 * result.selection_counts[j] >= fold_total)
                chosen.push_back(static_cast<int>(j));
        std::stable_sort(chosen.begin(), chosen.end(), [&](int a, int b) {
            return result.selection_counts[static_cast<std::size_t>(a)] > result.selection_counts[static_cast<std::size_t>(b)];
        });
        result.selected_features = std::move(chosen);
    } else {
        result.selected_features.resize(data.dim);
        for (std::size_t j = 0; j < data.dim; ++j)
            result.selected_features[j] = static_cast<int>(j);
    }
    return result;
}

} // namespace demtd
