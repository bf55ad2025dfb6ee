#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "demtd/dataset.hpp"

namespace demtd {

struct ForestParams {
    int n_trees = 5000;
    int mtry = 0; // 0 selects floor(sqrt(p))
    int min_node_size = 1;
    bool bootstrap = true;
    bool class_balance = false; // inverse-frequency class weights in the Gini criterion
    std::uint64_t seed = 1;
    int threads = 0; // 0 uses the hardware concurrency

    friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

/// Effective mtry for p features: the requested value clamped to [1, p].
int resolve_mtry(const ForestParams& params, std::size_t p);

/// Breiman random forest of CART trees split on Gini impurity decrease.
/// Tree t draws its bootstrap from Rng::derive(seed, 2t) and its feature
/// subsets from Rng::derive(seed, 2t + 1), so results do not depend on the
/// thread count.
class RandomForest {
public:
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int vote = 0;
    };
    using Tree = std::vector<Node>;

    // Throws EmptyTrainSet, SingleClass, BadParam.
    static RandomForest train(const Dataset& data, const ForestParams& params);

    // Same with caller-supplied resample indices, one list per tree.
    static RandomForest train(const Dataset& data, const ForestParams& params,
                              const std::vector<std::vector<std::size_t>>& resamples);

    /// Bootstrap indices tree t would draw for n samples.
    static std::vector<std::size_t> bootstrap_indices(std::uint64_t seed, int tree, std::size_t n);

    /// Fraction of trees voting class 1. Throws DimMismatch.
    double predict(std::span<const double> sample) const;
    std::vector<double> predict(const Dataset& data) const;

    /// Mean total Gini decrease per feature over all trees.
    const std::vector<double>& gini_importance() const noexcept { return importance_; }

    const ForestParams& params() const noexcept { return params_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Tree>& trees() const noexcept { return trees_; }

    void save(std::ostream& out) const;
    static RandomForest load(std::istream& in);

private:
    ForestParams params_;
    std::size_t dim_ = 0;
    std::vector<Tree> trees_;
    std::vector<double> importance_;
};

} // namespace demtd
