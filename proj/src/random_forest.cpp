#include "demtd/random_forest.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <mutex>
#include <thread>

#include "demtd/error.hpp"
#include "demtd/rng.hpp"

namespace demtd {

namespace {

double gini_mass(double w0, double w1)
{
    const double w = w0 + w1;
    return w > 0.0 ? w - (w0 * w0 + w1 * w1) / w : 0.0; // W * gini
}

struct TreeBuilder {
    const Dataset& data;
    const ForestParams& params;
    int mtry;
    std::array<double, 2> class_weight;
    Rng rng;
    std::vector<double> importance;

    struct Item {
        double value;
        std::size_t sample;
    };

    RandomForest::Tree build(std::vector<std::size_t> samples)
    {
        RandomForest::Tree tree;
        struct Pending {
            int node;
            std::vector<std::size_t> samples;
        };
        std::vector<Pending> stack;
        tree.emplace_back();
        stack.push_back({0, std::move(samples)});
        std::vector<int> features(data.dim);
        std::vector<Item> items;

        while (!stack.empty()) {
            Pending cur = std::move(stack.back());
            stack.pop_back();
            double w0 = 0.0, w1 = 0.0;
            for (std::size_t s : cur.samples)
                (data.labels[s] ? w1 : w0) += class_weight[static_cast<std::size_t>(data.labels[s])];

            const bool pure = w0 == 0.0 || w1 == 0.0;
            int best_feature = -1;
            double best_threshold = 0.0;
            double best_gain = 0.0;
            if (!pure && cur.samples.size() > static_cast<std::size_t>(params.min_node_size)) {
                const double parent = gini_mass(w0, w1);
                for (std::size_t f = 0; f < features.size(); ++f)
                    features[f] = static_cast<int>(f);
                for (int k = 0; k < mtry; ++k) {
                    const auto pick = static_cast<std::size_t>(k) +
                                      static_cast<std::size_t>(rng.below(features.size() - static_cast<std::size_t>(k)));
                    std::swap(features[static_cast<std::size_t>(k)], features[pick]);
                    const int f = features[static_cast<std::size_t>(k)];

                    items.clear();
                    for (std::size_t s : cur.samples)
                        items.push_back({data.x[s * data.dim + static_cast<std::size_t>(f)], s});
                    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
                        return a.value < b.value || (a.value == b.value && a.sample < b.sample);
                    });
                    double l0 = 0.0, l1 = 0.0;
                    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
                        const int y = data.labels[items[i].sample];
                        (y ? l1 : l0) += class_weight[static_cast<std::size_t>(y)];
                        if (items[i].value == items[i + 1].value)
                            continue;
                        const double gain = parent - gini_mass(l0, l1) - gini_mass(w0 - l0, w1 - l1);
                        if (gain > best_gain) {
                            best_gain = gain;
                            best_feature = f;
                            const double lo = items[i].value, hi = items[i + 1].value;
                            double mid = lo + (hi - lo) / 2.0;
                            if (!(mid < hi))
                                mid = lo;
                            best_threshold = mid;
                        }
                    }
                }
                if (best_gain <= 1e-12 * (w0 + w1))
                    best_feature = -1;
            }

            if (best_feature < 0) {
                RandomForest::Node& leaf = tree[static_cast<std::size_t>(cur.node)];
                leaf.feature = -1;
                if (w1 > w0)
                    leaf.vote = 1;
                else if (w1 < w0)
                    leaf.vote = 0;
                else
                    leaf.vote = static_cast<int>(rng.below(2));
                continue;
            }

            importance[static_cast<std::size_t>(best_feature)] += best_gain;
            std::vector<std::size_t> left, right;
            for (std::size_t s : cur.samples)
                (data.x[s * data.dim + static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right).push_back(s);
            const int li = static_cast<int>(tree.size());
            tree.emplace_back();
            const int ri = static_cast<int>(tree.size());
            tree.emplace_back();
            RandomForest::Node& node = tree[static_cast<std::size_t>(cur.node)];
            node.feature = best_feature;
            node.threshold = best_threshold;
            node.left = li;
            node.right = ri;
            // Right first so the left subtree is expanded next (depth-first, left to right).
            stack.push_back({ri, std::move(right)});
            stack.push_back({li, std::move(left)});
        }
        return tree;
    }
};

int vote(const RandomForest::Tree& tree, std::span<const double> sample)
{
    std::size_t i = 0;
    while (tree[i].feature >= 0)
        i = static_cast<std::size_t>(sample[static_cast<std::size_t>(tree[i].feature)] <= tree[i].threshold ? tree[i].left
                                                                                                            : tree[i].right);
    return tree[i].vote;
}

template <class T>
void put(std::ostream& out, const T& v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in)
{
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw Error(ErrorCode::HeaderParse, "truncated model file");
    return v;
}

constexpr char kMagic[8] = {'D', 'E', 'M', 'T', 'D', 'R', 'F', '\0'};
constexpr std::uint32_t kVersion = 1;

} // namespace

int resolve_mtry(const ForestParams& params, std::size_t p)
{
    if (params.mtry < 0)
        throw Error(ErrorCode::BadParam, "mtry must be nonnegative");
    const int requested = params.mtry == 0 ? static_cast<int>(std::floor(std::sqrt(static_cast<double>(p)))) : params.mtry;
    return std::clamp(requested, 1, static_cast<int>(std::max<std::size_t>(p, 1)));
}

std::vector<std::size_t> RandomForest::bootstrap_indices(std::uint64_t seed, int tree, std::size_t n)
{
    Rng rng(Rng::derive(seed, 2 * static_cast<std::uint64_t>(tree)));
    std::vector<std::size_t> idx(n);
    for (auto& i : idx)
        i = static_cast<std::size_t>(rng.below(n));
    return idx;
}

RandomForest RandomForest::train(const Dataset& data, const ForestParams& params)
{
    if (data.size() == 0)
        throw Error(ErrorCode::EmptyTrainSet, "training set is empty");
    std::vector<std::vector<std::size_t>> resamples(static_cast<std::size_t>(std::max(params.n_trees, 0)));
    for (int t = 0; t < params.n_trees; ++t) {
        if (params.bootstrap) {
            resamples[static_cast<std::size_t>(t)] = bootstrap_indices(params.seed, t, data.size());
        } else {
            auto& all = resamples[static_cast<std::size_t>(t)];
            all.resize(data.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                all[i] = i;
        }
    }
    return train(data, params, resamples);
}

RandomForest RandomForest::train(const Dataset& data, const ForestParams& params,
                                 const std::vector<std::vector<std::size_t>>& resamples)
{
    if (data.size() == 0)
        throw Error(ErrorCode::EmptyTrainSet, "training set is empty");
    if (data.dim == 0)
        throw Error(ErrorCode::BadParam, "training set has no features");
    const std::size_t n1 = data.count(1);
    const std::size_t n0 = data.size() - n1;
    if (n0 == 0 || n1 == 0)
        throw Error(ErrorCode::SingleClass, "training set holds a single class");
    if (params.n_trees < 1)
        throw Error(ErrorCode::BadParam, "n_trees must be >= 1");
    if (params.min_node_size < 1)
        throw Error(ErrorCode::BadParam, "min_node_size must be >= 1");
    if (resamples.size() != static_cast<std::size_t>(params.n_trees))
        throw Error(ErrorCode::BadParam, "one resample list per tree is required");

    RandomForest forest;
    forest.params_ = params;
    forest.dim_ = data.dim;
    forest.trees_.resize(resamples.size());
    const int mtry = resolve_mtry(params, data.dim);
    std::array<double, 2> weights{1.0, 1.0};
    if (params.class_balance) {
        const double n = static_cast<double>(data.size());
        weights = {n / (2.0 * static_cast<double>(n0)), n / (2.0 * static_cast<double>(n1))};
    }

    std::vector<std::vector<double>> importance(resamples.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < resamples.size(); t = next++) {
            TreeBuilder builder{data, params, mtry, weights,
                                Rng(Rng::derive(params.seed, 2 * static_cast<std::uint64_t>(t) + 1)),
                                std::vector<double>(data.dim, 0.0)};
            for (std::size_t s : resamples[t])
                if (s >= data.size())
                    throw Error(ErrorCode::BadParam, "resample index out of range");
            forest.trees_[t] = builder.build(resamples[t]);
            importance[t] = std::move(builder.importance);
        }
    };
    unsigned threads = params.threads > 0 ? static_cast<unsigned>(params.threads) : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(resamples.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                try {
                    worker();
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = resamples.size();
                }
            });
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    forest.importance_.assign(data.dim, 0.0);
    for (const auto& imp : importance)
        for (std::size_t f = 0; f < imp.size(); ++f)
            forest.importance_[f] += imp[f];
    for (double& v : forest.importance_)
        v /= static_cast<double>(resamples.size());
    return forest;
}

double RandomForest::predict(std::span<const double> sample) const
{
    if (sample.size() != dim_)
        throw Error(ErrorCode::DimMismatch, "sample has " + std::to_string(sample.size()) + " features, model expects " +
                                                std::to_string(dim_));
    std::size_t votes = 0;
    for (const Tree& t : trees_)
        votes += static_cast<std::size_t>(vote(t, sample));
    return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

std::vector<double> RandomForest::predict(const Dataset& data) const
{
    std::vector<double> scores(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        scores[i] = predict(data.row(i));
    return scores;
}

void RandomForest::save(std::ostream& out) const
{
    out.write(kMagic, sizeof(kMagic));
    put(out, kVersion);
    put(out, static_cast<std::int32_t>(params_.n_trees));
    put(out, static_cast<std::int32_t>(params_.mtry));
    put(out, static_cast<std::int32_t>(params_.min_node_size));
    put(out, static_cast<std::uint8_t>(params_.bootstrap));
    put(out, static_cast<std::uint8_t>(params_.class_balance));
    put(out, params_.seed);
    put(out, static_cast<std::uint64_t>(dim_));
    for (double v : importance_)
        put(out, v);
    put(out, static_cast<std::uint64_t>(trees_.size()));
    for (const Tree& t : trees_) {
        put(out, static_cast<std::uint64_t>(t.size()));
        for (const Node& n : t) {
            put(out, static_cast<std::int32_t>(n.feature));
            put(out, n.threshold);
            put(out, static_cast<std::int32_t>(n.left));
            put(out, static_cast<std::int32_t>(n.right));
            put(out, static_cast<std::int32_t>(n.vote));
        }
    }
}

RandomForest RandomForest::load(std::istream& in)
{
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + 8, kMagic))
        throw Error(ErrorCode::HeaderParse, "not a demtd forest model");
    if (get<std::uint32_t>(in) != kVersion)
        throw Error(ErrorCode::HeaderParse, "unsupported model version");
    RandomForest f;
    f.params_.n_trees = get<std::int32_t>(in);
    f.params_.mtry = get<std::int32_t>(in);
    f.params_.min_node_size = get<std::int32_t>(in);
    f.params_.bootstrap = get<std::uint8_t>(in) != 0;
    f.params_.class_balance = get<std::uint8_t>(in) != 0;
    f.params_.seed = get<std::uint64_t>(in);
    f.dim_ = static_cast<std::size_t>(get<std::uint64_t>(in));
    f.importance_.resize(f.dim_);
    for (double& v : f.importance_)
        v = get<double>(in);
    f.trees_.resize(static_cast<std::size_t>(get<std::uint64_t>(in)));
    for (Tree& t : f.trees_) {
        t.resize(static_cast<std::size_t>(get<std::uint64_t>(in)));
        for (Node& n : t) {
            n.feature = get<std::int32_t>(in);
            n.threshold = get<double>(in);
            n.left = get<std::int32_t>(in);
            n.right = get<std::int32_t>(in);
            n.vote = get<std::int32_t>(in);
            if (n.feature >= static_cast<int>(f.dim_) ||
                (n.feature >= 0 && (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(t.size()) ||
                                    n.right >= static_cast<int>(t.size()))))
                throw Error(ErrorCode::HeaderParse, "corrupt tree node");
        }
    }
    if (f.trees_.empty())
        throw Error(ErrorCode::HeaderParse, "model has no trees");
    return f;
}

} // namespace demtd
