#include "demtd/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "demtd/descriptor.hpp"
#include "demtd/error.hpp"

namespace demtd {

GridResult grid_search(const std::vector<Lesion>& lesions, const GridParams& params)
{
    std::vector<InvariantMap> maps;
    maps.reserve(lesions.size());
    for (const Lesion& l : lesions)
        maps.push_back(invariant_map(l.volume, l.mask, params.invariants));
    return grid_search(lesions, maps, params);
}

GridResult grid_search(const std::vector<Lesion>& lesions, const std::vector<InvariantMap>& maps, const GridParams& params)
{
    if (maps.size() != lesions.size())
        throw Error(ErrorCode::DimMismatch, "one invariant map per lesion is required");
    if (params.root_powers.empty() || params.levels.empty())
        throw Error(ErrorCode::BadParam, "grid needs at least one root power and one level count");
    for (int n : params.root_powers)
        check_root_power(n);

    GridResult result;
    for (int n : params.root_powers)
        for (int L : params.levels)
            result.rows.push_back({n, L, {}});

    auto evaluate = [&](GridRow& row, int forest_threads) {
        Dataset data;
        for (std::size_t i = 0; i < lesions.size(); ++i) {
            const auto v = descriptor_from_map(maps[i], lesions[i].mask, row.root_power, row.levels);
            data.push_back(lesions[i].id, lesions[i].label, v);
        }
        CvParams cv = params.cv;
        cv.forest.threads = forest_threads;
        row.summary = cross_validate(data, cv).summary;
    };

    const auto cells = result.rows.size();
    const auto threads = static_cast<std::size_t>(std::clamp(params.threads, 1, static_cast<int>(cells)));
    if (threads == 1) {
        for (GridRow& row : result.rows)
            evaluate(row, params.cv.forest.threads);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next++; i < cells; i = next++)
                        evaluate(result.rows[i], 1);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = cells;
                }
            });
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    for (std::size_t i = 1; i < cells; ++i)
        if (result.rows[i].summary.mean.auc > result.rows[result.best].summary.mean.auc)
            result.best = i;
    return result;
}

} // namespace demtd
