#include "demtd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "demtd/error.hpp"

namespace demtd {

namespace {

void check(std::span<const double> scores, std::span<const int> labels)
{
    if (scores.size() != labels.size())
        throw Error(ErrorCode::DimMismatch, "scores and labels differ in length");
    for (int l : labels)
        if (l != 0 && l != 1)
            throw Error(ErrorCode::BadParam, "labels must be 0 or 1");
    for (double s : scores)
        if (std::isnan(s))
            throw Error(ErrorCode::NonFinite, "score is NaN");
}

} // namespace

double auc(std::span<const double> scores, std::span<const int> labels)
{
    check(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of doubled midranks of the positives, kept in integers so the
    // result is the exact pair count.
    std::uint64_t pos = 0, rank2_sum = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]])
            ++j;
        const std::uint64_t mid2 = static_cast<std::uint64_t>(i + 1 + j); // 2 * midrank of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) {
                ++pos;
                rank2_sum += mid2;
            }
        i = j;
    }
    const std::uint64_t neg = n - pos;
    if (pos == 0 || neg == 0)
        throw Error(ErrorCode::SingleClass, "AUC needs both classes");
    // 2 * U = rank2_sum - pos * (pos + 1)
    const std::uint64_t u2 = rank2_sum - pos * (pos + 1);
    return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

Metrics metrics(std::span<const double> scores, std::span<const int> labels, double threshold)
{
    Metrics m;
    m.auc = auc(scores, labels);
    std::size_t tp = 0, tn = 0, p = 0, n = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (labels[i] == 1) {
            ++p;
            tp += predicted;
        } else {
            ++n;
            tn += !predicted;
        }
    }
    m.acc = static_cast<double>(tp + tn) / static_cast<double>(p + n);
    m.sn = static_cast<double>(tp) / static_cast<double>(p);
    m.sp = static_cast<double>(tn) / static_cast<double>(n);
    return m;
}

MetricsSummary summarize(const std::vector<Metrics>& runs)
{
    MetricsSummary s;
    s.runs = runs;
    if (runs.empty())
        return s;
    const double k = static_cast<double>(runs.size());
    auto stat = [&](double Metrics::*field, double& mean, double& sd) {
        double sum = 0.0;
        for (const Metrics& m : runs)
            sum += m.*field;
        mean = sum / k;
        double ss = 0.0;
        for (const Metrics& m : runs)
            ss += (m.*field - mean) * (m.*field - mean);
        sd = runs.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    };
    stat(&Metrics::auc, s.mean.auc, s.std.auc);
    stat(&Metrics::acc, s.mean.acc, s.std.acc);
    stat(&Metrics::sn, s.mean.sn, s.std.sn);
    stat(&Metrics::sp, s.mean.sp, s.std.sp);
    return s;
}

} // namespace demtd
