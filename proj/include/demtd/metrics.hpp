#pragma once

#include <span>
#include <vector>

namespace demtd {

struct Metrics {
    double auc = 0.0;
    double acc = 0.0;
    double sn = 0.0;
    double sp = 0.0;
};

/// Mann-Whitney AUC: concordant positive/negative pairs count 1, ties 1/2.
/// Throws DimMismatch, BadParam (non-binary label), SingleClass.
double auc(std::span<const double> scores, std::span<const int> labels);

/// AUC plus ACC/SN/SP at `threshold` (score >= threshold predicts class 1).
Metrics metrics(std::span<const double> scores, std::span<const int> labels, double threshold = 0.5);

struct MetricsSummary {
    std::vector<Metrics> runs;
    Metrics mean;
    Metrics std; // sample standard deviation, 0 for a single run
};

MetricsSummary summarize(const std::vector<Metrics>& runs);

} // namespace demtd
