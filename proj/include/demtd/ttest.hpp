#pragma once

#include <span>

namespace demtd {

struct TTest {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0; // two-sided
    double mean_a = 0.0;
    double mean_b = 0.0;
};

/// Welch unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
/// Two constant samples give p = 1 when equal and p = 0 otherwise.
/// Throws TooFewSamples (fewer than 2 values in either sample), NonFinite.
TTest welch_ttest(std::span<const double> a, std::span<const double> b);

inline double ttest_scores(std::span<const double> a, std::span<const double> b) { return welch_ttest(a, b).p; }

} // namespace demtd
