// Texture measures of a normalized, symmetric GLCM p(i, j). Gray values are
// 1-based (i, j = 1..L). Marginals px, py; sums p_{x+y}(k), k = 2..2L;
// differences p_{x-y}(k), k = 0..L-1. Entropies use log2 and skip p = 0.
//
//   0  angular_second_moment   sum p^2
//   1  contrast                sum (i-j)^2 p
//   2  correlation             (sum ij p - mx my) / (sx sy); 1 when sx sy = 0
//   3  sum_of_squares          sum (i - mx)^2 p
//   4  inverse_difference_moment  sum p / (1 + (i-j)^2)
//   5  sum_average             SA = sum k p_{x+y}(k)
//   6  sum_variance            sum (k - SA)^2 p_{x+y}(k)
//   7  sum_entropy             -sum p_{x+y} log2 p_{x+y}
//   8  entropy                 HXY = -sum p log2 p
//   9  difference_variance     sum (k - DA)^2 p_{x-y}(k)
//  10  difference_entropy      -sum p_{x-y} log2 p_{x-y}
//  11  information_correlation_1  (HXY - HXY1) / max(HX, HY); 0 when max = 0
//  12  information_correlation_2  sqrt(1 - 2^{-2 (HXY2 - HXY)})
//  13  maximal_correlation_coefficient  sqrt(second eigenvalue of
//      Q(i,j) = sum_k p(i,k) p(j,k) / (px(i) py(k)))
//  14  autocorrelation         sum ij p
//  15  cluster_shade           sum (i + j - mx - my)^3 p
//  16  cluster_prominence      sum (i + j - mx - my)^4 p
//  17  cluster_tendency        sum (i + j - mx - my)^2 p
//  18  dissimilarity           sum |i-j| p
//  19  homogeneity             sum p / (1 + |i-j|)
//  20  maximum_probability     max p
//  21  inverse_difference_normalized         sum p / (1 + |i-j| / L)
//  22  inverse_difference_moment_normalized  sum p / (1 + (i-j)^2 / L^2)
//  23  difference_average      DA = sum k p_{x-y}(k)
//  24  inverse_variance        sum_{i != j} p / (i-j)^2
//  25  joint_average           mx = sum i p
//  26  marginal_entropy        HX = -sum px log2 px
//  27  difference_energy       sum p_{x-y}(k)^2
//
// HXY1 = -sum p log2(px py), HXY2 = -sum px py log2(px py).

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "demtd/glcm.hpp"

namespace demtd {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double maximal_correlation(const Glcm& g, const std::vector<double>& px, const std::vector<double>& py)
{
    const int L = g.levels;
    std::vector<int> rows;
    std::vector<int> cols;
    for (int i = 0; i < L; ++i) {
        if (px[static_cast<std::size_t>(i)] > 0.0)
            rows.push_back(i);
        if (py[static_cast<std::size_t>(i)] > 0.0)
            cols.push_back(i);
    }
    if (rows.size() < 2)
        return 0.0;
    // Q is similar to A A^T with A(i,k) = p(i,k) / sqrt(px(i) py(k)).
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                g(rows[r], cols[c]) / std::sqrt(px[static_cast<std::size_t>(rows[r])] * py[static_cast<std::size_t>(cols[c])]);
    const Eigen::MatrixXd m = a * a.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues(); // ascending
    const double second = ev(ev.size() - 2);
    return std::sqrt(std::clamp(second, 0.0, 1.0));
}

} // namespace

const std::array<std::string_view, kMeasures>& haralick_names()
{
    static const std::array<std::string_view, kMeasures> names = {
        "angular_second_moment",
        "contrast",
        "correlation",
        "sum_of_squares",
        "inverse_difference_moment",
        "sum_average",
        "sum_variance",
        "sum_entropy",
        "entropy",
        "difference_variance",
        "difference_entropy",
        "information_correlation_1",
        "information_correlation_2",
        "maximal_correlation_coefficient",
        "autocorrelation",
        "cluster_shade",
        "cluster_prominence",
        "cluster_tendency",
        "dissimilarity",
        "homogeneity",
        "maximum_probability",
        "inverse_difference_normalized",
        "inverse_difference_moment_normalized",
        "difference_average",
        "inverse_variance",
        "joint_average",
        "marginal_entropy",
        "difference_energy",
    };
    return names;
}

HaralickMeasures haralick_28(const Glcm& g)
{
    const int L = g.levels;
    const auto uL = static_cast<std::size_t>(L);
    std::vector<double> px(uL, 0.0), py(uL, 0.0);
    std::vector<double> psum(2 * uL + 1, 0.0), pdiff(uL, 0.0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const double p = g(i, j);
            px[static_cast<std::size_t>(i)] += p;
            py[static_cast<std::size_t>(j)] += p;
            psum[static_cast<std::size_t>(i + j + 2)] += p;
            pdiff[static_cast<std::size_t>(std::abs(i - j))] += p;
        }

    double mx = 0, my = 0;
    for (int i = 0; i < L; ++i) {
        mx += (i + 1) * px[static_cast<std::size_t>(i)];
        my += (i + 1) * py[static_cast<std::size_t>(i)];
    }
    double vx = 0, vy = 0, hx = 0, hy = 0;
    for (int i = 0; i < L; ++i) {
        vx += (i + 1 - mx) * (i + 1 - mx) * px[static_cast<std::size_t>(i)];
        vy += (i + 1 - my) * (i + 1 - my) * py[static_cast<std::size_t>(i)];
        hx -= plogp(px[static_cast<std::size_t>(i)]);
        hy -= plogp(py[static_cast<std::size_t>(i)]);
    }

    double asm_ = 0, contrast = 0, sum_sq = 0, idm = 0, entropy = 0, autocorr = 0;
    double shade = 0, prominence = 0, tendency = 0, dissim = 0, homog = 0, maxp = 0;
    double idn = 0, idmn = 0, hxy1 = 0, hxy2 = 0;
    const double dL = L;
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
            const double p = g(i, j);
            const double pxy = px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j)];
            if (pxy > 0.0) {
                hxy1 -= p * std::log2(pxy);
                hxy2 -= pxy * std::log2(pxy);
            }
            if (p == 0.0)
                continue;
            const double gi = i + 1, gj = j + 1;
            const double d = gi - gj;
            const double ad = std::abs(d);
            const double c = gi + gj - mx - my;
            asm_ += p * p;
            contrast += d * d * p;
            sum_sq += (gi - mx) * (gi - mx) * p;
            idm += p / (1.0 + d * d);
            entropy -= plogp(p);
            autocorr += gi * gj * p;
            shade += c * c * c * p;
            prominence += c * c * c * c * p;
            tendency += c * c * p;
            dissim += ad * p;
            homog += p / (1.0 + ad);
            maxp = std::max(maxp, p);
            idn += p / (1.0 + ad / dL);
            idmn += p / (1.0 + d * d / (dL * dL));
        }
    }

    double sum_avg = 0, sum_entropy = 0;
    for (std::size_t k = 2; k < psum.size(); ++k) {
        sum_avg += static_cast<double>(k) * psum[k];
        sum_entropy -= plogp(psum[k]);
    }
    double sum_var = 0;
    for (std::size_t k = 2; k < psum.size(); ++k)
        sum_var += (static_cast<double>(k) - sum_avg) * (static_cast<double>(k) - sum_avg) * psum[k];

    double diff_avg = 0, diff_entropy = 0, diff_energy = 0, inv_var = 0;
    for (std::size_t k = 0; k < pdiff.size(); ++k) {
        diff_avg += static_cast<double>(k) * pdiff[k];
        diff_entropy -= plogp(pdiff[k]);
        diff_energy += pdiff[k] * pdiff[k];
        if (k > 0)
            inv_var += pdiff[k] / static_cast<double>(k * k);
    }
    double diff_var = 0;
    for (std::size_t k = 0; k < pdiff.size(); ++k)
        diff_var += (static_cast<double>(k) - diff_avg) * (static_cast<double>(k) - diff_avg) * pdiff[k];

    const double sxsy = std::sqrt(vx * vy);
    const double correlation = sxsy > 1e-15 ? (autocorr - mx * my) / sxsy : 1.0;
    const double hmax = std::max(hx, hy);
    const double imc1 = hmax > 0.0 ? (entropy - hxy1) / hmax : 0.0;
    const double imc2 = std::sqrt(std::max(0.0, 1.0 - std::exp2(-2.0 * (hxy2 - entropy))));

    return {asm_,        contrast,     correlation, sum_sq,     idm,        sum_avg,
            sum_var,     sum_entropy,  entropy,     diff_var,   diff_entropy, imc1,
            imc2,        maximal_correlation(g, px, py),        autocorr,   shade,
            prominence,  tendency,     dissim,      homog,      maxp,       idn,
            idmn,        diff_avg,     inv_var,     mx,         hx,         diff_energy};
}

} // namespace demtd
