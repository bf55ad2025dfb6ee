#include "demtd/ttest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "demtd/error.hpp"

namespace demtd {

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0; // sample variance
};

Moments moments(std::span<const double> x)
{
    Moments m;
    for (double v : x) {
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFinite, "non-finite score");
        m.mean += v;
    }
    m.mean /= static_cast<double>(x.size());
    for (double v : x)
        m.var += (v - m.mean) * (v - m.mean);
    m.var /= static_cast<double>(x.size() - 1);
    return m;
}

} // namespace

TTest welch_ttest(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2)
        throw Error(ErrorCode::TooFewSamples, "each sample needs at least 2 values");
    const Moments ma = moments(a), mb = moments(b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double va = ma.var / na, vb = mb.var / nb;
    TTest r;
    r.mean_a = ma.mean;
    r.mean_b = mb.mean;
    const double se2 = va + vb;
    if (se2 == 0.0) {
        r.df = na + nb - 2.0;
        if (ma.mean == mb.mean) {
            r.t = 0.0;
            r.p = 1.0;
        } else {
            r.t = ma.mean > mb.mean ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            r.p = 0.0;
        }
        return r;
    }
    r.t = (ma.mean - mb.mean) / std::sqrt(se2);
    r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    const boost::math::students_t dist(r.df);
    r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
    r.p = std::min(r.p, 1.0);
    return r;
}

} // namespace demtd
