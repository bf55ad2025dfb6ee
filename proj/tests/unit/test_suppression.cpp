#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "demtd/error.hpp"
#include "demtd/suppression.hpp"
#include "support.hpp"

using namespace demtd;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

SuppressedMap flat_map(const std::vector<double>& q)
{
    SuppressedMap m;
    m.dims = {static_cast<int>(q.size()), 1, 1};
    m.root_power = 1;
    m.q = q;
    m.included.assign(q.size(), 1);
    return m;
}

// Stratified log-uniform magnitudes in [1e-9, 1e9], both signs.
std::vector<double> sample_e(Rng& rng, std::size_t count)
{
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double stratum = (static_cast<double>(i / 2) + 0.25 + 0.5 * rng.uniform()) / static_cast<double>(count / 2);
        const double mag = std::pow(10.0, -9.0 + 18.0 * stratum);
        out[i] = (i % 2 == 0) ? mag : -mag;
    }
    return out;
}

} // namespace

TEST_CASE("spot values")
{
    for (int n = 1; n <= 9; ++n) {
        CHECK(std::fabs(suppress(1.0, n) - std::numbers::pi / 4) <= 1e-12);
        CHECK(std::fabs(suppress(-1.0, n) + std::numbers::pi / 4) <= 1e-12);
        CHECK(suppress(0.0, n) == kHalfPi);
    }
    CHECK(suppress(2e8, 1) == doctest::Approx(5e-9).epsilon(1e-12));
    CHECK(suppress(8.0, 3) == doctest::Approx(std::atan(0.5)).epsilon(1e-15));
    CHECK(suppress(-16.0, 4) == doctest::Approx(-std::atan(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(suppress(1.0, 0), Error);
}

TEST_CASE("suppression is injective, bounded and monotone per branch")
{
    Rng rng(17);
    for (int n = 1; n <= 9; ++n) {
        std::vector<double> e = sample_e(rng, 100000);
        e.push_back(0.0);
        std::sort(e.begin(), e.end());
        REQUIRE(std::adjacent_find(e.begin(), e.end()) == e.end());
        std::vector<double> q(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            q[i] = suppress(e[i], n);
            REQUIRE(std::fabs(q[i]) <= kHalfPi);
            REQUIRE((e[i] < 0.0 ? q[i] < 0.0 : q[i] > 0.0));
        }
        for (std::size_t i = 1; i < e.size(); ++i)
            if ((e[i - 1] < 0.0) == (e[i] < 0.0))
                REQUIRE(q[i] < q[i - 1]);
        std::vector<double> sorted = q;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
}

TEST_CASE("larger root powers keep more of the extremes")
{
    Rng rng(18);
    for (int i = 0; i < 2000; ++i) {
        const double mag = std::pow(10.0, rng.uniform(0.001, 9.0));
        for (double e : {mag, -mag})
            for (int n = 1; n < 9; ++n)
                REQUIRE(std::fabs(suppress(e, n + 1)) >= std::fabs(suppress(e, n)));
    }
}

TEST_CASE("quantize hand cases")
{
    const LabelMap flat = quantize(flat_map({0.3, 0.3, 0.3}), MaskROI::filled({3, 1, 1}, 1), 16);
    for (auto l : flat.labels)
        CHECK(l == 0);

    const LabelMap two = quantize(flat_map({-kHalfPi, 0.0, kHalfPi}), MaskROI::filled({3, 1, 1}, 1), 2);
    CHECK(two.labels == std::vector<std::int16_t>{0, 1, 1});

    std::vector<std::uint8_t> m{1, 1, 0, 1};
    const LabelMap partial = quantize(flat_map({0.1, 0.9, 5.0, 0.5}), MaskROI({4, 1, 1}, m), 8);
    CHECK(partial.labels[0] == 0);
    CHECK(partial.labels[1] == 7);
    CHECK(partial.labels[2] == LabelMap::kExcluded);
    CHECK(partial.labels[3] == 4);
}

TEST_CASE("quantize is monotone and in range")
{
    Rng rng(19);
    for (int L : {2, 4, 16, 104, 256}) {
        std::vector<double> q(500);
        for (auto& v : q)
            v = rng.uniform(-kHalfPi, kHalfPi);
        const LabelMap lm = quantize(flat_map(q), MaskROI::filled({500, 1, 1}, 1), L);
        const auto maxpos = static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
        CHECK(lm.labels[maxpos] == L - 1);
        for (std::size_t i = 0; i < q.size(); ++i) {
            REQUIRE(lm.labels[i] >= 0);
            REQUIRE(lm.labels[i] < L);
            for (std::size_t j = 0; j < q.size(); j += 7)
                if (q[i] <= q[j])
                    REQUIRE(lm.labels[i] <= lm.labels[j]);
        }
    }
}

TEST_CASE("quantize errors")
{
    const auto m = flat_map({0.0, 1.0});
    CHECK_THROWS_AS(quantize(m, MaskROI::filled({2, 1, 1}, 1), 1), Error);
    CHECK_THROWS_AS(quantize(m, MaskROI::filled({2, 1, 1}, 1), 257), Error);
    CHECK_THROWS_AS(quantize(m, MaskROI::filled({3, 1, 1}, 1), 4), Error);
    CHECK_THROWS_AS(quantize(m, MaskROI::filled({2, 1, 1}, 0), 4), Error);
}

TEST_CASE("gray level list")
{
    const auto levels = standard_gray_levels();
    REQUIRE(levels.size() == 15);
    CHECK(levels.front() == 16);
    CHECK(levels.back() == 128);
    for (std::size_t i = 1; i < levels.size(); ++i)
        CHECK(levels[i] - levels[i - 1] == 8);
    CHECK(is_standard_gray_level(104));
    CHECK_FALSE(is_standard_gray_level(100));
}

TEST_CASE("histograms")
{
    LabelMap lm;
    lm.dims = {6, 1, 1};
    lm.levels = 4;
    lm.labels = {2, 2, 2, 2, 2, 2};
    auto h = histogram(lm, 4);
    CHECK(h == std::vector<double>{0, 0, 1, 0});
    lm.labels = {1, 3, 1, 3, LabelMap::kExcluded, LabelMap::kExcluded};
    h = histogram(lm, 4);
    CHECK(h == std::vector<double>{0, 0.5, 0, 0.5});
    h = histogram(lm, 2);
    CHECK(h == std::vector<double>{0.5, 0.5});

    Rng rng(20);
    for (int t = 0; t < 20; ++t) {
        lm.dims = {300, 1, 1};
        lm.levels = 16;
        lm.labels.assign(300, 0);
        for (auto& l : lm.labels)
            l = static_cast<std::int16_t>(rng.below(16));
        const auto hist = histogram(lm, static_cast<int>(1 + rng.below(16)));
        double s = 0.0;
        for (double v : hist)
            s += v;
        CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
}
