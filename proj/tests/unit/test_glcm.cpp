#include <doctest.h>

#include <set>

#include "demtd/descriptor.hpp"
#include "demtd/error.hpp"
#include "demtd/glcm.hpp"
#include "support.hpp"

using namespace demtd;

namespace {

LabelMap random_labels(Dims d, int L, Rng& rng)
{
    LabelMap lm;
    lm.dims = d;
    lm.levels = L;
    lm.labels.resize(d.count());
    for (auto& l : lm.labels)
        l = static_cast<std::int16_t>(rng.below(static_cast<std::uint64_t>(L)));
    return lm;
}

Glcm from_matrix(int L, std::vector<double> p) { return Glcm{L, {1, 0, 0}, std::move(p)}; }

} // namespace

TEST_CASE("direction set")
{
    const auto& dirs = directions_13();
    CHECK(dirs.size() == 13);
    CHECK(direction_index({0, 1, 1}) >= 0);
    std::set<Offset> seen;
    for (const Offset& d : dirs) {
        CHECK(seen.insert(d).second);
        CHECK(seen.insert({-d[0], -d[1], -d[2]}).second);
    }
    CHECK(seen.size() == 26);
    for (int z = -1; z <= 1; ++z)
        for (int y = -1; y <= 1; ++y)
            for (int x = -1; x <= 1; ++x)
                if (x || y || z)
                    CHECK(seen.count({x, y, z}) == 1);
    CHECK(direction_index({0, 0, 0}) == -1);
    CHECK(direction_index({2, 0, 0}) == -1);
    CHECK(direction_index({-1, 0, 0}) == direction_index({1, 0, 0}));
}

TEST_CASE("glcm hand cases")
{
    LabelMap lm;
    lm.dims = {2, 1, 1};
    lm.levels = 2;
    lm.labels = {0, 1};
    const Glcm g = build_glcm(lm, MaskROI::filled(lm.dims, 1), {1, 0, 0});
    CHECK(g.p == std::vector<double>{0, 0.5, 0.5, 0});

    Rng rng(1);
    LabelMap flat = random_labels({4, 4, 4}, 8, rng);
    std::fill(flat.labels.begin(), flat.labels.end(), 5);
    for (const Offset& d : directions_13()) {
        const Glcm c = build_glcm(flat, MaskROI::filled(flat.dims, 1), d);
        CHECK(c(5, 5) == 1.0);
    }

    try {
        build_glcm(lm, MaskROI::filled(lm.dims, 1), {0, 1, 0});
        FAIL("expected NoValidPairs");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoValidPairs);
    }
}

TEST_CASE("glcm matches naive pair counting on small volumes")
{
    Rng rng(2);
    for (int L : {2, 4, 16})
        for (int trial = 0; trial < 12; ++trial) {
            const Dims d{static_cast<int>(1 + rng.below(5)), static_cast<int>(1 + rng.below(5)), static_cast<int>(1 + rng.below(5))};
            const LabelMap lm = random_labels(d, L, rng);
            std::vector<std::uint8_t> m(d.count());
            for (auto& v : m)
                v = trial % 3 == 0 ? 1 : (rng.uniform() < 0.7 ? 1 : 0);
            const MaskROI mask(d, m);
            for (const Offset& dir : directions_13()) {
                std::vector<double> ref;
                bool empty = false;
                {
                    ref = test::naive_glcm(lm, mask, dir);
                    empty = std::isnan(ref[0]);
                }
                if (empty) {
                    CHECK_THROWS_AS(build_glcm(lm, mask, dir), Error);
                    continue;
                }
                const Glcm g = build_glcm(lm, mask, dir);
                REQUIRE(g.p == ref);
                double s = 0.0;
                for (double v : g.p)
                    s += v;
                CHECK(std::fabs(s - 1.0) <= 1e-12);
                for (int i = 0; i < L; ++i)
                    for (int j = 0; j < L; ++j)
                        REQUIRE(g(i, j) == g(j, i));
            }
        }
}

TEST_CASE("haralick measures of the two-cell anti-diagonal matrix")
{
    const HaralickMeasures h = haralick_28(from_matrix(2, {0, 0.5, 0.5, 0}));
    const double expected[28] = {0.5, 1.0, -1.0, 0.25, 0.5, 3.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, std::sqrt(0.75), 1.0,
                                 2.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.5, 2.0 / 3.0, 0.8, 1.0, 1.0, 1.5, 1.0, 1.0};
    for (std::size_t k = 0; k < kMeasures; ++k) {
        INFO("measure " << haralick_names()[k]);
        CHECK(h[k] == doctest::Approx(expected[k]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("haralick spot checks")
{
    for (int L : {2, 5, 16}) {
        const auto n = static_cast<std::size_t>(L * L);
        const HaralickMeasures u = haralick_28(from_matrix(L, std::vector<double>(n, 1.0 / static_cast<double>(n))));
        CHECK(u[0] == doctest::Approx(1.0 / (L * L)).epsilon(1e-12));
        CHECK(u[8] == doctest::Approx(2.0 * std::log2(L)).epsilon(1e-12));
        std::vector<double> diag(n, 0.0);
        diag[static_cast<std::size_t>((L - 1) * L + (L - 1))] = 1.0;
        const HaralickMeasures dg = haralick_28(from_matrix(L, diag));
        CHECK(dg[1] == 0.0);
        CHECK(dg[0] == 1.0);
        CHECK(dg[20] == 1.0);
        for (double v : dg)
            CHECK(std::isfinite(v));
    }
    std::set<std::string_view> names(haralick_names().begin(), haralick_names().end());
    CHECK(names.size() == 28);
}

TEST_CASE("haralick measures of random glcms are finite and consistent")
{
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int L = static_cast<int>(2 + rng.below(20));
        const LabelMap lm = random_labels({6, 6, 6}, L, rng);
        const Glcm g = build_glcm(lm, MaskROI::filled(lm.dims, 1), directions_13()[rng.below(13)]);
        const HaralickMeasures h = haralick_28(g);
        for (double v : h)
            REQUIRE(std::isfinite(v));
        double asm_ = 0, contrast = 0, dissim = 0;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j) {
                asm_ += g(i, j) * g(i, j);
                contrast += (i - j) * (i - j) * g(i, j);
                dissim += std::abs(i - j) * g(i, j);
            }
        CHECK(h[0] == doctest::Approx(asm_).epsilon(1e-12));
        CHECK(h[1] == doctest::Approx(contrast).epsilon(1e-12).scale(1.0));
        CHECK(h[18] == doctest::Approx(dissim).epsilon(1e-12).scale(1.0));
        CHECK(h[23] == doctest::Approx(dissim).epsilon(1e-12).scale(1.0));
        CHECK(h[2] >= -1.0 - 1e-12);
        CHECK(h[2] <= 1.0 + 1e-12);
        CHECK(h[13] >= 0.0);
        CHECK(h[13] <= 1.0);
    }
}

TEST_CASE("descriptor length and determinism")
{
    Rng rng(4);
    for (int trial = 0; trial < 4; ++trial) {
        const Dims d{static_cast<int>(8 + rng.below(6)), static_cast<int>(8 + rng.below(6)), static_cast<int>(8 + rng.below(6))};
        const Volume3D v = test::random_volume(d, rng);
        std::vector<std::uint8_t> m(d.count(), 0);
        for (int z = 2; z < d.nz - 2; ++z)
            for (int y = 2; y < d.ny - 2; ++y)
                for (int x = 2; x < d.nx - 2; ++x)
                    m[d.index(x, y, z)] = rng.uniform() < 0.8;
        const MaskROI mask(d, m);
        FeatureParams p;
        p.root_power = static_cast<int>(1 + rng.below(9));
        p.levels = standard_gray_levels()[rng.below(15)];
        const FeatureVector a = demtd_features(v, mask, p);
        CHECK(a.values.size() == kFeatureLength);
        const FeatureVector b = demtd_features(v, mask, p);
        CHECK(a.values == b.values);
    }
    FeatureParams bad;
    bad.root_power = 0;
    Rng r2(5);
    const Volume3D v = test::random_volume({8, 8, 8}, r2);
    CHECK_THROWS_AS(demtd_features(v, MaskROI::filled({8, 8, 8}, 1), bad), Error);
    bad.root_power = 10;
    CHECK_THROWS_AS(demtd_features(v, MaskROI::filled({8, 8, 8}, 1), bad), Error);
}

TEST_CASE("swapping x and y permutes the direction blocks")
{
    Rng rng(6);
    const Dims d{11, 9, 10};
    const Volume3D v = test::random_volume(d, rng);
    std::vector<std::uint8_t> m(d.count(), 0);
    for (auto& x : m)
        x = rng.uniform() < 0.85;
    const MaskROI mask(d, m);

    const Dims s{d.ny, d.nx, d.nz};
    std::vector<float> sv(s.count());
    std::vector<std::uint8_t> sm(s.count());
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                sv[s.index(y, x, z)] = v(x, y, z);
                sm[s.index(y, x, z)] = mask(x, y, z);
            }
    const FeatureVector a = demtd_features(v, mask);
    const FeatureVector b = demtd_features(Volume3D(s, {1, 1, 1}, sv), MaskROI(s, sm));
    const auto& dirs = directions_13();
    for (std::size_t k = 0; k < kDirections; ++k) {
        const Offset swapped{dirs[k][1], dirs[k][0], dirs[k][2]};
        const auto j = static_cast<std::size_t>(direction_index(swapped));
        for (std::size_t q = 0; q < kMeasures; ++q) {
            const double x = a.values[k * kMeasures + q], y = b.values[j * kMeasures + q];
            REQUIRE(std::fabs(x - y) <= 1e-9 * std::max(1.0, std::fabs(x)));
        }
    }
}
