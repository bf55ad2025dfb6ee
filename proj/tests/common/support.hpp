#pragma once

// Shared fixtures and brute-force reference implementations.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "demtd/glcm.hpp"
#include "demtd/mat3.hpp"
#include "demtd/phantom.hpp"
#include "demtd/rng.hpp"
#include "demtd/volume.hpp"

namespace test {

using namespace demtd;

inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("demtd_unit_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline Volume3D random_volume(Dims d, Rng& rng, double lo = 0.0, double hi = 1.0)
{
    std::vector<float> v(d.count());
    for (auto& x : v)
        x = static_cast<float>(rng.uniform(lo, hi));
    return Volume3D(d, {1.0, 1.0, 1.0}, std::move(v));
}

template <class F>
Volume3D sampled(Dims d, F f)
{
    std::vector<float> v(d.count());
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                v[d.index(x, y, z)] = static_cast<float>(f(x, y, z));
    return Volume3D(d, {1.0, 1.0, 1.0}, std::move(v));
}

inline Eigen::Matrix3d dense(const SymMat3& s)
{
    Eigen::Matrix3d m;
    m << s.xx, s.xy, s.xz, s.xy, s.yy, s.yz, s.xz, s.yz, s.zz;
    return m;
}

inline Eigen::Matrix3d dense(const Mat3& p)
{
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            m(r, c) = p(r, c);
    return m;
}

// g H^{-1} g^T through an LU solve.
inline double e_oracle(const Vec3& g, const SymMat3& h)
{
    const Eigen::Vector3d gv(g[0], g[1], g[2]);
    return gv.dot(dense(h).partialPivLu().solve(gv));
}

inline SymMat3 random_sym(Rng& rng, double scale = 1.0)
{
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale),
            rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline Vec3 random_vec(Rng& rng, double scale = 1.0)
{
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline Mat3 random_mat(Rng& rng)
{
    Mat3 m;
    for (double& v : m.m)
        v = rng.uniform(-2.0, 2.0);
    return m;
}

// Every ordered voxel pair (a, b) with b - a = d or b - a = -d, both masked.
inline std::vector<double> naive_glcm(const LabelMap& labels, const MaskROI& mask, const Offset& d)
{
    const Dims& dims = labels.dims;
    const int L = labels.levels;
    std::vector<double> counts(static_cast<std::size_t>(L * L), 0.0);
    double total = 0.0;
    for (int az = 0; az < dims.nz; ++az)
        for (int ay = 0; ay < dims.ny; ++ay)
            for (int ax = 0; ax < dims.nx; ++ax)
                for (int bz = 0; bz < dims.nz; ++bz)
                    for (int by = 0; by < dims.ny; ++by)
                        for (int bx = 0; bx < dims.nx; ++bx) {
                            const int dx = bx - ax, dy = by - ay, dz = bz - az;
                            const bool fwd = dx == d[0] && dy == d[1] && dz == d[2];
                            const bool back = dx == -d[0] && dy == -d[1] && dz == -d[2];
                            if (!fwd && !back)
                                continue;
                            if (!mask(ax, ay, az) || !mask(bx, by, bz))
                                continue;
                            const int i = labels.labels[dims.index(ax, ay, az)];
                            const int j = labels.labels[dims.index(bx, by, bz)];
                            counts[static_cast<std::size_t>(i * L + j)] += 1.0;
                            total += 1.0;
                        }
    for (double& c : counts)
        c /= total;
    return counts;
}

// Pair-counting AUC: concordant pairs count 1, ties 1/2.
inline double brute_auc(const std::vector<double>& s, const std::vector<int>& y)
{
    double num = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (y[i] == 1 && y[j] == 0) {
                pairs += 1.0;
                num += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
            }
    return num / pairs;
}

// Sum of four plane waves with per-axis angular frequency at most kmax.
// kBand: wavelengths of 42 voxels and longer, well inside the 7-tap support.
inline constexpr double kBand = 0.15;

inline AnalyticField band_limited_field(Rng& rng, double kmax = kBand)
{
    AnalyticField f;
    for (int s = 0; s < 4; ++s)
        f.add_sine(rng.uniform(0.5, 2.0), {rng.uniform(-kmax, kmax), rng.uniform(-kmax, kmax), rng.uniform(-kmax, kmax)},
                   rng.uniform(0.0, 6.28));
    return f;
}

} // namespace test
