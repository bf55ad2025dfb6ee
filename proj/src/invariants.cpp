#include "demtd/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "demtd/error.hpp"

namespace demtd {

AffineMap::AffineMap(const Mat3& p) : p_(p)
{
    for (double v : p.m)
        if (!std::isfinite(v))
            throw Error(ErrorCode::SingularP, "affine matrix has non-finite entries");
    if (!(std::abs(p.determinant()) > kMinDeterminant))
        throw Error(ErrorCode::SingularP, "affine matrix is singular (|det P| <= 1e-12)");
}

SymMat3 harris_tensor(const Vec3& g)
{
    return {g[0] * g[0], g[0] * g[1], g[0] * g[2], g[1] * g[1], g[1] * g[2], g[2] * g[2]};
}

HybridTensors hybrid_tensors(const SymMat3& g, const SymMat3& h)
{
    return {h - g, h + g};
}

namespace {

// E loses digits in det and adj when H is ill-conditioned; evaluate wider.
// The push-forward P^T H P squares the conditioning of P on top of that.
using Ext = long double;
#if defined(__SIZEOF_FLOAT128__)
using Quad = __float128;
#else
using Quad = long double;
#endif

template <class T>
InvariantE e_of(const std::array<T, 3>& g, const std::array<std::array<T, 3>, 3>& h, double eps_singular)
{
    const T a_xx = h[1][1] * h[2][2] - h[1][2] * h[1][2], a_xy = h[0][2] * h[1][2] - h[0][1] * h[2][2];
    const T a_xz = h[0][1] * h[1][2] - h[0][2] * h[1][1], a_yy = h[0][0] * h[2][2] - h[0][2] * h[0][2];
    const T a_yz = h[0][1] * h[0][2] - h[0][0] * h[1][2], a_zz = h[0][0] * h[1][1] - h[0][1] * h[0][1];
    const T det = h[0][0] * a_xx + h[0][1] * a_xy + h[0][2] * a_xz;
    const T eps = static_cast<T>(eps_singular);
    if (!(det >= eps || -det >= eps))
        return {0.0, true};
    const T q = a_xx * g[0] * g[0] + a_yy * g[1] * g[1] + a_zz * g[2] * g[2] +
                2 * (a_xy * g[0] * g[1] + a_xz * g[0] * g[2] + a_yz * g[1] * g[2]);
    return {static_cast<double>(q / det), false};
}

template <class T>
std::array<std::array<T, 3>, 3> widen(const SymMat3& h)
{
    std::array<std::array<T, 3>, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h.at(i, j);
    return out;
}

} // namespace

InvariantE invariant_E(const Vec3& g, const SymMat3& h, double eps_singular)
{
    return e_of<Ext>({g[0], g[1], g[2]}, widen<Ext>(h), eps_singular);
}

InvariantE invariant_E_pushforward(const Vec3& g, const SymMat3& h, const AffineMap& p, double eps_singular)
{
    const Mat3& m = p.matrix();
    const auto hq = widen<Quad>(h);
    std::array<Quad, 3> gp{};
    std::array<std::array<Quad, 3>, 3> t{}, r{};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
            const Quad mkj = m(static_cast<int>(k), static_cast<int>(j));
            gp[j] += static_cast<Quad>(g[k]) * mkj;
            for (std::size_t i = 0; i < 3; ++i)
                t[i][j] += hq[i][k] * mkj;
        }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                r[i][j] += static_cast<Quad>(m(static_cast<int>(k), static_cast<int>(i))) * t[k][j];
    return e_of<Quad>(gp, r, eps_singular);
}

InvariantF invariants_F(double e)
{
    return {1.0 - e, 1.0 + e};
}

InvariantF invariants_F_direct(const Vec3& g, const SymMat3& h, double eps_singular)
{
    const double det = h.determinant();
    if (!(std::abs(det) >= eps_singular))
        throw Error(ErrorCode::SingularH, "|det H| below the singularity threshold");
    const HybridTensors k = hybrid_tensors(harris_tensor(g), h);
    return {k.k1.determinant() / det, k.k2.determinant() / det};
}

SymMat3 congruence(const Mat3& p, const SymMat3& s)
{
    const Mat3 full = p.transpose() * Mat3::from(s) * p;
    // Symmetrize; the two off-diagonal products differ only by rounding.
    return {full(0, 0), 0.5 * (full(0, 1) + full(1, 0)), 0.5 * (full(0, 2) + full(2, 0)),
            full(1, 1), 0.5 * (full(1, 2) + full(2, 1)), full(2, 2)};
}

PushForward affine_pushforward(const Vec3& g, const SymMat3& h, const AffineMap& p)
{
    return {p.matrix().apply_row(g), congruence(p.matrix(), h)};
}

double default_eps_singular(const HessianField& hessian, const MaskROI& mask)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < hessian.values.size(); ++i) {
        if (!mask.at(i))
            continue;
        const SymMat3& h = hessian.values[i];
        sum += std::abs(h.xx) + std::abs(h.xy) + std::abs(h.xz) + std::abs(h.yy) + std::abs(h.yz) + std::abs(h.zz);
        n += 6;
    }
    const double mean = n ? sum / static_cast<double>(n) : 0.0;
    return std::max(1e-12 * mean * mean * mean, 1e-300);
}

InvariantMap invariant_map(const GradientField& gradient, const HessianField& hessian, const MaskROI& mask,
                           std::optional<double> eps_singular)
{
    if (gradient.dims != mask.dims() || hessian.dims != mask.dims())
        throw Error(ErrorCode::DimMismatch, "derivative fields and mask differ in dims");
    const double eps = eps_singular.value_or(default_eps_singular(hessian, mask));
    if (!(eps > 0.0))
        throw Error(ErrorCode::BadParam, "eps_singular must be positive");

    InvariantMap map;
    map.dims = mask.dims();
    map.eps_singular = eps;
    const std::size_t n = map.dims.count();
    map.e.assign(n, 0.0);
    map.f1.assign(n, 1.0);
    map.f2.assign(n, 1.0);
    map.state.assign(n, VoxelState::Excluded);
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask.at(i))
            continue;
        const InvariantE e = invariant_E(gradient.values[i], hessian.values[i], eps);
        const InvariantF f = invariants_F(e.e);
        map.e[i] = e.e;
        map.f1[i] = f.f1;
        map.f2[i] = f.f2;
        map.state[i] = e.singular ? VoxelState::Singular : VoxelState::Regular;
    }
    return map;
}

InvariantMap invariant_map(const Volume3D& volume, const MaskROI& mask, const InvariantParams& params)
{
    if (volume.dims() != mask.dims())
        throw Error(ErrorCode::DimMismatch, "mask dims do not match volume dims");
    if (mask.empty())
        throw Error(ErrorCode::EmptyMask, "mask has no set voxels");
    const GradientField g = sobel_gradient(volume);
    const HessianField h = deriche_hessian(volume, params.deriche);
    return invariant_map(g, h, mask, params.eps_singular);
}

InvariantStats summarize(const InvariantMap& map)
{
    InvariantStats s;
    s.min = std::numeric_limits<double>::infinity();
    s.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i < map.e.size(); ++i) {
        if (!map.included(i))
            continue;
        ++s.included;
        if (map.state[i] == VoxelState::Singular)
            ++s.singular;
        s.min = std::min(s.min, map.e[i]);
        s.max = std::max(s.max, map.e[i]);
        sum += map.e[i];
    }
    if (s.included == 0) {
        s.min = s.max = 0.0;
    } else {
        s.mean = sum / static_cast<double>(s.included);
    }
    return s;
}

} // namespace demtd
