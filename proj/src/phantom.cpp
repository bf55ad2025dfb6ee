#include "demtd/phantom.hpp"

#include <algorithm>
#include <cmath>

#include "demtd/error.hpp"

namespace demtd {

namespace {

double ipow(double x, int p)
{
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

// d^k/dx^k of x^p
double dpow(double x, int p, int k)
{
    if (k > p)
        return 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i)
        c *= p - i;
    return c * ipow(x, p - k);
}

double mono_deriv(const AnalyticField::Monomial& m, const Vec3& r, int dx, int dy, int dz)
{
    return m.coeff * dpow(r[0], m.px, dx) * dpow(r[1], m.py, dy) * dpow(r[2], m.pz, dz);
}

double keys(double t)
{
    const double a = -0.5;
    t = std::fabs(t);
    if (t < 1.0)
        return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
    if (t < 2.0)
        return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
    return 0.0;
}

template <class Get>
double interpolate_impl(const Dims& dims, Get get, const Vec3& p, Interpolation interp)
{
    std::array<int, 3> base{};
    std::array<double, 3> frac{};
    for (int a = 0; a < 3; ++a) {
        const double f = std::floor(p[static_cast<std::size_t>(a)]);
        base[static_cast<std::size_t>(a)] = static_cast<int>(f);
        frac[static_cast<std::size_t>(a)] = p[static_cast<std::size_t>(a)] - f;
    }
    const int lo = interp == Interpolation::Trilinear ? 0 : -1;
    const int hi = interp == Interpolation::Trilinear ? 1 : 2;
    std::array<std::array<double, 4>, 3> w{};
    std::array<std::array<int, 4>, 3> idx{};
    for (int a = 0; a < 3; ++a) {
        const auto sa = static_cast<std::size_t>(a);
        for (int t = lo; t <= hi; ++t) {
            const auto st = static_cast<std::size_t>(t - lo);
            const double d = frac[sa] - t;
            w[sa][st] = interp == Interpolation::Trilinear ? 1.0 - std::fabs(d) : keys(d);
            idx[sa][st] = mirror_index(base[sa] + t, dims[a]);
        }
    }
    const auto taps = static_cast<std::size_t>(hi - lo + 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
        double sy = 0.0;
        for (std::size_t j = 0; j < taps; ++j) {
            double sx = 0.0;
            for (std::size_t i = 0; i < taps; ++i)
                sx += w[0][i] * get(idx[0][i], idx[1][j], idx[2][k]);
            sy += w[1][j] * sx;
        }
        sum += w[2][k] * sy;
    }
    return sum;
}

Vec3 deform_point(const Mat3& p, const Vec3& c, const Vec3& v)
{
    const Vec3 d = p.apply({v[0] - c[0], v[1] - c[1], v[2] - c[2]});
    return {c[0] + d[0], c[1] + d[1], c[2] + d[2]};
}

Mat3 random_rotation(Rng& rng)
{
    double q[4];
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& v : q) {
            v = rng.normal();
            norm += v * v;
        }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    const double w = q[0] / norm, x = q[1] / norm, y = q[2] / norm, z = q[3] / norm;
    return {{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
             2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
             2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
}

struct ErrorAccumulator {
    double diff2 = 0.0, ref2 = 0.0, max_rel = 0.0;
    void add(double got, double ref)
    {
        const double d = got - ref;
        diff2 += d * d;
        ref2 += ref * ref;
        max_rel = std::max(max_rel, std::fabs(d) / std::max(1.0, std::fabs(ref)));
    }
    double rms() const { return diff2 == 0.0 ? 0.0 : std::sqrt(diff2 / std::max(ref2, 1e-300)); }
};

} // namespace

AnalyticField& AnalyticField::add(double coeff, int px, int py, int pz)
{
    if (px < 0 || py < 0 || pz < 0 || px + py + pz > 3)
        throw Error(ErrorCode::BadParam, "monomial degree must be within 0..3");
    monomials.push_back({coeff, px, py, pz});
    return *this;
}

AnalyticField& AnalyticField::add_sine(double amplitude, const Vec3& k, double phase)
{
    sines.push_back({amplitude, k, phase});
    return *this;
}

double AnalyticField::value(const Vec3& r) const
{
    double v = 0.0;
    for (const auto& m : monomials)
        v += mono_deriv(m, r, 0, 0, 0);
    for (const auto& s : sines)
        v += s.amplitude * std::sin(s.k[0] * r[0] + s.k[1] * r[1] + s.k[2] * r[2] + s.phase);
    return v;
}

Vec3 AnalyticField::gradient(const Vec3& r) const
{
    Vec3 g{};
    for (const auto& m : monomials) {
        g[0] += mono_deriv(m, r, 1, 0, 0);
        g[1] += mono_deriv(m, r, 0, 1, 0);
        g[2] += mono_deriv(m, r, 0, 0, 1);
    }
    for (const auto& s : sines) {
        const double c = s.amplitude * std::cos(s.k[0] * r[0] + s.k[1] * r[1] + s.k[2] * r[2] + s.phase);
        for (std::size_t a = 0; a < 3; ++a)
            g[a] += c * s.k[a];
    }
    return g;
}

SymMat3 AnalyticField::hessian(const Vec3& r) const
{
    SymMat3 h{};
    for (const auto& m : monomials) {
        h.xx += mono_deriv(m, r, 2, 0, 0);
        h.yy += mono_deriv(m, r, 0, 2, 0);
        h.zz += mono_deriv(m, r, 0, 0, 2);
        h.xy += mono_deriv(m, r, 1, 1, 0);
        h.xz += mono_deriv(m, r, 1, 0, 1);
        h.yz += mono_deriv(m, r, 0, 1, 1);
    }
    for (const auto& s : sines) {
        const double v = -s.amplitude * std::sin(s.k[0] * r[0] + s.k[1] * r[1] + s.k[2] * r[2] + s.phase);
        h.xx += v * s.k[0] * s.k[0];
        h.yy += v * s.k[1] * s.k[1];
        h.zz += v * s.k[2] * s.k[2];
        h.xy += v * s.k[0] * s.k[1];
        h.xz += v * s.k[0] * s.k[2];
        h.yz += v * s.k[1] * s.k[2];
    }
    return h;
}

Vec3 lattice_center(const Dims& dims)
{
    return {(dims.nx - 1) / 2.0, (dims.ny - 1) / 2.0, (dims.nz - 1) / 2.0};
}

Phantom quadratic_phantom(const AnalyticField& field, const Dims& dims)
{
    if (dims.nx < 7 || dims.ny < 7 || dims.nz < 7)
        throw Error(ErrorCode::TooSmall, "phantom needs at least 7 voxels per axis");
    const Vec3 c = lattice_center(dims);
    std::vector<float> data(dims.count());
    Phantom out{Volume3D(), GradientField(dims), HessianField(dims)};
    for (int z = 0; z < dims.nz; ++z)
        for (int y = 0; y < dims.ny; ++y)
            for (int x = 0; x < dims.nx; ++x) {
                const Vec3 r{x - c[0], y - c[1], z - c[2]};
                data[dims.index(x, y, z)] = static_cast<float>(field.value(r));
                out.gradient(x, y, z) = field.gradient(r);
                out.hessian(x, y, z) = field.hessian(r);
            }
    out.volume = Volume3D(dims, {1.0, 1.0, 1.0}, std::move(data));
    return out;
}

double interpolate(const Volume3D& volume, const Vec3& p, Interpolation interp)
{
    const Dims& d = volume.dims();
    const auto& data = volume.data();
    return interpolate_impl(d, [&](int x, int y, int z) { return static_cast<double>(data[d.index(x, y, z)]); }, p, interp);
}

double interpolate(const Dims& dims, const std::vector<double>& values, const Vec3& p, Interpolation interp)
{
    if (values.size() != dims.count())
        throw Error(ErrorCode::SizeMismatch, "value count does not match dims");
    return interpolate_impl(dims, [&](int x, int y, int z) { return values[dims.index(x, y, z)]; }, p, interp);
}

Volume3D apply_affine_deformation(const Volume3D& volume, const AffineMap& p, Interpolation interp)
{
    const Dims& d = volume.dims();
    const Vec3 c = lattice_center(d);
    std::vector<float> out(d.count());
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                out[d.index(x, y, z)] =
                    static_cast<float>(interpolate(volume, deform_point(p.matrix(), c, {double(x), double(y), double(z)}), interp));
    return Volume3D(d, volume.spacing(), std::move(out), volume.metadata());
}

AffineMap random_affine(Rng& rng, double smin, double smax)
{
    if (!(smin > 0.0) || smax < smin)
        throw Error(ErrorCode::BadParam, "singular value range must satisfy 0 < smin <= smax");
    const Mat3 r1 = random_rotation(rng);
    const Mat3 r2 = random_rotation(rng);
    Mat3 s = Mat3::diagonal(rng.uniform(smin, smax), rng.uniform(smin, smax), rng.uniform(smin, smax));
    if (rng.below(2) == 1)
        s(0, 0) = -s(0, 0);
    return AffineMap(r1 * s * r2);
}

InvarianceReport invariance_report(const AnalyticField& field, const Dims& dims, const std::vector<AffineMap>& maps,
                                   const InvarianceParams& params)
{
    const Phantom ph = quadratic_phantom(field, dims);
    const MaskROI full = MaskROI::filled(dims, 1);
    const InvariantMap e1 = invariant_map(ph.volume, full, params.invariants);
    const Vec3 c = lattice_center(dims);
    const int h = std::max(make_deriche_kernels(params.invariants.deriche.alpha, params.invariants.deriche.window).half(), 1);
    const int reach = params.interp == Interpolation::Tricubic ? 2 : 1;

    auto inside = [&](const Vec3& w, double lo_pad, double hi_pad) {
        for (int a = 0; a < 3; ++a)
            if (w[static_cast<std::size_t>(a)] < lo_pad || w[static_cast<std::size_t>(a)] > dims[a] - 1 - hi_pad)
                return false;
        return true;
    };

    InvarianceReport report;
    for (const AffineMap& p : maps) {
        const Mat3& m = p.matrix();
        const Volume3D deformed = apply_affine_deformation(ph.volume, p, params.interp);
        const InvariantMap e2 = invariant_map(deformed, full, params.invariants);
        // E1 is only trusted on voxels at least h from the border; its
        // interpolation taps extend `reach` beyond floor(w).
        const double e1_lo = h + reach - 1, e1_hi = h + reach;
        ErrorAccumulator analytic, discrete;
        std::size_t voxels = 0;
        for (int z = h; z < dims.nz - h; ++z)
            for (int y = h; y < dims.ny - h; ++y)
                for (int x = h; x < dims.nx - h; ++x) {
                    const Vec3 v{double(x), double(y), double(z)};
                    const Vec3 w = deform_point(m, c, v);
                    if (!inside(w, e1_lo, e1_hi))
                        continue;
                    // Every I2 sample inside the filter box must come from
                    // unpadded I1 data.
                    bool ok = true;
                    for (int corner = 0; corner < 8 && ok; ++corner) {
                        const Vec3 q{double(x + ((corner & 1) ? h : -h)), double(y + ((corner & 2) ? h : -h)),
                                     double(z + ((corner & 4) ? h : -h))};
                        ok = inside(deform_point(m, c, q), reach - 1, reach);
                    }
                    if (!ok)
                        continue;
                    ++voxels;
                    const Vec3 r{w[0] - c[0], w[1] - c[1], w[2] - c[2]};
                    const Vec3 g1 = field.gradient(r);
                    const SymMat3 h1 = field.hessian(r);
                    const double ref = invariant_E(g1, h1, 0.0).e;
                    analytic.add(invariant_E_pushforward(g1, h1, p, 0.0).e, ref);

                    const double pulled = interpolate(dims, e1.e, w, params.interp);
                    discrete.add(e2.e[dims.index(x, y, z)], pulled);
                }
        InvarianceDraw d;
        d.p = m;
        d.voxels = voxels;
        d.analytic_rms = analytic.rms();
        d.analytic_max = analytic.max_rel;
        d.discrete_rms = discrete.rms();
        d.discrete_max = discrete.max_rel;
        report.draws.push_back(d);
    }
    for (const auto& d : report.draws) {
        report.analytic_rms_max = std::max(report.analytic_rms_max, d.analytic_rms);
        report.analytic_max_max = std::max(report.analytic_max_max, d.analytic_max);
        report.discrete_rms_max = std::max(report.discrete_rms_max, d.discrete_rms);
        report.discrete_max_max = std::max(report.discrete_max_max, d.discrete_max);
        report.discrete_rms_mean += d.discrete_rms / static_cast<double>(report.draws.size());
    }
    return report;
}

AnalyticField smooth_test_field()
{
    AnalyticField f;
    f.add(0.5, 2, 0, 0).add(0.4, 0, 2, 0).add(0.6, 0, 0, 2).add(0.1, 1, 1, 0).add(-0.05, 0, 1, 1);
    f.add(1.0, 1, 0, 0).add(-0.5, 0, 0, 1);
    f.add_sine(3.0, {0.3, 0.2, -0.15}, 0.3);
    f.add_sine(1.5, {-0.1, 0.25, 0.3}, 1.1);
    return f;
}

} // namespace demtd
