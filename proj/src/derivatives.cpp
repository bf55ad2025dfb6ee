#include "demtd/derivatives.hpp"

#include <cmath>
#include <span>

#include "demtd/error.hpp"

namespace demtd {

namespace {

void require_min_extent(const Dims& dims, int minimum)
{
    if (dims.min_extent() < minimum)
        throw Error(ErrorCode::TooSmall, "every dimension must be at least " + std::to_string(minimum));
}

std::vector<double> to_double(const Volume3D& volume)
{
    return {volume.data().begin(), volume.data().end()};
}

// Correlate along one axis: out(i) = sum_k taps[k] * in(i + k - half), mirror padded.
std::vector<double> correlate_axis(const std::vector<double>& in, const Dims& dims, int axis,
                                   std::span<const double> taps)
{
    const int half = static_cast<int>(taps.size() / 2);
    const int n = dims[axis];
    std::vector<double> out(in.size());
    std::vector<int> idx(static_cast<std::size_t>(n + 2 * half));
    for (int i = -half; i < n + half; ++i)
        idx[static_cast<std::size_t>(i + half)] = mirror_index(i, n);

    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(dims.nx)
                                                          : static_cast<std::size_t>(dims.nx) * dims.ny);
    const int o1 = axis == 0 ? dims.ny : dims.nx;
    const int o2 = axis == 2 ? dims.ny : dims.nz;
    for (int b = 0; b < o2; ++b) {
        for (int a = 0; a < o1; ++a) {
            std::size_t base = 0;
            if (axis == 0)
                base = dims.index(0, a, b);
            else if (axis == 1)
                base = dims.index(a, 0, b);
            else
                base = dims.index(a, b, 0);
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t k = 0; k < taps.size(); ++k) {
                    if (taps[k] == 0.0)
                        continue;
                    acc += taps[k] * in[base + stride * static_cast<std::size_t>(idx[static_cast<std::size_t>(i) + k])];
                }
                out[base + stride * static_cast<std::size_t>(i)] = acc;
            }
        }
    }
    return out;
}

// Apply one kernel per axis in x, y, z order.
std::vector<double> separable(const std::vector<double>& in, const Dims& dims, std::span<const double> kx,
                              std::span<const double> ky, std::span<const double> kz)
{
    return correlate_axis(correlate_axis(correlate_axis(in, dims, 0, kx), dims, 1, ky), dims, 2, kz);
}

} // namespace

DericheKernels make_deriche_kernels(double alpha, int window)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::BadParam, "alpha must be positive");
    if (window < 3 || window % 2 == 0)
        throw Error(ErrorCode::BadParam, "window must be an odd integer >= 3");
    const int half = window / 2;
    DericheKernels k;
    k.smooth.resize(static_cast<std::size_t>(window));
    k.first.resize(static_cast<std::size_t>(window));
    k.second.resize(static_cast<std::size_t>(window));

    // Continuous Deriche responses up to scale:
    //   smoothing  (a|x| + 1) e^{-a|x|}
    //   first      x e^{-a|x|}           (correlation sign: f(i+k) weighted by +k)
    //   second     (a|x| - 1) e^{-a|x|}
    double smooth_sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double ax = alpha * std::abs(i);
        const double decay = std::exp(-ax);
        const auto s = static_cast<std::size_t>(i + half);
        k.smooth[s] = (ax + 1.0) * decay;
        k.first[s] = i * decay;
        k.second[s] = (ax - 1.0) * decay;
        smooth_sum += k.smooth[s];
    }
    for (double& v : k.smooth)
        v /= smooth_sum;

    double first_moment = 0.0;
    for (int i = -half; i <= half; ++i)
        first_moment += i * k.first[static_cast<std::size_t>(i + half)];
    for (double& v : k.first)
        v /= first_moment;

    // Truncation breaks the zero-sum property of the second-derivative
    // response; remove the DC leak with the smoothing kernel, then fix the
    // second moment.
    double second_sum = 0.0;
    for (double v : k.second)
        second_sum += v;
    for (std::size_t s = 0; s < k.second.size(); ++s)
        k.second[s] -= second_sum * k.smooth[s];
    // Symmetrize exactly so the odd moment vanishes in floating point too.
    for (int i = 1; i <= half; ++i) {
        const double avg = 0.5 * (k.second[static_cast<std::size_t>(half + i)] + k.second[static_cast<std::size_t>(half - i)]);
        k.second[static_cast<std::size_t>(half + i)] = avg;
        k.second[static_cast<std::size_t>(half - i)] = avg;
    }
    double tail = 0.0;
    for (int i = 1; i <= half; ++i)
        tail += 2.0 * k.second[static_cast<std::size_t>(half + i)];
    k.second[static_cast<std::size_t>(half)] = -tail;
    double second_moment = 0.0;
    for (int i = -half; i <= half; ++i)
        second_moment += double(i) * i * k.second[static_cast<std::size_t>(i + half)];
    if (!(second_moment > 0.0))
        throw Error(ErrorCode::BadParam, "alpha/window yield a degenerate second-derivative kernel");
    for (double& v : k.second)
        v *= 2.0 / second_moment;
    return k;
}

GradientField sobel_gradient(const Volume3D& volume)
{
    const Dims& dims = volume.dims();
    require_min_extent(dims, 3);
    static constexpr double deriv[3] = {-1.0 / 2.0, 0.0, 1.0 / 2.0};
    static constexpr double smooth[3] = {1.0 / 4.0, 2.0 / 4.0, 1.0 / 4.0};
    const std::vector<double> in = to_double(volume);
    const auto gx = separable(in, dims, deriv, smooth, smooth);
    const auto gy = separable(in, dims, smooth, deriv, smooth);
    const auto gz = separable(in, dims, smooth, smooth, deriv);
    GradientField out(dims);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = {gx[i], gy[i], gz[i]};
    return out;
}

HessianField deriche_hessian(const Volume3D& volume, const DericheParams& params)
{
    const DericheKernels k = make_deriche_kernels(params.alpha, params.window);
    if (params.border < k.half())
        throw Error(ErrorCode::BadParam, "border must be at least the kernel half-width");
    const Dims& dims = volume.dims();
    require_min_extent(dims, 3);
    const std::vector<double> in = to_double(volume);
    const auto hxx = separable(in, dims, k.second, k.smooth, k.smooth);
    const auto hyy = separable(in, dims, k.smooth, k.second, k.smooth);
    const auto hzz = separable(in, dims, k.smooth, k.smooth, k.second);
    const auto hxy = separable(in, dims, k.first, k.first, k.smooth);
    const auto hxz = separable(in, dims, k.first, k.smooth, k.first);
    const auto hyz = separable(in, dims, k.smooth, k.first, k.first);
    HessianField out(dims);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = {hxx[i], hxy[i], hxz[i], hyy[i], hyz[i], hzz[i]};
    return out;
}

std::pair<GradientField, HessianField> central_diff_oracle(const Volume3D& volume)
{
    const Dims& d = volume.dims();
    require_min_extent(d, 3);
    GradientField grad(d);
    HessianField hess(d);
    auto f = [&](int x, int y, int z) { return static_cast<double>(volume.mirrored(x, y, z)); };
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                const double c = f(x, y, z);
                grad(x, y, z) = {(f(x + 1, y, z) - f(x - 1, y, z)) / 2.0, (f(x, y + 1, z) - f(x, y - 1, z)) / 2.0,
                                 (f(x, y, z + 1) - f(x, y, z - 1)) / 2.0};
                SymMat3& h = hess(x, y, z);
                h.xx = f(x + 1, y, z) - 2.0 * c + f(x - 1, y, z);
                h.yy = f(x, y + 1, z) - 2.0 * c + f(x, y - 1, z);
                h.zz = f(x, y, z + 1) - 2.0 * c + f(x, y, z - 1);
                h.xy = (f(x + 1, y + 1, z) - f(x + 1, y - 1, z) - f(x - 1, y + 1, z) + f(x - 1, y - 1, z)) / 4.0;
                h.xz = (f(x + 1, y, z + 1) - f(x + 1, y, z - 1) - f(x - 1, y, z + 1) + f(x - 1, y, z - 1)) / 4.0;
                h.yz = (f(x, y + 1, z + 1) - f(x, y + 1, z - 1) - f(x, y - 1, z + 1) + f(x, y - 1, z - 1)) / 4.0;
            }
    return {std::move(grad), std::move(hess)};
}

} // namespace demtd
