#pragma once

#include <utility>
#include <vector>

#include "demtd/mat3.hpp"
#include "demtd/volume.hpp"

namespace demtd {

/// Per-voxel (I'x, I'y, I'z) in intensity per voxel.
using GradientField = Field<Vec3>;
/// Per-voxel symmetric Hessian, six stored components.
using HessianField = Field<SymMat3>;

struct DericheParams {
    double alpha = 1.0;
    int window = 7; // taps per axis, odd
    int border = 3; // mirror-padding width, must cover the kernel half-width
};

/// Sampled, truncated and renormalized Deriche kernels (correlation taps,
/// index 0 is offset -half). Moment conditions:
///   smooth:  sum = 1
///   first:   antisymmetric, sum k * d1(k) = 1
///   second:  symmetric, sum = 0, sum k^2 * d2(k) = 2
struct DericheKernels {
    std::vector<double> smooth;
    std::vector<double> first;
    std::vector<double> second;

    int half() const { return static_cast<int>(smooth.size() / 2); }
};

DericheKernels make_deriche_kernels(double alpha, int window);

/// Separable 3D Sobel gradient, [-1 0 1] along the axis and [1 2 1] on the
/// transverse axes, divided by 32 so a unit ramp gives 1.0. Mirror padding.
/// Throws TooSmall if any dim < 3.
GradientField sobel_gradient(const Volume3D& volume);

/// Second derivatives from separable Deriche kernels: the pure terms use
/// second x smooth x smooth, mixed terms first x first x smooth.
/// Throws TooSmall or BadParam.
HessianField deriche_hessian(const Volume3D& volume, const DericheParams& params = {});

/// Brute-force central differences (3-point and cross 4-point stencils)
/// with mirror padding. Independent reference for the filters above.
std::pair<GradientField, HessianField> central_diff_oracle(const Volume3D& volume);

} // namespace demtd
