#pragma once

#include <vector>

#include "demtd/derivatives.hpp"
#include "demtd/invariants.hpp"
#include "demtd/mat3.hpp"
#include "demtd/rng.hpp"
#include "demtd/volume.hpp"

namespace demtd {

/// Smooth scalar field with closed-form derivatives: a polynomial of total
/// degree <= 3 plus sinusoids, in coordinates centered on the volume.
struct AnalyticField {
    struct Monomial {
        double coeff = 0.0;
        int px = 0, py = 0, pz = 0;
    };
    struct Sine {
        double amplitude = 0.0;
        Vec3 k{};
        double phase = 0.0;
    };
    std::vector<Monomial> monomials;
    std::vector<Sine> sines;

    // Throws BadParam for negative powers or total degree > 3.
    AnalyticField& add(double coeff, int px, int py, int pz);
    AnalyticField& add_sine(double amplitude, const Vec3& k, double phase = 0.0);

    double value(const Vec3& r) const;
    Vec3 gradient(const Vec3& r) const;
    SymMat3 hessian(const Vec3& r) const;
};

struct Phantom {
    Volume3D volume;
    GradientField gradient; // analytic, per voxel
    HessianField hessian;
};

/// Lattice center (n - 1) / 2 per axis.
Vec3 lattice_center(const Dims& dims);

/// Sample the field at voxel v with r = v - center. Throws TooSmall (< 7).
Phantom quadratic_phantom(const AnalyticField& field, const Dims& dims);

enum class Interpolation { Trilinear, Tricubic };

/// Mirror-padded sample at a continuous lattice point. Tricubic uses the
/// Keys kernel (a = -1/2), which reproduces quadratics.
double interpolate(const Volume3D& volume, const Vec3& p, Interpolation interp);
double interpolate(const Dims& dims, const std::vector<double>& values, const Vec3& p, Interpolation interp);

/// I2(v) = I1(c + P (v - c)), c the lattice center.
Volume3D apply_affine_deformation(const Volume3D& volume, const AffineMap& p,
                                  Interpolation interp = Interpolation::Tricubic);

/// R1 diag(s) R2 with uniform random rotations, s uniform in [smin, smax],
/// and a reflection with probability 1/2.
AffineMap random_affine(Rng& rng, double smin, double smax);

struct InvarianceParams {
    Interpolation interp = Interpolation::Tricubic;
    InvariantParams invariants;
};

struct InvarianceDraw {
    Mat3 p;
    double analytic_rms = 0.0; // ||E2 - E1|| / ||E1|| over compared voxels
    double analytic_max = 0.0; // max |E2 - E1| / max(1, |E1|)
    double discrete_rms = 0.0;
    double discrete_max = 0.0;
    std::size_t voxels = 0;
};

struct InvarianceReport {
    std::vector<InvarianceDraw> draws;
    double analytic_rms_max = 0.0;
    double analytic_max_max = 0.0;
    double discrete_rms_mean = 0.0;
    double discrete_rms_max = 0.0;
    double discrete_max_max = 0.0;
};

/// For each P, compares the E map of the deformed phantom with the original
/// E map pulled back through P, on voxels whose whole filter footprint maps
/// inside the unpadded lattice. The analytic path pushes closed-form
/// derivatives forward; the discrete path runs Sobel + Deriche on both volumes.
InvarianceReport invariance_report(const AnalyticField& field, const Dims& dims, const std::vector<AffineMap>& maps,
                                   const InvarianceParams& params = {});

/// Quadratic bowl plus low-frequency sinusoids with a positive definite
/// Hessian everywhere, used by validate-invariance.
AnalyticField smooth_test_field();

} // namespace demtd
