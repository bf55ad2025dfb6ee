#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "demtd/derivatives.hpp"
#include "demtd/mat3.hpp"
#include "demtd/volume.hpp"

namespace demtd {

/// Nonsingular linear map P (|det P| > 1e-12), the local affine deformation.
class AffineMap {
public:
    static constexpr double kMinDeterminant = 1e-12;

    // Throws SingularP.
    explicit AffineMap(const Mat3& p);

    const Mat3& matrix() const noexcept { return p_; }
    double determinant() const noexcept { return p_.determinant(); }
    AffineMap inverse() const { return AffineMap(p_.inverse()); }

private:
    Mat3 p_;
};

/// Harris/structure tensor G = g^T g (rank <= 1, PSD).
SymMat3 harris_tensor(const Vec3& g);

struct HybridTensors {
    SymMat3 k1; // H - G
    SymMat3 k2; // H + G
};
HybridTensors hybrid_tensors(const SymMat3& g, const SymMat3& h);

struct InvariantE {
    double e = 0.0;
    bool singular = false;
};

/// E = g H^{-1} g^T, evaluated as (g adj(H) g^T) / det H. When
/// |det H| < eps_singular the voxel is a critical point: E = 0, flag set.
InvariantE invariant_E(const Vec3& g, const SymMat3& h, double eps_singular);

/// E(g P, P^T H P) with the pushed-forward pair kept in quad precision.
InvariantE invariant_E_pushforward(const Vec3& g, const SymMat3& h, const AffineMap& p, double eps_singular);

struct InvariantF {
    double f1 = 1.0;
    double f2 = 1.0;
};

/// F1 = 1 - E, F2 = 1 + E.
InvariantF invariants_F(double e);

/// Determinant ratios F1 = |H - G| / |H|, F2 = |H + G| / |H|.
/// Throws SingularH when |det H| < eps_singular.
InvariantF invariants_F_direct(const Vec3& g, const SymMat3& h, double eps_singular);

struct PushForward {
    Vec3 g;
    SymMat3 h;
};

/// g' = g P, H' = P^T H P.
PushForward affine_pushforward(const Vec3& g, const SymMat3& h, const AffineMap& p);

/// P^T S P for symmetric S.
SymMat3 congruence(const Mat3& p, const SymMat3& s);

enum class VoxelState : std::uint8_t { Excluded = 0, Regular = 1, Singular = 2 };

/// Per-voxel E, F1, F2 over a region. Excluded voxels carry E = 0, F1 = F2 = 1.
struct InvariantMap {
    Dims dims;
    std::vector<double> e;
    std::vector<double> f1;
    std::vector<double> f2;
    std::vector<VoxelState> state;
    double eps_singular = 0.0;

    bool included(std::size_t i) const { return state[i] != VoxelState::Excluded; }
};

struct InvariantParams {
    DericheParams deriche;
    // Absolute |det H| threshold; default derived from the Hessian scale.
    std::optional<double> eps_singular;
};

/// Default threshold: 1e-12 * (mean |H component| over the mask)^3, floored at 1e-300.
double default_eps_singular(const HessianField& hessian, const MaskROI& mask);

InvariantMap invariant_map(const Volume3D& volume, const MaskROI& mask, const InvariantParams& params = {});

/// Same, from precomputed derivative fields.
InvariantMap invariant_map(const GradientField& gradient, const HessianField& hessian, const MaskROI& mask,
                           std::optional<double> eps_singular = std::nullopt);

struct InvariantStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::size_t included = 0;
    std::size_t singular = 0;
};

InvariantStats summarize(const InvariantMap& map);

} // namespace demtd
