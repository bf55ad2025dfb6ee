#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace demtd {

/// Lattice extent. Linear index is x-fastest: i = x + nx * (y + ny * z).
struct Dims {
    int nx = 0;
    int ny = 0;
    int nz = 0;

    std::size_t count() const noexcept
    {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }
    std::size_t index(int x, int y, int z) const noexcept
    {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(z));
    }
    bool contains(int x, int y, int z) const noexcept
    {
        return x >= 0 && y >= 0 && z >= 0 && x < nx && y < ny && z < nz;
    }
    int operator[](int axis) const noexcept { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
    int min_extent() const noexcept;

    friend bool operator==(const Dims&, const Dims&) = default;
};

using Spacing = std::array<double, 3>;
using Metadata = std::map<std::string, std::string>;

// Mirror (reflect-101) index: -1 -> 1, n -> n-2. Periodic for far offsets.
int mirror_index(int i, int n) noexcept;

/// Dense per-voxel field on a lattice; used for derivative and invariant maps.
template <class T>
struct Field {
    Dims dims;
    std::vector<T> values;

    Field() = default;
    explicit Field(Dims d, T fill = T{}) : dims(d), values(d.count(), fill) {}

    T& operator()(int x, int y, int z) { return values[dims.index(x, y, z)]; }
    const T& operator()(int x, int y, int z) const { return values[dims.index(x, y, z)]; }
};

/// Scalar image I(x, y, z). Samples are 32-bit floats, always finite.
class Volume3D {
public:
    Volume3D() = default;
    // Throws SizeMismatch, BadParam (non-positive dims/spacing) or NonFinite.
    Volume3D(Dims dims, Spacing spacing, std::vector<float> data, Metadata metadata = {});

    const Dims& dims() const noexcept { return dims_; }
    const Spacing& spacing() const noexcept { return spacing_; }
    const std::vector<float>& data() const noexcept { return data_; }
    const Metadata& metadata() const noexcept { return metadata_; }

    float operator()(int x, int y, int z) const { return data_[dims_.index(x, y, z)]; }
    // Sample with mirror padding outside the lattice.
    float mirrored(int x, int y, int z) const
    {
        return data_[dims_.index(mirror_index(x, dims_.nx), mirror_index(y, dims_.ny), mirror_index(z, dims_.nz))];
    }

    friend bool operator==(const Volume3D&, const Volume3D&) = default;

private:
    Dims dims_;
    Spacing spacing_{1.0, 1.0, 1.0};
    std::vector<float> data_;
    Metadata metadata_;
};

/// Binary region of interest paired with a Volume3D.
class MaskROI {
public:
    MaskROI() = default;
    // Throws SizeMismatch or NonBinary.
    MaskROI(Dims dims, std::vector<std::uint8_t> data, Spacing spacing = {1.0, 1.0, 1.0});

    static MaskROI filled(Dims dims, bool value = true);

    const Dims& dims() const noexcept { return dims_; }
    const Spacing& spacing() const noexcept { return spacing_; }
    const std::vector<std::uint8_t>& data() const noexcept { return data_; }

    bool operator()(int x, int y, int z) const { return data_[dims_.index(x, y, z)] != 0; }
    bool at(std::size_t i) const { return data_[i] != 0; }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    friend bool operator==(const MaskROI&, const MaskROI&) = default;

private:
    Dims dims_;
    Spacing spacing_{1.0, 1.0, 1.0};
    std::vector<std::uint8_t> data_;
};

} // namespace demtd
