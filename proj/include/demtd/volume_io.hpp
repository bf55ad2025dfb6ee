#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "demtd/volume.hpp"

namespace demtd {

enum class DType { F32LE, U8 };

struct VolumeHeader {
    Dims dims;
    Spacing spacing{1.0, 1.0, 1.0};
    DType dtype = DType::F32LE;
    Metadata metadata;
};

// A volume on disk is a pair `<name>.json` (header) + `<name>.raw` (payload,
// little-endian, x-fastest). Either the header path or the bare stem may be
// passed; the payload path is derived from it.
std::filesystem::path header_path(const std::filesystem::path& path);
std::filesystem::path payload_path(const std::filesystem::path& path);

VolumeHeader read_header(const std::filesystem::path& path);

Volume3D load_volume(const std::filesystem::path& path);
void save_volume(const Volume3D& volume, const std::filesystem::path& path);

MaskROI load_mask(const std::filesystem::path& path);
void save_mask(const MaskROI& mask, const std::filesystem::path& path);

// Raw u8 label payload (no binary check on write); used for quantized maps.
void save_u8(const Dims& dims, const Spacing& spacing, const std::vector<std::uint8_t>& data,
             const std::filesystem::path& path, const Metadata& metadata = {});

struct Cropped {
    Volume3D volume;
    MaskROI mask;
    std::array<int, 3> origin{}; // lower corner of the crop in source coordinates
};

// Tight bounding box of the set voxels dilated by `margin`, clipped to the
// volume. Throws EmptyMask, DimMismatch, BadParam (negative margin).
Cropped crop_to_roi(const Volume3D& volume, const MaskROI& mask, int margin = 3);

} // namespace demtd
