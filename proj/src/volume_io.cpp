#include "demtd/volume_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "demtd/error.hpp"

namespace demtd {

namespace fs = std::filesystem;
using nlohmann::json;

int Dims::min_extent() const noexcept { return std::min({nx, ny, nz}); }

int mirror_index(int i, int n) noexcept
{
    if (n <= 1)
        return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0)
        i += period;
    return i < n ? i : period - i;
}

namespace {

void check_dims(const Dims& dims)
{
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
        throw Error(ErrorCode::BadParam, "dims must be positive");
}

void check_spacing(const Spacing& spacing)
{
    for (double s : spacing)
        if (!(s > 0.0) || !std::isfinite(s))
            throw Error(ErrorCode::BadParam, "spacing must be strictly positive");
}

const char* dtype_tag(DType d) { return d == DType::F32LE ? "f32le" : "u8"; }

std::vector<char> read_bytes(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const char* data, std::size_t size)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(data, static_cast<std::streamsize>(size));
    if (!out)
        throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_header(const VolumeHeader& header, const fs::path& path)
{
    json j;
    j["dims"] = {header.dims.nx, header.dims.ny, header.dims.nz};
    j["spacing"] = {header.spacing[0], header.spacing[1], header.spacing[2]};
    j["dtype"] = dtype_tag(header.dtype);
    if (!header.metadata.empty())
        j["metadata"] = header.metadata;
    const std::string text = j.dump(2) + "\n";
    write_bytes(header_path(path), text.data(), text.size());
}

std::vector<char> read_payload(const VolumeHeader& header, const fs::path& path, std::size_t width)
{
    const fs::path raw = payload_path(path);
    if (!fs::exists(raw))
        throw Error(ErrorCode::MissingFile, "missing payload " + raw.string());
    std::vector<char> bytes = read_bytes(raw);
    const std::size_t expected = header.dims.count() * width;
    if (bytes.size() != expected)
        throw Error(ErrorCode::SizeMismatch, raw.string() + " holds " + std::to_string(bytes.size()) +
                                                 " bytes, header requires " + std::to_string(expected));
    return bytes;
}

} // namespace

Volume3D::Volume3D(Dims dims, Spacing spacing, std::vector<float> data, Metadata metadata)
    : dims_(dims), spacing_(spacing), data_(std::move(data)), metadata_(std::move(metadata))
{
    check_dims(dims_);
    check_spacing(spacing_);
    if (data_.size() != dims_.count())
        throw Error(ErrorCode::SizeMismatch, "data length " + std::to_string(data_.size()) + " != " +
                                                 std::to_string(dims_.count()));
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!std::isfinite(data_[i]))
            throw Error(ErrorCode::NonFinite, "non-finite sample at linear index " + std::to_string(i));
}

MaskROI::MaskROI(Dims dims, std::vector<std::uint8_t> data, Spacing spacing)
    : dims_(dims), spacing_(spacing), data_(std::move(data))
{
    check_dims(dims_);
    check_spacing(spacing_);
    if (data_.size() != dims_.count())
        throw Error(ErrorCode::SizeMismatch, "mask length " + std::to_string(data_.size()) + " != " +
                                                 std::to_string(dims_.count()));
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (data_[i] > 1)
            throw Error(ErrorCode::NonBinary, "mask value " + std::to_string(data_[i]) + " at linear index " +
                                                  std::to_string(i));
}

MaskROI MaskROI::filled(Dims dims, bool value)
{
    return MaskROI(dims, std::vector<std::uint8_t>(dims.count(), value ? 1 : 0));
}

std::size_t MaskROI::count() const noexcept
{
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

fs::path header_path(const fs::path& path)
{
    fs::path p = path;
    if (p.extension() == ".json" || p.extension() == ".raw")
        p.replace_extension();
    return p.string() + ".json";
}

fs::path payload_path(const fs::path& path)
{
    fs::path p = path;
    if (p.extension() == ".json" || p.extension() == ".raw")
        p.replace_extension();
    return p.string() + ".raw";
}

VolumeHeader read_header(const fs::path& path)
{
    const fs::path hp = header_path(path);
    if (!fs::exists(hp))
        throw Error(ErrorCode::MissingFile, "missing header " + hp.string());
    const std::vector<char> bytes = read_bytes(hp);
    VolumeHeader header;
    try {
        const json j = json::parse(bytes.begin(), bytes.end());
        const auto& d = j.at("dims");
        const auto& s = j.at("spacing");
        if (!d.is_array() || d.size() != 3 || !s.is_array() || s.size() != 3)
            throw Error(ErrorCode::HeaderParse, "dims and spacing must be 3-element arrays");
        header.dims = {d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
        header.spacing = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
        const std::string tag = j.at("dtype").get<std::string>();
        if (tag == "f32le")
            header.dtype = DType::F32LE;
        else if (tag == "u8")
            header.dtype = DType::U8;
        else
            throw Error(ErrorCode::HeaderParse, "unknown dtype '" + tag + "'");
        if (j.contains("metadata")) {
            for (const auto& [key, value] : j.at("metadata").items())
                header.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::HeaderParse, hp.string() + ": " + e.what());
    }
    if (header.dims.nx <= 0 || header.dims.ny <= 0 || header.dims.nz <= 0)
        throw Error(ErrorCode::HeaderParse, "dims must be positive");
    try {
        check_spacing(header.spacing);
    } catch (const Error& e) {
        throw Error(ErrorCode::HeaderParse, e.what());
    }
    return header;
}

Volume3D load_volume(const fs::path& path)
{
    const VolumeHeader header = read_header(path);
    if (header.dtype != DType::F32LE)
        throw Error(ErrorCode::HeaderParse, "volume dtype must be f32le");
    const std::vector<char> bytes = read_payload(header, path, sizeof(float));
    std::vector<float> data(header.dims.count());
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::uint32_t word = 0;
        std::memcpy(&word, bytes.data() + 4 * i, 4);
        if constexpr (std::endian::native == std::endian::big)
            word = __builtin_bswap32(word);
        data[i] = std::bit_cast<float>(word);
    }
    return Volume3D(header.dims, header.spacing, std::move(data), header.metadata);
}

void save_volume(const Volume3D& volume, const fs::path& path)
{
    std::vector<char> bytes(volume.data().size() * 4);
    for (std::size_t i = 0; i < volume.data().size(); ++i) {
        std::uint32_t word = std::bit_cast<std::uint32_t>(volume.data()[i]);
        if constexpr (std::endian::native == std::endian::big)
            word = __builtin_bswap32(word);
        std::memcpy(bytes.data() + 4 * i, &word, 4);
    }
    write_header({volume.dims(), volume.spacing(), DType::F32LE, volume.metadata()}, path);
    write_bytes(payload_path(path), bytes.data(), bytes.size());
}

MaskROI load_mask(const fs::path& path)
{
    const VolumeHeader header = read_header(path);
    if (header.dtype != DType::U8)
        throw Error(ErrorCode::HeaderParse, "mask dtype must be u8");
    const std::vector<char> bytes = read_payload(header, path, 1);
    std::vector<std::uint8_t> data(bytes.size());
    std::memcpy(data.data(), bytes.data(), bytes.size());
    return MaskROI(header.dims, std::move(data), header.spacing);
}

void save_mask(const MaskROI& mask, const fs::path& path)
{
    save_u8(mask.dims(), mask.spacing(), mask.data(), path);
}

void save_u8(const Dims& dims, const Spacing& spacing, const std::vector<std::uint8_t>& data, const fs::path& path,
             const Metadata& metadata)
{
    if (data.size() != dims.count())
        throw Error(ErrorCode::SizeMismatch, "u8 payload length does not match dims");
    write_header({dims, spacing, DType::U8, metadata}, path);
    write_bytes(payload_path(path), reinterpret_cast<const char*>(data.data()), data.size());
}

Cropped crop_to_roi(const Volume3D& volume, const MaskROI& mask, int margin)
{
    if (volume.dims() != mask.dims())
        throw Error(ErrorCode::DimMismatch, "mask dims do not match volume dims");
    if (margin < 0)
        throw Error(ErrorCode::BadParam, "margin must be nonnegative");
    const Dims& d = volume.dims();
    std::array<int, 3> lo{d.nx, d.ny, d.nz};
    std::array<int, 3> hi{-1, -1, -1};
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (mask(x, y, z)) {
                    lo = {std::min(lo[0], x), std::min(lo[1], y), std::min(lo[2], z)};
                    hi = {std::max(hi[0], x), std::max(hi[1], y), std::max(hi[2], z)};
                }
    if (hi[0] < 0)
        throw Error(ErrorCode::EmptyMask, "mask has no set voxels");
    for (int a = 0; a < 3; ++a) {
        lo[a] = std::max(0, lo[a] - margin);
        hi[a] = std::min(d[a] - 1, hi[a] + margin);
    }
    const Dims out{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
    std::vector<float> vdata;
    std::vector<std::uint8_t> mdata;
    vdata.reserve(out.count());
    mdata.reserve(out.count());
    for (int z = lo[2]; z <= hi[2]; ++z)
        for (int y = lo[1]; y <= hi[1]; ++y)
            for (int x = lo[0]; x <= hi[0]; ++x) {
                vdata.push_back(volume(x, y, z));
                mdata.push_back(mask(x, y, z) ? 1 : 0);
            }
    return {Volume3D(out, volume.spacing(), std::move(vdata), volume.metadata()),
            MaskROI(out, std::move(mdata), mask.spacing()), lo};
}

} // namespace demtd
