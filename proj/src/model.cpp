#include "demtd/model.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>

#include "demtd/error.hpp"

namespace demtd {

namespace {

constexpr char kMagic[8] = {'D', 'E', 'M', 'T', 'D', 'M', 'D', 'L'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, const T& v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in)
{
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw Error(ErrorCode::HeaderParse, "truncated model file");
    return v;
}

} // namespace

double Model::predict(std::span<const double> sample) const
{
    if (sample.size() != input_dim)
        throw Error(ErrorCode::DimMismatch, "sample has " + std::to_string(sample.size()) + " features, model expects " +
                                                std::to_string(input_dim));
    std::vector<double> v(sample.begin(), sample.end());
    if (kl)
        v = kl_transform_apply(*kl, v);
    std::vector<double> picked;
    picked.reserve(features.size());
    for (int f : features)
        picked.push_back(v[static_cast<std::size_t>(f)]);
    return forest.predict(picked);
}

void Model::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(kMagic, sizeof(kMagic));
    put(out, kVersion);
    put(out, static_cast<std::uint64_t>(input_dim));
    put(out, static_cast<std::uint64_t>(features.size()));
    for (int f : features)
        put(out, static_cast<std::int32_t>(f));
    const std::string basis = kl ? kl_basis_to_json(*kl) : std::string();
    put(out, static_cast<std::uint64_t>(basis.size()));
    out.write(basis.data(), static_cast<std::streamsize>(basis.size()));
    forest.save(out);
    if (!out)
        throw Error(ErrorCode::Io, "failed writing " + path.string());
}

Model Model::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MissingFile, "cannot open model " + path.string());
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + 8, kMagic))
        throw Error(ErrorCode::HeaderParse, path.string() + " is not a demtd model");
    if (get<std::uint32_t>(in) != kVersion)
        throw Error(ErrorCode::HeaderParse, "unsupported model version");
    Model m;
    m.input_dim = static_cast<std::size_t>(get<std::uint64_t>(in));
    const auto nf = get<std::uint64_t>(in);
    if (nf > (1u << 20))
        throw Error(ErrorCode::HeaderParse, "corrupt feature list");
    m.features.resize(static_cast<std::size_t>(nf));
    for (int& f : m.features) {
        f = get<std::int32_t>(in);
        if (f < 0 || static_cast<std::size_t>(f) >= m.input_dim)
            throw Error(ErrorCode::HeaderParse, "feature index out of range");
    }
    const auto basis_len = get<std::uint64_t>(in);
    if (basis_len > (1u << 26))
        throw Error(ErrorCode::HeaderParse, "corrupt basis block");
    if (basis_len > 0) {
        std::string text(static_cast<std::size_t>(basis_len), '\0');
        if (!in.read(text.data(), static_cast<std::streamsize>(basis_len)))
            throw Error(ErrorCode::HeaderParse, "truncated model file");
        m.kl = kl_basis_from_json(text);
    }
    m.forest = RandomForest::load(in);
    if (m.forest.dim() != m.features.size())
        throw Error(ErrorCode::HeaderParse, "forest dimension does not match the feature list");
    return m;
}

} // namespace demtd
