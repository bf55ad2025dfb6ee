#include "demtd/manifest.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "demtd/error.hpp"

namespace demtd {

Manifest read_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::MissingFile, "cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::HeaderParse, "manifest " + path.string() + ": " + e.what());
    }

    Manifest m;
    const std::filesystem::path dir = path.parent_path();
    try {
        const nlohmann::json* lesions = &j;
        if (j.is_object()) {
            if (!j.contains("lesions"))
                throw Error(ErrorCode::HeaderParse, "manifest object lacks \"lesions\"");
            lesions = &j.at("lesions");
            if (j.contains("defaults")) {
                const auto& d = j.at("defaults");
                if (d.contains("n"))
                    m.root_power = d.at("n").get<int>();
                if (d.contains("levels"))
                    m.levels = d.at("levels").get<int>();
                if (d.contains("seed"))
                    m.seed = d.at("seed").get<std::uint64_t>();
            }
        }
        if (!lesions->is_array())
            throw Error(ErrorCode::HeaderParse, "manifest lesions must be an array");
        std::set<std::string> seen;
        for (const auto& e : *lesions) {
            ManifestEntry entry;
            entry.id = e.at("id").get<std::string>();
            auto resolve = [&](const char* key) {
                std::filesystem::path p = e.at(key).get<std::string>();
                return p.is_absolute() ? p : dir / p;
            };
            entry.volume = resolve("volume");
            entry.mask = resolve("mask");
            entry.label = e.at("label").get<int>();
            if (entry.label != 0 && entry.label != 1)
                throw Error(ErrorCode::BadParam, "lesion " + entry.id + ": label must be 0 or 1");
            if (!seen.insert(entry.id).second)
                throw Error(ErrorCode::DuplicateId, "duplicate lesion id " + entry.id);
            m.entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::HeaderParse, "manifest " + path.string() + ": " + e.what());
    }
    return m;
}

} // namespace demtd
