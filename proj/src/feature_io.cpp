#include "demtd/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>

#include "demtd/error.hpp"

namespace demtd {

std::size_t Dataset::count(int label) const
{
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void Dataset::push_back(std::string id, int label, std::span<const double> values)
{
    if (label != 0 && label != 1)
        throw Error(ErrorCode::BadParam, "labels must be 0 or 1");
    if (labels.empty() && dim == 0)
        dim = values.size();
    if (values.size() != dim)
        throw Error(ErrorCode::DimMismatch, "sample '" + id + "' has " + std::to_string(values.size()) +
                                                " features, expected " + std::to_string(dim));
    for (double v : values)
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFinite, "sample '" + id + "' has a non-finite feature");
    ids.push_back(std::move(id));
    labels.push_back(label);
    x.insert(x.end(), values.begin(), values.end());
}

Dataset Dataset::from_features(const std::vector<FeatureVector>& features)
{
    Dataset d;
    for (const auto& f : features)
        d.push_back(f.id, f.label, f.values);
    return d;
}

Dataset Dataset::rows(const std::vector<std::size_t>& index) const
{
    Dataset out;
    out.dim = dim;
    out.ids.reserve(index.size());
    out.labels.reserve(index.size());
    out.x.reserve(index.size() * dim);
    for (std::size_t i : index) {
        out.ids.push_back(ids[i]);
        out.labels.push_back(labels[i]);
        const auto r = row(i);
        out.x.insert(out.x.end(), r.begin(), r.end());
    }
    return out;
}

Dataset Dataset::columns(const std::vector<int>& features) const
{
    Dataset out;
    out.ids = ids;
    out.labels = labels;
    out.dim = features.size();
    out.x.reserve(size() * features.size());
    for (std::size_t i = 0; i < size(); ++i)
        for (int f : features)
            out.x.push_back(x[i * dim + static_cast<std::size_t>(f)]);
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_feature_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& features)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    const std::size_t dim = features.empty() ? kFeatureLength : features.front().values.size();
    out << "id,label";
    char name[32];
    for (std::size_t i = 0; i < dim; ++i) {
        std::snprintf(name, sizeof(name), ",f%03zu", i);
        out << name;
    }
    out << '\n';
    for (const auto& f : features) {
        if (f.values.size() != dim)
            throw Error(ErrorCode::DimMismatch, "ragged feature vectors");
        if (f.id.find_first_of(",\n\r\"") != std::string::npos)
            throw Error(ErrorCode::BadParam, "id '" + f.id + "' contains CSV metacharacters");
        out << f.id << ',' << f.label;
        for (double v : f.values)
            out << ',' << format_double(v);
        out << '\n';
    }
    if (!out)
        throw Error(ErrorCode::Io, "write failed for " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s, std::size_t line_no)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error(ErrorCode::HeaderParse, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

} // namespace

std::vector<FeatureVector> read_feature_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::HeaderParse, path.string() + " is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "label")
        throw Error(ErrorCode::HeaderParse, "feature CSV header must start with id,label");
    const std::size_t dim = header.size() - 2;

    std::vector<FeatureVector> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != dim + 2)
            throw Error(ErrorCode::DimMismatch, "line " + std::to_string(line_no) + " has " +
                                                    std::to_string(cells.size()) + " cells, expected " +
                                                    std::to_string(dim + 2));
        FeatureVector f;
        f.id = cells[0];
        if (cells[1] != "0" && cells[1] != "1")
            throw Error(ErrorCode::BadParam, "line " + std::to_string(line_no) + ": label must be 0 or 1");
        f.label = cells[1] == "1" ? 1 : 0;
        f.values.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i)
            f.values.push_back(parse_double(cells[i + 2], line_no));
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace demtd
