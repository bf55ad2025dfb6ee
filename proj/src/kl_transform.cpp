#include "demtd/kl_transform.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "demtd/error.hpp"

namespace demtd {

namespace {

constexpr int D = static_cast<int>(kDirections);

void check_length(const std::vector<double>& v)
{
    if (v.size() != kFeatureLength)
        throw Error(ErrorCode::BasisMismatch, "expected a " + std::to_string(kFeatureLength) +
                                                  "-dimensional vector, got " + std::to_string(v.size()));
}

double component(const std::vector<double>& v, std::size_t direction, std::size_t measure)
{
    return v[direction * kMeasures + measure];
}

} // namespace

KlBasis kl_transform_fit(const std::vector<std::vector<double>>& train)
{
    if (train.size() < 2)
        throw Error(ErrorCode::TooFewSamples, "KL fit needs at least 2 training vectors");
    for (const auto& v : train)
        check_length(v);
    const auto n = static_cast<double>(train.size());

    KlBasis basis;
    for (std::size_t m = 0; m < kMeasures; ++m) {
        KlBasis::Measure& out = basis.measures[m];
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(D);
        for (const auto& v : train)
            for (int d = 0; d < D; ++d)
                mean(d) += component(v, static_cast<std::size_t>(d), m);
        mean /= n;

        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(D, D);
        for (const auto& v : train) {
            Eigen::VectorXd c(D);
            for (int d = 0; d < D; ++d)
                c(d) = component(v, static_cast<std::size_t>(d), m) - mean(d);
            cov.noalias() += c * c.transpose();
        }
        cov /= (n - 1.0);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        const Eigen::VectorXd& values = solver.eigenvalues();   // ascending
        const Eigen::MatrixXd& vectors = solver.eigenvectors(); // columns
        for (int k = 0; k < D; ++k) {
            const int col = D - 1 - k;
            Eigen::VectorXd e = vectors.col(col);
            for (int d = 0; d < D; ++d) {
                if (std::abs(e(d)) > 1e-12) {
                    if (e(d) < 0.0)
                        e = -e;
                    break;
                }
            }
            out.eigenvalues[static_cast<std::size_t>(k)] = values(col);
            for (int d = 0; d < D; ++d)
                out.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] = e(d);
        }
        for (int d = 0; d < D; ++d)
            out.mean[static_cast<std::size_t>(d)] = mean(d);
    }
    return basis;
}

std::vector<double> kl_transform_apply(const KlBasis& basis, const std::vector<double>& v)
{
    check_length(v);
    std::vector<double> y(kFeatureLength, 0.0);
    for (std::size_t m = 0; m < kMeasures; ++m) {
        const KlBasis::Measure& b = basis.measures[m];
        for (std::size_t k = 0; k < kDirections; ++k) {
            double acc = 0.0;
            for (std::size_t d = 0; d < kDirections; ++d)
                acc += b.rows[k][d] * (component(v, d, m) - b.mean[d]);
            y[k * kMeasures + m] = acc;
        }
    }
    return y;
}

std::vector<double> kl_transform_inverse(const KlBasis& basis, const std::vector<double>& y)
{
    check_length(y);
    std::vector<double> v(kFeatureLength, 0.0);
    for (std::size_t m = 0; m < kMeasures; ++m) {
        const KlBasis::Measure& b = basis.measures[m];
        for (std::size_t d = 0; d < kDirections; ++d) {
            double acc = b.mean[d];
            for (std::size_t k = 0; k < kDirections; ++k)
                acc += b.rows[k][d] * component(y, k, m);
            v[d * kMeasures + m] = acc;
        }
    }
    return v;
}

std::string kl_basis_to_json(const KlBasis& basis)
{
    nlohmann::json j;
    j["format"] = "demtd-kl-basis";
    j["version"] = 1;
    j["directions"] = kDirections;
    j["measures"] = nlohmann::json::array();
    for (const auto& m : basis.measures) {
        nlohmann::json entry;
        entry["mean"] = m.mean;
        std::vector<double> flat;
        flat.reserve(kDirections * kDirections);
        for (const auto& row : m.rows)
            flat.insert(flat.end(), row.begin(), row.end());
        entry["basis"] = flat;
        entry["eigenvalues"] = m.eigenvalues;
        j["measures"].push_back(entry);
    }
    return j.dump(1) + "\n";
}

KlBasis kl_basis_from_json(const std::string& text)
{
    KlBasis basis;
    try {
        const auto j = nlohmann::json::parse(text);
        const auto& ms = j.at("measures");
        if (ms.size() != kMeasures)
            throw Error(ErrorCode::BasisMismatch, "KL basis must hold 28 measures");
        for (std::size_t m = 0; m < kMeasures; ++m) {
            const auto mean = ms[m].at("mean").get<std::vector<double>>();
            const auto flat = ms[m].at("basis").get<std::vector<double>>();
            const auto eig = ms[m].at("eigenvalues").get<std::vector<double>>();
            if (mean.size() != kDirections || flat.size() != kDirections * kDirections || eig.size() != kDirections)
                throw Error(ErrorCode::BasisMismatch, "KL basis entry has wrong shape");
            for (std::size_t d = 0; d < kDirections; ++d) {
                basis.measures[m].mean[d] = mean[d];
                basis.measures[m].eigenvalues[d] = eig[d];
                for (std::size_t c = 0; c < kDirections; ++c)
                    basis.measures[m].rows[d][c] = flat[d * kDirections + c];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::HeaderParse, std::string("KL basis JSON: ") + e.what());
    }
    return basis;
}

} // namespace demtd
