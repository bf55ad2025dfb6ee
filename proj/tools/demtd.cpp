// demtd command-line tool: invariant maps, texture features, forest
// training and evaluation, grid search, score t-tests and invariance checks.

#include <algorithm>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "demtd/cross_validation.hpp"
#include "demtd/dataset.hpp"
#include "demtd/descriptor.hpp"
#include "demtd/error.hpp"
#include "demtd/grid_search.hpp"
#include "demtd/manifest.hpp"
#include "demtd/model.hpp"
#include "demtd/phantom.hpp"
#include "demtd/suppression.hpp"
#include "demtd/ttest.hpp"
#include "demtd/volume_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace demtd;

namespace {

constexpr const char* kTool = "demtd 1.0.0";
constexpr int kCropMargin = 3;

struct Common {
    int n = 4;
    int levels = 104;
    std::uint64_t seed = 1;
    double alpha = 1.0;
    int window = 7;
    int border = 3;

    InvariantParams invariants() const
    {
        InvariantParams p;
        p.deriche = {alpha, window, border};
        return p;
    }
};

struct Classifier {
    int repeats = 50;
    int trees = 5000;
    int mtry = 0;
    int threads = 0;
    bool fsfs = false;
    bool kl = false;
    bool class_balance = false;
    int fsfs_budget = 30;
    int fsfs_trees = 100;

    CvParams cv(std::uint64_t seed) const
    {
        CvParams p;
        p.repeats = repeats;
        p.seed = seed;
        p.forest.n_trees = trees;
        p.forest.mtry = mtry;
        p.forest.threads = threads;
        p.forest.class_balance = class_balance;
        p.kl = kl;
        p.fsfs = fsfs;
        p.fsfs_params.budget = fsfs_budget;
        p.fsfs_params.forest.n_trees = fsfs_trees;
        p.fsfs_params.forest.threads = threads;
        p.fsfs_params.forest.class_balance = class_balance;
        return p;
    }
};

void check_levels(int levels)
{
    if (levels < kMinLevels || levels > kMaxLevels)
        throw Error(ErrorCode::BadParam, "levels must be within [" + std::to_string(kMinLevels) + ", " +
                                             std::to_string(kMaxLevels) + "], got " + std::to_string(levels));
}

json echo(const Common& c)
{
    return json{{"tool", kTool}, {"n", c.n}, {"levels", c.levels}, {"seed", c.seed}};
}

json classifier_echo(const Classifier& k)
{
    return json{{"repeats", k.repeats}, {"trees", k.trees}, {"mtry", k.mtry == 0 ? json("sqrt(p)") : json(k.mtry)},
                {"fsfs", k.fsfs},       {"kl", k.kl},       {"class_balance", k.class_balance}};
}

Metadata echo_metadata(const Common& c)
{
    return {{"tool", kTool}, {"n", std::to_string(c.n)}, {"levels", std::to_string(c.levels)}, {"seed", std::to_string(c.seed)}};
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw Error(ErrorCode::Io, "cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

fs::path sidecar(const fs::path& out) { return fs::path(out.string() + ".json"); }

Volume3D to_volume(const Dims& dims, const Spacing& spacing, const std::vector<double>& v, const Metadata& meta)
{
    std::vector<float> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        f[i] = static_cast<float>(std::clamp(v[i], -static_cast<double>(FLT_MAX), static_cast<double>(FLT_MAX)));
    return Volume3D(dims, spacing, std::move(f), meta);
}

// Lesions from a manifest, cropped to their ROI. With skip_bad, failing
// lesions are reported and dropped.
std::vector<Lesion> load_lesions(const Manifest& m, bool skip_bad)
{
    std::vector<Lesion> out;
    for (const auto& e : m.entries) {
        try {
            const Volume3D v = load_volume(e.volume);
            const MaskROI mask = load_mask(e.mask);
            Cropped c = crop_to_roi(v, mask, kCropMargin);
            out.push_back({e.id, std::move(c.volume), std::move(c.mask), e.label});
        } catch (const Error& err) {
            if (!skip_bad)
                throw Error(err.code(), "lesion " + e.id + ": " + err.what());
            std::cerr << "skipping lesion " << e.id << ": " << err.what() << '\n';
        }
    }
    return out;
}

Dataset features_from_lesions(const std::vector<Lesion>& lesions, const Common& c, bool skip_bad)
{
    FeatureParams fp;
    fp.root_power = c.n;
    fp.levels = c.levels;
    fp.invariants = c.invariants();
    std::vector<FeatureVector> rows;
    for (const Lesion& l : lesions) {
        try {
            FeatureVector f = demtd_features(l.volume, l.mask, fp);
            f.id = l.id;
            f.label = l.label;
            rows.push_back(std::move(f));
        } catch (const Error& err) {
            if (!skip_bad)
                throw Error(err.code(), "lesion " + l.id + ": " + err.what());
            std::cerr << "skipping lesion " << l.id << ": " << err.what() << '\n';
        }
    }
    return Dataset::from_features(rows);
}

std::vector<FeatureVector> to_features(const Dataset& d)
{
    std::vector<FeatureVector> out;
    for (std::size_t i = 0; i < d.size(); ++i)
        out.push_back({d.ids[i], d.labels[i], d.row_vector(i)});
    return out;
}

std::vector<double> read_scores(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    std::vector<double> out;
    std::string line;
    int column = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        if (first) {
            first = false;
            const auto it = std::find(cells.begin(), cells.end(), "score");
            if (it != cells.end()) {
                column = static_cast<int>(it - cells.begin());
                continue;
            }
        }
        if (static_cast<std::size_t>(column) >= cells.size())
            throw Error(ErrorCode::HeaderParse, path.string() + ": missing score column");
        const std::string& cell = cells[static_cast<std::size_t>(column)];
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size())
            throw Error(ErrorCode::HeaderParse, path.string() + ": bad score '" + cell + "'");
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFinite, path.string() + ": non-finite score");
        out.push_back(v);
    }
    return out;
}

json metrics_json(const Metrics& m)
{
    return json{{"auc", m.auc}, {"acc", m.acc}, {"sn", m.sn}, {"sp", m.sp}};
}

// ---------------------------------------------------------------- commands

void cmd_maps(const fs::path& volume_path, const fs::path& mask_path, const fs::path& out_dir, const Common& c)
{
    check_root_power(c.n);
    check_levels(c.levels);
    const Volume3D volume = load_volume(volume_path);
    const MaskROI mask = load_mask(mask_path);
    const InvariantMap map = invariant_map(volume, mask, c.invariants());
    const SuppressedMap q = suppress_map(map, c.n);
    const LabelMap labels = quantize(q, mask, c.levels);
    const Metadata meta = echo_metadata(c);

    fs::create_directories(out_dir);
    save_volume(to_volume(map.dims, volume.spacing(), map.e, meta), out_dir / "E");
    save_volume(to_volume(map.dims, volume.spacing(), map.f1, meta), out_dir / "F1");
    save_volume(to_volume(map.dims, volume.spacing(), map.f2, meta), out_dir / "F2");
    save_volume(to_volume(q.dims, volume.spacing(), q.q, meta), out_dir / "Q");
    std::vector<std::uint8_t> u8(labels.labels.size(), 0);
    for (std::size_t i = 0; i < u8.size(); ++i)
        if (labels.included(i))
            u8[i] = static_cast<std::uint8_t>(labels.labels[i]);
    save_u8(labels.dims, volume.spacing(), u8, out_dir / "labels", meta);

    const auto hist = histogram(labels, c.levels);
    std::string csv = "bin,probability\n";
    for (std::size_t b = 0; b < hist.size(); ++b)
        csv += std::to_string(b) + "," + format_double(hist[b]) + "\n";
    write_text(out_dir / "histogram.csv", csv);

    const InvariantStats s = summarize(map);
    double qmin = std::numbers::pi, qmax = -std::numbers::pi;
    for (std::size_t i = 0; i < q.q.size(); ++i)
        if (q.included[i]) {
            qmin = std::min(qmin, q.q[i]);
            qmax = std::max(qmax, q.q[i]);
        }
    json j = echo(c);
    j["E"] = {{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
    j["Q"] = {{"min", qmin}, {"max", qmax}};
    j["voxels"] = s.included;
    j["singular"] = s.singular;
    j["eps_singular"] = map.eps_singular;
    write_json(out_dir / "stats.json", j);
}

void cmd_features(const fs::path& manifest_path, const fs::path& out, const Common& c, bool skip_bad)
{
    check_root_power(c.n);
    check_levels(c.levels);
    const Manifest m = read_manifest(manifest_path);
    const Dataset d = features_from_lesions(load_lesions(m, skip_bad), c, skip_bad);
    write_feature_csv(out, to_features(d));
    json j = echo(c);
    j["lesions"] = d.size();
    j["crop_margin"] = kCropMargin;
    write_json(sidecar(out), j);
}

// Features from --features CSV or computed from --manifest.
Dataset load_dataset(const fs::path& features, const fs::path& manifest, const Common& c, bool skip_bad)
{
    if (!features.empty() == !manifest.empty())
        throw Error(ErrorCode::BadParam, "pass exactly one of --features or --manifest");
    if (!features.empty())
        return Dataset::from_features(read_feature_csv(features));
    check_root_power(c.n);
    check_levels(c.levels);
    return features_from_lesions(load_lesions(read_manifest(manifest), skip_bad), c, skip_bad);
}

void cmd_train(const Dataset& data, const fs::path& out, const Common& c, const Classifier& k)
{
    Model model;
    model.input_dim = data.dim;
    Dataset train = data;
    if (k.kl) {
        if (data.dim != kFeatureLength)
            throw Error(ErrorCode::BasisMismatch, "KL transform needs " + std::to_string(kFeatureLength) + " features");
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < data.size(); ++i)
            rows.push_back(data.row_vector(i));
        model.kl = kl_transform_fit(rows);
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto y = kl_transform_apply(*model.kl, rows[i]);
            std::copy(y.begin(), y.end(), train.x.begin() + static_cast<std::ptrdiff_t>(i * data.dim));
        }
    }
    const CvParams cv = k.cv(c.seed);
    if (k.fsfs) {
        FsfsParams fp = cv.fsfs_params;
        fp.seed = Rng::derive(c.seed, 1);
        model.features = fsfs(train, fp).selected;
    }
    if (model.features.empty()) {
        model.features.resize(data.dim);
        for (std::size_t j = 0; j < data.dim; ++j)
            model.features[j] = static_cast<int>(j);
    }
    ForestParams forest = cv.forest;
    forest.seed = c.seed;
    model.forest = RandomForest::train(train.columns(model.features), forest);
    model.save(out);

    json j = echo(c);
    j["classifier"] = classifier_echo(k);
    j["samples"] = data.size();
    j["selected_features"] = model.features;
    std::vector<double> imp = model.forest.gini_importance();
    j["gini_importance"] = imp;
    write_json(sidecar(out), j);
}

void cmd_predict(const fs::path& model_path, const Dataset& data, const fs::path& out)
{
    const Model model = Model::load(model_path);
    std::string csv = "id,label,score\n";
    for (std::size_t i = 0; i < data.size(); ++i)
        csv += data.ids[i] + "," + std::to_string(data.labels[i]) + "," + format_double(model.predict(data.row(i))) + "\n";
    write_text(out, csv);
}

void cmd_cv(const Dataset& data, const fs::path& out, const fs::path& scores_out, const Common& c, const Classifier& k)
{
    const CvResult r = cross_validate(data, k.cv(c.seed));
    json j;
    j["auc_mean"] = r.summary.mean.auc;
    j["auc_std"] = r.summary.std.auc;
    j["acc"] = r.summary.mean.acc;
    j["sn"] = r.summary.mean.sn;
    j["sp"] = r.summary.mean.sp;
    j["acc_std"] = r.summary.std.acc;
    j["sn_std"] = r.summary.std.sn;
    j["sp_std"] = r.summary.std.sp;
    j["selected_features"] = r.selected_features;
    j["seed"] = c.seed;
    j["params"] = echo(c);
    j["params"]["classifier"] = classifier_echo(k);
    j["samples"] = data.size();
    j["runs"] = json::array();
    for (const Metrics& m : r.summary.runs)
        j["runs"].push_back(metrics_json(m));
    write_json(out, j);

    if (!scores_out.empty()) {
        std::string csv = "id,label,score\n";
        for (std::size_t i = 0; i < data.size(); ++i) {
            double mean = 0.0;
            for (const auto& rep : r.scores)
                mean += rep[i];
            mean /= static_cast<double>(r.scores.size());
            csv += data.ids[i] + "," + std::to_string(data.labels[i]) + "," + format_double(mean) + "\n";
        }
        write_text(scores_out, csv);
    }
}

void cmd_grid(const fs::path& manifest_path, const fs::path& out, std::vector<int> n_values, std::vector<int> levels,
              const Common& c, const Classifier& k, bool skip_bad, int cells_parallel)
{
    for (int n : n_values)
        check_root_power(n);
    for (int L : levels)
        check_levels(L);
    const std::vector<Lesion> lesions = load_lesions(read_manifest(manifest_path), skip_bad);
    GridParams gp;
    gp.root_powers = std::move(n_values);
    gp.levels = std::move(levels);
    gp.cv = k.cv(c.seed);
    gp.invariants = c.invariants();
    gp.threads = cells_parallel;
    const GridResult g = grid_search(lesions, gp);

    std::string csv = "n,levels,auc_mean,auc_std,acc_mean,acc_std,sn_mean,sn_std,sp_mean,sp_std\n";
    for (const GridRow& row : g.rows) {
        const auto& s = row.summary;
        csv += std::to_string(row.root_power) + "," + std::to_string(row.levels) + "," + format_double(s.mean.auc) + "," +
               format_double(s.std.auc) + "," + format_double(s.mean.acc) + "," + format_double(s.std.acc) + "," +
               format_double(s.mean.sn) + "," + format_double(s.std.sn) + "," + format_double(s.mean.sp) + "," +
               format_double(s.std.sp) + "\n";
    }
    write_text(out, csv);

    const GridRow& best = g.rows[g.best];
    json j = echo(c);
    j.erase("n");
    j.erase("levels");
    j["n_values"] = gp.root_powers;
    j["levels_list"] = gp.levels;
    j["classifier"] = classifier_echo(k);
    j["lesions"] = lesions.size();
    j["cells"] = g.rows.size();
    j["best"] = {{"n", best.root_power}, {"levels", best.levels}, {"auc_mean", best.summary.mean.auc},
                 {"auc_std", best.summary.std.auc}, {"acc", best.summary.mean.acc}, {"sn", best.summary.mean.sn},
                 {"sp", best.summary.mean.sp}};
    write_json(sidecar(out), j);
    std::cout << "best n=" << best.root_power << " levels=" << best.levels << " auc=" << format_double(best.summary.mean.auc)
              << '\n';
}

void cmd_ttest(const fs::path& a_path, const fs::path& b_path, const fs::path& out, std::uint64_t seed)
{
    const auto a = read_scores(a_path);
    const auto b = read_scores(b_path);
    const TTest t = welch_ttest(a, b);
    json j{{"tool", kTool}, {"seed", seed}, {"test", "welch"}, {"n_a", a.size()}, {"n_b", b.size()}, {"mean_a", t.mean_a},
           {"mean_b", t.mean_b}};
    j["t"] = std::isfinite(t.t) ? json(t.t) : json(t.t > 0 ? "inf" : "-inf");
    j["df"] = t.df;
    j["p_value"] = t.p;
    write_json(out, j);
    std::cout << "p=" << format_double(t.p) << '\n';
}

void cmd_validate(const std::string& phantom, int draws, int size, double smin, double smax, const fs::path& out,
                  const Common& c, bool trilinear)
{
    if (phantom != "quadratic")
        throw Error(ErrorCode::BadParam, "unknown phantom '" + phantom + "'");
    if (draws < 1)
        throw Error(ErrorCode::BadParam, "draws must be >= 1");
    Rng rng(c.seed);
    std::vector<AffineMap> maps;
    for (int i = 0; i < draws; ++i)
        maps.push_back(random_affine(rng, smin, smax));
    InvarianceParams ip;
    ip.invariants = c.invariants();
    ip.interp = trilinear ? Interpolation::Trilinear : Interpolation::Tricubic;
    const InvarianceReport r = invariance_report(smooth_test_field(), {size, size, size}, maps, ip);

    json j{{"tool", kTool},
           {"seed", c.seed},
           {"phantom", phantom},
           {"size", size},
           {"draws", draws},
           {"singular_values", {smin, smax}},
           {"interpolation", trilinear ? "trilinear" : "tricubic"}};
    j["summary"] = {{"analytic_rms_max", r.analytic_rms_max},
                    {"analytic_max_rel", r.analytic_max_max},
                    {"discrete_rms_mean", r.discrete_rms_mean},
                    {"discrete_rms_max", r.discrete_rms_max},
                    {"discrete_max_rel", r.discrete_max_max}};
    j["per_draw"] = json::array();
    for (const auto& d : r.draws)
        j["per_draw"].push_back({{"P", d.p.m},
                                 {"voxels", d.voxels},
                                 {"analytic_rms", d.analytic_rms},
                                 {"analytic_max_rel", d.analytic_max},
                                 {"discrete_rms", d.discrete_rms},
                                 {"discrete_max_rel", d.discrete_max}});
    write_json(out, j);
    std::cout << "analytic max rel " << format_double(r.analytic_max_max) << ", discrete rms max "
              << format_double(r.discrete_rms_max) << '\n';
}

void add_common(CLI::App* app, Common& c, bool with_n_levels)
{
    if (with_n_levels) {
        app->add_option("--n", c.n, "Root power of the suppression map (1..9)")->capture_default_str();
        app->add_option("--levels", c.levels, "Gray levels for quantization")->capture_default_str();
    }
    app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app->add_option("--alpha", c.alpha, "Deriche alpha")->capture_default_str();
    app->add_option("--window", c.window, "Deriche window (odd taps)")->capture_default_str();
    app->add_option("--border", c.border, "Mirror padding width")->capture_default_str();
}

void add_classifier(CLI::App* app, Classifier& k, bool with_repeats)
{
    if (with_repeats)
        app->add_option("--repeats", k.repeats, "Two-fold CV repeats")->capture_default_str();
    app->add_option("--trees", k.trees, "Trees per forest")->capture_default_str();
    app->add_option("--mtry", k.mtry, "Candidate features per split (default floor(sqrt(p)), 19 for 364 features)");
    app->add_option("--threads", k.threads, "Worker threads (0 = all cores); results do not depend on it");
    app->add_flag("--fsfs", k.fsfs, "Forward-step feature selection inside each training set");
    app->add_option("--fsfs-budget", k.fsfs_budget, "Maximum selected features")->capture_default_str();
    app->add_option("--fsfs-trees", k.fsfs_trees, "Trees per inner forest during selection")->capture_default_str();
    app->add_flag("--kl", k.kl, "Karhunen-Loeve transform per measure across directions");
    app->add_flag("--class-balance", k.class_balance, "Inverse-frequency class weights in the split criterion");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DEM texture descriptor pipeline"};
    app.set_version_flag("--version", kTool);
    app.require_subcommand(1);

    Common common;
    Classifier clf;
    fs::path volume, mask, out, manifest, features, model, scores_out, a_path, b_path;
    bool skip_bad = false;

    auto* maps = app.add_subcommand("maps", "Write E/F1/F2/Q maps, gray-level labels, histogram and stats");
    maps->add_option("--volume", volume, "Volume header or stem")->required();
    maps->add_option("--mask", mask, "Mask header or stem")->required();
    maps->add_option("--out", out, "Output directory")->required();
    add_common(maps, common, true);

    auto* feat = app.add_subcommand("features", "Texture features for every lesion of a manifest");
    feat->add_option("--manifest", manifest, "Manifest JSON")->required();
    feat->add_option("--out", out, "Feature CSV")->required();
    feat->add_flag("--skip-bad", skip_bad, "Skip lesions that fail instead of aborting");
    add_common(feat, common, true);

    auto* train = app.add_subcommand("train", "Train a forest on all samples");
    train->add_option("--features", features, "Feature CSV");
    train->add_option("--manifest", manifest, "Manifest JSON (features computed on the fly)");
    train->add_option("--out", out, "Model file")->required();
    train->add_flag("--skip-bad", skip_bad, "Skip lesions that fail instead of aborting");
    add_common(train, common, true);
    add_classifier(train, clf, false);

    auto* predict = app.add_subcommand("predict", "Score samples with a trained model");
    predict->add_option("--model", model, "Model file")->required();
    predict->add_option("--features", features, "Feature CSV");
    predict->add_option("--manifest", manifest, "Manifest JSON");
    predict->add_option("--out", out, "Score CSV (id,label,score)")->required();
    predict->add_flag("--skip-bad", skip_bad, "Skip lesions that fail instead of aborting");
    add_common(predict, common, true);

    auto* cv = app.add_subcommand("cv", "Repeated stratified two-fold cross-validation");
    cv->add_option("--features", features, "Feature CSV");
    cv->add_option("--manifest", manifest, "Manifest JSON");
    cv->add_option("--out", out, "Metrics JSON")->required();
    cv->add_option("--scores", scores_out, "Per-sample mean out-of-fold score CSV");
    cv->add_flag("--skip-bad", skip_bad, "Skip lesions that fail instead of aborting");
    add_common(cv, common, true);
    add_classifier(cv, clf, true);

    std::vector<int> n_values{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<int> levels_list = standard_gray_levels();
    int cells_parallel = 1;
    auto* grid = app.add_subcommand("grid", "Root power x gray level grid search");
    grid->add_option("--manifest", manifest, "Manifest JSON")->required();
    grid->add_option("--out", out, "Grid table CSV")->required();
    grid->add_option("--n-values", n_values, "Root powers")->delimiter(',')->capture_default_str();
    grid->add_option("--levels-list", levels_list, "Gray level counts")->delimiter(',')->capture_default_str();
    grid->add_option("--cells-parallel", cells_parallel, "Grid cells evaluated concurrently")->capture_default_str();
    grid->add_flag("--skip-bad", skip_bad, "Skip lesions that fail instead of aborting");
    add_common(grid, common, false);
    add_classifier(grid, clf, true);

    auto* ttest = app.add_subcommand("ttest", "Welch t-test between two score lists");
    ttest->add_option("--a", a_path, "Score CSV (column 'score' or first column)")->required();
    ttest->add_option("--b", b_path, "Score CSV")->required();
    ttest->add_option("--out", out, "Result JSON")->required();
    ttest->add_option("--seed", common.seed, "Echoed seed")->capture_default_str();

    std::string phantom = "quadratic";
    int draws = 100, size = 32;
    double smin = 0.8, smax = 1.25;
    bool trilinear = false;
    auto* validate = app.add_subcommand("validate-invariance", "Affine invariance of E on a deformed phantom");
    validate->add_option("--phantom", phantom, "Phantom kind")->capture_default_str();
    validate->add_option("--draws", draws, "Random affine maps")->capture_default_str();
    validate->add_option("--size", size, "Phantom edge length")->capture_default_str();
    validate->add_option("--smin", smin, "Smallest singular value")->capture_default_str();
    validate->add_option("--smax", smax, "Largest singular value")->capture_default_str();
    validate->add_flag("--trilinear", trilinear, "Trilinear resampling instead of tricubic");
    validate->add_option("--out", out, "Report JSON")->required();
    add_common(validate, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*maps)
            cmd_maps(volume, mask, out, common);
        else if (*feat)
            cmd_features(manifest, out, common, skip_bad);
        else if (*train)
            cmd_train(load_dataset(features, manifest, common, skip_bad), out, common, clf);
        else if (*predict)
            cmd_predict(model, load_dataset(features, manifest, common, skip_bad), out);
        else if (*cv)
            cmd_cv(load_dataset(features, manifest, common, skip_bad), out, scores_out, common, clf);
        else if (*grid)
            cmd_grid(manifest, out, n_values, levels_list, common, clf, skip_bad, cells_parallel);
        else if (*ttest)
            cmd_ttest(a_path, b_path, out, common.seed);
        else if (*validate)
            cmd_validate(phantom, draws, size, smin, smax, out, common, trilinear);
    } catch (const Error& e) {
        std::cerr << "demtd: " << e.what() << '\n';
        return is_input_error(e.code()) ? 2 : 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "demtd: Io: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "demtd: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
