// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <Eigen/Dense>

#include "demtd/cross_validation.hpp"
#include "demtd/derivatives.hpp"
#include "demtd/descriptor.hpp"
#include "demtd/grid_search.hpp"
#include "demtd/invariants.hpp"
#include "demtd/kl_transform.hpp"
#include "demtd/metrics.hpp"
#include "demtd/phantom.hpp"
#include "demtd/suppression.hpp"
#include "demtd/volume_io.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace demtd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a)
{
    char buf[96];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c)
{
    char buf[200];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

double hess_comp(const SymMat3& h, int k)
{
    const double c[6] = {h.xx, h.xy, h.xz, h.yy, h.yz, h.zz};
    return c[k];
}

SymMat3 sym_normal(Rng& rng)
{
    return {rng.normal(), rng.normal(), rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

Vec3 vec_normal(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal()}; }

Mat3 mat_normal(Rng& rng)
{
    Mat3 p;
    for (auto& v : p.m)
        v = rng.normal();
    return p;
}

template <class F>
void interior(const Dims& d, int b, F&& f)
{
    for (int z = b; z < d.nz - b; ++z)
        for (int y = b; y < d.ny - b; ++y)
            for (int x = b; x < d.nx - b; ++x)
                f(x, y, z);
}

// ---------------------------------------------------------------------------

Outcome affine_invariance_analytic()
{
    const auto t0 = Clock::now();
    Rng rng(101);
    int draws = 0;
    double worst = 0.0;
    while (draws < 10000) {
        const Vec3 g = vec_normal(rng);
        const SymMat3 h = sym_normal(rng);
        const Mat3 p = mat_normal(rng);
        if (std::fabs(h.determinant()) <= 1e-6 || std::fabs(p.determinant()) <= 1e-6)
            continue;
        const double e1 = invariant_E(g, h, 0.0).e;
        const double e2 = invariant_E_pushforward(g, h, AffineMap(p), 0.0).e;
        worst = std::max(worst, std::fabs(e2 - e1) / std::max(1.0, std::fabs(e1)));
        ++draws;
    }
    const double t = seconds_since(t0);
    return {worst < 1e-9 && t < 1.0, fmt("%.0f draws, max rel err %.2e, %.3f s", draws, worst, t)};
}

Outcome determinant_identity()
{
    const auto t0 = Clock::now();
    Rng rng(102);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Vec3 g = vec_normal(rng);
        const SymMat3 h = sym_normal(rng);
        const HybridTensors k = hybrid_tensors(harris_tensor(g), h);
        const double lhs = k.k1.determinant() - h.determinant();
        const double rhs = -h.adjugate().quadratic_form(g);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    const double t = seconds_since(t0);
    return {worst < 1e-9 && t < 1.0, fmt("2000 draws, max rel err %.2e, %.3f s", worst, t)};
}

// Maps produced elsewhere in this run: phantoms, band-limited fields and
// synthetic lesions at several sizes.
std::vector<InvariantMap> generated_maps()
{
    std::vector<InvariantMap> maps;
    const Dims d32{32, 32, 32};
    maps.push_back(invariant_map(quadratic_phantom(smooth_test_field(), d32).volume, MaskROI::filled(d32, 1)));
    Rng rng(103);
    const Dims d24{24, 24, 24};
    for (int i = 0; i < 4; ++i)
        maps.push_back(invariant_map(quadratic_phantom(test::band_limited_field(rng), d24).volume, MaskROI::filled(d24, 1)));
    for (const Lesion& l : test::make_lesions(6, 104, 14))
        maps.push_back(invariant_map(l.volume, l.mask));
    for (const Lesion& l : test::make_lesions(2, 105, 20))
        maps.push_back(invariant_map(l.volume, l.mask));
    return maps;
}

Outcome f_sum(const std::vector<InvariantMap>& maps)
{
    double worst = 0.0, emax = 0.0;
    std::size_t voxels = 0;
    for (const auto& m : maps)
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            worst = std::max(worst, std::fabs(m.f1[i] + m.f2[i] - 2.0));
            emax = std::max(emax, std::fabs(m.e[i]));
            ++voxels;
        }
    return {worst <= 1e-12, fmt("%.0f voxels, max |F1+F2-2| %.2e (max |E| %.3g)", static_cast<double>(voxels), worst, emax)};
}

Outcome ratio_vs_adjugate()
{
    Rng rng(106);
    double worst = 0.0;
    int draws = 0;
    while (draws < 2000) {
        const Vec3 g = vec_normal(rng);
        const SymMat3 h = sym_normal(rng);
        if (std::fabs(h.determinant()) <= 1e-6)
            continue;
        const InvariantF a = invariants_F(invariant_E(g, h, 0.0).e);
        const InvariantF b = invariants_F_direct(g, h, 0.0);
        worst = std::max({worst, std::fabs(a.f1 - b.f1) / std::max(1.0, std::fabs(a.f1)),
                          std::fabs(a.f2 - b.f2) / std::max(1.0, std::fabs(a.f2))});
        ++draws;
    }
    return {worst < 1e-9, fmt("%.0f draws, max rel err %.2e", draws, worst)};
}

Outcome discrete_invariance()
{
    const auto t0 = Clock::now();
    Rng rng(107);
    std::vector<AffineMap> maps;
    for (int i = 0; i < 100; ++i)
        maps.push_back(random_affine(rng, 0.8, 1.25));
    const InvarianceReport r = invariance_report(smooth_test_field(), {32, 32, 32}, maps);
    const double t = seconds_since(t0);
    return {r.discrete_rms_max < 0.05 && t < 60.0,
            fmt("100 draws, E rel RMS max %.4f (mean %.4f), %.1f s", r.discrete_rms_max, r.discrete_rms_mean, t)};
}

Outcome derivative_calibration()
{
    Rng rng(108);
    double poly_worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        AnalyticField f;
        f.add(rng.normal(), 0, 0, 0);
        for (int ax = 0; ax < 3; ++ax)
            f.add(rng.normal(), ax == 0, ax == 1, ax == 2);
        f.add(rng.normal(), 2, 0, 0).add(rng.normal(), 0, 2, 0).add(rng.normal(), 0, 0, 2);
        f.add(rng.normal(), 1, 1, 0).add(rng.normal(), 1, 0, 1).add(rng.normal(), 0, 1, 1);
        const Dims d{15, 13, 14};
        const Phantom ph = quadratic_phantom(f, d);
        const auto g = sobel_gradient(ph.volume);
        const auto h = deriche_hessian(ph.volume);
        interior(d, 3, [&](int x, int y, int z) {
            const Vec3& ga = ph.gradient(x, y, z);
            const SymMat3& ha = ph.hessian(x, y, z);
            const double gs = std::max(1.0, std::hypot(ga[0], ga[1], ga[2]));
            double hs = 1.0;
            for (int k = 0; k < 6; ++k)
                hs = std::max(hs, std::fabs(hess_comp(ha, k)));
            for (std::size_t k = 0; k < 3; ++k)
                poly_worst = std::max(poly_worst, std::fabs(g(x, y, z)[k] - ga[k]) / gs);
            for (int k = 0; k < 6; ++k)
                poly_worst = std::max(poly_worst, std::fabs(hess_comp(h(x, y, z), k) - hess_comp(ha, k)) / hs);
        });
    }

    double g_rms = 0.0, h_rms = 0.0;
    const Dims d{24, 24, 24};
    for (int trial = 0; trial < 10; ++trial) {
        const Phantom ph = quadratic_phantom(test::band_limited_field(rng), d);
        const auto g = sobel_gradient(ph.volume);
        const auto h = deriche_hessian(ph.volume);
        const auto [og, oh] = central_diff_oracle(ph.volume);
        double gd = 0, gn = 0, hd = 0, hn = 0;
        interior(d, 3, [&](int x, int y, int z) {
            for (std::size_t k = 0; k < 3; ++k) {
                gd += std::pow(g(x, y, z)[k] - og(x, y, z)[k], 2);
                gn += std::pow(og(x, y, z)[k], 2);
            }
            for (int k = 0; k < 6; ++k) {
                hd += std::pow(hess_comp(h(x, y, z), k) - hess_comp(oh(x, y, z), k), 2);
                hn += std::pow(hess_comp(oh(x, y, z), k), 2);
            }
        });
        g_rms = std::max(g_rms, std::sqrt(gd / gn));
        h_rms = std::max(h_rms, std::sqrt(hd / hn));
    }
    return {poly_worst < 1e-6 && g_rms < 0.05 && h_rms < 0.05,
            fmt("polynomial max rel err %.2e; oracle rel RMS gradient %.4f, hessian %.4f", poly_worst, g_rms, h_rms)};
}

Outcome suppression_properties()
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    Rng rng(109);
    bool ok = true;
    for (int n = 1; n <= 9; ++n) {
        // Magnitudes log-uniform over 1e-8 .. 1e8, random sign, plus E = 0.
        std::vector<double> e;
        e.reserve(100001);
        for (int i = 0; i < 100000; ++i) {
            const double m = std::pow(10.0, rng.uniform(-8.0, 8.0));
            e.push_back(rng.uniform() < 0.5 ? -m : m);
        }
        e.push_back(0.0);
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        std::vector<double> q(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            q[i] = suppress(e[i], n);
            ok = ok && std::fabs(q[i]) <= half_pi && (e[i] < 0.0 ? q[i] < 0.0 : q[i] > 0.0);
        }
        for (std::size_t i = 1; i < e.size(); ++i)
            if ((e[i - 1] < 0.0) == (e[i] < 0.0))
                ok = ok && q[i] < q[i - 1];
        std::vector<double> sorted = q;
        std::sort(sorted.begin(), sorted.end());
        ok = ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    double spot = 0.0;
    for (int n = 1; n <= 9; ++n)
        spot = std::max(spot, std::fabs(suppress(1.0, n) - std::numbers::pi / 4.0));
    ok = ok && spot <= 1e-12 && suppress(0.0, 4) == half_pi;
    return {ok, fmt("9 x 1e5 samples; max |Q(1) - pi/4| %.2e", spot)};
}

Outcome glcm_oracle()
{
    Rng rng(110);
    std::size_t cases = 0;
    double worst = 0.0, sum_err = 0.0;
    bool symmetric = true;
    for (int levels : {2, 4, 16})
        for (int nx = 1; nx <= 5; ++nx)
            for (int ny = 1; ny <= 5; ++ny)
                for (int nz = 1; nz <= 5; ++nz)
                    for (int rep = 0; rep < 2; ++rep) {
                        const Dims d{nx, ny, nz};
                        LabelMap labels;
                        labels.dims = d;
                        labels.levels = levels;
                        labels.labels.resize(d.count());
                        std::vector<std::uint8_t> m(d.count());
                        for (std::size_t i = 0; i < d.count(); ++i) {
                            labels.labels[i] = static_cast<std::int16_t>(rng.below(static_cast<std::uint64_t>(levels)));
                            m[i] = rep == 0 || rng.uniform() < 0.7;
                        }
                        const MaskROI mask(d, m);
                        for (const Offset& off : directions_13()) {
                            const auto oracle = test::naive_glcm(labels, mask, off);
                            if (std::isnan(oracle[0]))
                                continue;
                            ++cases;
                            const Glcm g = build_glcm(labels, mask, off);
                            double s = 0.0;
                            for (int i = 0; i < levels; ++i)
                                for (int j = 0; j < levels; ++j) {
                                    s += g(i, j);
                                    symmetric = symmetric && g(i, j) == g(j, i);
                                    worst = std::max(worst, std::fabs(g(i, j) - oracle[static_cast<std::size_t>(i * levels + j)]));
                                }
                            sum_err = std::max(sum_err, std::fabs(s - 1.0));
                        }
                    }
    return {worst <= 1e-12 && sum_err <= 1e-12 && symmetric,
            fmt("%.0f matrices, max |diff| %.2e, max |sum-1| %.2e", static_cast<double>(cases), worst, sum_err)};
}

// Volume with axes reordered so that new axis a is old axis perm[a].
std::pair<Volume3D, MaskROI> permute_axes(const Volume3D& v, const MaskROI& m, const std::array<int, 3>& perm)
{
    const std::array<int, 3> n{v.dims().nx, v.dims().ny, v.dims().nz};
    const Dims s{n[static_cast<std::size_t>(perm[0])], n[static_cast<std::size_t>(perm[1])], n[static_cast<std::size_t>(perm[2])]};
    std::vector<float> sv(s.count());
    std::vector<std::uint8_t> sm(s.count());
    for (int z = 0; z < n[2]; ++z)
        for (int y = 0; y < n[1]; ++y)
            for (int x = 0; x < n[0]; ++x) {
                const std::array<int, 3> old{x, y, z};
                const std::size_t i = s.index(old[static_cast<std::size_t>(perm[0])], old[static_cast<std::size_t>(perm[1])],
                                              old[static_cast<std::size_t>(perm[2])]);
                sv[i] = v(x, y, z);
                sm[i] = m(x, y, z);
            }
    return {Volume3D(s, {1, 1, 1}, std::move(sv)), MaskROI(s, std::move(sm))};
}

Offset canonical(Offset o)
{
    for (int k = 0; k < 3; ++k) {
        if (o[static_cast<std::size_t>(k)] > 0)
            return o;
        if (o[static_cast<std::size_t>(k)] < 0)
            return {-o[0], -o[1], -o[2]};
    }
    return o;
}

Outcome descriptor_shape()
{
    Rng rng(111);
    bool lengths = true;
    int inputs = 0;
    for (int i = 0; i < 12; ++i) {
        const Dims d{8 + static_cast<int>(rng.below(6)), 8 + static_cast<int>(rng.below(6)), 8 + static_cast<int>(rng.below(6))};
        const Volume3D v = test::random_volume(d, rng);
        std::vector<std::uint8_t> m(d.count());
        for (auto& x : m)
            x = rng.uniform() < 0.8;
        FeatureParams fp;
        fp.root_power = 1 + static_cast<int>(rng.below(9));
        const auto levels = standard_gray_levels();
        fp.levels = levels[rng.below(levels.size())];
        lengths = lengths && demtd_features(v, MaskROI(d, m), fp).values.size() == 364;
        ++inputs;
    }

    const Dims d{11, 9, 10};
    const Volume3D v = test::random_volume(d, rng);
    std::vector<std::uint8_t> m(d.count());
    for (auto& x : m)
        x = rng.uniform() < 0.85;
    const MaskROI mask(d, m);
    const FeatureVector a = demtd_features(v, mask);
    double worst = 0.0;
    const auto& dirs = directions_13();
    for (const std::array<int, 3> perm : {std::array<int, 3>{1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}) {
        const auto [pv, pm] = permute_axes(v, mask, perm);
        const FeatureVector b = demtd_features(pv, pm);
        for (std::size_t k = 0; k < kDirections; ++k) {
            const Offset moved = canonical({dirs[k][static_cast<std::size_t>(perm[0])], dirs[k][static_cast<std::size_t>(perm[1])],
                                            dirs[k][static_cast<std::size_t>(perm[2])]});
            const auto j = static_cast<std::size_t>(direction_index(moved));
            for (std::size_t q = 0; q < kMeasures; ++q) {
                const double x = a.values[k * kMeasures + q], y = b.values[j * kMeasures + q];
                worst = std::max(worst, std::fabs(x - y) / std::max(1.0, std::fabs(x)));
            }
        }
    }
    return {lengths && worst <= 1e-9, fmt("%.0f inputs of length 364; 5 axis permutations, max rel block diff %.2e", inputs, worst)};
}

Outcome kl_decorrelation()
{
    std::vector<std::vector<double>> rows;
    for (const Lesion& l : test::make_lesions(20, 112, 14))
        rows.push_back(demtd_features(l.volume, l.mask, {.root_power = 3, .levels = 32}).values);
    const KlBasis basis = kl_transform_fit(rows);
    std::vector<std::vector<double>> out;
    for (const auto& r : rows)
        out.push_back(kl_transform_apply(basis, r));

    auto covariance = [](const std::vector<std::vector<double>>& x, std::size_t q) {
        const auto n = static_cast<Eigen::Index>(x.size());
        Eigen::MatrixXd a(n, static_cast<Eigen::Index>(kDirections));
        for (Eigen::Index i = 0; i < n; ++i)
            for (std::size_t k = 0; k < kDirections; ++k)
                a(i, static_cast<Eigen::Index>(k)) = x[static_cast<std::size_t>(i)][k * kMeasures + q];
        const Eigen::MatrixXd c = a.rowwise() - a.colwise().mean();
        return Eigen::MatrixXd(c.transpose() * c / static_cast<double>(n - 1));
    };

    double off_ratio = 0.0, trace_err = 0.0;
    bool ok = true;
    for (std::size_t q = 0; q < kMeasures; ++q) {
        const Eigen::MatrixXd before = covariance(rows, q), after = covariance(out, q);
        double off = 0.0;
        for (Eigen::Index i = 0; i < after.rows(); ++i)
            for (Eigen::Index j = 0; j < after.cols(); ++j)
                if (i != j)
                    off += std::fabs(after(i, j));
        const double tr = after.trace(), tb = before.trace();
        if (tb == 0.0) {
            ok = ok && off == 0.0 && tr == 0.0;
            continue;
        }
        off_ratio = std::max(off_ratio, off / tr);
        trace_err = std::max(trace_err, std::fabs(tr - tb) / tb);
    }
    ok = ok && off_ratio < 1e-9 && trace_err < 1e-9;
    return {ok, fmt("40 lesion descriptors; max off-diagonal/trace %.2e, max trace rel err %.2e", off_ratio, trace_err)};
}

Outcome classifier_sanity()
{
    const auto t0 = Clock::now();
    // Every one of the 10 coordinates is shifted by 3 sigma.
    Rng rng(113);
    Dataset d;
    for (int i = 0; i < 200; ++i) {
        const int y = i < 100 ? 0 : 1;
        std::vector<double> x(10);
        for (auto& v : x)
            v = rng.normal() + 3.0 * y;
        d.push_back("s" + std::to_string(i), y, x);
    }
    CvParams p;
    p.forest.n_trees = 500;
    p.repeats = 50;
    p.seed = 114;
    const double real = cross_validate(d, p).summary.mean.auc;

    Dataset shuffled = d;
    Rng pr(115);
    pr.shuffle(shuffled.labels.begin(), shuffled.labels.end());
    const double permuted = cross_validate(shuffled, p).summary.mean.auc;
    const double t = seconds_since(t0);
    return {real >= 0.99 && permuted >= 0.4 && permuted <= 0.6 && t < 120.0,
            fmt("mean AUC %.4f, permuted labels %.4f, %.1f s", real, permuted, t)};
}

Outcome auc_oracle()
{
    Rng rng(116);
    int sets = 0;
    bool exact = true;
    for (std::size_t n = 2; n <= 200; ++n)
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> s(n);
            std::vector<int> y(n);
            const std::uint64_t distinct = rep % 2 == 0 ? 5 : 1000000;
            for (std::size_t i = 0; i < n; ++i) {
                s[i] = static_cast<double>(rng.below(distinct)) / static_cast<double>(distinct);
                y[i] = static_cast<int>(rng.below(2));
            }
            y[0] = 0;
            y[1] = 1;
            exact = exact && auc(s, y) == test::brute_auc(s, y);
            ++sets;
        }
    const std::vector<double> hs{0.9, 0.8, 0.4, 0.2};
    const std::vector<int> hy{1, 0, 1, 0};
    const double hand = auc(hs, hy);
    return {exact && hand == 0.75, fmt("%.0f random sets exact; hand case %.4f", sets, hand)};
}

Outcome grid_table()
{
    const auto t0 = Clock::now();
    const auto lesions = test::make_lesions(5, 117, 12);
    GridParams gp;
    gp.cv.forest.n_trees = 10;
    gp.cv.repeats = 2;
    gp.cv.seed = 118;
    const GridResult g = grid_search(lesions, gp);
    bool ok = g.rows.size() == 135 && gp.levels.size() == 15;
    std::size_t i = 0;
    for (int n = 1; n <= 9; ++n)
        for (int levels : gp.levels) {
            ok = ok && i < g.rows.size() && g.rows[i].root_power == n && g.rows[i].levels == levels;
            ++i;
        }
    for (const auto& r : g.rows)
        ok = ok && g.rows[g.best].summary.mean.auc >= r.summary.mean.auc;
    return {ok, fmt("%.0f rows; best n=%.0f L=%.0f", static_cast<double>(g.rows.size()), g.rows[g.best].root_power,
                    g.rows[g.best].levels) +
                    fmt(", %.1f s", seconds_since(t0))};
}

// ---------------------------------------------------------------------------

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(DEMTD_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            files[fs::relative(e.path(), dir).string()] = ss.str();
        }
    return files;
}

Outcome cli_determinism()
{
    const fs::path root = test::scratch_dir("acceptance_cli");
    const fs::path data = root / "data";
    const auto lesions = test::make_lesions(5, 119, 12);
    const fs::path manifest = test::write_manifest(data, lesions);
    std::ofstream(data / "a.csv") << "score\n0.11\n0.24\n0.19\n0.3\n0.05\n";
    std::ofstream(data / "b.csv") << "score\n0.7\n0.81\n0.62\n0.9\n";

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"maps", "maps --volume " + q(data / "L1_vol") + " --mask " + q(data / "L1_mask") + " --out {out}/maps --n 3 --levels 32"},
        {"features", "features --manifest " + q(manifest) + " --out {out}/f.csv --n 3 --levels 32"},
        {"train", "train --features {out}/f.csv --out {out}/model.bin --trees 50 --seed 3"},
        {"predict", "predict --model {out}/model.bin --features {out}/f.csv --out {out}/p.csv"},
        {"cv", "cv --features {out}/f.csv --out {out}/cv.json --scores {out}/cv.csv --trees 50 --repeats 4 --seed 5 --kl"},
        {"cv-fsfs", "cv --features {out}/f.csv --out {out}/cvf.json --trees 20 --repeats 2 --seed 5 --fsfs --fsfs-budget 2 "
                    "--fsfs-trees 10"},
        {"grid", "grid --manifest " + q(manifest) + " --out {out}/g.csv --n-values 2,5 --levels-list 16,32 --trees 10 "
                 "--repeats 2 --seed 6"},
        {"ttest", "ttest --a " + q(data / "a.csv") + " --b " + q(data / "b.csv") + " --out {out}/t.json"},
        {"validate-invariance", "validate-invariance --phantom quadratic --draws 10 --seed 7 --out {out}/v.json"},
    };

    auto pass = [&](const fs::path& out, std::string& failed) {
        fs::remove_all(out);
        fs::create_directories(out);
        for (const auto& [name, args] : commands) {
            std::string a = args;
            for (auto pos = a.find("{out}"); pos != std::string::npos; pos = a.find("{out}"))
                a.replace(pos, 5, q(out));
            if (run_cli(a) != 0)
                failed += name + " ";
        }
        return snapshot(out);
    };

    std::string failed;
    const fs::path out = root / "out";
    const auto first = pass(out, failed);
    const auto second = pass(out, failed);
    std::string differ;
    for (const auto& [name, bytes] : first) {
        const auto it = second.find(name);
        if (it == second.end() || it->second != bytes)
            differ += name + " ";
    }
    const bool ok = failed.empty() && differ.empty() && first.size() == second.size() && !first.empty();
    std::string detail = std::to_string(commands.size()) + " commands, " + std::to_string(first.size()) + " files";
    if (!failed.empty())
        detail += "; nonzero exit: " + failed;
    if (!differ.empty())
        detail += "; differing: " + differ;
    else if (failed.empty())
        detail += " byte-identical";
    return {ok, detail};
}

} // namespace

int main()
{
    const std::vector<InvariantMap> maps = generated_maps();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"affine invariance of E (analytic)", affine_invariance_analytic},
        {"determinant identity |K1| - |H| = -g adj(H) g^T", determinant_identity},
        {"F1 + F2 = 2 on generated maps", [&] { return f_sum(maps); }},
        {"determinant-ratio vs adjugate F", ratio_vs_adjugate},
        {"discrete end-to-end invariance", discrete_invariance},
        {"derivative calibration", derivative_calibration},
        {"suppression properties", suppression_properties},
        {"GLCM oracle equivalence", glcm_oracle},
        {"descriptor shape and axis equivariance", descriptor_shape},
        {"KL decorrelation", kl_decorrelation},
        {"classifier sanity", classifier_sanity},
        {"AUC oracle", auc_oracle},
        {"grid search table", grid_table},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
