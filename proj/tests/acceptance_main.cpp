// Acceptance suite: runs every release gate end to end and prints one
// PASS/FAIL line per criterion. Exits non-zero if any gate fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "dmri/pipeline.hpp"
#include "helpers.hpp"

using namespace dmri;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1: DTI
void criterion_dti_roundtrip() {
    auto t0 = std::chrono::steady_clock::now();
    GradientTable table = make_protocol({1000.0}, 30, 1);
    std::mt19937_64 rng(12345);

    double worst_tensor = 0.0, worst_fa = 0.0, worst_scalar = 0.0;
    const int n = 10000;
    for (int trial = 0; trial < n; ++trial) {
        Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
        std::vector<double> sig(table.size());
        for (int i = 0; i < table.size(); ++i)
            sig[i] = dti_signal(d, table.is_b0(i) ? 0.0 : table.entries[i].b,
                                table.entries[i].dir, 1.0);
        TensorFit fit = fit_tensor_wls(sig, table);
        worst_tensor = std::max(worst_tensor, (fit.tensor() - d).norm() / d.norm());

        auto ev = eig_sym3_values(d);
        DtiScalars truth = scalars_from_eigenvalues(ev[0], ev[1], ev[2]);
        DtiScalars got = dti_scalars(fit);
        worst_fa = std::max(worst_fa, std::abs(got.fa - truth.fa));
        worst_scalar = std::max(worst_scalar, std::abs(got.md - truth.md) / truth.md);
        worst_scalar = std::max(worst_scalar, std::abs(got.ad - truth.ad) / truth.ad);
        worst_scalar = std::max(worst_scalar, std::abs(got.rd - truth.rd) / truth.rd);
    }
    double secs = elapsed_s(t0);
    bool pass = worst_tensor <= 1e-8 && worst_fa <= 1e-8 && worst_scalar <= 1e-8 && secs < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "tensor rel %.2e, FA abs %.2e, MD/AD/RD rel %.2e, %.1fs (n=%d)", worst_tensor,
                  worst_fa, worst_scalar, secs, n);
    report(1, "DTI roundtrip", pass, buf);
}

// ------------------------------------------------------------- 2: NODDI
void criterion_noddi_roundtrip() {
    PhantomSpec spec;
    spec.w = spec.h = spec.s = 16;
    PhantomRegion csf;
    csf.a = {0, 0, 0};
    csf.b = {16, 16, 16};
    csf.tissue = 0;
    csf.micro.vic = 0.1;
    csf.micro.viso = 0.9;
    csf.micro.kappa = od_to_kappa(0.9);
    csf.micro.mu = {0, 0, 1};
    PhantomRegion gm;
    gm.shape = PhantomRegion::Shape::sphere;
    gm.a = {8, 8, 8};
    gm.radius = 7.0;
    gm.tissue = 1;
    gm.micro.vic = 0.4;
    gm.micro.viso = 0.1;
    gm.micro.kappa = 1.0;
    gm.micro.mu = {1, 0, 0};
    PhantomRegion wm;
    wm.a = {4, 4, 4};
    wm.b = {8, 8, 8};
    wm.tissue = 2;
    wm.micro.vic = 0.7;
    wm.micro.viso = 0.05;
    wm.micro.kappa = 4.0;
    wm.micro.mu = {0, 1, 0};
    spec.regions = {csf, gm, wm};
    spec.noise_sigma = 0.0;

    GradientTable protocol = make_protocol({1000, 2000, 3000}, 90, 18);
    PhantomData data = build_phantom(spec, protocol);

    DtiVolumeFit dti = fit_dti_volume(data.signals, protocol, data.mask);
    NoddiDictionary dict = build_dictionary(protocol);
    NoddiFitOptions opt;
    opt.ridge_rel = 1e-5;
    ParamMaps fit = fit_noddi_volume(data.signals, protocol, data.mask, dti.principal_dir, dict,
                                     opt);

    std::size_t total = 0, ok = 0;
    const Volume4D& vic_t = data.truth.get("vic");
    const Volume4D& viso_t = data.truth.get("viso");
    const Volume4D& od_t = data.truth.get("od");
    const Volume4D& vic_f = fit.get("vic");
    const Volume4D& viso_f = fit.get("viso");
    const Volume4D& od_f = fit.get("od");
    for (std::size_t v = 0; v < data.mask.data.size(); ++v) {
        if (data.mask.data[v] == 0.0) continue;
        ++total;
        bool good = std::abs(vic_f.data[v] - vic_t.data[v]) <= 0.1 &&
                    std::abs(viso_f.data[v] - viso_t.data[v]) <= 0.05 &&
                    std::abs(od_f.data[v] - od_t.data[v]) <= 0.05;
        if (good) ++ok;
    }
    double frac = static_cast<double>(ok) / static_cast<double>(total);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.2f%% of %zu voxels within tolerance", 100.0 * frac,
                  total);
    report(2, "NODDI roundtrip", frac >= 0.99, buf);
}

// ------------------------------------------------------- 3: kappa -> OD
void criterion_kappa_od() {
    bool exact = (kappa_to_od(1.0) == 0.5);
    bool monotone = true;
    double prev = kappa_to_od(0.0);
    for (int i = 1; i <= 1000; ++i) {
        double od = kappa_to_od(i * 0.064);
        if (!(od < prev)) monotone = false;
        prev = od;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "od(1)=%.17g, monotone on 1000-point grid: %s",
                  kappa_to_od(1.0), monotone ? "yes" : "no");
    report(3, "kappa_to_od", exact && monotone, buf);
}

// ------------------------------------------------------------- 4: HMRF
void criterion_hmrf() {
    const int n = 16;
    const std::array<double, 3> means{0.2, 0.5, 0.8};
    const double gap = 0.3;
    Volume4D t1(n, n, n, 1), mask(n, n, n, 1, Intent::label), labels(n, n, n, 1, Intent::label);
    detail::SplitMix64 rng(99);
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                std::size_t v = t1.index(x, y, z);
                int lab = 0;
                if (x >= 4 && x < 12 && y >= 4 && y < 12 && z >= 4 && z < 12) lab = 1;
                if (x >= 6 && x < 10 && y >= 6 && y < 10 && z >= 6 && z < 10) lab = 2;
                labels.data[v] = lab;
                mask.data[v] = 1.0;
                t1.data[v] = means[lab] + 0.05 * gap * rng.normal();
            }

    HmrfOptions opt;
    opt.beta = 1.0;
    opt.seed = 7;
    HmrfResult res = segment_hmrf(t1, mask, opt);

    std::array<double, 3> inter{}, a{}, b{};
    for (std::size_t v = 0; v < labels.data.size(); ++v) {
        int truth = static_cast<int>(labels.data[v]);
        std::array<double, 3> q{res.maps.p_csf.data[v], res.maps.p_gm.data[v],
                                res.maps.p_wm.data[v]};
        int pred = 0;
        for (int k = 1; k < 3; ++k)
            if (q[k] > q[pred]) pred = k;
        ++a[truth];
        ++b[pred];
        if (pred == truth) ++inter[truth];
    }
    double min_dice = 1.0;
    for (int k = 0; k < 3; ++k) min_dice = std::min(min_dice, 2.0 * inter[k] / (a[k] + b[k]));

    double worst_simplex = 0.0;
    for (double dev : res.simplex_deviation) worst_simplex = std::max(worst_simplex, dev);

    char buf[128];
    std::snprintf(buf, sizeof(buf), "min dice %.4f, simplex dev %.1e over %d sweeps", min_dice,
                  worst_simplex, res.iterations);
    report(4, "HMRF segmentation", min_dice >= 0.95 && worst_simplex <= 1e-6, buf);
}

// --------------------------------------------------- 5: gradient check
void criterion_gradient_check() {
    std::mt19937_64 rng(555);
    std::normal_distribution<double> n01(0.0, 1.0);
    double max_rel = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        EstimatorWeights net = init_weights(6, {8}, 4, 900 + trial); // 92*8 params < 1e3
        Eigen::MatrixXd x(5, 6), y(5, 4);
        for (int i = 0; i < x.size(); ++i) x(i / 6, i % 6) = n01(rng);
        for (int i = 0; i < y.size(); ++i) y(i / 4, i % 4) = n01(rng);
        WeightGradients g = loss_gradient(net, x, y);
        const double h = 1e-4;
        for (std::size_t l = 0; l < net.layers.size(); ++l)
            for (int r = 0; r < net.layers[l].w.rows(); ++r)
                for (int c = 0; c < net.layers[l].w.cols(); ++c) {
                    EstimatorWeights plus = net, minus = net;
                    plus.layers[l].w(r, c) += h;
                    minus.layers[l].w(r, c) -= h;
                    double fd = (loss(forward(plus, x), y) - loss(forward(minus, x), y)) /
                                (2.0 * h);
                    double an = g.dw[l](r, c);
                    double denom = std::max({std::abs(fd), std::abs(an), 1e-6});
                    max_rel = std::max(max_rel, std::abs(fd - an) / denom);
                }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max relative error %.2e over 10 draws", max_rel);
    report(5, "gradient check", max_rel <= 1e-4, buf);
}

// ------------------------------------------------------ 6: subsampling
void criterion_subsampling() {
    GradientTable t = make_protocol({1000.0}, 90, 0);
    std::vector<Eigen::Vector3d> dirs;
    for (const auto& e : t.entries) dirs.push_back(e.dir);

    std::vector<int> sel = subsample_shell(dirs, 6);
    std::vector<Eigen::Vector3d> chosen;
    for (int i : sel) chosen.push_back(dirs[i]);
    double got = electrostatic_energy(chosen);

    std::mt19937_64 rng(606);
    double total = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> idx(90);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<Eigen::Vector3d> sample;
        for (int i = 0; i < 6; ++i) sample.push_back(dirs[idx[i]]);
        total += electrostatic_energy(sample);
    }
    double random_mean = total / 100.0;

    // brute-force optimum for n=8, k=3
    std::vector<Eigen::Vector3d> small;
    for (int i = 0; i < 8; ++i) small.push_back(test_helpers::random_unit(rng));
    std::vector<int> ssel = subsample_shell(small, 3);
    std::vector<Eigen::Vector3d> schosen;
    for (int i : ssel) schosen.push_back(small[i]);
    double sgot = electrostatic_energy(schosen);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int k = j + 1; k < 8; ++k) {
                std::vector<Eigen::Vector3d> c{small[i], small[j], small[k]};
                best = std::min(best, electrostatic_energy(c));
            }

    bool pass = got < random_mean && sgot <= 1.10 * best;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "k=6/90: %.4f vs random mean %.4f; n=8,k=3: %.4f vs optimum %.4f", got,
                  random_mean, sgot, best);
    report(6, "subsampling quality", pass, buf);
}

// ---------------------------------------------------------- 7: metrics
void criterion_metrics_oracle() {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 7;
    Volume4D gt(n, n, n, 1), pred(n, n, n, 1), mask(n, n, n, 1, Intent::label);
    for (std::size_t v = 0; v < gt.data.size(); ++v) {
        gt.data[v] = u(rng);
        pred.data[v] = u(rng);
        mask.data[v] = 1.0;
    }

    // brute-force recomputations
    double lo = 1e300, hi = -1e300, sse = 0.0;
    for (std::size_t v = 0; v < gt.data.size(); ++v) {
        lo = std::min(lo, gt.data[v]);
        hi = std::max(hi, gt.data[v]);
        sse += (gt.data[v] - pred.data[v]) * (gt.data[v] - pred.data[v]);
    }
    double psnr_ref =
        10.0 * std::log10((hi - lo) * (hi - lo) * static_cast<double>(gt.data.size()) / sse);
    double psnr_got = psnr(gt, pred, mask);

    const int win = 7, r = win / 2;
    double c1 = std::pow(0.01 * (hi - lo), 2), c2 = std::pow(0.03 * (hi - lo), 2);
    double acc = 0.0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                std::vector<double> a, b;
                for (int zz = std::max(0, z - r); zz <= std::min(n - 1, z + r); ++zz)
                    for (int yy = std::max(0, y - r); yy <= std::min(n - 1, y + r); ++yy)
                        for (int xx = std::max(0, x - r); xx <= std::min(n - 1, x + r); ++xx) {
                            a.push_back(gt.at(xx, yy, zz));
                            b.push_back(pred.at(xx, yy, zz));
                        }
                double ma = 0, mb = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    ma += a[i];
                    mb += b[i];
                }
                ma /= a.size();
                mb /= b.size();
                double va = 0, vb = 0, cab = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    va += (a[i] - ma) * (a[i] - ma);
                    vb += (b[i] - mb) * (b[i] - mb);
                    cab += (a[i] - ma) * (b[i] - mb);
                }
                va /= a.size();
                vb /= b.size();
                cab /= a.size();
                acc += ((2 * ma * mb + c1) * (2 * cab + c2)) /
                       ((ma * ma + mb * mb + c1) * (va + vb + c2));
            }
    double ssim_ref = acc / static_cast<double>(gt.data.size());
    double ssim_got = ssim(gt, pred, mask, win);
    double self = ssim(gt, gt, mask, win);

    bool pass = std::abs(psnr_got - psnr_ref) <= 1e-9 && std::abs(ssim_got - ssim_ref) <= 1e-6 &&
                self == 1.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "|dPSNR| %.1e dB, |dSSIM| %.1e, SSIM(a,a) = %.17g",
                  std::abs(psnr_got - psnr_ref), std::abs(ssim_got - ssim_ref), self);
    report(7, "metrics oracle", pass, buf);
}

// --------------------------------------- 8 + 9 + 10: pipeline criteria
struct PipelineOutcome {
    double mf_psnr = 0.0;
    double ours_psnr = 0.0;
    double runtime_s = 0.0;
    std::string out_dir;
};

PipelineOutcome run_full_pipeline(const PipelineConfig& base, const std::string& dir) {
    PipelineOutcome out;
    out.out_dir = dir;
    fs::remove_all(dir);
    RunOptions opt;
    opt.out_dir = dir;
    opt.verbose = false;
    auto t0 = std::chrono::steady_clock::now();
    Pipeline p(base, opt);
    p.run(Stage::all);
    out.runtime_s = elapsed_s(t0);

    // parse the averages back out of the metrics CSV
    std::ifstream in(dir + "/metrics.csv");
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        std::size_t last = line.rfind(',');
        double avg = std::stod(line.substr(last + 1));
        if (line.rfind("MF,", 0) == 0 && line.find(",psnr,") != std::string::npos)
            out.mf_psnr = avg;
        if (line.rfind("Ours,", 0) == 0 && line.find(",psnr,") != std::string::npos)
            out.ours_psnr = avg;
    }
    return out;
}

void criteria_pipeline(const std::string& config_path) {
    PipelineConfig cfg = load_pipeline_config(config_path);
    std::string base = (fs::temp_directory_path() / "dmri_acceptance").string();

    // 8: estimator beats direct sparse fitting by >= 2 dB, under 15 minutes
    PipelineOutcome run_a = run_full_pipeline(cfg, base + "_a");
    {
        bool pass = run_a.ours_psnr >= run_a.mf_psnr + 2.0 && run_a.runtime_s < 900.0;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "MF %.4f dB, ours %.4f dB (+%.2f), %.0fs",
                      run_a.mf_psnr, run_a.ours_psnr, run_a.ours_psnr - run_a.mf_psnr,
                      run_a.runtime_s);
        report(8, "estimator vs MF baseline", pass, buf);
    }

    // 9: prior channels do not hurt validation loss (direction only)
    {
        PipelineConfig no_prior = cfg;
        no_prior.prior_channels = false;
        std::string dir = base + "_noprior";
        fs::remove_all(dir);
        RunOptions opt;
        opt.out_dir = dir;
        opt.verbose = false;
        Pipeline p(no_prior, opt);
        for (Stage s : {Stage::phantom, Stage::subsample, Stage::fit_dti, Stage::fit_noddi,
                        Stage::segment, Stage::train})
            p.run(s);

        auto final_val = [](const std::string& dir) {
            std::ifstream in(dir + "/history.csv");
            std::string line, last;
            std::getline(in, line);
            while (std::getline(in, line))
                if (!line.empty()) last = line;
            return std::stod(last.substr(last.rfind(',') + 1));
        };
        double with_prior = final_val(run_a.out_dir);
        double without_prior = final_val(dir);
        bool pass = with_prior <= without_prior;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "val loss with priors %.6g, without %.6g", with_prior,
                      without_prior);
        report(9, "prior ablation direction", pass, buf);
    }

    // 10: bitwise reproducibility of a second full run
    {
        PipelineOutcome run_b = run_full_pipeline(cfg, base + "_b");
        auto slurp = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            return std::string((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        };
        bool weights_eq =
            slurp(run_a.out_dir + "/weights.bin") == slurp(run_b.out_dir + "/weights.bin");
        bool metrics_eq =
            slurp(run_a.out_dir + "/metrics.csv") == slurp(run_b.out_dir + "/metrics.csv");
        char buf[96];
        std::snprintf(buf, sizeof(buf), "weights identical: %s, metrics identical: %s",
                      weights_eq ? "yes" : "no", metrics_eq ? "yes" : "no");
        report(10, "bitwise reproducibility", weights_eq && metrics_eq, buf);
    }
}

} // namespace

int main() {
    std::printf("acceptance suite (config: %s)\n", ACCEPTANCE_CONFIG);
    criterion_dti_roundtrip();
    criterion_noddi_roundtrip();
    criterion_kappa_od();
    criterion_hmrf();
    criterion_gradient_check();
    criterion_subsampling();
    criterion_metrics_oracle();
    criteria_pipeline(ACCEPTANCE_CONFIG);
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
