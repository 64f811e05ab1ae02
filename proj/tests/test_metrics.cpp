#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "dmri/metrics.hpp"

using namespace dmri;

namespace {

Volume4D random_volume(int n, unsigned seed, double lo = 0.0, double hi = 1.0) {
    Volume4D v(n, n, n, 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    for (double& x : v.data) x = u(rng);
    return v;
}

Volume4D ones_mask(int n) {
    Volume4D m(n, n, n, 1, Intent::label);
    for (double& x : m.data) x = 1.0;
    return m;
}

// independent brute-force recomputations
double psnr_oracle(const Volume4D& gt, const Volume4D& pred, const Volume4D& mask) {
    double lo = 1e300, hi = -1e300, sse = 0.0;
    std::size_t n = 0;
    for (std::size_t v = 0; v < gt.data.size(); ++v) {
        if (mask.data[v] == 0.0) continue;
        lo = std::min(lo, gt.data[v]);
        hi = std::max(hi, gt.data[v]);
        sse += (gt.data[v] - pred.data[v]) * (gt.data[v] - pred.data[v]);
        ++n;
    }
    return 10.0 * std::log10((hi - lo) * (hi - lo) * n / sse);
}

double ssim_oracle(const Volume4D& gt, const Volume4D& pred, const Volume4D& mask, int win) {
    double lo = 1e300, hi = -1e300;
    std::size_t n = 0;
    for (std::size_t v = 0; v < gt.data.size(); ++v)
        if (mask.data[v] != 0.0) {
            lo = std::min(lo, gt.data[v]);
            hi = std::max(hi, gt.data[v]);
            ++n;
        }
    double c1 = std::pow(0.01 * (hi - lo), 2), c2 = std::pow(0.03 * (hi - lo), 2);
    int r = win / 2;
    double acc = 0.0;
    for (int z = 0; z < gt.s; ++z)
        for (int y = 0; y < gt.h; ++y)
            for (int x = 0; x < gt.w; ++x) {
                if (mask.at(x, y, z) == 0.0) continue;
                std::vector<double> a, b;
                for (int zz = std::max(0, z - r); zz <= std::min(gt.s - 1, z + r); ++zz)
                    for (int yy = std::max(0, y - r); yy <= std::min(gt.h - 1, y + r); ++yy)
                        for (int xx = std::max(0, x - r); xx <= std::min(gt.w - 1, x + r); ++xx) {
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
    return acc / static_cast<double>(n);
}

} // namespace

TEST_CASE("psnr: sentinel, closed form, oracle") {
    Volume4D gt = random_volume(6, 1);
    Volume4D mask = ones_mask(6);
    REQUIRE(std::isinf(psnr(gt, gt, mask)));

    // L = 1, MSE = 0.01 -> 20 dB
    Volume4D a(10, 10, 10, 1), b(10, 10, 10, 1);
    for (std::size_t v = 0; v < a.data.size(); ++v) {
        a.data[v] = (v % 2 == 0) ? 0.0 : 1.0; // range exactly 1
        b.data[v] = a.data[v] + 0.1;          // squared error 0.01 everywhere
    }
    REQUIRE(psnr(a, b, ones_mask(10)) == Catch::Approx(20.0).epsilon(1e-12));

    Volume4D pred = random_volume(6, 2);
    REQUIRE(psnr(gt, pred, mask) ==
            Catch::Approx(psnr_oracle(gt, pred, mask)).margin(1e-9));
}

TEST_CASE("psnr errors: empty mask and zero range") {
    Volume4D gt = random_volume(4, 3);
    Volume4D empty(4, 4, 4, 1, Intent::label);
    try {
        psnr(gt, gt, empty);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::degenerate_input);
    }
    Volume4D flat(4, 4, 4, 1);
    for (double& v : flat.data) v = 0.7;
    try {
        psnr(flat, gt, ones_mask(4));
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::degenerate_input);
    }
}

TEST_CASE("psnr is invariant under joint affine rescaling") {
    Volume4D gt = random_volume(6, 5);
    Volume4D pred = random_volume(6, 6);
    Volume4D mask = ones_mask(6);
    double base = psnr(gt, pred, mask);
    Volume4D gt2 = gt, pred2 = pred;
    for (double& v : gt2.data) v = 3.7 * v - 1.2;
    for (double& v : pred2.data) v = 3.7 * v - 1.2;
    REQUIRE(psnr(gt2, pred2, mask) == Catch::Approx(base).margin(1e-9));
}

TEST_CASE("ssim: identity, hand-checked constant case, anti-correlation") {
    Volume4D gt = random_volume(8, 7);
    Volume4D mask = ones_mask(8);
    REQUIRE(ssim(gt, gt, mask, 7) == Catch::Approx(1.0).epsilon(1e-12));

    // constant window gt = 0.5 vs pred = 0.7 with L forced to 1: the
    // luminance term is (0.7 + 1e-4)/(0.74 + 1e-4) and the structure term 1
    {
        double c1 = (0.01 * 1.0) * (0.01 * 1.0);
        double c2 = (0.03 * 1.0) * (0.03 * 1.0);
        double got = dmri::detail::local_ssim(0.5, 0.7, 0.0, 0.0, 0.0, c1, c2);
        double expect = (0.7 + 1e-4) / (0.74 + 1e-4);
        REQUIRE(got == Catch::Approx(expect).epsilon(1e-12));
        REQUIRE(got == Catch::Approx(0.945953249560870).epsilon(1e-12));
    }

    // anti-correlated zero-mean signals score negative; a checkerboard keeps
    // every window mean near zero so the structure term dominates
    Volume4D s(8, 8, 8, 1), t(8, 8, 8, 1);
    for (int z = 0; z < 8; ++z)
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x) {
                double v = ((x + y + z) % 2 == 0) ? 1.0 : -1.0;
                s.at(x, y, z) = v;
                t.at(x, y, z) = -v;
            }
    REQUIRE(ssim(s, t, ones_mask(8), 7) < 0.0);
}

TEST_CASE("ssim matches the brute-force oracle and is symmetric") {
    Volume4D gt = random_volume(7, 11);
    Volume4D pred = random_volume(7, 12);
    Volume4D mask = ones_mask(7);
    double got = ssim(gt, pred, mask, 5);
    REQUIRE(got == Catch::Approx(ssim_oracle(gt, pred, mask, 5)).margin(1e-6));

    // symmetry needs equal dynamic ranges; compare a vs b with b's range
    // matched by construction
    Volume4D a = random_volume(6, 13);
    Volume4D b = a;
    std::reverse(b.data.begin(), b.data.end());
    REQUIRE(ssim(a, b, ones_mask(6), 5) ==
            Catch::Approx(ssim(b, a, ones_mask(6), 5)).margin(1e-12));
}

TEST_CASE("ssim rejects even windows") {
    Volume4D gt = random_volume(5, 1);
    try {
        ssim(gt, gt, ones_mask(5), 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::invalid_argument);
    }
}

TEST_CASE("evaluate: identical maps, single parameter, missing parameter") {
    ParamMaps gt, pred;
    gt.set("fa", random_volume(6, 21));
    gt.set("md", random_volume(6, 22));
    pred.set("fa", gt.get("fa"));
    pred.set("md", gt.get("md"));
    Volume4D mask = ones_mask(6);

    MetricsReport rep = evaluate(gt, pred, mask, {"fa", "md"});
    REQUIRE(std::isinf(rep.psnr_values[0]));
    REQUIRE(std::isinf(rep.psnr_values[1]));
    REQUIRE(rep.ssim_values[0] == Catch::Approx(1.0));
    REQUIRE(std::isinf(rep.psnr_average));

    MetricsReport single = evaluate(gt, pred, mask, {"md"});
    REQUIRE(single.psnr_average == single.psnr_values[0]);
    REQUIRE(single.ssim_average == single.ssim_values[0]);

    try {
        evaluate(gt, pred, mask, {"fa", "od"});
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::invalid_argument);
    }
}

TEST_CASE("two-unit aggregation matches the two-sample formulas") {
    ParamMaps gt1, p1, gt2, p2;
    gt1.set("fa", random_volume(6, 31));
    p1.set("fa", random_volume(6, 32));
    gt2.set("fa", random_volume(6, 33));
    p2.set("fa", random_volume(6, 34));
    Volume4D mask = ones_mask(6);

    MetricsReport a = evaluate(gt1, p1, mask, {"fa"});
    MetricsReport b = evaluate(gt2, p2, mask, {"fa"});
    MetricsReport agg = aggregate({a, b});

    double mean = (a.psnr_values[0] + b.psnr_values[0]) / 2.0;
    double sd = std::abs(a.psnr_values[0] - b.psnr_values[0]) / std::sqrt(2.0);
    REQUIRE(agg.psnr_values[0] == Catch::Approx(mean).epsilon(1e-12));
    REQUIRE(agg.psnr_std[0] == Catch::Approx(sd).epsilon(1e-12));
    REQUIRE(agg.n_units == 2);
}

TEST_CASE("csv and table outputs are written") {
    ParamMaps gt, pred;
    gt.set("fa", random_volume(5, 41));
    pred.set("fa", random_volume(5, 42));
    MetricsReport rep = evaluate(gt, pred, ones_mask(5), {"fa"});
    rep.method = "MF";
    rep.protocol = "18 DWIs";
    namespace fs = std::filesystem;
    std::string csv = (fs::temp_directory_path() / "dmri_metrics.csv").string();
    std::string txt = (fs::temp_directory_path() / "dmri_metrics.txt").string();
    write_metrics_csv({rep}, csv);
    write_metrics_table({rep}, txt);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "method,protocol,metric,fa,average");
    std::string row;
    std::getline(in, row);
    REQUIRE(row.rfind("MF,18 DWIs,psnr,", 0) == 0);
}
