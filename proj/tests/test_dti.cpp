#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <random>

#include "dmri/dti.hpp"
#include "dmri/phantom.hpp"
#include "helpers.hpp"

using namespace dmri;

namespace {

std::vector<double> forward_signals(const Eigen::Matrix3d& d, const GradientTable& t,
                                    double s0 = 1.0) {
    std::vector<double> out(t.size());
    for (int i = 0; i < t.size(); ++i)
        out[i] = dti_signal(d, t.is_b0(i) ? 0.0 : t.entries[i].b, t.entries[i].dir, s0);
    return out;
}

} // namespace

TEST_CASE("closed-form 3x3 eigenvalues match Eigen's solver") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::Matrix3d a = test_helpers::random_spd(rng, -1.0, 2.0);
        auto ev = eig_sym3_values(a);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
        REQUIRE(ev[0] == Catch::Approx(es.eigenvalues()(2)).margin(1e-12));
        REQUIRE(ev[1] == Catch::Approx(es.eigenvalues()(1)).margin(1e-12));
        REQUIRE(ev[2] == Catch::Approx(es.eigenvalues()(0)).margin(1e-12));

        Eigen::Vector3d v = eig_sym3_principal(a, ev);
        REQUIRE(std::abs(v.norm() - 1.0) < 1e-12);
        REQUIRE((a * v - ev[0] * v).norm() < 1e-8 * (std::abs(ev[0]) + 1.0));
    }
}

TEST_CASE("noiseless isotropic fit recovers the tensor almost exactly") {
    GradientTable t = make_protocol({1000.0}, 30, 1);
    Eigen::Matrix3d d = 0.7e-3 * Eigen::Matrix3d::Identity();
    auto sig = forward_signals(d, t);
    TensorFit fit = fit_tensor_wls(sig, t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) REQUIRE(std::abs(fit.tensor()(i, j) - d(i, j)) < 1e-10);
}

TEST_CASE("noiseless random SPD tensors roundtrip through the fit") {
    GradientTable t = make_protocol({1000.0}, 30, 1);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
        auto sig = forward_signals(d, t, 0.8);
        TensorFit fit = fit_tensor_wls(sig, t);
        REQUIRE((fit.tensor() - d).norm() / d.norm() < 1e-8);
        REQUIRE(std::exp(fit.ln_s0) == Catch::Approx(0.8).epsilon(1e-8));
    }
}

TEST_CASE("coplanar directions are rank deficient") {
    GradientTable t;
    t.entries.push_back({0.0, {0, 0, 0}});
    for (int i = 0; i < 6; ++i) {
        double a = i * M_PI / 6.0;
        t.entries.push_back({1000.0, {std::cos(a), std::sin(a), 0.0}});
    }
    std::vector<double> sig(t.size(), 0.5);
    sig[0] = 1.0;
    try {
        fit_tensor_wls(sig, t);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::rank_deficient);
    }
}

TEST_CASE("all non-positive signals are rejected") {
    GradientTable t = make_protocol({1000.0}, 10, 1);
    std::vector<double> sig(t.size(), 0.0);
    try {
        fit_tensor_wls(sig, t);
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::nonpositive_signal);
    }
}

TEST_CASE("dti scalars: isotropic, stick and frozen reference values") {
    DtiScalars iso = scalars_from_eigenvalues(0.9e-3, 0.9e-3, 0.9e-3);
    REQUIRE(iso.fa == 0.0);
    REQUIRE(iso.md == Catch::Approx(0.9e-3));
    REQUIRE(iso.ad == Catch::Approx(0.9e-3));
    REQUIRE(iso.rd == Catch::Approx(0.9e-3));

    DtiScalars stick = scalars_from_eigenvalues(1.0, 0.0, 0.0);
    REQUIRE(stick.fa == Catch::Approx(1.0).epsilon(1e-12));

    // high-precision evaluation of the closed form at (1.7, 0.3, 0.2)e-3
    DtiScalars ref = scalars_from_eigenvalues(1.7e-3, 0.3e-3, 0.2e-3);
    REQUIRE(ref.fa == Catch::Approx(0.835868109625401).epsilon(1e-12));
    REQUIRE(ref.md == Catch::Approx(0.733333333333333e-3).epsilon(1e-12));
    REQUIRE(ref.ad == Catch::Approx(1.7e-3).epsilon(1e-12));
    REQUIRE(ref.rd == Catch::Approx(0.25e-3).epsilon(1e-12));

    DtiScalars zero = scalars_from_eigenvalues(0.0, 0.0, 0.0);
    REQUIRE(zero.fa == 0.0);
    REQUIRE(zero.md == 0.0);
}

TEST_CASE("FA is invariant under eigenvalue permutation and scaling") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        double fa = scalars_from_eigenvalues(a, b, c).fa;
        REQUIRE(scalars_from_eigenvalues(b, c, a).fa == Catch::Approx(fa).epsilon(1e-12));
        REQUIRE(scalars_from_eigenvalues(3 * a, 3 * b, 3 * c).fa ==
                Catch::Approx(fa).epsilon(1e-12));
    }
}

TEST_CASE("fitted tensor is rotation equivariant") {
    GradientTable t = make_protocol({1000.0, 2000.0}, 20, 1);
    std::mt19937_64 rng(13);
    Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
    Eigen::Matrix3d r = test_helpers::random_rotation(rng);

    GradientTable rt = t;
    for (auto& e : rt.entries)
        if (e.b > rt.b0_threshold) e.dir = (r * e.dir).normalized();
    // S(R g) with tensor D equals S(g) with tensor R^T D R
    auto sig = forward_signals(d, rt);
    TensorFit fit = fit_tensor_wls(sig, t);
    Eigen::Matrix3d expected = r.transpose() * d * r;
    REQUIRE((fit.tensor() - expected).norm() / expected.norm() < 1e-8);
}

TEST_CASE("fit is invariant under global signal scaling") {
    GradientTable t = make_protocol({1000.0}, 15, 1);
    std::mt19937_64 rng(2);
    Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
    auto sig = forward_signals(d, t);
    TensorFit base = fit_tensor_wls(sig, t);
    std::vector<double> scaled = sig;
    for (double& v : scaled) v *= 37.5;
    TensorFit sf = fit_tensor_wls(scaled, t);
    for (int k = 0; k < 6; ++k)
        REQUIRE(std::abs(sf.d_elements[k] - base.d_elements[k]) < 1e-10);
}

TEST_CASE("non-positive signals are clamped and flagged") {
    GradientTable t = make_protocol({1000.0}, 12, 1);
    std::mt19937_64 rng(14);
    Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
    auto sig = forward_signals(d, t);
    sig[3] = -0.25;
    TensorFit fit = fit_tensor_wls(sig, t);
    REQUIRE(fit.signal_clamped);
}

TEST_CASE("weighted residual of the WLS solution does not exceed the OLS solution's") {
    GradientTable t = make_protocol({1000.0, 2500.0}, 16, 2);
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise(0.0, 0.02);

    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
        auto sig = forward_signals(d, t);
        for (double& v : sig) v = std::max(v + noise(rng), 1e-4);

        // reconstruct the design and both solutions
        const int n = t.size();
        Eigen::MatrixXd x(n, 7);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            double b = t.is_b0(i) ? 0.0 : t.entries[i].b;
            const Eigen::Vector3d& g = t.entries[i].dir;
            x.row(i) << 1.0, -b * g.x() * g.x(), -b * g.y() * g.y(), -b * g.z() * g.z(),
                -2 * b * g.x() * g.y(), -2 * b * g.x() * g.z(), -2 * b * g.y() * g.z();
            y(i) = std::log(sig[i]);
        }
        Eigen::VectorXd ols = x.colPivHouseholderQr().solve(y);
        Eigen::VectorXd w = (x * ols).array().exp().square();

        TensorFit fit = fit_tensor_wls(sig, t);
        Eigen::VectorXd wls(7);
        wls << fit.ln_s0, fit.d_elements[0], fit.d_elements[1], fit.d_elements[2],
            fit.d_elements[3], fit.d_elements[4], fit.d_elements[5];

        double r_wls = (w.array() * (y - x * wls).array().square()).sum();
        double r_ols = (w.array() * (y - x * ols).array().square()).sum();
        REQUIRE(r_wls <= r_ols * (1.0 + 1e-12));
    }
}

TEST_CASE("volume driver leaves out-of-mask voxels at zero") {
    GradientTable t = make_protocol({1000.0}, 10, 1);
    Volume4D dwi(3, 1, 1, t.size());
    std::mt19937_64 rng(6);
    Eigen::Matrix3d d = test_helpers::random_spd(rng, 0.2e-3, 2.0e-3);
    auto sig = forward_signals(d, t);
    const std::size_t nvox = dwi.voxels();
    for (int c = 0; c < t.size(); ++c)
        for (std::size_t v = 0; v < nvox; ++v) dwi.data[v + c * nvox] = sig[c];
    Volume4D mask(3, 1, 1, 1);
    mask.data = {1.0, 0.0, 1.0};

    DtiVolumeFit fit = fit_dti_volume(dwi, t, mask);
    REQUIRE(fit.scalars.get("fa").data[1] == 0.0);
    REQUIRE(fit.scalars.get("md").data[1] == 0.0);
    REQUIRE(fit.scalars.get("fa").data[0] > 0.0);
    REQUIRE(fit.scalars.get("fa").data[0] == fit.scalars.get("fa").data[2]);
}

TEST_CASE("volume driver output is independent of worker count") {
    GradientTable t = make_protocol({1000.0}, 12, 1);
    Volume4D dwi(4, 4, 4, t.size());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.4, 1.0);
    for (double& v : dwi.data) v = u(rng);
    Volume4D mask(4, 4, 4, 1);
    for (double& v : mask.data) v = 1.0;

    DtiVolumeFit a = fit_dti_volume(dwi, t, mask, 1);
    DtiVolumeFit b = fit_dti_volume(dwi, t, mask, 4);
    REQUIRE(a.scalars.get("fa").data == b.scalars.get("fa").data);
    REQUIRE(a.tensor.data == b.tensor.data);
}
