#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/gradients.hpp"
#include "dmri/parallel.hpp"

namespace dmri {

// Closed-form eigenvalues of a symmetric 3x3 matrix (trigonometric solution),
// descending order.
inline std::array<double, 3> eig_sym3_values(const Eigen::Matrix3d& a) {
    double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    double q = a.trace() / 3.0;
    if (p1 == 0.0) {
        std::array<double, 3> ev{a(0, 0), a(1, 1), a(2, 2)};
        std::sort(ev.begin(), ev.end(), std::greater<>());
        return ev;
    }
    double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
    double r = b.determinant() / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e1 = q + 2.0 * p * std::cos(phi);
    double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    double e2 = 3.0 * q - e1 - e3;
    return {e1, e2, e3};
}

// Unit eigenvector for the largest eigenvalue. For a symmetric matrix the
// columns of the product (A - l2 I)(A - l3 I) span the l1 eigenspace; the
// largest column is a stable representative. Sign fixed so the component of
// largest magnitude is positive.
inline Eigen::Vector3d eig_sym3_principal(const Eigen::Matrix3d& a,
                                          const std::array<double, 3>& ev) {
    Eigen::Matrix3d m = (a - ev[1] * Eigen::Matrix3d::Identity()) *
                        (a - ev[2] * Eigen::Matrix3d::Identity());
    int best = 0;
    double bn = -1.0;
    for (int c = 0; c < 3; ++c) {
        double n = m.col(c).norm();
        if (n > bn) {
            bn = n;
            best = c;
        }
    }
    Eigen::Vector3d v;
    double scale = std::abs(a(0, 0)) + std::abs(a(1, 1)) + std::abs(a(2, 2));
    if (bn <= scale * scale * 1e-14) {
        v = Eigen::Vector3d(0, 0, 1); // (near-)isotropic: any direction serves
    } else {
        v = m.col(best).normalized();
    }
    int imax = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0) v = -v;
    return v;
}

struct TensorFit {
    // Dxx, Dyy, Dzz, Dxy, Dxz, Dyz in mm^2/s
    std::array<double, 6> d_elements{};
    double ln_s0 = 0.0;
    std::array<double, 3> eigenvalues{}; // descending, clamped to >= 0
    Eigen::Vector3d principal_dir{0, 0, 1};
    bool negative_eigenvalue_clamped = false;
    bool signal_clamped = false;

    Eigen::Matrix3d tensor() const {
        Eigen::Matrix3d t;
        t << d_elements[0], d_elements[3], d_elements[4],
             d_elements[3], d_elements[1], d_elements[5],
             d_elements[4], d_elements[5], d_elements[2];
        return t;
    }
};

struct DtiScalars {
    double fa = 0.0, md = 0.0, ad = 0.0, rd = 0.0;
};

inline DtiScalars scalars_from_eigenvalues(double l1, double l2, double l3) {
    DtiScalars out;
    out.md = (l1 + l2 + l3) / 3.0;
    out.ad = l1;
    out.rd = (l2 + l3) / 2.0;
    if (l1 == l2 && l2 == l3) return out; // exact isotropy: fa stays 0
    double ss = l1 * l1 + l2 * l2 + l3 * l3;
    if (ss > 0.0) {
        double num = (l1 - out.md) * (l1 - out.md) + (l2 - out.md) * (l2 - out.md) +
                     (l3 - out.md) * (l3 - out.md);
        out.fa = std::sqrt(1.5 * num / ss);
        out.fa = std::min(out.fa, 1.0);
    }
    return out;
}

inline DtiScalars dti_scalars(const TensorFit& fit) {
    return scalars_from_eigenvalues(fit.eigenvalues[0], fit.eigenvalues[1], fit.eigenvalues[2]);
}

// Log-linear tensor fit: ordinary least squares on ln S followed by one
// reweighting pass with weights equal to the squared predicted signals.
inline TensorFit fit_tensor_wls(std::span<const double> signals, const GradientTable& table) {
    const int n = table.size();
    require(static_cast<int>(signals.size()) == n, Errc::length_mismatch,
            "signal count does not match gradient table length");
    require(n >= 7, Errc::invalid_argument, "tensor fit needs at least 7 measurements");
    require(!table.b0_indices().empty(), Errc::invalid_argument,
            "tensor fit needs at least one b=0 measurement");

    TensorFit fit;

    double smallest_pos = std::numeric_limits<double>::infinity();
    for (double v : signals)
        if (v > 0.0) smallest_pos = std::min(smallest_pos, v);
    require(std::isfinite(smallest_pos), Errc::nonpositive_signal,
            "no positive signal in voxel");
    const double floor = smallest_pos * 1e-3;

    Eigen::MatrixXd x(n, 7);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const GradientEntry& e = table.entries[i];
        double b = table.is_b0(i) ? 0.0 : e.b;
        const Eigen::Vector3d& g = e.dir;
        x(i, 0) = 1.0;
        x(i, 1) = -b * g.x() * g.x();
        x(i, 2) = -b * g.y() * g.y();
        x(i, 3) = -b * g.z() * g.z();
        x(i, 4) = -2.0 * b * g.x() * g.y();
        x(i, 5) = -2.0 * b * g.x() * g.z();
        x(i, 6) = -2.0 * b * g.y() * g.z();
        double s = signals[i];
        if (s <= 0.0) {
            s = floor;
            fit.signal_clamped = true;
        }
        y(i) = std::log(s);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    require(qr.rank() == 7, Errc::rank_deficient,
            "gradient directions do not span the tensor space (collinear or coplanar set)");
    Eigen::VectorXd beta = qr.solve(y);

    // one WLS pass, weights = predicted signal squared
    Eigen::VectorXd w = (x * beta).array().exp().square();
    Eigen::MatrixXd xw = w.array().sqrt().matrix().asDiagonal() * x;
    Eigen::VectorXd yw = w.array().sqrt().matrix().asDiagonal() * y;
    beta = xw.colPivHouseholderQr().solve(yw);

    fit.ln_s0 = beta(0);
    fit.d_elements = {beta(1), beta(2), beta(3), beta(4), beta(5), beta(6)};

    Eigen::Matrix3d d = fit.tensor();
    std::array<double, 3> ev = eig_sym3_values(d);
    fit.principal_dir = eig_sym3_principal(d, ev);
    for (double& l : ev)
        if (l < 0.0) {
            l = 0.0;
            fit.negative_eigenvalue_clamped = true;
        }
    fit.eigenvalues = ev;
    return fit;
}

struct DtiVolumeFit {
    ParamMaps scalars;      // fa, md, ad, rd
    Volume4D tensor;        // D = 6, element order as TensorFit::d_elements
    Volume4D principal_dir; // D = 3
    Volume4D flags;         // 0 ok, 1 = clamping occurred
};

inline DtiVolumeFit fit_dti_volume(const Volume4D& dwi, const GradientTable& table,
                                   const Volume4D& mask, int workers = 1) {
    require(dwi.d == table.size(), Errc::length_mismatch,
            "volume has " + std::to_string(dwi.d) + " volumes but table has " +
                std::to_string(table.size()) + " entries");
    require(dwi.same_grid(mask), Errc::bad_dimension, "mask grid differs from data grid");

    DtiVolumeFit out;
    Volume4D fa(dwi.w, dwi.h, dwi.s, 1, Intent::parameter);
    fa.spacing = dwi.spacing;
    Volume4D md = fa, ad = fa, rd = fa, flags = fa;
    Volume4D tensor(dwi.w, dwi.h, dwi.s, 6, Intent::parameter);
    tensor.spacing = dwi.spacing;
    Volume4D dirs(dwi.w, dwi.h, dwi.s, 3, Intent::parameter);
    dirs.spacing = dwi.spacing;

    const std::size_t nvox = dwi.voxels();
    parallel_for(nvox, workers, [&](std::size_t v) {
        if (mask.data[v] == 0.0) return;
        std::vector<double> sig(dwi.d);
        for (int t = 0; t < dwi.d; ++t) sig[t] = dwi.data[v + t * nvox];
        TensorFit fit = fit_tensor_wls(sig, table);
        DtiScalars sc = dti_scalars(fit);
        fa.data[v] = sc.fa;
        md.data[v] = sc.md;
        ad.data[v] = sc.ad;
        rd.data[v] = sc.rd;
        for (int k = 0; k < 6; ++k) tensor.data[v + k * nvox] = fit.d_elements[k];
        for (int k = 0; k < 3; ++k) dirs.data[v + k * nvox] = fit.principal_dir[k];
        flags.data[v] = (fit.negative_eigenvalue_clamped || fit.signal_clamped) ? 1.0 : 0.0;
    });

    out.scalars.set("fa", std::move(fa));
    out.scalars.set("md", std::move(md));
    out.scalars.set("ad", std::move(ad));
    out.scalars.set("rd", std::move(rd));
    out.tensor = std::move(tensor);
    out.principal_dir = std::move(dirs);
    out.flags = std::move(flags);
    return out;
}

} // namespace dmri
