// Shared test utilities. The spherical oracle here is written independently
// of the library's quadrature table: it regenerates an icosphere by midpoint
// subdivision and weights vertices by their incident spherical-triangle
// areas.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace test_helpers {

struct IcoSphere {
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<int, 3>> faces;
    std::vector<double> weights; // per-vertex area weights
};

inline IcoSphere make_icosphere(int level) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1}};

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
            verts.push_back(m);
            int idx = static_cast<int>(verts.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        for (auto [a, b, c] : faces) {
            int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    IcoSphere out;
    out.verts = verts;
    out.faces = faces;
    out.weights.assign(verts.size(), 0.0);
    for (auto [a, b, c] : faces) {
        // l'Huilier spherical triangle area
        double ab = std::acos(std::clamp(verts[a].dot(verts[b]), -1.0, 1.0));
        double bc = std::acos(std::clamp(verts[b].dot(verts[c]), -1.0, 1.0));
        double ca = std::acos(std::clamp(verts[c].dot(verts[a]), -1.0, 1.0));
        double s = (ab + bc + ca) / 2.0;
        double t = std::tan(s / 2.0) * std::tan((s - ab) / 2.0) * std::tan((s - bc) / 2.0) *
                   std::tan((s - ca) / 2.0);
        double area = 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
        for (int v : {a, b, c}) out.weights[v] += area / 3.0;
    }
    return out;
}

// Watson-averaged three-compartment signal on an arbitrary point set; used as
// the dense-quadrature oracle against the library forward model.
inline double noddi_signal_oracle(const IcoSphere& sphere, double vic, double viso, double kappa,
                                  const Eigen::Vector3d& mu, double b, const Eigen::Vector3d& g,
                                  double d_par = 1.7e-3, double d_iso = 3.0e-3) {
    if (b <= 0.0) return 1.0;
    double d_perp = d_par * (1.0 - vic);
    double num_ic = 0.0, num_ec = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sphere.verts.size(); ++i) {
        double t = mu.dot(sphere.verts[i]);
        double w = sphere.weights[i] * std::exp(kappa * (t * t - 1.0));
        double gu = g.dot(sphere.verts[i]);
        num_ic += w * std::exp(-b * d_par * gu * gu);
        num_ec += w * std::exp(-b * (d_par - d_perp) * gu * gu);
        den += w;
    }
    double a_ic = num_ic / den;
    double a_ec = std::exp(-b * d_perp) * (num_ec / den);
    return (1.0 - viso) * (vic * a_ic + (1.0 - vic) * a_ec) + viso * std::exp(-b * d_iso);
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = {n(rng), n(rng), n(rng)};
    } while (v.norm() < 1e-6);
    return v.normalized();
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = n(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
    Eigen::Matrix3d q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

// Random symmetric positive definite tensor with eigenvalues in [lo, hi].
inline Eigen::Matrix3d random_spd(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::Vector3d ev(u(rng), u(rng), u(rng));
    Eigen::Matrix3d r = random_rotation(rng);
    return r * ev.asDiagonal() * r.transpose();
}

} // namespace test_helpers
