#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/dti.hpp"
#include "dmri/gradients.hpp"
#include "dmri/nnls.hpp"
#include "dmri/parallel.hpp"
#include "dmri/phantom.hpp"

namespace dmri {

inline std::vector<double> default_vic_levels() {
    std::vector<double> v;
    for (int i = 1; i <= 9; ++i) v.push_back(i * 0.1);
    return v;
}

// kappa levels spaced so the corresponding OD values cover the map's
// perceptual range
inline std::vector<double> default_kappa_levels() {
    std::vector<double> k;
    for (double od : {0.04, 0.08, 0.16, 0.32, 0.5, 0.7, 0.9}) k.push_back(od_to_kappa(od));
    return k;
}

// Precomputed kernel dictionary: one column per coupled (vic, kappa) pair
// evaluated at viso = 0, plus a trailing isotropic ball column. Columns are
// forward-model evaluations on the same quadrature grid as noddi_signal, so
// dictionary and simulator agree by construction.
//
// Orientation handling: the measurement kernels exp(-b d (g.u)^2) do not
// depend on mu, so they are tabulated once per (diffusivity, measurement,
// grid point); re-aligning the atoms to a voxel orientation only rebuilds the
// 321 Watson weights and takes a few matrix-vector products.
struct NoddiDictionary {
    struct Atom {
        double vic, kappa;
    };
    std::vector<Atom> atoms;     // coupled atoms, vic-major; the ball is implicit last
    Eigen::MatrixXd atom_matrix; // measurements x (atoms + 1), canonical mu = +z
    GradientTable protocol;
    double d_par = kDefaultDPar;
    double d_iso = kDefaultDIso;
    std::vector<double> vic_levels;
    std::vector<double> kappa_levels;

    // fast tables (see above): stick kernel + one zeppelin kernel per vic level
    Eigen::MatrixXd stick_kernel;               // m x grid
    std::vector<Eigen::MatrixXd> zeppelin_kernel; // per vic level, m x grid
    Eigen::MatrixXd zeppelin_prefactor;         // m x vic levels: exp(-b d_perp)
    Eigen::VectorXd ball_column;

    int n_atoms() const { return static_cast<int>(atoms.size()) + 1; }

    // Evaluate the coupled atoms at an arbitrary orientation; the ball column
    // is orientation-free.
    Eigen::MatrixXd atoms_for_mu(const Eigen::Vector3d& mu) const {
        const int m = protocol.size();
        const int nv = static_cast<int>(vic_levels.size());
        const int nk = static_cast<int>(kappa_levels.size());
        Eigen::MatrixXd out(m, n_atoms());
        for (int l = 0; l < nk; ++l) {
            auto w = detail::watson_grid_weights(mu, kappa_levels[l]);
            Eigen::Map<const Eigen::VectorXd> wv(w.data(), w.size());
            const double denom = wv.sum();
            Eigen::VectorXd stick = stick_kernel * wv / denom;
            for (int j = 0; j < nv; ++j) {
                Eigen::VectorXd zepp =
                    zeppelin_prefactor.col(j).cwiseProduct(zeppelin_kernel[j] * wv / denom);
                out.col(j * nk + l) = vic_levels[j] * stick + (1.0 - vic_levels[j]) * zepp;
            }
        }
        out.col(out.cols() - 1) = ball_column;
        return out;
    }
};

inline NoddiDictionary build_dictionary(const GradientTable& protocol,
                                        std::vector<double> vic_levels = default_vic_levels(),
                                        std::vector<double> kappa_levels = default_kappa_levels(),
                                        double d_par = kDefaultDPar,
                                        double d_iso = kDefaultDIso) {
    require(protocol.size() > 0 && !protocol.shells().empty(), Errc::invalid_argument,
            "protocol needs at least one shell");
    require(!vic_levels.empty() && !kappa_levels.empty(), Errc::invalid_argument,
            "empty dictionary grid");
    for (double v : vic_levels)
        require(v > 0.0 && v <= 1.0, Errc::invalid_argument, "vic level outside (0,1]");
    for (double k : kappa_levels)
        require(k >= 0.0, Errc::invalid_argument, "negative kappa level");

    NoddiDictionary dict;
    dict.protocol = protocol;
    dict.d_par = d_par;
    dict.d_iso = d_iso;
    dict.vic_levels = vic_levels;
    dict.kappa_levels = kappa_levels;
    for (double vic : vic_levels)
        for (double kappa : kappa_levels) dict.atoms.push_back({vic, kappa});

    const int m = protocol.size();
    const int ng = detail::kWatsonGridSize;
    const int nv = static_cast<int>(vic_levels.size());

    auto kernel_for = [&](double d) {
        Eigen::MatrixXd k(m, ng);
        for (int i = 0; i < m; ++i) {
            double b = protocol.is_b0(i) ? 0.0 : protocol.entries[i].b;
            const Eigen::Vector3d& g = protocol.entries[i].dir;
            for (int p = 0; p < ng; ++p) {
                const double* u = detail::kWatsonGridDirs[p];
                double t = g.x() * u[0] + g.y() * u[1] + g.z() * u[2];
                k(i, p) = std::exp(-b * d * t * t);
            }
        }
        return k;
    };

    dict.stick_kernel = kernel_for(d_par);
    dict.zeppelin_prefactor.resize(m, nv);
    for (int j = 0; j < nv; ++j) {
        double d_perp = d_par * (1.0 - vic_levels[j]);
        dict.zeppelin_kernel.push_back(kernel_for(d_par - d_perp));
        for (int i = 0; i < m; ++i) {
            double b = protocol.is_b0(i) ? 0.0 : protocol.entries[i].b;
            dict.zeppelin_prefactor(i, j) = std::exp(-b * d_perp);
        }
    }
    dict.ball_column.resize(m);
    for (int i = 0; i < m; ++i) {
        double b = protocol.is_b0(i) ? 0.0 : protocol.entries[i].b;
        dict.ball_column(i) = std::exp(-b * d_iso);
    }

    dict.atom_matrix = dict.atoms_for_mu(Eigen::Vector3d(0, 0, 1));
    return dict;
}

struct NoddiParams {
    double vic = 0.0, viso = 0.0, od = 0.0;
    bool degenerate_vic = false; // no coupled weight survived the fit
};

namespace detail {

inline NoddiParams params_from_weights(const NoddiDictionary& dict, const Eigen::VectorXd& w) {
    const int nc = static_cast<int>(dict.atoms.size());
    double w_iso = w(nc);
    double w_coupled = w.head(nc).sum();
    double total = w_iso + w_coupled;
    require(total > 0.0, Errc::degenerate_input, "zero total dictionary weight");

    NoddiParams out;
    out.viso = std::clamp(w_iso / total, 0.0, 1.0);
    // the ridge spreads a sliver of weight across correlated atoms even for a
    // pure ball signal; below 1% coupled weight the vic/od averages carry no
    // information and the voxel is flagged degenerate
    if (w_coupled <= 0.01 * total) {
        out.degenerate_vic = true;
        return out; // vic = od = 0 by convention
    }
    double vic_acc = 0.0, kappa_acc = 0.0;
    for (int j = 0; j < nc; ++j) {
        vic_acc += w(j) * dict.atoms[j].vic;
        kappa_acc += w(j) * dict.atoms[j].kappa;
    }
    out.vic = std::clamp(vic_acc / w_coupled, 0.0, 1.0);
    out.od = std::clamp(kappa_to_od(kappa_acc / w_coupled), 0.0, 1.0);
    return out;
}

} // namespace detail

// AMICO-style voxel fit: NNLS weights over orientation-aligned atoms, then
// volume fractions and the effective kappa as weight averages.
inline NoddiParams fit_noddi_voxel(std::span<const double> normalized_signal,
                                   const NoddiDictionary& dict, const Eigen::Vector3d& mu,
                                   double ridge) {
    require(static_cast<int>(normalized_signal.size()) == dict.protocol.size(),
            Errc::length_mismatch, "signal length does not match dictionary protocol");
    Eigen::VectorXd y(normalized_signal.size());
    for (std::size_t i = 0; i < normalized_signal.size(); ++i) y(i) = normalized_signal[i];
    require(y.cwiseAbs().maxCoeff() > 0.0, Errc::degenerate_input,
            "all-zero signal has no dictionary representation");

    Eigen::MatrixXd atoms = dict.atoms_for_mu(mu.normalized());
    Eigen::VectorXd w = nnls_solve(atoms, y, ridge);
    return detail::params_from_weights(dict, w);
}

struct NoddiFitOptions {
    double ridge_rel = 1e-5; // ridge = ridge_rel * ||y||^2
    double mu_quantization_deg = 1.0;
    int workers = 1;
};

namespace detail {

// Canonical cache key for a direction: fold to the upper hemisphere and
// quantize spherical coordinates. Equal keys map to identical dictionaries,
// so cache population order cannot change results.
inline std::pair<int, int> quantize_mu(const Eigen::Vector3d& mu, double step_deg) {
    Eigen::Vector3d u = mu;
    if (u.z() < 0 || (u.z() == 0 && (u.y() < 0 || (u.y() == 0 && u.x() < 0)))) u = -u;
    double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
    double phi = std::atan2(u.y(), u.x());
    double step = step_deg * M_PI / 180.0;
    return {static_cast<int>(std::lround(theta / step)),
            static_cast<int>(std::lround(phi / step))};
}

inline Eigen::Vector3d dequantize_mu(std::pair<int, int> key, double step_deg) {
    double step = step_deg * M_PI / 180.0;
    double theta = key.first * step;
    double phi = key.second * step;
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

} // namespace detail

// Volume driver. Signals are divided by the voxel's mean b0 before fitting;
// the orientation comes from a tensor fit of the same data.
inline ParamMaps fit_noddi_volume(const Volume4D& dwi, const GradientTable& table,
                                  const Volume4D& mask, const Volume4D& principal_dir,
                                  const NoddiDictionary& dict,
                                  const NoddiFitOptions& opt = {}) {
    require(dwi.d == table.size(), Errc::length_mismatch, "volume/table length mismatch");
    require(dwi.same_grid(mask) && dwi.same_grid(principal_dir), Errc::bad_dimension,
            "mask or direction grid differs from data grid");
    require(table.size() == dict.protocol.size(), Errc::length_mismatch,
            "dictionary built for a different protocol length");

    std::vector<int> b0s = table.b0_indices();
    require(!b0s.empty(), Errc::invalid_argument, "protocol has no b0 entry");

    Volume4D vic(dwi.w, dwi.h, dwi.s, 1, Intent::parameter);
    vic.spacing = dwi.spacing;
    Volume4D viso = vic, od = vic;

    std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
    std::mutex cache_mutex;
    const std::size_t nvox = dwi.voxels();

    parallel_for(nvox, opt.workers, [&](std::size_t v) {
        if (mask.data[v] == 0.0) return;
        double b0 = 0.0;
        for (int i : b0s) b0 += dwi.data[v + static_cast<std::size_t>(i) * nvox];
        b0 /= static_cast<double>(b0s.size());
        if (b0 <= 0.0) return; // nothing to normalise against

        Eigen::VectorXd y(table.size());
        for (int t = 0; t < table.size(); ++t)
            y(t) = dwi.data[v + static_cast<std::size_t>(t) * nvox] / b0;

        Eigen::Vector3d mu(principal_dir.data[v], principal_dir.data[v + nvox],
                           principal_dir.data[v + 2 * nvox]);
        if (mu.norm() < 1e-9) mu = Eigen::Vector3d(0, 0, 1);
        auto key = detail::quantize_mu(mu, opt.mu_quantization_deg);

        const Eigen::MatrixXd* atoms = nullptr;
        {
            std::lock_guard<std::mutex> lock(cache_mutex);
            auto it = cache.find(key);
            if (it != cache.end()) atoms = &it->second;
        }
        if (!atoms) {
            Eigen::MatrixXd m =
                dict.atoms_for_mu(detail::dequantize_mu(key, opt.mu_quantization_deg));
            std::lock_guard<std::mutex> lock(cache_mutex);
            atoms = &cache.emplace(key, std::move(m)).first->second;
        }

        double ridge = opt.ridge_rel * y.squaredNorm();
        Eigen::VectorXd w = nnls_solve(*atoms, y, ridge);
        if (w.sum() <= 0.0) return;
        NoddiParams p = detail::params_from_weights(dict, w);
        vic.data[v] = p.vic;
        viso.data[v] = p.viso;
        od.data[v] = p.od;
    });

    ParamMaps out;
    out.set("vic", std::move(vic));
    out.set("viso", std::move(viso));
    out.set("od", std::move(od));
    return out;
}

// Binary dictionary dump for debugging: magic, version, dims, then the atom
// matrix as little-endian f64, column-major.
inline void write_dictionary(const NoddiDictionary& dict, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path);
    out.write("NDIC", 4);
    std::uint32_t version = 1, rows = static_cast<std::uint32_t>(dict.atom_matrix.rows()),
                  cols = static_cast<std::uint32_t>(dict.atom_matrix.cols());
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&rows), 4);
    out.write(reinterpret_cast<const char*>(&cols), 4);
    out.write(reinterpret_cast<const char*>(dict.atom_matrix.data()),
              static_cast<std::streamsize>(sizeof(double) * rows * cols));
    require(static_cast<bool>(out), Errc::io_failure, "short write to " + path);
}

} // namespace dmri
