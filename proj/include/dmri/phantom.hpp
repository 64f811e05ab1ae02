#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/dti.hpp"
#include "dmri/gradients.hpp"
#include "dmri/watson_grid.hpp"

namespace dmri {

inline constexpr double kDefaultDPar = 1.7e-3; // mm^2/s, intra-neurite
inline constexpr double kDefaultDIso = 3.0e-3; // mm^2/s, free water

inline double kappa_to_od(double kappa) {
    require(kappa >= 0.0, Errc::invalid_argument, "kappa must be non-negative");
    if (kappa == 0.0) return 1.0;
    return (2.0 / M_PI) * std::atan(1.0 / kappa);
}

inline double od_to_kappa(double od) {
    require(od > 0.0 && od <= 1.0, Errc::invalid_argument, "od must be in (0,1]");
    if (od == 1.0) return 0.0;
    return 1.0 / std::tan(M_PI * od / 2.0);
}

namespace detail {

// splitmix64: tiny seeded stream with reproducible output on every platform
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in (0,1]
    double uniform() { return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54; }
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    std::pair<double, double> normal_pair() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 m(seed ^ (0x632be59bd9b4e019ull * (stream + 1)));
    return m.next();
}

// Watson weights on the fixed grid for orientation mu and concentration
// kappa. The exp is taken relative to its maximum so any kappa is safe; the
// normalisation constant cancels in the averages below.
inline std::array<double, kWatsonGridSize> watson_grid_weights(const Eigen::Vector3d& mu,
                                                               double kappa) {
    std::array<double, kWatsonGridSize> w;
    for (int i = 0; i < kWatsonGridSize; ++i) {
        const double* u = kWatsonGridDirs[i];
        double t = mu.x() * u[0] + mu.y() * u[1] + mu.z() * u[2];
        w[i] = kWatsonGridWeights[i] * std::exp(kappa * (t * t - 1.0));
    }
    return w;
}

// <exp(-coef * (g.u)^2)> over the Watson distribution given precomputed
// grid weights (self-normalising ratio).
inline double watson_average_exp(const std::array<double, kWatsonGridSize>& w, double coef,
                                 const Eigen::Vector3d& g) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < kWatsonGridSize; ++i) {
        const double* u = kWatsonGridDirs[i];
        double t = g.x() * u[0] + g.y() * u[1] + g.z() * u[2];
        num += w[i] * std::exp(-coef * t * t);
        den += w[i];
    }
    return num / den;
}

} // namespace detail

struct VoxelMicrostructure {
    Eigen::Matrix3d tensor = Eigen::Matrix3d::Identity() * 0.7e-3; // mm^2/s
    double vic = 0.5;
    double viso = 0.0;
    double kappa = 1.0;
    Eigen::Vector3d mu{0, 0, 1};
    double s0 = 1.0;

    void validate() const {
        require(vic >= 0.0 && vic <= 1.0, Errc::invalid_argument, "vic outside [0,1]");
        require(viso >= 0.0 && viso <= 1.0, Errc::invalid_argument, "viso outside [0,1]");
        require(kappa >= 0.0, Errc::invalid_argument, "kappa negative");
        require(std::abs(mu.norm() - 1.0) <= 1e-9, Errc::invalid_argument, "mu not unit length");
        require(s0 > 0.0, Errc::invalid_argument, "s0 must be positive");
        require((tensor - tensor.transpose()).norm() <= 1e-12 * (1.0 + tensor.norm()),
                Errc::invalid_argument, "tensor not symmetric");
        auto ev = eig_sym3_values(tensor);
        require(ev[2] >= -1e-15, Errc::invalid_argument, "tensor not positive semi-definite");
    }
};

// Gaussian forward model S = s0 * exp(-b g^T D g).
inline double dti_signal(const Eigen::Matrix3d& tensor, double b, const Eigen::Vector3d& g,
                         double s0) {
    require(b >= 0.0, Errc::invalid_argument, "negative b-value");
    require(tensor.allFinite(), Errc::invalid_argument, "non-finite tensor entries");
    if (b == 0.0) return s0;
    return s0 * std::exp(-b * g.dot(tensor * g));
}

// Three-compartment forward model, normalized (b=0 value is exactly 1):
//   A = (1 - viso) * (vic * A_ic + (1 - vic) * A_ec) + viso * exp(-b d_iso)
// A_ic is the Watson-averaged stick, A_ec the Watson-averaged zeppelin with
// tortuosity d_perp = d_par * (1 - vic).
inline std::vector<double> noddi_signal(const VoxelMicrostructure& micro,
                                        const GradientTable& protocol,
                                        double d_par = kDefaultDPar,
                                        double d_iso = kDefaultDIso) {
    require(protocol.size() > 0, Errc::invalid_argument, "empty protocol");
    micro.validate();

    const double d_perp = d_par * (1.0 - micro.vic);
    const auto w = detail::watson_grid_weights(micro.mu, micro.kappa);

    std::vector<double> out(protocol.size());
    for (int i = 0; i < protocol.size(); ++i) {
        if (protocol.is_b0(i)) {
            out[i] = 1.0;
            continue;
        }
        const double b = protocol.entries[i].b;
        const Eigen::Vector3d& g = protocol.entries[i].dir;
        double a_ic = detail::watson_average_exp(w, b * d_par, g);
        double a_ec = std::exp(-b * d_perp) * detail::watson_average_exp(w, b * (d_par - d_perp), g);
        double a_iso = std::exp(-b * d_iso);
        out[i] = (1.0 - micro.viso) * (micro.vic * a_ic + (1.0 - micro.vic) * a_ec) +
                 micro.viso * a_iso;
    }
    return out;
}

// Magnitude noise: m = sqrt((s + n1)^2 + n2^2), n1,n2 ~ N(0, sigma^2) from a
// deterministic seeded stream. sigma = 0 returns the input unchanged.
inline std::vector<double> add_rician_noise(std::span<const double> signal, double sigma,
                                            std::uint64_t seed) {
    require(sigma >= 0.0, Errc::invalid_argument, "negative sigma");
    std::vector<double> out(signal.begin(), signal.end());
    if (sigma == 0.0) return out;
    detail::SplitMix64 rng(detail::mix_seed(seed, 0));
    for (double& v : out) {
        auto [n1, n2] = rng.normal_pair();
        double a = v + sigma * n1;
        double b = sigma * n2;
        v = std::sqrt(a * a + b * b);
    }
    return out;
}

// Orthonormal completion of a unit vector: columns (e1, e2, mu).
inline Eigen::Matrix3d frame_from_axis(const Eigen::Vector3d& mu) {
    Eigen::Vector3d helper = std::abs(mu.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1)
                                                    : Eigen::Vector3d(1, 0, 0);
    Eigen::Vector3d e1 = mu.cross(helper).normalized();
    Eigen::Vector3d e2 = mu.cross(e1).normalized();
    Eigen::Matrix3d f;
    f.col(0) = e1;
    f.col(1) = e2;
    f.col(2) = mu;
    return f;
}

// Low-b apparent diffusion tensor of the three-compartment mixture: axially
// symmetric around mu with axial/radial diffusivities given by the Watson
// second moment t = <(u.mu)^2>.
inline Eigen::Matrix3d tensor_from_noddi(double vic, double viso, double kappa,
                                         const Eigen::Vector3d& mu,
                                         double d_par = kDefaultDPar,
                                         double d_iso = kDefaultDIso) {
    const auto w = detail::watson_grid_weights(Eigen::Vector3d(0, 0, 1), kappa);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < detail::kWatsonGridSize; ++i) {
        double uz = detail::kWatsonGridDirs[i][2];
        num += w[i] * uz * uz;
        den += w[i];
    }
    double t_par = num / den;
    double t_perp = (1.0 - t_par) / 2.0;
    double d_perp_ec = d_par * (1.0 - vic);
    auto apparent = [&](double t) {
        double d_ic = d_par * t;
        double d_ec = d_perp_ec + (d_par - d_perp_ec) * t;
        return (1.0 - viso) * (vic * d_ic + (1.0 - vic) * d_ec) + viso * d_iso;
    };
    Eigen::Vector3d diag(apparent(t_perp), apparent(t_perp), apparent(t_par));
    Eigen::Matrix3d f = frame_from_axis(mu);
    return f * diag.asDiagonal() * f.transpose();
}

struct PhantomRegion {
    enum class Shape { box, sphere };
    enum class Model { noddi, dti }; // which forward model produces the signal
    Shape shape = Shape::box;
    Model model = Model::noddi;
    // box: lo corner + size; sphere: center + radius (voxel units)
    std::array<double, 3> a{0, 0, 0};
    std::array<double, 3> b{0, 0, 0};
    double radius = 0.0;
    int tissue = 0; // 0 CSF, 1 GM, 2 WM
    VoxelMicrostructure micro;

    bool contains(int x, int y, int z) const {
        if (shape == Shape::box) {
            return x >= a[0] && x < a[0] + b[0] && y >= a[1] && y < a[1] + b[1] && z >= a[2] &&
                   z < a[2] + b[2];
        }
        double dx = x + 0.5 - a[0], dy = y + 0.5 - a[1], dz = z + 0.5 - a[2];
        return dx * dx + dy * dy + dz * dz <= radius * radius;
    }
};

inline constexpr double kBackgroundLabel = 3.0; // outside every region

struct PhantomSpec {
    int w = 16, h = 16, s = 16;
    std::array<double, 3> spacing{1.25, 1.25, 1.25};
    std::vector<PhantomRegion> regions; // painted in order, later wins
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        require(w > 0 && h > 0 && s > 0, Errc::bad_dimension, "phantom dims must be positive");
        require(!regions.empty(), Errc::invalid_argument, "phantom needs at least one region");
        require(noise_sigma >= 0.0, Errc::invalid_argument, "noise_sigma negative");
        for (const PhantomRegion& r : regions) {
            require(r.tissue >= 0 && r.tissue <= 2, Errc::invalid_argument,
                    "region tissue label outside {0,1,2}");
            r.micro.validate();
        }
    }
};

struct PhantomData {
    Volume4D signals;  // W x H x S x D, unnormalised (scaled by s0), noisy
    ParamMaps truth;   // fa, md, ad, rd, vic, viso, od from region parameters
    Volume4D labels;   // tissue class per voxel; kBackgroundLabel outside regions
    Volume4D mask;     // 1 inside any region
};

inline PhantomData build_phantom(const PhantomSpec& spec, const GradientTable& protocol) {
    spec.validate();
    protocol.validate();
    require(protocol.size() > 0, Errc::invalid_argument, "empty protocol");

    const int nr = static_cast<int>(spec.regions.size());
    std::vector<std::vector<double>> clean(nr);
    std::vector<DtiScalars> dsc(nr);
    std::vector<double> od(nr);
    for (int r = 0; r < nr; ++r) {
        const VoxelMicrostructure& m = spec.regions[r].micro;
        if (spec.regions[r].model == PhantomRegion::Model::dti) {
            clean[r].resize(protocol.size());
            for (int i = 0; i < protocol.size(); ++i) {
                double b = protocol.is_b0(i) ? 0.0 : protocol.entries[i].b;
                clean[r][i] = dti_signal(m.tensor, b, protocol.entries[i].dir, m.s0);
            }
        } else {
            clean[r] = noddi_signal(m, protocol);
            for (double& v : clean[r]) v *= m.s0;
        }
        auto ev = eig_sym3_values(m.tensor);
        dsc[r] = scalars_from_eigenvalues(std::max(ev[0], 0.0), std::max(ev[1], 0.0),
                                          std::max(ev[2], 0.0));
        od[r] = kappa_to_od(m.kappa);
    }

    PhantomData out;
    out.signals = Volume4D(spec.w, spec.h, spec.s, protocol.size(), Intent::signal);
    out.signals.spacing = spec.spacing;
    Volume4D map1(spec.w, spec.h, spec.s, 1, Intent::parameter);
    map1.spacing = spec.spacing;
    Volume4D fa = map1, md = map1, ad = map1, rd = map1, vic = map1, viso = map1, odm = map1;
    out.labels = map1;
    out.labels.intent = Intent::label;
    out.mask = map1;
    out.mask.intent = Intent::label;

    const std::size_t nvox = out.signals.voxels();
    for (int z = 0; z < spec.s; ++z)
        for (int y = 0; y < spec.h; ++y)
            for (int x = 0; x < spec.w; ++x) {
                std::size_t v = out.signals.index(x, y, z);
                int region = -1;
                for (int r = nr - 1; r >= 0; --r)
                    if (spec.regions[r].contains(x, y, z)) {
                        region = r;
                        break;
                    }
                if (region < 0) {
                    out.labels.data[v] = kBackgroundLabel;
                    continue;
                }
                out.labels.data[v] = spec.regions[region].tissue;
                out.mask.data[v] = 1.0;
                std::vector<double> sig =
                    add_rician_noise(clean[region], spec.noise_sigma,
                                     detail::mix_seed(spec.seed, v));
                for (int t = 0; t < protocol.size(); ++t)
                    out.signals.data[v + static_cast<std::size_t>(t) * nvox] = sig[t];
                fa.data[v] = dsc[region].fa;
                md.data[v] = dsc[region].md;
                ad.data[v] = dsc[region].ad;
                rd.data[v] = dsc[region].rd;
                vic.data[v] = spec.regions[region].micro.vic;
                viso.data[v] = spec.regions[region].micro.viso;
                odm.data[v] = od[region];
            }

    out.truth.set("fa", std::move(fa));
    out.truth.set("md", std::move(md));
    out.truth.set("ad", std::move(ad));
    out.truth.set("rd", std::move(rd));
    out.truth.set("vic", std::move(vic));
    out.truth.set("viso", std::move(viso));
    out.truth.set("od", std::move(odm));
    return out;
}

// T1w-like companion volume: per-tissue intensity plus Gaussian noise.
// class_means must be increasing (CSF dark, WM bright).
inline Volume4D synth_t1(const Volume4D& labels, std::array<double, 3> class_means, double sigma,
                         std::uint64_t seed) {
    require(class_means[0] < class_means[1] && class_means[1] < class_means[2],
            Errc::invalid_argument, "t1 class means must be strictly increasing");
    require(sigma >= 0.0, Errc::invalid_argument, "negative sigma");
    Volume4D t1(labels.w, labels.h, labels.s, 1, Intent::signal);
    t1.spacing = labels.spacing;
    for (std::size_t v = 0; v < labels.data.size(); ++v) {
        int lab = static_cast<int>(labels.data[v]);
        if (lab < 0 || lab > 2) continue; // background stays 0
        double noise = 0.0;
        if (sigma > 0.0) {
            detail::SplitMix64 rng(detail::mix_seed(seed, v));
            noise = sigma * rng.normal();
        }
        t1.data[v] = class_means[lab] + noise;
    }
    return t1;
}

} // namespace dmri
