#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/phantom.hpp" // SplitMix64

namespace dmri {

struct GaussianClassModel {
    std::array<double, 3> mean{};
    std::array<double, 3> var{};
    std::array<double, 3> pi{};
};

// Seeded 1D k-means with restarts; classes returned in ascending mean order.
inline GaussianClassModel kmeans_init(const std::vector<double>& values, std::uint64_t seed,
                                      int restarts = 10) {
    const int k = 3;
    const std::size_t n = values.size();
    require(n >= 3, Errc::degenerate_input, "need at least 3 samples");
    {
        std::set<double> distinct(values.begin(), values.end());
        require(distinct.size() >= 3, Errc::degenerate_input,
                "fewer than 3 distinct intensities inside the mask");
    }

    std::array<double, 3> best_centers{};
    double best_inertia = std::numeric_limits<double>::infinity();
    std::vector<int> assign(n);

    for (int r = 0; r < restarts; ++r) {
        detail::SplitMix64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(r)));
        // distance-weighted seeding: later centers are drawn with probability
        // proportional to the squared distance from the chosen ones, so small
        // but well-separated clusters still attract a center
        std::array<double, 3> centers{};
        centers[0] = values[rng.next() % n];
        int got = 1;
        std::vector<double> d2(n);
        while (got < k) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double best = std::abs(values[i] - centers[0]);
                for (int j = 1; j < got; ++j)
                    best = std::min(best, std::abs(values[i] - centers[j]));
                d2[i] = best * best;
                total += d2[i];
            }
            if (total <= 0.0) break;
            double pick = rng.uniform() * total;
            std::size_t chosen = n - 1;
            double run = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                run += d2[i];
                if (run >= pick) {
                    chosen = i;
                    break;
                }
            }
            centers[got++] = values[chosen];
        }
        if (got < k) { // fall back to the first distinct values
            std::set<double> distinct(values.begin(), values.end());
            auto it = distinct.begin();
            for (int j = 0; j < k; ++j, ++it) centers[j] = *it;
        }

        for (int iter = 0; iter < 100; ++iter) {
            bool changed = false;
            std::array<double, 3> sum{};
            std::array<std::size_t, 3> cnt{};
            for (std::size_t i = 0; i < n; ++i) {
                int bestj = 0;
                double bestd = std::abs(values[i] - centers[0]);
                for (int j = 1; j < k; ++j) {
                    double d = std::abs(values[i] - centers[j]);
                    if (d < bestd) {
                        bestd = d;
                        bestj = j;
                    }
                }
                if (iter == 0 || assign[i] != bestj) changed = true;
                assign[i] = bestj;
                sum[bestj] += values[i];
                ++cnt[bestj];
            }
            for (int j = 0; j < k; ++j)
                if (cnt[j] > 0) centers[j] = sum[j] / static_cast<double>(cnt[j]);
            if (!changed) break;
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = values[i] - centers[assign[i]];
            inertia += d * d;
        }
        if (inertia < best_inertia) {
            best_inertia = inertia;
            best_centers = centers;
        }
    }

    std::sort(best_centers.begin(), best_centers.end());

    GaussianClassModel model;
    model.mean = best_centers;
    std::array<double, 3> sq{};
    std::array<std::size_t, 3> cnt{};
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    double var_floor = std::max((hi - lo) * (hi - lo) * 1e-12, 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        int bestj = 0;
        double bestd = std::abs(values[i] - best_centers[0]);
        for (int j = 1; j < 3; ++j) {
            double d = std::abs(values[i] - best_centers[j]);
            if (d < bestd) {
                bestd = d;
                bestj = j;
            }
        }
        sq[bestj] += (values[i] - best_centers[bestj]) * (values[i] - best_centers[bestj]);
        ++cnt[bestj];
    }
    for (int j = 0; j < 3; ++j) {
        model.var[j] = cnt[j] > 0 ? std::max(sq[j] / static_cast<double>(cnt[j]), var_floor)
                                  : var_floor;
        model.pi[j] = static_cast<double>(cnt[j]) / static_cast<double>(n);
    }
    return model;
}

struct TissueProbMaps {
    Volume4D p_csf, p_gm, p_wm;
    std::array<double, 3> class_means{};
    Volume4D mask;

    const Volume4D& prob(int k) const { return k == 0 ? p_csf : (k == 1 ? p_gm : p_wm); }
};

struct HmrfOptions {
    double beta = 1.0;
    int max_iters = 100;
    double tol = 1e-4;
    std::uint64_t seed = 0;
    int kmeans_restarts = 10;
};

struct HmrfResult {
    TissueProbMaps maps;
    bool converged = false;
    int iterations = 0;
    std::vector<double> max_posterior_change; // per sweep
    std::vector<double> simplex_deviation;    // max |sum_k q - 1| per sweep
    GaussianClassModel model;
};

// Three-class Gaussian hidden Markov random field, solved by mean-field
// updates with a 6-neighbourhood Potts prior. A red-black sweep order makes
// in-place updates deterministic. beta = 0 reduces to plain Gaussian-mixture
// EM responsibilities.
inline HmrfResult segment_hmrf(const Volume4D& t1, const Volume4D& mask,
                               const HmrfOptions& opt = {}) {
    require(t1.d == 1, Errc::invalid_argument, "t1 must be single-channel");
    require(t1.same_grid(mask), Errc::bad_dimension, "mask grid differs from t1 grid");
    require(opt.beta >= 0.0, Errc::invalid_argument, "beta must be non-negative");

    const int w = t1.w, h = t1.h, s = t1.s;
    const std::size_t nvox = t1.voxels();
    std::vector<std::size_t> masked;
    for (std::size_t v = 0; v < nvox; ++v)
        if (mask.data[v] != 0.0) masked.push_back(v);
    require(!masked.empty(), Errc::degenerate_input, "mask is empty");

    std::vector<double> values(masked.size());
    for (std::size_t i = 0; i < masked.size(); ++i) values[i] = t1.data[masked[i]];
    GaussianClassModel model = kmeans_init(values, opt.seed, opt.kmeans_restarts);

    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    const double var_floor = std::max((hi - lo) * (hi - lo) * 1e-12, 1e-300);

    // posterior per masked voxel; initialised from the Gaussian model alone
    std::vector<std::array<double, 3>> q(nvox, {0.0, 0.0, 0.0});
    std::vector<char> in_mask(nvox, 0);
    for (std::size_t v : masked) in_mask[v] = 1;

    auto log_gauss = [](double x, double mean, double var) {
        return -0.5 * ((x - mean) * (x - mean) / var + std::log(2.0 * M_PI * var));
    };

    auto posterior_at = [&](std::size_t v, std::array<double, 3>& out) {
        int x = static_cast<int>(v % w);
        int y = static_cast<int>((v / w) % h);
        int z = static_cast<int>(v / (static_cast<std::size_t>(w) * h));
        std::array<double, 3> logp;
        for (int k = 0; k < 3; ++k) {
            double lp = std::log(std::max(model.pi[k], 1e-300)) +
                        log_gauss(t1.data[v], model.mean[k], model.var[k]);
            if (opt.beta > 0.0) {
                double agree = 0.0;
                const int dx[6] = {-1, 1, 0, 0, 0, 0};
                const int dy[6] = {0, 0, -1, 1, 0, 0};
                const int dz[6] = {0, 0, 0, 0, -1, 1};
                for (int nb = 0; nb < 6; ++nb) {
                    int nx = x + dx[nb], ny = y + dy[nb], nz = z + dz[nb];
                    if (nx < 0 || ny < 0 || nz < 0 || nx >= w || ny >= h || nz >= s) continue;
                    std::size_t nv = (static_cast<std::size_t>(nz) * h + ny) * w + nx;
                    if (in_mask[nv]) agree += q[nv][k];
                }
                lp += opt.beta * agree;
            }
            logp[k] = lp;
        }
        double mx = std::max({logp[0], logp[1], logp[2]});
        double denom = 0.0;
        for (int k = 0; k < 3; ++k) {
            out[k] = std::exp(logp[k] - mx);
            denom += out[k];
        }
        for (int k = 0; k < 3; ++k) out[k] /= denom;
    };

    // initial responsibilities with no field term
    {
        for (std::size_t v : masked) {
            std::array<double, 3> logp;
            for (int k = 0; k < 3; ++k)
                logp[k] = std::log(std::max(model.pi[k], 1e-300)) +
                          log_gauss(t1.data[v], model.mean[k], model.var[k]);
            double mx = std::max({logp[0], logp[1], logp[2]});
            double denom = 0.0;
            for (int k = 0; k < 3; ++k) {
                q[v][k] = std::exp(logp[k] - mx);
                denom += q[v][k];
            }
            for (int k = 0; k < 3; ++k) q[v][k] /= denom;
        }
    }

    HmrfResult result;
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        double max_change = 0.0;
        for (int color = 0; color < 2; ++color) {
            for (std::size_t v : masked) {
                int x = static_cast<int>(v % w);
                int y = static_cast<int>((v / w) % h);
                int z = static_cast<int>(v / (static_cast<std::size_t>(w) * h));
                if ((x + y + z) % 2 != color) continue;
                std::array<double, 3> nq;
                posterior_at(v, nq);
                for (int k = 0; k < 3; ++k)
                    max_change = std::max(max_change, std::abs(nq[k] - q[v][k]));
                q[v] = nq;
            }
        }

        double simplex_dev = 0.0;
        for (std::size_t v : masked)
            simplex_dev = std::max(simplex_dev, std::abs(q[v][0] + q[v][1] + q[v][2] - 1.0));
        result.simplex_deviation.push_back(simplex_dev);
        result.max_posterior_change.push_back(max_change);

        // M-step: re-estimate the Gaussian class model from the posteriors
        std::array<double, 3> wsum{}, xsum{};
        for (std::size_t v : masked)
            for (int k = 0; k < 3; ++k) {
                wsum[k] += q[v][k];
                xsum[k] += q[v][k] * t1.data[v];
            }
        for (int k = 0; k < 3; ++k)
            if (wsum[k] > 0.0) model.mean[k] = xsum[k] / wsum[k];
        std::array<double, 3> vsum{};
        for (std::size_t v : masked)
            for (int k = 0; k < 3; ++k) {
                double d = t1.data[v] - model.mean[k];
                vsum[k] += q[v][k] * d * d;
            }
        for (int k = 0; k < 3; ++k) {
            if (wsum[k] > 0.0) model.var[k] = std::max(vsum[k] / wsum[k], var_floor);
            model.pi[k] = wsum[k] / static_cast<double>(masked.size());
        }

        result.iterations = iter + 1;
        if (max_change < opt.tol) {
            result.converged = true;
            break;
        }
    }

    // relabel classes by ascending mean intensity: CSF < GM < WM
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return model.mean[a] < model.mean[b]; });

    Volume4D p0(w, h, s, 1, Intent::probability);
    p0.spacing = t1.spacing;
    Volume4D p1 = p0, p2 = p0;
    for (std::size_t v : masked) {
        p0.data[v] = q[v][order[0]];
        p1.data[v] = q[v][order[1]];
        p2.data[v] = q[v][order[2]];
    }
    result.maps.p_csf = std::move(p0);
    result.maps.p_gm = std::move(p1);
    result.maps.p_wm = std::move(p2);
    result.maps.class_means = {model.mean[order[0]], model.mean[order[1]], model.mean[order[2]]};
    result.maps.mask = mask;
    GaussianClassModel sorted_model;
    for (int k = 0; k < 3; ++k) {
        sorted_model.mean[k] = model.mean[order[k]];
        sorted_model.var[k] = model.var[order[k]];
        sorted_model.pi[k] = model.pi[order[k]];
    }
    result.model = sorted_model;
    return result;
}

} // namespace dmri
