#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "dmri/core.hpp"

namespace dmri {

// Peak signal-to-noise ratio over the mask, in dB. The peak is the masked
// dynamic range of the reference map; identical maps return +infinity.
inline double psnr(const Volume4D& gt, const Volume4D& pred, const Volume4D& mask) {
    require(gt.same_grid(pred) && gt.same_grid(mask) && gt.d == pred.d && gt.d == 1,
            Errc::bad_dimension, "psnr expects single-channel volumes on one grid");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double mse = 0.0;
    std::size_t n = 0;
    for (std::size_t v = 0; v < gt.data.size(); ++v) {
        if (mask.data[v] == 0.0) continue;
        lo = std::min(lo, gt.data[v]);
        hi = std::max(hi, gt.data[v]);
        double d = gt.data[v] - pred.data[v];
        mse += d * d;
        ++n;
    }
    require(n > 0, Errc::degenerate_input, "mask is empty");
    double range = hi - lo;
    require(range > 0.0, Errc::degenerate_input, "reference map has zero dynamic range");
    mse /= static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(range * range / mse);
}

namespace detail {

// per-window SSIM from local moments
inline double local_ssim(double mean_a, double mean_b, double var_a, double var_b, double cov,
                         double c1, double c2) {
    return ((2.0 * mean_a * mean_b + c1) * (2.0 * cov + c2)) /
           ((mean_a * mean_a + mean_b * mean_b + c1) * (var_a + var_b + c2));
}

} // namespace detail

// Mean local SSIM over masked voxels. Uniform cubic window, cropped at the
// volume boundary; population moments; C1 = (0.01 L)^2, C2 = (0.03 L)^2 with
// L the masked dynamic range of the reference.
inline double ssim(const Volume4D& gt, const Volume4D& pred, const Volume4D& mask,
                   int window = 7) {
    require(window >= 3 && window % 2 == 1, Errc::invalid_argument,
            "window must be odd and at least 3");
    require(gt.same_grid(pred) && gt.same_grid(mask) && gt.d == 1 && pred.d == 1,
            Errc::bad_dimension, "ssim expects single-channel volumes on one grid");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t n_masked = 0;
    for (std::size_t v = 0; v < gt.data.size(); ++v) {
        if (mask.data[v] == 0.0) continue;
        lo = std::min(lo, gt.data[v]);
        hi = std::max(hi, gt.data[v]);
        ++n_masked;
    }
    require(n_masked > 0, Errc::degenerate_input, "mask is empty");
    double range = hi - lo;
    require(range > 0.0, Errc::degenerate_input, "reference map has zero dynamic range");
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);
    const int r = window / 2;

    double acc = 0.0;
    for (int z = 0; z < gt.s; ++z)
        for (int y = 0; y < gt.h; ++y)
            for (int x = 0; x < gt.w; ++x) {
                if (mask.at(x, y, z) == 0.0) continue;
                int x0 = std::max(0, x - r), x1 = std::min(gt.w - 1, x + r);
                int y0 = std::max(0, y - r), y1 = std::min(gt.h - 1, y + r);
                int z0 = std::max(0, z - r), z1 = std::min(gt.s - 1, z + r);
                double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
                int cnt = 0;
                for (int zz = z0; zz <= z1; ++zz)
                    for (int yy = y0; yy <= y1; ++yy)
                        for (int xx = x0; xx <= x1; ++xx) {
                            double a = gt.at(xx, yy, zz);
                            double b = pred.at(xx, yy, zz);
                            sa += a;
                            sb += b;
                            saa += a * a;
                            sbb += b * b;
                            sab += a * b;
                            ++cnt;
                        }
                double inv = 1.0 / cnt;
                double ma = sa * inv, mb = sb * inv;
                double va = std::max(saa * inv - ma * ma, 0.0);
                double vb = std::max(sbb * inv - mb * mb, 0.0);
                double cab = sab * inv - ma * mb;
                acc += detail::local_ssim(ma, mb, va, vb, cab, c1, c2);
            }
    return acc / static_cast<double>(n_masked);
}

struct MetricsReport {
    std::string method;
    std::string protocol;
    std::vector<std::string> params;
    std::vector<double> psnr_values;
    std::vector<double> ssim_values;
    double psnr_average = 0.0;
    double ssim_average = 0.0;
    // standard deviation across evaluation units; empty unless aggregated
    std::vector<double> psnr_std;
    std::vector<double> ssim_std;
    double psnr_average_std = 0.0;
    double ssim_average_std = 0.0;
    int n_units = 1;
};

inline MetricsReport evaluate(const ParamMaps& gt_maps, const ParamMaps& pred_maps,
                              const Volume4D& mask, const std::vector<std::string>& parameters,
                              int ssim_window = 7) {
    require(!parameters.empty(), Errc::invalid_argument, "empty parameter list");
    MetricsReport rep;
    rep.params = parameters;
    double psum = 0.0, ssum = 0.0;
    for (const std::string& p : parameters) {
        const Volume4D* gt = gt_maps.find(p);
        require(gt != nullptr, Errc::invalid_argument, "ground truth missing parameter: " + p);
        const Volume4D* pr = pred_maps.find(p);
        require(pr != nullptr, Errc::invalid_argument, "prediction missing parameter: " + p);
        double pv = psnr(*gt, *pr, mask);
        double sv = ssim(*gt, *pr, mask, ssim_window);
        rep.psnr_values.push_back(pv);
        rep.ssim_values.push_back(sv);
        psum += pv;
        ssum += sv;
    }
    rep.psnr_average = psum / static_cast<double>(parameters.size());
    rep.ssim_average = ssum / static_cast<double>(parameters.size());
    return rep;
}

// Mean and sample standard deviation across evaluation units (phantoms or
// subjects). All reports must share the parameter list.
inline MetricsReport aggregate(const std::vector<MetricsReport>& units) {
    require(!units.empty(), Errc::invalid_argument, "no reports to aggregate");
    MetricsReport rep = units[0];
    if (units.size() == 1) return rep;
    const std::size_t np = rep.params.size();
    for (const MetricsReport& u : units)
        require(u.params == rep.params, Errc::invalid_argument,
                "aggregate: parameter lists differ");
    const double n = static_cast<double>(units.size());
    rep.n_units = static_cast<int>(units.size());
    auto mean_std = [&](auto getter) {
        std::vector<std::pair<double, double>> out;
        for (std::size_t p = 0; p <= np; ++p) { // last slot = average column
            double m = 0.0;
            for (const MetricsReport& u : units) m += getter(u, p);
            m /= n;
            double ss = 0.0;
            for (const MetricsReport& u : units) ss += (getter(u, p) - m) * (getter(u, p) - m);
            out.emplace_back(m, std::sqrt(ss / (n - 1.0)));
        }
        return out;
    };
    auto pm = mean_std([np](const MetricsReport& u, std::size_t p) {
        return p < np ? u.psnr_values[p] : u.psnr_average;
    });
    auto sm = mean_std([np](const MetricsReport& u, std::size_t p) {
        return p < np ? u.ssim_values[p] : u.ssim_average;
    });
    rep.psnr_std.clear();
    rep.ssim_std.clear();
    for (std::size_t p = 0; p < np; ++p) {
        rep.psnr_values[p] = pm[p].first;
        rep.psnr_std.push_back(pm[p].second);
        rep.ssim_values[p] = sm[p].first;
        rep.ssim_std.push_back(sm[p].second);
    }
    rep.psnr_average = pm[np].first;
    rep.psnr_average_std = pm[np].second;
    rep.ssim_average = sm[np].first;
    rep.ssim_average_std = sm[np].second;
    return rep;
}

namespace detail {

inline std::string fmt_metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace detail

inline void write_metrics_csv(const std::vector<MetricsReport>& reports,
                              const std::string& path) {
    require(!reports.empty(), Errc::invalid_argument, "no reports");
    std::ofstream out(path, std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path);
    out << "method,protocol,metric";
    for (const std::string& p : reports[0].params) out << "," << p;
    out << ",average\n";
    for (const MetricsReport& r : reports) {
        out << r.method << "," << r.protocol << ",psnr";
        for (double v : r.psnr_values) out << "," << detail::fmt_metric(v);
        out << "," << detail::fmt_metric(r.psnr_average) << "\n";
        out << r.method << "," << r.protocol << ",ssim";
        for (double v : r.ssim_values) out << "," << detail::fmt_metric(v);
        out << "," << detail::fmt_metric(r.ssim_average) << "\n";
    }
}

// Aligned text table with methods as rows, one block per metric.
inline void write_metrics_table(const std::vector<MetricsReport>& reports,
                                const std::string& path) {
    require(!reports.empty(), Errc::invalid_argument, "no reports");
    std::ofstream out(path, std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path);
    auto emit = [&](const std::string& title, bool use_psnr) {
        out << title << "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-16s", ("(" + reports[0].protocol + ")").c_str());
        out << buf;
        for (const std::string& p : reports[0].params) {
            std::snprintf(buf, sizeof(buf), "%10s", p.c_str());
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "%14s", "average");
        out << buf << "\n";
        for (const MetricsReport& r : reports) {
            std::snprintf(buf, sizeof(buf), "%-16s", r.method.c_str());
            out << buf;
            const auto& vals = use_psnr ? r.psnr_values : r.ssim_values;
            for (double v : vals) {
                std::snprintf(buf, sizeof(buf), "%10s", detail::fmt_metric(v).c_str());
                out << buf;
            }
            double avg = use_psnr ? r.psnr_average : r.ssim_average;
            double avg_std = use_psnr ? r.psnr_average_std : r.ssim_average_std;
            std::string cell = detail::fmt_metric(avg);
            if (r.n_units > 1) cell += "±" + detail::fmt_metric(avg_std);
            std::snprintf(buf, sizeof(buf), "%14s", cell.c_str());
            out << buf << "\n";
        }
        out << "\n";
    };
    emit("PSNR", true);
    emit("SSIM", false);
}

} // namespace dmri
