#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dmri/core.hpp"
#include "dmri/gradients.hpp"

namespace dmri {

namespace detail {

// Antipodally symmetric Coulomb pair energy.
inline double pair_energy(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    double dm = (a - b).norm();
    double dp = (a + b).norm();
    require(dm > 1e-12 && dp > 1e-12, Errc::antipodal_pair,
            "coincident or antipodal direction pair has infinite energy");
    return 1.0 / dm + 1.0 / dp;
}

} // namespace detail

inline double electrostatic_energy(std::span<const Eigen::Vector3d> dirs) {
    double e = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            e += detail::pair_energy(dirs[i], dirs[j]);
    return e;
}

// Greedy subset selection: seed with the minimum-energy pair, grow by minimum
// incremental energy, then run 1-exchange local search to a fixed point. Ties
// always resolve to the lowest index, so the result is deterministic.
inline std::vector<int> subsample_shell(std::span<const Eigen::Vector3d> shell_dirs, int k) {
    const int n = static_cast<int>(shell_dirs.size());
    require(k >= 1, Errc::invalid_argument, "k must be positive");
    require(k <= n, Errc::out_of_range,
            "k = " + std::to_string(k) + " exceeds the " + std::to_string(n) +
                " available directions");

    std::vector<int> sel;
    if (k == n) {
        for (int i = 0; i < n; ++i) sel.push_back(i);
        return sel;
    }
    if (k == 1) return {0};

    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double e = detail::pair_energy(shell_dirs[i], shell_dirs[j]);
            if (e < best) {
                best = e;
                bi = i;
                bj = j;
            }
        }
    sel = {bi, bj};

    std::vector<char> used(n, 0);
    used[bi] = used[bj] = 1;
    while (static_cast<int>(sel.size()) < k) {
        double binc = std::numeric_limits<double>::infinity();
        int bc = -1;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            double inc = 0.0;
            for (int s : sel) inc += detail::pair_energy(shell_dirs[c], shell_dirs[s]);
            if (inc < binc) {
                binc = inc;
                bc = c;
            }
        }
        sel.push_back(bc);
        used[bc] = 1;
    }

    // 1-exchange descent: apply the best improving swap until none remains
    auto subset_energy = [&](const std::vector<int>& idx) {
        double e = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j)
                e += detail::pair_energy(shell_dirs[idx[i]], shell_dirs[idx[j]]);
        return e;
    };
    double cur = subset_energy(sel);
    bool improved = true;
    while (improved) {
        improved = false;
        double best_e = cur;
        int best_out = -1, best_in = -1;
        for (std::size_t oi = 0; oi < sel.size(); ++oi) {
            for (int c = 0; c < n; ++c) {
                if (used[c]) continue;
                std::vector<int> trial = sel;
                trial[oi] = c;
                double e = subset_energy(trial);
                if (e < best_e - 1e-15) {
                    best_e = e;
                    best_out = static_cast<int>(oi);
                    best_in = c;
                }
            }
        }
        if (best_out >= 0) {
            used[sel[best_out]] = 0;
            used[best_in] = 1;
            sel[best_out] = best_in;
            cur = best_e;
            improved = true;
        }
    }
    std::sort(sel.begin(), sel.end());
    return sel;
}

struct SubsamplingPlan {
    int k_per_shell = 0;
    std::vector<int> b0_indices;                          // into the full table
    std::vector<std::pair<double, std::vector<int>>> shells; // (nominal b, full-table indices)

    std::vector<int> all_indices() const {
        std::vector<int> out = b0_indices;
        for (const auto& [b, idx] : shells) out.insert(out.end(), idx.begin(), idx.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    void validate(const GradientTable& table) const {
        for (int i : all_indices())
            require(i >= 0 && i < table.size(), Errc::out_of_range,
                    "plan index " + std::to_string(i) + " outside table of length " +
                        std::to_string(table.size()));
        std::vector<int> all = all_indices();
        require(std::adjacent_find(all.begin(), all.end()) == all.end(), Errc::invalid_argument,
                "plan selects an index twice");
        for (const auto& [b, idx] : shells)
            require(static_cast<int>(idx.size()) == k_per_shell, Errc::invalid_argument,
                    "shell does not hold k_per_shell indices");
    }
};

// Per-shell greedy selection; the lowest-index b0 volume is retained.
inline SubsamplingPlan make_plan(const GradientTable& table, int k_per_shell) {
    SubsamplingPlan plan;
    plan.k_per_shell = k_per_shell;
    std::vector<int> b0s = table.b0_indices();
    require(!b0s.empty(), Errc::invalid_argument, "table has no b0 entry to retain");
    plan.b0_indices = {b0s.front()};
    for (const Shell& sh : table.shells()) {
        std::vector<Eigen::Vector3d> dirs;
        for (int i : sh.indices) dirs.push_back(table.entries[i].dir);
        std::vector<int> local = subsample_shell(dirs, k_per_shell);
        std::vector<int> global;
        for (int l : local) global.push_back(sh.indices[l]);
        plan.shells.emplace_back(sh.b, std::move(global));
    }
    return plan;
}

inline std::pair<Volume4D, GradientTable> apply_plan(const Volume4D& full,
                                                     const GradientTable& table,
                                                     const SubsamplingPlan& plan) {
    require(full.d == table.size(), Errc::length_mismatch,
            "volume D = " + std::to_string(full.d) + " but table has " +
                std::to_string(table.size()) + " entries");
    plan.validate(table);

    std::vector<int> keep = plan.all_indices(); // ascending: preserves entry order
    GradientTable sparse;
    sparse.b0_threshold = table.b0_threshold;
    sparse.shell_tolerance = table.shell_tolerance;
    Volume4D out(full.w, full.h, full.s, static_cast<int>(keep.size()), full.intent);
    out.spacing = full.spacing;
    out.orient_raw = full.orient_raw;
    const std::size_t nvox = full.voxels();
    for (std::size_t t = 0; t < keep.size(); ++t) {
        sparse.entries.push_back(table.entries[keep[t]]);
        const double* src = full.data.data() + static_cast<std::size_t>(keep[t]) * nvox;
        std::copy(src, src + nvox, out.data.data() + t * nvox);
    }
    return {std::move(out), std::move(sparse)};
}

inline void write_plan(const SubsamplingPlan& plan, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    require(static_cast<bool>(out), Errc::io_failure, "cannot open " + path);
    for (int i : plan.b0_indices) out << "b0: " << i << "\n";
    out.precision(17);
    for (const auto& [b, idx] : plan.shells) {
        out << "b=" << b << ": ";
        for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
        out << "\n";
    }
}

inline SubsamplingPlan read_plan(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), Errc::missing_file, "cannot open " + path);
    SubsamplingPlan plan;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "b0:") {
            int i;
            require(static_cast<bool>(ss >> i), Errc::parse_error, path + ": bad b0 line");
            plan.b0_indices.push_back(i);
        } else if (head.rfind("b=", 0) == 0) {
            double b = 0.0;
            try {
                b = std::stod(head.substr(2));
            } catch (const std::exception&) {
                fail(Errc::parse_error, path + ": bad shell header \"" + head + "\"");
            }
            std::string rest;
            std::getline(ss, rest);
            std::vector<int> idx;
            std::istringstream rs(rest);
            std::string tok;
            while (std::getline(rs, tok, ',')) {
                try {
                    idx.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    fail(Errc::parse_error, path + ": bad index \"" + tok + "\"");
                }
            }
            require(!idx.empty(), Errc::parse_error, path + ": empty shell line");
            plan.shells.emplace_back(b, std::move(idx));
        } else {
            fail(Errc::parse_error, path + ": unrecognised line \"" + line + "\"");
        }
    }
    if (!plan.shells.empty()) plan.k_per_shell = static_cast<int>(plan.shells[0].second.size());
    return plan;
}

} // namespace dmri
