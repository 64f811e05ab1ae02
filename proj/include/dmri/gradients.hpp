#pragma once

#include <Eigen/Core>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dmri/core.hpp"

namespace dmri {

struct GradientEntry {
    double b = 0.0;               // s/mm^2
    Eigen::Vector3d dir{0, 0, 0}; // unit vector, or zero when b is below threshold
};

struct Shell {
    double b = 0.0;           // nominal b-value (mean of members)
    std::vector<int> indices; // into GradientTable::entries, ascending
};

struct GradientTable {
    std::vector<GradientEntry> entries;
    double b0_threshold = 50.0;
    double shell_tolerance = 50.0;

    int size() const { return static_cast<int>(entries.size()); }

    bool is_b0(int i) const { return entries[i].b <= b0_threshold; }

    std::vector<int> b0_indices() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (is_b0(i)) out.push_back(i);
        return out;
    }

    // Partition of non-b0 entries by b-value. Scanning entries in ascending b
    // order, an entry joins the current shell while its b is within
    // shell_tolerance of the shell's first member; the partition is therefore
    // deterministic and independent of entry order.
    std::vector<Shell> shells() const {
        std::vector<std::pair<double, int>> dw;
        for (int i = 0; i < size(); ++i)
            if (!is_b0(i)) dw.emplace_back(entries[i].b, i);
        std::sort(dw.begin(), dw.end());

        std::vector<Shell> out;
        double anchor = 0.0;
        for (const auto& [b, i] : dw) {
            if (out.empty() || b - anchor > shell_tolerance) {
                out.push_back(Shell{});
                anchor = b;
            }
            out.back().indices.push_back(i);
        }
        for (Shell& sh : out) {
            std::sort(sh.indices.begin(), sh.indices.end());
            double sum = 0.0;
            for (int i : sh.indices) sum += entries[i].b;
            sh.b = sum / static_cast<double>(sh.indices.size());
        }
        return out;
    }

    void validate() const {
        for (int i = 0; i < size(); ++i) {
            const GradientEntry& e = entries[i];
            if (is_b0(i)) {
                require(e.dir.norm() == 0.0, Errc::invalid_argument,
                        "b0 entry " + std::to_string(i) + " has a non-zero direction");
            } else {
                require(std::abs(e.dir.norm() - 1.0) <= 1e-6, Errc::zero_norm_direction,
                        "entry " + std::to_string(i) + " direction is not unit length");
            }
        }
    }
};

namespace detail {

inline std::vector<double> parse_number_row(const std::string& line, const std::string& what) {
    std::vector<double> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t pos = 0;
            double v = std::stod(tok, &pos);
            require(pos == tok.size(), Errc::parse_error, what + ": non-numeric token \"" + tok + "\"");
            out.push_back(v);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::parse_error, what + ": non-numeric token \"" + tok + "\"");
        }
    }
    return out;
}

inline std::vector<std::vector<double>> read_number_rows(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), Errc::missing_file, "cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto row = parse_number_row(line, path);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

inline GradientTable read_gradient_table(const std::string& bvals_path,
                                         const std::string& bvecs_path,
                                         double b0_threshold = 50.0,
                                         double shell_tolerance = 50.0) {
    auto bval_rows = detail::read_number_rows(bvals_path);
    require(bval_rows.size() == 1, Errc::parse_error,
            bvals_path + ": expected a single row of b-values, got " +
                std::to_string(bval_rows.size()) + " rows");
    const std::vector<double>& bvals = bval_rows[0];

    auto bvec_rows = detail::read_number_rows(bvecs_path);
    require(bvec_rows.size() == 3, Errc::parse_error,
            bvecs_path + ": expected exactly 3 rows (x, y, z), got " +
                std::to_string(bvec_rows.size()));
    for (int r = 0; r < 3; ++r)
        require(bvec_rows[r].size() == bvals.size(), Errc::length_mismatch,
                "row length mismatch: " + bvals_path + " has " + std::to_string(bvals.size()) +
                    " entries but " + bvecs_path + " row " + std::to_string(r + 1) + " has " +
                    std::to_string(bvec_rows[r].size()));

    GradientTable table;
    table.b0_threshold = b0_threshold;
    table.shell_tolerance = shell_tolerance;
    for (std::size_t i = 0; i < bvals.size(); ++i) {
        GradientEntry e;
        e.b = bvals[i];
        Eigen::Vector3d g(bvec_rows[0][i], bvec_rows[1][i], bvec_rows[2][i]);
        if (e.b <= b0_threshold) {
            e.dir.setZero();
        } else {
            double n = g.norm();
            require(n > 0.0, Errc::zero_norm_direction,
                    "entry " + std::to_string(i) + " has b=" + std::to_string(e.b) +
                        " but a zero-norm direction");
            e.dir = g / n;
        }
        table.entries.push_back(e);
    }
    return table;
}

inline void write_gradient_table(const GradientTable& table, const std::string& bvals_path,
                                 const std::string& bvecs_path) {
    std::ofstream bv(bvals_path, std::ios::trunc);
    require(static_cast<bool>(bv), Errc::io_failure, "cannot open " + bvals_path);
    for (int i = 0; i < table.size(); ++i) bv << (i ? " " : "") << table.entries[i].b;
    bv << "\n";

    std::ofstream gv(bvecs_path, std::ios::trunc);
    require(static_cast<bool>(gv), Errc::io_failure, "cannot open " + bvecs_path);
    gv.precision(17);
    for (int r = 0; r < 3; ++r) {
        for (int i = 0; i < table.size(); ++i) gv << (i ? " " : "") << table.entries[i].dir[r];
        gv << "\n";
    }
}

// Synthetic acquisition protocol: n_b0 reference volumes followed by one
// spherical-Fibonacci shell per b-value. Shells are rotated against each
// other by a golden-angle offset so they do not share directions.
inline GradientTable make_protocol(const std::vector<double>& bvalues, int dirs_per_shell,
                                   int n_b0) {
    require(dirs_per_shell > 0, Errc::invalid_argument, "dirs_per_shell must be positive");
    require(n_b0 >= 0, Errc::invalid_argument, "b0 count must be non-negative");
    GradientTable table;
    for (int i = 0; i < n_b0; ++i) table.entries.push_back(GradientEntry{0.0, {0, 0, 0}});
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    int shell_idx = 0;
    for (double b : bvalues) {
        require(b > table.b0_threshold, Errc::invalid_argument,
                "shell b-value must exceed the b0 threshold");
        for (int i = 0; i < dirs_per_shell; ++i) {
            double z = 1.0 - (2.0 * i + 1.0) / dirs_per_shell;
            double phi = i * golden + shell_idx * golden / 3.0;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            table.entries.push_back(
                GradientEntry{b, {r * std::cos(phi), r * std::sin(phi), z}});
        }
        ++shell_idx;
    }
    return table;
}

} // namespace dmri
