#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dmri/core.hpp"

namespace dmri {

// Ridge-regularised nonnegative least squares,
//   min ||A x - y||^2 + ridge ||x||^2   s.t.  x >= 0,
// by the Lawson-Hanson active-set method on the augmented system
// [A; sqrt(ridge) I]. The entering variable is the most negative gradient
// with ties broken toward the lowest index, so the pivot sequence is
// deterministic. Terminates when the KKT conditions hold at tolerance tol:
// x_i > 0 implies |grad_i| <= tol and x_i = 0 implies grad_i >= -tol.
inline Eigen::VectorXd nnls_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                                  double ridge = 0.0, double tol = 1e-8) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    require(m >= 1 && n >= 1, Errc::invalid_argument, "empty system");
    require(a.allFinite() && y.allFinite(), Errc::invalid_argument, "non-finite inputs");
    require(ridge >= 0.0, Errc::invalid_argument, "negative ridge");
    require(static_cast<int>(y.size()) == m, Errc::length_mismatch, "rhs length mismatch");

    const int ma = ridge > 0.0 ? m + n : m;
    Eigen::MatrixXd aa(ma, n);
    Eigen::VectorXd ya = Eigen::VectorXd::Zero(ma);
    aa.topRows(m) = a;
    ya.head(m) = y;
    if (ridge > 0.0) aa.bottomRows(n) = std::sqrt(ridge) * Eigen::MatrixXd::Identity(n, n);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<char> passive(n, 0);
    std::vector<int> pset; // passive indices, insertion order

    auto passive_ls = [&]() {
        Eigen::MatrixXd ap(ma, pset.size());
        for (std::size_t c = 0; c < pset.size(); ++c) ap.col(c) = aa.col(pset[c]);
        Eigen::VectorXd z = ap.colPivHouseholderQr().solve(ya);
        return z;
    };

    const int max_iters = 10 * n;
    int iters = 0;
    while (true) {
        Eigen::VectorXd grad = aa.transpose() * (aa * x - ya);
        int enter = -1;
        double most_neg = -tol;
        for (int j = 0; j < n; ++j) {
            if (passive[j]) continue;
            if (grad(j) < most_neg) {
                most_neg = grad(j);
                enter = j;
            }
        }
        if (enter < 0) break; // KKT satisfied

        require(++iters <= max_iters, Errc::iteration_limit,
                "nnls exceeded " + std::to_string(max_iters) + " iterations");
        passive[enter] = 1;
        pset.push_back(enter);

        while (true) {
            Eigen::VectorXd z = passive_ls();
            double zmin = z.minCoeff();
            if (zmin > 0.0) {
                x.setZero();
                for (std::size_t c = 0; c < pset.size(); ++c) x(pset[c]) = z(c);
                break;
            }
            // move toward z only as far as feasibility allows
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < pset.size(); ++c) {
                if (z(c) > 0.0) continue;
                double xi = x(pset[c]);
                if (xi - z(c) > 0.0) alpha = std::min(alpha, xi / (xi - z(c)));
            }
            if (!std::isfinite(alpha)) alpha = 0.0;
            for (std::size_t c = 0; c < pset.size(); ++c) {
                double nx = x(pset[c]) + alpha * (z(c) - x(pset[c]));
                x(pset[c]) = nx > 0.0 ? nx : 0.0;
            }
            // demote variables pinned at zero; guarantee progress by demoting
            // the most negative z if rounding left none at zero
            std::vector<int> next;
            bool removed = false;
            int worst = 0;
            for (std::size_t c = 1; c < pset.size(); ++c)
                if (z(c) < z(worst)) worst = static_cast<int>(c);
            for (std::size_t c = 0; c < pset.size(); ++c) {
                bool drop = (z(c) <= 0.0 && x(pset[c]) <= 1e-14);
                if (drop) {
                    passive[pset[c]] = 0;
                    x(pset[c]) = 0.0;
                    removed = true;
                } else {
                    next.push_back(pset[c]);
                }
            }
            if (!removed) {
                passive[pset[worst]] = 0;
                x(pset[worst]) = 0.0;
                next.clear();
                for (std::size_t c = 0; c < pset.size(); ++c)
                    if (static_cast<int>(c) != worst) next.push_back(pset[c]);
            }
            pset = std::move(next);
            if (pset.empty()) {
                x.setZero();
                break;
            }
            require(++iters <= max_iters, Errc::iteration_limit,
                    "nnls exceeded " + std::to_string(max_iters) + " iterations");
        }
    }
    return x;
}

} // namespace dmri
