// Independent numeric oracles shared by the unit and acceptance tests.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "mixsing/mixedpoly.hpp"

namespace mixsing::testing {

// Central differences of g = Re f and h = Im f, then the Wirtinger combinations.
inline WirtingerPair finite_difference_gradient(const MixedPolynomial& f, const ComplexVector& z, double step) {
    const int n = f.dim();
    WirtingerPair out{ComplexVector(n), ComplexVector(n)};
    for (int i = 0; i < n; ++i) {
        auto shifted = [&](Complex delta) {
            ComplexVector p = z;
            p[i] += delta;
            return evaluate(f, p);
        };
        const Complex fx = (shifted({step, 0}) - shifted({-step, 0})) / (2 * step);
        const Complex fy = (shifted({0, step}) - shifted({0, -step})) / (2 * step);
        out.dz[i] = 0.5 * (fx - Complex(0, 1) * fy);
        out.dzbar[i] = 0.5 * (fx + Complex(0, 1) * fy);
    }
    return out;
}

inline double svd_ratio_oracle(const RealGradientRows& rows) {
    Eigen::MatrixXd m(2, rows.dg.size());
    for (std::size_t j = 0; j < rows.dg.size(); ++j) {
        m(0, j) = rows.dg[j];
        m(1, j) = rows.dh[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto s = svd.singularValues();
    return s(0) == 0.0 ? 0.0 : s(1) / s(0);
}

inline double lambda_grid_oracle(const WirtingerPair& g, int phases) {
    double na = 0.0;
    for (std::size_t i = 0; i < g.dz.size(); ++i) na += std::norm(g.dz[i]) + std::norm(g.dzbar[i]);
    if (na == 0.0) return 0.0;
    double best = 1e300;
    for (int k = 0; k < phases; ++k) {
        const Complex lambda = std::polar(1.0, 2 * std::numbers::pi * k / phases);
        double d = 0.0;
        for (std::size_t i = 0; i < g.dz.size(); ++i) d += std::norm(std::conj(g.dz[i]) - lambda * g.dzbar[i]);
        best = std::min(best, std::sqrt(d / na));
    }
    return best;
}

// Minimum of σ₂/σ₁ over a log-radius grid in [0.2, 5] times a phase grid, per coordinate.
inline double torus_grid_minimum(const MixedPolynomial& f, int radii, int phases) {
    const int n = f.dim();
    double best = 1.0;
    std::vector<int> idx(2 * n, 0);
    while (true) {
        ComplexVector z(n);
        for (int i = 0; i < n; ++i) {
            const double rho = std::log(0.2) + (std::log(5.0) - std::log(0.2)) * idx[i] / (radii - 1);
            z[i] = std::polar(std::exp(rho), 2 * std::numbers::pi * idx[n + i] / phases + 0.1);
        }
        best = std::min(best, criticality_residual(f, z));
        int k = 0;
        while (k < 2 * n && idx[k] == (k < n ? radii : phases) - 1) idx[k++] = 0;
        if (k == 2 * n) break;
        ++idx[k];
    }
    return best;
}

}  // namespace mixsing::testing
