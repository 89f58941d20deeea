#include "mixsing/torus_search.hpp"

#include <cmath>
#include <limits>

namespace mixsing {

TorusObjective::TorusObjective(const MixedPolynomial& f, IndexSet free) : f_(f), n_(f.dim()), free_(free) {}

ComplexVector TorusObjective::point(const Vec& x) const {
    ComplexVector z(n_);
    for (int i = 0; i < n_; ++i) z[i] = std::polar(std::exp(x[i]), x[n_ + i]);
    return z;
}

Vec TorusObjective::coordinates(std::span<const Complex> z) {
    const std::size_t n = z.size();
    Vec x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(std::abs(z[i]));
        x[n + i] = std::arg(z[i]);
    }
    return x;
}

WirtingerPair TorusObjective::gradient(std::span<const Complex> z) const {
    WirtingerPair g;
    f_.gradient(z, g);
    return g;
}

double TorusObjective::residual_at(std::span<const Complex> z) const {
    const auto rows = real_gradient_rows(gradient(z), free_);
    return sigma_ratio(rows.dg, rows.dh);
}

double TorusObjective::residual(const Vec& x) const {
    const double r = residual_at(point(x));
    return std::isfinite(r) ? r : 1.0;
}

Vec TorusObjective::residual_vector(const Vec& x) const {
    const auto rows = real_gradient_rows(gradient(point(x)), free_);
    const std::size_t k = rows.dg.size();
    double trace = 0.0;
    for (std::size_t i = 0; i < k; ++i) trace += rows.dg[i] * rows.dg[i] + rows.dh[i] * rows.dh[i];
    Vec out;
    out.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) out.push_back(rows.dg[i] * rows.dh[j] - rows.dg[j] * rows.dh[i]);
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        // Vanishing gradients count as critical; overflow counts as far from it.
        const double fill = trace > 0.0 ? 1.0 : 0.0;
        for (auto& v : out) v = fill;
        return out;
    }
    for (auto& v : out) v /= trace;
    return out;
}

LocalResult refine_critical(const TorusObjective& obj, Vec x0, const RefineOptions& opt) {
    if (opt.project) opt.project(x0);
    auto scalar = [&](const Vec& x) {
        Vec y = x;
        if (opt.project) opt.project(y);
        return obj.residual(y);
    };
    LocalResult nm = nelder_mead(scalar, x0, opt.nelder_mead_step, opt.nelder_mead_evals);
    if (opt.project) opt.project(nm.x);
    auto vec = [&](const Vec& x) { return obj.residual_vector(x); };
    LocalResult lm = levenberg_marquardt(vec, nm.x, opt.lm_iters, opt.project, 1e-15);
    const double r_nm = obj.residual(nm.x);
    const double r_lm = obj.residual(lm.x);
    const int evals = nm.evaluations + lm.evaluations;
    if (r_lm <= r_nm) return {lm.x, r_lm, evals};
    return {nm.x, r_nm, evals};
}

std::function<void(Vec&)> homogeneous_projection(std::vector<long long> weights, Vec lo, Vec hi) {
    return [w = std::move(weights), lo = std::move(lo), hi = std::move(hi)](Vec& x) {
        const std::size_t n = w.size();
        double s = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] > 0) s = std::max(s, x[i] / static_cast<double>(w[i]));
        if (std::isfinite(s))
            for (std::size_t i = 0; i < n; ++i) x[i] -= s * static_cast<double>(w[i]);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    };
}

std::function<void(Vec&)> box_projection(Vec lo, Vec hi) {
    return [lo = std::move(lo), hi = std::move(hi)](Vec& x) {
        for (std::size_t i = 0; i < lo.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    };
}

}  // namespace mixsing
