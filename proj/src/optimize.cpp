#include "mixsing/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace mixsing {

namespace {

double sqnorm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

LocalResult nelder_mead(const std::function<double(const Vec&)>& f, Vec x0, double step, int max_evals,
                        double ftol) {
    const std::size_t d = x0.size();
    std::vector<Vec> pts(d + 1, x0);
    std::vector<double> val(d + 1);
    for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
    int evals = 0;
    for (std::size_t i = 0; i <= d; ++i) {
        val[i] = f(pts[i]);
        ++evals;
    }
    std::vector<std::size_t> order(d + 1);
    auto point = [&](const Vec& centroid, const Vec& from, double t) {
        Vec p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = centroid[j] + t * (from[j] - centroid[j]);
        return p;
    };
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
        if (std::abs(val[worst] - val[best]) <= ftol * (std::abs(val[best]) + 1e-300)) break;
        Vec centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i)
            if (i != worst)
                for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[i][j] / static_cast<double>(d);
        const Vec xr = point(centroid, pts[worst], -1.0);
        const double fr = f(xr);
        ++evals;
        if (fr < val[best]) {
            const Vec xe = point(centroid, pts[worst], -2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                pts[worst] = xe;
                val[worst] = fe;
            } else {
                pts[worst] = xr;
                val[worst] = fr;
            }
            continue;
        }
        if (fr < val[second]) {
            pts[worst] = xr;
            val[worst] = fr;
            continue;
        }
        const bool outside = fr < val[worst];
        const Vec xc = point(centroid, outside ? xr : pts[worst], 0.5);
        const double fc = f(xc);
        ++evals;
        if (fc < (outside ? fr : val[worst])) {
            pts[worst] = xc;
            val[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            pts[i] = point(pts[best], pts[i], 0.5);
            val[i] = f(pts[i]);
            ++evals;
        }
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
    return {pts[best], val[best], evals};
}

LocalResult levenberg_marquardt(const std::function<Vec(const Vec&)>& r, Vec x, int max_iters,
                                const std::function<void(Vec&)>& project, double stop_norm) {
    if (project) project(x);
    Vec rx = r(x);
    int evals = 1;
    double cost = sqnorm(rx);
    double mu = 1e-3;
    const std::size_t d = x.size();
    for (int it = 0; it < max_iters && std::sqrt(cost) > stop_norm; ++it) {
        const std::size_t m = rx.size();
        Eigen::MatrixXd J(m, d);
        for (std::size_t j = 0; j < d; ++j) {
            Vec xp = x;
            const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            xp[j] += h;
            const Vec rp = r(xp);
            ++evals;
            for (std::size_t i = 0; i < m; ++i) J(i, j) = (rp[i] - rx[i]) / h;
        }
        Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(rx.data(), m);
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * e;
        bool improved = false;
        for (int tries = 0; tries < 8; ++tries) {
            Eigen::MatrixXd A = JtJ;
            for (std::size_t j = 0; j < d; ++j) A(j, j) += mu * (1.0 + JtJ(j, j));
            const Eigen::VectorXd step = A.ldlt().solve(-g);
            Vec xn = x;
            for (std::size_t j = 0; j < d; ++j) xn[j] += step(j);
            if (project) project(xn);
            const Vec rn = r(xn);
            ++evals;
            const double cn = sqnorm(rn);
            if (std::isfinite(cn) && cn < cost) {
                x = std::move(xn);
                rx = rn;
                cost = cn;
                mu = std::max(mu / 3.0, 1e-12);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if (!improved) break;
    }
    return {x, std::sqrt(cost), evals};
}

}  // namespace mixsing
