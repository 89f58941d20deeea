#include "mixsing/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mixsing/torus_search.hpp"

namespace mixsing {

void SearchConfig::validate() const {
    if (!(r_min > 0.0) || !(r_min <= r_max)) throw std::invalid_argument("radial bounds must satisfy 0 < r_min <= r_max");
    if (!(tol_accept > 0.0) || !(tol_accept < tol_floor)) throw std::invalid_argument("need 0 < tol_accept < tol_floor");
    if (multistarts < 1) throw std::invalid_argument("multistarts must be positive");
    if (grid_per_dim < 1) throw std::invalid_argument("grid_per_dim must be positive");
    if (max_refine_iters < 0) throw std::invalid_argument("max_refine_iters must be non-negative");
}

std::string to_string(FaceStatus s) {
    switch (s) {
        case FaceStatus::proven_nondegenerate: return "PROVEN_NONDEGENERATE";
        case FaceStatus::no_critical_point_found: return "NO_CRITICAL_POINT_FOUND";
        case FaceStatus::critical_point_found: return "CRITICAL_POINT_FOUND";
        case FaceStatus::proven_degenerate: return "PROVEN_DEGENERATE";
    }
    return "?";
}

MonomialVerdict monomial_rule(const MixedMonomial& m) {
    if (m.coeff == Complex(0.0, 0.0)) throw std::invalid_argument("zero monomial");
    // On the torus |∂f/∂z_i| = ν_i|c||z^{ν+μ−e_i}| and |∂f/∂z̄_i| = μ_i|c||z^{ν+μ−e_i}|,
    // so conj(∂f) = λ∂̄f with |λ| = 1 forces ν = μ. Conversely, for ν = μ,
    // f = c|z^ν|² and conj(∂f) = (conj(c)/c)∂̄f everywhere.
    if (m.nu == m.mu) return {FaceStatus::proven_degenerate, std::conj(m.coeff) / m.coeff};
    return {FaceStatus::proven_nondegenerate, Complex(1.0, 0.0)};
}

MonomialVerdict monomial_rule(const MixedPolynomial& f) {
    if (f.size() != 1) throw std::invalid_argument("monomial rule needs exactly one term");
    return monomial_rule(f.monomials().front());
}

bool is_radially_homogeneous(const MixedPolynomial& f, const WeightVector& w, long long* degree) {
    if (f.is_zero()) return false;
    const long long d = radial_degree(f.terms().begin()->first, w);
    for (const auto& [key, c] : f.terms())
        if (radial_degree(key, w) != d) return false;
    if (degree) *degree = d;
    return true;
}

namespace {

struct StartResult {
    double residual = 1.0;
    Vec x;
};

}  // namespace

FaceVerdict search_torus_critical_points(const MixedPolynomial& f, const SearchConfig& cfg,
                                         const std::optional<WeightVector>& homogeneity) {
    cfg.validate();
    if (f.is_zero()) throw std::invalid_argument("search on the zero polynomial");
    const int n = f.dim();
    const int dims = 2 * n;
    FaceVerdict verdict;
    verdict.face_function = f;

    const bool homogeneous = homogeneity && homogeneity->all_positive() && is_radially_homogeneous(f, *homogeneity);
    Vec lo(n), hi(n);
    std::function<void(Vec&)> project;
    if (homogeneous) {
        // Every orbit of the weighted action meets max_i ρ_i / w_i = 0.
        std::fill(lo.begin(), lo.end(), std::log(cfg.r_min / cfg.r_max));
        std::fill(hi.begin(), hi.end(), 0.0);
        project = homogeneous_projection(homogeneity->values(), lo, hi);
    } else {
        std::fill(lo.begin(), lo.end(), std::log(cfg.r_min));
        std::fill(hi.begin(), hi.end(), std::log(cfg.r_max));
        project = box_projection(lo, hi);
    }
    const TorusObjective obj(f, IndexSet::full(n));
    const std::uint64_t key = stable_hash(to_string(f));

    // Grid pre-pass.
    int g = cfg.grid_per_dim;
    while (g > 1 && std::pow(static_cast<double>(g), dims) > static_cast<double>(cfg.grid_cap)) --g;
    long long grid_total = 1;
    for (int k = 0; k < dims; ++k) grid_total *= g;
    std::vector<double> grid_val(grid_total);
    auto grid_point = [&](long long idx) {
        Vec x(dims);
        for (int k = 0; k < dims; ++k) {
            const int j = static_cast<int>(idx % g);
            idx /= g;
            if (k < n)
                x[k] = g == 1 ? 0.5 * (lo[k] + hi[k]) : lo[k] + (hi[k] - lo[k]) * j / (g - 1);
            else
                x[k] = 2.0 * std::numbers::pi * j / g;
        }
        project(x);
        return x;
    };
    const long long chunk = 1024;
    const long long chunks = (grid_total + chunk - 1) / chunk;
    for_each_task(static_cast<std::size_t>(chunks), cfg.policy, [&](std::size_t c) {
        const long long end = std::min(grid_total, static_cast<long long>(c + 1) * chunk);
        for (long long i = static_cast<long long>(c) * chunk; i < end; ++i) grid_val[i] = obj.residual(grid_point(i));
    });
    std::vector<long long> order(grid_total);
    std::iota(order.begin(), order.end(), 0);
    const int grid_starts = std::min<long long>(cfg.multistarts / 2, grid_total);
    std::partial_sort(order.begin(), order.begin() + grid_starts, order.end(), [&](long long a, long long b) {
        return grid_val[a] != grid_val[b] ? grid_val[a] < grid_val[b] : a < b;
    });
    double min_seen = 1.0;
    for (double v : grid_val) min_seen = std::min(min_seen, v);

    const int total = std::max(cfg.multistarts, grid_starts);
    std::vector<StartResult> results(total);
    RefineOptions ropt;
    ropt.lm_iters = cfg.max_refine_iters;
    ropt.nelder_mead_evals = 40 * dims;
    ropt.project = project;
    for_each_task(static_cast<std::size_t>(total), cfg.policy, [&](std::size_t t) {
        Vec x0;
        if (static_cast<int>(t) < grid_starts) {
            x0 = grid_point(order[t]);
        } else {
            std::mt19937_64 rng(task_seed(cfg.seed, key, t));
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            x0.resize(dims);
            for (int i = 0; i < n; ++i) x0[i] = lo[i] + (hi[i] - lo[i]) * u01(rng);
            for (int i = 0; i < n; ++i) x0[n + i] = 2.0 * std::numbers::pi * u01(rng);
        }
        const LocalResult r = refine_critical(obj, x0, ropt);
        results[t] = {r.value, r.x};
    });

    int accepted = -1;
    for (int t = 0; t < total; ++t) {
        min_seen = std::min(min_seen, results[t].residual);
        if (accepted < 0 && results[t].residual < cfg.tol_accept) accepted = t;
    }
    verdict.starts = total;
    verdict.min_residual_seen = min_seen;
    if (accepted >= 0) {
        const ComplexVector z = obj.point(results[accepted].x);
        const LambdaFit fit = lambda_fit(wirtinger_gradient(f, z), IndexSet::full(n));
        verdict.status = FaceStatus::critical_point_found;
        verdict.witness = CriticalityWitness{z, fit.lambda, results[accepted].residual, fit.residual};
    } else {
        verdict.status = FaceStatus::no_critical_point_found;
        verdict.low_margin = min_seen < cfg.tol_floor;
    }
    return verdict;
}

NondegeneracyReport check_strong_nondegeneracy(const MixedPolynomial& f, const SearchConfig& cfg, int dim_cap) {
    cfg.validate();
    const NcBoundary boundary = enumerate_nc_boundary(f, dim_cap);
    NondegeneracyReport report;
    for (const auto& face : boundary.compact_faces) {
        const MixedPolynomial fd = face_function(f, face);
        FaceVerdict v;
        if (cfg.use_monomial_rule && fd.size() == 1) {
            const auto m = monomial_rule(fd);
            v.face_function = fd;
            v.status = m.status;
            v.min_residual_seen = m.status == FaceStatus::proven_degenerate ? 0.0 : 1.0;
            if (m.status == FaceStatus::proven_degenerate) {
                const ComplexVector z(f.dim(), Complex(1.0, 0.0));
                v.witness = CriticalityWitness{z, m.lambda, criticality_residual(fd, z),
                                               lambda_fit(wirtinger_gradient(fd, z), IndexSet::full(f.dim())).residual};
            }
        } else {
            v = search_torus_critical_points(fd, cfg, face.weight);
        }
        v.face = face;
        report.worst = std::max(report.worst, v.status);
        report.passes = report.passes && passes(v.status);
        report.faces.push_back(std::move(v));
    }
    return report;
}

}  // namespace mixsing
