#include "mixsing/tameness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mixsing/torus_search.hpp"

namespace mixsing {

namespace {

constexpr double kShellEps = 1e-6;
constexpr double kMinCoordinate = 1e-6;  // relative to r

double radical_inverse(int base, long long i) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// Unit direction in ℂ^m from the k-th Halton point: m moduli (normalized) and m phases.
ComplexVector halton_direction(int m, long long k, double phase_offset) {
    ComplexVector u(m);
    double norm = 0.0;
    std::vector<double> mod(m, 1.0);
    for (int j = 1; j < m; ++j) mod[j] = 0.1 + radical_inverse(kPrimes[(2 * j) % 16], k + 1);
    for (double a : mod) norm += a * a;
    norm = std::sqrt(norm);
    for (int j = 0; j < m; ++j) {
        const double phase = 2.0 * std::numbers::pi * radical_inverse(kPrimes[(2 * j + 1) % 16], k + 1) + phase_offset;
        u[j] = std::polar(mod[j] / norm, phase);
    }
    return u;
}

}  // namespace

std::vector<double> TamenessConfig::default_radius_grid() {
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double r = 0.1 * std::pow(1.25, k);
        if (r >= 10.0) break;
        grid.push_back(r);
    }
    grid.push_back(10.0);
    return grid;
}

void TamenessConfig::validate() const {
    if (radius_grid.empty()) throw std::invalid_argument("empty radius grid");
    for (std::size_t i = 0; i < radius_grid.size(); ++i) {
        if (!(radius_grid[i] > 0.0)) throw std::invalid_argument("radii must be positive");
        if (i && !(radius_grid[i] > radius_grid[i - 1])) throw std::invalid_argument("radii must increase");
    }
    if (sphere_samples < 8) throw std::invalid_argument("sphere_samples must be at least 8");
    if (z_starts < 1) throw std::invalid_argument("z_starts must be positive");
    if (bisection_iters < 0) throw std::invalid_argument("bisection_iters must be non-negative");
    inner.validate();
}

MixedPolynomial restrict_face_slice(const MixedPolynomial& f_delta, IndexSet I, std::span<const Complex> u) {
    const auto fixed = I.members();
    if (u.size() != fixed.size()) throw std::invalid_argument("slice needs one value per fixed coordinate");
    for (const auto& c : u)
        if (c == Complex(0.0, 0.0)) throw std::invalid_argument("slice values must be non-zero");
    const IndexSet rest = I.complement(f_delta.dim());
    const auto keep = rest.members();
    MixedPolynomial out(static_cast<int>(keep.size()));
    for (const auto& [key, c] : f_delta.terms()) {
        Complex coeff = c;
        for (std::size_t j = 0; j < fixed.size(); ++j) {
            const int i = fixed[j];
            for (int e = 0; e < key.nu[i]; ++e) coeff *= u[j];
            for (int e = 0; e < key.mu[i]; ++e) coeff *= std::conj(u[j]);
        }
        Exponents nu(keep.size()), mu(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) {
            nu[j] = key.nu[keep[j]];
            mu[j] = key.mu[keep[j]];
        }
        out.add_term(coeff, std::move(nu), std::move(mu));
    }
    return out;
}

std::optional<TamenessWitness> probe_radius(const MixedPolynomial& f_delta, const Face& face, double r,
                                            const TamenessConfig& cfg) {
    if (face.direction.empty()) throw std::invalid_argument("tameness probe needs a non-compact face");
    if (!(r > 0.0)) throw std::invalid_argument("probe radius must be positive");
    const int n = f_delta.dim();
    const IndexSet I = face.direction;
    const IndexSet J = I.complement(n);
    const auto fixed = I.members();
    const int m = static_cast<int>(fixed.size());
    const SearchConfig& inner = cfg.inner;

    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        if (I.contains(i)) {
            lo[i] = std::log(kMinCoordinate * r);
            hi[i] = std::log(r);
        } else {
            lo[i] = std::log(inner.r_min / inner.r_max);
            hi[i] = 0.0;
        }
    }
    // Weighted homogeneity in the free variables (w_i = 0 exactly on I) lets
    // us normalize z; the u block is kept inside the ball ‖u‖ ≤ r(1 − ε).
    const auto homogeneous = homogeneous_projection(face.weight.values(), lo, hi);
    const double cap = std::log(r * (1.0 - kShellEps));
    auto project = [&](Vec& x) {
        homogeneous(x);
        double s = 0.0;
        for (int i : fixed) s += std::exp(2.0 * x[i]);
        const double excess = 0.5 * std::log(s) - cap;
        if (excess > 0.0)
            for (int i : fixed) x[i] = std::max(x[i] - excess, lo[i]);
    };

    const TorusObjective obj(f_delta, J);
    const std::uint64_t key = stable_hash(to_string(f_delta));
    const double shells[] = {1.0 - kShellEps, 2.0 / 3.0, 1.0 / 3.0};
    const int per_shell = cfg.sphere_samples * cfg.z_starts;
    const int total = 3 * per_shell;
    std::vector<LocalResult> results(total);
    RefineOptions ropt;
    ropt.lm_iters = inner.max_refine_iters;
    ropt.nelder_mead_evals = 40 * n;
    ropt.project = project;

    for_each_task(static_cast<std::size_t>(total), inner.policy, [&](std::size_t t) {
        const int shell = static_cast<int>(t) / per_shell;
        const int sample = (static_cast<int>(t) % per_shell) / cfg.z_starts;
        const ComplexVector dir = halton_direction(m, sample, cfg.phase_offset);
        Vec x0(2 * n);
        for (int j = 0; j < m; ++j) {
            x0[fixed[j]] = std::log(std::abs(dir[j]) * r * shells[shell]);
            x0[n + fixed[j]] = std::arg(dir[j]);
        }
        // z starts depend only on (seed, face, sample, start), not on r or the
        // shell, so the sampling is nested across the radius grid.
        std::mt19937_64 rng(task_seed(inner.seed, key, static_cast<std::uint64_t>(t % per_shell)));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i : J.members()) {
            x0[i] = lo[i] + (hi[i] - lo[i]) * u01(rng);
            x0[n + i] = 2.0 * std::numbers::pi * u01(rng);
        }
        results[t] = refine_critical(obj, x0, ropt);
    });

    for (int t = 0; t < total; ++t) {
        if (!(results[t].value < inner.tol_accept)) continue;
        const ComplexVector z = obj.point(results[t].x);
        const LambdaFit fit = lambda_fit(obj.gradient(z), J);
        return TamenessWitness{r, z, CriticalityWitness{z, fit.lambda, results[t].value, fit.residual}};
    }
    return std::nullopt;
}

FaceTamenessReport estimate_radius(const MixedPolynomial& f_delta, const Face& face, const TamenessConfig& cfg) {
    cfg.validate();
    FaceTamenessReport report;
    report.face = face;
    report.face_function = f_delta;
    double clean = 0.0;
    for (double r : cfg.radius_grid) {
        auto w = probe_radius(f_delta, face, r, cfg);
        if (!w) {
            clean = r;
            continue;
        }
        // Bisection between the last clean radius and the failing one.
        double lo = clean, hi = r;
        for (int k = 0; k < cfg.bisection_iters; ++k) {
            const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
            auto wm = probe_radius(f_delta, face, mid, cfg);
            if (wm) {
                hi = mid;
                w = std::move(wm);
            } else {
                lo = mid;
            }
        }
        report.status = TameStatus::failure_at;
        report.r_lower = lo;
        report.first_failure = std::move(w);
        return report;
    }
    report.status = TameStatus::tame_up_to;
    report.r_lower = clean;
    return report;
}

TamenessSummary tameness_summary(const MixedPolynomial& f, const TamenessConfig& cfg, int dim_cap) {
    cfg.validate();
    const NcBoundary boundary = enumerate_nc_boundary(f, dim_cap);
    TamenessSummary summary;
    for (const auto& face : boundary.essential_noncompact) {
        auto report = estimate_radius(face_function(f, face), face, cfg);
        const double est = report.estimate();
        auto [it, inserted] = summary.per_I.emplace(face.direction, est);
        if (!inserted) it->second = std::min(it->second, est);
        summary.faces.push_back(std::move(report));
    }
    for (const auto& [I, r] : summary.per_I) summary.r_nc = std::min(summary.r_nc, r);
    return summary;
}

}  // namespace mixsing
