#include "mixsing/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mixsing/newton.hpp"

namespace mixsing {

std::string to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::pass: return "PASS";
        case ProbeVerdict::fail: return "FAIL";
        case ProbeVerdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string to_string(SpotMode m) { return m == SpotMode::smoothness ? "SMOOTHNESS" : "NEARBY_FIBRES"; }

void ProbeConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("need 1 <= k_min <= k_max");
    if (monotone_from < k_min || monotone_from > k_max) throw std::invalid_argument("monotone_from outside [k_min, k_max]");
    if (truncation < 0) throw std::invalid_argument("truncation must be non-negative");
}

void SpotcheckConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    if (newton_starts < 1 || lines_per_sample < 1) throw std::invalid_argument("newton_starts and lines_per_sample must be positive");
    if (!(crit_threshold > 0.0) || !(sphere_threshold > 0.0)) throw std::invalid_argument("thresholds must be positive");
}

namespace {

double real_dot(const ComplexVector& a, const ComplexVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

double norm(const ComplexVector& a) { return std::sqrt(real_dot(a, a)); }

// Orthonormal basis (real inner product) of span_ℝ of the inputs.
std::vector<ComplexVector> real_basis(const std::vector<ComplexVector>& vs, double rel = 1e-12) {
    double scale = 0.0;
    for (const auto& v : vs) scale = std::max(scale, norm(v));
    std::vector<ComplexVector> basis;
    if (scale == 0.0) return basis;
    for (ComplexVector v : vs) {
        for (auto& x : v) x /= scale;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) {
                const double c = real_dot(e, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
            }
        const double nv = norm(v);
        if (nv <= rel) continue;
        for (auto& x : v) x /= nv;
        basis.push_back(std::move(v));
    }
    return basis;
}

double projection_norm(const std::vector<ComplexVector>& basis, const ComplexVector& v) {
    double s = 0.0;
    for (const auto& e : basis) {
        const double c = real_dot(e, v);
        s += c * c;
    }
    return std::sqrt(s);
}

void gradient_vectors(const WirtingerPair& grad, ComplexVector& a, ComplexVector& b, IndexSet keep, int dim) {
    a.assign(dim, Complex(0.0, 0.0));
    b.assign(dim, Complex(0.0, 0.0));
    for (int i = 0; i < dim; ++i) {
        if (!keep.contains(i)) continue;
        const Complex cz = std::conj(grad.dz[i]);
        a[i] = 0.5 * (grad.dzbar[i] + cz);
        b[i] = Complex(0.0, -0.5) * (grad.dzbar[i] - cz);
    }
}

bool on_variety(const MixedPolynomial& f, const Arc& arc, int trunc) {
    const TruncatedSeries v = compose(f, arc_series(arc, true, trunc));
    return v.is_zero();
}

bool decreasing(const std::vector<std::pair<int, double>>& numeric, int from) {
    for (std::size_t i = 0; i + 1 < numeric.size(); ++i) {
        if (numeric[i].first < from) continue;
        if (numeric[i + 1].second > 2.0 * numeric[i].second + 1e-12) return false;
    }
    return true;
}

void decide(LimitReport& r, const ProbeConfig& cfg) {
    r.decreasing = decreasing(r.numeric, cfg.monotone_from);
    const double finest = r.numeric.empty() ? 1.0 : r.numeric.back().second;
    if (r.containment_residual >= cfg.tol) {
        r.verdict = ProbeVerdict::fail;
    } else if (finest >= cfg.tol || std::abs(finest - r.containment_residual) > cfg.tol) {
        r.verdict = ProbeVerdict::inconclusive;
        r.note = "series limit and numeric sampling disagree";
    } else {
        r.verdict = ProbeVerdict::pass;
    }
}

template <class Residual>
std::vector<std::pair<int, double>> sample_numeric(const ProbeConfig& cfg, Residual&& residual) {
    const int count = cfg.k_max - cfg.k_min + 1;
    std::vector<std::pair<int, double>> out(count);
    for_each_task(static_cast<std::size_t>(count), cfg.policy, [&](std::size_t j) {
        const int k = cfg.k_min + static_cast<int>(j);
        out[j] = {k, residual(std::ldexp(1.0, -k))};
    });
    return out;
}

// Runs the reduction and fills the series part of the report; false when inconclusive.
bool series_limits(const FamilyPolynomial& F, const Arc& arc, int trunc, IndexSet skip, const ProbeConfig& cfg,
                   LimitReport& r) {
    const GradientSeries gs = gradient_series(F.joint(), arc_series(arc, true, trunc));
    ReductionResult red;
    try {
        red = whitney_reduction(gs.v_g, gs.v_h, skip);
    } catch (const std::domain_error& e) {
        r.verdict = ProbeVerdict::inconclusive;
        r.note = e.what();
        return false;
    }
    r.g = red.g;
    r.h = red.h;
    r.swapped = red.swapped;
    r.reduction_steps = red.steps;
    r.trace = red.trace;
    if (!red.converged) {
        r.verdict = ProbeVerdict::inconclusive;
        r.note = red.note;
        return false;
    }
    r.limit_g = leading_vector(red.v_g, red.g.order, skip);
    r.limit_h = leading_vector(red.v_h, red.h.order, skip);
    if (cfg.perturb_limits) cfg.perturb_limits(r.limit_g, r.limit_h);
    return true;
}

}  // namespace

LimitReport check_whitney_b(const FamilyPolynomial& F, const Arc& p, const Arc& q, const ProbeConfig& cfg) {
    cfg.validate();
    if (p.n() != F.n() || q.n() != F.n()) throw std::invalid_argument("arc and family dimensions differ");
    const MixedPolynomial& f = F.joint();
    const int dim = f.dim();
    const int trunc = cfg.truncation > 0 ? cfg.truncation
                                         : std::max(default_truncation(f, q, true), default_truncation(f, p, true));
    if (!on_variety(f, q, trunc)) throw std::invalid_argument("q arc does not lie on V(f)");
    if (!on_variety(f, p, trunc)) throw std::invalid_argument("p arc does not lie on V(f)");

    IndexSet mask = IndexSet::of({0});
    for (int j : q.z_support().members()) mask.insert(j + 1);
    const IndexSet skip = mask.complement(dim);

    LimitReport r;
    // ℓ(s) = q(s) − p(s) and its limit direction.
    SeriesVector ell;
    const SeriesVector ps = arc_series(p, true, trunc), qs = arc_series(q, true, trunc);
    for (int i = 0; i < dim; ++i) ell.push_back(qs[i] - ps[i]);
    const OrderInfo lo = order_and_essential_index(ell);
    r.limit_direction = leading_vector(ell, lo.order);
    const double ln = norm(r.limit_direction);
    for (auto& x : r.limit_direction) x /= ln;

    auto containment = [&](const std::vector<ComplexVector>& basis, const ComplexVector& l) {
        double outside = 0.0;
        for (int i = 0; i < dim; ++i)
            if (!mask.contains(i)) outside += std::norm(l[i]);
        const double inside = projection_norm(basis, l);
        return std::sqrt(inside * inside + outside);
    };

    if (!series_limits(F, q, trunc, skip, cfg, r)) return r;
    r.containment_residual = containment(real_basis({r.limit_g, r.limit_h}), r.limit_direction);

    r.numeric = sample_numeric(cfg, [&](double s) {
        const ComplexVector qp = q.point(s), pp = p.point(s);
        ComplexVector l(dim);
        for (int i = 0; i < dim; ++i) l[i] = qp[i] - pp[i];
        const double nl = norm(l);
        for (auto& x : l) x /= nl;
        ComplexVector a, b;
        gradient_vectors(wirtinger_gradient(f, qp), a, b, mask, dim);
        return containment(real_basis({a, b}), l);
    });
    decide(r, cfg);
    return r;
}

LimitReport check_thom_af(const FamilyPolynomial& F, const Arc& arc, const StratumDescriptor& stratum,
                          const ProbeConfig& cfg) {
    cfg.validate();
    if (arc.n() != F.n()) throw std::invalid_argument("arc and family dimensions differ");
    const MixedPolynomial& f = F.joint();
    const int dim = f.dim();
    const int trunc = cfg.truncation > 0 ? cfg.truncation : default_truncation(f, arc, true);

    const ComplexVector x0 = arc.point(0.0);
    for (int i = 0; i < F.n(); ++i)
        if (!stratum.I.contains(i) && x0[i + 1] != Complex(0.0, 0.0))
            throw std::invalid_argument("arc(0) is not on the closure of the stratum");
    for (int k = cfg.k_min; k <= cfg.k_max; ++k)
        if (criticality_residual(f, arc.point(std::ldexp(1.0, -k))) < 1e-8)
            throw std::invalid_argument("arc meets the critical set of f");

    // Tangent space of the stratum at arc(0).
    IndexSet mask = IndexSet::of({0});
    for (int i : stratum.I.members()) mask.insert(i + 1);
    std::vector<ComplexVector> coordinate;
    for (int i : mask.members()) {
        ComplexVector e(dim, Complex(0.0, 0.0));
        e[i] = 1.0;
        coordinate.push_back(e);
        e[i] = Complex(0.0, 1.0);
        coordinate.push_back(e);
    }
    std::vector<ComplexVector> tangent;
    if (stratum.kind == StratumKind::A) {
        if (std::abs(evaluate(f, x0)) > 1e-12) throw std::invalid_argument("arc(0) is not on V(f)");
        ComplexVector a, b;
        gradient_vectors(wirtinger_gradient(f, x0), a, b, mask, dim);
        const auto normal = real_basis({a, b});
        if (normal.size() < 2) throw std::invalid_argument("arc(0) is a singular point of the stratum");
        std::vector<ComplexVector> projected;
        for (auto e : coordinate) {
            for (const auto& nvec : normal) {
                const double c = real_dot(nvec, e);
                for (int i = 0; i < dim; ++i) e[i] -= c * nvec[i];
            }
            projected.push_back(std::move(e));
        }
        tangent = real_basis(projected, 1e-9);
    } else {
        tangent = coordinate;
    }

    auto containment = [&](const std::vector<ComplexVector>& basis) {
        double worst = 0.0;
        for (const auto& e : tangent) worst = std::max(worst, projection_norm(basis, e));
        return worst;
    };

    LimitReport r;
    if (!series_limits(F, arc, trunc, IndexSet{}, cfg, r)) return r;
    r.containment_residual = containment(real_basis({r.limit_g, r.limit_h}));
    r.numeric = sample_numeric(cfg, [&](double s) {
        ComplexVector a, b;
        gradient_vectors(wirtinger_gradient(f, arc.point(s)), a, b, IndexSet::full(dim), dim);
        return containment(real_basis({a, b}));
    });
    decide(r, cfg);
    return r;
}

double sphere_residual_unchecked(const WirtingerPair& grad, std::span<const Complex> p) {
    const int dim = static_cast<int>(p.size());
    ComplexVector a, b;
    gradient_vectors(grad, a, b, IndexSet::full(dim), dim);
    const ComplexVector pv(p.begin(), p.end());
    const double np = norm(pv);
    if (np == 0.0) throw std::invalid_argument("sphere residual at the origin");
    const auto basis = real_basis({a, b});
    const double along = projection_norm(basis, pv) / np;
    return std::sqrt(std::max(0.0, 1.0 - along * along));
}

namespace {

double term_scale(const MixedPolynomial& f, std::span<const Complex> z) {
    double s = 0.0;
    for (const auto& [key, c] : f.terms()) {
        double m = std::abs(c);
        for (int i = 0; i < f.dim(); ++i) m *= std::pow(std::abs(z[i]), key.nu[i] + key.mu[i]);
        s += m;
    }
    return s;
}

}  // namespace

double sphere_transversality_residual(const MixedPolynomial& f, std::span<const Complex> p) {
    if (std::abs(evaluate(f, p)) > 1e-9 * std::max(term_scale(f, p), 1e-300))
        throw std::invalid_argument("point is not on V(f)");
    if (criticality_residual(f, p) < 1e-10) throw std::invalid_argument("point is mixed singular");
    return sphere_residual_unchecked(wirtinger_gradient(f, p), p);
}

double euler_residual(const MixedPolynomial& f, const WeightVector& w, std::span<const Complex> z) {
    if (w.dim() != f.dim()) throw std::invalid_argument("weight and polynomial dimensions differ");
    long long d = 0;
    if (!is_radially_homogeneous(f, w, &d)) throw std::invalid_argument("polynomial is not radially homogeneous for w");
    const WirtingerPair grad = wirtinger_gradient(f, z);
    Complex euler(0.0, 0.0);
    for (int i = 0; i < f.dim(); ++i)
        euler += static_cast<double>(w[i]) * (z[i] * grad.dz[i] + std::conj(z[i]) * grad.dzbar[i]);
    const double num = std::abs(static_cast<double>(d) * evaluate(f, z) - euler);
    const double scale = static_cast<double>(d) * term_scale(f, z);
    return scale > 0.0 ? num / scale : num;
}

namespace {

struct LineRoot {
    bool found = false;
    ComplexVector z;
};

// Solves g(a + λb) = η for λ ∈ ℂ by damped Gauss–Newton in (Re λ, Im λ).
LineRoot solve_on_line(const CompiledPoly& g, const ComplexVector& a, const ComplexVector& b, Complex eta,
                       Complex lambda, double radius) {
    const int m = static_cast<int>(a.size());
    ComplexVector z(m);
    WirtingerPair grad;
    auto point = [&](Complex l) {
        for (int i = 0; i < m; ++i) z[i] = a[i] + l * b[i];
    };
    for (int it = 0; it < 60; ++it) {
        point(lambda);
        g.gradient(z, grad);
        const Complex phi = g.value(z) - eta;
        double scale = std::abs(eta);
        for (int i = 0; i < m; ++i) scale += std::abs(z[i]) * (std::abs(grad.dz[i]) + std::abs(grad.dzbar[i]));
        if (std::abs(phi) <= 1e-13 * std::max(scale, 1e-300)) {
            double nz = 0.0;
            for (const auto& x : z) nz += std::norm(x);
            if (std::sqrt(nz) >= radius) return {};
            for (const auto& x : z)
                if (std::abs(x) <= 1e-9 * radius) return {};
            return {true, z};
        }
        Complex A(0.0, 0.0), B(0.0, 0.0);
        for (int i = 0; i < m; ++i) {
            A += b[i] * grad.dz[i];
            B += std::conj(b[i]) * grad.dzbar[i];
        }
        // dφ = (A + B)dx + i(A − B)dy.
        const Complex cx = A + B, cy = Complex(0.0, 1.0) * (A - B);
        const double j00 = cx.real(), j01 = cy.real(), j10 = cx.imag(), j11 = cy.imag();
        const double n00 = j00 * j00 + j10 * j10, n01 = j00 * j01 + j10 * j11, n11 = j01 * j01 + j11 * j11;
        const double damp = 1e-14 * (n00 + n11) + 1e-300;
        const double r0 = j00 * phi.real() + j10 * phi.imag(), r1 = j01 * phi.real() + j11 * phi.imag();
        const double det = (n00 + damp) * (n11 + damp) - n01 * n01;
        if (!(det > 0.0)) return {};
        const double dx = -((n11 + damp) * r0 - n01 * r1) / det;
        const double dy = -((n00 + damp) * r1 - n01 * r0) / det;
        lambda += Complex(dx, dy);
        if (!std::isfinite(lambda.real()) || std::abs(lambda) > 1e6 * radius) return {};
    }
    return {};
}

ComplexVector random_ball_point(std::mt19937_64& rng, int m, double radius) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    ComplexVector v(m);
    double s = 0.0;
    for (auto& x : v) {
        x = Complex(gauss(rng), gauss(rng));
        s += std::norm(x);
    }
    const double r = radius * std::pow(u01(rng), 1.0 / (2.0 * m)) / std::sqrt(s);
    for (auto& x : v) x *= r;
    return v;
}

}  // namespace

SpotcheckReport spotcheck_regularity(const FamilyPolynomial& F, SpotMode mode, const SpotRegion& region,
                                     const SpotcheckConfig& cfg) {
    cfg.validate();
    if (!(region.radius > 0.0) || region.t_max < 0.0) throw std::invalid_argument("invalid spot-check region");
    if (mode == SpotMode::nearby_fibres && !(region.eta_min > 0.0 && region.eta_min <= region.eta_max))
        throw std::invalid_argument("need 0 < eta_min <= eta_max");
    SpotcheckReport report;
    report.mode = mode;
    std::vector<IndexSet> strata;
    for (IndexSet I : classify_subspaces(specialize(F, 0.0)).nonvanishing)
        if (!I.empty()) strata.push_back(I);
    if (strata.empty()) {
        report.notes.push_back("no non-vanishing coordinate subspace");
        return report;
    }
    const std::uint64_t key = stable_hash(to_string(F)) ^ static_cast<std::uint64_t>(mode);
    std::vector<std::optional<SpotPoint>> found(cfg.samples);
    std::vector<int> lines(cfg.samples, 0);
    for_each_task(static_cast<std::size_t>(cfg.samples), cfg.policy, [&](std::size_t j) {
        std::mt19937_64 rng(task_seed(cfg.seed, key, j));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const IndexSet I = strata[j % strata.size()];
        const int m = I.size();
        const Complex t = std::polar(region.t_max * std::sqrt(u01(rng)), 2.0 * std::numbers::pi * u01(rng));
        Complex eta(0.0, 0.0);
        if (mode == SpotMode::nearby_fibres) {
            const double mag = region.eta_min * std::pow(region.eta_max / region.eta_min, u01(rng));
            // Phases cycle through 0, π/2, π, 3π/2 so real-valued members are hit too.
            eta = std::polar(mag, 0.5 * std::numbers::pi * static_cast<double>((j / strata.size()) % 4));
        }
        const MixedPolynomial g = compact_variables(restrict_to(specialize(F, t), I), I);
        const CompiledPoly cg(g);
        // Fresh lines until one meets the fibre inside the ball.
        for (int line = 0; line < cfg.lines_per_sample; ++line) {
            ++lines[j];
            const ComplexVector a = random_ball_point(rng, m, 0.5 * region.radius);
            ComplexVector b = random_ball_point(rng, m, 1.0);
            double nb = 0.0;
            for (const auto& x : b) nb += std::norm(x);
            for (auto& x : b) x /= std::sqrt(nb);
            for (int s = 0; s < cfg.newton_starts; ++s) {
                const Complex l0 = std::polar(region.radius * std::sqrt(u01(rng)), 2.0 * std::numbers::pi * u01(rng));
                const LineRoot root = solve_on_line(cg, a, b, eta, l0, region.radius);
                if (!root.found) continue;
                SpotPoint pt;
                pt.I = I;
                pt.t = t;
                pt.eta = eta;
                pt.z.assign(F.n(), Complex(0.0, 0.0));
                const auto members = I.members();
                for (int i = 0; i < m; ++i) pt.z[members[i]] = root.z[i];
                const WirtingerPair grad = wirtinger_gradient(g, root.z);
                const RealGradientRows rows = real_gradient_rows(grad, IndexSet::full(m));
                pt.crit = sigma_ratio(rows.dg, rows.dh);
                pt.sphere = sphere_residual_unchecked(grad, root.z);
                found[j] = std::move(pt);
                return;
            }
        }
    });
    for (int c : lines) report.attempted += c;
    for (auto& pt : found) {
        if (!pt) continue;
        ++report.found;
        if (pt->crit < report.min_crit) {
            report.min_crit = pt->crit;
            report.worst_crit = pt;
        }
        if (pt->crit >= cfg.crit_threshold && pt->sphere < report.min_sphere) {
            report.min_sphere = pt->sphere;
            report.worst_sphere = pt;
        }
    }
    if (report.found == 0) report.notes.push_back("no V-points found on sampled lines");
    report.counterexample_candidate =
        report.found > 0 && (report.min_crit < cfg.crit_threshold || report.min_sphere < cfg.sphere_threshold);
    return report;
}

}  // namespace mixsing
