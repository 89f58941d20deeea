#include "mixsing/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mixsing/parser.hpp"
#include "mixsing/probe.hpp"

namespace mixsing {

FamilyPolynomial::FamilyPolynomial(MixedPolynomial joint) : joint_(std::move(joint)) {
    if (joint_.dim() < 2) throw std::invalid_argument("a family needs t and at least one z variable");
    for (const auto& [key, c] : joint_.terms())
        if (key.mu[0] != 0) throw std::invalid_argument("a family must not depend on conj(t)");
}

FamilyPolynomial FamilyPolynomial::constant(const MixedPolynomial& f) {
    MixedPolynomial joint(f.dim() + 1);
    for (const auto& [key, c] : f.terms()) {
        Exponents nu{0}, mu{0};
        nu.insert(nu.end(), key.nu.begin(), key.nu.end());
        mu.insert(mu.end(), key.mu.begin(), key.mu.end());
        joint.add_term(c, std::move(nu), std::move(mu));
    }
    return FamilyPolynomial(std::move(joint));
}

int FamilyPolynomial::t_degree() const {
    int d = 0;
    for (const auto& [key, c] : joint_.terms()) d = std::max(d, key.nu[0]);
    return d;
}

bool FamilyPolynomial::is_holomorphic() const {
    for (const auto& [key, c] : joint_.terms())
        for (int e : key.mu)
            if (e != 0) return false;
    return true;
}

std::vector<Complex> FamilyPolynomial::coefficient_poly(const MonomialKey& key) const {
    if (static_cast<int>(key.nu.size()) != n() || static_cast<int>(key.mu.size()) != n())
        throw std::invalid_argument("monomial key has the wrong length");
    std::vector<Complex> out;
    for (const auto& [k, c] : joint_.terms()) {
        if (!std::equal(key.nu.begin(), key.nu.end(), k.nu.begin() + 1) ||
            !std::equal(key.mu.begin(), key.mu.end(), k.mu.begin() + 1))
            continue;
        if (static_cast<int>(out.size()) <= k.nu[0]) out.resize(k.nu[0] + 1, Complex(0.0, 0.0));
        out[k.nu[0]] = c;
    }
    return out;
}

FamilyPolynomial parse_family(std::string_view text, int n) { return FamilyPolynomial(parse_polynomial(text, n, true)); }

std::string to_string(const FamilyPolynomial& F) { return to_string(F.joint(), true); }

MixedPolynomial specialize(const FamilyPolynomial& F, Complex t) {
    // Sums below the rounding error of Σ|c||t|^k count as exact cancellation,
    // so sampled roots of a coefficient (e.g. 1 + t at t = −1) drop the term.
    constexpr double kRoundoff = 8.0 * std::numeric_limits<double>::epsilon();
    std::map<MonomialKey, std::pair<Complex, double>> acc;
    for (const auto& [key, c] : F.joint().terms()) {
        Complex coeff = c;
        for (int e = 0; e < key.nu[0]; ++e) coeff *= t;
        MonomialKey k{Exponents(key.nu.begin() + 1, key.nu.end()), Exponents(key.mu.begin() + 1, key.mu.end())};
        auto& [sum, scale] = acc[k];
        sum += coeff;
        scale += std::abs(coeff);
    }
    MixedPolynomial out(F.n());
    for (const auto& [key, v] : acc)
        if (std::abs(v.first) > kRoundoff * v.second) out.add_term(v.first, key.nu, key.mu);
    return out;
}

void TSamplingPolicy::validate() const {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (rings < 1 || angles_per_ring < 1) throw std::invalid_argument("rings and angles must be positive");
}

std::vector<Complex> TSamplingPolicy::samples() const {
    validate();
    std::vector<std::pair<std::pair<double, int>, Complex>> keyed;
    if (include_zero) keyed.push_back({{0.0, 0}, Complex(0.0, 0.0)});
    for (int k = 0; k < rings; ++k) {
        const double r = std::ldexp(t_max, -k);
        for (int j = 0; j < angles_per_ring; ++j)
            keyed.push_back({{r, j}, std::polar(r, 2.0 * std::numbers::pi * j / angles_per_ring)});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Complex> out;
    for (const auto& [k, t] : keyed) out.push_back(t);
    return out;
}

namespace {

std::string t_string(Complex t) {
    std::ostringstream os;
    os.precision(6);
    os << "t=" << t.real() << (std::signbit(t.imag()) ? "-" : "+") << std::abs(t.imag()) << "i";
    return os.str();
}

struct NewtonSnapshot {
    std::vector<LatticePoint> vertices;
    std::vector<std::vector<LatticePoint>> compact;  // vertex sets
    std::vector<std::pair<std::vector<LatticePoint>, IndexSet>> essential;

    bool operator==(const NewtonSnapshot&) const = default;
};

NewtonSnapshot snapshot(const MixedPolynomial& f) {
    NewtonSnapshot s;
    const NcBoundary b = enumerate_nc_boundary(f);
    s.vertices = build_polyhedron(f).vertices;
    auto vertex_set = [&](const Face& face) {
        std::vector<LatticePoint> out;
        for (const auto& p : face.points)
            if (std::binary_search(s.vertices.begin(), s.vertices.end(), p)) out.push_back(p);
        return out;
    };
    for (const auto& face : b.compact_faces) s.compact.push_back(vertex_set(face));
    for (const auto& face : b.essential_noncompact) s.essential.push_back({vertex_set(face), face.direction});
    std::sort(s.compact.begin(), s.compact.end());
    std::sort(s.essential.begin(), s.essential.end());
    return s;
}

}  // namespace

ConstancyReport check_newton_constancy(const FamilyPolynomial& F, const TSamplingPolicy& policy) {
    ConstancyReport report;
    const MixedPolynomial f0 = specialize(F, 0.0);
    if (f0.is_zero()) {
        report.constant = false;
        report.offending_t = Complex(0.0, 0.0);
        report.diagnostics.push_back("f_0 is identically zero");
        return report;
    }
    const NewtonSnapshot base = snapshot(f0);
    for (Complex t : policy.samples()) {
        const MixedPolynomial ft = specialize(F, t);
        if (ft.is_zero()) {
            report.constant = false;
            report.offending_t = t;
            report.diagnostics.push_back("f_t vanishes identically at " + t_string(t));
            return report;
        }
        const NewtonSnapshot s = snapshot(ft);
        if (s == base) continue;
        report.constant = false;
        report.offending_t = t;
        std::string what = s.vertices != base.vertices   ? "vertex set"
                           : s.compact != base.compact ? "compact faces"
                                                       : "essential faces";
        report.diagnostics.push_back(what + " of Gamma_+(f_t) differs from f_0 at " + t_string(t));
        return report;
    }
    return report;
}

void AdmissibilityConfig::validate() const {
    sampling.validate();
    search.validate();
    tameness.validate();
    if (smoothness_samples < 1) throw std::invalid_argument("smoothness_samples must be positive");
}

std::string to_string(AdmissibilityVerdict v) {
    return v == AdmissibilityVerdict::numerically_admissible ? "NUMERICALLY_ADMISSIBLE" : "FAILED";
}

AdmissibilityReport check_admissibility(const FamilyPolynomial& F, double rho, const AdmissibilityConfig& cfg) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    cfg.validate();
    AdmissibilityReport report;
    report.rho = rho;
    report.constancy = check_newton_constancy(F, cfg.sampling);

    const std::vector<Complex> ts = cfg.sampling.samples();
    report.per_t.resize(ts.size());
    for_each_task(ts.size(), cfg.search.policy, [&](std::size_t j) {
        MemberReport& m = report.per_t[j];
        m.t = ts[j];
        const MixedPolynomial ft = specialize(F, ts[j]);
        m.convenient = is_convenient(ft);
        m.nondegeneracy = check_strong_nondegeneracy(ft, cfg.search, cfg.dim_cap);
        if (!m.convenient) {
            m.tameness = tameness_summary(ft, cfg.tameness, cfg.dim_cap);
            m.r_nc = m.tameness->r_nc;
        }
    });
    report.tameness_skipped = std::all_of(report.per_t.begin(), report.per_t.end(), [](const MemberReport& m) { return m.convenient; });
    for (const auto& m : report.per_t) report.min_r_nc = std::min(report.min_r_nc, m.r_nc);
    report.uniform_tame = report.min_r_nc >= rho;

    auto fail = [&](std::string reason) {
        if (report.reason.empty()) report.reason = std::move(reason);
    };
    if (!report.constancy.constant)
        fail("Newton boundary not constant: " +
             (report.constancy.diagnostics.empty() ? std::string("?") : report.constancy.diagnostics.front()));
    for (const auto& m : report.per_t)
        if (!m.nondegeneracy.passes) {
            fail("not strongly non-degenerate at " + t_string(m.t) + " (" + to_string(m.nondegeneracy.worst) + ")");
            break;
        }
    if (!report.uniform_tame)
        for (const auto& m : report.per_t)
            if (m.r_nc < rho) {
                std::ostringstream os;
                os << "r_nc estimate " << m.r_nc << " < rho = " << rho << " at " << t_string(m.t);
                fail(os.str());
                break;
            }

    if (cfg.smoothness_check) {
        SpotcheckConfig sc;
        sc.samples = cfg.smoothness_samples;
        sc.seed = cfg.search.seed;
        sc.crit_threshold = cfg.crit_threshold;
        sc.sphere_threshold = cfg.sphere_threshold;
        sc.policy = cfg.search.policy;
        SpotRegion region;
        region.radius = rho;
        region.t_max = cfg.sampling.t_max;
        const SpotcheckReport spot = spotcheck_regularity(F, SpotMode::smoothness, region, sc);
        SmoothnessSummary s;
        s.radius = rho;
        s.points = spot.found;
        s.min_crit = spot.min_crit;
        s.min_sphere = spot.min_sphere;
        s.passed = !spot.counterexample_candidate;
        report.smoothness = s;
        if (!s.passed) {
            std::ostringstream os;
            os << "smoothness spot-check in B_rho: min criticality residual " << s.min_crit
               << ", min sphere residual " << s.min_sphere;
            fail(os.str());
        }
    }
    report.verdict = report.reason.empty() ? AdmissibilityVerdict::numerically_admissible : AdmissibilityVerdict::failed;
    return report;
}

std::string to_string(const StratumDescriptor& s) {
    const char kind = s.kind == StratumKind::A ? 'A' : s.kind == StratumKind::B ? 'B' : 'C';
    return std::string(1, kind) + "_" + s.I.to_string();
}

std::vector<StratumDescriptor> enumerate_strata(const FamilyPolynomial& F) {
    const SubspaceClassification cls = classify_subspaces(specialize(F, 0.0));
    std::vector<StratumDescriptor> out;
    for (IndexSet I : cls.nonvanishing) {
        out.push_back({StratumKind::A, I, false});
        out.push_back({StratumKind::B, I, false});
    }
    for (IndexSet I : cls.vanishing) out.push_back({StratumKind::C, I, I.empty()});
    return out;
}

void CoveringSpec::validate(int n) const {
    if (static_cast<int>(nu.size()) != n || static_cast<int>(mu.size()) != n)
        throw std::invalid_argument("covering exponents must have length n");
    if (delta < 1) throw std::invalid_argument("delta must be positive");
    for (int i = 0; i < n; ++i) {
        if (nu[i] < 1 || mu[i] < 0) throw std::invalid_argument("need nu_i >= 1 and mu_i >= 0");
        if (nu[i] <= mu[i]) throw std::invalid_argument("need nu_i > mu_i");
        if (nu[i] + mu[i] != delta) throw std::invalid_argument("need nu_i + mu_i = delta");
    }
}

MixedPolynomial pullback_covering(const MixedPolynomial& f, const CoveringSpec& spec) {
    const int n = f.dim();
    spec.validate(n);
    MixedPolynomial out(n);
    for (const auto& [key, c] : f.terms()) {
        Exponents nu(n), mu(n);
        for (int i = 0; i < n; ++i) {
            if (key.mu[i] != 0) throw std::invalid_argument("covering pullback needs a holomorphic polynomial");
            nu[i] = key.nu[i] * spec.nu[i];
            mu[i] = key.nu[i] * spec.mu[i];
        }
        out.add_term(c, std::move(nu), std::move(mu));
    }
    return out;
}

FamilyPolynomial pullback_covering(const FamilyPolynomial& F, const CoveringSpec& spec) {
    if (!F.is_holomorphic()) throw std::invalid_argument("covering pullback needs a holomorphic family");
    const int n = F.n();
    spec.validate(n);
    MixedPolynomial out(n + 1);
    for (const auto& [key, c] : F.joint().terms()) {
        Exponents nu(n + 1), mu(n + 1, 0);
        nu[0] = key.nu[0];
        for (int i = 0; i < n; ++i) {
            nu[i + 1] = key.nu[i + 1] * spec.nu[i];
            mu[i + 1] = key.nu[i + 1] * spec.mu[i];
        }
        out.add_term(c, std::move(nu), std::move(mu));
    }
    return FamilyPolynomial(std::move(out));
}

}  // namespace mixsing
