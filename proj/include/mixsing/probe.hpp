// Regularity probes along arcs: Whitney (b) and Thom a_f limits from the
// series machinery with a numeric s → 0 cross-check, sphere transversality,
// the radial Euler identity, and sampled smoothness spot-checks.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixsing/family.hpp"
#include "mixsing/parallel.hpp"
#include "mixsing/series.hpp"

namespace mixsing {

enum class ProbeVerdict { pass, fail, inconclusive };
std::string to_string(ProbeVerdict v);

struct ProbeConfig {
    double tol = 1e-3;
    int truncation = 0;  // 0: d_w + 8 from the arc
    int k_min = 6;       // numeric samples at s = 2^{-k}, k_min ≤ k ≤ k_max
    int k_max = 20;
    int monotone_from = 10;
    /// Test hook: edits the limit vectors (L_g, L_h) before the containment test.
    std::function<void(ComplexVector&, ComplexVector&)> perturb_limits;
    ExecPolicy policy = ExecPolicy::parallel;

    void validate() const;
};

struct LimitReport {
    OrderInfo g, h;  // after the √−1 swap and the reduction
    int reduction_steps = 0;
    bool swapped = false;
    std::vector<ReductionStep> trace;
    ComplexVector limit_g, limit_h;  // (∂̄g)_∞ and (∂̄h)^{(k)}_∞, unnormalized leading coefficients
    ComplexVector limit_direction;   // ℓ_∞ (Whitney) or empty (Thom)
    double containment_residual = 1.0;
    std::vector<std::pair<int, double>> numeric;  // (k, residual at s = 2^{-k})
    bool decreasing = false;
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    std::string note;
};

/// p lies on C_I (I = z-support of p), q on A_J (J = z-support of q, q ⊂ V(f)).
LimitReport check_whitney_b(const FamilyPolynomial& F, const Arc& p, const Arc& q, const ProbeConfig& cfg);

/// Tangent spaces of the fibres V(f − f(arc(s))) against the tangent space of
/// `stratum` at arc(0).
LimitReport check_thom_af(const FamilyPolynomial& F, const Arc& arc, const StratumDescriptor& stratum,
                          const ProbeConfig& cfg);

/// Distance from p to span_ℝ{∂̄g(p), ∂̄h(p)} divided by ‖p‖; 0 means the sphere
/// through p is not transverse to V(f) at p. Throws when p is off V(f) or
/// mixed singular.
double sphere_transversality_residual(const MixedPolynomial& f, std::span<const Complex> p);
/// Same quantity without the preconditions.
double sphere_residual_unchecked(const WirtingerPair& grad, std::span<const Complex> p);

/// |d·f − Σ w_i(z_i ∂_i f + z̄_i ∂̄_i f)| / (d·Σ|terms|). Throws unless f is
/// radially homogeneous for w.
double euler_residual(const MixedPolynomial& f, const WeightVector& w, std::span<const Complex> z);

enum class SpotMode { smoothness, nearby_fibres };
std::string to_string(SpotMode m);

struct SpotRegion {
    double radius = 0.5;  // R, or R′ for nearby fibres
    double t_max = 0.9;
    double eta_min = 1e-3;  // |η| range, nearby fibres only
    double eta_max = 1e-3;
};

struct SpotcheckConfig {
    int samples = 200;  // target number of points
    std::uint64_t seed = 0;
    int lines_per_sample = 8;
    int newton_starts = 6;
    double crit_threshold = 1e-4;
    double sphere_threshold = 1e-5;
    ExecPolicy policy = ExecPolicy::parallel;

    void validate() const;
};

struct SpotPoint {
    IndexSet I;
    Complex t;
    Complex eta;
    ComplexVector z;
    double crit = 1.0;
    double sphere = 1.0;
};

struct SpotcheckReport {
    SpotMode mode = SpotMode::smoothness;
    int attempted = 0;  // lines tried
    int found = 0;
    double min_crit = 1.0;
    double min_sphere = 1.0;  // over points with crit ≥ threshold
    std::optional<SpotPoint> worst_crit, worst_sphere;
    bool counterexample_candidate = false;
    std::vector<std::string> notes;
};

/// Samples V(f_t) ∩ ℂ^{*I} ∩ B_R (or the fibre f_t = η) for I ∈ 𝓘_nv(f₀) by
/// solving f_t = η on random complex lines, and reports the smallest
/// criticality and sphere-transversality residuals.
SpotcheckReport spotcheck_regularity(const FamilyPolynomial& F, SpotMode mode, const SpotRegion& region,
                                     const SpotcheckConfig& cfg);

}  // namespace mixsing
