// One-parameter families f(t, z, z̄): specialization, Newton constancy, the
// numerical admissibility pipeline, strata, and pullback along mixed branched
// coverings z_i ↦ z_i^{ν_i} z̄_i^{μ_i}.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixsing/degeneracy.hpp"
#include "mixsing/tameness.hpp"

namespace mixsing {

/// Stored as a mixed polynomial in n + 1 variables with t at index 0.
/// t̄ never occurs.
class FamilyPolynomial {
public:
    explicit FamilyPolynomial(MixedPolynomial joint);
    static FamilyPolynomial constant(const MixedPolynomial& f);

    int n() const { return joint_.dim() - 1; }
    const MixedPolynomial& joint() const { return joint_; }
    int t_degree() const;
    /// No z̄ in any term.
    bool is_holomorphic() const;
    /// Coefficients of t^0, t^1, ... in front of z^ν z̄^μ (ν, μ of length n).
    std::vector<Complex> coefficient_poly(const MonomialKey& key) const;

    bool operator==(const FamilyPolynomial&) const = default;

private:
    MixedPolynomial joint_;
};

FamilyPolynomial parse_family(std::string_view text, int n = 0);
std::string to_string(const FamilyPolynomial& F);

MixedPolynomial specialize(const FamilyPolynomial& F, Complex t);

struct TSamplingPolicy {
    double t_max = 0.9;
    int rings = 4;  // |t| = t_max·2^{-k}, k < rings
    int angles_per_ring = 8;
    bool include_zero = true;

    void validate() const;
    /// Sorted by (|t|, arg t) with arg in [0, 2π).
    std::vector<Complex> samples() const;
};

struct ConstancyReport {
    bool constant = true;
    std::optional<Complex> offending_t;
    std::vector<std::string> diagnostics;
};

ConstancyReport check_newton_constancy(const FamilyPolynomial& F, const TSamplingPolicy& policy);

struct AdmissibilityConfig {
    TSamplingPolicy sampling;
    SearchConfig search;
    TamenessConfig tameness;
    // Smoothness spot-check standing in for "R ≥ ρ".
    bool smoothness_check = true;
    int smoothness_samples = 200;
    double crit_threshold = 1e-4;
    double sphere_threshold = 1e-5;
    int dim_cap = kDefaultFaceDimCap;

    void validate() const;
};

struct MemberReport {
    Complex t;
    bool convenient = false;
    NondegeneracyReport nondegeneracy;
    std::optional<TamenessSummary> tameness;  // absent on the convenient fast path
    double r_nc = kInfiniteRadius;
};

struct SmoothnessSummary {
    double radius = 0.0;
    int points = 0;
    double min_crit = 1.0;
    double min_sphere = 1.0;
    bool passed = true;
};

enum class AdmissibilityVerdict { numerically_admissible, failed };
std::string to_string(AdmissibilityVerdict v);

struct AdmissibilityReport {
    ConstancyReport constancy;
    std::vector<MemberReport> per_t;
    double rho = 0.0;
    double min_r_nc = kInfiniteRadius;
    bool uniform_tame = false;
    bool tameness_skipped = false;  // every sampled member convenient
    std::optional<SmoothnessSummary> smoothness;
    AdmissibilityVerdict verdict = AdmissibilityVerdict::failed;
    std::string reason;  // empty when admissible
};

/// The numerical surrogate of admissibility: sampled constancy, sampled strong
/// non-degeneracy, sampled r_nc ≥ ρ and a smoothness spot-check in B_ρ. The
/// existential radius R itself is not computed.
AdmissibilityReport check_admissibility(const FamilyPolynomial& F, double rho, const AdmissibilityConfig& cfg);

enum class StratumKind { A, B, C };

struct StratumDescriptor {
    StratumKind kind = StratumKind::A;
    IndexSet I;
    bool t_axis = false;  // C_∅

    bool operator==(const StratumDescriptor&) const = default;
};
/// e.g. "A_{1,2}", "C_{}".
std::string to_string(const StratumDescriptor& s);

/// A_I, B_I for I ∈ 𝓘_nv(f₀), then C_I for I ∈ 𝓘_v(f₀); each block in subspace order.
std::vector<StratumDescriptor> enumerate_strata(const FamilyPolynomial& F);

struct CoveringSpec {
    Exponents nu;
    Exponents mu;
    int delta = 1;

    /// ν_i ≥ 1, ν_i > μ_i ≥ 0, ν_i + μ_i = δ, lengths n.
    void validate(int n) const;
};

MixedPolynomial pullback_covering(const MixedPolynomial& f, const CoveringSpec& spec);
/// Requires holomorphic F; the parameter is left untouched.
FamilyPolynomial pullback_covering(const FamilyPolynomial& F, const CoveringSpec& spec);

}  // namespace mixsing
