// Strong non-degeneracy: exact rule for monomial face functions, seeded
// multistart search for critical points on the torus otherwise.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixsing/mixedpoly.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/parallel.hpp"

namespace mixsing {

struct SearchConfig {
    std::uint64_t seed = 0;
    int multistarts = 512;
    int grid_per_dim = 16;
    double r_min = 0.2;
    double r_max = 5.0;
    double tol_accept = 1e-9;
    double tol_floor = 1e-3;
    int max_refine_iters = 60;
    /// Upper bound on grid pre-pass evaluations; grid_per_dim is reduced to fit.
    long long grid_cap = 1 << 16;
    bool use_monomial_rule = true;
    ExecPolicy policy = ExecPolicy::parallel;

    void validate() const;
};

enum class FaceStatus { proven_nondegenerate, no_critical_point_found, critical_point_found, proven_degenerate };

std::string to_string(FaceStatus s);
inline bool passes(FaceStatus s) {
    return s == FaceStatus::proven_nondegenerate || s == FaceStatus::no_critical_point_found;
}

struct CriticalityWitness {
    ComplexVector z;
    Complex lambda;
    double residual = 0.0;         // σ₂/σ₁
    double lambda_residual = 0.0;  // ‖conj(∂f) − λ∂̄f‖ / ‖(∂f, ∂̄f)‖
};

struct FaceVerdict {
    Face face;
    MixedPolynomial face_function;
    FaceStatus status = FaceStatus::no_critical_point_found;
    double min_residual_seen = 1.0;
    std::optional<CriticalityWitness> witness;
    bool low_margin = false;
    int starts = 0;  // 0 when decided by the monomial rule
};

struct MonomialVerdict {
    FaceStatus status;
    Complex lambda;  // conj(c)/c when degenerate
};

/// Throws std::invalid_argument unless f has exactly one term.
MonomialVerdict monomial_rule(const MixedMonomial& m);
MonomialVerdict monomial_rule(const MixedPolynomial& f);

/// Searches (ℂ*)ⁿ ∩ {r_min ≤ |z_i| ≤ r_max} for critical points of f. With
/// `homogeneity` the search is reduced modulo the weighted ℝ₊-action.
FaceVerdict search_torus_critical_points(const MixedPolynomial& f, const SearchConfig& cfg,
                                         const std::optional<WeightVector>& homogeneity = std::nullopt);

struct NondegeneracyReport {
    std::vector<FaceVerdict> faces;  // one per compact face, in face order
    FaceStatus worst = FaceStatus::proven_nondegenerate;
    bool passes = true;
};

NondegeneracyReport check_strong_nondegeneracy(const MixedPolynomial& f, const SearchConfig& cfg,
                                               int dim_cap = kDefaultFaceDimCap);

/// True iff every term has radial degree d for w.
bool is_radially_homogeneous(const MixedPolynomial& f, const WeightVector& w, long long* degree = nullptr);

}  // namespace mixsing
