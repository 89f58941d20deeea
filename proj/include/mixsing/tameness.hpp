// Local tameness of essential non-compact face functions: probing slices
// z_I = u for critical points in the complementary variables, and estimating
// the radius below which no such slice is critical.

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "mixsing/degeneracy.hpp"
#include "mixsing/newton.hpp"

namespace mixsing {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

struct TamenessConfig {
    std::vector<double> radius_grid = default_radius_grid();
    int sphere_samples = 16;
    int z_starts = 2;  // optimizer starts per u sample
    SearchConfig inner;
    int bisection_iters = 10;
    double phase_offset = 0.0;  // rotates every sampled u

    void validate() const;
    /// 0.1·1.25^k below 10, then 10.
    static std::vector<double> default_radius_grid();
};

struct TamenessWitness {
    double radius = 0.0;  // probe radius at which it was found
    ComplexVector point;  // full point: u on I_Δ, critical z elsewhere
    CriticalityWitness witness;
};

enum class TameStatus { tame_up_to, failure_at };

struct FaceTamenessReport {
    Face face;
    MixedPolynomial face_function;
    TameStatus status = TameStatus::tame_up_to;
    double r_lower = 0.0;  // last clean radius (largest grid radius when clean throughout)
    std::optional<TamenessWitness> first_failure;
    /// Estimate of r̄(f_Δ): r_lower on failure, +∞ when the whole grid is clean.
    double estimate() const { return first_failure ? r_lower : kInfiniteRadius; }
};

struct TamenessSummary {
    std::vector<FaceTamenessReport> faces;
    std::map<IndexSet, double> per_I;  // only I carrying an essential face
    double r_nc = kInfiniteRadius;
};

/// Substitutes z_i = u_i (i ∈ I) and re-indexes to the complementary variables.
/// `u` has one entry per member of I, in increasing index order.
MixedPolynomial restrict_face_slice(const MixedPolynomial& f_delta, IndexSet I, std::span<const Complex> u);

/// Looks for (u, z) with ‖u‖ < r, all u_i ≠ 0, z ∈ torus, and z critical for the slice.
std::optional<TamenessWitness> probe_radius(const MixedPolynomial& f_delta, const Face& face, double r,
                                            const TamenessConfig& cfg);

FaceTamenessReport estimate_radius(const MixedPolynomial& f_delta, const Face& face, const TamenessConfig& cfg);

TamenessSummary tameness_summary(const MixedPolynomial& f, const TamenessConfig& cfg,
                                 int dim_cap = kDefaultFaceDimCap);

}  // namespace mixsing
