// Local minimization of the criticality residual over polar coordinates
// z_i = exp(ρ_i)·e^{iθ_i}. Shared by the non-degeneracy and tameness probes.

#pragma once

#include <functional>
#include <optional>

#include "mixsing/lattice.hpp"
#include "mixsing/mixedpoly.hpp"
#include "mixsing/optimize.hpp"

namespace mixsing {

class TorusObjective {
public:
    /// Criticality is measured with respect to the variables in `free`; the
    /// remaining coordinates are parameters that the optimizer may still move.
    TorusObjective(const MixedPolynomial& f, IndexSet free);

    int dim() const { return n_; }
    IndexSet free() const { return free_; }

    /// x = (ρ_1..ρ_n, θ_1..θ_n)
    ComplexVector point(const Vec& x) const;
    static Vec coordinates(std::span<const Complex> z);

    /// σ₂/σ₁ of the real Jacobian rows.
    double residual(const Vec& x) const;
    double residual_at(std::span<const Complex> z) const;
    /// Smooth surrogate: the 2×2 minors of [dg; dh] divided by |dg|² + |dh|².
    /// Its norm W/T satisfies W/T ≤ σ₂/σ₁ ≤ 2W/T.
    Vec residual_vector(const Vec& x) const;

    WirtingerPair gradient(std::span<const Complex> z) const;

private:
    CompiledPoly f_;
    int n_;
    IndexSet free_;
};

struct RefineOptions {
    int nelder_mead_evals = 200;
    int lm_iters = 60;
    double nelder_mead_step = 0.3;
    std::function<void(Vec&)> project;
};

/// Nelder–Mead on σ₂/σ₁, then Levenberg–Marquardt on the minor vector.
/// The returned value is σ₂/σ₁ at the returned point.
LocalResult refine_critical(const TorusObjective& obj, Vec x0, const RefineOptions& opt);

/// Projection for weighted-homogeneous problems: shifts ρ along the weighted
/// action so that max_{w_i > 0} ρ_i / w_i = 0, then clamps each ρ_i to [lo_i, hi_i].
std::function<void(Vec&)> homogeneous_projection(std::vector<long long> weights, Vec lo, Vec hi);
/// Plain box clamp on ρ.
std::function<void(Vec&)> box_projection(Vec lo, Vec hi);

}  // namespace mixsing
