// Small local optimizers used by the critical-point searches.

#pragma once

#include <functional>
#include <vector>

namespace mixsing {

using Vec = std::vector<double>;

struct LocalResult {
    Vec x;
    double value = 0.0;  // objective, or ‖r‖ for least squares
    int evaluations = 0;
};

/// Derivative-free simplex descent; stops after `max_evals` or when the
/// simplex values agree to `ftol`.
LocalResult nelder_mead(const std::function<double(const Vec&)>& f, Vec x0, double step, int max_evals,
                        double ftol = 1e-14);

/// Damped Gauss–Newton on a residual vector with a forward-difference Jacobian.
/// `project` (may be empty) maps iterates back into the feasible set.
LocalResult levenberg_marquardt(const std::function<Vec(const Vec&)>& r, Vec x0, int max_iters,
                                const std::function<void(Vec&)>& project = {}, double stop_norm = 0.0);

}  // namespace mixsing
