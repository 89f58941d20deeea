#pragma once

#include <random>

#include "mixsing/mixedpoly.hpp"

namespace mixsing::testing {

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    return {g(rng), g(rng)};
}

inline ComplexVector random_point(std::mt19937_64& rng, int n, double scale = 1.0) {
    ComplexVector z(n);
    for (auto& c : z) c = random_complex(rng, scale);
    return z;
}

/// Up to `max_terms` random terms with total exponent ≤ max_degree.
inline MixedPolynomial random_poly(std::mt19937_64& rng, int n, int max_degree, int max_terms,
                                   bool holomorphic = false) {
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<int> exps(0, max_degree);
    MixedPolynomial f(n);
    const int k = count(rng);
    while (static_cast<int>(f.size()) < k) {
        Exponents nu(n), mu(n, 0);
        int budget = max_degree;
        for (int i = 0; i < n; ++i) {
            nu[i] = std::min(budget, exps(rng) % (max_degree / 2 + 1));
            budget -= nu[i];
            if (!holomorphic) {
                mu[i] = std::min(budget, exps(rng) % (max_degree / 2 + 1));
                budget -= mu[i];
            }
        }
        bool nonconst = false;
        for (int i = 0; i < n; ++i) nonconst = nonconst || nu[i] + mu[i] > 0;
        if (!nonconst) continue;
        f.add_term(random_complex(rng), nu, mu);
    }
    return f;
}

}  // namespace mixsing::testing
