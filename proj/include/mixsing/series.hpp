// Truncated power series in a real parameter s, and the arc calculus built
// on them: composition, gradient series, orders, essential indices and the
// leading-coefficient reduction.
//
// Coefficients are doubles. Each coefficient carries a magnitude bound (the
// same operations applied to absolute values), and a coefficient counts as
// zero when it is below kCancellation times its bound. This is what makes
// exact cancellations such as e^{3iπ/5} + e^{-2iπ/5} = 0 visible.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsing/lattice.hpp"
#include "mixsing/mixedpoly.hpp"

namespace mixsing {

class FamilyPolynomial;

inline constexpr double kCancellation = 1e-9;
inline constexpr double kRealnessTol = 1e-10;

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TruncatedSeries {
public:
    /// Zero, known below `truncation`.
    explicit TruncatedSeries(int truncation = 0);
    /// Finite polynomial Σ c_k s^k, known below `truncation`.
    TruncatedSeries(const std::map<int, Complex>& terms, int truncation);

    int truncation() const { return trunc_; }
    Complex coefficient(int k) const;
    double magnitude(int k) const;
    bool negligible(int k) const;
    /// First non-negligible exponent below the truncation.
    std::optional<int> order() const;
    bool is_zero() const { return !order(); }
    Complex evaluate(double s) const;

    TruncatedSeries conj() const;
    /// Multiplies by s^k (k may be negative).
    TruncatedSeries shifted(int k) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(Complex a, const TruncatedSeries& b);

private:
    int low() const;  // first exponent with a nonzero bound, or trunc_
    int start_ = 0;
    int trunc_ = 0;
    std::vector<Complex> c_;  // exponents start_ .. trunc_-1
    std::vector<double> m_;
};

using SeriesVector = std::vector<TruncatedSeries>;
using SeriesTerms = std::map<int, Complex>;

/// A real-analytic (here polynomial) arc s ↦ (t(s), z(s)).
struct Arc {
    SeriesTerms t;
    std::vector<SeriesTerms> z;

    int n() const { return static_cast<int>(z.size()); }
    /// (t, z_1, ..., z_n) at s.
    ComplexVector point(double s) const;
    /// {i : z_i(s) ≢ 0}.
    IndexSet z_support() const;
    void validate() const;
};

/// Arc coordinates as series, t first when `with_t`.
SeriesVector arc_series(const Arc& arc, bool with_t, int truncation);

/// d_w + 8, with w_i the order of the i-th arc coordinate and d_w the least
/// weighted degree of a term not killed by a zero coordinate.
int default_truncation(const MixedPolynomial& f, const Arc& arc, bool with_t);

TruncatedSeries compose(const MixedPolynomial& f, const SeriesVector& coords);
/// f has dim n (the z-part of the arc) or n + 1 (t first).
TruncatedSeries compose(const MixedPolynomial& f, const Arc& arc, int truncation = 0);
TruncatedSeries compose(const FamilyPolynomial& F, const Arc& arc, int truncation = 0);

struct GradientSeries {
    // Components ∂g/∂z̄_i, ∂h/∂z̄_i over every variable of f; for a family
    // component 0 is ∂/∂t̄.
    SeriesVector v_g;
    SeriesVector v_h;
};

GradientSeries gradient_series(const MixedPolynomial& f, const SeriesVector& coords);
GradientSeries gradient_series(const FamilyPolynomial& F, const Arc& arc, int truncation = 0);

struct OrderInfo {
    int order = 0;
    int index = 0;  // position in the vector, the largest one attaining the order
    Complex leading;
};

/// Throws std::domain_error when every component outside `skip` vanishes.
OrderInfo order_and_essential_index(const SeriesVector& v, IndexSet skip = {});

struct ReductionStep {
    OrderInfo h;
    Complex ratio;  // c_h / c_g, real
};

struct ReductionResult {
    SeriesVector v_g, v_h;
    bool swapped = false;  // f was replaced by √−1·f to get o(g) ≤ o(h)
    int steps = 0;
    std::vector<ReductionStep> trace;
    OrderInfo g, h;
    bool converged = true;
    std::string note;
};

/// Kills ℝ-dependent leading coefficients with matching essential indices,
/// v_h ← v_h − (c_h/c_g)s^{o(h)−o(g)}v_g, until the indices differ or the
/// ratio is non-real.
ReductionResult whitney_reduction(SeriesVector v_g, SeriesVector v_h, IndexSet skip = {});

/// Coefficients of s^order in every component (negligible ones set to 0).
ComplexVector leading_vector(const SeriesVector& v, int order, IndexSet skip = {});

}  // namespace mixsing
