// Mixed polynomials f(z, z̄) = Σ c_{ν,μ} z^ν z̄^μ and their Wirtinger calculus.

#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mixsing/lattice.hpp"

namespace mixsing {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Exponents = std::vector<int>;

/// Largest exponent accepted anywhere in a polynomial.
inline constexpr int kMaxExponent = 1 << 20;

struct MonomialKey {
    Exponents nu;
    Exponents mu;

    auto operator<=>(const MonomialKey&) const = default;
    bool operator==(const MonomialKey&) const = default;

    /// ν + μ, the point of the monomial in the Newton diagram.
    Exponents support_point() const;
};

struct MixedMonomial {
    Complex coeff;
    Exponents nu;
    Exponents mu;
};

class MixedPolynomial {
public:
    explicit MixedPolynomial(int n = 0);
    static MixedPolynomial monomial(int n, Complex c, Exponents nu, Exponents mu);

    int dim() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c z^ν z̄^μ, merging with an existing term; zero results are dropped.
    void add_term(Complex c, Exponents nu, Exponents mu);
    Complex coefficient(const MonomialKey& key) const;
    bool has_constant_term() const;

    /// Terms in canonical (lexicographic on (ν, μ)) order.
    const std::map<MonomialKey, Complex>& terms() const { return terms_; }
    std::vector<MixedMonomial> monomials() const;

    MixedPolynomial& operator+=(const MixedPolynomial& other);
    MixedPolynomial& operator-=(const MixedPolynomial& other);
    MixedPolynomial& operator*=(Complex scalar);
    friend MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b) { return a += b; }
    friend MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b) { return a -= b; }
    friend MixedPolynomial operator*(MixedPolynomial a, Complex s) { return a *= s; }
    friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b);

    bool operator==(const MixedPolynomial&) const = default;

private:
    int n_;
    std::map<MonomialKey, Complex> terms_;
};

struct WirtingerPair {
    ComplexVector dz;     // ∂f/∂z_i
    ComplexVector dzbar;  // ∂f/∂z̄_i
};

// --- construction / text -------------------------------------------------

/// Parses the polynomial grammar (see README). The family parameter `t` is rejected here.
MixedPolynomial parse_mixed(std::string_view text, int n);
/// Largest variable index z<k> mentioned in `text` (0 if none).
int infer_dimension(std::string_view text);
/// Canonical text that parses back to exactly the same polynomial.
std::string to_string(const MixedPolynomial& f);
/// Names variable 0 `t` and the rest z1..z_{dim-1}, matching the family grammar.
std::string to_string(const MixedPolynomial& f, bool with_parameter);

// --- evaluation ----------------------------------------------------------

Complex evaluate(const MixedPolynomial& f, std::span<const Complex> z);
/// Swaps ν ↔ μ and conjugates coefficients, so conj(f)(z) = conj(f(z)).
MixedPolynomial conj(const MixedPolynomial& f);
/// g = Re f and h = Im f as real-valued mixed polynomials.
MixedPolynomial real_part(const MixedPolynomial& f);
MixedPolynomial imag_part(const MixedPolynomial& f);

MixedPolynomial derivative_z(const MixedPolynomial& f, int i);
MixedPolynomial derivative_zbar(const MixedPolynomial& f, int i);
WirtingerPair wirtinger_gradient(const MixedPolynomial& f, std::span<const Complex> z);

// --- criticality ---------------------------------------------------------

/// Real gradients dg, dh (columns x_1..x_k, y_1..y_k over the `free` variables)
/// rebuilt from the Wirtinger derivatives.
struct RealGradientRows {
    std::vector<double> dg;
    std::vector<double> dh;
};
RealGradientRows real_gradient_rows(const WirtingerPair& grad, IndexSet free);

/// σ₂/σ₁ of the 2×2k matrix with rows a, b; 0 when σ₁ = 0.
double sigma_ratio(std::span<const double> a, std::span<const double> b);

/// σ₂/σ₁ of [dg; dh] at z; 0 iff z is a mixed critical point.
double criticality_residual(const MixedPolynomial& f, std::span<const Complex> z);
/// Same, with only the variables in `free` differentiated (the others are held fixed).
double criticality_residual(const MixedPolynomial& f, std::span<const Complex> z, IndexSet free);

struct LambdaFit {
    Complex lambda;   // |λ| = 1
    double residual;  // ‖conj(∂f) − λ∂̄f‖ / ‖(∂f, ∂̄f)‖
};
/// Best unit λ for conj(∂f) = λ ∂̄f over the `free` variables.
LambdaFit lambda_fit(const WirtingerPair& grad, IndexSet free);
LambdaFit lambda_fit(const MixedPolynomial& f, std::span<const Complex> z);

// --- structure -----------------------------------------------------------

/// Sets z_i = z̄_i = 0 for i ∉ keep; the ambient dimension is unchanged.
MixedPolynomial restrict_to(const MixedPolynomial& f, IndexSet keep);
/// Re-indexes a polynomial supported on the variables of `keep` into |keep| variables.
MixedPolynomial compact_variables(const MixedPolynomial& f, IndexSet keep);

long long radial_degree(const MixedMonomial& m, const WeightVector& w);
long long radial_degree(const MonomialKey& key, const WeightVector& w);

/// Flat term table for repeated evaluation inside optimizers. Immutable, so one
/// instance can be shared across threads.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MixedPolynomial& f);

    int dim() const { return n_; }
    Complex value(std::span<const Complex> z) const;
    /// Fills both Wirtinger vectors; `grad` is resized to dim().
    void gradient(std::span<const Complex> z, WirtingerPair& grad) const;

private:
    int n_ = 0;
    std::vector<Complex> coeff_;
    std::vector<int> nu_;  // row-major, size() * n_
    std::vector<int> mu_;
};

}  // namespace mixsing
