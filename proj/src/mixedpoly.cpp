#include "mixsing/mixedpoly.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "mixsing/parser.hpp"

namespace mixsing {

namespace {

void check_finite(Complex c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::invalid_argument("non-finite coefficient");
}

void check_point(const MixedPolynomial& f, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != f.dim())
        throw std::invalid_argument("point has length " + std::to_string(z.size()) + ", expected " +
                                    std::to_string(f.dim()));
}

Complex ipow(Complex base, int e) {
    Complex r(1.0, 0.0);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

Exponents MonomialKey::support_point() const {
    Exponents p(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) p[i] = nu[i] + mu[i];
    return p;
}

MixedPolynomial::MixedPolynomial(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative dimension");
}

MixedPolynomial MixedPolynomial::monomial(int n, Complex c, Exponents nu, Exponents mu) {
    MixedPolynomial f(n);
    f.add_term(c, std::move(nu), std::move(mu));
    return f;
}

void MixedPolynomial::add_term(Complex c, Exponents nu, Exponents mu) {
    check_finite(c);
    if (static_cast<int>(nu.size()) != n_ || static_cast<int>(mu.size()) != n_)
        throw std::invalid_argument("exponent vector length does not match dimension");
    for (int i = 0; i < n_; ++i) {
        if (nu[i] < 0 || mu[i] < 0) throw std::invalid_argument("negative exponent");
        if (nu[i] > kMaxExponent || mu[i] > kMaxExponent) throw std::overflow_error("exponent exceeds cap");
    }
    if (c == Complex(0.0, 0.0)) return;
    MonomialKey key{std::move(nu), std::move(mu)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

Complex MixedPolynomial::coefficient(const MonomialKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

bool MixedPolynomial::has_constant_term() const {
    return coefficient(MonomialKey{Exponents(n_, 0), Exponents(n_, 0)}) != Complex(0.0, 0.0);
}

std::vector<MixedMonomial> MixedPolynomial::monomials() const {
    std::vector<MixedMonomial> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.push_back({c, key.nu, key.mu});
    return out;
}

MixedPolynomial& MixedPolynomial::operator+=(const MixedPolynomial& other) {
    if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [key, c] : other.terms_) add_term(c, key.nu, key.mu);
    return *this;
}

MixedPolynomial& MixedPolynomial::operator-=(const MixedPolynomial& other) {
    if (other.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [key, c] : other.terms_) add_term(-c, key.nu, key.mu);
    return *this;
}

MixedPolynomial& MixedPolynomial::operator*=(Complex scalar) {
    check_finite(scalar);
    if (scalar == Complex(0.0, 0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= scalar;
        if (it->second == Complex(0.0, 0.0))
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = a.dim();
    MixedPolynomial out(n);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            Exponents nu(n), mu(n);
            for (int i = 0; i < n; ++i) {
                nu[i] = ka.nu[i] + kb.nu[i];
                mu[i] = ka.mu[i] + kb.mu[i];
            }
            out.add_term(ca * cb, std::move(nu), std::move(mu));
        }
    return out;
}

MixedPolynomial parse_mixed(std::string_view text, int n) { return parse_polynomial(text, n, false); }

int infer_dimension(std::string_view text) {
    int best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'z') continue;
        std::size_t j = i + 1;
        int k = 0;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9' && k < 1000000) k = 10 * k + (text[j++] - '0');
        best = std::max(best, k);
    }
    return best;
}

std::string to_string(const MixedPolynomial& f) { return to_string(f, false); }

std::string to_string(const MixedPolynomial& f, bool with_parameter) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) out += " + ";
        first = false;
        if (c.imag() == 0.0)
            out += format_double(c.real());
        else {
            out += "(" + format_double(c.real());
            out += std::signbit(c.imag()) ? "-" : "+";
            out += format_double(std::abs(c.imag())) + "i)";
        }
        for (int i = 0; i < f.dim(); ++i) {
            const std::string var = with_parameter ? (i == 0 ? "t" : "z" + std::to_string(i)) : "z" + std::to_string(i + 1);
            if (key.nu[i] > 0) out += "*" + var + (key.nu[i] > 1 ? "^" + std::to_string(key.nu[i]) : "");
            if (key.mu[i] > 0) out += "*~" + var + (key.mu[i] > 1 ? "^" + std::to_string(key.mu[i]) : "");
        }
    }
    return out;
}

Complex evaluate(const MixedPolynomial& f, std::span<const Complex> z) {
    check_point(f, z);
    Complex sum(0.0, 0.0);
    for (const auto& [key, c] : f.terms()) {
        Complex term = c;
        for (int i = 0; i < f.dim(); ++i) {
            if (key.nu[i]) term *= ipow(z[i], key.nu[i]);
            if (key.mu[i]) term *= ipow(std::conj(z[i]), key.mu[i]);
        }
        sum += term;
    }
    return sum;
}

MixedPolynomial conj(const MixedPolynomial& f) {
    MixedPolynomial out(f.dim());
    for (const auto& [key, c] : f.terms()) out.add_term(std::conj(c), key.mu, key.nu);
    return out;
}

MixedPolynomial real_part(const MixedPolynomial& f) { return (f + conj(f)) * Complex(0.5, 0.0); }

MixedPolynomial imag_part(const MixedPolynomial& f) { return (f - conj(f)) * Complex(0.0, -0.5); }

MixedPolynomial derivative_z(const MixedPolynomial& f, int i) {
    MixedPolynomial out(f.dim());
    for (const auto& [key, c] : f.terms()) {
        if (key.nu[i] == 0) continue;
        Exponents nu = key.nu;
        nu[i] -= 1;
        out.add_term(c * static_cast<double>(key.nu[i]), std::move(nu), key.mu);
    }
    return out;
}

MixedPolynomial derivative_zbar(const MixedPolynomial& f, int i) {
    MixedPolynomial out(f.dim());
    for (const auto& [key, c] : f.terms()) {
        if (key.mu[i] == 0) continue;
        Exponents mu = key.mu;
        mu[i] -= 1;
        out.add_term(c * static_cast<double>(key.mu[i]), key.nu, std::move(mu));
    }
    return out;
}

WirtingerPair wirtinger_gradient(const MixedPolynomial& f, std::span<const Complex> z) {
    check_point(f, z);
    WirtingerPair out;
    CompiledPoly(f).gradient(z, out);
    return out;
}

RealGradientRows real_gradient_rows(const WirtingerPair& grad, IndexSet free) {
    const auto vars = free.members();
    const std::size_t k = vars.size();
    RealGradientRows rows{std::vector<double>(2 * k), std::vector<double>(2 * k)};
    for (std::size_t j = 0; j < k; ++j) {
        const int i = vars[j];
        const Complex a = std::conj(grad.dz[i]);
        const Complex b = grad.dzbar[i];
        const Complex dbar_g = 0.5 * (b + a);
        const Complex dbar_h = (b - a) / Complex(0.0, 2.0);
        rows.dg[j] = 2.0 * dbar_g.real();
        rows.dg[k + j] = 2.0 * dbar_g.imag();
        rows.dh[j] = 2.0 * dbar_h.real();
        rows.dh[k + j] = 2.0 * dbar_h.imag();
    }
    return rows;
}

double sigma_ratio(std::span<const double> a, std::span<const double> b) {
    double aa = 0.0, bb = 0.0, ab = 0.0, wedge2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa += a[i] * a[i];
        bb += b[i] * b[i];
        ab += a[i] * b[i];
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const double m = a[i] * b[j] - a[j] * b[i];
            wedge2 += m * m;
        }
    }
    const double trace = aa + bb;
    if (trace == 0.0) return 0.0;
    // σ₁σ₂ = |a∧b| and σ₁² + σ₂² = |a|² + |b|²; the discriminant
    // T² − 4W² = (|a|² − |b|²)² + 4(a·b)² is formed without cancellation.
    const double w = std::sqrt(wedge2);
    const double disc = std::sqrt((aa - bb) * (aa - bb) + 4.0 * ab * ab);
    const double s1 = std::sqrt(0.5 * (trace + disc));
    return std::min(1.0, w / (s1 * s1));
}

double criticality_residual(const MixedPolynomial& f, std::span<const Complex> z) {
    return criticality_residual(f, z, IndexSet::full(f.dim()));
}

double criticality_residual(const MixedPolynomial& f, std::span<const Complex> z, IndexSet free) {
    const auto rows = real_gradient_rows(wirtinger_gradient(f, z), free);
    return sigma_ratio(rows.dg, rows.dh);
}

LambdaFit lambda_fit(const WirtingerPair& grad, IndexSet free) {
    Complex inner(0.0, 0.0);
    double na = 0.0, nb = 0.0;
    for (int i : free.members()) {
        const Complex a = std::conj(grad.dz[i]);
        const Complex b = grad.dzbar[i];
        inner += a * std::conj(b);
        na += std::norm(a);
        nb += std::norm(b);
    }
    if (na + nb == 0.0) return {Complex(1.0, 0.0), 0.0};
    const Complex lambda = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0, 0.0);
    double dist = 0.0;
    for (int i : free.members()) dist += std::norm(std::conj(grad.dz[i]) - lambda * grad.dzbar[i]);
    return {lambda, std::sqrt(dist / (na + nb))};
}

LambdaFit lambda_fit(const MixedPolynomial& f, std::span<const Complex> z) {
    return lambda_fit(wirtinger_gradient(f, z), IndexSet::full(f.dim()));
}

MixedPolynomial restrict_to(const MixedPolynomial& f, IndexSet keep) {
    MixedPolynomial out(f.dim());
    for (const auto& [key, c] : f.terms()) {
        bool inside = true;
        for (int i = 0; i < f.dim() && inside; ++i)
            if (!keep.contains(i) && key.nu[i] + key.mu[i] > 0) inside = false;
        if (inside) out.add_term(c, key.nu, key.mu);
    }
    return out;
}

MixedPolynomial compact_variables(const MixedPolynomial& f, IndexSet keep) {
    const auto vars = keep.members();
    const int k = static_cast<int>(vars.size());
    MixedPolynomial out(k);
    for (const auto& [key, c] : f.terms()) {
        for (int i = 0; i < f.dim(); ++i)
            if (!keep.contains(i) && key.nu[i] + key.mu[i] > 0)
                throw std::invalid_argument("polynomial depends on a dropped variable");
        Exponents nu(k), mu(k);
        for (int j = 0; j < k; ++j) {
            nu[j] = key.nu[vars[j]];
            mu[j] = key.mu[vars[j]];
        }
        out.add_term(c, std::move(nu), std::move(mu));
    }
    return out;
}

long long radial_degree(const MonomialKey& key, const WeightVector& w) {
    if (static_cast<std::size_t>(w.dim()) != key.nu.size()) throw std::invalid_argument("weight length mismatch");
    long long d = 0;
    for (int i = 0; i < w.dim(); ++i) d += w[i] * (key.nu[i] + key.mu[i]);
    return d;
}

long long radial_degree(const MixedMonomial& m, const WeightVector& w) {
    return radial_degree(MonomialKey{m.nu, m.mu}, w);
}

CompiledPoly::CompiledPoly(const MixedPolynomial& f) : n_(f.dim()) {
    for (const auto& [key, c] : f.terms()) {
        coeff_.push_back(c);
        nu_.insert(nu_.end(), key.nu.begin(), key.nu.end());
        mu_.insert(mu_.end(), key.mu.begin(), key.mu.end());
    }
}

Complex CompiledPoly::value(std::span<const Complex> z) const {
    Complex sum(0.0, 0.0);
    for (std::size_t t = 0; t < coeff_.size(); ++t) {
        Complex term = coeff_[t];
        const int* nu = &nu_[t * n_];
        const int* mu = &mu_[t * n_];
        for (int i = 0; i < n_; ++i) {
            if (nu[i]) term *= ipow(z[i], nu[i]);
            if (mu[i]) term *= ipow(std::conj(z[i]), mu[i]);
        }
        sum += term;
    }
    return sum;
}

void CompiledPoly::gradient(std::span<const Complex> z, WirtingerPair& grad) const {
    grad.dz.assign(n_, Complex(0.0, 0.0));
    grad.dzbar.assign(n_, Complex(0.0, 0.0));
    std::vector<Complex> factor(n_), prefix(n_ + 1), suffix(n_ + 1);
    for (std::size_t t = 0; t < coeff_.size(); ++t) {
        const int* nu = &nu_[t * n_];
        const int* mu = &mu_[t * n_];
        for (int i = 0; i < n_; ++i) factor[i] = ipow(z[i], nu[i]) * ipow(std::conj(z[i]), mu[i]);
        prefix[0] = coeff_[t];
        for (int i = 0; i < n_; ++i) prefix[i + 1] = prefix[i] * factor[i];
        suffix[n_] = Complex(1.0, 0.0);
        for (int i = n_ - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * factor[i];
        for (int i = 0; i < n_; ++i) {
            const Complex rest = prefix[i] * suffix[i + 1];
            if (nu[i]) grad.dz[i] += rest * static_cast<double>(nu[i]) * ipow(z[i], nu[i] - 1) * ipow(std::conj(z[i]), mu[i]);
            if (mu[i]) grad.dzbar[i] += rest * static_cast<double>(mu[i]) * ipow(z[i], nu[i]) * ipow(std::conj(z[i]), mu[i] - 1);
        }
    }
}

}  // namespace mixsing
