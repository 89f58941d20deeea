#include "mixsing/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixsing/family.hpp"

namespace mixsing {

TruncatedSeries::TruncatedSeries(int truncation) : start_(truncation), trunc_(truncation) {}

TruncatedSeries::TruncatedSeries(const std::map<int, Complex>& terms, int truncation) : trunc_(truncation) {
    start_ = terms.empty() ? truncation : std::min(terms.begin()->first, truncation);
    c_.assign(trunc_ - start_, Complex(0.0, 0.0));
    m_.assign(trunc_ - start_, 0.0);
    for (const auto& [k, c] : terms) {
        if (k >= trunc_) break;
        c_[k - start_] = c;
        m_[k - start_] = std::abs(c);
    }
}

Complex TruncatedSeries::coefficient(int k) const {
    if (k >= trunc_) throw TruncationError("coefficient of s^" + std::to_string(k) + " beyond truncation " + std::to_string(trunc_));
    return k < start_ ? Complex(0.0, 0.0) : c_[k - start_];
}

double TruncatedSeries::magnitude(int k) const {
    if (k >= trunc_) throw TruncationError("coefficient beyond truncation");
    return k < start_ ? 0.0 : m_[k - start_];
}

bool TruncatedSeries::negligible(int k) const {
    const Complex c = coefficient(k);
    return std::abs(c) <= kCancellation * magnitude(k);
}

std::optional<int> TruncatedSeries::order() const {
    for (int k = start_; k < trunc_; ++k)
        if (!negligible(k)) return k;
    return std::nullopt;
}

int TruncatedSeries::low() const {
    for (int k = start_; k < trunc_; ++k)
        if (m_[k - start_] > 0.0) return k;
    return trunc_;
}

Complex TruncatedSeries::evaluate(double s) const {
    Complex sum(0.0, 0.0);
    for (int k = trunc_ - 1; k >= start_; --k) sum = sum * s + c_[k - start_];
    if (start_ != 0) sum *= std::pow(s, start_);
    return sum;
}

TruncatedSeries TruncatedSeries::conj() const {
    TruncatedSeries out = *this;
    for (auto& c : out.c_) c = std::conj(c);
    return out;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
    TruncatedSeries out = *this;
    out.start_ += k;
    out.trunc_ += k;
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.trunc_, b.trunc_));
    out.start_ = std::min({a.start_, b.start_, out.trunc_});
    const int len = out.trunc_ - out.start_;
    out.c_.assign(len, Complex(0.0, 0.0));
    out.m_.assign(len, 0.0);
    for (int k = out.start_; k < out.trunc_; ++k) {
        out.c_[k - out.start_] = a.coefficient(k) + b.coefficient(k);
        out.m_[k - out.start_] = a.magnitude(k) + b.magnitude(k);
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + Complex(-1.0, 0.0) * b;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int la = a.low(), lb = b.low();
    TruncatedSeries out(std::min(la + b.trunc_, lb + a.trunc_));
    out.start_ = std::min(la + lb, out.trunc_);
    const int len = out.trunc_ - out.start_;
    out.c_.assign(len, Complex(0.0, 0.0));
    out.m_.assign(len, 0.0);
    for (int k = out.start_; k < out.trunc_; ++k) {
        Complex c(0.0, 0.0);
        double m = 0.0;
        for (int i = la; i <= k - lb; ++i) {
            c += a.c_[i - a.start_] * b.c_[k - i - b.start_];
            m += a.m_[i - a.start_] * b.m_[k - i - b.start_];
        }
        out.c_[k - out.start_] = c;
        out.m_[k - out.start_] = m;
    }
    return out;
}

TruncatedSeries operator*(Complex a, const TruncatedSeries& b) {
    TruncatedSeries out = b;
    for (auto& c : out.c_) c *= a;
    for (auto& m : out.m_) m *= std::abs(a);
    return out;
}

ComplexVector Arc::point(double s) const {
    auto eval = [s](const SeriesTerms& terms) {
        Complex sum(0.0, 0.0);
        for (const auto& [k, c] : terms) sum += c * std::pow(s, k);
        return sum;
    };
    ComplexVector out;
    out.push_back(eval(t));
    for (const auto& zi : z) out.push_back(eval(zi));
    return out;
}

IndexSet Arc::z_support() const {
    IndexSet out;
    for (int i = 0; i < n(); ++i)
        for (const auto& [k, c] : z[i])
            if (c != Complex(0.0, 0.0)) {
                out.insert(i);
                break;
            }
    return out;
}

void Arc::validate() const {
    auto check = [](const SeriesTerms& terms) {
        if (!terms.empty() && terms.begin()->first < 0) throw std::invalid_argument("arc exponents must be non-negative");
    };
    check(t);
    for (const auto& zi : z) check(zi);
}

SeriesVector arc_series(const Arc& arc, bool with_t, int truncation) {
    arc.validate();
    SeriesVector out;
    if (with_t) out.emplace_back(arc.t, truncation);
    for (const auto& zi : arc.z) out.emplace_back(zi, truncation);
    return out;
}

int default_truncation(const MixedPolynomial& f, const Arc& arc, bool with_t) {
    std::vector<const SeriesTerms*> coords;
    if (with_t) coords.push_back(&arc.t);
    for (const auto& zi : arc.z) coords.push_back(&zi);
    std::vector<int> w;
    for (const auto* terms : coords) {
        int o = -1;
        for (const auto& [k, c] : *terms)
            if (c != Complex(0.0, 0.0)) {
                o = k;
                break;
            }
        w.push_back(o);
    }
    long long best = std::numeric_limits<long long>::max();
    for (const auto& [key, c] : f.terms()) {
        long long d = 0;
        bool alive = true;
        for (int i = 0; i < f.dim() && alive; ++i) {
            const int e = key.nu[i] + key.mu[i];
            if (e == 0) continue;
            if (w[i] < 0) alive = false;
            d += static_cast<long long>(e) * w[i];
        }
        if (alive) best = std::min(best, d);
    }
    if (best == std::numeric_limits<long long>::max()) best = 0;
    return static_cast<int>(best) + 8;
}

TruncatedSeries compose(const MixedPolynomial& f, const SeriesVector& coords) {
    if (static_cast<int>(coords.size()) != f.dim()) throw std::invalid_argument("arc and polynomial dimensions differ");
    int trunc = 0;
    for (const auto& c : coords) trunc = std::max(trunc, c.truncation());
    const TruncatedSeries one({{0, Complex(1.0, 0.0)}}, trunc);
    std::vector<std::vector<TruncatedSeries>> pz(f.dim()), pzb(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
        pz[i] = {one};
        pzb[i] = {one};
    }
    auto power = [&](std::vector<TruncatedSeries>& cache, const TruncatedSeries& x, int e) -> const TruncatedSeries& {
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * x);
        return cache[e];
    };
    TruncatedSeries sum(trunc);
    for (const auto& [key, c] : f.terms()) {
        TruncatedSeries term = one;
        for (int i = 0; i < f.dim(); ++i) {
            if (key.nu[i]) term = term * power(pz[i], coords[i], key.nu[i]);
            if (key.mu[i]) {
                const TruncatedSeries bar = coords[i].conj();
                term = term * power(pzb[i], bar, key.mu[i]);
            }
        }
        sum = sum + c * term;
    }
    return sum;
}

namespace {

bool uses_t(const MixedPolynomial& f, const Arc& arc) {
    if (f.dim() == arc.n()) return false;
    if (f.dim() == arc.n() + 1) return true;
    throw std::invalid_argument("arc and polynomial dimensions differ");
}

}  // namespace

TruncatedSeries compose(const MixedPolynomial& f, const Arc& arc, int truncation) {
    const bool with_t = uses_t(f, arc);
    const int trunc = truncation > 0 ? truncation : default_truncation(f, arc, with_t);
    return compose(f, arc_series(arc, with_t, trunc));
}

TruncatedSeries compose(const FamilyPolynomial& F, const Arc& arc, int truncation) {
    if (arc.n() != F.n()) throw std::invalid_argument("arc and family dimensions differ");
    return compose(F.joint(), arc, truncation);
}

GradientSeries gradient_series(const MixedPolynomial& f, const SeriesVector& coords) {
    GradientSeries out;
    const Complex half(0.5, 0.0), minus_half_i(0.0, -0.5);
    for (int i = 0; i < f.dim(); ++i) {
        const TruncatedSeries dz = compose(derivative_z(f, i), coords).conj();
        const TruncatedSeries dzb = compose(derivative_zbar(f, i), coords);
        out.v_g.push_back(half * (dzb + dz));
        out.v_h.push_back(minus_half_i * (dzb - dz));
    }
    return out;
}

GradientSeries gradient_series(const FamilyPolynomial& F, const Arc& arc, int truncation) {
    if (arc.n() != F.n()) throw std::invalid_argument("arc and family dimensions differ");
    const int trunc = truncation > 0 ? truncation : default_truncation(F.joint(), arc, true);
    return gradient_series(F.joint(), arc_series(arc, true, trunc));
}

OrderInfo order_and_essential_index(const SeriesVector& v, IndexSet skip) {
    std::optional<OrderInfo> best;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (skip.contains(i)) continue;
        const auto o = v[i].order();
        if (!o) continue;
        if (!best || *o <= best->order) best = OrderInfo{*o, i, v[i].coefficient(*o)};
    }
    if (!best) throw std::domain_error("every component vanishes up to truncation");
    return *best;
}

ComplexVector leading_vector(const SeriesVector& v, int order, IndexSet skip) {
    ComplexVector out(v.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (skip.contains(static_cast<int>(i))) continue;
        if (!v[i].negligible(order)) out[i] = v[i].coefficient(order);
    }
    return out;
}

ReductionResult whitney_reduction(SeriesVector v_g, SeriesVector v_h, IndexSet skip) {
    ReductionResult out;
    auto all_zero = [&](const SeriesVector& v) {
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (!skip.contains(i) && !v[i].is_zero()) return false;
        return true;
    };
    if (all_zero(v_g) && all_zero(v_h)) throw std::domain_error("both gradient series vanish up to truncation");
    if (all_zero(v_h) || (!all_zero(v_g) && order_and_essential_index(v_h, skip).order <
                                                 order_and_essential_index(v_g, skip).order)) {
        // Replace f by √−1·f: (g, h) ↦ (−h, g).
        SeriesVector neg;
        for (const auto& c : v_h) neg.push_back(Complex(-1.0, 0.0) * c);
        v_h = std::move(v_g);
        v_g = std::move(neg);
        out.swapped = true;
    }
    out.g = order_and_essential_index(v_g, skip);
    int max_steps = 0;
    for (const auto& c : v_h) max_steps = std::max(max_steps, c.truncation());
    while (true) {
        if (all_zero(v_h)) {
            out.converged = false;
            out.note = "v_h vanishes up to truncation";
            break;
        }
        out.h = order_and_essential_index(v_h, skip);
        if (out.h.index != out.g.index) break;
        const Complex ratio = out.h.leading / out.g.leading;
        if (std::abs(ratio.imag()) > kRealnessTol * std::abs(ratio)) break;
        if (out.steps >= max_steps) {
            out.converged = false;
            out.note = "reduction did not terminate within the truncation order";
            break;
        }
        const Complex r(ratio.real(), 0.0);
        const int shift = out.h.order - out.g.order;
        for (std::size_t i = 0; i < v_h.size(); ++i) v_h[i] = v_h[i] - r * v_g[i].shifted(shift);
        out.trace.push_back({out.h, ratio});
        ++out.steps;
    }
    out.v_g = std::move(v_g);
    out.v_h = std::move(v_h);
    return out;
}

}  // namespace mixsing
