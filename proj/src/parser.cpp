#include "mixsing/parser.hpp"

#include <cctype>
#include <charconv>

namespace mixsing {

namespace {

// Expanding (a + b)^k is only sensible for small k.
constexpr int kMaxSumPower = 64;

Complex ipow(Complex base, int e) {
    Complex r(1.0, 0.0);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

class Parser {
public:
    Parser(std::string_view text, int n, bool with_parameter)
        : s_(text), n_(n), param_(with_parameter), dim_(with_parameter ? n + 1 : n) {}

    MixedPolynomial run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        MixedPolynomial f = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == '~' || c == 'z' ||
               c == 't' || c == 'i';
    }

    MixedPolynomial constant(Complex c) const {
        return MixedPolynomial::monomial(dim_, c, Exponents(dim_, 0), Exponents(dim_, 0));
    }

    MixedPolynomial expr() {
        MixedPolynomial acc = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MixedPolynomial term() {
        MixedPolynomial acc = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * unary();
            } else if (starts_atom()) {
                fail("implicit multiplication is not allowed");
            } else {
                return acc;
            }
        }
    }

    MixedPolynomial unary() {
        if (peek('-')) {
            ++pos_;
            return unary() * Complex(-1.0, 0.0);
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    int exponent() {
        skip();
        const std::size_t start = pos_;
        long long e = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = 10 * e + (s_[pos_++] - '0');
            if (e > kMaxExponent) {
                pos_ = start;
                fail("exponent overflow");
            }
        }
        if (pos_ == start) fail("expected a non-negative integer exponent");
        return static_cast<int>(e);
    }

    MixedPolynomial power() {
        MixedPolynomial base = atom();
        if (!peek('^')) return base;
        ++pos_;
        const std::size_t where = pos_;
        const int e = exponent();
        if (base.size() == 1) {
            const auto& [key, c] = *base.terms().begin();
            Exponents nu(dim_), mu(dim_);
            for (int i = 0; i < dim_; ++i) {
                const long long a = static_cast<long long>(key.nu[i]) * e;
                const long long b = static_cast<long long>(key.mu[i]) * e;
                if (a > kMaxExponent || b > kMaxExponent) {
                    pos_ = where;
                    fail("exponent overflow");
                }
                nu[i] = static_cast<int>(a);
                mu[i] = static_cast<int>(b);
            }
            return MixedPolynomial::monomial(dim_, ipow(c, e), std::move(nu), std::move(mu));
        }
        if (e > kMaxSumPower) {
            pos_ = where;
            fail("exponent too large for a sum");
        }
        MixedPolynomial acc = constant(Complex(1.0, 0.0));
        for (int k = 0; k < e; ++k) acc = acc * base;
        return acc;
    }

    bool ident_char(std::size_t p) const {
        return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
    }

    int variable_index() {
        // At 'z': read z<k>.
        const std::size_t start = pos_;
        ++pos_;
        int k = 0;
        std::size_t digits = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            k = 10 * k + (s_[pos_++] - '0');
            if (k > 1000000) break;
            ++digits;
        }
        if (digits == 0 || ident_char(pos_)) {
            pos_ = start;
            fail("malformed variable name");
        }
        if (k < 1 || k > n_) {
            pos_ = start;
            fail("variable z" + std::to_string(k) + " outside dimension " + std::to_string(n_));
        }
        return param_ ? k : k - 1;
    }

    MixedPolynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MixedPolynomial inner = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '~') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == 't' && !ident_char(pos_ + 1))
                fail("conjugate of the family parameter t is not allowed");
            if (pos_ >= s_.size() || s_[pos_] != 'z') fail("expected a variable after '~'");
            const int idx = variable_index();
            Exponents nu(dim_, 0), mu(dim_, 0);
            mu[idx] = 1;
            return MixedPolynomial::monomial(dim_, 1.0, nu, mu);
        }
        if (c == 'z') {
            const int idx = variable_index();
            Exponents nu(dim_, 0), mu(dim_, 0);
            nu[idx] = 1;
            return MixedPolynomial::monomial(dim_, 1.0, nu, mu);
        }
        if (c == 't' && !ident_char(pos_ + 1)) {
            if (!param_) fail("the parameter t is only allowed in family input");
            ++pos_;
            Exponents nu(dim_, 0), mu(dim_, 0);
            nu[0] = 1;
            return MixedPolynomial::monomial(dim_, 1.0, nu, mu);
        }
        if (c == 'i' && !ident_char(pos_ + 1)) {
            ++pos_;
            return constant(Complex(0.0, 1.0));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
            if (res.ec != std::errc()) fail("malformed number");
            pos_ = static_cast<std::size_t>(res.ptr - s_.data());
            if (pos_ < s_.size() && s_[pos_] == 'i' && !ident_char(pos_ + 1)) {
                ++pos_;
                return constant(Complex(0.0, value));
            }
            if (!std::isfinite(value)) fail("number out of range");
            return constant(Complex(value, 0.0));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    int n_;
    bool param_;
    int dim_;
    std::size_t pos_ = 0;
};

}  // namespace

MixedPolynomial parse_polynomial(std::string_view text, int n, bool with_parameter) {
    if (n <= 0) n = infer_dimension(text);
    return Parser(text, n, with_parameter).run();
}

}  // namespace mixsing
