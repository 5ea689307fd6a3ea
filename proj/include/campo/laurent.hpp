#ifndef CAMPO_LAURENT_HPP
#define CAMPO_LAURENT_HPP

#include "campo/number.hpp"

#include <algorithm>
#include <climits>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace campo {

/// Exponent pair (i, j) of the monomial x^i y^j; negative entries allowed.
struct Mono {
    int i = 0;
    int j = 0;

    int degree() const { return i + j; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(const Mono& a, const Mono& b) { return !(a == b); }
    friend Mono operator+(Mono a, Mono b) { return {a.i + b.i, a.j + b.j}; }
    friend Mono operator-(Mono a, Mono b) { return {a.i - b.i, a.j - b.j}; }
};

/// Graded lexicographic order with x > y: total degree first, then the x exponent.
struct GrLexLess {
    bool operator()(const Mono& a, const Mono& b) const
    {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i < b.i;
    }
};

/// Variable names of a two-variable chart, e.g. (x, y) or (u, v).
struct Vars {
    std::string first = "x";
    std::string second = "y";

    friend bool operator==(const Vars& a, const Vars& b) { return a.first == b.first && a.second == b.second; }
    friend bool operator!=(const Vars& a, const Vars& b) { return !(a == b); }
    const std::string& operator[](int k) const { return k == 0 ? first : second; }
};

/// Sparse Laurent polynomial in two variables with Gaussian-rational coefficients.
/// Variables are positional; names live in Vars at the field/printing level.
class LaurentPoly2 {
public:
    using TermMap = std::map<Mono, CNum, GrLexLess>;

    LaurentPoly2() = default;
    LaurentPoly2(const CNum& c)  // NOLINT(google-explicit-constructor)
    {
        if (!c.is_zero()) terms_.emplace(Mono{0, 0}, c);
    }
    LaurentPoly2(long c) : LaurentPoly2(CNum(c)) {}  // NOLINT(google-explicit-constructor)

    static LaurentPoly2 monomial(const CNum& c, int i, int j)
    {
        LaurentPoly2 p;
        if (!c.is_zero()) p.terms_.emplace(Mono{i, j}, c);
        return p;
    }
    static LaurentPoly2 var(int k) { return k == 0 ? monomial(1, 1, 0) : monomial(1, 0, 1); }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0}); }
    bool is_monomial() const { return terms_.size() == 1; }

    CNum constant_value() const
    {
        auto it = terms_.find(Mono{0, 0});
        return it == terms_.end() ? CNum(0) : it->second;
    }
    CNum coeff(Mono m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? CNum(0) : it->second;
    }

    /// All exponents nonnegative.
    bool is_polynomial() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.i >= 0 && t.first.j >= 0; });
    }

    /// Leading term under graded lex; requires nonzero.
    const std::pair<const Mono, CNum>& leading() const { return *terms_.rbegin(); }
    const CNum& leading_coeff() const { return terms_.rbegin()->second; }

    int total_degree() const
    {
        int d = INT_MIN;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return terms_.empty() ? 0 : d;
    }
    int max_exp(int k) const
    {
        int d = INT_MIN;
        for (const auto& [m, c] : terms_) d = std::max(d, k == 0 ? m.i : m.j);
        return terms_.empty() ? 0 : d;
    }
    int min_exp(int k) const
    {
        int d = INT_MAX;
        for (const auto& [m, c] : terms_) d = std::min(d, k == 0 ? m.i : m.j);
        return terms_.empty() ? 0 : d;
    }
    /// Componentwise minimal exponent: the monomial content in the Laurent sense.
    Mono min_mono() const { return {min_exp(0), min_exp(1)}; }

    LaurentPoly2 shifted(Mono s) const
    {
        LaurentPoly2 out;
        for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m + s, c);
        return out;
    }

    void add_term(Mono m, const CNum& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly2 operator-() const
    {
        LaurentPoly2 out = *this;
        for (auto& [m, c] : out.terms_) c = -c;
        return out;
    }
    LaurentPoly2& operator+=(const LaurentPoly2& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    LaurentPoly2& operator*=(const CNum& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator*(LaurentPoly2 a, const CNum& s) { return a *= s; }
    friend LaurentPoly2 operator*(const CNum& s, LaurentPoly2 a) { return a *= s; }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b)
    {
        if (a.terms_.size() < b.terms_.size()) return b * a;
        LaurentPoly2 out;
        for (const auto& [mb, cb] : b.terms_)
            for (const auto& [ma, ca] : a.terms_) out.add_term(ma + mb, ca * cb);
        return out;
    }
    LaurentPoly2& operator*=(const LaurentPoly2& o) { return *this = *this * o; }

    LaurentPoly2 pow(unsigned e) const
    {
        LaurentPoly2 result(1), base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e > 0) base *= base;
        }
        return result;
    }

    LaurentPoly2 diff(int k) const
    {
        LaurentPoly2 out;
        for (const auto& [m, c] : terms_) {
            int e = k == 0 ? m.i : m.j;
            if (e == 0) continue;
            Mono d = k == 0 ? Mono{m.i - 1, m.j} : Mono{m.i, m.j - 1};
            out.terms_.emplace(d, c * CNum(e));
        }
        return out;
    }

    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const
    {
        std::complex<double> s = 0;
        for (const auto& [m, c] : terms_) s += c.to_complex() * ipow(x, m.i) * ipow(y, m.j);
        return s;
    }

    /// Total order used to sort exp-polynomial exponents.
    friend int compare(const LaurentPoly2& a, const LaurentPoly2& b)
    {
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        GrLexLess less;
        for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return less(ia->first, ib->first) ? -1 : 1;
            int c = compare(ia->second, ib->second);
            if (c != 0) return c;
        }
        if (ia == a.terms_.end() && ib == b.terms_.end()) return 0;
        return ia == a.terms_.end() ? -1 : 1;
    }
    friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly2& a, const LaurentPoly2& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly2& a, const LaurentPoly2& b) { return compare(a, b) < 0; }

private:
    TermMap terms_;
};

/// Univariate Laurent polynomial, e.g. p(x), lambda(z), a(v).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::string var) : var_(std::move(var)) {}
    UniPoly(std::string var, std::map<int, CNum> coeffs) : var_(std::move(var))
    {
        for (auto& [e, c] : coeffs)
            if (!c.is_zero()) coeffs_.emplace(e, c);
    }
    static UniPoly constant(std::string var, const CNum& c) { return UniPoly(std::move(var), {{0, c}}); }
    static UniPoly monomial(std::string var, const CNum& c, int e) { return UniPoly(std::move(var), {{e, c}}); }

    const std::string& var() const { return var_; }
    const std::map<int, CNum>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_polynomial() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

    /// Minimal exponent; requires nonzero.
    int ord() const { return coeffs_.begin()->first; }
    /// Maximal exponent; -1 for the zero polynomial.
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    CNum coeff(int e) const
    {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? CNum(0) : it->second;
    }
    CNum at_zero() const { return coeff(0); }

    UniPoly derivative() const
    {
        std::map<int, CNum> out;
        for (const auto& [e, c] : coeffs_)
            if (e != 0) out.emplace(e - 1, c * CNum(e));
        return UniPoly(var_, out);
    }
    /// Termwise antiderivative; fails on a 1/z term.
    std::optional<UniPoly> antiderivative() const
    {
        std::map<int, CNum> out;
        for (const auto& [e, c] : coeffs_) {
            if (e == -1) return std::nullopt;
            out.emplace(e + 1, c / CNum(e + 1));
        }
        return UniPoly(var_, out);
    }

    /// Embed as a bivariate Laurent polynomial in coordinate k (0 = first variable).
    LaurentPoly2 as_laurent(int k) const
    {
        LaurentPoly2 out;
        for (const auto& [e, c] : coeffs_) out.add_term(k == 0 ? Mono{e, 0} : Mono{0, e}, c);
        return out;
    }

    /// Substitute z -> c * z^s for an integer s (used for p(u^n)).
    UniPoly rescaled_power(int s) const
    {
        std::map<int, CNum> out;
        for (const auto& [e, c] : coeffs_) out.emplace(e * s, c);
        return UniPoly(var_, out);
    }

    std::complex<double> eval(std::complex<double> z) const
    {
        std::complex<double> s = 0;
        for (const auto& [e, c] : coeffs_) s += c.to_complex() * ipow(z, e);
        return s;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

private:
    std::string var_ = "z";
    std::map<int, CNum> coeffs_;
};

}  // namespace campo

#endif  // CAMPO_LAURENT_HPP
