#ifndef CAMPO_EXPPOLY_HPP
#define CAMPO_EXPPOLY_HPP

#include "campo/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace campo {

/// Finite sum of coeff * exp(exponent) with rational-function coefficients and
/// Laurent-polynomial exponents. Terms are sorted by exponent, exponents are pairwise
/// distinct and coefficients nonzero, so equality of canonical forms is equality of
/// functions (exponents differing by a nonzero constant stay independent over Q(i)).
class ExpPoly {
public:
    struct Term {
        RationalFn2 coeff;
        LaurentPoly2 exponent;
    };

    ExpPoly() = default;
    ExpPoly(RationalFn2 r)  // NOLINT(google-explicit-constructor)
    {
        if (!r.is_zero()) terms_.push_back({std::move(r), LaurentPoly2{}});
    }
    ExpPoly(LaurentPoly2 p) : ExpPoly(RationalFn2(std::move(p))) {}  // NOLINT(google-explicit-constructor)
    ExpPoly(const CNum& c) : ExpPoly(RationalFn2(c)) {}  // NOLINT(google-explicit-constructor)
    ExpPoly(long c) : ExpPoly(RationalFn2(c)) {}  // NOLINT(google-explicit-constructor)

    static ExpPoly exp(LaurentPoly2 exponent) { return term(RationalFn2(1), std::move(exponent)); }
    static ExpPoly term(RationalFn2 coeff, LaurentPoly2 exponent)
    {
        ExpPoly e;
        if (!coeff.is_zero()) e.terms_.push_back({std::move(coeff), std::move(exponent)});
        return e;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// No exp factors: a plain rational function.
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }
    RationalFn2 as_rational() const
    {
        if (!is_rational()) throw std::invalid_argument("expression contains exp factors");
        return terms_.empty() ? RationalFn2{} : terms_[0].coeff;
    }
    bool is_laurent() const { return is_rational() && as_rational().is_laurent(); }
    bool is_polynomial() const { return is_rational() && as_rational().is_polynomial(); }
    LaurentPoly2 as_laurent() const
    {
        auto r = as_rational();
        if (!r.is_laurent()) throw std::invalid_argument("expression is not a Laurent polynomial");
        return r.num() * (CNum(1) / r.den().constant_value());
    }

    ExpPoly operator-() const
    {
        ExpPoly e = *this;
        for (auto& t : e.terms_) t.coeff = -t.coeff;
        return e;
    }
    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b)
    {
        ExpPoly out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            int c = ia == a.terms_.end() ? 1 : ib == b.terms_.end() ? -1 : compare(ia->exponent, ib->exponent);
            if (c < 0) out.terms_.push_back(*ia++);
            else if (c > 0) out.terms_.push_back(*ib++);
            else {
                auto s = ia->coeff + ib->coeff;
                if (!s.is_zero()) out.terms_.push_back({std::move(s), ia->exponent});
                ++ia;
                ++ib;
            }
        }
        return out;
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b)
    {
        ExpPoly out;
        for (const auto& ta : a.terms_) {
            ExpPoly partial;
            for (const auto& tb : b.terms_) partial.insert(ta.coeff * tb.coeff, ta.exponent + tb.exponent);
            out = out + partial;
        }
        return out;
    }
    ExpPoly& operator+=(const ExpPoly& o) { return *this = *this + o; }
    ExpPoly& operator-=(const ExpPoly& o) { return *this = *this - o; }
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }

    /// Inverse exists in the class only for single terms r*exp(s).
    std::optional<ExpPoly> inverse() const
    {
        if (terms_.size() != 1 || terms_[0].coeff.is_zero()) return std::nullopt;
        return term(terms_[0].coeff.inverse(), -terms_[0].exponent);
    }

    ExpPoly pow(int e) const
    {
        if (e < 0) {
            auto inv = inverse();
            if (!inv) throw std::invalid_argument("negative power of a multi-term exp-polynomial");
            return inv->pow(-e);
        }
        ExpPoly result(1), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// Exact partial derivative; d(r e^s) = (dr + r ds) e^s.
    ExpPoly diff(int k) const
    {
        ExpPoly out;
        for (const auto& t : terms_) {
            RationalFn2 c = t.coeff.diff(k);
            if (!t.exponent.is_zero()) c += t.coeff * RationalFn2(t.exponent.diff(k));
            out = out + term(std::move(c), t.exponent);
        }
        return out;
    }

    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const
    {
        std::complex<double> s = 0;
        for (const auto& t : terms_) s += t.coeff.eval(x, y) * std::exp(t.exponent.eval(x, y));
        return s;
    }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k)
            if (a.terms_[k].coeff != b.terms_[k].coeff || a.terms_[k].exponent != b.terms_[k].exponent) return false;
        return true;
    }
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

private:
    void insert(RationalFn2 c, LaurentPoly2 s)
    {
        *this = *this + term(std::move(c), std::move(s));
    }

    std::vector<Term> terms_;
};

/// Partial derivative by variable name.
inline ExpPoly diff(const ExpPoly& e, const std::string& var, const Vars& vars = {})
{
    if (var == vars.first) return e.diff(0);
    if (var == vars.second) return e.diff(1);
    throw std::invalid_argument("unknown variable " + var);
}

/// Substitution of both variables by rational functions.
struct Substitution {
    RationalFn2 first;
    RationalFn2 second;
};

namespace detail {

// Caches integer powers of the substituted variables.
class PowerCache {
public:
    explicit PowerCache(const Substitution& s) : base_{s.first, s.second} {}

    const RationalFn2& get(int k, int e)
    {
        auto& m = cache_[k];
        auto it = m.find(e);
        if (it != m.end()) return it->second;
        RationalFn2 v;
        if (e == 0) v = RationalFn2(1);
        else if (e > 0) v = get(k, e - 1) * base_[k];
        else v = get(k, e + 1) * base_[k].inverse();
        return m.emplace(e, std::move(v)).first->second;
    }

private:
    RationalFn2 base_[2];
    std::map<int, RationalFn2> cache_[2];
};

inline RationalFn2 substitute_laurent(const LaurentPoly2& p, PowerCache& pc)
{
    RationalFn2 out;
    LaurentPoly2 laurent_acc;
    for (const auto& [m, c] : p.terms()) {
        RationalFn2 t = pc.get(0, m.i) * pc.get(1, m.j);
        if (t.is_laurent()) {
            laurent_acc += t.num() * (c / t.den().constant_value());
        } else {
            out += t * RationalFn2(c);
        }
    }
    return out + RationalFn2(laurent_acc);
}

}  // namespace detail

inline RationalFn2 substitute(const LaurentPoly2& p, const Substitution& s)
{
    detail::PowerCache pc(s);
    return detail::substitute_laurent(p, pc);
}

inline RationalFn2 substitute(const RationalFn2& r, const Substitution& s)
{
    detail::PowerCache pc(s);
    auto n = detail::substitute_laurent(r.num(), pc);
    if (r.den().is_constant()) return n * RationalFn2(CNum(1) / r.den().constant_value());
    return n / detail::substitute_laurent(r.den(), pc);
}

/// Compose e with a substitution of both variables; exponents must stay Laurent.
inline ExpPoly substitute(const ExpPoly& e, const Substitution& s)
{
    detail::PowerCache pc(s);
    ExpPoly out;
    for (const auto& t : e.terms()) {
        auto n = detail::substitute_laurent(t.coeff.num(), pc);
        RationalFn2 c = t.coeff.den().is_constant() ? n * RationalFn2(CNum(1) / t.coeff.den().constant_value())
                                                    : n / detail::substitute_laurent(t.coeff.den(), pc);
        RationalFn2 ex = detail::substitute_laurent(t.exponent, pc);
        if (!ex.is_laurent()) throw std::invalid_argument("substituted exponent is not a Laurent polynomial");
        out += ExpPoly::term(std::move(c), ex.num() * (CNum(1) / ex.den().constant_value()));
    }
    return out;
}

/// lambda(r) for a univariate Laurent polynomial lambda and a rational function r.
inline RationalFn2 compose(const UniPoly& lambda, const RationalFn2& r)
{
    RationalFn2 out;
    if (lambda.is_zero()) return out;
    // Horner over the exponent range, with negative powers handled by one inverse.
    int lo = lambda.ord(), hi = lambda.degree();
    RationalFn2 acc;
    for (int e = hi; e >= lo; --e) {
        acc = acc * r + RationalFn2(lambda.coeff(e));
    }
    if (lo == 0) return acc;
    return acc * r.pow(lo);
}

}  // namespace campo

#endif  // CAMPO_EXPPOLY_HPP
