#ifndef CAMPO_GCD_HPP
#define CAMPO_GCD_HPP

#include "campo/laurent.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace campo {

namespace detail {

template <class R>
struct Dense;
inline bool is_zero(const CNum& a) { return a.is_zero(); }
template <class R>
bool is_zero(const Dense<R>& a);

// Dense univariate polynomial over a coefficient ring R, lowest degree first.
// Used only as the recursive representation K[y][x] for gcd computations.
template <class R>
struct Dense {
    std::vector<R> c;

    void trim()
    {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const R& lc() const { return c.back(); }
};

template <class R>
bool is_zero(const Dense<R>& a)
{
    return a.c.empty();
}

inline CNum one_like(const CNum&) { return CNum(1); }
template <class R>
Dense<R> one_like(const Dense<R>& a)
{
    Dense<R> o;
    o.c.push_back(one_like(a.c.empty() ? R{} : a.c.front()));
    return o;
}

template <class R>
Dense<R> operator+(const Dense<R>& a, const Dense<R>& b)
{
    Dense<R> out;
    out.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < out.c.size(); ++k) {
        if (k < a.c.size() && k < b.c.size()) out.c[k] = a.c[k] + b.c[k];
        else out.c[k] = k < a.c.size() ? a.c[k] : b.c[k];
    }
    out.trim();
    return out;
}
template <class R>
Dense<R> operator-(const Dense<R>& a)
{
    Dense<R> out = a;
    for (auto& x : out.c) x = -x;
    return out;
}
template <class R>
Dense<R> operator-(const Dense<R>& a, const Dense<R>& b)
{
    return a + (-b);
}
template <class R>
Dense<R> operator*(const Dense<R>& a, const Dense<R>& b)
{
    Dense<R> out;
    if (a.c.empty() || b.c.empty()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, R{});
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
    }
    out.trim();
    return out;
}
template <class R>
Dense<R> scale(const Dense<R>& a, const R& s)
{
    Dense<R> out = a;
    for (auto& x : out.c) x = x * s;
    out.trim();
    return out;
}

inline std::optional<CNum> exact_div(const CNum& a, const CNum& b)
{
    return a / b;
}

// Exact division in R[t]; nullopt when b does not divide a.
template <class R>
std::optional<Dense<R>> exact_div(const Dense<R>& a, const Dense<R>& b)
{
    if (b.c.empty()) throw std::domain_error("division by the zero polynomial");
    Dense<R> rem = a, q;
    if (rem.c.empty()) return q;
    if (rem.degree() < b.degree()) return std::nullopt;
    q.c.assign(rem.degree() - b.degree() + 1, R{});
    while (!rem.c.empty() && rem.degree() >= b.degree()) {
        auto t = exact_div(rem.lc(), b.lc());
        if (!t) return std::nullopt;
        int shift = rem.degree() - b.degree();
        q.c[shift] = *t;
        for (std::size_t k = 0; k < b.c.size(); ++k) rem.c[k + shift] = rem.c[k + shift] - *t * b.c[k];
        rem.trim();
    }
    if (!rem.c.empty()) return std::nullopt;
    q.trim();
    return q;
}

template <class R>
Dense<R> exact_div_scalar(const Dense<R>& a, const R& s)
{
    Dense<R> out;
    for (const auto& x : a.c) {
        auto q = exact_div(x, s);
        if (!q) throw std::logic_error("inexact scalar division in subresultant sequence");
        out.c.push_back(*q);
    }
    out.trim();
    return out;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
template <class R>
Dense<R> prem(Dense<R> a, const Dense<R>& b)
{
    int db = b.degree();
    int e = a.degree() - db + 1;
    while (!a.c.empty() && a.degree() >= db) {
        R lead = a.lc();
        int shift = a.degree() - db;
        for (auto& x : a.c) x = x * b.lc();
        for (std::size_t k = 0; k < b.c.size(); ++k) a.c[k + shift] = a.c[k + shift] - lead * b.c[k];
        a.trim();
        --e;
    }
    R f = one_like(b.lc());
    for (; e > 0; --e) f = f * b.lc();
    return scale(a, f);
}

template <class R>
R power(const R& a, int e)
{
    R r = one_like(a);
    for (int k = 0; k < e; ++k) r = r * a;
    return r;
}

inline CNum gcd(const CNum& a, const CNum& b)
{
    return (a.is_zero() && b.is_zero()) ? CNum(0) : CNum(1);
}

// Field case K[t]: monic Euclid.
inline Dense<CNum> monic(const Dense<CNum>& a)
{
    if (a.c.empty()) return a;
    return scale(a, CNum(1) / a.lc());
}
inline Dense<CNum> gcd(Dense<CNum> a, Dense<CNum> b)
{
    while (!b.c.empty()) {
        Dense<CNum> r = a;
        // Plain remainder over the field.
        while (!r.c.empty() && r.degree() >= b.degree()) {
            CNum t = r.lc() / b.lc();
            int shift = r.degree() - b.degree();
            for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k + shift] -= t * b.c[k];
            r.trim();
        }
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Ring case K[y][x]: content / primitive part with the subresultant PRS.
inline Dense<CNum> content(const Dense<Dense<CNum>>& a)
{
    Dense<CNum> g;
    for (const auto& x : a.c) g = gcd(g, x);
    return g;
}
inline Dense<Dense<CNum>> primitive_part(const Dense<Dense<CNum>>& a)
{
    if (a.c.empty()) return a;
    return exact_div_scalar(a, content(a));
}

inline Dense<Dense<CNum>> subresultant_gcd(Dense<Dense<CNum>> a, Dense<Dense<CNum>> b)
{
    using K = Dense<CNum>;
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.c.empty()) return a;
    K g = one_like(a.lc()), h = g;
    while (true) {
        int d = a.degree() - b.degree();
        auto r = prem(a, b);
        if (r.c.empty()) return b;
        if (r.degree() == 0) {
            Dense<K> unit;
            unit.c.push_back(one_like(g));
            return unit;
        }
        a = b;
        b = exact_div_scalar(r, g * power(h, d));
        g = a.lc();
        if (d == 0) continue;
        // h <- g^d / h^(d-1)
        auto num = power(g, d);
        auto den = power(h, d - 1);
        auto q = exact_div(num, den);
        if (!q) throw std::logic_error("inexact subresultant h update");
        h = *q;
    }
}

inline Dense<Dense<CNum>> gcd(const Dense<Dense<CNum>>& a, const Dense<Dense<CNum>>& b)
{
    if (a.c.empty()) return b;
    if (b.c.empty()) return a;
    auto c = gcd(content(a), content(b));
    auto g = primitive_part(subresultant_gcd(primitive_part(a), primitive_part(b)));
    return scale(g, c);
}

// LaurentPoly2 with nonnegative exponents <-> K[y][x].
inline Dense<Dense<CNum>> to_dense(const LaurentPoly2& p)
{
    Dense<Dense<CNum>> out;
    if (p.is_zero()) return out;
    out.c.resize(p.max_exp(0) + 1);
    for (const auto& [m, c] : p.terms()) {
        auto& row = out.c[m.i].c;
        if (row.size() <= static_cast<std::size_t>(m.j)) row.resize(m.j + 1);
        row[m.j] = c;
    }
    for (auto& row : out.c) row.trim();
    out.trim();
    return out;
}
inline LaurentPoly2 from_dense(const Dense<Dense<CNum>>& d)
{
    LaurentPoly2 out;
    for (std::size_t i = 0; i < d.c.size(); ++i)
        for (std::size_t j = 0; j < d.c[i].c.size(); ++j) out.add_term(Mono{int(i), int(j)}, d.c[i].c[j]);
    return out;
}

}  // namespace detail

/// Scale so that the graded-lex leading coefficient is 1.
inline LaurentPoly2 make_monic(const LaurentPoly2& p)
{
    if (p.is_zero()) return p;
    return p * (CNum(1) / p.leading_coeff());
}

/// Shift a Laurent polynomial to a polynomial with no monomial content.
inline LaurentPoly2 strip_monomial(const LaurentPoly2& p, Mono* removed = nullptr)
{
    Mono m = p.min_mono();
    if (removed) *removed = m;
    return p.shifted(Mono{-m.i, -m.j});
}

/// Greatest common divisor of two bivariate (Laurent) polynomials, monic under graded lex.
/// Laurent inputs are first shifted to polynomials; the result is a polynomial.
inline LaurentPoly2 gcd2(const LaurentPoly2& a, const LaurentPoly2& b)
{
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd2 of two zero polynomials");
    auto to_poly = [](const LaurentPoly2& p) {
        Mono m = p.min_mono();
        return p.shifted(Mono{std::max(0, -m.i), std::max(0, -m.j)});
    };
    if (b.is_zero()) return make_monic(to_poly(a));
    if (a.is_zero()) return make_monic(to_poly(b));
    Mono ma, mb;
    LaurentPoly2 pa = strip_monomial(to_poly(a), &ma);
    LaurentPoly2 pb = strip_monomial(to_poly(b), &mb);
    Mono common{std::min(ma.i, mb.i), std::min(ma.j, mb.j)};
    auto g = detail::from_dense(detail::gcd(detail::to_dense(pa), detail::to_dense(pb)));
    return make_monic(g.shifted(common));
}

/// Exact quotient a / b in the Laurent ring, or nullopt if b does not divide a.
inline std::optional<LaurentPoly2> divide_exact(const LaurentPoly2& a, const LaurentPoly2& b)
{
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (a.is_zero()) return LaurentPoly2{};
    Mono sa, sb;
    LaurentPoly2 r = strip_monomial(a, &sa);
    LaurentPoly2 d = strip_monomial(b, &sb);
    if (d.is_monomial()) return a.shifted(Mono{-sb.i - d.leading().first.i, -sb.j - d.leading().first.j}) * (CNum(1) / d.leading_coeff());
    const auto& [lm, lc] = d.leading();
    LaurentPoly2 q;
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        Mono t = rm - lm;
        if (t.i < 0 || t.j < 0) return std::nullopt;
        auto term = LaurentPoly2::monomial(rc / lc, t.i, t.j);
        q += term;
        r -= term * d;
    }
    return q.shifted(sa - sb);
}

/// Divisibility in the ring generated by the dividend: the quotient may not introduce
/// negative exponents beyond those g already carries (so x does not divide xy + 1).
inline bool divides(const LaurentPoly2& h, const LaurentPoly2& g)
{
    if (h.is_zero()) throw std::domain_error("division by the zero polynomial");
    auto q = divide_exact(g, h);
    if (!q) return false;
    if (q->is_zero()) return true;
    return q->min_exp(0) >= std::min(0, g.min_exp(0)) && q->min_exp(1) >= std::min(0, g.min_exp(1));
}

}  // namespace campo

#endif  // CAMPO_GCD_HPP
