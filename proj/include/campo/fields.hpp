#ifndef CAMPO_FIELDS_HPP
#define CAMPO_FIELDS_HPP

#include "campo/parse.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace campo {

/// P d/dx + Q d/dy over the chart named by vars.
struct PlanarField {
    Vars vars;
    ExpPoly P;
    ExpPoly Q;

    bool is_zero() const { return P.is_zero() && Q.is_zero(); }
    bool is_polynomial() const { return P.is_polynomial() && Q.is_polynomial(); }
    bool is_laurent() const { return P.is_laurent() && Q.is_laurent(); }

    friend PlanarField operator*(const ExpPoly& f, const PlanarField& X) { return {X.vars, f * X.P, f * X.Q}; }
    friend PlanarField operator+(const PlanarField& a, const PlanarField& b)
    {
        if (a.vars != b.vars) throw std::invalid_argument("fields live in different charts");
        return {a.vars, a.P + b.P, a.Q + b.Q};
    }
    friend bool operator==(const PlanarField& a, const PlanarField& b)
    {
        return a.vars == b.vars && a.P == b.P && a.Q == b.Q;
    }
    friend bool operator!=(const PlanarField& a, const PlanarField& b) { return !(a == b); }
};

inline PlanarField make_field(std::string_view P, std::string_view Q, const Vars& vars = {})
{
    return {vars, parse(P, vars), parse(Q, vars)};
}

inline std::string to_string(const PlanarField& X)
{
    return "(" + to_string(X.P, X.vars) + ")*d/d" + X.vars.first + " + (" + to_string(X.Q, X.vars) + ")*d/d" +
           X.vars.second;
}

/// X(f) = P df/dx + Q df/dy.
inline ExpPoly lie(const PlanarField& X, const ExpPoly& f)
{
    return X.P * f.diff(0) + X.Q * f.diff(1);
}

/// Components of [X, Y] = X(Y_i) - Y(X_i).
inline PlanarField bracket(const PlanarField& X, const PlanarField& Y)
{
    return {X.vars, lie(X, Y.P) - lie(Y, X.P), lie(X, Y.Q) - lie(Y, X.Q)};
}

/// gcd(P, Q) is a nonzero constant.
inline bool has_isolated_singularities(const PlanarField& Y)
{
    if (!Y.is_polynomial()) throw std::invalid_argument("isolated-singularity test needs polynomial components");
    if (Y.is_zero()) throw std::invalid_argument("zero field has no isolated singularities");
    return gcd2(Y.P.as_laurent(), Y.Q.as_laurent()).is_constant();
}

/// Cofactor k with Y(h) = k h when h is an invariant curve of Y.
inline std::optional<ExpPoly> invariant_cofactor(const PlanarField& Y, const LaurentPoly2& h)
{
    if (h.is_constant()) throw std::invalid_argument("invariant-curve test needs a nonconstant h");
    ExpPoly yh = lie(Y, ExpPoly(h));
    ExpPoly k;
    for (const auto& t : yh.terms()) {
        if (!divides(h, t.coeff.num())) return std::nullopt;
        k += ExpPoly::term(RationalFn2(*divide_exact(t.coeff.num(), h), t.coeff.den()), t.exponent);
    }
    return k;
}

inline bool is_invariant_curve(const PlanarField& Y, const LaurentPoly2& h)
{
    return invariant_cofactor(Y, h).has_value();
}

/// A change of coordinates (x, y) -> forward(x, y) with a caller-supplied inverse.
/// Rational entries are allowed; for maps such as (1/x, 1/y) conjugacy holds only off
/// the coordinate axes.
struct PolyMap {
    Substitution forward;
    std::optional<Substitution> inverse;
};

inline bool verify_inverse(const PolyMap& phi)
{
    if (!phi.inverse) return false;
    const auto& f = phi.forward;
    const auto& g = *phi.inverse;
    RationalFn2 x(LaurentPoly2::var(0)), y(LaurentPoly2::var(1));
    return substitute(f.first, g) == x && substitute(f.second, g) == y && substitute(g.first, f) == x &&
           substitute(g.second, f) == y;
}

/// phi^* X = (D phi)^{-1} (X o phi): the field whose flow is conjugate to X's through phi.
inline PlanarField pullback_automorphism(const PlanarField& X, const PolyMap& phi)
{
    if (!phi.inverse) throw std::invalid_argument("map has no inverse");
    if (!verify_inverse(phi)) throw std::invalid_argument("supplied inverse does not invert the map");
    ExpPoly P = substitute(X.P, phi.forward);
    ExpPoly Q = substitute(X.Q, phi.forward);
    const auto& f = phi.forward;
    RationalFn2 a = f.first.diff(0), b = f.first.diff(1), c = f.second.diff(0), d = f.second.diff(1);
    RationalFn2 det = a * d - b * c;
    if (det.is_zero()) throw std::invalid_argument("map has vanishing Jacobian");
    RationalFn2 inv = det.inverse();
    return {X.vars, ExpPoly(d * inv) * P - ExpPoly(b * inv) * Q, ExpPoly(a * inv) * Q - ExpPoly(c * inv) * P};
}

/// The birational chart (u, v) -> (x, y) = (u^n, u^{-(m + n l)} (v - u^m p(u^n))) in which
/// R = x^m (x^l y + p(x))^n becomes v^n.
struct HMap {
    int m = 1;
    int n = 1;
    int l = 0;
    UniPoly p{"x"};

    /// Empty string when valid, otherwise the name of the violated condition.
    std::string violation() const
    {
        if (m <= 0) return "m_positive";
        if (n == 0) return "n_nonzero";
        if (l < 0) return "l_nonnegative";
        if (std::gcd(m, std::abs(n)) != 1) return "coprimality";
        if (!p.is_polynomial()) return "p_polynomial";
        if (p.degree() >= l) return l == 0 ? "p_zero_when_l_zero" : "degree_bound";
        if (l > 0 && p.at_zero().is_zero()) return "p_zero_at_origin";
        return {};
    }
    void validate() const
    {
        auto v = violation();
        if (!v.empty()) throw std::invalid_argument("invalid chart parameters: " + v);
    }

    int weight() const { return m + n * l; }

    /// x^l y + p(x) in (x, y).
    LaurentPoly2 w() const { return LaurentPoly2::monomial(1, l, 1) + p.as_laurent(0); }
    /// R = x^m w^n as a rational function (n may be negative).
    RationalFn2 R() const
    {
        return RationalFn2(LaurentPoly2::monomial(1, m, 0)) * RationalFn2(w()).pow(n);
    }

    /// x and y as Laurent polynomials in (u, v).
    Substitution to_xy() const
    {
        LaurentPoly2 x = LaurentPoly2::monomial(1, n, 0);
        LaurentPoly2 pu = p.rescaled_power(n).as_laurent(0);  // p(u^n)
        LaurentPoly2 y = (LaurentPoly2::var(1) - pu.shifted(Mono{m, 0})).shifted(Mono{-weight(), 0});
        return {RationalFn2(x), RationalFn2(y)};
    }
};

namespace detail {

// (u, v)-Laurent expression back to (x, y): substitute v = u^{m+nl} y + u^m p(u^n) and
// then u^{n j} -> x^j; fails when a u exponent is not a multiple of n.
inline std::optional<LaurentPoly2> chart_laurent_to_xy(const LaurentPoly2& e, const HMap& H)
{
    LaurentPoly2 pu = H.p.rescaled_power(H.n).as_laurent(0).shifted(Mono{H.m, 0});
    LaurentPoly2 v = LaurentPoly2::monomial(1, H.weight(), 1) + pu;  // in (u, y)
    auto img = substitute(e, Substitution{RationalFn2(LaurentPoly2::var(0)), RationalFn2(v)});
    LaurentPoly2 uy = img.num();
    LaurentPoly2 out;
    int n = std::abs(H.n);
    for (const auto& [mo, c] : uy.terms()) {
        if (mo.i % n != 0) return std::nullopt;
        out.add_term(Mono{mo.i / H.n, mo.j}, c);
    }
    return out;
}

inline std::optional<RationalFn2> chart_rational_to_xy(const RationalFn2& r, const HMap& H)
{
    LaurentPoly2 pu = H.p.rescaled_power(H.n).as_laurent(0).shifted(Mono{H.m, 0});
    LaurentPoly2 v = LaurentPoly2::monomial(1, H.weight(), 1) + pu;
    RationalFn2 img = substitute(r, Substitution{RationalFn2(LaurentPoly2::var(0)), RationalFn2(v)});
    auto convert = [&](const LaurentPoly2& e) -> std::optional<LaurentPoly2> {
        LaurentPoly2 out;
        int n = std::abs(H.n);
        for (const auto& [mo, c] : e.terms()) {
            if (mo.i % n != 0) return std::nullopt;
            out.add_term(Mono{mo.i / H.n, mo.j}, c);
        }
        return out;
    };
    auto num = convert(img.num());
    auto den = convert(img.den());
    if (!num || !den) return std::nullopt;
    return RationalFn2(*num, *den);
}

}  // namespace detail

/// Express a (u, v)-chart expression in (x, y); nullopt when it is not single-valued there.
inline std::optional<ExpPoly> chart_to_xy(const ExpPoly& e, const HMap& H)
{
    ExpPoly out;
    for (const auto& t : e.terms()) {
        auto c = detail::chart_rational_to_xy(t.coeff, H);
        auto s = detail::chart_laurent_to_xy(t.exponent, H);
        if (!c || !s) return std::nullopt;
        out += ExpPoly::term(*c, *s);
    }
    return out;
}

/// H^* X in (u, v): u' = x'/(n u^{n-1}), v' = dv/du|_{y(u,v)} u' + u^{m+nl} y'.
inline PlanarField pullback_H(const PlanarField& X, const HMap& H, const Vars& chart = {"u", "v"})
{
    H.validate();
    Substitution s = H.to_xy();
    ExpPoly P = substitute(X.P, s);
    ExpPoly Q = substitute(X.Q, s);
    const int m = H.m, n = H.n, k = H.weight();
    ExpPoly U = ExpPoly(LaurentPoly2::monomial(CNum(1) / CNum(n), 1 - n, 0)) * P;
    // v = u^k y + u^m p(u^n); dv/du with y expressed in the chart.
    LaurentPoly2 y = s.second.num();
    LaurentPoly2 pu = H.p.rescaled_power(n).as_laurent(0);
    LaurentPoly2 dpu = H.p.derivative().rescaled_power(n).as_laurent(0);
    LaurentPoly2 dv_du = LaurentPoly2::monomial(CNum(k), k - 1, 0) * y + pu.shifted(Mono{m - 1, 0}) * CNum(m) +
                         dpu.shifted(Mono{m + n - 1, 0}) * CNum(n);
    ExpPoly V = ExpPoly(dv_du) * U + ExpPoly(LaurentPoly2::monomial(1, k, 0)) * Q;
    return {chart, U, V};
}

/// Inverse of pullback_H: pushes a (u, v) field to (x, y), failing when the image is not
/// single-valued in (x, y).
inline PlanarField pushforward_H(const PlanarField& Z, const HMap& H, const Vars& plane = {"x", "y"})
{
    H.validate();
    Substitution s = H.to_xy();
    const int n = H.n;
    ExpPoly xdot = ExpPoly(LaurentPoly2::monomial(CNum(n), n - 1, 0)) * Z.P;
    LaurentPoly2 y = s.second.num();
    ExpPoly ydot = ExpPoly(y.diff(0)) * Z.P + ExpPoly(y.diff(1)) * Z.Q;
    auto px = chart_to_xy(xdot, H);
    auto py = chart_to_xy(ydot, H);
    if (!px || !py) throw std::invalid_argument("pushforward is not single-valued in (x, y)");
    return {plane, *px, *py};
}

}  // namespace campo

#endif  // CAMPO_FIELDS_HPP
