#ifndef CAMPO_FAMILIES_HPP
#define CAMPO_FAMILIES_HPP

#include "campo/fields.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace campo {

/// A violated side condition. condition() is a stable identifier such as
/// "coprimality", "degree_bound", "p_zero_at_origin", "order_at_zero", "condition_star",
/// "non_polynomial", "non_isolated_singularities", "epsilon", "c_nonzero", "a_shape",
/// "parameter_range", "opaque_f" or "no_rational_integral".
class FamilyError : public std::invalid_argument {
public:
    FamilyError(std::string condition, const std::string& detail)
        : std::invalid_argument(condition + ": " + detail), condition_(std::move(condition))
    {
    }
    const std::string& condition() const { return condition_; }

private:
    std::string condition_;
};

// An absent f stands for a transcendental factor known only by name.
using OptF = std::optional<ExpPoly>;

namespace fam {

struct S1 {
    UniPoly a{"x"}, b{"x"};
};
struct S2 {
    CNum lambda, mu;
};
struct S3 {
    CNum lambda;
    int m = 0;
};
struct S4 {
    UniPoly lambda{"z"};
    int m = 1, n = 1;
};
struct S5 {
    UniPoly lambda{"z"};
    int m = 1, n = 1, l = 1;
    UniPoly p{"x"};
};
struct BI {
    CNum c, d;
    UniPoly a{"x"}, b{"x"};
};
struct BII {
    CNum a;
    UniPoly lambda{"z"};
    int m = 1, n = 1;
};
struct BIII {
    CNum a;
    UniPoly lambda{"z"};
    int m = 1, n = 1, l = 1;
    UniPoly p{"x"};
};
struct AI {
    OptF f;
    int N = 0, eps = 0;
    CNum C{1};
    UniPoly A{"x"}, B{"x"};
};
struct AII {
    OptF f;
    int kappa = 0, delta = 0;
    CNum a;
    UniPoly lambda{"z"};
    int m = 1, n = 1;
};
struct AIII {
    OptF f;
    int kappa = 0, delta = 0;
    CNum a;
    UniPoly lambda{"z"};
    int m = 1, n = 1, l = 1;
    UniPoly p{"x"};
};
struct B {
    OptF f;
    int m = 1, n = 1, l = 0;
    UniPoly p{"x"};
    CNum c{1};
    UniPoly a{"z"};
};

}  // namespace fam

using FamilySpec = std::variant<fam::S1, fam::S2, fam::S3, fam::S4, fam::S5, fam::BI, fam::BII, fam::BIII, fam::AI,
                                fam::AII, fam::AIII, fam::B>;

inline const char* tag_name(const FamilySpec& s)
{
    static const char* names[] = {"S1", "S2", "S3", "S4", "S5", "BI", "BII", "BIII", "A_I", "A_II", "A_III", "B"};
    return names[s.index()];
}

/// (G, F, Y, R, Omega, j) with G*F*Y the family's field. For B the data live in the
/// (u, v) chart recorded in `chart`.
struct Decomposition {
    ExpPoly G;
    RationalFn2 F;
    PlanarField Y;
    RationalFn2 R;
    CNum Omega;
    int j = 1;
    std::optional<HMap> chart;
};

namespace detail {

inline LaurentPoly2 xpow(int e) { return LaurentPoly2::monomial(1, e, 0); }
inline LaurentPoly2 ypow(int e) { return LaurentPoly2::monomial(1, 0, e); }

inline void require_coprime(int m, int n)
{
    if (m < 1 || n < 1) throw FamilyError("parameter_range", "m and n must be positive");
    if (std::gcd(m, n) != 1) throw FamilyError("coprimality", "gcd(m, n) must be 1");
}

inline void require_p(int l, const UniPoly& p)
{
    if (l < 1) throw FamilyError("parameter_range", "l must be positive");
    if (!p.is_polynomial()) throw FamilyError("parameter_range", "p must be a polynomial");
    if (p.degree() >= l) throw FamilyError("degree_bound", "deg p must be below l");
    if (p.at_zero().is_zero()) throw FamilyError("p_zero_at_origin", "p(0) must be nonzero");
}

inline void require_polynomial_lambda(const UniPoly& lambda)
{
    if (!lambda.is_polynomial()) throw FamilyError("parameter_range", "lambda must be a polynomial in z");
}

inline HMap chart_of(int m, int n, int l, const UniPoly& p)
{
    HMap H{m, n, l, p};
    auto v = H.violation();
    if (v == "coprimality" || v == "degree_bound" || v == "p_zero_at_origin") throw FamilyError(v, "chart parameters");
    if (!v.empty()) throw FamilyError("parameter_range", v);
    return H;
}

inline RationalFn2 x_over(int l) { return RationalFn2(xpow(-l)); }

// n x d/dx - m y d/dy.
inline PlanarField euler(int m, int n)
{
    return {Vars{}, ExpPoly(xpow(1) * CNum(n)), ExpPoly(ypow(1) * CNum(-m))};
}

// V = n x^{l+1} d/dx - [(m + n l) x^l y + m p + n x p'] d/dy.
inline PlanarField suzuki5_bracket(int m, int n, int l, const UniPoly& p)
{
    LaurentPoly2 px = p.as_laurent(0), dpx = p.derivative().as_laurent(0);
    LaurentPoly2 q = LaurentPoly2::monomial(CNum(m + n * l), l, 1) + px * CNum(m) + (dpx * CNum(n)).shifted({1, 0});
    return {Vars{}, ExpPoly(xpow(l + 1) * CNum(n)), ExpPoly(-q)};
}

inline void require_polynomial_field(const PlanarField& Y, const char* what)
{
    if (!Y.is_polynomial()) throw FamilyError("non_polynomial", std::string(what) + " is not polynomial");
    if (Y.is_zero() || !has_isolated_singularities(Y))
        throw FamilyError("non_isolated_singularities", std::string(what) + " has a curve of zeros");
}

inline const ExpPoly& need_f(const OptF& f)
{
    if (!f) throw FamilyError("opaque_f", "operation needs an explicit f");
    return *f;
}

// lambda(R) * (m p + n x p') - a p: condition (*) asks for this to lie in x^l C[x, y].
inline LaurentPoly2 star_residue(const fam::BIII& s)
{
    HMap H{s.m, s.n, s.l, s.p};
    RationalFn2 lam = compose(s.lambda, H.R());
    LaurentPoly2 px = s.p.as_laurent(0), dpx = s.p.derivative().as_laurent(0);
    LaurentPoly2 mp = px * CNum(s.m) + (dpx * CNum(s.n)).shifted({1, 0});
    RationalFn2 e = lam * RationalFn2(mp) - RationalFn2(px * s.a);
    if (!e.is_polynomial()) throw FamilyError("parameter_range", "lambda must be a polynomial in z");
    return e.num();
}

// The rational complete part F*Y of A_II / A_III (forms II and III of the Brunella list).
inline PlanarField brunella2(const CNum& a, const UniPoly& lambda, int m, int n)
{
    RationalFn2 R(xpow(m) * ypow(n));
    PlanarField Z = ExpPoly(compose(lambda, R)) * euler(m, n);
    Z.Q += ExpPoly(ypow(1) * a);
    return Z;
}
inline PlanarField brunella3(const CNum& a, const UniPoly& lambda, int m, int n, int l, const UniPoly& p)
{
    HMap H{m, n, l, p};
    PlanarField Z = ExpPoly(compose(lambda, H.R()) * x_over(l)) * suzuki5_bracket(m, n, l, p);
    Z.Q += ExpPoly(RationalFn2(H.w()) * x_over(l) * RationalFn2(a));
    return Z;
}

inline HMap chart_of_B(const fam::B& s)
{
    if (s.m < 1 || s.n < 1) throw FamilyError("parameter_range", "m and n must be positive");
    if (s.l < 0) throw FamilyError("parameter_range", "l must be nonnegative");
    HMap H = chart_of(s.m, s.n, s.l, s.p);
    if (s.c.is_zero()) throw FamilyError("c_nonzero", "c must be nonzero");
    for (const auto& [e, co] : s.a.coeffs()) {
        if (e < -1 || (e + 1) % s.n != 0) throw FamilyError("a_shape", "a must lie in (1/z) C[z^n]");
    }
    return H;
}

// u^{m+nl} (a(v) u d/du + c d/dv) in the chart.
inline PlanarField b_chart_field(const fam::B& s)
{
    int k = s.m + s.n * s.l;
    LaurentPoly2 av = s.a.as_laurent(1);
    return {Vars{"u", "v"}, ExpPoly(av.shifted({k + 1, 0})), ExpPoly(LaurentPoly2::monomial(s.c, k, 0))};
}

}  // namespace detail

/// Polynomial part Y of a family member. Suzuki and Brunella entries are their own Y;
/// for A-forms and B, Y is the polynomial field multiplied by f (and F) to give X.
inline PlanarField build_Y(const FamilySpec& spec)
{
    using namespace detail;
    return std::visit(
        [](const auto& s) -> PlanarField {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, fam::S1>) {
                if (!s.a.is_polynomial() || !s.b.is_polynomial())
                    throw FamilyError("parameter_range", "a and b must be polynomials in x");
                LaurentPoly2 q = s.a.as_laurent(0) * ypow(1) + s.b.as_laurent(0);
                return {Vars{}, ExpPoly{}, ExpPoly(q)};
            } else if constexpr (std::is_same_v<T, fam::S2>) {
                return {Vars{}, ExpPoly(xpow(1) * s.lambda), ExpPoly(ypow(1) * s.mu)};
            } else if constexpr (std::is_same_v<T, fam::S3>) {
                if (s.lambda.is_zero()) throw FamilyError("parameter_range", "lambda must be nonzero");
                if (s.m < 0) throw FamilyError("parameter_range", "m must be nonnegative");
                return {Vars{}, ExpPoly(xpow(1) * s.lambda), ExpPoly(ypow(1) * (s.lambda * CNum(s.m)) + xpow(s.m))};
            } else if constexpr (std::is_same_v<T, fam::S4>) {
                require_coprime(s.m, s.n);
                require_polynomial_lambda(s.lambda);
                return ExpPoly(compose(s.lambda, RationalFn2(xpow(s.m) * ypow(s.n)))) * euler(s.m, s.n);
            } else if constexpr (std::is_same_v<T, fam::S5>) {
                require_coprime(s.m, s.n);
                require_p(s.l, s.p);
                require_polynomial_lambda(s.lambda);
                if (!s.lambda.is_zero() && s.m * s.lambda.ord() < s.l)
                    throw FamilyError("order_at_zero", "lambda needs a zero of order >= l/m at z = 0");
                HMap H{s.m, s.n, s.l, s.p};
                return ExpPoly(compose(s.lambda, H.R()) * x_over(s.l)) * suzuki5_bracket(s.m, s.n, s.l, s.p);
            } else if constexpr (std::is_same_v<T, fam::BI>) {
                if (!s.a.is_polynomial() || !s.b.is_polynomial())
                    throw FamilyError("parameter_range", "a and b must be polynomials in x");
                LaurentPoly2 q = s.a.as_laurent(0) * ypow(1) + s.b.as_laurent(0);
                return {Vars{}, ExpPoly(xpow(1) * s.c + LaurentPoly2(s.d)), ExpPoly(q)};
            } else if constexpr (std::is_same_v<T, fam::BII>) {
                require_coprime(s.m, s.n);
                require_polynomial_lambda(s.lambda);
                return brunella2(s.a, s.lambda, s.m, s.n);
            } else if constexpr (std::is_same_v<T, fam::BIII>) {
                require_coprime(s.m, s.n);
                require_p(s.l, s.p);
                require_polynomial_lambda(s.lambda);
                LaurentPoly2 e = star_residue(s);
                if (!e.is_zero() && e.min_exp(0) < s.l)
                    throw FamilyError("condition_star", "lambda(R)(mp + nxp') - ap is not in x^l C[x,y]");
                PlanarField Z = brunella3(s.a, s.lambda, s.m, s.n, s.l, s.p);
                if (!Z.is_polynomial()) throw FamilyError("non_polynomial", "field is not polynomial");
                return Z;
            } else if constexpr (std::is_same_v<T, fam::AI>) {
                if (s.N < 0) throw FamilyError("parameter_range", "N must be nonnegative");
                if (s.eps != 0 && s.eps != 1) throw FamilyError("epsilon", "epsilon must be 0 or 1");
                if (s.N >= 1 && s.eps != 0) throw FamilyError("epsilon", "epsilon must be 0 when N >= 1");
                if (!s.A.is_polynomial() || !s.B.is_polynomial())
                    throw FamilyError("parameter_range", "A and B must be polynomials in x");
                PlanarField Y{Vars{}, ExpPoly(xpow(s.N) * s.C), ExpPoly(s.A.as_laurent(0) * ypow(1) + s.B.as_laurent(0))};
                require_polynomial_field(Y, "Y");
                return Y;
            } else if constexpr (std::is_same_v<T, fam::AII>) {
                require_coprime(s.m, s.n);
                if (!s.lambda.is_zero() && s.lambda.ord() < -s.kappa)
                    throw FamilyError("order_at_zero", "lambda must lie in z^-kappa C[z]");
                RationalFn2 R(xpow(s.m) * ypow(s.n));
                RationalFn2 Finv = RationalFn2(xpow(s.delta)) * R.pow(s.kappa);
                PlanarField Y = ExpPoly(Finv) * brunella2(s.a, s.lambda, s.m, s.n);
                require_polynomial_field(Y, "Y");
                return Y;
            } else if constexpr (std::is_same_v<T, fam::AIII>) {
                require_coprime(s.m, s.n);
                require_p(s.l, s.p);
                if (!s.lambda.is_zero() && s.lambda.ord() < -s.kappa)
                    throw FamilyError("order_at_zero", "lambda must lie in z^-kappa C[z]");
                HMap H{s.m, s.n, s.l, s.p};
                RationalFn2 Finv = RationalFn2(xpow(s.delta)) * H.R().pow(s.kappa);
                PlanarField Y = ExpPoly(Finv) * brunella3(s.a, s.lambda, s.m, s.n, s.l, s.p);
                require_polynomial_field(Y, "Y");
                return Y;
            } else {
                static_assert(std::is_same_v<T, fam::B>);
                HMap H = chart_of_B(s);
                PlanarField Y;
                try {
                    Y = pushforward_H(b_chart_field(s), H);
                } catch (const std::invalid_argument&) {
                    throw FamilyError("non_polynomial", "Y is not single-valued in (x, y)");
                }
                require_polynomial_field(Y, "Y");
                return Y;
            }
        },
        spec);
}

/// The transcendental factor f, or nullopt for Suzuki/Brunella entries (f = 1) and opaque f.
inline OptF family_f(const FamilySpec& spec)
{
    return std::visit(
        [](const auto& s) -> OptF {
            if constexpr (requires { s.f; }) return s.f;
            else return ExpPoly(1);
        },
        spec);
}

inline bool has_transcendental_factor(const FamilySpec& spec)
{
    return std::holds_alternative<fam::AI>(spec) || std::holds_alternative<fam::AII>(spec) ||
           std::holds_alternative<fam::AIII>(spec) || std::holds_alternative<fam::B>(spec);
}

/// The field of the family: Y itself, or f*Y for A-forms and B.
inline PlanarField build(const FamilySpec& spec)
{
    PlanarField Y = build_Y(spec);
    if (!has_transcendental_factor(spec)) return Y;
    return detail::need_f(family_f(spec)) * Y;
}

/// R = x, x^m y^n or x^m (x^l y + p)^n for the families that carry one.
inline RationalFn2 canonical_first_integral(const FamilySpec& spec)
{
    using namespace detail;
    build_Y(spec);  // validates
    return std::visit(
        [](const auto& s) -> RationalFn2 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, fam::S1> || std::is_same_v<T, fam::AI>) {
                return RationalFn2(xpow(1));
            } else if constexpr (std::is_same_v<T, fam::S4> || std::is_same_v<T, fam::AII>) {
                return RationalFn2(xpow(s.m) * ypow(s.n));
            } else if constexpr (std::is_same_v<T, fam::S5> || std::is_same_v<T, fam::AIII>) {
                return HMap{s.m, s.n, s.l, s.p}.R();
            } else {
                throw FamilyError("no_rational_integral",
                                  std::string("family has no canonical rational first integral"));
            }
        },
        spec);
}

/// F of the decomposition X = G F Y for A-forms (in (x, y)).
inline RationalFn2 family_F(const FamilySpec& spec)
{
    using namespace detail;
    return std::visit(
        [](const auto& s) -> RationalFn2 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, fam::AI>) {
                return RationalFn2(xpow(-(s.N - 1 + s.eps)));
            } else if constexpr (std::is_same_v<T, fam::AII>) {
                return (RationalFn2(xpow(s.delta)) * RationalFn2(xpow(s.m) * ypow(s.n)).pow(s.kappa)).inverse();
            } else if constexpr (std::is_same_v<T, fam::AIII>) {
                return (RationalFn2(xpow(s.delta)) * HMap{s.m, s.n, s.l, s.p}.R().pow(s.kappa)).inverse();
            } else {
                throw FamilyError("parameter_range", "F is defined for A-forms only");
            }
        },
        spec);
}

/// (Omega, j) with lie(F*Y, R) = Omega * R^j, computed and verified symbolically.
inline std::pair<CNum, int> check_theoremA_relation(const FamilySpec& spec)
{
    if (!std::holds_alternative<fam::AI>(spec) && !std::holds_alternative<fam::AII>(spec) &&
        !std::holds_alternative<fam::AIII>(spec))
        throw FamilyError("parameter_range", "relation is stated for A-forms");
    PlanarField FY = ExpPoly(family_F(spec)) * build_Y(spec);
    RationalFn2 R = canonical_first_integral(spec);
    ExpPoly d = lie(FY, ExpPoly(R));
    int preferred = 1;
    if (const auto* a = std::get_if<fam::AI>(&spec)) preferred = a->eps == 0 ? 1 : 0;
    if (d.is_zero()) return {CNum(0), preferred};
    if (!d.is_rational()) throw std::logic_error("relation fails: lie(F*Y, R) has exp factors");
    RationalFn2 q = d.as_rational() / R;
    if (q.is_constant()) return {q.constant_value(), 1};
    if (d.as_rational().is_constant()) return {d.as_rational().constant_value(), 0};
    throw std::logic_error("relation fails: lie(F*Y, R) is not Omega * R^j");
}

/// X = G * F * Y. B is decomposed in its (u, v) chart: F*Y there is a(v) u d/du + c d/dv.
inline Decomposition decompose(const FamilySpec& spec)
{
    using namespace detail;
    if (const auto* b = std::get_if<fam::B>(&spec)) {
        HMap H = chart_of_B(*b);
        build_Y(spec);
        const ExpPoly& f = need_f(b->f);
        int k = b->m + b->n * b->l;
        Decomposition d;
        d.chart = H;
        d.G = substitute(f, H.to_xy()) * ExpPoly(xpow(k));
        d.F = RationalFn2(xpow(-k));
        d.Y = b_chart_field(*b);
        d.R = RationalFn2(ypow(1));
        d.Omega = b->c;
        d.j = 0;
        return d;
    }
    if (!has_transcendental_factor(spec)) throw FamilyError("parameter_range", "decompose applies to A-forms and B");
    Decomposition d;
    d.Y = build_Y(spec);
    d.F = family_F(spec);
    d.G = need_f(family_f(spec)) * ExpPoly(d.F.inverse());
    d.R = canonical_first_integral(spec);
    auto [Omega, j] = check_theoremA_relation(spec);
    d.Omega = Omega;
    d.j = j;
    return d;
}

}  // namespace campo

#endif  // CAMPO_FAMILIES_HPP
