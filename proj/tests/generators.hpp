#ifndef CAMPO_TESTS_GENERATORS_HPP
#define CAMPO_TESTS_GENERATORS_HPP

#include "random.hpp"

#include <functional>

namespace campo::test {

// Draw until build_Y accepts the spec.
inline FamilySpec draw_valid(const std::function<FamilySpec()>& draw, int max_tries = 500)
{
    for (int i = 0; i < max_tries; ++i) {
        FamilySpec s = draw();
        try {
            build_Y(s);
            return s;
        } catch (const FamilyError&) {
        }
    }
    throw std::runtime_error("generator exhausted");
}

inline UniPoly rand_p(int l)
{
    std::map<int, CNum> pc;
    if (l > 0) {
        pc[0] = rand_nonzero_cnum(false);
        for (int e = 1; e < l; ++e) pc[e] = rand_cnum(false);
    }
    return UniPoly("x", pc);
}

inline ExpPoly rand_f()
{
    LaurentPoly2 s = rand_poly(2, 2, false);
    if (s.is_constant()) s += LaurentPoly2::monomial(1, 1, 1);
    return ExpPoly(rand_nonzero_cnum(false)) * ExpPoly::term(RationalFn2(1), s);
}

inline FamilySpec rand_S4(int maxmn = 4, int maxdeg = 3)
{
    auto [m, n] = rand_coprime(maxmn);
    return fam::S4{rand_unipoly("z", 0, rand_int(0, maxdeg)), m, n};
}

inline FamilySpec rand_S5(int maxmn = 4, int maxdeg = 3, int maxl = 3)
{
    return draw_valid([&] {
        auto [m, n] = rand_coprime(maxmn);
        int l = rand_int(1, maxl);
        // ord lambda >= l/m, so the lowest admissible exponent is ceil(l/m).
        int lo = (l + m - 1) / m;
        UniPoly lam = rand_unipoly("z", lo, std::max(lo, maxdeg));
        if (lam.is_zero()) lam = UniPoly::monomial("z", rand_nonzero_cnum(), lo);
        return FamilySpec(fam::S5{lam, m, n, l, rand_p(l)});
    });
}

// G = c0 + c1 I (+ c2 T) for a first integral I and a time function T of F*Y:
// a second integral, so that f = G F makes X = f Y an A-form instance.
inline ExpPoly affine_G(const ExpPoly& I, const std::optional<ExpPoly>& T)
{
    ExpPoly G = ExpPoly(rand_cnum(false)) + ExpPoly(rand_nonzero_cnum(false)) * I;
    if (T) G += ExpPoly(rand_cnum(false)) * *T;
    return G;
}

inline FamilySpec with_f(FamilySpec s, const ExpPoly& G)
{
    ExpPoly f = G * ExpPoly(family_F(s));
    std::visit(
        [&](auto& v) {
            if constexpr (requires { v.f; }) v.f = f;
        },
        s);
    return s;
}

/// A_I with B = 0: I = y exp(-L(x)), L' = A(x) / (C x^N); eps = 1 adds the time x / C.
inline FamilySpec rand_AI()
{
    FamilySpec s = draw_valid([] {
        int N = std::vector<int>{0, 0, 2, 3}[rand_int(0, 3)];
        int eps = N == 0 ? rand_int(0, 1) : 0;
        std::map<int, CNum> a;
        for (int e = 0; e <= 3; ++e)
            if (e != N - 1 && (rand_int(0, 1) || (e == 0 && N >= 1))) a[e] = rand_nonzero_cnum(false);
        return FamilySpec(fam::AI{std::nullopt, N, eps, rand_nonzero_cnum(false), UniPoly("x", a), UniPoly("x")});
    });
    const auto& ai = std::get<fam::AI>(s);
    LaurentPoly2 L;
    for (const auto& [e, c] : ai.A.coeffs()) L.add_term(Mono{e - ai.N + 1, 0}, c / (ai.C * CNum(e - ai.N + 1)));
    ExpPoly I = ExpPoly(LaurentPoly2::var(1)) * ExpPoly::term(RationalFn2(1), -L);
    std::optional<ExpPoly> T;
    if (ai.eps == 1) T = ExpPoly(LaurentPoly2::monomial(CNum(1) / ai.C, 1, 0));
    return with_f(s, affine_G(I, T));
}

// A first integral of lambda(R) x^{-l} V + a w x^{-l} d/dy (and of form II): from
// F*Y(x) = n lambda(R) x and F*Y(R) = a n R, I = x R^{-r} exp(-Lambda(R)/a) with
// r = lambda_0 / a and Lambda' = (lambda(z) - lambda_0) / z. Raised to the power q
// that clears the denominator of r. For a = 0, R itself.
inline ExpPoly brunella_integral(const CNum& a, const UniPoly& lambda, const RationalFn2& R)
{
    if (a.is_zero()) return ExpPoly(R);
    CNum r = lambda.coeff(0) / a;
    if (sgn(r.im()) != 0) throw std::logic_error("lambda_0 / a must be real");
    Rat rr = r.re();
    long q = rr.get_den().get_si();
    long e = mpz_class(rr * q).get_si();
    std::map<int, CNum> Lc;
    for (const auto& [k, c] : lambda.coeffs())
        if (k != 0) Lc[k] = -c * CNum(q) / (CNum(k) * a);
    RationalFn2 Lam = compose(UniPoly("z", Lc), R);
    if (!Lam.is_laurent()) throw std::logic_error("exponent is not a Laurent polynomial");
    RationalFn2 coeff = RationalFn2(LaurentPoly2::monomial(1, q, 0)) * R.pow(-e);
    return ExpPoly::term(coeff, Lam.num());
}

inline UniPoly rand_lambda(int lo, int hi, const CNum& constant)
{
    std::map<int, CNum> c;
    for (int e = lo; e <= hi; ++e)
        if (e != 0 && rand_int(0, 1)) c[e] = rand_nonzero_cnum(false);
    if (!constant.is_zero()) c[0] = constant;
    if (c.empty()) c[hi] = CNum(1);
    return UniPoly("z", c);
}

inline CNum rand_ratio(int m)
{
    switch (rand_int(0, 3)) {
    case 0: return CNum(0);
    case 1: return CNum(1);
    default: return CNum(Rat(1, m));
    }
}

inline FamilySpec rand_AII()
{
    FamilySpec s = draw_valid([] {
        auto [m, n] = rand_coprime(3);
        int kappa = rand_int(0, 1);
        CNum a = rand_int(0, 3) ? rand_nonzero_cnum(false) : CNum(0);
        UniPoly lam = rand_lambda(-kappa, 2, a * rand_ratio(m));
        return FamilySpec(fam::AII{std::nullopt, kappa, rand_int(0, 1), a, lam, m, n});
    });
    const auto& v = std::get<fam::AII>(s);
    return with_f(s, affine_G(brunella_integral(v.a, v.lambda, canonical_first_integral(s)), std::nullopt));
}

inline FamilySpec rand_AIII()
{
    FamilySpec s = draw_valid([] {
        auto [m, n] = rand_coprime(3);
        int l = rand_int(1, 2);
        int kappa = rand_int(0, 1);
        CNum a = rand_int(0, 3) ? rand_nonzero_cnum(false) : CNum(0);
        // A pole of lambda would put R^-1 into the exponent of I when a != 0.
        UniPoly lam = rand_lambda(a.is_zero() ? -kappa : 1, 2, a * rand_ratio(m));
        return FamilySpec(fam::AIII{std::nullopt, kappa, rand_int(0, l), a, lam, m, n, l, rand_p(l)});
    });
    const auto& v = std::get<fam::AIII>(s);
    return with_f(s, affine_G(brunella_integral(v.a, v.lambda, canonical_first_integral(s)), std::nullopt));
}

inline FamilySpec rand_A()
{
    switch (rand_int(0, 2)) {
    case 0: return rand_AI();
    case 1: return rand_AII();
    default: return rand_AIII();
    }
}

/// The chart H = (m, n, l, p) attached to an A_II, A_III or B instance.
inline HMap family_chart(const FamilySpec& s)
{
    if (auto* b = std::get_if<fam::B>(&s)) return detail::chart_of_B(*b);
    if (auto* a = std::get_if<fam::AII>(&s)) return detail::chart_of(a->m, a->n, 0, UniPoly("x"));
    const auto& a = std::get<fam::AIII>(s);
    return detail::chart_of(a.m, a.n, a.l, a.p);
}

/// A chart form u^k (a(v) u d/du + c v^N d/dv) with N >= 1 whose (x, y) field is polynomial.
inline UVForm rand_uv_form_N(int max_tries = 500)
{
    for (int i = 0; i < max_tries; ++i) {
        auto [m, n] = rand_coprime(3);
        int l = rand_int(0, 2);
        HMap H{m, n, l, rand_p(l)};
        int N = 1 + n * rand_int(0, 1);
        int k = n * rand_int(0, 2);
        UVForm form{k, rand_unipoly("v", 0, 2, false), UniPoly::monomial("v", rand_nonzero_cnum(false), N), H};
        try {
            build_Y_from_uv(form);
            return form;
        } catch (const RiccatiError&) {
        }
    }
    throw std::runtime_error("generator exhausted");
}

// A coefficient in [-1/2, 1/2] with quarter steps.
inline CNum small_num() { return CNum(Rat(rand_int(-2, 2), 4)); }
inline CNum small_nonzero() { return CNum(Rat(rand_int(0, 1) ? rand_int(1, 2) : -rand_int(1, 2), 4)); }

inline UniPoly small_poly(const char* var, int deg)
{
    std::map<int, CNum> c;
    for (int e = 0; e <= deg; ++e) c[e] = small_num();
    return UniPoly(var, c);
}

inline cplx rand_point_in_disk(double r)
{
    std::uniform_real_distribution<double> U(-1, 1);
    cplx z;
    do z = cplx(U(rng()), U(rng()));
    while (std::abs(z) > 1);
    return r * z;
}

inline FamilySpec small_S(int which)
{
    switch (which) {
    case 0: return fam::S1{small_poly("x", 2), small_poly("x", 2)};
    case 1: return fam::S2{small_num(), small_num()};
    case 2: return fam::S3{small_nonzero(), rand_int(0, 2)};
    default: {
        auto [m, n] = rand_coprime(2);
        return fam::S4{small_poly("z", 2), m, n};
    }
    }
}

inline FamilySpec small_S5()
{
    auto [m, n] = rand_coprime(2);
    int l = rand_int(1, 2);
    int lo = (l + m - 1) / m;
    std::map<int, CNum> lam{{lo, small_nonzero()}, {lo + 1, small_num()}};
    std::map<int, CNum> p{{0, small_nonzero()}};
    if (l == 2) p[1] = small_num();
    return fam::S5{UniPoly("z", lam), m, n, l, UniPoly("x", p)};
}

/// A chart form with constant a and c v, plus an f = G F whose G = c0 + c1 I is affine in a
/// rational first integral I of Y found by the Darboux pipeline.
inline std::pair<UVForm, ExpPoly> rand_chart_built(int max_tries = 500)
{
    for (int i = 0; i < max_tries; ++i) {
        auto [m, n] = rand_coprime(3);
        int l = rand_int(0, 2);
        HMap H{m, n, l, rand_p(l)};
        UVForm form{n * rand_int(0, 2), UniPoly::monomial("v", rand_nonzero_cnum(false), 0),
                    UniPoly::monomial("v", rand_nonzero_cnum(false), 1), H};
        PlanarField Y;
        try {
            Y = build_Y_from_uv(form);
        } catch (const RiccatiError&) {
            continue;
        }
        auto ri = rational_first_integral(Y, darboux_structured(Y, std::max(l, 1)).certificates);
        if (!ri.R) continue;
        RationalFn2 F = decompose_from_uv(ExpPoly(1), form).F;
        return {form, affine_G(ExpPoly(*ri.R), std::nullopt) * ExpPoly(F)};
    }
    throw std::runtime_error("generator exhausted");
}

/// Example 2 of the B family: f = exp(-(m/(n c)) x^m y^n), l = 0, p = 0, a(z) = z^{n-1}.
inline fam::B example2(int m, int n, const CNum& c = CNum(1))
{
    fam::B b;
    b.m = m;
    b.n = n;
    b.l = 0;
    b.c = c;
    b.a = UniPoly::monomial("z", CNum(1), n - 1);
    b.f = ExpPoly::term(RationalFn2(1), LaurentPoly2::monomial(-CNum(m) / (CNum(n) * c), m, n));
    return b;
}

inline FamilySpec rand_B()
{
    return draw_valid([] {
        auto [m, n] = rand_coprime(3);
        int l = rand_int(0, 2);
        fam::B b;
        b.m = m;
        b.n = n;
        b.l = l;
        b.p = rand_p(l);
        b.c = rand_nonzero_cnum(false);
        std::map<int, CNum> a;
        for (int e = n - 1; e <= 2 * n - 1; e += n)
            if (rand_int(0, 1)) a[e] = rand_nonzero_cnum(false);
        b.a = UniPoly("z", a);
        b.f = rand_f();
        return FamilySpec(b);
    });
}

}  // namespace campo::test

#endif  // CAMPO_TESTS_GENERATORS_HPP
