#ifndef CAMPO_RICCATI_HPP
#define CAMPO_RICCATI_HPP

#include "campo/families.hpp"
#include "campo/solver.hpp"

#include <optional>
#include <string>

namespace campo {

/// Failure of a Riccati-chart computation, with a stable condition identifier:
/// "not_riccati", "first_integral", "shape_mismatch", "gamma_nonzero", "divisibility",
/// "c_nonzero", "non_polynomial", "non_isolated_singularities", "zero_f".
class RiccatiError : public std::invalid_argument {
public:
    RiccatiError(std::string condition, const std::string& detail)
        : std::invalid_argument(condition + ": " + detail), condition_(std::move(condition))
    {
    }
    const std::string& condition() const { return condition_; }

private:
    std::string condition_;
};

/// H^* Y = u^k (a(v) u d/du + c(v) d/dv).
struct UVForm {
    int k = 0;
    UniPoly a{"v"};
    UniPoly c{"v"};
    HMap H;

    /// N with c(v) = c v^N, when c is a nonzero monomial.
    std::optional<int> N() const
    {
        if (c.coeffs().size() != 1) return std::nullopt;
        return c.ord();
    }
    CNum c_const() const { return c.coeffs().empty() ? CNum(0) : c.coeffs().begin()->second; }

    PlanarField chart_field() const
    {
        return {Vars{"u", "v"}, ExpPoly(a.as_laurent(1).shifted({k + 1, 0})), ExpPoly(c.as_laurent(1).shifted({k, 0}))};
    }
};

namespace detail {

// p = u^e * g(v) with a single u exponent; nullopt otherwise.
inline std::optional<std::pair<int, UniPoly>> split_u_power(const LaurentPoly2& p)
{
    std::optional<int> e;
    std::map<int, CNum> coeffs;
    for (const auto& [m, c] : p.terms()) {
        if (e && *e != m.i) return std::nullopt;
        e = m.i;
        coeffs.emplace(m.j, c);
    }
    if (!e) return std::nullopt;
    return std::make_pair(*e, UniPoly("v", coeffs));
}

}  // namespace detail

inline UVForm extract_uv_form(const PlanarField& Y, const HMap& H)
{
    if (!Y.is_polynomial()) throw RiccatiError("not_riccati", "Y must be polynomial");
    PlanarField Z = pullback_H(Y, H);
    if (!Z.is_laurent()) throw RiccatiError("not_riccati", "pullback has non-monomial denominators");
    LaurentPoly2 U = Z.P.as_laurent(), V = Z.Q.as_laurent();
    if (U.is_zero() && V.is_zero()) throw RiccatiError("not_riccati", "zero field");
    UVForm form;
    form.H = H;
    std::optional<int> k;
    if (!V.is_zero()) {
        auto s = detail::split_u_power(V);
        if (!s) throw RiccatiError("not_riccati", "v-component depends on u beyond a single power");
        k = s->first;
        form.c = s->second;
    }
    if (!U.is_zero()) {
        auto s = detail::split_u_power(U);
        if (!s || (k && s->first - 1 != *k))
            throw RiccatiError("not_riccati", "u-component is not u^(k+1) a(v)");
        k = s->first - 1;
        form.a = s->second;
    }
    form.k = *k;
    return form;
}

/// eta(Y) = const * x^alpha w^beta (R - s)^gamma (n > 0) or
/// const * x^alpha w^beta (x^m - s w^|n|)^gamma (n < 0), with w = x^l y + p.
struct EtaShape {
    int alpha = 0, beta = 0, gamma = 0;
    std::optional<CNum> s;
    CNum constant{1};
};

struct EtaResult {
    LaurentPoly2 eta_x, eta_y;  // eta = eta_x dx + eta_y dy, normalized to x w dR/R
    LaurentPoly2 etaY;
    EtaShape shape;
};

namespace detail {

inline std::optional<LaurentPoly2> exact_poly_quotient(const LaurentPoly2& a, const LaurentPoly2& b)
{
    auto q = divide_exact(a, b);
    if (!q || !q->is_polynomial()) return std::nullopt;
    return q;
}

inline CNum eval_exact(const LaurentPoly2& p, const CNum& x0, const CNum& y0)
{
    CNum out;
    for (const auto& [m, c] : p.terms()) out += c * x0.pow(m.i) * y0.pow(m.j);
    return out;
}

}  // namespace detail

/// Contract eta (dR with codimension-one zeros and poles removed) with Y and match the
/// result against the x^alpha w^beta (R - s)^gamma shape.
inline EtaResult eta_contraction(const PlanarField& Y, const HMap& H)
{
    H.validate();
    if (!Y.is_polynomial()) throw RiccatiError("not_riccati", "Y must be polynomial");
    RationalFn2 R = H.R();
    // dR over a common denominator, cleared and divided by the gcd of its coefficients.
    RationalFn2 A = R.diff(0), B = R.diff(1);
    LaurentPoly2 ex = A.num() * B.den(), ey = B.num() * A.den();
    Mono shift{std::min(ex.is_zero() ? 0 : ex.min_exp(0), ey.is_zero() ? 0 : ey.min_exp(0)),
               std::min(ex.is_zero() ? 0 : ex.min_exp(1), ey.is_zero() ? 0 : ey.min_exp(1))};
    ex = ex.shifted({-shift.i, -shift.j});
    ey = ey.shifted({-shift.i, -shift.j});
    LaurentPoly2 g = gcd2(ex, ey);
    ex = *divide_exact(ex, g);
    ey = *divide_exact(ey, g);
    // Rescale to the normalization x w dR/R = (m w + n x w_x) dx + n x w_y dy.
    LaurentPoly2 w = H.w();
    LaurentPoly2 ref_y = w.diff(1).shifted({1, 0}) * CNum(H.n);
    CNum scale = ref_y.leading_coeff() / ey.leading_coeff();
    EtaResult res;
    res.eta_x = ex * scale;
    res.eta_y = ey * scale;
    LaurentPoly2 ref_x = w * CNum(H.m) + w.diff(0).shifted({1, 0}) * CNum(H.n);
    if (res.eta_x != ref_x || res.eta_y != ref_y)
        throw std::logic_error("eta does not agree with x w dR/R");
    res.etaY = (ExpPoly(res.eta_x) * Y.P + ExpPoly(res.eta_y) * Y.Q).as_laurent();
    if (res.etaY.is_zero()) throw RiccatiError("first_integral", "eta(Y) = 0: R is a first integral of Y");

    EtaShape& sh = res.shape;
    LaurentPoly2 rem = res.etaY;
    while (rem.min_exp(0) >= 1) {
        rem = rem.shifted({-1, 0});
        ++sh.alpha;
    }
    while (true) {
        auto q = detail::exact_poly_quotient(rem, w);
        if (!q) break;
        rem = *q;
        ++sh.beta;
    }
    if (rem.is_constant()) {
        sh.constant = rem.constant_value();
        return res;
    }
    // rem = c (S - s T)^gamma.
    LaurentPoly2 S, T;
    if (H.n > 0) {
        S = R.num();
        T = LaurentPoly2(1);
    } else {
        S = LaurentPoly2::monomial(1, H.m, 0);
        T = w.pow(static_cast<unsigned>(-H.n));
    }
    int maxdeg = rem.total_degree();
    for (int gamma = 1; gamma <= maxdeg; ++gamma) {
        CNum c;
        if (H.n > 0) {
            c = rem.leading_coeff() / S.leading_coeff().pow(gamma);
        } else {
            // At x = 1, y = -p(1) the factor w vanishes, so S - s T = 1.
            CNum p1 = detail::eval_exact(H.p.as_laurent(0), CNum(1), CNum(0));
            c = detail::eval_exact(rem, CNum(1), -p1);
            if (c.is_zero()) break;
        }
        for (const auto& [x0, y0] : {std::pair<long, long>{2, 3}, {3, 7}, {5, 2}}) {
            CNum S0 = detail::eval_exact(S, CNum(x0), CNum(y0));
            CNum T0 = detail::eval_exact(T, CNum(x0), CNum(y0));
            if (T0.is_zero()) continue;
            // sum_j binom(gamma, j) S0^{gamma-j} (-T0)^j s^j - rem0 / c = 0.
            std::vector<CNum> coeffs(gamma + 1);
            CNum binom(1);
            for (int j = 0; j <= gamma; ++j) {
                coeffs[j] = binom * S0.pow(gamma - j) * (-T0).pow(j);
                binom = binom * CNum(gamma - j) / CNum(j + 1);
            }
            coeffs[0] -= detail::eval_exact(rem, CNum(x0), CNum(y0)) / c;
            for (const auto& s : gaussian_rational_roots(coeffs)) {
                if (s.is_zero()) continue;
                if ((S - T * s).pow(static_cast<unsigned>(gamma)) * c == rem) {
                    sh.gamma = gamma;
                    sh.s = s;
                    sh.constant = c;
                    return res;
                }
            }
            break;
        }
    }
    throw RiccatiError("shape_mismatch", "eta(Y) does not factor as x^a w^b (R - s)^g");
}

/// tau = [x w / (f eta(Y))] dR/R, stored as numerator x w and denominator f eta(Y).
struct TimeForm {
    ExpPoly numerator;
    ExpPoly denominator;
    RationalFn2 R;
};

inline TimeForm time_form(const ExpPoly& f, const PlanarField& Y, const HMap& H, const EtaResult& eta)
{
    if (f.is_zero()) throw RiccatiError("zero_f", "f must be nonzero");
    if (eta.etaY.is_zero()) throw RiccatiError("first_integral", "eta(Y) = 0");
    LaurentPoly2 xw = H.w().shifted({1, 0});
    // The contraction must be the one of this Y.
    if ((ExpPoly(eta.eta_x) * Y.P + ExpPoly(eta.eta_y) * Y.Q) != ExpPoly(eta.etaY))
        throw RiccatiError("shape_mismatch", "eta(Y) was computed for a different field");
    return {ExpPoly(xw), f * ExpPoly(eta.etaY), H.R()};
}

/// tau(X) == 1 exactly, checked as numerator * X(R)/R == denominator.
inline bool verify_time_contraction(const TimeForm& tf, const PlanarField& X)
{
    ExpPoly XR = lie(X, ExpPoly(tf.R)) * ExpPoly(tf.R.inverse());
    return tf.numerator * XR == tf.denominator;
}

/// rho = dv / ((f o H) u^k c v^N) in the chart.
struct ChartTimeForm {
    ExpPoly denominator;
};

inline ChartTimeForm chart_time_form(const ExpPoly& f, const UVForm& form)
{
    if (f.is_zero()) throw RiccatiError("zero_f", "f must be nonzero");
    auto N = form.N();
    if (!N) throw RiccatiError("shape_mismatch", "c(v) is not a nonzero monomial c v^N");
    ExpPoly fH = substitute(f, form.H.to_xy());
    return {fH * ExpPoly(LaurentPoly2::monomial(form.c_const(), form.k, *N))};
}

inline bool verify_chart_time_contraction(const ChartTimeForm& rho, const PlanarField& HX)
{
    return HX.Q == rho.denominator;
}

/// k = n (alpha - 1) - m (N - 1).
inline int solve_k(const EtaShape& shape, const HMap& H, int N)
{
    if (shape.gamma != 0) throw RiccatiError("gamma_nonzero", "solve_k assumes gamma = 0");
    return H.n * (shape.alpha - 1) - H.m * (N - 1);
}

/// Y = u^k H_*(a(v) u d/du + c v^N d/dv), checked to be a polynomial field with isolated
/// singularities.
inline PlanarField build_Y_from_uv(const UVForm& form)
{
    const HMap& H = form.H;
    H.validate();
    auto N = form.N();
    if (!N || form.c_const().is_zero()) throw RiccatiError("c_nonzero", "c(v) must be a nonzero monomial c v^N");
    if (*N < 0) throw RiccatiError("divisibility", "N must be nonnegative");
    if (*N >= 1) {
        if (form.k % H.n != 0) throw RiccatiError("divisibility", "k must be a multiple of n");
        if ((*N - 1) % H.n != 0) throw RiccatiError("divisibility", "N - 1 must be a multiple of n");
    } else {
        if (form.k != H.weight()) throw RiccatiError("divisibility", "N = 0 needs k = m + n l");
        for (const auto& [e, c] : form.a.coeffs())
            if (e < -1 || (e + 1) % H.n != 0) throw RiccatiError("divisibility", "a must lie in (1/z) C[z^n]");
    }
    PlanarField Y;
    try {
        Y = pushforward_H(form.chart_field(), H);
    } catch (const std::invalid_argument&) {
        throw RiccatiError("non_polynomial", "Y is not single-valued in (x, y)");
    }
    if (!Y.is_polynomial()) throw RiccatiError("non_polynomial", "Y is not polynomial");
    if (!has_isolated_singularities(Y)) throw RiccatiError("non_isolated_singularities", "Y has a curve of zeros");
    return Y;
}

/// The N >= 1 split of a chart form into F, G: k = n delta, N - 1 = n kappa,
/// F = 1/(x^delta R^kappa), G = f x^delta R^kappa, Omega = n c, j = 1.
inline Decomposition decompose_from_uv(const ExpPoly& f, const UVForm& form)
{
    const HMap& H = form.H;
    auto N = form.N();
    if (!N || *N < 1) throw RiccatiError("divisibility", "decomposition needs c(v) = c v^N with N >= 1");
    Decomposition d;
    d.Y = build_Y_from_uv(form);
    int delta = form.k / H.n, kappa = (*N - 1) / H.n;
    RationalFn2 R = H.R();
    RationalFn2 Finv = RationalFn2(LaurentPoly2::monomial(1, delta, 0)) * R.pow(kappa);
    d.F = Finv.inverse();
    d.G = f * ExpPoly(Finv);
    d.R = R;
    d.Omega = form.c_const() * CNum(H.n);
    d.j = 1;
    return d;
}

}  // namespace campo

#endif  // CAMPO_RICCATI_HPP
