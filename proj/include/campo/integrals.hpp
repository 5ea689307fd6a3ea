#ifndef CAMPO_INTEGRALS_HPP
#define CAMPO_INTEGRALS_HPP

#include "campo/fields.hpp"
#include "campo/solver.hpp"

#include <future>
#include <optional>
#include <string>
#include <vector>

namespace campo {

inline bool is_first_integral(const PlanarField& X, const ExpPoly& f)
{
    return lie(X, f).is_zero();
}

/// Y f and Y^2 f, with the split f = Hpart * y + Gpart when Y(y) = 1 and Y^2 f = 0.
struct SecondIntegralReport {
    bool is_first = false;
    bool is_second = false;
    bool split_available = false;  // Y(y) = 1, so Hpart/Gpart are meaningful
    bool split_verified = false;   // both parts are first integrals
    ExpPoly Yf;
    ExpPoly Hpart;
    ExpPoly Gpart;
};

inline SecondIntegralReport second_integral_report(const PlanarField& Y, const ExpPoly& f)
{
    SecondIntegralReport r;
    r.Yf = lie(Y, f);
    r.is_first = r.Yf.is_zero();
    r.is_second = lie(Y, r.Yf).is_zero();
    ExpPoly y(LaurentPoly2::var(1));
    if (r.is_second && lie(Y, y) == ExpPoly(1)) {
        r.split_available = true;
        r.Hpart = r.Yf;
        r.Gpart = f - y * r.Yf;
        r.split_verified = is_first_integral(Y, r.Hpart) && is_first_integral(Y, r.Gpart);
    }
    return r;
}

/// Y(h) = k h with polynomial h and cofactor k.
struct DarbouxCertificate {
    LaurentPoly2 h;
    LaurentPoly2 k;
};

inline bool verify_certificate(const PlanarField& Y, const DarbouxCertificate& c)
{
    ExpPoly yh = lie(Y, ExpPoly(c.h));
    return c.k.is_polynomial() && yh == ExpPoly(c.k * c.h) && divides(c.h, yh.is_zero() ? LaurentPoly2{} : yh.as_laurent());
}

struct DarbouxResult {
    std::vector<DarbouxCertificate> certificates;
    std::vector<std::string> diagnostics;
};

namespace detail {

// Polynomials in x (Laurent) with MPoly coefficients.
using XPoly = std::map<int, MPoly>;

inline XPoly xmul(const XPoly& a, const XPoly& b)
{
    XPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto& slot = out[ea + eb];
            slot += ca * cb;
        }
    return out;
}
inline void xadd(XPoly& a, const XPoly& b, const CNum& s = CNum(1))
{
    for (const auto& [e, c] : b) a[e] += c * s;
}

// Solve for p (deg < l) such that x^l y + p divides Y(x^l y + p): the remainder of
// Y(h) modulo h is Y(h) evaluated at y = -p / x^l, which must vanish.
inline DarbouxResult darboux_shape(const LaurentPoly2& P, const LaurentPoly2& Q, int l)
{
    DarbouxResult res;
    const int nv = l;
    XPoly p, dp, yval;
    for (int i = 0; i < l; ++i) {
        p[i] = MPoly::var(nv, i);
        if (i > 0) dp[i - 1] = MPoly::var(nv, i) * CNum(i);
    }
    for (const auto& [e, c] : p) yval[e - l] = c * CNum(-1);
    // Powers of the substituted y.
    int maxj = std::max(P.is_zero() ? 0 : P.max_exp(1), Q.is_zero() ? 0 : Q.max_exp(1));
    std::vector<XPoly> ypow{XPoly{{0, MPoly(nv, CNum(1))}}};
    for (int j = 1; j <= maxj; ++j) ypow.push_back(xmul(ypow.back(), yval));
    auto subst = [&](const LaurentPoly2& F) {
        XPoly out;
        for (const auto& [m, c] : F.terms()) {
            XPoly t;
            for (const auto& [e, co] : ypow[m.j]) t[e + m.i] = co * c;
            xadd(out, t);
        }
        return out;
    };
    // Y(h) = P (l x^{l-1} y + p') + Q x^l; at y = -p/x^l: P (p' - l p / x) + Q x^l.
    XPoly hx = dp;
    for (const auto& [e, c] : p) hx[e - 1] += c * CNum(-l);
    XPoly E = xmul(subst(P), hx);
    XPoly q = subst(Q);
    for (const auto& [e, c] : q) E[e + l] += c;
    std::vector<MPoly> eqs;
    for (auto& [e, c] : E)
        if (!c.is_zero()) eqs.push_back(c);
    // Eliminate the constant term of p last so that p(0) = 0 branches are visible.
    std::vector<int> priority;
    for (int i = l - 1; i >= 0; --i) priority.push_back(i);
    auto sol = solve_system(eqs, nv, priority);
    res.diagnostics = sol.diagnostics;
    for (const auto& s : sol.solutions) {
        if (s.values[0].is_zero()) continue;  // x^l y + p would be reducible (x divides it)
        if (!s.free_vars.empty())
            res.diagnostics.push_back("l=" + std::to_string(l) +
                                      ": a family of invariant curves; returning the representative with free "
                                      "coefficients set to 1");
        LaurentPoly2 h = LaurentPoly2::monomial(1, l, 1);
        for (int i = 0; i < l; ++i) h.add_term(Mono{i, 0}, s.values[i]);
        LaurentPoly2 yh = P * h.diff(0) + Q * h.diff(1);
        auto k = divide_exact(yh, h);
        if (!k || !k->is_polynomial()) {
            res.diagnostics.push_back("l=" + std::to_string(l) + ": candidate failed exact division");
            continue;
        }
        res.certificates.push_back({h, *k});
    }
    return res;
}

}  // namespace detail

/// Darboux polynomials of the shapes x, y and x^l y + p(x) (1 <= l <= Lmax, deg p < l,
/// p(0) != 0), each re-verified by exact division. The per-l searches run concurrently.
inline DarbouxResult darboux_structured(const PlanarField& Y, int Lmax)
{
    if (!Y.is_polynomial()) throw std::invalid_argument("Darboux search needs a polynomial field");
    if (Y.is_zero()) throw std::invalid_argument("Darboux search needs a nonzero field");
    if (Lmax < 0) throw std::invalid_argument("Lmax must be nonnegative");
    LaurentPoly2 P = Y.P.as_laurent(), Q = Y.Q.as_laurent();
    DarbouxResult out;
    for (int v = 0; v < 2; ++v) {
        LaurentPoly2 h = LaurentPoly2::var(v);
        auto k = invariant_cofactor(Y, h);
        if (k && k->is_polynomial()) out.certificates.push_back({h, k->as_laurent()});
    }
    std::vector<std::future<DarbouxResult>> jobs;
    for (int l = 1; l <= Lmax; ++l)
        jobs.push_back(std::async(std::launch::async, [&P, &Q, l] { return detail::darboux_shape(P, Q, l); }));
    for (auto& j : jobs) {
        auto r = j.get();
        out.certificates.insert(out.certificates.end(), r.certificates.begin(), r.certificates.end());
        out.diagnostics.insert(out.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    }
    std::vector<DarbouxCertificate> checked;
    for (auto& c : out.certificates) {
        if (verify_certificate(Y, c)) checked.push_back(std::move(c));
        else out.diagnostics.push_back("dropped a certificate that failed re-verification");
    }
    out.certificates = std::move(checked);
    return out;
}

struct RationalIntegral {
    std::optional<RationalFn2> R;
    std::vector<mpz_class> alpha;
    int kernel_dimension = 0;
    std::vector<std::string> diagnostics;
};

/// R = prod h_i^alpha_i for a primitive integer vector alpha with sum alpha_i k_i = 0.
inline RationalIntegral rational_first_integral(const PlanarField& Y, const std::vector<DarbouxCertificate>& certs)
{
    RationalIntegral out;
    if (certs.empty()) return out;
    std::map<Mono, std::size_t, GrLexLess> rows;
    for (const auto& c : certs)
        for (const auto& [m, co] : c.k.terms()) rows.emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : rows) idx = r++;
    std::vector<std::vector<CNum>> A(rows.size(), std::vector<CNum>(certs.size()));
    for (std::size_t j = 0; j < certs.size(); ++j)
        for (const auto& [m, co] : certs[j].k.terms()) A[rows.at(m)][j] = co;
    auto basis = kernel_basis(A, static_cast<int>(certs.size()));
    out.kernel_dimension = static_cast<int>(basis.size());
    for (const auto& v : basis) {
        auto alpha = primitive_integer_vector(v);
        if (!alpha) continue;
        RationalFn2 R(1);
        for (std::size_t j = 0; j < certs.size(); ++j) {
            if (sgn((*alpha)[j]) == 0) continue;
            if (!(*alpha)[j].fits_sint_p()) throw std::overflow_error("kernel exponent too large");
            R *= RationalFn2(certs[j].h).pow(static_cast<int>((*alpha)[j].get_si()));
        }
        if (!is_first_integral(Y, ExpPoly(R))) {
            out.diagnostics.push_back("kernel vector did not give a first integral");
            continue;
        }
        out.R = R;
        out.alpha = *alpha;
        if (basis.size() > 1) out.diagnostics.push_back("kernel has dimension " + std::to_string(basis.size()) +
                                                        "; returning the first basis vector");
        return out;
    }
    if (!basis.empty()) out.diagnostics.push_back("no kernel vector with rational real entries");
    return out;
}

}  // namespace campo

#endif  // CAMPO_INTEGRALS_HPP
