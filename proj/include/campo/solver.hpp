#ifndef CAMPO_SOLVER_HPP
#define CAMPO_SOLVER_HPP

#include "campo/gcd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace campo {

/// Exact Horner evaluation of sum coeffs[k] z^k.
inline CNum horner(const std::vector<CNum>& coeffs, const CNum& z)
{
    CNum acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

namespace detail {

inline std::vector<Rat> convergents(long double v, long double tol)
{
    std::vector<Rat> out;
    if (!std::isfinite(v)) return out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, ...
    long double r = v;
    for (int step = 0; step < 40; ++step) {
        long double fl = std::floor(r);
        if (std::fabs(fl) > 1e15L) break;
        mpz_class a(static_cast<double>(fl));
        mpz_class h = a * h0 + h1, k = a * k0 + k1;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        Rat q(h, k);
        q.canonicalize();
        long double approx = static_cast<long double>(q.get_d());
        if (std::fabs(approx - v) <= tol * std::max<long double>(1, std::fabs(v))) out.push_back(q);
        if (k > mpz_class(100000000)) break;
        long double frac = r - fl;
        if (std::fabs(frac) < 1e-18L) break;
        r = 1 / frac;
    }
    return out;
}

// Simultaneous Aberth iteration for all roots of a polynomial (coefficients low to high).
inline std::vector<std::complex<long double>> aberth(const std::vector<std::complex<long double>>& c)
{
    using C = std::complex<long double>;
    int d = static_cast<int>(c.size()) - 1;
    std::vector<C> z(d);
    if (d <= 0) return z;
    long double bound = 0;
    for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(c[k] / c[d]));
    bound = 1 + bound;
    for (int k = 0; k < d; ++k) z[k] = std::polar(bound * 0.5L + 0.1L, 2 * 3.14159265358979323846L * (k + 0.25L) / d);
    auto eval = [&](C x, C& dp) {
        C p = c[d];
        dp = 0;
        for (int k = d - 1; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        return p;
    };
    for (int it = 0; it < 500; ++it) {
        long double worst = 0;
        for (int k = 0; k < d; ++k) {
            C dp;
            C p = eval(z[k], dp);
            if (p == C(0)) continue;
            C ratio = p / dp;
            C sum = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) sum += C(1) / (z[k] - z[j]);
            C w = ratio / (C(1) - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[k])));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

}  // namespace detail

/// Number of distinct complex roots (degree of the square-free part).
inline int distinct_root_count(std::vector<CNum> coeffs)
{
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() <= 1) return 0;
    detail::Dense<CNum> p, dp;
    p.c = coeffs;
    for (std::size_t k = 1; k < coeffs.size(); ++k) dp.c.push_back(coeffs[k] * CNum(static_cast<long>(k)));
    dp.trim();
    return detail::exact_div(p, detail::gcd(p, dp))->degree();
}

/// All distinct Gaussian-rational roots of a univariate polynomial (coefficients low to
/// high). Roots are located numerically, reconstructed as continued-fraction convergents
/// and kept only after exact verification, so the result is exact but may miss roots
/// whose denominators are very large. Irrational roots are never returned.
inline std::vector<CNum> gaussian_rational_roots(std::vector<CNum> coeffs)
{
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    std::vector<CNum> roots;
    // Zero as a root, then deflate by powers of z.
    std::size_t low = 0;
    while (coeffs[low].is_zero()) ++low;
    if (low > 0) {
        roots.push_back(CNum(0));
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
    }
    if (coeffs.size() <= 1) return roots;
    // Square-free part: p / gcd(p, p').
    detail::Dense<CNum> p;
    p.c = coeffs;
    detail::Dense<CNum> dp;
    for (std::size_t k = 1; k < coeffs.size(); ++k) dp.c.push_back(coeffs[k] * CNum(static_cast<long>(k)));
    dp.trim();
    auto g = detail::gcd(p, dp);
    auto sf = *detail::exact_div(p, g);
    sf = detail::monic(sf);
    std::vector<std::complex<long double>> cc;
    for (const auto& x : sf.c)
        cc.emplace_back(static_cast<long double>(x.re().get_d()), static_cast<long double>(x.im().get_d()));
    for (const auto& z : detail::aberth(cc)) {
        auto re = detail::convergents(z.real(), 1e-9L);
        auto im = detail::convergents(z.imag(), 1e-9L);
        if (std::fabs(z.real()) < 1e-10L) re.insert(re.begin(), Rat(0));
        if (std::fabs(z.imag()) < 1e-10L) im.insert(im.begin(), Rat(0));
        bool found = false;
        for (const auto& a : re) {
            for (const auto& b : im) {
                CNum cand(a, b);
                if (horner(sf.c, cand).is_zero()) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const CNum& a, const CNum& b) { return compare(a, b) < 0; });
    return roots;
}

/// Polynomial in a fixed number of unknowns t_0, ..., t_{n-1} with CNum coefficients.
class MPoly {
public:
    using Exps = std::vector<int>;

    MPoly() = default;
    explicit MPoly(int nvars) : nvars_(nvars) {}
    MPoly(int nvars, const CNum& c) : nvars_(nvars)
    {
        if (!c.is_zero()) t_[Exps(nvars, 0)] = c;
    }
    static MPoly var(int nvars, int k)
    {
        MPoly p(nvars);
        Exps e(nvars, 0);
        e[k] = 1;
        p.t_[e] = CNum(1);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Exps, CNum>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const
    {
        return t_.empty() || (t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(),
                                                            [](int e) { return e == 0; }));
    }
    CNum constant_value() const
    {
        auto it = t_.find(Exps(nvars_, 0));
        return it == t_.end() ? CNum(0) : it->second;
    }
    int degree_in(int k) const
    {
        int d = 0;
        for (const auto& [e, c] : t_) d = std::max(d, e[k]);
        return d;
    }
    int total_degree() const
    {
        int d = 0;
        for (const auto& [e, c] : t_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    std::set<int> vars_used() const
    {
        std::set<int> out;
        for (const auto& [e, c] : t_)
            for (int k = 0; k < nvars_; ++k)
                if (e[k] > 0) out.insert(k);
        return out;
    }

    void add_term(const Exps& e, const CNum& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o)
    {
        if (nvars_ == 0) nvars_ = o.nvars_;
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o)
    {
        if (nvars_ == 0) nvars_ = o.nvars_;
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const CNum& s)
    {
        MPoly out(a.nvars_);
        if (s.is_zero()) return out;
        for (const auto& [e, c] : a.t_) out.t_.emplace(e, c * s);
        return out;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        MPoly out(std::max(a.nvars_, b.nvars_));
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Exps e(out.nvars_, 0);
                for (int k = 0; k < out.nvars_; ++k) e[k] = ea[k] + eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    /// Replace t_k by the polynomial s.
    MPoly substitute(int k, const MPoly& s) const
    {
        MPoly out(nvars_);
        std::map<int, MPoly> powers;
        powers.emplace(0, MPoly(nvars_, CNum(1)));
        for (const auto& [e, c] : t_) {
            int d = e[k];
            if (!powers.count(d)) {
                int have = powers.rbegin()->first;
                MPoly acc = powers.rbegin()->second;
                for (int j = have + 1; j <= d; ++j) {
                    acc = acc * s;
                    powers.emplace(j, acc);
                }
            }
            Exps rest = e;
            rest[k] = 0;
            MPoly mono(nvars_);
            mono.t_[rest] = c;
            out += mono * powers.at(d);
        }
        return out;
    }

    /// If this is c * t_k + (terms free of t_k) with a nonzero constant c, return c.
    std::optional<CNum> linear_constant_coeff(int k) const
    {
        std::optional<CNum> coeff;
        for (const auto& [e, c] : t_) {
            if (e[k] == 0) continue;
            if (e[k] > 1) return std::nullopt;
            for (int j = 0; j < nvars_; ++j)
                if (j != k && e[j] != 0) return std::nullopt;
            coeff = c;
        }
        return coeff;
    }

    /// Coefficients (low to high) when only t_k occurs.
    std::vector<CNum> univariate(int k) const
    {
        std::vector<CNum> out(degree_in(k) + 1);
        for (const auto& [e, c] : t_) out[e[k]] = c;
        return out;
    }

private:
    int nvars_ = 0;
    std::map<Exps, CNum> t_;
};

/// One solution of a polynomial system. Unknowns left free by the equations are listed in
/// free_vars and set to 1 in values.
struct SystemSolution {
    std::vector<CNum> values;
    std::vector<int> free_vars;
};

struct SystemResult {
    std::vector<SystemSolution> solutions;
    std::vector<std::string> diagnostics;
};

namespace detail {

struct Elimination {
    int var;
    MPoly expr;
};

inline void solve_rec(std::vector<MPoly> eqs, int nvars, std::vector<Elimination> elim, SystemResult& out,
                      int& budget, const std::vector<int>& priority)
{
    if (--budget < 0) {
        out.diagnostics.push_back("branch budget exhausted; solution list may be incomplete");
        return;
    }
    std::vector<MPoly> live;
    for (auto& e : eqs) {
        if (e.is_zero()) continue;
        if (e.is_constant()) return;  // inconsistent branch
        live.push_back(std::move(e));
    }
    auto eliminate = [&](int var, const MPoly& expr) {
        std::vector<MPoly> next;
        next.reserve(live.size());
        for (const auto& e : live) next.push_back(e.substitute(var, expr));
        auto el = elim;
        el.push_back({var, expr});
        solve_rec(std::move(next), nvars, std::move(el), out, budget, priority);
    };
    if (live.empty()) {
        std::vector<bool> fixed(nvars, false);
        for (const auto& e : elim) fixed[e.var] = true;
        SystemSolution s;
        s.values.assign(nvars, CNum(1));
        for (int k = 0; k < nvars; ++k)
            if (!fixed[k]) s.free_vars.push_back(k);
        for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
            MPoly v = it->expr;
            for (int k = 0; k < nvars; ++k)
                if (v.degree_in(k) > 0) v = v.substitute(k, MPoly(nvars, s.values[k]));
            s.values[it->var] = v.constant_value();
        }
        out.solutions.push_back(std::move(s));
        return;
    }
    // Linear elimination with a constant pivot, preferring low-degree equations.
    std::vector<std::size_t> order(live.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return live[a].total_degree() < live[b].total_degree(); });
    for (std::size_t idx : order) {
        const MPoly& e = live[idx];
        for (int var : priority) {
            if (e.degree_in(var) == 0) continue;
            auto c = e.linear_constant_coeff(var);
            if (!c) continue;
            MPoly rest = e - MPoly::var(nvars, var) * *c;
            eliminate(var, rest * (CNum(-1) / *c));
            return;
        }
    }
    // A univariate equation: branch over its Gaussian-rational roots.
    for (std::size_t idx : order) {
        const MPoly& e = live[idx];
        auto used = e.vars_used();
        if (used.size() != 1) continue;
        int var = *used.begin();
        auto coeffs = e.univariate(var);
        auto roots = gaussian_rational_roots(coeffs);
        int deg = static_cast<int>(coeffs.size()) - 1;
        if (static_cast<int>(roots.size()) < distinct_root_count(coeffs)) {
            out.diagnostics.push_back("equation of degree " + std::to_string(deg) + " in unknown " +
                                      std::to_string(var) + " has roots outside Q(i); only rational ones are used");
        }
        for (const auto& r : roots) eliminate(var, MPoly(nvars, r));
        return;
    }
    out.diagnostics.push_back("nonlinear system left unresolved by elimination");
}

}  // namespace detail

/// Solve a polynomial system over Q(i) by exact elimination: unknowns appearing linearly
/// with a constant coefficient are eliminated first (in `priority` order), univariate
/// equations branch over their Gaussian-rational roots. Solutions with irrational
/// coordinates are not produced (a diagnostic is emitted instead).
inline SystemResult solve_system(std::vector<MPoly> eqs, int nvars, std::vector<int> priority = {},
                                 int max_branches = 256)
{
    if (priority.empty())
        for (int k = 0; k < nvars; ++k) priority.push_back(k);
    SystemResult out;
    int budget = max_branches;
    detail::solve_rec(std::move(eqs), nvars, {}, out, budget, priority);
    std::sort(out.diagnostics.begin(), out.diagnostics.end());
    out.diagnostics.erase(std::unique(out.diagnostics.begin(), out.diagnostics.end()), out.diagnostics.end());
    return out;
}

/// Basis of {v : rows * v = 0} over Q(i), from the reduced row echelon form.
inline std::vector<std::vector<CNum>> kernel_basis(std::vector<std::vector<CNum>> rows, int ncols)
{
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!rows[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        CNum inv = CNum(1) / rows[r][c];
        for (auto& x : rows[r]) x = x * inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            CNum f = rows[i][c];
            for (int j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<CNum>> basis;
    for (int c = 0; c < ncols; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        std::vector<CNum> v(ncols);
        v[c] = CNum(1);
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -rows[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scale a real rational vector to coprime integers with positive first nonzero entry;
/// nullopt if some entry is not real.
inline std::optional<std::vector<mpz_class>> primitive_integer_vector(const std::vector<CNum>& v)
{
    mpz_class lcm = 1;
    for (const auto& x : v) {
        if (!x.is_real()) return std::nullopt;
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.re().get_den_mpz_t());
    }
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (const auto& x : v) {
        Rat s = x.re() * lcm;
        out.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    if (g == 0) return std::nullopt;
    int sign = 0;
    for (const auto& x : out)
        if (x != 0) {
            sign = sgn(x);
            break;
        }
    for (auto& x : out) x = x / g * sign;
    return out;
}

}  // namespace campo

#endif  // CAMPO_SOLVER_HPP
