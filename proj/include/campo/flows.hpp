#ifndef CAMPO_FLOWS_HPP
#define CAMPO_FLOWS_HPP

#include "campo/families.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace campo {

using cplx = std::complex<double>;

struct CPoint {
    cplx x, y;
};

/// Double-precision evaluator for an ExpPoly, with its monomials flattened once.
class NumericExpPoly {
public:
    NumericExpPoly() = default;
    explicit NumericExpPoly(const ExpPoly& e)
    {
        for (const auto& t : e.terms()) {
            terms_.push_back({flatten(t.coeff.num()), flatten(t.coeff.den()), flatten(t.exponent)});
        }
    }

    cplx operator()(cplx x, cplx y) const
    {
        cplx s = 0;
        for (const auto& t : terms_) {
            cplx v = eval(t.num, x, y) / eval(t.den, x, y);
            if (!t.exponent.empty()) v *= std::exp(eval(t.exponent, x, y));
            s += v;
        }
        return s;
    }

private:
    struct Mon {
        int i, j;
        cplx c;
    };
    struct Term {
        std::vector<Mon> num, den, exponent;
    };
    static std::vector<Mon> flatten(const LaurentPoly2& p)
    {
        std::vector<Mon> out;
        for (const auto& [m, c] : p.terms()) out.push_back({m.i, m.j, c.to_complex()});
        return out;
    }
    static cplx eval(const std::vector<Mon>& p, cplx x, cplx y)
    {
        cplx s = 0;
        for (const auto& m : p) s += m.c * ipow(x, m.i) * ipow(y, m.j);
        return s;
    }
    std::vector<Term> terms_;
};

struct NumericField {
    NumericExpPoly P, Q;
    explicit NumericField(const PlanarField& X) : P(X.P), Q(X.Q) {}
    CPoint operator()(const CPoint& z) const { return {P(z.x, z.y), Q(z.x, z.y)}; }
};

enum class FlowStatus { completed, blowup, step_underflow };

inline const char* status_name(FlowStatus s)
{
    switch (s) {
    case FlowStatus::completed: return "completed";
    case FlowStatus::blowup: return "blowup";
    default: return "step-underflow";
    }
}

struct FlowSample {
    cplx t;
    CPoint z;
};

/// A solution continued along a piecewise-linear path in complex time.
struct FlowTrace {
    std::vector<cplx> path;
    std::vector<FlowSample> samples;
    FlowStatus status = FlowStatus::completed;
    std::optional<cplx> stopped_at;
    double conserved_drift = 0;
    int accepted = 0;
    int rejected = 0;
    // Both stopping statuses declare a blow-up: the step collapses next to a pole
    // before the iterate norm gets past the threshold.
    bool blew_up() const { return status != FlowStatus::completed; }
};

namespace detail {

inline double pt_norm(const CPoint& z) { return std::max(std::abs(z.x), std::abs(z.y)); }
inline bool pt_finite(const CPoint& z)
{
    return std::isfinite(z.x.real()) && std::isfinite(z.x.imag()) && std::isfinite(z.y.real()) &&
           std::isfinite(z.y.imag());
}
inline CPoint axpy(const CPoint& z, cplx a, const CPoint& k) { return {z.x + a * k.x, z.y + a * k.y}; }

}  // namespace detail

/// Integrator constants: Dormand-Prince 5(4) with the 5th-order solution propagated,
/// PI step control (exponents 0.7/5 and 0.4/5, safety 0.9, growth clamped to [0.2, 5]),
/// blow-up when |z| > 1e12, step underflow when the step drops below 1e-14 of a segment.
struct IntegratorLimits {
    double blowup_norm = 1e12;
    double min_step_fraction = 1e-14;
    long max_steps_per_segment = 2000000;
};

inline FlowTrace numeric_flow(const PlanarField& X, CPoint z0, const std::vector<cplx>& path, double tol,
                              const std::optional<ExpPoly>& invariant = std::nullopt, IntegratorLimits lim = {})
{
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    if (path.empty()) throw std::invalid_argument("path needs at least one node");
    NumericField F(X);
    std::optional<NumericExpPoly> inv;
    cplx I0 = 0;
    if (invariant) {
        inv.emplace(*invariant);
        I0 = (*inv)(z0.x, z0.y);
    }
    FlowTrace tr;
    tr.path = path;
    tr.samples.push_back({path.front(), z0});
    auto track = [&](const CPoint& z) {
        if (!inv) return;
        cplx I = (*inv)(z.x, z.y);
        double scale = std::abs(I0) > 1e-300 ? std::abs(I0) : 1.0;
        tr.conserved_drift = std::max(tr.conserved_drift, std::abs(I - I0) / scale);
    };
    // Dormand-Prince tableau.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
    (void)c2, (void)c3, (void)c4, (void)c5;
    CPoint z = z0;
    track(z);
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        cplx t0 = path[seg], dt = path[seg + 1] - path[seg];
        if (std::abs(dt) == 0) continue;
        auto f = [&](const CPoint& p) {
            CPoint v = F(p);
            return CPoint{v.x * dt, v.y * dt};
        };
        double s = 0, h = 0.01, err_prev = 1e-4;
        CPoint k1 = f(z);
        long steps = 0;
        while (s < 1) {
            if (++steps > lim.max_steps_per_segment) {
                tr.status = FlowStatus::step_underflow;
                tr.stopped_at = t0 + s * dt;
                return tr;
            }
            h = std::min(h, 1 - s);
            if (h < lim.min_step_fraction) {
                tr.status = FlowStatus::step_underflow;
                tr.stopped_at = t0 + s * dt;
                return tr;
            }
            CPoint k2 = f(detail::axpy(z, h * a21, k1));
            CPoint y3{z.x + h * (a31 * k1.x + a32 * k2.x), z.y + h * (a31 * k1.y + a32 * k2.y)};
            CPoint k3 = f(y3);
            CPoint y4{z.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x), z.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y)};
            CPoint k4 = f(y4);
            CPoint y5{z.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                      z.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y)};
            CPoint k5 = f(y5);
            CPoint y6{z.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
                      z.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y)};
            CPoint k6 = f(y6);
            CPoint zn{z.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
                      z.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y)};
            CPoint k7 = f(zn);
            CPoint errv{h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x),
                        h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y)};
            double err = std::numeric_limits<double>::infinity();
            if (detail::pt_finite(zn) && detail::pt_finite(k7)) {
                double sx = tol + tol * std::max(std::abs(z.x), std::abs(zn.x));
                double sy = tol + tol * std::max(std::abs(z.y), std::abs(zn.y));
                err = std::max(std::abs(errv.x) / sx, std::abs(errv.y) / sy);
            }
            if (err <= 1) {
                s = (1 - s - h <= 1e-15) ? 1 : s + h;
                z = zn;
                k1 = k7;
                ++tr.accepted;
                tr.samples.push_back({t0 + s * dt, z});
                track(z);
                if (detail::pt_norm(z) > lim.blowup_norm) {
                    tr.status = FlowStatus::blowup;
                    tr.stopped_at = t0 + s * dt;
                    return tr;
                }
                double fac = err == 0 ? 5 : 0.9 * std::pow(err, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
                h *= std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err, 1e-4);
            } else {
                ++tr.rejected;
                double fac = std::isfinite(err) ? 0.9 * std::pow(err, -0.2) : 0.1;
                h *= std::clamp(fac, 0.1, 0.9);
            }
        }
    }
    return tr;
}

struct RayResult {
    double theta = 0;
    FlowStatus status = FlowStatus::completed;
    std::optional<cplx> stopped_at;
    double conserved_drift = 0;
};

struct ProbeSummary {
    std::vector<RayResult> rays;
    bool blowup_detected = false;
    bool all_completed = true;
    double max_drift = 0;
};

/// Continue the solution along rays t = r e^{i theta_j}, theta_j = 2 pi j / nrays, r in [0, Rmax].
/// A blow-up on a ray certifies incompleteness; all rays completing is only evidence.
inline ProbeSummary completeness_probe(const PlanarField& X, CPoint z0, double Rmax, int nrays, double tol,
                                       const std::optional<ExpPoly>& invariant = std::nullopt)
{
    if (nrays < 4) throw std::invalid_argument("nrays must be at least 4");
    if (!(Rmax > 0)) throw std::invalid_argument("Rmax must be positive");
    std::vector<std::future<RayResult>> jobs;
    for (int j = 0; j < nrays; ++j) {
        double theta = 2 * M_PI * j / nrays;
        jobs.push_back(std::async(std::launch::async, [&, theta] {
            auto tr = numeric_flow(X, z0, {cplx(0), std::polar(Rmax, theta)}, tol, invariant);
            return RayResult{theta, tr.status, tr.stopped_at, tr.conserved_drift};
        }));
    }
    ProbeSummary out;
    for (auto& j : jobs) {
        out.rays.push_back(j.get());
        const auto& r = out.rays.back();
        if (r.status != FlowStatus::completed) {
            out.blowup_detected = true;
            out.all_completed = false;
        }
        out.max_drift = std::max(out.max_drift, r.conserved_drift);
    }
    return out;
}

namespace detail {

// (e^{z} - 1) / z, accurate near 0.
inline cplx expm1_over(cplx z)
{
    if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    return (std::exp(z) - 1.0) / z;
}

}  // namespace detail

/// Closed-form flow of a family member at complex time t.
inline CPoint exact_flow(const FamilySpec& spec, CPoint z0, cplx t)
{
    build_Y(spec);  // validates parameters
    return std::visit(
        [&](const auto& s) -> CPoint {
            using T = std::decay_t<decltype(s)>;
            const cplx x0 = z0.x, y0 = z0.y;
            if constexpr (std::is_same_v<T, fam::S1>) {
                cplx A = s.a.eval(x0), B = s.b.eval(x0);
                return {x0, std::exp(A * t) * y0 + B * t * detail::expm1_over(A * t)};
            } else if constexpr (std::is_same_v<T, fam::S2>) {
                return {x0 * std::exp(s.lambda.to_complex() * t), y0 * std::exp(s.mu.to_complex() * t)};
            } else if constexpr (std::is_same_v<T, fam::S3>) {
                cplx l = s.lambda.to_complex();
                return {x0 * std::exp(l * t), std::exp(l * double(s.m) * t) * (y0 + ipow(x0, s.m) * t)};
            } else if constexpr (std::is_same_v<T, fam::S4>) {
                cplx L = s.lambda.eval(ipow(x0, s.m) * ipow(y0, s.n));
                return {x0 * std::exp(double(s.n) * L * t), y0 * std::exp(-double(s.m) * L * t)};
            } else if constexpr (std::is_same_v<T, fam::S5>) {
                if (std::abs(x0) < 1e-12) throw std::invalid_argument("initial point on the excluded line x = 0");
                cplx w0 = ipow(x0, s.l) * y0 + s.p.eval(x0);
                cplx L = s.lambda.eval(ipow(x0, s.m) * ipow(w0, s.n));
                cplx x = x0 * std::exp(double(s.n) * L * t);
                cplx w = w0 * std::exp(-double(s.m) * L * t);
                return {x, (w - s.p.eval(x)) / ipow(x, s.l)};
            } else if constexpr (std::is_same_v<T, fam::B>) {
                // In the chart: H^* X = M (a(v) u d/du + c d/dv) with M = (f o H) u^k constant
                // along trajectories when it is a first integral of the chart field.
                const ExpPoly& f = detail::need_f(s.f);
                HMap H = detail::chart_of_B(s);
                int k = H.weight();
                PlanarField Z = detail::b_chart_field(s);
                Z = ExpPoly(LaurentPoly2::monomial(1, -k, 0)) * Z;
                ExpPoly M = substitute(f, H.to_xy()) * ExpPoly(LaurentPoly2::monomial(1, k, 0));
                if (!lie(Z, M).is_zero())
                    throw std::invalid_argument("unsupported: (f o H) u^k is not a first integral of the chart field");
                if (std::abs(x0) < 1e-12) throw std::invalid_argument("initial point within 1e-12 of the branch point x = 0");
                auto A = s.a.antiderivative();
                if (!A) throw std::invalid_argument("unsupported: a has a 1/z term");
                cplx u0 = std::pow(x0, 1.0 / s.n);
                cplx v0 = ipow(u0, k) * y0 + ipow(u0, s.m) * s.p.eval(x0);
                cplx Mv = NumericExpPoly(M)(u0, v0);
                cplx c = s.c.to_complex();
                cplx v = v0 + c * Mv * t;
                cplx u = u0 * std::exp((A->eval(v) - A->eval(v0)) / c);
                cplx x = ipow(u, s.n);
                return {x, (v - ipow(u, s.m) * s.p.eval(x)) / ipow(u, k)};
            } else {
                throw std::invalid_argument(std::string("unsupported: no closed-form flow for ") + tag_name(spec));
            }
        },
        spec);
}

}  // namespace campo

#endif  // CAMPO_FLOWS_HPP
