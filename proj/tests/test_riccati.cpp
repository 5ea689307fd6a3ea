#include "support.hpp"

using namespace campo;
using namespace campo::test;

namespace {

PlanarField F(const char* P, const char* Q) { return make_field(P, Q); }
UniPoly V(const char* s) { return parse_unipoly(s, "v"); }
const HMap H11{1, 1, 0, UniPoly("x")};
const Vars uv{"u", "v"};

std::string riccati_condition(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const RiccatiError& e) {
        return e.condition();
    }
    return "";
}

FamilySpec rand_chart_instance()
{
    switch (rand_int(0, 2)) {
    case 0: return rand_AII();
    case 1: return rand_AIII();
    default: return rand_B();
    }
}

}  // namespace

TEST(UVForm, Examples)
{
    UVForm a = extract_uv_form(F("x", "-y"), H11);
    EXPECT_EQ(a.k, 0);
    EXPECT_EQ(a.a, V("1"));
    EXPECT_TRUE(a.c.is_zero());

    UVForm b = extract_uv_form(F("x^2", "-(x*y - 1)"), H11);
    EXPECT_EQ(b.k, 1);
    EXPECT_EQ(b.a, V("1"));
    EXPECT_EQ(b.c, V("1"));
    EXPECT_EQ(b.N(), 0);

    // x = u, y = v/u: u' = v and v' = v^2 / u, so u^-2 (v u d/du + v^2 d/dv).
    UVForm c = extract_uv_form(F("y", "0"), H11);
    EXPECT_EQ(c.k, -2);
    EXPECT_EQ(c.a, V("v"));
    EXPECT_EQ(c.c, V("v^2"));

    EXPECT_EQ(riccati_condition([] { extract_uv_form(F("x + y", "0"), H11); }), "not_riccati");
    EXPECT_EQ(riccati_condition([] { extract_uv_form(parse("exp(x)") * F("1", "0"), H11); }), "not_riccati");
}

TEST(UVForm, ChartFieldIsThePullback)
{
    for (int trial = 0; trial < 20; ++trial) {
        FamilySpec s = rand_chart_instance();
        HMap H = family_chart(s);
        PlanarField Y = build_Y(s);
        UVForm form = extract_uv_form(Y, H);
        EXPECT_EQ(form.chart_field(), pullback_H(Y, H)) << tag_name(s);
    }
}

TEST(Eta, Examples)
{
    HMap H{1, 1, 0, UniPoly("x")};
    EtaResult e = eta_contraction(F("x", "2*y"), H);
    EXPECT_EQ(e.etaY, parse_laurent("3*x*y"));
    EXPECT_EQ((std::tuple{e.shape.alpha, e.shape.beta, e.shape.gamma}), (std::tuple{1, 1, 0}));
    EXPECT_EQ(e.shape.constant, CNum(3));

    EXPECT_EQ(riccati_condition([&] { eta_contraction(F("2*x", "-3*y"), HMap{3, 2, 0, UniPoly("x")}); }),
              "first_integral");

    // y P + x Q = xy + xy(xy - 6) = xy(xy - 5).
    EtaResult g = eta_contraction(F("x", "y*(x*y - 6)"), H);
    EXPECT_EQ(g.etaY, parse_laurent("x*y*(x*y - 5)"));
    EXPECT_EQ((std::tuple{g.shape.alpha, g.shape.beta, g.shape.gamma}), (std::tuple{1, 1, 1}));
    ASSERT_TRUE(g.shape.s.has_value());
    EXPECT_EQ(*g.shape.s, CNum(5));

    EXPECT_EQ(riccati_condition([&] { eta_contraction(F("x + y^2", "1"), H); }), "shape_mismatch");
}

TEST(Eta, ContractionMatchesHandFormula)
{
    // x w dR/R = (m w + n x w_x) dx + n x^{l+1} dy for R = x^m w^n, w = x^l y + p.
    for (int trial = 0; trial < 20; ++trial) {
        FamilySpec s = rand_chart_instance();
        HMap H = family_chart(s);
        PlanarField Y = build_Y(s);
        LaurentPoly2 w = H.w();
        LaurentPoly2 ex = w * CNum(H.m) + w.diff(0).shifted({1, 0}) * CNum(H.n);
        LaurentPoly2 ey = LaurentPoly2::monomial(CNum(H.n), H.l + 1, 0);
        LaurentPoly2 expected = (ExpPoly(ex) * Y.P + ExpPoly(ey) * Y.Q).as_laurent();
        if (expected.is_zero()) {
            EXPECT_EQ(riccati_condition([&] { eta_contraction(Y, H); }), "first_integral");
            continue;
        }
        EtaResult e = eta_contraction(Y, H);
        EXPECT_EQ(e.etaY, expected);
    }
}

TEST(Eta, ShapeReassembles)
{
    for (int trial = 0; trial < 20; ++trial) {
        FamilySpec s = rand_chart_instance();
        HMap H = family_chart(s);
        PlanarField Y = build_Y(s);
        EtaResult e;
        try {
            e = eta_contraction(Y, H);
        } catch (const RiccatiError& err) {
            EXPECT_EQ(err.condition(), "first_integral");
            continue;
        }
        LaurentPoly2 back = LaurentPoly2::monomial(e.shape.constant, e.shape.alpha, 0) *
                            H.w().pow(static_cast<unsigned>(e.shape.beta));
        if (e.shape.gamma > 0)
            back = back * (H.R().num() - LaurentPoly2(*e.shape.s)).pow(static_cast<unsigned>(e.shape.gamma));
        EXPECT_EQ(back, e.etaY) << tag_name(s);
    }
}

TEST(SolveK, Examples)
{
    EXPECT_EQ(solve_k(EtaShape{1, 1, 0}, HMap{1, 1, 0, UniPoly("x")}, 1), 0);
    EXPECT_EQ(solve_k(EtaShape{1, 0, 0}, HMap{1, 1, 0, UniPoly("x")}, 0), 1);
    EXPECT_EQ(solve_k(EtaShape{2, 1, 0}, HMap{2, 3, 0, UniPoly("x")}, 1), 3);
    EXPECT_EQ(riccati_condition([] { solve_k(EtaShape{1, 1, 1, CNum(5)}, HMap{1, 1, 0, UniPoly("x")}, 1); }),
              "gamma_nonzero");
    EXPECT_EQ(extract_uv_form(F("x", "-y"), H11).k, 0);
}

TEST(SolveK, AgreesWithTheChartExponent)
{
    int compared = 0;
    for (int trial = 0; trial < 45; ++trial) {
        FamilySpec s = rand_chart_instance();
        HMap H = family_chart(s);
        PlanarField Y = build_Y(s);
        UVForm form = extract_uv_form(Y, H);
        if (std::holds_alternative<fam::B>(s)) EXPECT_EQ(form.k, H.weight());
        if (!form.N()) continue;
        EtaResult e;
        try {
            e = eta_contraction(Y, H);
        } catch (const RiccatiError&) {
            continue;
        }
        if (e.shape.gamma != 0) continue;
        EXPECT_EQ(solve_k(e.shape, H, *form.N()), form.k) << tag_name(s);
        ++compared;
    }
    EXPECT_GT(compared, 20);
}

TEST(TimeForm, Examples)
{
    HMap H{1, 1, 0, UniPoly("x")};
    PlanarField Y = F("x", "2*y");
    TimeForm tf = time_form(ExpPoly(1), Y, H, eta_contraction(Y, H));
    EXPECT_EQ(tf.numerator, parse("x*y"));
    EXPECT_EQ(tf.denominator, parse("3*x*y"));
    EXPECT_TRUE(verify_time_contraction(tf, Y));
    EXPECT_FALSE(verify_time_contraction(tf, F("x", "y")));

    EtaResult other = eta_contraction(F("x", "y*(x*y - 6)"), H);
    EXPECT_EQ(riccati_condition([&] { time_form(ExpPoly(1), Y, H, other); }), "shape_mismatch");
    EXPECT_EQ(riccati_condition([&] { time_form(ExpPoly{}, Y, H, eta_contraction(Y, H)); }), "zero_f");
}

TEST(TimeForm, ChartFormOfExampleTwo)
{
    PlanarField X = parse("exp(-x*y)") * F("x^2", "1 - x*y");
    UVForm form = extract_uv_form(F("x^2", "1 - x*y"), H11);
    ChartTimeForm rho = chart_time_form(parse("exp(-x*y)"), form);
    EXPECT_EQ(rho.denominator, parse("u*exp(-v)", uv));
    EXPECT_TRUE(verify_chart_time_contraction(rho, pullback_H(X, H11)));
}

TEST(TimeForm, ContractsToOneOnEveryInstance)
{
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        FamilySpec s = rand_chart_instance();
        HMap H = family_chart(s);
        PlanarField Y = build_Y(s);
        ExpPoly f = *family_f(s);
        EtaResult e;
        try {
            e = eta_contraction(Y, H);
        } catch (const RiccatiError&) {
            continue;
        }
        EXPECT_TRUE(verify_time_contraction(time_form(f, Y, H, e), f * Y)) << tag_name(s);
        ++checked;
    }
    EXPECT_GT(checked, 15);
}

TEST(BuildFromUV, Examples)
{
    UVForm ex2{1, V("1"), V("1"), H11};
    EXPECT_EQ(build_Y_from_uv(ex2), F("x^2", "1 - x*y"));
    UVForm degenerate{0, V("v"), UniPoly("v"), H11};
    EXPECT_EQ(riccati_condition([&] { build_Y_from_uv(degenerate); }), "c_nonzero");
    UVForm wrong_k{2, V("1"), V("1"), H11};
    EXPECT_EQ(riccati_condition([&] { build_Y_from_uv(wrong_k); }), "divisibility");
    // a(0) = 0 with N = 1 leaves the curve v = 0, i.e. y = 0, made of zeros.
    UVForm flat{0, V("v"), V("v"), H11};
    EXPECT_EQ(riccati_condition([&] { build_Y_from_uv(flat); }), "non_isolated_singularities");
}

TEST(BuildFromUV, RoundTrip)
{
    for (int trial = 0; trial < 20; ++trial) {
        UVForm form = rand_uv_form_N();
        PlanarField Y = build_Y_from_uv(form);
        UVForm back = extract_uv_form(Y, form.H);
        EXPECT_EQ(back.k, form.k);
        EXPECT_EQ(back.a, form.a);
        EXPECT_EQ(back.c, form.c);
    }
}

TEST(DecomposeFromUV, RelationWithOmegaNC)
{
    for (int trial = 0; trial < 20; ++trial) {
        UVForm form = rand_uv_form_N();
        ExpPoly f = rand_f();
        Decomposition d = decompose_from_uv(f, form);
        PlanarField FY = ExpPoly(d.F) * d.Y;
        EXPECT_EQ(d.Omega, CNum(form.H.n) * form.c_const());
        EXPECT_EQ(lie(FY, ExpPoly(d.R)), ExpPoly(d.R * RationalFn2(d.Omega)));
        EXPECT_EQ(d.G * FY, f * d.Y);
    }
    UVForm n0{1, V("1"), V("1"), H11};
    EXPECT_EQ(riccati_condition([&] { decompose_from_uv(ExpPoly(1), n0); }), "divisibility");
}
