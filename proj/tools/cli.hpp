#ifndef CAMPO_TOOLS_CLI_HPP
#define CAMPO_TOOLS_CLI_HPP

#include "campo/campo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace campo::cli {

using json = nlohmann::ordered_json;

/// Bad or missing input; always exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string command;
    json inputs = json::object();
    json verdicts = json::array();
    json certificates = json::object();
    std::vector<std::string> diagnostics;
    std::optional<std::string> error;

    void verdict(const std::string& name, json value) { verdicts.push_back({{"name", name}, {"value", std::move(value)}}); }
    void diag(const std::vector<std::string>& ds) { diagnostics.insert(diagnostics.end(), ds.begin(), ds.end()); }

    json to_json() const
    {
        json j{{"schema", "campo-report/1"}, {"command", command},      {"inputs", inputs},
               {"verdicts", verdicts},       {"certificates", certificates}, {"diagnostics", diagnostics}};
        if (error) j["error"] = *error;
        return j;
    }

    std::string to_text() const
    {
        std::ostringstream os;
        auto show = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        os << command << "\n";
        for (const auto& [k, v] : inputs.items()) os << "  input " << k << ": " << show(v) << "\n";
        for (const auto& v : verdicts) os << "  " << v["name"].get<std::string>() << ": " << show(v["value"]) << "\n";
        for (const auto& [k, v] : certificates.items()) os << "  " << k << ": " << show(v) << "\n";
        for (const auto& d : diagnostics) os << "  note: " << d << "\n";
        if (error) os << "  error: " << *error << "\n";
        return os.str();
    }
};

// ---- input parsing ------------------------------------------------------

inline std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\n");
    return std::string(s.substr(b, e - b + 1));
}

// Split at separators outside parentheses.
inline std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

/// "x:<expr>, y:<expr>"
inline PlanarField parse_field_shorthand(std::string_view text)
{
    auto parts = split_top(text, ',');
    if (parts.size() != 2) throw InputError("field must look like \"x:<expr>, y:<expr>\"");
    std::string names[2], exprs[2];
    for (int i = 0; i < 2; ++i) {
        auto colon = parts[i].find(':');
        if (colon == std::string::npos) throw InputError("field component without '<var>:' prefix: " + parts[i]);
        names[i] = trim(std::string_view(parts[i]).substr(0, colon));
        exprs[i] = parts[i].substr(colon + 1);
        if (names[i].empty()) throw InputError("empty variable name in field");
    }
    if (names[0] == names[1]) throw InputError("field variables must differ");
    Vars vars{names[0], names[1]};
    return make_field(exprs[0], exprs[1], vars);
}

inline PlanarField field_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("P") || !j.contains("Q")) throw InputError("field file needs keys P and Q");
    Vars vars{"x", "y"};
    if (j.contains("vars")) {
        const auto& v = j["vars"];
        if (!v.is_array() || v.size() != 2) throw InputError("vars must be a pair of names");
        vars = Vars{v[0].get<std::string>(), v[1].get<std::string>()};
    }
    return make_field(j["P"].get<std::string>(), j["Q"].get<std::string>(), vars);
}

inline json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline cplx parse_complex(const std::string& s)
{
    return parse_scalar(s).to_complex();
}

inline CPoint parse_point(const std::string& s)
{
    auto parts = split_top(s, ',');
    if (parts.size() != 2) throw InputError("point must look like \"x0,y0\"");
    return {parse_complex(parts[0]), parse_complex(parts[1])};
}

inline json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

/// Raw option values from flags, with a --spec-file or --field-file filling the gaps.
struct Inputs {
    std::map<std::string, std::string> opt;
    bool json_out = false, jsonl = false, exact = false;
    std::optional<json> field_file;

    bool has(const std::string& k) const
    {
        auto it = opt.find(k);
        return it != opt.end() && !it->second.empty();
    }
    const std::string& get(const std::string& k) const
    {
        if (!has(k)) throw InputError("missing --" + k);
        return opt.at(k);
    }
    std::string get_or(const std::string& k, const std::string& dflt) const { return has(k) ? opt.at(k) : dflt; }
    int get_int(const std::string& k, int dflt) const
    {
        if (!has(k)) return dflt;
        try {
            std::size_t used = 0;
            int v = std::stoi(opt.at(k), &used);
            if (used != opt.at(k).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw InputError("--" + k + " must be an integer");
        }
    }
    double get_double(const std::string& k, double dflt) const
    {
        if (!has(k)) return dflt;
        try {
            return std::stod(opt.at(k));
        } catch (const std::exception&) {
            throw InputError("--" + k + " must be a number");
        }
    }
};

inline const std::vector<std::string>& option_names()
{
    static const std::vector<std::string> names{
        "tag", "spec-file", "field", "field-file", "fn", "f", "m", "n", "l", "p", "a", "b", "c", "d", "lambda", "mu",
        "N", "eps", "C", "A", "B", "kappa", "delta", "lmax", "z0", "t", "path", "tol", "invariant", "rmax", "rays"};
    return names;
}

inline void merge_spec_file(Inputs& in)
{
    if (!in.has("spec-file")) return;
    json j = load_json(in.get("spec-file"));
    if (!j.is_object()) throw InputError("spec file must hold a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (in.has(k)) continue;
        in.opt[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
}

inline PlanarField get_field(Inputs& in)
{
    if (in.has("field")) return parse_field_shorthand(in.get("field"));
    if (in.has("field-file")) {
        in.field_file = load_json(in.get("field-file"));
        return field_from_json(*in.field_file);
    }
    throw InputError("missing --field or --field-file");
}

inline HMap get_chart(const Inputs& in)
{
    HMap H{in.get_int("m", 1), in.get_int("n", 1), in.get_int("l", 0), parse_unipoly(in.get_or("p", "0"), "x")};
    auto v = H.violation();
    if (!v.empty()) throw InputError("invalid chart parameters: " + v);
    return H;
}

inline FamilySpec family_spec(const Inputs& in)
{
    std::string tag = in.get("tag");
    auto uni = [&](const char* k, const char* var) { return parse_unipoly(in.get_or(k, "0"), var); };
    auto num = [&](const char* k, const char* dflt) { return parse_scalar(in.get_or(k, dflt)); };
    auto fopt = [&]() -> OptF {
        if (!in.has("f")) return std::nullopt;
        return parse(in.get("f"));
    };
    if (tag == "S1") return fam::S1{uni("a", "x"), uni("b", "x")};
    if (tag == "S2") return fam::S2{num("lambda", "0"), num("mu", "0")};
    if (tag == "S3") return fam::S3{num("lambda", "0"), in.get_int("m", 0)};
    if (tag == "S4") return fam::S4{uni("lambda", "z"), in.get_int("m", 1), in.get_int("n", 1)};
    if (tag == "S5")
        return fam::S5{uni("lambda", "z"), in.get_int("m", 1), in.get_int("n", 1), in.get_int("l", 1), uni("p", "x")};
    if (tag == "BI") return fam::BI{num("c", "0"), num("d", "0"), uni("a", "x"), uni("b", "x")};
    if (tag == "BII") return fam::BII{num("a", "0"), uni("lambda", "z"), in.get_int("m", 1), in.get_int("n", 1)};
    if (tag == "BIII")
        return fam::BIII{num("a", "0"),       uni("lambda", "z"), in.get_int("m", 1),
                         in.get_int("n", 1), in.get_int("l", 1), uni("p", "x")};
    if (tag == "A_I" || tag == "AI")
        return fam::AI{fopt(), in.get_int("N", 0), in.get_int("eps", 0), num("C", "1"), uni("A", "x"), uni("B", "x")};
    if (tag == "A_II" || tag == "AII")
        return fam::AII{fopt(),           in.get_int("kappa", 0), in.get_int("delta", 0), num("a", "0"),
                        uni("lambda", "z"), in.get_int("m", 1),   in.get_int("n", 1)};
    if (tag == "A_III" || tag == "AIII")
        return fam::AIII{fopt(),          in.get_int("kappa", 0), in.get_int("delta", 0), num("a", "0"),
                         uni("lambda", "z"), in.get_int("m", 1),  in.get_int("n", 1),     in.get_int("l", 1),
                         uni("p", "x")};
    if (tag == "B")
        return fam::B{fopt(), in.get_int("m", 1), in.get_int("n", 1), in.get_int("l", 0), uni("p", "x"), num("c", "1"),
                      uni("a", "z")};
    throw InputError("unknown family tag " + tag);
}

// Field for the flow commands: explicit, or built from a family.
inline PlanarField flow_field(Inputs& in, Report& r)
{
    if (in.has("tag")) {
        auto spec = family_spec(in);
        r.inputs["family"] = tag_name(spec);
        return build(spec);
    }
    return get_field(in);
}

inline std::optional<ExpPoly> get_invariant(const Inputs& in, const Vars& vars)
{
    if (in.has("invariant")) return parse(in.get("invariant"), vars);
    if (in.field_file && in.field_file->contains("invariant"))
        return parse((*in.field_file)["invariant"].get<std::string>(), vars);
    return std::nullopt;
}

// ---- commands ------------------------------------------------------------

inline int cmd_validate_family(Inputs& in, Report& r)
{
    auto spec = family_spec(in);
    r.inputs["tag"] = tag_name(spec);
    PlanarField Y;
    try {
        Y = build_Y(spec);
    } catch (const FamilyError& e) {
        r.verdict("accepted", false);
        r.certificates["violated"] = e.condition();
        r.diagnostics.push_back(e.what());
        return 1;
    }
    r.verdict("accepted", true);
    r.certificates["Y"] = to_string(Y);
    if (auto f = family_f(spec)) r.certificates["X"] = to_string(build(spec));
    if (const auto* s = std::get_if<fam::BIII>(&spec)) {
        LaurentPoly2 e = detail::star_residue(*s);
        r.certificates["star_residue"] = to_string(e);
        r.certificates["star_quotient"] = to_string(e.shifted({-s->l, 0}));
    }
    try {
        r.certificates["R"] = to_string(canonical_first_integral(spec));
    } catch (const FamilyError&) {
    }
    if (has_transcendental_factor(spec) && !std::holds_alternative<fam::B>(spec)) {
        auto [Omega, j] = check_theoremA_relation(spec);
        r.certificates["Omega"] = Omega.str();
        r.certificates["j"] = j;
    }
    return 0;
}

inline int cmd_first_integral(Inputs& in, Report& r)
{
    PlanarField X = get_field(in);
    ExpPoly f = parse(in.get("fn"), X.vars);
    r.inputs["field"] = to_string(X);
    r.inputs["fn"] = to_string(f, X.vars);
    ExpPoly d = lie(X, f);
    r.verdict("first_integral", d.is_zero());
    r.certificates["lie"] = to_string(d, X.vars);
    return d.is_zero() ? 0 : 1;
}

inline int cmd_second_integral(Inputs& in, Report& r)
{
    PlanarField Y = get_field(in);
    ExpPoly f = parse(in.get("fn"), Y.vars);
    r.inputs["field"] = to_string(Y);
    r.inputs["fn"] = to_string(f, Y.vars);
    auto rep = second_integral_report(Y, f);
    r.verdict("first_integral", rep.is_first);
    r.verdict("second_integral", rep.is_second);
    r.certificates["Yf"] = to_string(rep.Yf, Y.vars);
    if (rep.split_available) {
        r.verdict("split_verified", rep.split_verified);
        r.certificates["Hpart"] = to_string(rep.Hpart, Y.vars);
        r.certificates["Gpart"] = to_string(rep.Gpart, Y.vars);
    }
    return rep.is_second ? 0 : 1;
}

inline DarbouxResult run_darboux(Inputs& in, Report& r, PlanarField& Y)
{
    Y = get_field(in);
    r.inputs["field"] = to_string(Y);
    int lmax = in.get_int("lmax", 3);
    r.inputs["lmax"] = lmax;
    auto res = darboux_structured(Y, lmax);
    json certs = json::array();
    for (const auto& c : res.certificates) certs.push_back({{"h", to_string(c.h, Y.vars)}, {"k", to_string(c.k, Y.vars)}});
    r.certificates["darboux"] = certs;
    r.diag(res.diagnostics);
    return res;
}

inline int cmd_darboux(Inputs& in, Report& r)
{
    PlanarField Y;
    auto res = run_darboux(in, r, Y);
    r.verdict("found", !res.certificates.empty());
    return res.certificates.empty() ? 1 : 0;
}

inline int cmd_rational_integral(Inputs& in, Report& r)
{
    PlanarField Y;
    auto res = run_darboux(in, r, Y);
    auto ri = rational_first_integral(Y, res.certificates);
    r.diag(ri.diagnostics);
    r.verdict("found", ri.R.has_value());
    r.certificates["kernel_dimension"] = ri.kernel_dimension;
    if (ri.R) {
        r.certificates["R"] = to_string(*ri.R, Y.vars);
        json alpha = json::array();
        for (const auto& a : ri.alpha) alpha.push_back(a.get_str());
        r.certificates["alpha"] = alpha;
        r.verdict("first_integral", is_first_integral(Y, ExpPoly(*ri.R)));
    }
    return ri.R ? 0 : 1;
}

inline void echo_chart(const HMap& H, Report& r)
{
    r.inputs["chart"] = "m=" + std::to_string(H.m) + " n=" + std::to_string(H.n) + " l=" + std::to_string(H.l) +
                        " p=" + to_string(H.p);
}

inline int riccati_failure(const RiccatiError& e, const char* verdict, Report& r)
{
    r.verdict(verdict, false);
    r.certificates["violated"] = e.condition();
    r.diagnostics.push_back(e.what());
    return 1;
}

inline int cmd_uv_form(Inputs& in, Report& r)
{
    PlanarField Y = get_field(in);
    HMap H = get_chart(in);
    r.inputs["field"] = to_string(Y);
    echo_chart(H, r);
    try {
        auto form = extract_uv_form(Y, H);
        r.verdict("riccati_adapted", true);
        r.certificates["k"] = form.k;
        r.certificates["a"] = to_string(form.a);
        r.certificates["c"] = to_string(form.c);
        if (auto N = form.N()) r.certificates["N"] = *N;
        r.certificates["chart_field"] = to_string(form.chart_field());
        return 0;
    } catch (const RiccatiError& e) {
        return riccati_failure(e, "riccati_adapted", r);
    }
}

inline int cmd_eta(Inputs& in, Report& r)
{
    PlanarField Y = get_field(in);
    HMap H = get_chart(in);
    r.inputs["field"] = to_string(Y);
    echo_chart(H, r);
    EtaResult e;
    try {
        e = eta_contraction(Y, H);
    } catch (const RiccatiError& err) {
        return riccati_failure(err, "shape_factored", r);
    }
    r.verdict("shape_factored", true);
    r.certificates["eta"] = "(" + to_string(e.eta_x, Y.vars) + ")*d" + Y.vars.first + " + (" +
                            to_string(e.eta_y, Y.vars) + ")*d" + Y.vars.second;
    r.certificates["etaY"] = to_string(e.etaY, Y.vars);
    r.certificates["alpha"] = e.shape.alpha;
    r.certificates["beta"] = e.shape.beta;
    r.certificates["gamma"] = e.shape.gamma;
    if (e.shape.s) r.certificates["s"] = e.shape.s->str();
    r.certificates["constant"] = e.shape.constant.str();
    try {
        auto form = extract_uv_form(Y, H);
        if (auto N = form.N()) {
            int k = solve_k(e.shape, H, *N);
            r.certificates["solve_k"] = k;
            r.verdict("k_identity", k == form.k);
            return k == form.k ? 0 : 1;
        }
    } catch (const RiccatiError& err) {
        r.diagnostics.push_back(std::string("exponent identity not checked: ") + err.what());
    }
    return 0;
}

inline int cmd_time_form(Inputs& in, Report& r)
{
    PlanarField Y = get_field(in);
    HMap H = get_chart(in);
    ExpPoly f = parse(in.get("f"), Y.vars);
    r.inputs["field"] = to_string(Y);
    r.inputs["f"] = to_string(f, Y.vars);
    echo_chart(H, r);
    PlanarField X = f * Y;
    bool ok = true;
    try {
        auto e = eta_contraction(Y, H);
        auto tf = time_form(f, Y, H, e);
        bool v = verify_time_contraction(tf, X);
        ok = ok && v;
        r.verdict("tau_contracts_to_one", v);
        r.certificates["tau"] = "(" + to_string(tf.numerator, Y.vars) + ")/(" + to_string(tf.denominator, Y.vars) +
                                ") * dR/R";
        r.certificates["R"] = to_string(tf.R, Y.vars);
    } catch (const RiccatiError& err) {
        return riccati_failure(err, "tau_contracts_to_one", r);
    }
    try {
        auto form = extract_uv_form(Y, H);
        auto rho = chart_time_form(f, form);
        bool v = verify_chart_time_contraction(rho, pullback_H(X, H));
        ok = ok && v;
        r.verdict("rho_contracts_to_one", v);
        r.certificates["rho"] = "dv/(" + to_string(rho.denominator, Vars{"u", "v"}) + ")";
    } catch (const RiccatiError& err) {
        r.diagnostics.push_back(std::string("chart form not available: ") + err.what());
    }
    return ok ? 0 : 1;
}

inline int cmd_decompose(Inputs& in, Report& r)
{
    Decomposition d;
    PlanarField target;
    if (in.has("tag")) {
        auto spec = family_spec(in);
        r.inputs["tag"] = tag_name(spec);
        d = decompose(spec);
        PlanarField X = build(spec);
        r.inputs["X"] = to_string(X);
        target = d.chart ? pullback_H(X, *d.chart) : X;
    } else {
        PlanarField Y = get_field(in);
        HMap H = get_chart(in);
        ExpPoly f = parse(in.get("f"), Y.vars);
        r.inputs["field"] = to_string(Y);
        r.inputs["f"] = to_string(f, Y.vars);
        echo_chart(H, r);
        try {
            d = decompose_from_uv(f, extract_uv_form(Y, H));
        } catch (const RiccatiError& err) {
            return riccati_failure(err, "reassembles", r);
        }
        target = f * Y;
    }
    const Vars& v = d.Y.vars;
    PlanarField FY = ExpPoly(d.F) * d.Y;
    bool re = d.G * FY == target;
    bool rel = lie(FY, ExpPoly(d.R)) == ExpPoly(d.R.pow(d.j) * RationalFn2(d.Omega));
    r.verdict("reassembles", re);
    r.verdict("relation", rel);
    r.certificates["G"] = to_string(d.G, v);
    r.certificates["F"] = to_string(d.F, v);
    r.certificates["Y"] = to_string(d.Y);
    r.certificates["R"] = to_string(d.R, v);
    r.certificates["Omega"] = d.Omega.str();
    r.certificates["j"] = d.j;
    return re && rel ? 0 : 1;
}

inline std::vector<cplx> get_path(const Inputs& in)
{
    if (in.has("path")) {
        std::vector<cplx> path;
        for (const auto& s : split_top(in.get("path"), ';')) path.push_back(parse_complex(s));
        if (path.size() < 2) throw InputError("--path needs at least two nodes");
        return path;
    }
    return {cplx(0), parse_complex(in.get("t"))};
}

inline int cmd_flow(Inputs& in, Report& r, std::ostream& out)
{
    PlanarField X = flow_field(in, r);
    CPoint z0 = parse_point(in.get("z0"));
    auto path = get_path(in);
    double tol = in.get_double("tol", 1e-10);
    auto inv = get_invariant(in, X.vars);
    r.inputs["field"] = to_string(X);
    r.inputs["z0"] = in.get("z0");
    r.inputs["tol"] = tol;
    auto tr = numeric_flow(X, z0, path, tol, inv);
    if (in.jsonl) {
        for (const auto& s : tr.samples)
            out << json{{"t", cjson(s.t)}, {"x", cjson(s.z.x)}, {"y", cjson(s.z.y)}}.dump() << "\n";
        return tr.blew_up() ? 1 : 0;
    }
    r.verdict("completed", !tr.blew_up());
    r.certificates["status"] = status_name(tr.status);
    if (tr.stopped_at) r.certificates["stopped_at"] = cjson(*tr.stopped_at);
    const CPoint& z = tr.samples.back().z;
    r.certificates["final"] = {{"t", cjson(tr.samples.back().t)}, {"x", cjson(z.x)}, {"y", cjson(z.y)}};
    r.certificates["accepted_steps"] = tr.accepted;
    r.certificates["rejected_steps"] = tr.rejected;
    if (inv) r.certificates["conserved_drift"] = tr.conserved_drift;
    if (in.exact) {
        auto spec = family_spec(in);
        CPoint e = exact_flow(spec, z0, path.back());
        double scale = std::max(1.0, detail::pt_norm(e));
        r.certificates["exact"] = {{"x", cjson(e.x)}, {"y", cjson(e.y)}};
        if (!tr.blew_up())
            r.certificates["exact_deviation"] = std::max(std::abs(e.x - z.x), std::abs(e.y - z.y)) / scale;
    }
    return tr.blew_up() ? 1 : 0;
}

inline int cmd_probe(Inputs& in, Report& r)
{
    PlanarField X = flow_field(in, r);
    CPoint z0 = parse_point(in.get("z0"));
    double rmax = in.get_double("rmax", 5);
    int rays = in.get_int("rays", 8);
    double tol = in.get_double("tol", 1e-10);
    auto inv = get_invariant(in, X.vars);
    r.inputs["field"] = to_string(X);
    r.inputs["z0"] = in.get("z0");
    r.inputs["rmax"] = rmax;
    r.inputs["rays"] = rays;
    auto sum = completeness_probe(X, z0, rmax, rays, tol, inv);
    r.verdict("all_completed", sum.all_completed);
    r.verdict("blowup_detected", sum.blowup_detected);
    json js = json::array();
    for (const auto& ray : sum.rays) {
        json j{{"theta", ray.theta}, {"status", status_name(ray.status)}};
        if (ray.stopped_at) {
            j["stopped_at"] = cjson(*ray.stopped_at);
            j["radius"] = std::abs(*ray.stopped_at);
        }
        if (inv) j["drift"] = ray.conserved_drift;
        js.push_back(j);
    }
    r.certificates["rays"] = js;
    if (inv) r.certificates["max_drift"] = sum.max_drift;
    if (sum.all_completed) r.diagnostics.push_back("all rays completed: evidence of completeness, not a proof");
    return sum.all_completed ? 0 : 1;
}

/// Parse argv, run one subcommand, print the report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    static const std::vector<std::string> commands{"validate-family", "first-integral", "second-integral", "darboux",
                                                   "rational-integral", "uv-form", "eta", "time-form", "decompose",
                                                   "flow", "probe"};
    CLI::App app{"campo: complete vector fields f*Y on C^2"};
    app.require_subcommand(1, 1);
    Inputs in;
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        for (const auto& o : option_names()) sub->add_option("--" + o, in.opt[o]);
        sub->add_flag("--json", in.json_out, "JSON report");
        sub->add_flag("--jsonl", in.jsonl, "flow: one JSON line per accepted step");
        sub->add_flag("--exact", in.exact, "flow: compare with the closed-form family flow");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    Report r;
    r.command = app.get_subcommands().front()->get_name();
    int code = 2;
    try {
        merge_spec_file(in);
        const std::string& c = r.command;
        if (c == "validate-family") code = cmd_validate_family(in, r);
        else if (c == "first-integral") code = cmd_first_integral(in, r);
        else if (c == "second-integral") code = cmd_second_integral(in, r);
        else if (c == "darboux") code = cmd_darboux(in, r);
        else if (c == "rational-integral") code = cmd_rational_integral(in, r);
        else if (c == "uv-form") code = cmd_uv_form(in, r);
        else if (c == "eta") code = cmd_eta(in, r);
        else if (c == "time-form") code = cmd_time_form(in, r);
        else if (c == "decompose") code = cmd_decompose(in, r);
        else if (c == "flow") code = cmd_flow(in, r, out);
        else code = cmd_probe(in, r);
        if (c == "flow" && in.jsonl) return code;
    } catch (const FamilyError& e) {
        r.error = std::string("invalid family (") + e.condition() + "): " + e.what();
    } catch (const ParseError& e) {
        r.error = std::string("parse error: ") + e.what();
    } catch (const std::invalid_argument& e) {
        r.error = e.what();
    } catch (const InputError& e) {
        r.error = e.what();
    } catch (const std::logic_error& e) {
        r.error = std::string("internal check failed: ") + e.what();
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    if (r.error) {
        code = 2;
        err << "error: " << *r.error << "\n";
    }
    out << (in.json_out ? r.to_json().dump(2) + "\n" : r.to_text());
    return code;
}

}  // namespace campo::cli

#endif  // CAMPO_TOOLS_CLI_HPP
