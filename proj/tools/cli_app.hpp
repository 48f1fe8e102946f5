#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <coulomb/coulomb.hpp>

namespace coulomb::cli {

using json = nlohmann::json;

enum Exit : int { ok = 0, violation = 1, data_error = 2, inconclusive = 3, usage = 64 };

// Thrown for malformed input files; reported like a domain error.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decimal or "p/q"; nullopt when the text is not a finite number.
inline std::optional<double> parse_real(const std::string& s) {
    auto whole = [](const std::string& t) -> std::optional<double> {
        if (t.empty()) return std::nullopt;
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return whole(s);
    auto p = whole(s.substr(0, slash)), q = whole(s.substr(slash + 1));
    if (!p || !q || *q == 0.0) return std::nullopt;
    return *p / *q;
}

inline const CLI::Validator Real(
    [](std::string& s) { return parse_real(s) ? std::string() : "not a real number or p/q: " + s; }, "REAL");

inline double real_of(const std::string& s) { return *parse_real(s); }

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Non-finite values have no JSON literal; they are written as strings.
inline json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

struct Record {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    std::vector<long> terms;
    std::vector<double> errs;
    std::vector<std::string> warnings;

    json to_json() const {
        json e = json::array();
        for (double v : errs) e.push_back(num(v));
        return {{"schema_version", "1"},
                {"command", command},
                {"inputs", inputs},
                {"results", results},
                {"diagnostics", {{"terms_used", terms}, {"err_bounds", e}, {"warnings", warnings}}}};
    }
};

inline void domain_warning(Record& r) {
    double m = certified_max_x();
    if (m > default_max_x)
        r.warnings.push_back("COULOMB_MAX_X=" + g17(m) + " extends evaluation beyond the certified |x| <= 50");
}

inline verify::Grid grid_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open grid file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("grid file is not valid JSON: ") + e.what());
    }
    auto reals = [&](const char* key) {
        if (!j.is_object() || !j.contains(key) || !j[key].is_array() || j[key].empty())
            throw DataError(std::string("grid file needs a non-empty array '") + key + "'");
        std::vector<double> v;
        for (const auto& x : j[key]) {
            if (!x.is_number() || !std::isfinite(x.get<double>()))
                throw DataError(std::string("grid '") + key + "' holds a non-number");
            v.push_back(x.get<double>());
        }
        return v;
    };
    verify::Grid g;
    g.ell = reals("ell");
    g.eta = reals("eta");
    if (j.contains("x")) {
        const auto& x = j["x"];
        try {
            g.x.min = x.at("min").get<double>();
            g.x.max = x.at("max").get<double>();
            g.x.points = x.at("points").get<int>();
            std::string sp = x.value("spacing", std::string("log"));
            if (sp != "log" && sp != "lin") throw DataError("grid spacing must be log or lin");
            g.x.log = sp == "log";
        } catch (const json::exception& e) {
            throw DataError(std::string("grid 'x' malformed: ") + e.what());
        }
        if (!(g.x.min < g.x.max) || g.x.points < 2 || (g.x.log && !(g.x.min > 0.0)))
            throw DataError("grid 'x' range is invalid");
        if (g.x.max > certified_max_x()) throw DataError("grid 'x' max beyond the evaluation domain");
    }
    return g;
}

inline json report_json(const CheckReport& r) {
    return {{"claim_id", r.claim_id},
            {"verdict", to_string(r.verdict)},
            {"passed", r.passed},
            {"strict", r.strict},
            {"tolerance", num(r.tolerance)},
            {"worst_margin", num(r.worst_margin)},
            {"worst_err", num(r.worst_err)},
            {"worst_point", {{"ell", num(r.worst_point.ell)}, {"eta", num(r.worst_point.eta)}, {"x", num(r.worst_point.x)}}},
            {"points", r.points},
            {"grid_spec", r.grid_spec},
            {"note", r.note}};
}

struct Options {
    std::string format = "json";
    // eval, zeros, poly
    std::string ell, eta, x, H;
    std::string function = "F";
    int count = 0;
    std::string sign = "pos";
    std::string target = "varphi";
    int n = 0;
    bool use_explicit = false;
    // trace
    std::string axis, from, to;
    int steps = 0, k = 1;
    // verify
    std::string suite = "all";
    std::string grid = "default";
};

inline int cmd_eval(const Options& o, Record& r, std::ostream& out) {
    CoulombParams p(real_of(o.ell), real_of(o.eta));
    double x = real_of(o.x);
    r.inputs = {{"ell", p.ell()}, {"eta", p.eta()}, {"x", x}, {"function", o.function}};
    EvalResult v;
    if (o.function == "phi") v = phi_eval(p, x);
    else if (o.function == "varphi") v = varphi_eval(p, x);
    else if (o.function == "F") v = F_eval(p, x);
    else v = F_derivative(p, x);
    r.results = {{"value", num(v.value)}, {"abs_err_bound", num(v.abs_err_bound)},
                 {"scaled_surrogate", v.scaled_surrogate}};
    r.terms.push_back(v.terms_used);
    r.errs.push_back(v.abs_err_bound);
    if (v.scaled_surrogate) r.warnings.push_back("odd half-integer ell at eta = 0: x^n varphi_{(n-1)/2} returned");
    if (o.format == "csv")
        out << "function,value,abs_err_bound\n" << o.function << ',' << g17(v.value) << ',' << g17(v.abs_err_bound) << '\n';
    return ok;
}

inline int cmd_zeros(const Options& o, Record& r, std::ostream& out, std::ostream& err) {
    CoulombParams p(real_of(o.ell), real_of(o.eta));
    Target t = Target::varphi();
    double H = o.H.empty() ? 0.0 : real_of(o.H);
    if (o.target == "fprime") t = Target::f_prime();
    else if (o.target == "dini") t = Target::dini(H);
    r.inputs = {{"ell", p.ell()}, {"eta", p.eta()}, {"count", o.count}, {"sign", o.sign}, {"target", o.target}};
    if (o.target == "dini") r.inputs["H"] = H;
    auto zs = o.sign == "neg" ? negative_zeros(p, t, o.count) : positive_zeros(p, t, o.count);
    json z = json::array(), res = json::array();
    std::vector<double> resid;
    for (double v : zs.zeros) {
        auto tv = target_value(p, t, v);
        resid.push_back(std::fabs(tv.value));
        z.push_back(v);
        res.push_back(num(resid.back()));
        r.errs.push_back(tv.err);
    }
    r.results = {{"zeros", z}, {"residuals", res}, {"truncated", zs.truncated}, {"tol", zs.tol}};
    if (o.format == "csv") {
        out << "index,zero,residual\n";
        for (size_t i = 0; i < zs.zeros.size(); ++i)
            out << i + 1 << ',' << g17(zs.zeros[i]) << ',' << g17(resid[i]) << '\n';
    }
    if (zs.truncated) {
        std::string msg = "only " + std::to_string(zs.zeros.size()) + " of " + std::to_string(o.count) +
                          " zeros lie within |x| <= " + g17(certified_max_x());
        r.warnings.push_back(msg);
        err << "convergence_error: " << msg << '\n';
        return data_error;
    }
    return ok;
}

inline int cmd_trace(const Options& o, Record& r, std::ostream& out) {
    Axis axis = o.axis == "ell" ? Axis::ell : Axis::eta;
    double a = real_of(o.from), b = real_of(o.to);
    const std::string& fixed = axis == Axis::ell ? o.eta : o.ell;
    if (fixed.empty()) throw CLI::RequiredError(axis == Axis::ell ? "--eta" : "--ell");
    double f = real_of(fixed);
    CoulombParams p0 = axis == Axis::ell ? CoulombParams(a, f) : CoulombParams(f, a);
    r.inputs = {{"axis", o.axis}, {"from", a}, {"to", b}, {"steps", o.steps}, {"k", o.k},
                {axis == Axis::ell ? "eta" : "ell", f}};
    auto tr = trace_zero(p0, axis, a, b, o.steps, o.k);
    r.results = {{"axis_value", tr.grid},
                 {"zero_value", tr.values},
                 {"continuity_ok", tr.step_ok},
                 {"all_continuous", tr.continuity_ok},
                 {"monotone_increasing", tr.monotone_increasing},
                 {"min_forward_diff", num(tr.min_forward_diff)}};
    if (!tr.continuity_ok) r.warnings.push_back("a step exceeded the continuity bound");
    if (o.format == "csv") {
        out << "axis_value,zero_value,continuity_ok\n";
        for (size_t i = 0; i < tr.values.size(); ++i)
            out << g17(tr.grid[i]) << ',' << g17(tr.values[i]) << ',' << (tr.step_ok[i] ? "true" : "false") << '\n';
    }
    return ok;
}

inline int cmd_poly(const Options& o, Record& r, std::ostream& out) {
    CoulombParams p(real_of(o.ell), real_of(o.eta));
    r.inputs = {{"n", o.n}, {"ell", p.ell()}, {"eta", p.eta()}, {"explicit", o.use_explicit}};
    ortho::MonicPolynomial poly;
    std::vector<double> zeros;
    std::string family = "R";
    if (!o.H.empty()) {
        double H = real_of(o.H);
        r.inputs["H"] = H;
        family = "D";
        poly = ortho::D_poly(p, o.n, H);
        zeros = ortho::poly_zeros_D(p, o.n, H);
    } else {
        poly = o.use_explicit ? ortho::R_explicit(p, o.n) : ortho::R_poly(p, o.n);
        zeros = ortho::poly_zeros_R(p, o.n);
    }
    r.results = {{"family", family},
                 {"degree", poly.degree},
                 {"coefficients", poly.coeffs},
                 {"zeros", zeros},
                 {"provenance", ortho::to_string(poly.provenance)}};
    if (o.format == "csv") {
        out << "kind,index,value\n";
        for (size_t i = 0; i < poly.coeffs.size(); ++i) out << "coefficient," << i << ',' << g17(poly.coeffs[i]) << '\n';
        for (size_t i = 0; i < zeros.size(); ++i) out << "zero," << i + 1 << ',' << g17(zeros[i]) << '\n';
    }
    return ok;
}

inline int cmd_verify(const Options& o, Record& r, std::ostream& out) {
    verify::Grid g = o.grid == "default" ? verify::default_grid() : grid_from_file(o.grid);
    r.inputs = {{"suite", o.suite}, {"grid", o.grid}};
    auto reports = verify::run_suite(o.suite, g);
    json list = json::array();
    int n_pass = 0, n_inc = 0, n_vio = 0;
    for (const auto& rep : reports) {
        list.push_back(report_json(rep));
        r.errs.push_back(rep.worst_err);
        if (rep.verdict == Verdict::pass) ++n_pass;
        else if (rep.verdict == Verdict::inconclusive) ++n_inc;
        else ++n_vio;
    }
    r.results = {{"grid_spec", g.spec()},
                 {"reports", list},
                 {"summary", {{"pass", n_pass}, {"inconclusive", n_inc}, {"violation", n_vio}}}};
    if (o.format == "csv") {
        out << "claim_id,verdict,worst_margin,worst_err,points,ell,eta,x,note\n";
        for (const auto& rep : reports)
            out << rep.claim_id << ',' << to_string(rep.verdict) << ',' << g17(rep.worst_margin) << ','
                << g17(rep.worst_err) << ',' << rep.points << ',' << g17(rep.worst_point.ell) << ','
                << g17(rep.worst_point.eta) << ',' << g17(rep.worst_point.x) << ',' << csv_field(rep.note) << '\n';
    }
    if (n_vio) return violation;
    return n_inc ? inconclusive : ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regular Coulomb wave functions, their zeros and orthogonal polynomials"};
    app.require_subcommand(1);
    Options o;
    auto fmt = [&](CLI::App* s) {
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* ev = app.add_subcommand("eval", "Evaluate phi, varphi, F or F' at one point");
    ev->add_option("--ell", o.ell)->required()->check(Real);
    ev->add_option("--eta", o.eta)->required()->check(Real);
    ev->add_option("--x", o.x)->required()->check(Real);
    ev->add_option("--function", o.function)->check(CLI::IsMember({"phi", "varphi", "F", "Fprime"}));
    fmt(ev);

    auto* ze = app.add_subcommand("zeros", "Real zeros of varphi, F' or x varphi' + H varphi");
    ze->add_option("--ell", o.ell)->required()->check(Real);
    ze->add_option("--eta", o.eta)->required()->check(Real);
    ze->add_option("--count", o.count)->required()->check(CLI::PositiveNumber);
    ze->add_option("--sign", o.sign)->check(CLI::IsMember({"pos", "neg"}));
    ze->add_option("--target", o.target)->check(CLI::IsMember({"varphi", "fprime", "dini"}));
    ze->add_option("--H", o.H)->check(Real);
    fmt(ze);

    auto* trc = app.add_subcommand("trace", "Follow the k-th positive zero along ell or eta");
    trc->add_option("--axis", o.axis)->required()->check(CLI::IsMember({"ell", "eta"}));
    trc->add_option("--from", o.from)->required()->check(Real);
    trc->add_option("--to", o.to)->required()->check(Real);
    trc->add_option("--steps", o.steps)->required()->check(CLI::PositiveNumber);
    trc->add_option("--k", o.k)->check(CLI::PositiveNumber);
    trc->add_option("--ell", o.ell, "Fixed ell for --axis eta")->check(Real);
    trc->add_option("--eta", o.eta, "Fixed eta for --axis ell")->check(Real);
    fmt(trc);

    auto* po = app.add_subcommand("poly", "Coefficients and zeros of R_n, or of D_n with --H");
    po->add_option("--n", o.n)->required()->check(CLI::NonNegativeNumber);
    po->add_option("--ell", o.ell)->required()->check(Real);
    po->add_option("--eta", o.eta)->required()->check(Real);
    po->add_flag("--explicit", o.use_explicit, "Build R_n from its closed form");
    po->add_option("--H", o.H)->check(Real);
    fmt(po);

    auto* ve = app.add_subcommand("verify", "Run a property suite");
    ve->add_option("--suite", o.suite)->check(CLI::IsMember(verify::suite_names()));
    ve->add_option("--grid", o.grid, "default or a JSON grid file");
    fmt(ve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    Record r;
    int code = ok;
    try {
        if (ev->parsed()) r.command = "eval", code = cmd_eval(o, r, out);
        else if (ze->parsed()) r.command = "zeros", code = cmd_zeros(o, r, out, err);
        else if (trc->parsed()) r.command = "trace", code = cmd_trace(o, r, out);
        else if (po->parsed()) r.command = "poly", code = cmd_poly(o, r, out);
        else r.command = "verify", code = cmd_verify(o, r, out);
    } catch (const CLI::Error& e) {
        err << e.what() << '\n';
        return usage;
    } catch (const DataError& e) {
        err << "data_error: " << e.what() << '\n';
        return data_error;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << '\n';
        return data_error;
    }
    domain_warning(r);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    if (o.format == "json") out << r.to_json().dump(2) << '\n';
    return code;
}

}  // namespace coulomb::cli
