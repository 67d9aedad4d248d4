#include "catenoid/cli.hpp"

#include <complex>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catenoid/bimodule.hpp"
#include "catenoid/errors.hpp"
#include "catenoid/geometry.hpp"
#include "catenoid/integration.hpp"
#include "catenoid/parser.hpp"

namespace catenoid {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json quadrature_json(const QuadratureResult& r) {
    return json{{"value", complex_json(r.value)},
                {"error_estimate", r.error_estimate},
                {"halfwidth", r.halfwidth},
                {"tail_substituted", r.tail_substituted}};
}

// Shared emitter: text mode prints the given lines, structured mode prints
// one JSON document per invocation.
struct Report {
    bool structured = false;
    std::ostream& out;
    json doc;
    std::vector<std::string> lines;

    Report(bool s, std::ostream& o, const std::string& command) : structured(s), out(o) {
        doc["schema"] = kSchemaVersion;
        doc["command"] = command;
        doc["inputs"] = json::object();
    }

    void input(const std::string& key, const json& v) { doc["inputs"][key] = v; }
    void line(const std::string& s) { lines.push_back(s); }

    void emit() {
        if (structured) {
            out << doc.dump(2) << "\n";
        } else {
            for (const auto& l : lines) out << l << "\n";
        }
    }
};

std::string format_complex(std::complex<double> z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() > 0 ? " + " : " - ") << std::abs(z.imag()) << "i";
    return os.str();
}

std::string format_small(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

LocalElement parse_local(const std::string& text) { return eval_local(*parse_expr(text)); }

// Prints a polynomial element in the normal-form basis when possible;
// otherwise in the localized Sum a_k W^k form.
std::string canonical(const LocalElement& a) {
    if (is_polynomial(a)) return to_alg(a).to_string();
    return a.to_string();
}

Metric metric_from_option(const std::string& name) {
    if (name == "induced") return induced_metric();
    if (name == "conformal-catenoid") return conformal_catenoid_metric();
    LocalElement s = parse_local(name);
    loc_inv(s);  // demand invertibility up front
    return conformal_metric(s);
}

DerivationLabel derivation_from_name(const std::string& name) {
    if (name == "du") return DerivationLabel::du;
    if (name == "dv") return DerivationLabel::dv;
    if (name == "d") return DerivationLabel::d;
    if (name == "dbar") return DerivationLabel::dbar;
    throw Error(errc::domain_error, "unknown derivation '" + name + "'");
}

struct GridSpec {
    double min = 0, max = 0, step = 1;
    bool present = false;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (text.empty()) return g;
    std::istringstream is(text);
    char c1 = 0, c2 = 0;
    if (!(is >> g.min >> c1 >> g.max >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
        g.step <= 0 || g.max < g.min)
        throw Error(errc::domain_error, "grid must be min:max:step with step > 0");
    g.present = true;
    return g;
}

void emit_component(Report& rep, const std::string& name, const LocalElement& value,
                    const GridSpec& grid, double hbar) {
    rep.line(name + " = " + canonical(value));
    json entry;
    entry["expr"] = canonical(value);
    if (grid.present) {
        json evals = json::array();
        for (double u = grid.min; u <= grid.max + 1e-12; u += grid.step) {
            std::complex<double> v = value.is_zero()
                                         ? std::complex<double>(0, 0)
                                         : value.component(0).phi(u, hbar);
            evals.push_back({{"u", u}, {"value", complex_json(v)}});
            std::ostringstream os;
            os.precision(10);
            os << "  phi(" << name << ")(" << u << ") = " << format_complex(v);
            rep.line(os.str());
        }
        entry["phi"] = evals;
    }
    rep.doc["result"][name] = entry;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"catenoid: exact symbolic engine for the noncommutative catenoid algebra"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    std::string expr_a, expr_b, derivation = "du", metric_name = "induced";
    std::string grid_text;
    double hbar_value = 0.0, tol = 1e-9, max_halfwidth = 160.0, u_point = 0.0;

    auto add_quad_flags = [&](CLI::App* cmd) {
        cmd->add_option("--hbar", hbar_value, "numeric value substituted for hbar");
        cmd->add_option("--tol", tol, "absolute quadrature tolerance");
        cmd->add_option("--max-halfwidth", max_halfwidth, "largest integration halfwidth");
    };

    CLI::App* cmd_normalize = app.add_subcommand("normalize", "normal form of an expression");
    cmd_normalize->add_option("expr", expr_a, "expression")->required();

    CLI::App* cmd_mul = app.add_subcommand("mul", "product of two expressions");
    cmd_mul->add_option("lhs", expr_a)->required();
    cmd_mul->add_option("rhs", expr_b)->required();

    CLI::App* cmd_star = app.add_subcommand("star", "the *-involution");
    cmd_star->add_option("expr", expr_a)->required();

    CLI::App* cmd_derive = app.add_subcommand("derive", "apply a derivation");
    cmd_derive->add_option("--op", derivation, "one of du, dv, d, dbar")
        ->required()
        ->check(CLI::IsMember({"du", "dv", "d", "dbar"}));
    cmd_derive->add_option("expr", expr_a)->required();

    CLI::App* cmd_diamond =
        app.add_subcommand("diamond-check", "certify the reduction system's ambiguities");

    CLI::App* cmd_curv = app.add_subcommand("curvature-report", "all curvature components");
    cmd_curv->add_option("--metric", metric_name,
                         "induced | conformal-catenoid | conformal metric expression");
    cmd_curv->add_option("--grid", grid_text, "phi-evaluation grid min:max:step");
    cmd_curv->add_option("--hbar", hbar_value, "hbar for grid evaluation");

    CLI::App* cmd_harmonic =
        app.add_subcommand("harmonic-check", "Laplacian of the embedding coordinates");
    cmd_harmonic->add_option("--metric", metric_name);

    CLI::App* cmd_lap = app.add_subcommand("laplacian", "Laplacian of an element");
    cmd_lap->add_option("--metric", metric_name);
    cmd_lap->add_option("expr", expr_a)->required();

    CLI::App* cmd_integrate = app.add_subcommand("integrate", "tau_0 or tau_h integral");
    std::string tau_kind = "tau0";
    cmd_integrate->add_option("kind", tau_kind)
        ->required()
        ->check(CLI::IsMember({"tau0", "tauh"}));
    cmd_integrate->add_option("expr", expr_a)->required();
    cmd_integrate->add_option("--metric", metric_name, "metric for tauh");
    add_quad_flags(cmd_integrate);

    CLI::App* cmd_total = app.add_subcommand("total-curvature", "tau_h of the Gaussian curvature");
    cmd_total->add_option("--metric", metric_name);
    add_quad_flags(cmd_total);

    CLI::App* cmd_bimod = app.add_subcommand("bimodule-verify",
                                             "check the bimodule structure and connection");
    double bim_hbar = 1.0, bim_hbarp = 2.0, bim_eps = 1.0;
    int bim_r = 1, bim_rp = 2;
    bool alt_sign = false;
    std::vector<double> explicit_left, explicit_right;
    cmd_bimod->add_option("--hbar", bim_hbar);
    cmd_bimod->add_option("--hbarp", bim_hbarp);
    cmd_bimod->add_option("--eps", bim_eps);
    cmd_bimod->add_option("--r", bim_r);
    cmd_bimod->add_option("--rp", bim_rp);
    cmd_bimod->add_flag("--alt-right-sign", alt_sign,
                        "solve the right constraint with -hbar' (expected to fail)");
    cmd_bimod->add_option("--left", explicit_left,
                          "explicit lambda0 lambda1 eps r (overrides the solver)")
        ->expected(4);
    cmd_bimod->add_option("--right", explicit_right, "explicit mu0 mu1 eps' r'")->expected(4);

    CLI::App* cmd_phi = app.add_subcommand("phi-eval", "evaluate phi at a point");
    cmd_phi->add_option("--u", u_point, "evaluation point")->required();
    cmd_phi->add_option("--hbar", hbar_value);
    cmd_phi->add_option("expr", expr_a)->required();

    // Global flags may appear after the subcommand as well.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("catenoid");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool structured = format == "structured";
    QuadratureConfig cfg;
    cfg.abs_tol = tol;
    cfg.max_halfwidth = max_halfwidth;

    if (app.got_subcommand(cmd_normalize)) {
        Report rep(structured, out, "normalize");
        rep.input("expr", expr_a);
        AlgElement nf = from_free_normal(normalize(eval_free(*parse_expr(expr_a))));
        rep.line(nf.to_string());
        rep.doc["result"] = nf.to_string();
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_mul)) {
        Report rep(structured, out, "mul");
        rep.input("lhs", expr_a);
        rep.input("rhs", expr_b);
        LocalElement r = loc_mul(parse_local(expr_a), parse_local(expr_b));
        rep.line(canonical(r));
        rep.doc["result"] = canonical(r);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_star)) {
        Report rep(structured, out, "star");
        rep.input("expr", expr_a);
        LocalElement r = loc_star(parse_local(expr_a));
        rep.line(canonical(r));
        rep.doc["result"] = canonical(r);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_derive)) {
        Report rep(structured, out, "derive");
        rep.input("expr", expr_a);
        rep.input("op", derivation);
        LocalElement r = loc_derive(derivation_from_name(derivation), parse_local(expr_a));
        rep.line(canonical(r));
        rep.doc["result"] = canonical(r);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_diamond)) {
        Report rep(structured, out, "diamond-check");
        AmbiguityReport report = check_all_ambiguities();
        json rows = json::array();
        for (const auto& amb : report.overlaps) {
            std::string left = amb.left_normal_form.to_string();
            std::string right = amb.right_normal_form.to_string();
            rep.line(word_str(amb.overlap) + ":  " + left + "  ==  " + right + "  [" +
                     (amb.resolvable ? "resolvable" : "NOT RESOLVABLE") + "]");
            rows.push_back({{"overlap", word_str(amb.overlap)},
                            {"left", left},
                            {"right", right},
                            {"resolvable", amb.resolvable}});
        }
        rep.line("ambiguities: " + std::to_string(report.overlaps.size()) +
                 (report.all_resolvable ? ", all resolvable" : ", UNRESOLVED AMBIGUITIES"));
        rep.doc["result"] = {{"count", report.overlaps.size()},
                             {"all_resolvable", report.all_resolvable},
                             {"overlaps", rows}};
        rep.emit();
        return report.all_resolvable ? 0 : 1;
    }
    if (app.got_subcommand(cmd_curv)) {
        Report rep(structured, out, "curvature-report");
        rep.input("metric", metric_name);
        GridSpec grid = parse_grid(grid_text);
        Metric m = metric_from_option(metric_name);
        CurvatureReport cr = curvature_report(m);
        rep.doc["result"] = json::object();
        emit_component(rep, "R^1_112", cr.r1_112, grid, hbar_value);
        emit_component(rep, "R^2_212", cr.r2_212, grid, hbar_value);
        emit_component(rep, "R_1212", cr.r_1212, grid, hbar_value);
        emit_component(rep, "R_2112", cr.r_2112, grid, hbar_value);
        emit_component(rep, "Ric_12", cr.ric_12, grid, hbar_value);
        emit_component(rep, "Ric_21", cr.ric_21, grid, hbar_value);
        emit_component(rep, "scalar", cr.scalar, grid, hbar_value);
        if (cr.gaussian) emit_component(rep, "gaussian", *cr.gaussian, grid, hbar_value);
        rep.line("identically zero: R^1_212, R^2_112, R_1112, R_2212, Ric_11, Ric_22");
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_harmonic)) {
        Report rep(structured, out, "harmonic-check");
        rep.input("metric", metric_name);
        Metric m = metric_from_option(metric_name);
        EmbeddingTriple coords = embedding_coords();
        json rows = json::array();
        bool all = true;
        int i = 1;
        for (const LocalElement* x : coords.components()) {
            LocalElement lap = laplacian(m, *x);
            bool zero = lap.is_zero();
            all = all && zero;
            rep.line("Delta(X^" + std::to_string(i) + ") = 0: " + (zero ? "PASS" : "FAIL"));
            rows.push_back({{"coordinate", i}, {"harmonic", zero}});
            ++i;
        }
        rep.doc["result"] = {{"harmonic", all}, {"coordinates", rows}};
        rep.emit();
        return all ? 0 : 1;
    }
    if (app.got_subcommand(cmd_lap)) {
        Report rep(structured, out, "laplacian");
        rep.input("expr", expr_a);
        rep.input("metric", metric_name);
        Metric m = metric_from_option(metric_name);
        LocalElement r = laplacian(m, parse_local(expr_a));
        rep.line(canonical(r));
        rep.doc["result"] = canonical(r);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_integrate)) {
        Report rep(structured, out, tau_kind == "tau0" ? "integrate tau0" : "integrate tauh");
        rep.input("expr", expr_a);
        rep.input("hbar", hbar_value);
        LocalElement a = parse_local(expr_a);
        QuadratureResult res;
        if (tau_kind == "tau0") {
            res = tau0(a, hbar_value, cfg);
        } else {
            rep.input("metric", metric_name);
            Metric m = metric_from_option(metric_name);
            res = tau_h(a, m.S, hbar_value, cfg);
        }
        rep.line("value = " + format_complex(res.value));
        rep.line("error estimate = " + format_small(res.error_estimate) +
                 ", halfwidth = " + std::to_string(res.halfwidth));
        rep.doc["result"] = complex_json(res.value);
        rep.doc["quadrature"] = quadrature_json(res);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_total)) {
        Report rep(structured, out, "total-curvature");
        rep.input("metric", metric_name);
        rep.input("hbar", hbar_value);
        Metric m = metric_from_option(metric_name);
        CurvatureReport cr = curvature_report(m);
        if (!cr.gaussian)
            throw Error(errc::domain_error, "total curvature needs a conformal metric");
        QuadratureResult res = tau_h(*cr.gaussian, m.S, hbar_value, cfg);
        if (std::abs(res.value.imag()) >= cfg.abs_tol)
            throw Error(errc::non_integrable, "total curvature has a non-real value");
        std::ostringstream os;
        os.precision(12);
        os << res.value.real();
        rep.line("total curvature = " + os.str());
        rep.doc["result"] = res.value.real();
        rep.doc["quadrature"] = quadrature_json(res);
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_bimod)) {
        Report rep(structured, out, "bimodule-verify");
        BimoduleParams params;
        if (!explicit_left.empty() || !explicit_right.empty()) {
            if (explicit_left.size() != 4 || explicit_right.size() != 4)
                throw Error(errc::degenerate_params,
                            "--left and --right must both be given with 4 values each");
            params.left = LeftParams::make(explicit_left[0], explicit_left[1],
                                           explicit_left[2],
                                           static_cast<int>(explicit_left[3]), bim_hbar);
            params.right = RightParams::make(explicit_right[0], explicit_right[1],
                                             explicit_right[2],
                                             static_cast<int>(explicit_right[3]), bim_hbarp);
        } else {
            params = solve_connection_params(bim_hbar, bim_hbarp, bim_eps, bim_r, bim_rp,
                                             alt_sign);
        }
        rep.input("hbar", bim_hbar);
        rep.input("hbarp", bim_hbarp);
        rep.doc["inputs"]["params"] = {
            {"lambda0", params.left.lambda0}, {"lambda1", params.left.lambda1},
            {"eps", params.left.eps},         {"r", params.left.r},
            {"mu0", params.right.mu0},        {"mu1", params.right.mu1},
            {"epsp", params.right.epsp},      {"rp", params.right.rp}};

        ResidualReport residuals = verify_structure(params, standard_test_functions());
        json rows = json::array();
        for (const auto& row : residuals.rows) {
            std::ostringstream os;
            os.precision(3);
            os << std::scientific << row.residual;
            rep.line(row.identity + ": residual " + os.str());
            rows.push_back({{"identity", row.identity}, {"residual", row.residual}});
        }
        std::complex<double> predicted(0, (bim_hbar - bim_hbarp) / (bim_hbar * bim_hbarp));
        MeasuredCurvature measured =
            measure_curvature(params, standard_test_functions()[1]);
        rep.line("max residual = " + format_small(residuals.max_residual));
        rep.line("measured curvature = " + format_complex(measured.value) +
                 " (max deviation " + format_small(measured.max_deviation) + ")");
        rep.line("predicted curvature i(h-h')/(h h') = " + format_complex(predicted));
        rep.doc["residuals"] = rows;
        rep.doc["result"] = {{"max_residual", residuals.max_residual},
                             {"measured_curvature", complex_json(measured.value)},
                             {"measured_deviation", measured.max_deviation},
                             {"predicted_curvature", complex_json(predicted)}};
        rep.emit();
        return 0;
    }
    if (app.got_subcommand(cmd_phi)) {
        Report rep(structured, out, "phi-eval");
        rep.input("expr", expr_a);
        rep.input("u", u_point);
        rep.input("hbar", hbar_value);
        LocalElement a = parse_local(expr_a);
        for (const auto& [k, f] : a.terms())
            if (k != 0)
                throw Error(errc::domain_error,
                            "phi is defined on W-degree-zero elements only");
        std::complex<double> v =
            a.is_zero() ? std::complex<double>(0, 0) : a.component(0).phi(u_point, hbar_value);
        rep.line(format_complex(v));
        rep.doc["result"] = complex_json(v);
        rep.emit();
        return 0;
    }
    err << "no subcommand selected\n";
    return 2;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace catenoid
