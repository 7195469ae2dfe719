#include "polarcalc/cli.hpp"

#include "polarcalc/invariants.hpp"
#include "polarcalc/parser.hpp"
#include "polarcalc/report_io.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>

namespace polarcalc {

namespace {

struct CommonOpts {
    std::string field = "complex";
    std::string depth = "auto";
    long precision_bits = 256;
    long tolerance = 0;  // 10^-k when positive
    long seed = 0;
    std::string format = "text";
    bool emit_diagram = false;
    std::string arc;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_arc) {
    cmd->add_option("--field", o.field, "scalar field: real or complex")
        ->check(CLI::IsMember({"real", "complex"}));
    cmd->add_option("--depth", o.depth, "expansion depth as a rational p/q, or 'auto'");
    cmd->add_option("--precision-bits", o.precision_bits, "working precision in bits")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", o.tolerance,
                    "zero-test tolerance exponent k (tolerance 10^-k)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "seed for generic constants");
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--emit-diagram", o.emit_diagram,
                  "also print the Newton diagram relative to the arc (or x = 0)");
    if (with_arc) cmd->add_option("--arc", o.arc, "arc x = phi(y)");
}

Tower make_tower(const CommonOpts& o) {
    Tower t;
    t.prec = static_cast<mpfr_prec_t>(o.precision_bits);
    t.tol_pow10 = o.tolerance;
    return t;
}

Rat effective_depth(const CommonOpts& o, const BivarPoly&) {
    // 'auto' asks only for a shallow prefix; the expansion deepens by itself
    // whenever branches are still indistinguishable at this depth.  Large
    // explicit depths force long slides, which on branches with irrational
    // coefficients eventually exhaust the numeric tolerance.
    if (o.depth == "auto") return Rat(2);
    return Rat::from_string(o.depth);
}

bool json_format(const CommonOpts& o) { return o.format == "json"; }

ScalarField field_of(const CommonOpts& o) {
    return o.field == "real" ? ScalarField::Real : ScalarField::Complex;
}

std::string maybe_diagram(const CommonOpts& o, const BivarPoly& f, const Tower& tower) {
    if (!o.emit_diagram) return "";
    PuiseuxSeries arc =
        o.arc.empty() ? PuiseuxSeries::zero() : parse_arc(o.arc);
    NewtonDiagram dia = relative_diagram(f, arc, tower);
    return json_format(o) ? render_diagram_json(dia) : render_diagram_text(dia);
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact invariants of plane curve singularities at the origin"};
    app.require_subcommand(1);

    CommonOpts roots_o, polygon_o, quotients_o, loja_o, bounds_o, imult_o, est_o;
    std::string roots_poly, polygon_poly, quotients_poly, loja_poly, bounds_poly;
    std::string imult_f, imult_g, est_poly;
    double t_min = 1e-6, t_max = 1e-3;
    long samples = 64;

    CLI::App* roots = app.add_subcommand("roots", "expand all solution branches x = xi(y)");
    roots->add_option("poly", roots_poly, "bivariate polynomial in x, y")->required();
    add_common(roots, roots_o, false);

    CLI::App* polygon =
        app.add_subcommand("polygon", "Newton polygon relative to an arc (default x = 0)");
    polygon->add_option("poly", polygon_poly, "bivariate polynomial in x, y")->required();
    add_common(polygon, polygon_o, true);

    CLI::App* quotients =
        app.add_subcommand("quotients", "polar quotient set, certified by two routes");
    quotients->add_option("poly", quotients_poly, "bivariate polynomial in x, y")->required();
    add_common(quotients, quotients_o, false);

    CLI::App* loja = app.add_subcommand(
        "lojasiewicz", "gradient Lojasiewicz exponent (complex or real field)");
    loja->add_option("poly", loja_poly, "bivariate polynomial in x, y")->required();
    add_common(loja, loja_o, false);

    CLI::App* bounds =
        app.add_subcommand("bounds", "degree-based a priori bounds on the exponent");
    bounds->add_option("poly", bounds_poly, "bivariate polynomial in x, y")->required();
    add_common(bounds, bounds_o, false);

    CLI::App* imult =
        app.add_subcommand("imult", "intersection multiplicity of two curves at the origin");
    imult->add_option("f", imult_f, "first polynomial")->required();
    imult->add_option("g", imult_g, "second polynomial")->required();
    add_common(imult, imult_o, false);

    CLI::App* est = app.add_subcommand(
        "estimate", "floating-point slope estimate of the gradient exponent along an arc");
    est->add_option("poly", est_poly, "bivariate polynomial in x, y")->required();
    add_common(est, est_o, true);
    est->add_option("--t-min", t_min, "smallest sample parameter");
    est->add_option("--t-max", t_max, "largest sample parameter");
    est->add_option("--samples", samples, "number of log-spaced samples");

    CliResult res;
    std::vector<std::string> argv = args;
    try {
        std::vector<const char*> cargs;
        cargs.push_back("polarcalc");
        for (const std::string& a : argv) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os, er;
        int code = app.exit(e, os, er);
        res.out = os.str();
        res.err = er.str();
        res.exit_code = (code == 0) ? 0 : 2;  // --help exits cleanly; bad usage is a domain error
        return res;
    }

    try {
        if (roots->parsed()) {
            const CommonOpts& o = roots_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(roots_poly);
            auto [f1, shear, m] = mini_regularize(f, o.seed, tower);
            BranchSet bs = expand_roots(f1, effective_depth(o, f1), tower);
            bs.seed = o.seed;
            OutputContext ctx{"roots", serialize_poly(f), field_of(o), o.seed};
            Rat c = shear.value.exact().re;
            res.out = json_format(o) ? render_branch_set_json(bs, c, ctx)
                                     : render_branch_set_text(bs, c, ctx);
            res.out += maybe_diagram(o, f1, tower);
        } else if (polygon->parsed()) {
            const CommonOpts& o = polygon_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(polygon_poly);
            PuiseuxSeries arc = o.arc.empty() ? PuiseuxSeries::zero() : parse_arc(o.arc);
            NewtonDiagram dia = relative_diagram(f, arc, tower);
            res.out = json_format(o) ? render_diagram_json(dia) : render_diagram_text(dia);
        } else if (quotients->parsed()) {
            const CommonOpts& o = quotients_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(quotients_poly);
            auto [f1, shear, m] = mini_regularize(f, o.seed, tower);
            QuotientSet qs = polar_quotients(f1, QuotientRoute::Both, o.seed, tower);
            OutputContext ctx{"quotients", serialize_poly(f), field_of(o), o.seed};
            Rat c = shear.value.exact().re;
            res.out = json_format(o)
                          ? render_quotients_json(qs, c, m, f1.degree(), ctx)
                          : render_quotients_text(qs, c, m, f1.degree(), ctx);
            res.out += maybe_diagram(o, f1, tower);
        } else if (loja->parsed()) {
            const CommonOpts& o = loja_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(loja_poly);
            InvariantReport rep = (field_of(o) == ScalarField::Real)
                                      ? gradient_exponent_real(f, o.seed, tower)
                                      : gradient_exponent_complex(f, o.seed, tower);
            OutputContext ctx{"lojasiewicz", serialize_poly(f), field_of(o), o.seed};
            res.out = json_format(o) ? render_report_json(rep, ctx)
                                     : render_report_text(rep, ctx);
            res.out += maybe_diagram(o, f, tower);
        } else if (bounds->parsed()) {
            const CommonOpts& o = bounds_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(bounds_poly);
            DegreeBounds b = degree_bounds(f, tower);
            OutputContext ctx{"bounds", serialize_poly(f), field_of(o), o.seed};
            res.out = json_format(o) ? render_bounds_json(b, ctx)
                                     : render_bounds_text(b, ctx);
        } else if (imult->parsed()) {
            const CommonOpts& o = imult_o;
            Tower tower = make_tower(o);
            BivarPoly f = parse_poly(imult_f);
            BivarPoly g = parse_poly(imult_g);
            ExtRat v = intersection_multiplicity(f, g, tower);
            OutputContext ctx{"imult", serialize_poly(f) + " ; " + serialize_poly(g),
                              field_of(o), o.seed};
            res.out = json_format(o) ? render_imult_json(v, ctx) : render_imult_text(v, ctx);
        } else if (est->parsed()) {
            const CommonOpts& o = est_o;
            BivarPoly f = parse_poly(est_poly);
            PuiseuxSeries arc = o.arc.empty() ? PuiseuxSeries::zero() : parse_arc(o.arc);
            double v = numeric_exponent_estimate(f, arc, t_min, t_max, samples);
            OutputContext ctx{"estimate", serialize_poly(f), field_of(o), o.seed};
            std::string arc_str = serialize_arc(arc);
            res.out = json_format(o)
                          ? render_estimate_json(v, arc_str, t_min, t_max, samples, ctx)
                          : render_estimate_text(v, arc_str, ctx);
        }
        res.exit_code = 0;
    } catch (const DomainError& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const CertificationError& e) {
        res.err = std::string("certification error: ") + e.what() + "\n";
        res.exit_code = 3;
    } catch (const std::exception& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.exit_code = 4;
    }
    return res;
}

}  // namespace polarcalc
