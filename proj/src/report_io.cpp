#include "polarcalc/report_io.hpp"

#include "polarcalc/parser.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace polarcalc {

namespace {

using nlohmann::json;

std::string field_name(ScalarField f) {
    return f == ScalarField::Real ? "real" : "complex";
}

std::string route_name(QuotientRoute r) {
    switch (r) {
        case QuotientRoute::PolarBranches: return "polar-branches";
        case QuotientRoute::Approximations: return "approximations";
        case QuotientRoute::Both: return "both";
    }
    return "both";
}

json coeff_json(const Coefficient& c) {
    if (c.is_exact())
        return json::array({c.exact().re.str(), c.exact().im.str()});
    return json::array({c.approx().str_re(20), c.approx().str_im(20)});
}

json header_json(const OutputContext& ctx) {
    json j;
    j["schema"] = 1;
    j["command"] = ctx.command;
    j["input"] = ctx.input;
    j["field"] = field_name(ctx.field);
    j["seed"] = ctx.seed;
    return j;
}

json quotient_array(const QuotientSet& qs) {
    json arr = json::array();
    for (const Rat& v : qs.values) {
        json q;
        q["value"] = v.str();
        const QuotientWitness& w = qs.witnesses.at(v);
        if (w.branch)
            q["witness"] = serialize_arc(w.branch->series);
        else if (w.pair)
            q["witness"] = "pair(" + std::to_string(w.pair->first) + ", " +
                           std::to_string(w.pair->second) + ")";
        else
            q["witness"] = nullptr;
        arr.push_back(std::move(q));
    }
    return arr;
}

json bounds_json(const Rat& gradient, const Rat& classical, const Rat& via_l) {
    json b;
    b["gradient"] = gradient.str();
    b["classical"] = classical.str();
    b["classical_via_L"] = via_l.str();
    return b;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string branch_source_name(BranchSource s) {
    switch (s) {
        case BranchSource::RootOfF: return "root";
        case BranchSource::Polar: return "polar";
        case BranchSource::RealPolar: return "real-polar";
        case BranchSource::Approximation: return "approximation";
    }
    return "root";
}

std::string render_report_json(const InvariantReport& rep, const OutputContext& ctx) {
    json j = header_json(ctx);
    j["shear"] = rep.shear.str();
    j["m"] = rep.m;
    j["d"] = rep.d;
    j["quotients"] = quotient_array(rep.quotients);
    j["quotient_route"] = route_name(rep.quotients.route);
    j["L"] = rep.L.str();
    j["L_plus"] = rep.L_plus ? json(rep.L_plus->str()) : json(nullptr);
    j["L_minus"] = rep.L_minus ? json(rep.L_minus->str()) : json(nullptr);
    j["witness"] = serialize_arc(rep.witness.series);
    j["witness_source"] = branch_source_name(rep.witness.source);
    j["bounds"] = bounds_json(rep.bound_gradient, rep.bound_classical,
                              rep.bound_classical_via_L);
    j["certificates"] = rep.certificates;
    return dump(j);
}

std::string render_report_text(const InvariantReport& rep, const OutputContext& ctx) {
    std::ostringstream os;
    os << "gradient Lojasiewicz exponent (" << field_name(rep.field) << ")\n";
    os << "input: " << ctx.input << "\n";
    os << "order m = " << rep.m << ", degree d = " << rep.d << ", shear c = "
       << rep.shear.str() << ", seed = " << rep.seed << "\n";
    os << "L = " << rep.L.str() << "\n";
    if (rep.L_plus) os << "L+ = " << rep.L_plus->str() << "\n";
    if (rep.L_minus) os << "L- = " << rep.L_minus->str() << "\n";
    os << "witness (" << branch_source_name(rep.witness.source)
       << "): " << serialize_arc(rep.witness.series) << "\n";
    os << "polar quotients:";
    if (rep.quotients.values.empty()) {
        os << " (none)\n";
    } else {
        for (const Rat& v : rep.quotients.values) os << " " << v.str();
        os << "\n";
        for (const Rat& v : rep.quotients.values) {
            const QuotientWitness& w = rep.quotients.witnesses.at(v);
            os << "  quotient " << v.str() << ":";
            if (w.branch) os << " branch " << serialize_arc(w.branch->series);
            if (w.pair)
                os << " pair(" << w.pair->first << ", " << w.pair->second << ")";
            os << "\n";
        }
    }
    os << "bounds: L <= " << rep.bound_gradient.str() << ", 1/(1-L) = "
       << rep.bound_classical_via_L.str() << " <= " << rep.bound_classical.str() << "\n";
    for (const std::string& c : rep.certificates) os << "certificate: " << c << "\n";
    return os.str();
}

std::string render_branch_set_json(const BranchSet& bs, const Rat& shear,
                                   const OutputContext& ctx) {
    json j = header_json(ctx);
    j["shear"] = shear.str();
    j["m"] = bs.regularity.m;
    json arr = json::array();
    for (const Branch& b : bs.branches) {
        json e;
        e["arc"] = serialize_arc(b.series);
        e["multiplicity"] = b.multiplicity;
        e["source"] = branch_source_name(b.source);
        arr.push_back(std::move(e));
    }
    j["branches"] = std::move(arr);
    json cm = json::array();
    for (const auto& row : bs.contact) {
        json r = json::array();
        for (const ExtRat& c : row) r.push_back(c.str());
        cm.push_back(std::move(r));
    }
    j["contact"] = std::move(cm);
    return dump(j);
}

std::string render_branch_set_text(const BranchSet& bs, const Rat& shear,
                                   const OutputContext& ctx) {
    std::ostringstream os;
    os << "branches of " << ctx.input << "\n";
    os << "order m = " << bs.regularity.m << ", shear c = " << shear.str() << "\n";
    os << bs.branches.size() << " branch(es):\n";
    for (std::size_t i = 0; i < bs.branches.size(); ++i) {
        const Branch& b = bs.branches[i];
        os << "  [" << i << "] " << serialize_arc(b.series) << "  (multiplicity "
           << b.multiplicity << ", " << branch_source_name(b.source) << ")\n";
    }
    if (!bs.contact.empty()) {
        os << "contact orders:\n";
        for (std::size_t i = 0; i < bs.contact.size(); ++i) {
            os << " ";
            for (std::size_t k = 0; k < bs.contact[i].size(); ++k)
                os << " " << bs.contact[i][k].str();
            os << "\n";
        }
    }
    return os.str();
}

std::string render_quotients_json(const QuotientSet& qs, const Rat& shear, long m, long d,
                                  const OutputContext& ctx) {
    json j = header_json(ctx);
    j["shear"] = shear.str();
    j["m"] = m;
    j["d"] = d;
    j["quotients"] = quotient_array(qs);
    j["quotient_route"] = route_name(qs.route);
    return dump(j);
}

std::string render_quotients_text(const QuotientSet& qs, const Rat& shear, long m, long d,
                                  const OutputContext& ctx) {
    std::ostringstream os;
    os << "polar quotients of " << ctx.input << "\n";
    os << "order m = " << m << ", degree d = " << d << ", shear c = " << shear.str()
       << ", route = " << route_name(qs.route) << "\n";
    if (qs.values.empty()) {
        os << "quotient set: (empty)\n";
        return os.str();
    }
    os << "quotient set:";
    for (const Rat& v : qs.values) os << " " << v.str();
    os << "\n";
    for (const Rat& v : qs.values) {
        const QuotientWitness& w = qs.witnesses.at(v);
        os << "  quotient " << v.str() << ":";
        if (w.branch) os << " branch " << serialize_arc(w.branch->series);
        if (w.pair) os << " pair(" << w.pair->first << ", " << w.pair->second << ")";
        os << "\n";
    }
    return os.str();
}

std::string render_diagram_json(const NewtonDiagram& dia) {
    json j;
    json dots = json::array();
    for (const NewtonDot& d : dia.dots)
        dots.push_back(json::array({d.i, d.h.str()}));
    j["dots"] = std::move(dots);
    json edges = json::array();
    for (const NewtonEdge& e : dia.edges) {
        json ej;
        ej["tan_theta"] = e.tan_theta.str();
        json poly = json::array();
        for (const Coefficient& c : e.edge_poly) poly.push_back(coeff_json(c));
        ej["poly"] = std::move(poly);
        edges.push_back(std::move(ej));
    }
    j["edges"] = std::move(edges);
    j["h0"] = dia.h0.str();
    j["h1"] = dia.h1.str();
    j["tolerance_used"] = dia.tolerance_used;
    return dump(j);
}

std::string render_diagram_text(const NewtonDiagram& dia) {
    std::ostringstream os;
    os << "dots:";
    for (const NewtonDot& d : dia.dots) os << " (" << d.i << ", " << d.h.str() << ")";
    os << "\n";
    os << "edges:\n";
    for (const NewtonEdge& e : dia.edges) {
        os << "  tan(theta) = " << e.tan_theta.str() << ", from (" << e.right.i << ", "
           << e.right.h.str() << ") to (" << e.left.i << ", " << e.left.h.str()
           << "), edge polynomial ";
        bool first = true;
        for (std::size_t k = 0; k < e.edge_poly.size(); ++k) {
            const Coefficient& c = e.edge_poly[k];
            if (c.is_structural_zero()) continue;
            if (!first) os << " + ";
            std::string cs = serialize_coeff(c);
            if (k == 0) {
                os << cs;
            } else {
                if (cs != "1") os << cs << "*";
                os << "z";
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        os << "\n";
    }
    os << "h0 = " << dia.h0.str() << ", h1 = " << dia.h1.str() << "\n";
    if (dia.tolerance_used) os << "note: approximate zero tests were used\n";
    return os.str();
}

std::string render_bounds_json(const DegreeBounds& b, const OutputContext& ctx) {
    json j = header_json(ctx);
    j["L"] = b.L.str();
    j["bounds"] = bounds_json(b.bound_gradient, b.bound_classical, b.bound_classical_via_L);
    j["within_bounds"] = b.within_bounds;
    return dump(j);
}

std::string render_bounds_text(const DegreeBounds& b, const OutputContext& ctx) {
    std::ostringstream os;
    os << "degree bounds for " << ctx.input << "\n";
    os << "L = " << b.L.str() << "\n";
    os << "gradient bound: L <= " << b.bound_gradient.str() << "\n";
    os << "classical bound: 1/(1-L) = " << b.bound_classical_via_L.str() << " <= "
       << b.bound_classical.str() << "\n";
    os << (b.within_bounds ? "bounds hold\n" : "BOUNDS VIOLATED\n");
    return os.str();
}

std::string render_imult_json(const ExtRat& value, const OutputContext& ctx) {
    json j = header_json(ctx);
    j["value"] = value.str();
    return dump(j);
}

std::string render_imult_text(const ExtRat& value, const OutputContext& ctx) {
    return "intersection multiplicity of " + ctx.input + " = " + value.str() + "\n";
}

std::string render_estimate_json(double value, const std::string& arc, double t_min,
                                 double t_max, long samples, const OutputContext& ctx) {
    json j = header_json(ctx);
    j["arc"] = arc;
    j["t_min"] = t_min;
    j["t_max"] = t_max;
    j["samples"] = samples;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    j["estimate"] = std::string(buf);
    return dump(j);
}

std::string render_estimate_text(double value, const std::string& arc,
                                 const OutputContext& ctx) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    return "numeric exponent estimate along " + arc + ": " + std::string(buf) + "\n";
}

}  // namespace polarcalc
