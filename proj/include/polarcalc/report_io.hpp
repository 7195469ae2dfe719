#pragma once

// Text and JSON rendering of solver results.  All output is deterministic:
// identical inputs (including seeds) produce byte-identical strings.

#include "polarcalc/invariants.hpp"
#include "polarcalc/newton_polygon.hpp"
#include "polarcalc/puiseux_solver.hpp"

#include <string>

namespace polarcalc {

struct OutputContext {
    std::string command;
    std::string input;  // canonical serialization of the input polynomial(s)
    ScalarField field = ScalarField::Complex;
    long seed = 0;
};

std::string branch_source_name(BranchSource s);

std::string render_report_json(const InvariantReport& rep, const OutputContext& ctx);
std::string render_report_text(const InvariantReport& rep, const OutputContext& ctx);

std::string render_branch_set_json(const BranchSet& bs, const Rat& shear,
                                   const OutputContext& ctx);
std::string render_branch_set_text(const BranchSet& bs, const Rat& shear,
                                   const OutputContext& ctx);

std::string render_quotients_json(const QuotientSet& qs, const Rat& shear, long m, long d,
                                  const OutputContext& ctx);
std::string render_quotients_text(const QuotientSet& qs, const Rat& shear, long m, long d,
                                  const OutputContext& ctx);

std::string render_diagram_json(const NewtonDiagram& dia);
std::string render_diagram_text(const NewtonDiagram& dia);

std::string render_bounds_json(const DegreeBounds& b, const OutputContext& ctx);
std::string render_bounds_text(const DegreeBounds& b, const OutputContext& ctx);

std::string render_imult_json(const ExtRat& value, const OutputContext& ctx);
std::string render_imult_text(const ExtRat& value, const OutputContext& ctx);

std::string render_estimate_json(double value, const std::string& arc, double t_min,
                                 double t_max, long samples, const OutputContext& ctx);
std::string render_estimate_text(double value, const std::string& arc,
                                 const OutputContext& ctx);

}  // namespace polarcalc
