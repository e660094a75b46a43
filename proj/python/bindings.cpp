// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wsnflood/analytic.hpp"
#include "wsnflood/errors.hpp"
#include "wsnflood/floodsim.hpp"
#include "wsnflood/levelsector.hpp"
#include "wsnflood/report.hpp"
#include "wsnflood/serialize.hpp"
#include "wsnflood/topology.hpp"

namespace py = pybind11;
using namespace wsnflood;

namespace {

// Everything crosses the boundary as exact strings or JSON text; the Python layer turns
// those into Fractions and dicts.

EnergyModel energy(const std::string& et, const std::string& er) {
    EnergyModel em;
    const Rational t = parse_rational(et);
    const Rational r = parse_rational(er);
    if (!is_integer(t) || !is_integer(r)) throw InvalidSpec("energies must be integers (mJ)");
    em.e_t = t.get_num();
    em.e_r = r.get_num();
    em.validate();
    return em;
}

std::string formula(const std::string& family, std::int64_t d, std::int64_t i, std::int64_t s, std::int64_t q,
                    std::int64_t n, std::int64_t k, const std::string& mode, const std::string& et,
                    const std::string& er) {
    report::FormulaRequest r;
    r.family = family;
    r.d = d;
    r.i = i;
    r.s = s;
    r.q = q;
    r.n = n;
    r.k = k;
    r.mode = parse_mode(mode);
    r.em = energy(et, er);
    return serialize::to_json(report::evaluate_formula(r)).dump();
}

std::string tree(const std::string& spec) {
    return serialize::to_json(topology::build(topology::parse_spec(spec))).dump();
}

std::vector<std::string> level_widths(const std::string& text) {
    const auto spec = topology::parse_spec(text);
    std::vector<std::string> out;
    for (std::uint64_t m = 0; m <= topology::depth(spec); ++m) out.push_back(to_string(topology::level_width(spec, m)));
    return out;
}

std::string simulate(const std::string& spec_text, std::uint64_t i, const std::string& mode_text,
                     std::uint64_t trials, std::uint64_t seed, bool per_node, const std::string& et,
                     const std::string& er) {
    const EnergyModel em = energy(et, er);
    const FloodMode mode = parse_mode(mode_text);
    const auto tree = topology::build(topology::parse_spec(spec_text));
    floodsim::PropagationOutcome outcome;
    {
        py::gil_scoped_release release;
        if (const auto* c = std::get_if<Controlled>(&mode)) {
            outcome = trials > 0 ? floodsim::flood_controlled_mc(tree, i, c->p, trials, seed)
                                 : floodsim::flood_controlled_expectation(tree, i, c->p);
        } else {
            outcome = floodsim::flood_pure(tree, i);
        }
    }
    const auto wastage = floodsim::wastage_structural(outcome, em);
    return serialize::Json{{"outcome", serialize::to_json(outcome, per_node)},
                           {"wastage", serialize::to_json(wastage)}}
        .dump();
}

std::string ls_query(const std::string& field_json, const std::string& query, const std::string& mode_text,
                     std::uint64_t seed, const std::string& et, const std::string& er) {
    const auto doc = serialize::parse_field(field_json);
    levelsector::ReplyMode mode = levelsector::LevelSector{};
    if (mode_text == "pure") {
        mode = levelsector::PureFlood{};
    } else if (mode_text != "ls") {
        const FloodMode parsed = parse_mode(mode_text);
        const auto* c = std::get_if<Controlled>(&parsed);
        if (!c) throw ParseError("unknown reply mode '" + mode_text + "'");
        mode = levelsector::ControlledFlood{c->p, seed};
    }
    return serialize::to_json(
               levelsector::run_query(doc.field, doc.nodes, energy(et, er), levelsector::parse_query(query), mode))
        .dump();
}

std::pair<std::string, int> tables(int table) {
    const auto t = report::reproduce_table(table);
    return {report::render(t, report::Format::Json), t.report.exit_code()};
}

std::pair<std::string, int> verify(const std::string& scope, std::int64_t d_max,
                                   const std::vector<std::string>& p_grid, const std::vector<std::int64_t>& q_values,
                                   std::uint64_t max_nodes) {
    report::VerifyOptions o;
    o.scope = scope;
    o.d_max = d_max;
    o.p_grid.clear();
    for (const auto& p : p_grid) o.p_grid.push_back(parse_rational(p));
    o.q_values = q_values;
    o.max_nodes = max_nodes;
    report::DiscrepancyReport r;
    {
        py::gil_scoped_release release;
        r = report::verify(o);
    }
    return {report::render(r, report::Format::Json), r.exit_code()};
}

std::string series(const std::string& family, std::int64_t i, std::int64_t s, std::int64_t q,
                   const std::vector<std::int64_t>& depths, const std::string& mode, bool include_ls,
                   const std::string& et, const std::string& er) {
    report::SeriesRequest r;
    r.family = family;
    r.i = i;
    r.s = s;
    r.q = q;
    r.depths = depths;
    r.mode = parse_mode(mode);
    r.include_ls = include_ls;
    r.em = energy(et, er);
    return report::render(report::series(r), report::Format::Json);
}

bool accept(std::uint32_t sender_level, std::uint32_t sender_sector, std::uint32_t receiver_level,
            std::uint32_t receiver_sector, std::uint32_t sectors) {
    return levelsector::accept({0, sender_level, sender_sector}, {1, receiver_level, receiver_sector}, sectors);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of wsnflood";

    py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DisconnectedGraph>(m, "DisconnectedGraph", PyExc_ValueError);
    py::register_exception<OutOfRange>(m, "OutOfRange", PyExc_ValueError);
    py::register_exception<DegeneratePosition>(m, "DegeneratePosition", PyExc_ValueError);

    m.def("formula", &formula, py::arg("family"), py::arg("d"), py::arg("i"), py::arg("s"), py::arg("q"),
          py::arg("n"), py::arg("k"), py::arg("mode"), py::arg("et"), py::arg("er"));
    m.def("tree", &tree, py::arg("spec"));
    m.def("level_widths", &level_widths, py::arg("spec"));
    m.def("simulate", &simulate, py::arg("spec"), py::arg("i"), py::arg("mode"), py::arg("trials"),
          py::arg("seed"), py::arg("per_node"), py::arg("et"), py::arg("er"));
    m.def("ls_query", &ls_query, py::arg("field"), py::arg("query"), py::arg("mode"), py::arg("seed"),
          py::arg("et"), py::arg("er"));
    m.def("tables", &tables, py::arg("table"));
    m.def("fixtures", [] { return report::render_fixtures(report::Format::Json); });
    m.def("verify", &verify, py::arg("scope"), py::arg("d_max"), py::arg("p_grid"), py::arg("q_values"),
          py::arg("max_nodes"));
    m.def("series", &series, py::arg("family"), py::arg("i"), py::arg("s"), py::arg("q"), py::arg("depths"),
          py::arg("mode"), py::arg("include_ls"), py::arg("et"), py::arg("er"));
    m.def("accept", &accept, py::arg("sender_level"), py::arg("sender_sector"), py::arg("receiver_level"),
          py::arg("receiver_sector"), py::arg("sectors"));
}
