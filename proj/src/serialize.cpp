// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/serialize.hpp"

#include "wsnflood/errors.hpp"

namespace wsnflood::serialize {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

levelsector::Point point_from(const Json& j, const char* key) {
    const auto xy = field<std::vector<double>>(j, key);
    if (xy.size() != 2) throw ParseError(std::string("field '") + key + "' must be [x, y]");
    return {xy[0], xy[1]};
}

Json node_energy(const levelsector::NodeEnergy& e) {
    return Json{{"node_id", e.node_id},
                {"transmissions", e.transmissions},
                {"receptions", e.receptions},
                {"energy_mj", to_string(e.energy_mj)}};
}

}  // namespace

Json exact(const Rational& value) { return to_string(value); }

Rational exact_from(const Json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(static_cast<long>(value.get<std::int64_t>()));
    throw ParseError("exact values must be strings or integers");
}

Json to_json(const topology::TopologySpec& spec) {
    using namespace topology;
    if (const auto* s = std::get_if<Linear>(&spec)) return Json{{"family", "linear"}, {"n", s->n}};
    if (const auto* s = std::get_if<Binary>(&spec)) return Json{{"family", "binary"}, {"d", s->d}};
    if (const auto* s = std::get_if<Nested>(&spec)) return Json{{"family", "nested"}, {"s", s->s}, {"d", s->d}};
    const auto& s = std::get<Qary>(spec);
    return Json{{"family", "qary"}, {"q", s.q}, {"d", s.d}};
}

topology::TopologySpec spec_from_json(const Json& j) {
    using namespace topology;
    const auto family = field<std::string>(j, "family");
    TopologySpec spec;
    if (family == "linear") {
        spec = Linear{field<std::uint64_t>(j, "n")};
    } else if (family == "binary") {
        spec = Binary{field<std::uint64_t>(j, "d")};
    } else if (family == "nested") {
        spec = Nested{field<std::uint64_t>(j, "s"), field<std::uint64_t>(j, "d")};
    } else if (family == "qary") {
        spec = Qary{field<std::uint64_t>(j, "q"), field<std::uint64_t>(j, "d")};
    } else {
        throw ParseError("unknown topology family '" + family + "'");
    }
    validate(spec);
    return spec;
}

Json to_json(const topology::Tree& tree) {
    Json nodes = Json::array();
    for (const auto& n : tree.nodes()) {
        nodes.push_back(Json{{"id", n.id},
                             {"depth", n.depth},
                             {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
                             {"children", n.children}});
    }
    return Json{{"spec", tree.spec() ? to_json(*tree.spec()) : Json(nullptr)}, {"nodes", std::move(nodes)}};
}

topology::Tree tree_from_json(const Json& j) {
    std::vector<topology::Node> nodes;
    for (const auto& n : field<Json>(j, "nodes")) {
        topology::Node node;
        node.id = field<std::size_t>(n, "id");
        node.depth = field<std::uint64_t>(n, "depth");
        if (n.contains("parent") && !n.at("parent").is_null()) node.parent = n.at("parent").get<std::size_t>();
        node.children = field<std::vector<std::size_t>>(n, "children");
        nodes.push_back(std::move(node));
    }
    std::optional<topology::TopologySpec> spec;
    if (j.contains("spec") && !j.at("spec").is_null()) spec = spec_from_json(j.at("spec"));
    return topology::Tree(std::move(nodes), std::move(spec));
}

Json to_json(const WastageReport& r) {
    Json out{{"b_t", exact(r.b_t)},         {"b_r", exact(r.b_r)},         {"t_x", exact(r.t_x)},
             {"r_x", exact(r.r_x)},         {"n_total", exact(r.n_total)}, {"e_total", exact(r.e_total)}};
    if (!is_integer(r.b_t) || !is_integer(r.b_r)) {
        out["decimal"] = Json{{"b_t", to_decimal(r.b_t)},         {"b_r", to_decimal(r.b_r)},
                              {"t_x", to_decimal(r.t_x)},         {"r_x", to_decimal(r.r_x)},
                              {"n_total", to_decimal(r.n_total)}, {"e_total", to_decimal(r.e_total)}};
    }
    return out;
}

WastageReport wastage_from_json(const Json& j) {
    WastageReport r;
    r.b_t = exact_from(field<Json>(j, "b_t"));
    r.b_r = exact_from(field<Json>(j, "b_r"));
    r.t_x = exact_from(field<Json>(j, "t_x"));
    r.r_x = exact_from(field<Json>(j, "r_x"));
    r.n_total = exact_from(field<Json>(j, "n_total"));
    r.e_total = exact_from(field<Json>(j, "e_total"));
    return r;
}

Json to_json(const floodsim::PropagationOutcome& outcome, bool per_node) {
    Json depths = Json::array();
    Json tx = Json::array();
    Json rx = Json::array();
    for (const auto& agg : outcome.by_depth) {
        depths.push_back(agg.nodes);
        tx.push_back(exact(agg.transmitters));
        rx.push_back(exact(agg.receivers));
    }
    Json out{{"reading", floodsim::to_string(outcome.reading)},
             {"broadcast_depth", outcome.broadcast_depth},
             {"broadcaster_count", outcome.broadcasters.size()},
             {"nodes_by_depth", std::move(depths)},
             {"transmitters_by_depth", std::move(tx)},
             {"receivers_by_depth", std::move(rx)}};
    if (outcome.monte_carlo) {
        const auto& mc = *outcome.monte_carlo;
        out["monte_carlo"] = Json{{"trials", mc.trials},
                                  {"seed", mc.seed},
                                  {"mean_b_t", exact(mc.mean_b_t)},
                                  {"mean_b_r", exact(mc.mean_b_r)},
                                  {"variance_b_t", exact(mc.variance_b_t)},
                                  {"variance_b_r", exact(mc.variance_b_r)},
                                  {"std_error_b_t", mc.std_error_b_t()},
                                  {"std_error_b_r", mc.std_error_b_r()}};
    }
    if (per_node) {
        Json nodes = Json::array();
        for (std::size_t v = 0; v < outcome.transmitted.size(); ++v) {
            nodes.push_back(Json{{"id", v},
                                 {"transmitted", exact(outcome.transmitted[v])},
                                 {"received", exact(outcome.received[v])}});
        }
        out["nodes"] = std::move(nodes);
    }
    return out;
}

Json to_json(const floodsim::StructuralWastage& w) {
    return Json{{"broadcaster_count", w.broadcaster_count},
                {"structural", to_json(w.structural)},
                {"analytic_compatible", to_json(w.analytic_compatible)}};
}

Json to_json(const floodsim::DiscrepancyRecord& record) {
    Json fields = Json::array();
    for (const auto& f : record.fields) {
        fields.push_back(Json{{"field", f.field},
                              {"analytic", exact(f.analytic)},
                              {"structural", exact(f.structural)},
                              {"difference", exact(f.difference)},
                              {"zero", f.zero}});
    }
    return Json{{"all_zero", record.all_zero()}, {"fields", std::move(fields)}};
}

FieldDocument field_from_json(const Json& j) {
    FieldDocument doc;
    doc.field.bst = point_from(j, "bst");
    doc.field.ring_radii = field<std::vector<double>>(j, "rings");
    doc.field.sectors = field<std::uint32_t>(j, "sectors");
    doc.field.comm_radius = field<double>(j, "comm_radius");
    doc.field.validate();
    for (const auto& n : field<Json>(j, "nodes")) {
        levelsector::NodePlacement p;
        p.node_id = field<std::size_t>(n, "id");
        p.position = point_from(n, "pos");
        p.data_type = field<std::string>(n, "data_type");
        p.data_value = field<double>(n, "data_value");
        doc.nodes.push_back(std::move(p));
    }
    return doc;
}

FieldDocument parse_field(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("field document is not valid JSON: ") + e.what());
    }
    return field_from_json(j);
}

Json to_json(const FieldDocument& doc) {
    Json nodes = Json::array();
    for (const auto& n : doc.nodes) {
        nodes.push_back(Json{{"id", n.node_id},
                             {"pos", {n.position.x, n.position.y}},
                             {"data_type", n.data_type},
                             {"data_value", n.data_value}});
    }
    return Json{{"bst", {doc.field.bst.x, doc.field.bst.y}},
                {"rings", doc.field.ring_radii},
                {"sectors", doc.field.sectors},
                {"comm_radius", doc.field.comm_radius},
                {"nodes", std::move(nodes)}};
}

Json to_json(const levelsector::EnergyLedger& ledger) {
    Json per_node = Json::array();
    for (const auto& e : ledger.per_node) per_node.push_back(node_energy(e));
    Json bst = node_energy(ledger.base_station);
    bst.erase("node_id");
    return Json{{"transmissions", ledger.transmissions},
                {"receptions", ledger.receptions},
                {"energy_mj", to_string(ledger.energy_mj)},
                {"delivered_replies", ledger.delivered_replies},
                {"undelivered_replies", ledger.undelivered_replies},
                {"base_station", std::move(bst)},
                {"per_node", std::move(per_node)}};
}

}  // namespace wsnflood::serialize
