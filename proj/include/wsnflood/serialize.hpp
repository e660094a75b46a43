// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wsnflood/analytic.hpp"
#include "wsnflood/floodsim.hpp"
#include "wsnflood/levelsector.hpp"
#include "wsnflood/topology.hpp"

namespace wsnflood::serialize {

using Json = nlohmann::ordered_json;

/// Exact values travel as strings ("12", "3/4") so nothing is lost to doubles.
Json exact(const Rational& value);
Rational exact_from(const Json& value);

Json to_json(const topology::TopologySpec& spec);
topology::TopologySpec spec_from_json(const Json& j);

/// {"spec": ..., "nodes": [{"id", "depth", "parent", "children"}...]}
Json to_json(const topology::Tree& tree);
topology::Tree tree_from_json(const Json& j);

Json to_json(const WastageReport& report);
WastageReport wastage_from_json(const Json& j);

/// Per-depth aggregates always; per-node values only when asked (they grow like q^d).
Json to_json(const floodsim::PropagationOutcome& outcome, bool per_node = false);
Json to_json(const floodsim::StructuralWastage& wastage);
Json to_json(const floodsim::DiscrepancyRecord& record);

struct FieldDocument {
    levelsector::Field field;
    std::vector<levelsector::NodePlacement> nodes;
};

/// {"bst": [x, y], "rings": [...], "sectors": K, "comm_radius": r,
///  "nodes": [{"id", "pos": [x, y], "data_type", "data_value"}...]}
FieldDocument field_from_json(const Json& j);
FieldDocument parse_field(const std::string& text);
Json to_json(const FieldDocument& doc);

Json to_json(const levelsector::EnergyLedger& ledger);

}  // namespace wsnflood::serialize
