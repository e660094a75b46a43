// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/levelsector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "wsnflood/errors.hpp"
#include "wsnflood/floodsim.hpp"

namespace wsnflood::levelsector {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string id_list(const std::vector<NodeId>& ids) {
    std::string out;
    for (NodeId id : ids) out += (out.empty() ? "" : ", ") + std::to_string(id);
    return out;
}

bool compare(double value, Comparison op, double threshold) {
    switch (op) {
        case Comparison::Less:
            return value < threshold;
        case Comparison::LessEqual:
            return value <= threshold;
        case Comparison::Equal:
            return value == threshold;
        case Comparison::GreaterEqual:
            return value >= threshold;
        case Comparison::Greater:
            return value > threshold;
        case Comparison::NotEqual:
            return value != threshold;
    }
    return false;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

void Field::validate() const {
    if (ring_radii.empty()) throw DomainError("field needs at least one ring");
    double previous = 0.0;
    for (double r : ring_radii) {
        if (!(r > previous)) throw DomainError("ring radii must be positive and strictly increasing");
        previous = r;
    }
    if (sectors < 1) throw DomainError("field needs at least one sector");
    if (!(comm_radius > 0.0)) throw DomainError("communication radius must be positive");
}

std::string to_string(Comparison op) {
    switch (op) {
        case Comparison::Less:
            return "<";
        case Comparison::LessEqual:
            return "<=";
        case Comparison::Equal:
            return "=";
        case Comparison::GreaterEqual:
            return ">=";
        case Comparison::Greater:
            return ">";
        case Comparison::NotEqual:
            return "!=";
    }
    return "?";
}

Query parse_query(const std::string& text) {
    // Longest operators first so "<=" is not read as "<".
    static const std::vector<std::pair<std::string, Comparison>> kOperators = {
        {"<=", Comparison::LessEqual}, {">=", Comparison::GreaterEqual}, {"!=", Comparison::NotEqual},
        {"==", Comparison::Equal},     {"≤", Comparison::LessEqual}, {"≥", Comparison::GreaterEqual},
        {"≠", Comparison::NotEqual}, {"<", Comparison::Less},       {">", Comparison::Greater},
        {"=", Comparison::Equal},
    };
    std::size_t best_pos = std::string::npos;
    const std::pair<std::string, Comparison>* best = nullptr;
    for (const auto& entry : kOperators) {
        const auto pos = text.find(entry.first);
        if (pos != std::string::npos && (pos < best_pos || (pos == best_pos && entry.first.size() > best->first.size()))) {
            best_pos = pos;
            best = &entry;
        }
    }
    if (!best) throw ParseError("query '" + text + "' has no comparison operator");
    Query q;
    q.data_type = trim(text.substr(0, best_pos));
    q.op = best->second;
    const std::string rhs = trim(text.substr(best_pos + best->first.size()));
    if (q.data_type.empty() || rhs.empty()) throw ParseError("query '" + text + "' must look like 'type OP value'");
    std::size_t used = 0;
    try {
        q.threshold = std::stod(rhs, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != rhs.size()) throw ParseError("query threshold '" + rhs + "' is not a number");
    return q;
}

std::vector<std::uint32_t> assign_levels(const Field& field, std::span<const NodePlacement> placements) {
    field.validate();
    std::vector<std::uint32_t> levels;
    levels.reserve(placements.size());
    std::vector<NodeId> outside;
    for (const NodePlacement& node : placements) {
        const double r = distance(field.bst, node.position);
        const auto ring = std::lower_bound(field.ring_radii.begin(), field.ring_radii.end(), r);
        if (ring == field.ring_radii.end()) {
            outside.push_back(node.node_id);
            levels.push_back(0);
            continue;
        }
        levels.push_back(static_cast<std::uint32_t>(ring - field.ring_radii.begin()) + 1);
    }
    if (!outside.empty()) {
        throw OutOfRange("nodes beyond the outermost ring: " + id_list(outside), std::move(outside));
    }
    return levels;
}

std::vector<std::uint32_t> assign_sectors(const Field& field, std::span<const NodePlacement> placements) {
    field.validate();
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::vector<std::uint32_t> sectors;
    sectors.reserve(placements.size());
    std::vector<NodeId> degenerate;
    for (const NodePlacement& node : placements) {
        const double dx = node.position.x - field.bst.x;
        const double dy = node.position.y - field.bst.y;
        if (dx == 0.0 && dy == 0.0) {
            degenerate.push_back(node.node_id);
            sectors.push_back(0);
            continue;
        }
        double theta = std::atan2(dy, dx);
        if (theta < 0.0) theta += kTwoPi;
        const auto sector = static_cast<std::uint32_t>(std::floor(theta / (kTwoPi / field.sectors)));
        sectors.push_back(std::min(sector, field.sectors - 1));
    }
    if (!degenerate.empty()) {
        throw DegeneratePosition("nodes coincide with the base station: " + id_list(degenerate),
                                 std::move(degenerate));
    }
    return sectors;
}

std::vector<NodeIdentity> assign_identities(const Field& field, std::span<const NodePlacement> placements) {
    const auto levels = assign_levels(field, placements);
    const auto sectors = assign_sectors(field, placements);
    std::vector<NodeIdentity> out;
    out.reserve(placements.size());
    for (std::size_t k = 0; k < placements.size(); ++k) {
        out.push_back(NodeIdentity{placements[k].node_id, levels[k], sectors[k]});
    }
    return out;
}

std::uint32_t circular_distance(std::uint32_t a, std::uint32_t b, std::uint32_t sectors) {
    const std::uint32_t diff = a > b ? a - b : b - a;
    return std::min(diff, sectors - diff);
}

bool accept(const NodeIdentity& sender, const NodeIdentity& receiver, std::uint32_t sectors) {
    return sender.level_id > receiver.level_id &&
           circular_distance(sender.sector_id, receiver.sector_id, sectors) <= 1;
}

bool match_query(const Query& q, const NodePlacement& node) {
    return node.data_type == q.data_type && compare(node.data_value, q.op, q.threshold);
}

std::string to_string(const ReplyMode& mode) {
    if (std::holds_alternative<PureFlood>(mode)) return "pure";
    if (const auto* c = std::get_if<ControlledFlood>(&mode)) return "controlled:" + wsnflood::to_string(c->p);
    return "levelsector";
}

EnergyLedger run_query(const Field& field, std::span<const NodePlacement> placements, const EnergyModel& em,
                       const Query& q, const ReplyMode& mode) {
    field.validate();
    em.validate();
    if (const auto* c = std::get_if<ControlledFlood>(&mode); c && (c->p < 0 || c->p > 1)) {
        throw DomainError("flooding probability must lie in [0, 1]");
    }

    // Work in ascending id order; the base station is vertex n.
    std::vector<NodePlacement> nodes(placements.begin(), placements.end());
    std::sort(nodes.begin(), nodes.end(),
              [](const NodePlacement& a, const NodePlacement& b) { return a.node_id < b.node_id; });
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        if (nodes[k].node_id == nodes[k - 1].node_id) {
            throw DomainError("duplicate node id " + std::to_string(nodes[k].node_id));
        }
    }
    const std::size_t n = nodes.size();
    const std::size_t bst = n;
    const auto identities = assign_identities(field, nodes);

    std::vector<std::vector<std::size_t>> neighbours(n + 1);
    auto position = [&](std::size_t v) { return v == bst ? field.bst : nodes[v].position; };
    for (std::size_t u = 0; u <= n; ++u) {
        for (std::size_t v = u + 1; v <= n; ++v) {
            if (distance(position(u), position(v)) <= field.comm_radius) {
                neighbours[u].push_back(v);
                neighbours[v].push_back(u);
            }
        }
    }
    for (auto& list : neighbours) std::sort(list.begin(), list.end());

    {
        std::vector<std::uint8_t> seen(n + 1, 0);
        std::deque<std::size_t> frontier{bst};
        seen[bst] = 1;
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop_front();
            for (std::size_t v : neighbours[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    frontier.push_back(v);
                }
            }
        }
        std::vector<NodeId> unreachable;
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v]) unreachable.push_back(nodes[v].node_id);
        }
        if (!unreachable.empty()) {
            throw DisconnectedGraph("field is not connected to the base station; unreachable: " +
                                        id_list(unreachable),
                                    std::move(unreachable));
        }
    }

    EnergyLedger ledger;
    std::vector<std::uint64_t> tx(n + 1, 0);
    std::vector<std::uint64_t> rx(n + 1, 0);

    for (std::size_t origin = 0; origin < n; ++origin) {
        if (!match_query(q, nodes[origin])) continue;
        std::vector<std::uint8_t> settled(n, 0);  // forwarded, or (controlled) already decided
        std::deque<std::size_t> queue{origin};
        settled[origin] = 1;
        bool delivered = false;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            ++tx[u];
            for (std::size_t w : neighbours[u]) {
                ++rx[w];
                if (w == bst) {
                    delivered = true;
                    continue;
                }
                if (settled[w]) continue;
                bool forward = false;
                if (std::holds_alternative<PureFlood>(mode)) {
                    forward = true;
                    settled[w] = 1;
                } else if (const auto* c = std::get_if<ControlledFlood>(&mode)) {
                    floodsim::SplitMix64 rng(floodsim::trial_state(c->seed ^ floodsim::trial_state(origin, 0),
                                                                   nodes[w].node_id));
                    forward = floodsim::draw_bernoulli(c->p, rng);
                    settled[w] = 1;
                } else {
                    // A rejected packet may still be accepted later from another sender.
                    forward = accept(identities[u], identities[w], field.sectors);
                    if (forward) settled[w] = 1;
                }
                if (forward) queue.push_back(w);
            }
        }
        (delivered ? ledger.delivered_replies : ledger.undelivered_replies).push_back(nodes[origin].node_id);
    }

    for (std::size_t v = 0; v <= n; ++v) {
        NodeEnergy e;
        e.node_id = v == bst ? 0 : nodes[v].node_id;
        e.transmissions = tx[v];
        e.receptions = rx[v];
        e.energy_mj = em.e_t * BigInt(static_cast<unsigned long>(tx[v])) +
                      em.e_r * BigInt(static_cast<unsigned long>(rx[v]));
        ledger.transmissions += tx[v];
        ledger.receptions += rx[v];
        if (v == bst) {
            ledger.base_station = std::move(e);
        } else {
            ledger.per_node.push_back(std::move(e));
        }
    }
    ledger.energy_mj = em.e_t * BigInt(static_cast<unsigned long>(ledger.transmissions)) +
                       em.e_r * BigInt(static_cast<unsigned long>(ledger.receptions));
    return ledger;
}

std::vector<ConstantWastePoint> constant_waste_demo(const topology::TopologySpec& family, std::uint64_t i,
                                                    std::span<const std::uint64_t> depths,
                                                    const EnergyModel& em) {
    em.validate();
    std::vector<ConstantWastePoint> series;
    for (std::uint64_t d : depths) {
        if (i >= d) {
            throw DomainError("broadcasting depth i must be below the tree depth (i=" + std::to_string(i) +
                              ", d=" + std::to_string(d) + ")");
        }
        topology::TopologySpec grown;
        if (std::holds_alternative<topology::Binary>(family)) {
            grown = topology::Binary{d};
        } else if (const auto* nested = std::get_if<topology::Nested>(&family)) {
            grown = topology::Nested{nested->s, d};
        } else if (const auto* qary = std::get_if<topology::Qary>(&family)) {
            grown = topology::Qary{qary->q, d};
        } else {
            throw DomainError("constant-waste series needs a binary, nested or q-ary family");
        }
        topology::validate(grown);
        const BigInt broadcasters = topology::level_width(grown, i);
        const BigInt listeners = topology::level_width(grown, i + 1);
        series.push_back(ConstantWastePoint{d, listeners, em.e_t * broadcasters + em.e_r * listeners});
    }
    return series;
}

}  // namespace wsnflood::levelsector
