// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wsnflood/analytic.hpp"
#include "wsnflood/exact.hpp"
#include "wsnflood/topology.hpp"

namespace wsnflood::levelsector {

using topology::NodeId;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Concentric rings around the base station (ring t covers distances (r_{t-1}, r_t])
/// split into `sectors` equal angular sectors.
struct Field {
    Point bst;
    std::vector<double> ring_radii;
    std::uint32_t sectors = 1;
    double comm_radius = 1.0;

    void validate() const;
};

struct NodePlacement {
    NodeId node_id = 0;
    Point position;
    std::string data_type;
    double data_value = 0.0;
};

struct NodeIdentity {
    NodeId node_id = 0;
    std::uint32_t level_id = 0;  // 1 = innermost ring; the base station is level 0
    std::uint32_t sector_id = 0;

    friend bool operator==(const NodeIdentity&, const NodeIdentity&) = default;
};

enum class Comparison { Less, LessEqual, Equal, GreaterEqual, Greater, NotEqual };

std::string to_string(Comparison op);

struct Query {
    std::string data_type;
    Comparison op = Comparison::Equal;
    double threshold = 0.0;
};

/// "temp>30", "humidity <= 40.5", "temp != 3"; the unicode forms ≤ ≥ ≠ are accepted.
Query parse_query(const std::string& text);

/// Level of each placement (same order): the 1-based index of the innermost ring whose
/// outer radius reaches the node. Throws OutOfRange listing nodes beyond the last ring.
std::vector<std::uint32_t> assign_levels(const Field& field, std::span<const NodePlacement> placements);

/// Sector of each placement: floor(theta / (2*pi/K)) with theta counterclockwise from +x
/// in [0, 2*pi). Throws DegeneratePosition for nodes on top of the base station.
std::vector<std::uint32_t> assign_sectors(const Field& field, std::span<const NodePlacement> placements);

std::vector<NodeIdentity> assign_identities(const Field& field, std::span<const NodePlacement> placements);

/// min(|a-b|, K-|a-b|)
std::uint32_t circular_distance(std::uint32_t a, std::uint32_t b, std::uint32_t sectors);

/// Route-reply acceptance: the sender sits on a strictly higher level and at most one
/// sector away (sectors wrap around).
bool accept(const NodeIdentity& sender, const NodeIdentity& receiver, std::uint32_t sectors);

bool match_query(const Query& q, const NodePlacement& node);

struct PureFlood {};
struct ControlledFlood {
    Rational p;
    std::uint64_t seed = 0;
};
struct LevelSector {};

using ReplyMode = std::variant<PureFlood, ControlledFlood, LevelSector>;

std::string to_string(const ReplyMode& mode);

struct NodeEnergy {
    NodeId node_id = 0;
    std::uint64_t transmissions = 0;
    std::uint64_t receptions = 0;
    BigInt energy_mj;
};

struct EnergyLedger {
    std::uint64_t transmissions = 0;
    std::uint64_t receptions = 0;
    BigInt energy_mj;
    std::vector<NodeEnergy> per_node;  // sensor nodes in ascending id order
    NodeEnergy base_station;           // receptions only
    std::vector<NodeId> delivered_replies;    // originating node ids
    std::vector<NodeId> undelivered_replies;
};

/// Every matching node originates one reply which spreads hop by hop over the
/// communication graph (nodes within comm_radius). Each node forwards a given reply at
/// most once. Every in-range neighbour of a transmitter pays for a reception whether or
/// not it goes on to forward. Packets are handled FIFO; simultaneous receivers are
/// visited in ascending id order, the base station last.
EnergyLedger run_query(const Field& field, std::span<const NodePlacement> placements, const EnergyModel& em,
                       const Query& q, const ReplyMode& mode);

struct ConstantWastePoint {
    std::uint64_t d = 0;
    BigInt involved;  // receivers at depth i+1
    BigInt energy;    // e_t * broadcasters + e_r * receivers
};

/// Involvement under level/sector pruning when depth i broadcasts in `family` grown to
/// each depth in `depths`: only depth i transmits and only depth i+1 listens.
/// The depth parameter of `family` is replaced by each entry of `depths`.
std::vector<ConstantWastePoint> constant_waste_demo(const topology::TopologySpec& family, std::uint64_t i,
                                                    std::span<const std::uint64_t> depths,
                                                    const EnergyModel& em);

}  // namespace wsnflood::levelsector
