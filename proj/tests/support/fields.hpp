// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "wsnflood/errors.hpp"
#include "wsnflood/levelsector.hpp"

namespace wsnflood::testing {

struct RandomField {
    levelsector::Field field;
    std::vector<levelsector::NodePlacement> nodes;
};

/// Uniform placements in a disk around the origin; regenerates until the communication
/// graph reaches every node from the base station.
inline RandomField random_field(std::uint64_t seed, std::size_t node_count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> sectors(1, 12);
    std::uniform_int_distribution<std::uint32_t> rings(1, 6);
    const char* types[] = {"temp", "humidity", "light"};

    while (true) {
        RandomField out;
        const std::uint32_t ring_count = rings(rng);
        const double outer = 100.0;
        for (std::uint32_t t = 1; t <= ring_count; ++t) out.field.ring_radii.push_back(outer * t / ring_count);
        out.field.sectors = sectors(rng);
        out.field.comm_radius = 25.0 + 20.0 * unit(rng);
        for (std::size_t k = 0; k < node_count; ++k) {
            const double r = outer * std::sqrt(unit(rng)) * 0.999 + 0.01;
            const double theta = 2.0 * std::numbers::pi * unit(rng);
            levelsector::NodePlacement p;
            p.node_id = k + 1;
            p.position = {r * std::cos(theta), r * std::sin(theta)};
            p.data_type = types[rng() % 3];
            p.data_value = std::floor(unit(rng) * 50.0);
            out.nodes.push_back(std::move(p));
        }
        try {
            levelsector::run_query(out.field, out.nodes, EnergyModel{}, levelsector::Query{"none", {}, 0},
                                   levelsector::PureFlood{});
            return out;
        } catch (const DisconnectedGraph&) {
            continue;
        }
    }
}

}  // namespace wsnflood::testing
