// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "../support/fields.hpp"
#include "wsnflood/errors.hpp"
#include "wsnflood/levelsector.hpp"
#include "wsnflood/serialize.hpp"

using namespace wsnflood;
using namespace wsnflood::levelsector;

namespace {

Field rings_10_20(std::uint32_t sectors = 4) { return Field{{0, 0}, {10, 20}, sectors, 10}; }

NodePlacement at(NodeId id, double x, double y, std::string type = "temp", double value = 0) {
    return NodePlacement{id, {x, y}, std::move(type), value};
}

NodePlacement polar(NodeId id, double r, double degrees) {
    const double rad = degrees * std::numbers::pi / 180.0;
    return at(id, r * std::cos(rad), r * std::sin(rad));
}

serialize::FieldDocument chain() {
    std::ifstream in(WSNFLOOD_TEST_DATA "/chain_field.json");
    std::stringstream buf;
    buf << in.rdbuf();
    return serialize::parse_field(buf.str());
}

}  // namespace

TEST_CASE("assign_levels") {
    const Field f = rings_10_20();
    const std::vector<NodePlacement> nodes{at(1, 5, 0), at(2, 10, 0), at(3, 0, 15), at(4, 20, 0)};
    CHECK(assign_levels(f, nodes) == std::vector<std::uint32_t>{1, 1, 2, 2});

    const std::vector<NodePlacement> far{at(7, 25, 0), at(8, 3, 0), at(9, 0, -30)};
    try {
        assign_levels(f, far);
        FAIL("expected OutOfRange");
    } catch (const OutOfRange& e) {
        CHECK(e.nodes() == std::vector<NodeId>{7, 9});
    }
}

TEST_CASE("assign_sectors") {
    const std::vector<NodePlacement> nodes{polar(1, 5, 10), at(2, 0, 5), polar(3, 5, 200), polar(4, 5, 359.9)};
    CHECK(assign_sectors(rings_10_20(4), nodes) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(assign_sectors(rings_10_20(1), nodes) == std::vector<std::uint32_t>{0, 0, 0, 0});
    CHECK(assign_sectors(rings_10_20(8), std::vector<NodePlacement>{at(1, 1, 1), at(2, -1, 0)}) ==
          std::vector<std::uint32_t>{1, 4});

    const std::vector<NodePlacement> on_bst{at(5, 0, 0)};
    CHECK_THROWS_AS(assign_sectors(rings_10_20(), on_bst), DegeneratePosition);

    Field offset{{3, 4}, {10}, 4, 5};
    CHECK(assign_sectors(offset, std::vector<NodePlacement>{at(1, 3, 9)}) == std::vector<std::uint32_t>{1});
}

TEST_CASE("field validation") {
    CHECK_THROWS_AS((Field{{0, 0}, {}, 4, 1}.validate()), DomainError);
    CHECK_THROWS_AS((Field{{0, 0}, {10, 10}, 4, 1}.validate()), DomainError);
    CHECK_THROWS_AS((Field{{0, 0}, {10}, 0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((Field{{0, 0}, {10}, 4, 0}.validate()), DomainError);
}

TEST_CASE("accept") {
    CHECK(accept({1, 3, 2}, {2, 2, 2}, 8));
    CHECK_FALSE(accept({1, 2, 0}, {2, 2, 1}, 8));
    CHECK(accept({1, 4, 7}, {2, 3, 0}, 8));
    CHECK_FALSE(accept({1, 4, 2}, {2, 3, 4}, 8));
    CHECK(accept({1, 5, 2}, {2, 1, 3}, 8));  // any strictly greater level
}

TEST_CASE("accept is irreflexive and antisymmetric") {
    for (std::uint32_t k : {1u, 2u, 3u, 4u, 8u}) {
        for (std::uint32_t la = 0; la <= 4; ++la) {
            for (std::uint32_t lb = 0; lb <= 4; ++lb) {
                for (std::uint32_t sa = 0; sa < k; ++sa) {
                    for (std::uint32_t sb = 0; sb < k; ++sb) {
                        const NodeIdentity a{1, la, sa};
                        const NodeIdentity b{2, lb, sb};
                        CHECK_FALSE(accept(a, a, k));
                        if (accept(a, b, k)) CHECK_FALSE(accept(b, a, k));
                        CHECK(circular_distance(sa, sb, k) == circular_distance(sb, sa, k));
                        CHECK(circular_distance(sa, sb, k) <= k / 2);
                    }
                }
            }
        }
    }
}

TEST_CASE("match_query and parse_query") {
    CHECK(match_query(parse_query("temp > 30"), at(1, 1, 0, "temp", 35)));
    CHECK_FALSE(match_query(parse_query("temp>30"), at(1, 1, 0, "humidity", 99)));
    CHECK(match_query(parse_query("temp=30"), at(1, 1, 0, "temp", 30)));
    CHECK(match_query(parse_query("temp<=30"), at(1, 1, 0, "temp", 30)));
    CHECK_FALSE(match_query(parse_query("temp<30"), at(1, 1, 0, "temp", 30)));
    CHECK(match_query(parse_query("temp≥30"), at(1, 1, 0, "temp", 30)));
    CHECK(match_query(parse_query("temp ≠ 30"), at(1, 1, 0, "temp", 31)));
    CHECK(match_query(parse_query("temp != 30"), at(1, 1, 0, "temp", 31)));
    CHECK(parse_query("humidity >= -2.5").threshold == doctest::Approx(-2.5));
    CHECK(parse_query("a==1").op == Comparison::Equal);
    CHECK_THROWS_AS(parse_query("temp 30"), ParseError);
    CHECK_THROWS_AS(parse_query("> 30"), ParseError);
    CHECK_THROWS_AS(parse_query("temp > hot"), ParseError);
}

TEST_CASE("run_query on a three-node chain") {
    const auto doc = chain();
    const EnergyModel em{100, 5};
    const Query q = parse_query("temp > 30");

    const auto ls = run_query(doc.field, doc.nodes, em, q, LevelSector{});
    CHECK(ls.transmissions == 2);
    CHECK(ls.receptions == 3);
    CHECK(ls.energy_mj == 215);
    CHECK(ls.delivered_replies == std::vector<NodeId>{2});
    CHECK(ls.base_station.receptions == 1);
    CHECK(ls.per_node.at(0).transmissions == 1);
    CHECK(ls.per_node.at(0).receptions == 1);
    CHECK(ls.per_node.at(1).receptions == 1);

    const auto pure = run_query(doc.field, doc.nodes, em, q, PureFlood{});
    CHECK(pure.transmissions == 2);
    CHECK(pure.receptions == 3);
    CHECK(pure.energy_mj == ls.energy_mj);

    const auto none = run_query(doc.field, doc.nodes, em, parse_query("temp > 100"), LevelSector{});
    CHECK(none.transmissions == 0);
    CHECK(none.receptions == 0);
    CHECK(none.energy_mj == 0);
    CHECK(none.delivered_replies.empty());

    const auto silent = run_query(doc.field, doc.nodes, em, q, ControlledFlood{0, 3});
    CHECK(silent.transmissions == 1);
    CHECK(silent.undelivered_replies == std::vector<NodeId>{2});
}

TEST_CASE("run_query prunes sideways and outward forwarding") {
    // Two level-1 relays in range of each other and of the level-2 source; only relays
    // within one sector of the source may forward.
    const Field f{{0, 0}, {10, 20}, 8, 12};
    const std::vector<NodePlacement> nodes{
        at(1, 8, 0), at(2, 0, 8), at(3, 15, 0, "temp", 40), at(4, 8, -3),
    };
    const EnergyModel em{100, 5};
    const Query q = parse_query("temp>30");
    const auto ls = run_query(f, nodes, em, q, LevelSector{});
    const auto pure = run_query(f, nodes, em, q, PureFlood{});
    CHECK(ls.delivered_replies == std::vector<NodeId>{3});
    CHECK(pure.delivered_replies == std::vector<NodeId>{3});
    CHECK(ls.transmissions < pure.transmissions);
    CHECK(ls.energy_mj < pure.energy_mj);
    CHECK(ls.energy_mj == em.e_t * ls.transmissions + em.e_r * ls.receptions);
}

TEST_CASE("run_query errors") {
    const EnergyModel em;
    const Query q = parse_query("temp>1");
    const std::vector<NodePlacement> stranded{at(1, 5, 0), at(2, 19, 0)};
    try {
        run_query(Field{{0, 0}, {10, 20}, 4, 6}, stranded, em, q, PureFlood{});
        FAIL("expected DisconnectedGraph");
    } catch (const DisconnectedGraph& e) {
        CHECK(e.unreachable() == std::vector<NodeId>{2});
    }
    const std::vector<NodePlacement> dup{at(1, 5, 0), at(1, 6, 0)};
    CHECK_THROWS_AS(run_query(rings_10_20(), dup, em, q, PureFlood{}), DomainError);
    CHECK_THROWS_AS(run_query(rings_10_20(), stranded, em, q, ControlledFlood{2, 0}), DomainError);
}

TEST_CASE("controlled replies are reproducible") {
    const auto field = testing::random_field(5, 40);
    const Query q = parse_query("temp > 20");
    const auto a = run_query(field.field, field.nodes, EnergyModel{}, q, ControlledFlood{Rational(1, 2), 9});
    const auto b = run_query(field.field, field.nodes, EnergyModel{}, q, ControlledFlood{Rational(1, 2), 9});
    CHECK(a.energy_mj == b.energy_mj);
    CHECK(a.delivered_replies == b.delivered_replies);
    const auto all = run_query(field.field, field.nodes, EnergyModel{}, q, ControlledFlood{1, 9});
    const auto pure = run_query(field.field, field.nodes, EnergyModel{}, q, PureFlood{});
    CHECK(all.energy_mj == pure.energy_mj);
}

TEST_CASE("pruning dominance and ledger identity on random fields") {
    const EnergyModel em{100, 5};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto field = testing::random_field(seed, 30);
        for (const char* text : {"temp > 25", "humidity <= 10", "light != 3"}) {
            const Query q = parse_query(text);
            const auto ls = run_query(field.field, field.nodes, em, q, LevelSector{});
            const auto pure = run_query(field.field, field.nodes, em, q, PureFlood{});
            const auto ctl = run_query(field.field, field.nodes, em, q, ControlledFlood{Rational(1, 3), seed});
            CHECK(ls.energy_mj <= pure.energy_mj);
            for (const auto* l : {&ls, &pure, &ctl}) {
                CHECK(l->energy_mj == em.e_t * BigInt(static_cast<unsigned long>(l->transmissions)) +
                                          em.e_r * BigInt(static_cast<unsigned long>(l->receptions)));
                CHECK(l->delivered_replies.size() + l->undelivered_replies.size() ==
                      pure.delivered_replies.size());
            }
            for (std::size_t k = 0; k < ls.per_node.size(); ++k) {
                CHECK(ls.per_node[k].transmissions <= pure.per_node[k].transmissions);
            }
        }
        const auto ids = assign_identities(field.field, field.nodes);
        CHECK(ids == assign_identities(field.field, field.nodes));
        for (const auto& id : ids) {
            CHECK(id.level_id >= 1);
            CHECK(id.level_id <= field.field.ring_radii.size());
            CHECK(id.sector_id < field.field.sectors);
        }
    }
}

TEST_CASE("constant waste demo") {
    const EnergyModel em{100, 5};
    std::vector<std::uint64_t> depths{4, 5, 6, 7, 20};
    const auto binary = constant_waste_demo(topology::Binary{}, 2, depths, em);
    REQUIRE(binary.size() == depths.size());
    for (const auto& point : binary) {
        CHECK(point.involved == 8);
        CHECK(point.energy == 440);
    }

    std::vector<std::uint64_t> nested_depths{4, 5, 9};
    for (const auto& point : constant_waste_demo(topology::Nested{2, 0}, 3, nested_depths, em)) {
        CHECK(point.involved == 36);
    }

    std::vector<std::uint64_t> shallow{2};
    CHECK_THROWS_AS(constant_waste_demo(topology::Binary{}, 2, shallow, em), DomainError);
    std::vector<std::uint64_t> fine{5};
    CHECK_THROWS_AS(constant_waste_demo(topology::Linear{3}, 2, fine, em), DomainError);
    CHECK_THROWS_AS(constant_waste_demo(topology::Nested{6, 0}, 2, fine, em), InvalidSpec);
}

TEST_CASE("ledger JSON") {
    const auto doc = chain();
    const auto ledger = run_query(doc.field, doc.nodes, EnergyModel{}, parse_query("temp>30"), LevelSector{});
    const auto j = serialize::to_json(ledger);
    CHECK(j.at("energy_mj") == "215");
    CHECK(j.at("transmissions") == 2);
    CHECK(j.at("delivered_replies").size() == 1);
    CHECK(j.at("per_node").size() == 2);
}
