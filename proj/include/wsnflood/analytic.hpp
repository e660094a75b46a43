// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "wsnflood/exact.hpp"

namespace wsnflood {

/// Per-packet radio costs in millijoules.
struct EnergyModel {
    BigInt e_t = 100;
    BigInt e_r = 5;

    void validate() const;
};

struct Pure {
    friend bool operator==(const Pure&, const Pure&) = default;
};

/// Every receiver rebroadcasts independently with probability p.
struct Controlled {
    Rational p;
    friend bool operator==(const Controlled&, const Controlled&) = default;
};

using FloodMode = std::variant<Pure, Controlled>;

void validate(const FloodMode& mode);
std::string to_string(const FloodMode& mode);
/// Inverse of to_string: "pure" or "controlled:<p>" with p an exact rational or decimal.
FloodMode parse_mode(const std::string& text);

/// Unnecessary involvement counts and the energy they cost. Counts are expectations
/// under controlled flooding, hence rational.
struct WastageReport {
    Rational b_t;      // unnecessary transmitters
    Rational b_r;      // unnecessary receivers
    Rational t_x;      // e_t + e_t * b_t
    Rational r_x;      // e_r * b_r
    Rational n_total;  // b_t + b_r
    Rational e_total;  // t_x + r_x

    friend bool operator==(const WastageReport&, const WastageReport&) = default;
};

/// Fills the energy fields from the two counts using the published accounting,
/// which charges the broadcaster's own transmission once (the leading e_t).
WastageReport make_report(Rational b_t, Rational b_r, const EnergyModel& em);

}  // namespace wsnflood

namespace wsnflood::analytic {

/// Sum of base^m for m = lo..hi; zero when hi < lo. Negative exponents are allowed
/// for nonzero bases.
Rational geometric_sum(const Rational& base, std::int64_t lo, std::int64_t hi);

/// Chain of n nodes, node k (1-based) broadcasting: b_t = n-k-1, b_r = n-k.
WastageReport linear(std::int64_t n, std::int64_t k, const EnergyModel& em);

/// Balanced binary tree of depth d, every node at depth i broadcasting.
WastageReport binary(std::int64_t d, std::int64_t i, const FloodMode& mode, const EnergyModel& em);

/// Binary through depth s, ternary from s+1 to d. The i > s branch multiplies by 3^i
/// and the controlled i > s reception uses exponent j-i-1, both exactly as published.
WastageReport nested(std::int64_t d, std::int64_t s, std::int64_t i, const FloodMode& mode,
                     const EnergyModel& em);

/// Balanced q-ary tree of depth d.
WastageReport qary(std::int64_t q, std::int64_t d, std::int64_t i, const FloodMode& mode,
                   const EnergyModel& em);

}  // namespace wsnflood::analytic
