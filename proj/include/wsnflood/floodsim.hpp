// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wsnflood/analytic.hpp"
#include "wsnflood/exact.hpp"
#include "wsnflood/topology.hpp"

namespace wsnflood::floodsim {

using topology::NodeId;
using topology::Tree;

/// How to read the per-node values of an outcome.
enum class Reading {
    Deterministic,  // 0/1 flags from a pure flood or a single traced trial
    Expectation,    // exact probabilities from the tree DP
    MonteCarlo,     // empirical frequencies over many trials
};

std::string to_string(Reading reading);

/// Per-node values indexed by node id, stored compactly for each reading: 0/1 flags,
/// hit counts over a number of trials, or powers of a common base.
class NodeValues {
public:
    NodeValues() = default;
    static NodeValues flags(std::vector<std::uint8_t> values);
    static NodeValues frequencies(std::vector<std::uint64_t> hits, std::uint64_t trials);
    /// base^exponents[v], with a negative exponent standing for 0.
    static NodeValues powers(Rational base, std::vector<std::int32_t> exponents);

    std::size_t size() const noexcept;
    Rational operator[](std::size_t v) const;
    std::vector<Rational> to_vector() const;

    friend bool operator==(const NodeValues& a, const NodeValues& b);

private:
    struct Counts {
        std::vector<std::uint64_t> hits;
        std::uint64_t trials = 1;
    };
    struct Powers {
        Rational base;
        std::vector<std::int32_t> exponents;
    };
    std::variant<std::vector<std::uint8_t>, Counts, Powers> data_;
};

struct DepthAggregate {
    std::uint64_t depth = 0;
    std::size_t nodes = 0;
    Rational transmitters;  // (expected) number of nodes at this depth that transmit
    Rational receivers;     // (expected) number of nodes at this depth that receive
};

struct MonteCarloStats {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Rational mean_b_t;
    Rational mean_b_r;
    Rational variance_b_t;  // unbiased sample variance; 0 for a single trial
    Rational variance_b_r;

    /// sqrt(variance / trials)
    double std_error_b_t() const;
    double std_error_b_r() const;
};

/// Result of flooding from one depth. Broadcasters transmit with certainty and are not
/// counted as receivers; every other node receives iff its parent transmitted, and
/// retransmits (certainly, or with probability p) only if it has children to reach.
struct PropagationOutcome {
    Reading reading = Reading::Deterministic;
    std::uint64_t broadcast_depth = 0;
    std::vector<NodeId> broadcasters;
    NodeValues transmitted;
    NodeValues received;
    std::vector<DepthAggregate> by_depth;  // index == depth
    std::optional<MonteCarloStats> monte_carlo;
};

/// Every node at depth i broadcasts. Throws DomainError when depth i is empty.
PropagationOutcome flood_pure(const Tree& tree, std::uint64_t i);
/// Explicit broadcaster set; all of them must sit at depth i.
PropagationOutcome flood_pure(const Tree& tree, std::uint64_t i, std::span<const NodeId> broadcasters);

/// Exact reception/transmission probabilities: p^(m-i-1) and p^(m-i) at depth m.
PropagationOutcome flood_controlled_expectation(const Tree& tree, std::uint64_t i, const Rational& p);
PropagationOutcome flood_controlled_expectation(const Tree& tree, std::uint64_t i, const Rational& p,
                                                std::span<const NodeId> broadcasters);

/// Trial t draws from SplitMix64 started at trial_state(seed, t), so every trial is a
/// pure function of (seed, t). Trials are split across `threads` workers (0 = hardware
/// concurrency); results are bitwise identical for any thread count.
/// p's denominator must fit in 64 bits.
PropagationOutcome flood_controlled_mc(const Tree& tree, std::uint64_t i, const Rational& p,
                                       std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

/// The single trial t of flood_controlled_mc(seed, ...) as 0/1 flags.
PropagationOutcome flood_controlled_trial(const Tree& tree, std::uint64_t i, const Rational& p,
                                          std::uint64_t seed, std::uint64_t trial);

/// Starting state of the generator used by trial t.
std::uint64_t trial_state(std::uint64_t seed, std::uint64_t trial);

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

private:
    std::uint64_t state_;
};

/// One Bernoulli(p) draw, exact for any p whose denominator fits in 64 bits.
bool draw_bernoulli(const Rational& p, SplitMix64& rng);

struct StructuralWastage {
    /// Charges e_t for every broadcaster.
    WastageReport structural;
    /// Charges a single e_t for the broadcast, like the closed forms.
    WastageReport analytic_compatible;
    std::size_t broadcaster_count = 0;
};

/// b_t counts transmitters below the broadcasting depth, b_r counts receivers at
/// depth i+2 and deeper; depth i+1 receptions are the useful ones.
StructuralWastage wastage_structural(const PropagationOutcome& outcome, const EnergyModel& em);

struct FieldDifference {
    std::string field;
    Rational analytic;
    Rational structural;
    Rational difference;  // analytic - structural
    bool zero = true;
};

struct DiscrepancyRecord {
    std::array<FieldDifference, 6> fields;  // b_t, b_r, t_x, r_x, n_total, e_total
    bool all_zero() const;
};

/// Field-by-field comparison against the analytic-compatible structural reading.
DiscrepancyRecord compare(const WastageReport& analytic_report, const StructuralWastage& structural);

}  // namespace wsnflood::floodsim
