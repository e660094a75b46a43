// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/floodsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "wsnflood/errors.hpp"

namespace wsnflood::floodsim {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::size_t kFromBroadcaster = std::numeric_limits<std::size_t>::max();

/// Nodes strictly below the broadcasters, in level order, with parent links
/// rewritten as positions in that order.
struct Region {
    std::uint64_t depth = 0;
    std::vector<NodeId> broadcasters;
    std::vector<NodeId> order;
    std::vector<std::size_t> parent_pos;  // kFromBroadcaster when the parent broadcasts
    std::vector<std::uint8_t> relays;     // node has children to forward to
    std::vector<std::uint8_t> deep;       // depth >= i+2, so its reception is unnecessary
};

Region make_region(const Tree& tree, std::uint64_t i, std::span<const NodeId> broadcasters) {
    if (broadcasters.empty()) {
        throw DomainError("no node at broadcasting depth " + std::to_string(i));
    }
    Region region;
    region.depth = i;
    region.broadcasters.assign(broadcasters.begin(), broadcasters.end());
    std::sort(region.broadcasters.begin(), region.broadcasters.end());
    if (std::adjacent_find(region.broadcasters.begin(), region.broadcasters.end()) !=
        region.broadcasters.end()) {
        throw DomainError("broadcaster listed twice");
    }

    constexpr std::size_t kOutside = std::numeric_limits<std::size_t>::max() - 1;
    std::vector<std::size_t> pos(tree.size(), kOutside);
    for (NodeId b : region.broadcasters) {
        if (b >= tree.size()) throw DomainError("broadcaster id " + std::to_string(b) + " out of range");
        if (tree.node(b).depth != i) {
            throw DomainError("broadcaster " + std::to_string(b) + " is not at depth " + std::to_string(i));
        }
        pos[b] = kFromBroadcaster;
    }
    for (std::uint64_t m = i + 1; m <= tree.height(); ++m) {
        for (NodeId v : tree.level(m)) {
            const std::size_t parent = pos[*tree.node(v).parent];
            if (parent == kOutside) continue;
            pos[v] = region.order.size();
            region.order.push_back(v);
            region.parent_pos.push_back(parent);
            region.relays.push_back(tree.node(v).children.empty() ? 0 : 1);
            region.deep.push_back(m >= i + 2 ? 1 : 0);
        }
    }
    return region;
}

std::vector<NodeId> level_broadcasters(const Tree& tree, std::uint64_t i) {
    const auto& level = tree.level(i);
    return {level.begin(), level.end()};
}

/// Outcome from 0/1 flags indexed by node id.
PropagationOutcome assemble_flags(const Tree& tree, const Region& region, Reading reading,
                                  std::vector<std::uint8_t> tx, std::vector<std::uint8_t> rx) {
    PropagationOutcome out;
    out.reading = reading;
    out.broadcast_depth = region.depth;
    out.broadcasters = region.broadcasters;
    out.by_depth.resize(tree.height() + 1);
    for (std::uint64_t m = 0; m <= tree.height(); ++m) {
        DepthAggregate& agg = out.by_depth[m];
        agg.depth = m;
        agg.nodes = tree.level(m).size();
        unsigned long transmitters = 0;
        unsigned long receivers = 0;
        for (NodeId v : tree.level(m)) {
            transmitters += tx[v];
            receivers += rx[v];
        }
        agg.transmitters = transmitters;
        agg.receivers = receivers;
    }
    out.transmitted = NodeValues::flags(std::move(tx));
    out.received = NodeValues::flags(std::move(rx));
    return out;
}

void check_probability(const Rational& p) {
    if (p < 0 || p > 1) throw DomainError("flooding probability must lie in [0, 1], got " + wsnflood::to_string(p));
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Bernoulli(num/den) from one or more 64-bit draws, using Lemire's unbiased
/// multiply-shift reduction to [0, den).
class Coin {
public:
    Coin(const Rational& p) {
        if (!p.get_den().fits_ulong_p()) {
            throw DomainError("Monte Carlo needs a probability denominator below 2^64, got " + wsnflood::to_string(p));
        }
        num_ = p.get_num().get_ui();
        den_ = p.get_den().get_ui();
        threshold_ = (0 - den_) % den_;
    }

    bool certain() const { return num_ == den_; }
    bool never() const { return num_ == 0; }

    bool flip(SplitMix64& rng) const {
        u128 m = static_cast<u128>(rng()) * den_;
        auto low = static_cast<std::uint64_t>(m);
        while (low < threshold_) {
            m = static_cast<u128>(rng()) * den_;
            low = static_cast<std::uint64_t>(m);
        }
        return static_cast<std::uint64_t>(m >> 64) < num_;
    }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
    std::uint64_t threshold_ = 0;
};

struct TrialCounts {
    std::uint64_t b_t = 0;
    std::uint64_t b_r = 0;
};

/// One controlled flood. tx/rx are position-indexed scratch buffers sized to the region.
TrialCounts run_trial(const Region& region, const Coin& coin, SplitMix64& rng, std::vector<std::uint8_t>& tx,
                      std::vector<std::uint8_t>& rx) {
    TrialCounts counts;
    const std::size_t n = region.order.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t parent = region.parent_pos[k];
        const bool heard = parent == kFromBroadcaster || tx[parent] != 0;
        rx[k] = heard ? 1 : 0;
        bool sends = false;
        if (heard && region.relays[k]) {
            sends = coin.certain() || (!coin.never() && coin.flip(rng));
        }
        tx[k] = sends ? 1 : 0;
        counts.b_t += sends ? 1 : 0;
        counts.b_r += (heard && region.deep[k]) ? 1 : 0;
    }
    return counts;
}

struct McAccumulator {
    u128 sum_t = 0;
    u128 sum_r = 0;
    u128 sq_t = 0;
    u128 sq_r = 0;
    std::vector<std::uint64_t> tx_count;
    std::vector<std::uint64_t> rx_count;
};

BigInt to_bigint(u128 v) {
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

Rational sample_variance(u128 sum, u128 sq, std::uint64_t n) {
    if (n < 2) return 0;
    const BigInt s = to_bigint(sum);
    const BigInt count(static_cast<unsigned long>(n));
    Rational v(count * to_bigint(sq) - s * s, count * (count - 1));
    v.canonicalize();
    return v;
}

}  // namespace

NodeValues NodeValues::flags(std::vector<std::uint8_t> values) {
    NodeValues out;
    out.data_ = std::move(values);
    return out;
}

NodeValues NodeValues::frequencies(std::vector<std::uint64_t> hits, std::uint64_t trials) {
    if (trials == 0) throw DomainError("frequencies need at least one trial");
    NodeValues out;
    out.data_ = Counts{std::move(hits), trials};
    return out;
}

NodeValues NodeValues::powers(Rational base, std::vector<std::int32_t> exponents) {
    NodeValues out;
    out.data_ = Powers{std::move(base), std::move(exponents)};
    return out;
}

std::size_t NodeValues::size() const noexcept {
    return std::visit(
        [](const auto& d) -> std::size_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Counts>) {
                return d.hits.size();
            } else if constexpr (std::is_same_v<T, Powers>) {
                return d.exponents.size();
            } else {
                return d.size();
            }
        },
        data_);
}

Rational NodeValues::operator[](std::size_t v) const {
    return std::visit(
        [v](const auto& d) -> Rational {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Counts>) {
                Rational r(BigInt(static_cast<unsigned long>(d.hits.at(v))),
                           BigInt(static_cast<unsigned long>(d.trials)));
                r.canonicalize();
                return r;
            } else if constexpr (std::is_same_v<T, Powers>) {
                const std::int32_t e = d.exponents.at(v);
                return e < 0 ? Rational(0) : pow(d.base, static_cast<std::uint64_t>(e));
            } else {
                return Rational(static_cast<unsigned long>(d.at(v)));
            }
        },
        data_);
}

std::vector<Rational> NodeValues::to_vector() const {
    std::vector<Rational> out;
    out.reserve(size());
    for (std::size_t v = 0; v < size(); ++v) out.push_back((*this)[v]);
    return out;
}

bool operator==(const NodeValues& a, const NodeValues& b) {
    if (a.data_.index() == b.data_.index()) {
        if (const auto* fa = std::get_if<NodeValues::Counts>(&a.data_)) {
            const auto& fb = std::get<NodeValues::Counts>(b.data_);
            return fa->hits == fb.hits && fa->trials == fb.trials;
        }
        if (const auto* fa = std::get_if<NodeValues::Powers>(&a.data_)) {
            const auto& fb = std::get<NodeValues::Powers>(b.data_);
            if (fa->base == fb.base && fa->exponents == fb.exponents) return true;
        }
        if (const auto* fa = std::get_if<std::vector<std::uint8_t>>(&a.data_)) {
            return *fa == std::get<std::vector<std::uint8_t>>(b.data_);
        }
    }
    if (a.size() != b.size()) return false;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] != b[v]) return false;
    }
    return true;
}

std::string to_string(Reading reading) {
    switch (reading) {
        case Reading::Deterministic:
            return "deterministic";
        case Reading::Expectation:
            return "expectation";
        case Reading::MonteCarlo:
            return "monte_carlo";
    }
    return "unknown";
}

double MonteCarloStats::std_error_b_t() const {
    return trials == 0 ? 0.0 : std::sqrt(variance_b_t.get_d() / static_cast<double>(trials));
}

double MonteCarloStats::std_error_b_r() const {
    return trials == 0 ? 0.0 : std::sqrt(variance_b_r.get_d() / static_cast<double>(trials));
}

SplitMix64::result_type SplitMix64::operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

bool draw_bernoulli(const Rational& p, SplitMix64& rng) {
    check_probability(p);
    const Coin coin(p);
    if (coin.certain()) return true;
    if (coin.never()) return false;
    return coin.flip(rng);
}

std::uint64_t trial_state(std::uint64_t seed, std::uint64_t trial) {
    return mix64(seed ^ mix64(trial + 0x9e3779b97f4a7c15ULL));
}

PropagationOutcome flood_pure(const Tree& tree, std::uint64_t i) {
    const auto broadcasters = level_broadcasters(tree, i);
    return flood_pure(tree, i, broadcasters);
}

PropagationOutcome flood_pure(const Tree& tree, std::uint64_t i, std::span<const NodeId> broadcasters) {
    const Region region = make_region(tree, i, broadcasters);
    std::vector<std::uint8_t> tx(tree.size());
    std::vector<std::uint8_t> rx(tree.size());
    for (NodeId b : region.broadcasters) tx[b] = 1;
    for (std::size_t k = 0; k < region.order.size(); ++k) {
        const NodeId v = region.order[k];
        if (tx[*tree.node(v).parent]) {
            rx[v] = 1;
            tx[v] = region.relays[k];
        }
    }
    return assemble_flags(tree, region, Reading::Deterministic, std::move(tx), std::move(rx));
}

PropagationOutcome flood_controlled_expectation(const Tree& tree, std::uint64_t i, const Rational& p) {
    const auto broadcasters = level_broadcasters(tree, i);
    return flood_controlled_expectation(tree, i, p, broadcasters);
}

PropagationOutcome flood_controlled_expectation(const Tree& tree, std::uint64_t i, const Rational& p,
                                                std::span<const NodeId> broadcasters) {
    check_probability(p);
    const Region region = make_region(tree, i, broadcasters);
    // Reception along a root-to-leaf path is a product of independent retransmission
    // events, so every marginal is 0 or a power of p and one top-down pass finds it.
    std::vector<std::int32_t> tx(tree.size(), -1);
    std::vector<std::int32_t> rx(tree.size(), -1);
    for (NodeId b : region.broadcasters) tx[b] = 0;
    for (std::size_t k = 0; k < region.order.size(); ++k) {
        const NodeId v = region.order[k];
        rx[v] = tx[*tree.node(v).parent];
        if (rx[v] >= 0 && region.relays[k]) tx[v] = rx[v] + 1;
    }

    std::vector<Rational> power{1};
    auto sum_level = [&](const std::vector<std::int32_t>& exps, std::span<const NodeId> level) {
        std::vector<unsigned long> histogram;
        for (NodeId v : level) {
            if (exps[v] < 0) continue;
            const auto e = static_cast<std::size_t>(exps[v]);
            if (histogram.size() <= e) histogram.resize(e + 1, 0);
            ++histogram[e];
        }
        Rational total = 0;
        for (std::size_t e = 0; e < histogram.size(); ++e) {
            if (histogram[e] == 0) continue;
            while (power.size() <= e) power.push_back(power.back() * p);
            total += power[e] * histogram[e];
        }
        return total;
    };

    PropagationOutcome out;
    out.reading = Reading::Expectation;
    out.broadcast_depth = region.depth;
    out.broadcasters = region.broadcasters;
    out.by_depth.resize(tree.height() + 1);
    for (std::uint64_t m = 0; m <= tree.height(); ++m) {
        DepthAggregate& agg = out.by_depth[m];
        agg.depth = m;
        agg.nodes = tree.level(m).size();
        agg.transmitters = sum_level(tx, tree.level(m));
        agg.receivers = sum_level(rx, tree.level(m));
    }
    out.transmitted = NodeValues::powers(p, std::move(tx));
    out.received = NodeValues::powers(p, std::move(rx));
    return out;
}

PropagationOutcome flood_controlled_mc(const Tree& tree, std::uint64_t i, const Rational& p,
                                       std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    check_probability(p);
    if (trials < 1) throw DomainError("Monte Carlo needs at least one trial");
    const Region region = make_region(tree, i, level_broadcasters(tree, i));
    const Coin coin(p);
    const std::size_t n = region.order.size();

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    std::vector<McAccumulator> partial(threads);
    auto work = [&](unsigned worker) {
        McAccumulator& acc = partial[worker];
        acc.tx_count.assign(n, 0);
        acc.rx_count.assign(n, 0);
        std::vector<std::uint8_t> tx(n);
        std::vector<std::uint8_t> rx(n);
        const std::uint64_t begin = trials * worker / threads;
        const std::uint64_t end = trials * (worker + 1) / threads;
        for (std::uint64_t t = begin; t < end; ++t) {
            SplitMix64 rng(trial_state(seed, t));
            const TrialCounts c = run_trial(region, coin, rng, tx, rx);
            acc.sum_t += c.b_t;
            acc.sum_r += c.b_r;
            acc.sq_t += static_cast<u128>(c.b_t) * c.b_t;
            acc.sq_r += static_cast<u128>(c.b_r) * c.b_r;
            for (std::size_t k = 0; k < n; ++k) {
                acc.tx_count[k] += tx[k];
                acc.rx_count[k] += rx[k];
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }

    McAccumulator total;
    total.tx_count.assign(n, 0);
    total.rx_count.assign(n, 0);
    for (const McAccumulator& acc : partial) {
        total.sum_t += acc.sum_t;
        total.sum_r += acc.sum_r;
        total.sq_t += acc.sq_t;
        total.sq_r += acc.sq_r;
        for (std::size_t k = 0; k < n; ++k) {
            total.tx_count[k] += acc.tx_count[k];
            total.rx_count[k] += acc.rx_count[k];
        }
    }

    const BigInt trial_count(static_cast<unsigned long>(trials));
    std::vector<std::uint64_t> tx_hits(tree.size());
    std::vector<std::uint64_t> rx_hits(tree.size());
    for (NodeId b : region.broadcasters) tx_hits[b] = trials;
    for (std::size_t k = 0; k < n; ++k) {
        tx_hits[region.order[k]] = total.tx_count[k];
        rx_hits[region.order[k]] = total.rx_count[k];
    }

    PropagationOutcome out;
    out.reading = Reading::MonteCarlo;
    out.broadcast_depth = region.depth;
    out.broadcasters = region.broadcasters;
    out.by_depth.resize(tree.height() + 1);
    for (std::uint64_t m = 0; m <= tree.height(); ++m) {
        DepthAggregate& agg = out.by_depth[m];
        agg.depth = m;
        agg.nodes = tree.level(m).size();
        u128 tx_sum = 0;
        u128 rx_sum = 0;
        for (NodeId v : tree.level(m)) {
            tx_sum += tx_hits[v];
            rx_sum += rx_hits[v];
        }
        agg.transmitters = Rational(to_bigint(tx_sum), trial_count);
        agg.transmitters.canonicalize();
        agg.receivers = Rational(to_bigint(rx_sum), trial_count);
        agg.receivers.canonicalize();
    }
    out.transmitted = NodeValues::frequencies(std::move(tx_hits), trials);
    out.received = NodeValues::frequencies(std::move(rx_hits), trials);

    MonteCarloStats stats;
    stats.trials = trials;
    stats.seed = seed;
    stats.mean_b_t = Rational(to_bigint(total.sum_t), trial_count);
    stats.mean_b_t.canonicalize();
    stats.mean_b_r = Rational(to_bigint(total.sum_r), trial_count);
    stats.mean_b_r.canonicalize();
    stats.variance_b_t = sample_variance(total.sum_t, total.sq_t, trials);
    stats.variance_b_r = sample_variance(total.sum_r, total.sq_r, trials);
    out.monte_carlo = std::move(stats);
    return out;
}

PropagationOutcome flood_controlled_trial(const Tree& tree, std::uint64_t i, const Rational& p,
                                          std::uint64_t seed, std::uint64_t trial) {
    check_probability(p);
    const Region region = make_region(tree, i, level_broadcasters(tree, i));
    const Coin coin(p);
    std::vector<std::uint8_t> tx(region.order.size());
    std::vector<std::uint8_t> rx(region.order.size());
    SplitMix64 rng(trial_state(seed, trial));
    run_trial(region, coin, rng, tx, rx);

    std::vector<std::uint8_t> tx_by_id(tree.size());
    std::vector<std::uint8_t> rx_by_id(tree.size());
    for (NodeId b : region.broadcasters) tx_by_id[b] = 1;
    for (std::size_t k = 0; k < region.order.size(); ++k) {
        tx_by_id[region.order[k]] = tx[k];
        rx_by_id[region.order[k]] = rx[k];
    }
    return assemble_flags(tree, region, Reading::Deterministic, std::move(tx_by_id), std::move(rx_by_id));
}

StructuralWastage wastage_structural(const PropagationOutcome& outcome, const EnergyModel& em) {
    em.validate();
    const std::uint64_t i = outcome.broadcast_depth;
    Rational b_t = 0;
    Rational b_r = 0;
    for (const DepthAggregate& agg : outcome.by_depth) {
        if (agg.depth >= i + 1) b_t += agg.transmitters;
        if (agg.depth >= i + 2) b_r += agg.receivers;
    }
    StructuralWastage w;
    w.broadcaster_count = outcome.broadcasters.size();
    w.analytic_compatible = make_report(b_t, b_r, em);
    w.structural = w.analytic_compatible;
    w.structural.t_x = Rational(em.e_t) * Rational(static_cast<unsigned long>(w.broadcaster_count)) +
                       Rational(em.e_t) * b_t;
    w.structural.e_total = w.structural.t_x + w.structural.r_x;
    return w;
}

bool DiscrepancyRecord::all_zero() const {
    return std::all_of(fields.begin(), fields.end(), [](const FieldDifference& f) { return f.zero; });
}

DiscrepancyRecord compare(const WastageReport& analytic_report, const StructuralWastage& structural) {
    const WastageReport& s = structural.analytic_compatible;
    auto field = [](std::string name, const Rational& a, const Rational& b) {
        FieldDifference f;
        f.field = std::move(name);
        f.analytic = a;
        f.structural = b;
        f.difference = a - b;
        f.zero = f.difference == 0;
        return f;
    };
    DiscrepancyRecord record;
    record.fields = {field("b_t", analytic_report.b_t, s.b_t),
                     field("b_r", analytic_report.b_r, s.b_r),
                     field("t_x", analytic_report.t_x, s.t_x),
                     field("r_x", analytic_report.r_x, s.r_x),
                     field("n_total", analytic_report.n_total, s.n_total),
                     field("e_total", analytic_report.e_total, s.e_total)};
    return record;
}

}  // namespace wsnflood::floodsim
