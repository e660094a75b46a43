// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/analytic.hpp"

#include "wsnflood/errors.hpp"

namespace wsnflood {

void EnergyModel::validate() const {
    if (e_t < 0 || e_r < 0) throw DomainError("energy costs must be nonnegative");
}

void validate(const FloodMode& mode) {
    if (const auto* c = std::get_if<Controlled>(&mode)) {
        if (c->p < 0 || c->p > 1) {
            throw DomainError("flooding probability must lie in [0, 1], got " + to_string(c->p));
        }
    }
}

std::string to_string(const FloodMode& mode) {
    if (const auto* c = std::get_if<Controlled>(&mode)) return "controlled:" + to_string(c->p);
    return "pure";
}

FloodMode parse_mode(const std::string& text) {
    if (text == "pure") return Pure{};
    const std::string prefix = "controlled:";
    if (text.rfind(prefix, 0) == 0) {
        FloodMode mode = Controlled{parse_rational(text.substr(prefix.size()))};
        validate(mode);
        return mode;
    }
    throw ParseError("unknown flooding mode '" + text + "' (expected pure or controlled:<p>)");
}

WastageReport make_report(Rational b_t, Rational b_r, const EnergyModel& em) {
    WastageReport r;
    r.b_t = std::move(b_t);
    r.b_r = std::move(b_r);
    r.t_x = Rational(em.e_t) + Rational(em.e_t) * r.b_t;
    r.r_x = Rational(em.e_r) * r.b_r;
    r.n_total = r.b_t + r.b_r;
    r.e_total = r.t_x + r.r_x;
    return r;
}

}  // namespace wsnflood

namespace wsnflood::analytic {

namespace {

Rational signed_pow(const Rational& base, std::int64_t exponent) {
    if (exponent >= 0) return pow(base, static_cast<std::uint64_t>(exponent));
    if (base == 0) throw DomainError("zero raised to a negative power");
    return 1 / pow(base, static_cast<std::uint64_t>(-exponent));
}

Rational probability(const FloodMode& mode) {
    validate(mode);
    if (const auto* c = std::get_if<Controlled>(&mode)) return c->p;
    return 1;
}

void check_depths(std::int64_t d, std::int64_t i) {
    if (d < 0) throw DomainError("depth d must be nonnegative, got " + std::to_string(d));
    if (i < 0 || i > d) {
        throw DomainError("broadcasting depth i must satisfy 0 <= i <= d (i=" + std::to_string(i) +
                          ", d=" + std::to_string(d) + ")");
    }
}

}  // namespace

Rational geometric_sum(const Rational& base, std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return 0;
    if (base == 1) return Rational(hi - lo + 1);
    if (base == 0) {
        if (lo < 0) throw DomainError("zero raised to a negative power");
        return lo == 0 ? 1 : 0;
    }
    return (signed_pow(base, hi + 1) - signed_pow(base, lo)) / (base - 1);
}

WastageReport linear(std::int64_t n, std::int64_t k, const EnergyModel& em) {
    em.validate();
    if (k < 1 || k > n - 1) {
        throw DomainError("linear broadcasting index must satisfy 1 <= k <= n-1 (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    }
    return make_report(Rational(n - k - 1), Rational(n - k), em);
}

WastageReport binary(std::int64_t d, std::int64_t i, const FloodMode& mode, const EnergyModel& em) {
    em.validate();
    check_depths(d, i);
    const Rational base = 2 * probability(mode);
    // Term-by-term on purpose: qary() uses the closed form, and the two are cross-checked.
    Rational tx_sum = 0;
    Rational rx_sum = 0;
    for (std::int64_t j = i + 2; j <= d; ++j) {
        tx_sum += pow(base, static_cast<std::uint64_t>(j - i - 1));
        rx_sum += pow(base, static_cast<std::uint64_t>(j - i));
    }
    const Rational broadcasters(pow(BigInt(2), static_cast<std::uint64_t>(i)));
    return make_report(broadcasters * tx_sum, broadcasters * rx_sum, em);
}

WastageReport nested(std::int64_t d, std::int64_t s, std::int64_t i, const FloodMode& mode,
                     const EnergyModel& em) {
    em.validate();
    check_depths(d, i);
    if (s < 0 || s > d) {
        throw DomainError("binary-region depth s must satisfy 0 <= s <= d (s=" + std::to_string(s) +
                          ", d=" + std::to_string(d) + ")");
    }
    const Rational p = probability(mode);
    const bool pure = std::holds_alternative<Pure>(mode);
    const Rational ternary = 3 * p;
    const Rational binary_base = 2 * p;

    if (i > s) {
        const Rational multiplier(pow(BigInt(3), static_cast<std::uint64_t>(i)));
        // sum_{j=i+2}^{d} base^(j-i-1)  ==  sum_{m=1}^{d-i-1} base^m
        Rational b_t = multiplier * geometric_sum(ternary, 1, d - i - 1);
        // Pure reception uses 3^(j-i); the controlled form is printed with (3p)^(j-i-1).
        Rational b_r = pure ? multiplier * geometric_sum(ternary, 2, d - i)
                            : multiplier * geometric_sum(ternary, 1, d - i - 1);
        return make_report(std::move(b_t), std::move(b_r), em);
    }

    const Rational binary_part =
        Rational(pow(BigInt(2), static_cast<std::uint64_t>(i))) * geometric_sum(binary_base, 2, s - i);
    const Rational region(pow(BigInt(2), static_cast<std::uint64_t>(s)));
    Rational b_t = binary_part + region * geometric_sum(ternary, 0, d - s - 1);
    Rational b_r = binary_part + region * geometric_sum(ternary, 1, d - s);
    return make_report(std::move(b_t), std::move(b_r), em);
}

WastageReport qary(std::int64_t q, std::int64_t d, std::int64_t i, const FloodMode& mode,
                   const EnergyModel& em) {
    em.validate();
    if (q < 1) throw DomainError("branching factor q must be >= 1, got " + std::to_string(q));
    check_depths(d, i);
    const Rational base = Rational(q) * probability(mode);
    const Rational broadcasters(pow(BigInt(q), static_cast<std::uint64_t>(i)));
    return make_report(broadcasters * geometric_sum(base, 1, d - i - 1),
                       broadcasters * geometric_sum(base, 2, d - i), em);
}

}  // namespace wsnflood::analytic
