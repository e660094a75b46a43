// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "wsnflood/analytic.hpp"
#include "wsnflood/errors.hpp"

using namespace wsnflood;
using namespace wsnflood::analytic;

namespace {

const EnergyModel kDefaultEnergy{100, 5};

// Literal transcription of the printed sums, one term at a time.
Rational naive_sum(const Rational& base, std::int64_t lo, std::int64_t hi, std::int64_t shift) {
    Rational total = 0;
    for (std::int64_t j = lo; j <= hi; ++j) {
        Rational term = 1;
        for (std::int64_t e = 0; e < j - shift; ++e) term *= base;
        total += term;
    }
    return total;
}

struct Counts {
    Rational b_t;
    Rational b_r;
};

Counts naive_nested(std::int64_t d, std::int64_t s, std::int64_t i, const Rational& p, bool pure) {
    const Rational three = 3 * p;
    const Rational two = 2 * p;
    if (i > s) {
        const Rational m = pow(Rational(3), static_cast<std::uint64_t>(i));
        Rational bt = m * naive_sum(three, i + 2, d, i + 1);
        Rational br = m * (pure ? naive_sum(three, i + 2, d, i) : naive_sum(three, i + 2, d, i + 1));
        return {bt, br};
    }
    const Rational head = pow(Rational(2), static_cast<std::uint64_t>(i)) * naive_sum(two, i + 2, s, i);
    const Rational region = pow(Rational(2), static_cast<std::uint64_t>(s));
    return {head + region * naive_sum(three, 1, d - s, 1), head + region * naive_sum(three, 1, d - s, 0)};
}

Counts naive_qary(std::int64_t q, std::int64_t d, std::int64_t i, const Rational& p) {
    const Rational base = Rational(q) * p;
    const Rational m = pow(Rational(q), static_cast<std::uint64_t>(i));
    return {m * naive_sum(base, i + 2, d, i + 1), m * naive_sum(base, i + 2, d, i)};
}

const Rational kGrid[] = {0, Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4), 1};

}  // namespace

TEST_CASE("geometric_sum") {
    CHECK(geometric_sum(2, 1, 4) == 30);
    CHECK(geometric_sum(1, 0, 5) == 6);
    CHECK(geometric_sum(3, 5, 4) == 0);
    CHECK(geometric_sum(0, 0, 3) == 1);
    CHECK(geometric_sum(0, 1, 3) == 0);
    CHECK(geometric_sum(Rational(1, 2), -2, 1) == Rational(4 + 2 + 1) + Rational(1, 2));
    CHECK_THROWS_AS(geometric_sum(0, -1, 2), DomainError);

    for (const Rational& base : {Rational(-2), Rational(2, 3), Rational(5), Rational(-1), Rational(7, 2)}) {
        for (std::int64_t lo = -3; lo <= 4; ++lo) {
            for (std::int64_t hi = lo - 2; hi <= 6; ++hi) {
                Rational expected = 0;
                for (std::int64_t m = lo; m <= hi; ++m) {
                    expected += m >= 0 ? pow(base, static_cast<std::uint64_t>(m))
                                       : Rational(1) / pow(base, static_cast<std::uint64_t>(-m));
                }
                CHECK(geometric_sum(base, lo, hi) == expected);
            }
        }
    }
}

TEST_CASE("linear chain") {
    auto r = linear(10, 3, kDefaultEnergy);
    CHECK(r.b_t == 6);
    CHECK(r.t_x == 700);
    CHECK(r.b_r == 7);
    CHECK(r.r_x == 35);

    r = linear(5, 4, kDefaultEnergy);
    CHECK(r.b_t == 0);
    CHECK(r.t_x == 100);
    CHECK(r.b_r == 1);
    CHECK(r.r_x == 5);

    r = linear(2, 1, EnergyModel{0, 0});
    CHECK(r.b_t == 0);
    CHECK(r.b_r == 1);
    CHECK(r.e_total == 0);

    CHECK_THROWS_AS(linear(5, 5, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(linear(5, 0, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(linear(1, 1, kDefaultEnergy), DomainError);
}

TEST_CASE("binary pure") {
    auto r = binary(4, 2, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 8);
    CHECK(r.b_r == 16);
    CHECK(r.n_total == 24);
    CHECK(r.e_total == 980);

    r = binary(13, 2, Pure{}, kDefaultEnergy);
    CHECK(r.n_total == 24552);
    CHECK(r.e_total == 900340);

    r = binary(3, 2, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 0);
    CHECK(r.b_r == 0);
    CHECK(r.t_x == 100);
    CHECK(r.e_total == 100);
}

TEST_CASE("binary controlled") {
    auto r = binary(5, 2, Controlled{1}, kDefaultEnergy);
    CHECK(r.n_total == 72);
    CHECK(r.e_total == 2740);
    CHECK(r == binary(5, 2, Pure{}, kDefaultEnergy));

    r = binary(5, 2, Controlled{Rational(1, 2)}, kDefaultEnergy);
    CHECK(r.b_t == 8);
    CHECK(r.b_r == 8);
    CHECK(r.t_x == 900);
    CHECK(r.r_x == 40);
}

TEST_CASE("binary domain errors") {
    CHECK_THROWS_AS(binary(3, 4, Pure{}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(binary(3, -1, Pure{}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(binary(3, 1, Controlled{Rational(3, 2)}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(binary(3, 1, Controlled{-1}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(binary(3, 1, Pure{}, EnergyModel{-1, 5}), DomainError);
}

TEST_CASE("nested pure") {
    auto r = nested(5, 2, 3, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 81);
    CHECK(r.b_r == 243);
    CHECK(r.n_total == 324);
    CHECK(r.e_total == 9415);

    r = nested(7, 4, 2, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 224);
    CHECK(r.b_r == 640);
    CHECK(r.e_total == 25700);

    r = nested(20, 2, 3, Pure{}, kDefaultEnergy);
    CHECK(r.n_total == BigInt("6973568640"));
    CHECK(r.e_total == BigInt("200490098500"));

    r = nested(4, 2, 3, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 0);
    CHECK(r.b_r == 0);

    CHECK_THROWS_AS(nested(4, 5, 1, Pure{}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(nested(4, 2, 5, Pure{}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(nested(4, -1, 1, Pure{}, kDefaultEnergy), DomainError);
}

TEST_CASE("nested matches a literal transcription") {
    for (std::int64_t d = 0; d <= 9; ++d) {
        for (std::int64_t s = 0; s <= d; ++s) {
            for (std::int64_t i = 0; i <= d; ++i) {
                CAPTURE(d);
                CAPTURE(s);
                CAPTURE(i);
                const auto pure = naive_nested(d, s, i, 1, true);
                const auto r = nested(d, s, i, Pure{}, kDefaultEnergy);
                CHECK(r.b_t == pure.b_t);
                CHECK(r.b_r == pure.b_r);
                for (const Rational& p : kGrid) {
                    const auto c = naive_nested(d, s, i, p, false);
                    const auto rc = nested(d, s, i, Controlled{p}, kDefaultEnergy);
                    CHECK(rc.b_t == c.b_t);
                    CHECK(rc.b_r == c.b_r);
                }
            }
        }
    }
}

TEST_CASE("qary") {
    auto r = qary(2, 6, 2, Pure{}, kDefaultEnergy);
    CHECK(r.n_total == 168);
    CHECK(r.e_total == 6260);
    CHECK(r == binary(6, 2, Pure{}, kDefaultEnergy));

    r = qary(3, 5, 3, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 81);
    CHECK(r.b_r == 243);

    r = qary(1, 5, 1, Pure{}, kDefaultEnergy);
    CHECK(r.b_t == 3);
    CHECK(r.b_r == 3);

    CHECK_THROWS_AS(qary(0, 5, 1, Pure{}, kDefaultEnergy), DomainError);
    CHECK_THROWS_AS(qary(2, 5, 6, Pure{}, kDefaultEnergy), DomainError);

    for (std::int64_t q = 1; q <= 6; ++q) {
        for (std::int64_t d = 0; d <= 9; ++d) {
            for (std::int64_t i = 0; i <= d; ++i) {
                for (const Rational& p : kGrid) {
                    const auto expected = naive_qary(q, d, i, p);
                    const auto got = qary(q, d, i, Controlled{p}, kDefaultEnergy);
                    REQUIRE(got.b_t == expected.b_t);
                    REQUIRE(got.b_r == expected.b_r);
                }
            }
        }
    }
}

TEST_CASE("controlled p=1 reduces to pure") {
    for (std::int64_t d = 0; d <= 12; ++d) {
        for (std::int64_t i = 0; i <= d; ++i) {
            REQUIRE(binary(d, i, Controlled{1}, kDefaultEnergy) == binary(d, i, Pure{}, kDefaultEnergy));
            for (std::int64_t q = 1; q <= 5; ++q) {
                REQUIRE(qary(q, d, i, Controlled{1}, kDefaultEnergy) == qary(q, d, i, Pure{}, kDefaultEnergy));
            }
            for (std::int64_t s = 0; s <= d; ++s) {
                const auto pure = nested(d, s, i, Pure{}, kDefaultEnergy);
                const auto controlled = nested(d, s, i, Controlled{1}, kDefaultEnergy);
                REQUIRE(controlled.b_t == pure.b_t);
                if (i <= s) {
                    REQUIRE(controlled == pure);
                } else {
                    // The printed controlled reception for i > s carries exponent j-i-1, so at
                    // p = 1 it collapses to the transmission count rather than the pure reception.
                    REQUIRE(controlled.b_r == pure.b_t);
                }
            }
        }
    }
}

TEST_CASE("controlled p=0 leaves only the broadcaster's transmission") {
    for (std::int64_t d = 0; d <= 12; ++d) {
        for (std::int64_t i = 0; i <= d; ++i) {
            for (const auto& r : {binary(d, i, Controlled{0}, kDefaultEnergy), qary(3, d, i, Controlled{0}, kDefaultEnergy)}) {
                REQUIRE(r.b_t == 0);
                REQUIRE(r.b_r == 0);
                REQUIRE(r.t_x == kDefaultEnergy.e_t);
            }
        }
    }
}

TEST_CASE("qary(2) equals binary") {
    for (std::int64_t d = 0; d <= 12; ++d) {
        for (std::int64_t i = 0; i <= d; ++i) {
            REQUIRE(qary(2, d, i, Pure{}, kDefaultEnergy) == binary(d, i, Pure{}, kDefaultEnergy));
            for (const Rational& p : kGrid) {
                REQUIRE(qary(2, d, i, Controlled{p}, kDefaultEnergy) == binary(d, i, Controlled{p}, kDefaultEnergy));
            }
        }
    }
}

TEST_CASE("pure counts are integral and nondecreasing in d") {
    for (std::int64_t i = 0; i <= 6; ++i) {
        WastageReport prev_b = binary(i, i, Pure{}, kDefaultEnergy);
        WastageReport prev_q = qary(4, i, i, Pure{}, kDefaultEnergy);
        for (std::int64_t d = i + 1; d <= 16; ++d) {
            const auto b = binary(d, i, Pure{}, kDefaultEnergy);
            const auto q = qary(4, d, i, Pure{}, kDefaultEnergy);
            CHECK(is_integer(b.b_t));
            CHECK(is_integer(b.b_r));
            CHECK(b.b_t >= prev_b.b_t);
            CHECK(b.b_r >= prev_b.b_r);
            CHECK(q.b_t >= prev_q.b_t);
            CHECK(q.b_r >= prev_q.b_r);
            prev_b = b;
            prev_q = q;
            for (std::int64_t s = 0; s <= d; ++s) {
                const auto n = nested(d, s, i, Pure{}, kDefaultEnergy);
                CHECK(is_integer(n.b_t));
                CHECK(is_integer(n.b_r));
                if (s <= d - 1) CHECK(n.b_t >= nested(d - 1, s, i, Pure{}, kDefaultEnergy).b_t);
            }
        }
    }
}

TEST_CASE("controlled denominators divide den(p)^(d-i)") {
    for (const Rational& p : kGrid) {
        for (std::int64_t d = 0; d <= 10; ++d) {
            for (std::int64_t i = 0; i <= d; ++i) {
                const BigInt bound = pow(p.get_den(), static_cast<std::uint64_t>(d - i));
                for (const auto& r : {binary(d, i, Controlled{p}, kDefaultEnergy), qary(5, d, i, Controlled{p}, kDefaultEnergy)}) {
                    CHECK(mpz_divisible_p(bound.get_mpz_t(), r.b_t.get_den_mpz_t()) != 0);
                    CHECK(mpz_divisible_p(bound.get_mpz_t(), r.b_r.get_den_mpz_t()) != 0);
                    CHECK(r.b_t >= 0);
                    CHECK(r.b_r >= 0);
                }
            }
        }
    }
}

TEST_CASE("energy identities hold for every report") {
    const EnergyModel em{37, 3};
    for (std::int64_t d = 0; d <= 8; ++d) {
        for (std::int64_t i = 0; i <= d; ++i) {
            for (const auto& r : {binary(d, i, Controlled{Rational(2, 3)}, em), nested(d, d / 2, i, Pure{}, em),
                                  qary(3, d, i, Controlled{Rational(1, 5)}, em)}) {
                CHECK(r.t_x == Rational(em.e_t) * (1 + r.b_t));
                CHECK(r.r_x == Rational(em.e_r) * r.b_r);
                CHECK(r.n_total == r.b_t + r.b_r);
                CHECK(r.e_total == r.t_x + r.r_x);
            }
        }
    }
}

TEST_CASE("parse_mode") {
    CHECK(parse_mode("pure") == FloodMode{Pure{}});
    CHECK(parse_mode("controlled:1/2") == FloodMode{Controlled{Rational(1, 2)}});
    CHECK(parse_mode("controlled:0.25") == FloodMode{Controlled{Rational(1, 4)}});
    CHECK(to_string(parse_mode("controlled:3/4")) == "controlled:3/4");
    CHECK_THROWS_AS(parse_mode("controlled:3/2"), DomainError);
    CHECK_THROWS_AS(parse_mode("controlled:"), ParseError);
    CHECK_THROWS_AS(parse_mode("gossip"), ParseError);
}
