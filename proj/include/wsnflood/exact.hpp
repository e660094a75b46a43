// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wsnflood {

// Counts grow like q^d, so every count and energy is carried exactly.
using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3/4", "0.25" or "1e-3"-free decimals into a canonical rational.
Rational parse_rational(std::string_view text);

/// "num" for integers, "num/den" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Fixed-point decimal rendering rounded half away from zero; never scientific.
std::string to_decimal(const Rational& value, int digits = 6);

double to_double(const Rational& value);

bool is_integer(const Rational& value);

/// base^exponent for a nonnegative exponent.
Rational pow(const Rational& base, std::uint64_t exponent);
BigInt pow(const BigInt& base, std::uint64_t exponent);

}  // namespace wsnflood
