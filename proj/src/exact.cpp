// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include "wsnflood/exact.hpp"

#include <algorithm>
#include <cctype>

#include "wsnflood/errors.hpp"

namespace wsnflood {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParseError("not a rational number: '" + std::string(whole) + "'");
    }
    BigInt out(std::string(s), 10);
    return negative ? BigInt(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw ParseError("not a rational number: '" + std::string(text) + "'");
        }
        BigInt scale = pow(BigInt(10), frac_part.size());
        BigInt whole = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part), 10);
        BigInt frac = frac_part.empty() ? BigInt(0) : BigInt(std::string(frac_part), 10);
        Rational r(whole * scale + frac, scale);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text, text));
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
    Rational canonical = value;
    canonical.canonicalize();
    if (canonical.get_den() == 1) return canonical.get_num().get_str(10);
    return canonical.get_num().get_str(10) + "/" + canonical.get_den().get_str(10);
}

std::string to_decimal(const Rational& value, int digits) {
    const bool negative = sgn(value) < 0;
    Rational magnitude = abs(value);
    BigInt scale = pow(BigInt(10), static_cast<std::uint64_t>(std::max(digits, 0)));
    // round half away from zero: floor(|v|*scale + 1/2)
    Rational scaled = magnitude * scale + Rational(1, 2);
    BigInt rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());

    std::string digits_str = rounded.get_str(10);
    if (digits > 0) {
        if (digits_str.size() <= static_cast<std::size_t>(digits)) {
            digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
        }
        digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
    }
    if (negative && rounded != 0) digits_str.insert(0, "-");
    return digits_str;
}

double to_double(const Rational& value) { return value.get_d(); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational pow(const Rational& base, std::uint64_t exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

BigInt pow(const BigInt& base, std::uint64_t exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

}  // namespace wsnflood
