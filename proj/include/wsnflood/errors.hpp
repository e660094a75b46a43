// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsnflood {

/// Topology description violates its own invariants (e.g. Nested with s > d).
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters outside the domain where a formula or simulation is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Some nodes cannot be reached from the root / base station.
class DisconnectedGraph : public std::runtime_error {
public:
    DisconnectedGraph(const std::string& what, std::vector<std::size_t> unreachable)
        : std::runtime_error(what), unreachable_(std::move(unreachable)) {}

    const std::vector<std::size_t>& unreachable() const noexcept { return unreachable_; }

private:
    std::vector<std::size_t> unreachable_;
};

/// Placements beyond the outermost ring of a field.
class OutOfRange : public std::out_of_range {
public:
    OutOfRange(const std::string& what, std::vector<std::size_t> nodes)
        : std::out_of_range(what), nodes_(std::move(nodes)) {}

    const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

private:
    std::vector<std::size_t> nodes_;
};

/// A node sits exactly on the base station, so its bearing is undefined.
class DegeneratePosition : public std::invalid_argument {
public:
    DegeneratePosition(const std::string& what, std::vector<std::size_t> nodes)
        : std::invalid_argument(what), nodes_(std::move(nodes)) {}

    const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

private:
    std::vector<std::size_t> nodes_;
};

/// Malformed textual input (edge lists, JSON documents, rationals, queries).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wsnflood
