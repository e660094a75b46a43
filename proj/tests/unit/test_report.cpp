// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <set>

#include "wsnflood/errors.hpp"
#include "wsnflood/report.hpp"
#include "wsnflood/serialize.hpp"

using namespace wsnflood;
using namespace wsnflood::report;
using wsnflood::serialize::Json;

namespace {

std::vector<std::string> column(const std::vector<SeriesRow>& rows, bool energy) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(to_string(energy ? r.report.e_total : r.report.n_total));
    return out;
}

}  // namespace

TEST_CASE("fixtures are embedded verbatim") {
    CHECK(table_fixture(1).rows.size() == 12);
    CHECK(table_fixture(2).rows.size() > 0);
    CHECK_THROWS_AS(table_fixture(3), DomainError);
    const auto csv = render_fixtures(Format::Csv);
    CHECK(csv.rfind("table,case,d,branch,N,E\n", 0) == 0);
    CHECK(csv.find("3183484") != std::string::npos);
    const auto json = Json::parse(render_fixtures(Format::Json));
    CHECK(json.size() == 2);
    CHECK(json[0]["rows"].size() == 12);
}

TEST_CASE("table 1 reproduces exactly") {
    const auto t = reproduce_table(1);
    CHECK(t.rows.size() == 12);
    CHECK(t.report.clean());
    CHECK(t.report.exit_code() == kExitClean);
    for (const auto& r : t.rows) {
        CHECK(Rational(r.fixture.n) == r.computed_n);
        CHECK(Rational(r.fixture.e) == r.computed.e_total);
    }
}

TEST_CASE("table 2 discrepancies are the known cells only") {
    const auto t = reproduce_table(2);
    std::set<std::string> locations;
    for (const auto& e : t.report.entries) {
        CHECK(e.known);
        CHECK(e.source == Source::FixtureCell);
        CHECK(e.difference == e.expected - e.computed);
        locations.insert(e.location);
    }
    CHECK(locations == std::set<std::string>{"table2/Case 3/d=10/i<=s/N", "table2/Case 3/d=20/i<=s/E",
                                             "table2/Case 2/d=13/i>s/N"});
    CHECK(t.report.exit_code() == kExitKnownDiscrepancies);
    CHECK_FALSE(t.report.notes.empty());
}

TEST_CASE("formula examples") {
    FormulaRequest r;
    r.family = "binary";
    r.d = 7;
    r.i = 2;
    auto w = evaluate_formula(r);
    CHECK(w.n_total == 360);
    CHECK(w.e_total == 13300);

    r.d = 3;
    w = evaluate_formula(r);
    CHECK(w.n_total == 0);
    CHECK(w.e_total == 100);

    r.family = "nested";
    r.d = 8;
    r.s = 2;
    r.i = 3;
    w = evaluate_formula(r);
    CHECK(w.n_total == 12960);
    CHECK(w.e_total == 372700);

    r.family = "linear";
    r.n = 5;
    r.k = 4;
    w = evaluate_formula(r);
    CHECK(w.b_t == 0);
    CHECK(w.b_r == 1);

    r.family = "qary";
    r.q = 2;
    r.d = 7;
    r.i = 2;
    CHECK(evaluate_formula(r).e_total == 13300);

    r.family = "ring";
    CHECK_THROWS_AS(evaluate_formula(r), DomainError);
}

TEST_CASE("series examples") {
    SeriesRequest b;
    b.family = "binary";
    b.i = 2;
    b.depths = {20, 5, 15, 10};
    b.include_ls = true;
    const auto rows = series(b);
    CHECK(column(rows, true) == std::vector<std::string>{"2740", "111860", "3603700", "115342580"});
    CHECK(rows.front().d == 5);
    for (const auto& r : rows) {
        REQUIRE(r.ls.has_value());
        CHECK(r.ls->involved == 8);
        CHECK(r.ls->energy == 440);
    }

    SeriesRequest n;
    n.family = "nested";
    n.i = 3;
    n.s = 2;
    n.depths = {7, 9, 11, 13};
    CHECK(column(series(n), false) == std::vector<std::string>{"4212", "39204", "354132", "3188484"});

    SeriesRequest bad = b;
    bad.depths = {1};
    CHECK_THROWS_AS(series(bad), DomainError);
}

TEST_CASE("verify binary") {
    VerifyOptions o;
    o.scope = "binary";
    o.d_max = 10;
    const auto r = verify(o);
    CHECK_FALSE(r.entries.empty());
    for (const auto& e : r.entries) {
        CHECK(e.known);
        CHECK(e.source == Source::PublishedVsDerived);
        CHECK(e.location.find("b_r") != std::string::npos);
    }
    CHECK(r.exit_code() == kExitKnownDiscrepancies);

    o.p_grid = {1};
    CHECK(verify(o).clean());
}

TEST_CASE("verify qary with q=2 matches verify binary") {
    VerifyOptions q;
    q.scope = "qary";
    q.q_values = {2};
    q.d_max = 8;
    VerifyOptions b;
    b.scope = "binary";
    b.d_max = 8;
    const auto rq = verify(q);
    const auto rb = verify(b);
    REQUIRE(rq.entries.size() == rb.entries.size());
    for (std::size_t k = 0; k < rq.entries.size(); ++k) {
        CHECK(rq.entries[k].expected == rb.entries[k].expected);
        CHECK(rq.entries[k].computed == rb.entries[k].computed);
        CHECK(rq.entries[k].known);
    }
    q.p_grid = {1};
    CHECK(verify(q).clean());
}

TEST_CASE("verify nested reports the multiplier") {
    VerifyOptions o;
    o.scope = "nested";
    o.d_max = 6;
    const auto r = verify(o);
    CHECK_FALSE(r.entries.empty());
    bool saw_ratio = false;
    bool saw_reduction = false;
    for (const auto& e : r.entries) {
        CHECK(e.known);
        long s = 0;
        long d = 0;
        long i = 0;
        REQUIRE(std::sscanf(e.location.c_str(), "nested/nested:%ld,%ld/i=%ld", &s, &d, &i) == 3);
        if (e.location.find("/p=1/") != std::string::npos) {
            saw_reduction = true;
            CHECK(i > s);
            CHECK(e.location.substr(e.location.size() - 3) == "b_r");
            continue;
        }
        if (i > s && e.computed != 0) {
            saw_ratio = true;
            CHECK(e.expected / e.computed == pow(Rational(3, 2), static_cast<std::uint64_t>(s)));
        }
    }
    CHECK(saw_ratio);
    CHECK(saw_reduction);
}

TEST_CASE("renderers") {
    FormulaRequest r;
    r.family = "binary";
    r.d = 7;
    r.i = 2;
    const auto w = evaluate_formula(r);
    CHECK(render(w, Format::Csv) == "b_t,b_r,t_x,r_x,N,E\n120,240,12100,1200,360,13300\n");
    CHECK(serialize::wastage_from_json(Json::parse(render(w, Format::Json))) == w);
    CHECK(render(w, Format::Markdown).find("| E | 13300 | 13300.000000 |") != std::string::npos);

    r.mode = Controlled{Rational(1, 3)};
    const auto c = evaluate_formula(r);
    CHECK(serialize::wastage_from_json(Json::parse(render(c, Format::Json))) == c);

    const auto t2 = reproduce_table(2);
    const auto md = render(t2, Format::Markdown);
    CHECK(md.find("**no**") != std::string::npos);
    const auto j = Json::parse(render(t2, Format::Json));
    CHECK(j["discrepancies"]["entries"].size() == 3);
    CHECK(render(t2.report, Format::Csv).rfind("source,location", 0) == 0);
    CHECK(render(DiscrepancyReport{}, Format::Markdown) == "No discrepancies.\n");

    CHECK(parse_format("md") == Format::Markdown);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("json") == Format::Json);
    CHECK_THROWS_AS(parse_format("xml"), ParseError);
}
