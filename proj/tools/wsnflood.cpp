// Copyright 2026 The wsnflood Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnflood/analytic.hpp"
#include "wsnflood/errors.hpp"
#include "wsnflood/floodsim.hpp"
#include "wsnflood/levelsector.hpp"
#include "wsnflood/report.hpp"
#include "wsnflood/serialize.hpp"
#include "wsnflood/topology.hpp"

using namespace wsnflood;
using serialize::Json;

namespace {

constexpr int kExitNoInput = 66;
constexpr int kExitCantCreate = 73;

class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, int code) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

struct Common {
    std::string et = "100";
    std::string er = "5";
    std::string format;
    std::uint64_t seed = 0;
    std::string out;

    EnergyModel energy() const {
        EnergyModel em;
        em.e_t = parse_energy(et, "--et");
        em.e_r = parse_energy(er, "--er");
        em.validate();
        return em;
    }

    report::Format fmt(report::Format fallback) const {
        return format.empty() ? fallback : report::parse_format(format);
    }

private:
    static BigInt parse_energy(const std::string& text, const char* flag) {
        const Rational v = parse_rational(text);
        if (!is_integer(v) || v < 0) {
            throw InvalidSpec(std::string(flag) + " must be a nonnegative integer number of mJ, got '" + text + "'");
        }
        return v.get_num();
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--et", c.et, "energy per transmission in mJ")->capture_default_str();
    cmd->add_option("--er", c.er, "energy per reception in mJ")->capture_default_str();
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "md"}));
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--out", c.out, "write output to this file instead of standard output");
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw IoError("cannot write " + c.out, kExitCantCreate);
    file << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path, kExitNoInput);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// "5,10,15" or "4..20" or a mix such as "2,4..6".
std::vector<std::int64_t> parse_depths(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream items(text);
    std::string item;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ParseError("bad depth '" + s + "' in '" + text + "'");
        return static_cast<std::int64_t>(v);
    };
    while (std::getline(items, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        const std::int64_t lo = number(item.substr(0, dots));
        const std::int64_t hi = number(item.substr(dots + 2));
        if (hi < lo) throw ParseError("empty depth range '" + item + "'");
        for (std::int64_t d = lo; d <= hi; ++d) out.push_back(d);
    }
    if (out.empty()) throw ParseError("no depths given");
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError("empty list '" + text + "'");
    return out;
}

int run_formula(const Common& c, report::FormulaRequest r) {
    r.em = c.energy();
    emit(c, report::render(report::evaluate_formula(r), c.fmt(report::Format::Markdown)));
    return report::kExitClean;
}

int run_tables(const Common& c, int table, bool emit_fixtures) {
    const auto format = c.fmt(report::Format::Markdown);
    if (emit_fixtures) {
        emit(c, report::render_fixtures(format));
        return report::kExitClean;
    }
    if (c.et != "100" || c.er != "5") {
        throw InvalidSpec("tables are printed for e_t = 100 and e_r = 5; --et/--er cannot change them");
    }
    std::vector<int> ids = table == 0 ? std::vector<int>{1, 2} : std::vector<int>{table};
    std::string text;
    Json all = Json::array();
    int code = report::kExitClean;
    for (int id : ids) {
        const auto t = report::reproduce_table(id);
        code = std::max(code, t.report.exit_code());
        if (format == report::Format::Json) {
            all.push_back(Json::parse(report::render(t, format)));
        } else {
            if (!text.empty()) text += "\n";
            text += report::render(t, format);
        }
    }
    if (format == report::Format::Json) text = (ids.size() == 1 ? all[0] : all).dump(2) + "\n";
    emit(c, text);
    return code;
}

int run_verify(const Common& c, report::VerifyOptions o, const std::string& p_grid) {
    if (!p_grid.empty()) o.p_grid = parse_rational_list(p_grid);
    const auto r = report::verify(o);
    emit(c, report::render(r, c.fmt(report::Format::Markdown)));
    return r.exit_code();
}

int run_series(const Common& c, report::SeriesRequest r, const std::string& depths, const std::string& mode) {
    r.em = c.energy();
    r.depths = parse_depths(depths);
    r.mode = parse_mode(mode);
    emit(c, report::render(report::series(r), c.fmt(report::Format::Csv)));
    return report::kExitClean;
}

std::string md_cell(const Rational& v) {
    return is_integer(v) ? to_string(v) : to_string(v) + " (" + to_decimal(v) + ")";
}

struct SimulateArgs {
    std::string spec;
    std::string graph;
    std::uint64_t root = 0;
    std::uint64_t i = 0;
    std::string mode = "pure";
    std::uint64_t trials = 0;
    unsigned threads = 0;
    bool per_node = false;
};

std::optional<WastageReport> published_for(const topology::TopologySpec& spec, std::int64_t i,
                                           const FloodMode& mode, const EnergyModel& em) {
    if (const auto* b = std::get_if<topology::Binary>(&spec)) {
        return analytic::binary(static_cast<std::int64_t>(b->d), i, mode, em);
    }
    if (const auto* q = std::get_if<topology::Qary>(&spec)) {
        return analytic::qary(static_cast<std::int64_t>(q->q), static_cast<std::int64_t>(q->d), i, mode, em);
    }
    if (const auto* n = std::get_if<topology::Nested>(&spec)) {
        return analytic::nested(static_cast<std::int64_t>(n->d), static_cast<std::int64_t>(n->s), i, mode, em);
    }
    return std::nullopt;
}

int run_simulate(const Common& c, const SimulateArgs& a) {
    const EnergyModel em = c.energy();
    const FloodMode mode = parse_mode(a.mode);
    if (a.spec.empty() == a.graph.empty()) throw InvalidSpec("give exactly one of --spec and --graph");

    std::optional<topology::TopologySpec> spec;
    std::vector<topology::NodeId> original_id;
    topology::Tree tree = [&] {
        if (!a.spec.empty()) {
            spec = topology::parse_spec(a.spec);
            return topology::build(*spec);
        }
        auto st = topology::extract_spanning_tree(topology::parse_edge_list(read_file(a.graph)), a.root);
        original_id = std::move(st.original_id);
        return std::move(st.tree);
    }();

    floodsim::PropagationOutcome outcome;
    if (const auto* ctl = std::get_if<Controlled>(&mode)) {
        outcome = a.trials > 0 ? floodsim::flood_controlled_mc(tree, a.i, ctl->p, a.trials, c.seed, a.threads)
                               : floodsim::flood_controlled_expectation(tree, a.i, ctl->p);
    } else {
        outcome = floodsim::flood_pure(tree, a.i);
    }
    const auto wastage = floodsim::wastage_structural(outcome, em);
    std::optional<WastageReport> published;
    if (spec) published = published_for(*spec, static_cast<std::int64_t>(a.i), mode, em);

    std::vector<std::string> notes;
    std::optional<floodsim::DiscrepancyRecord> record;
    if (published) {
        record = floodsim::compare(*published, wastage);
        if (!record->all_zero()) {
            notes.push_back("published formula gives b_t=" + to_string(published->b_t) +
                            ", b_r=" + to_string(published->b_r) + "; the tree gives b_t=" +
                            to_string(wastage.analytic_compatible.b_t) +
                            ", b_r=" + to_string(wastage.analytic_compatible.b_r));
        }
        if (const auto* n = std::get_if<topology::Nested>(&*spec); n && a.i > n->s) {
            notes.push_back("published nested counts assume 3^i nodes at depth i; this tree has 2^s*3^(i-s) = " +
                            std::to_string(tree.level(a.i).size()));
        }
    }

    const auto format = c.fmt(report::Format::Markdown);
    std::ostringstream out;
    if (format == report::Format::Json) {
        Json j{{"source", spec ? topology::to_string(*spec) : a.graph},
               {"mode", to_string(mode)},
               {"outcome", serialize::to_json(outcome, a.per_node)},
               {"wastage", serialize::to_json(wastage)}};
        if (!original_id.empty() && a.per_node) j["original_id"] = original_id;
        if (published) {
            j["published"] = serialize::to_json(*published);
            j["comparison"] = serialize::to_json(*record);
        }
        j["notes"] = notes;
        out << j.dump(2) << "\n";
    } else {
        const WastageReport& s = wastage.analytic_compatible;
        const std::pair<const char*, const Rational WastageReport::*> fields[] = {
            {"b_t", &WastageReport::b_t}, {"b_r", &WastageReport::b_r},     {"t_x", &WastageReport::t_x},
            {"r_x", &WastageReport::r_x}, {"N", &WastageReport::n_total}, {"E", &WastageReport::e_total}};
        const bool csv = format == report::Format::Csv;
        out << (csv ? "quantity,simulated,published\n" : "| quantity | simulated | published |\n|---|---|---|\n");
        for (const auto& [name, member] : fields) {
            const std::string pub = published ? to_string((*published).*member) : "";
            if (csv) {
                out << name << "," << to_string(s.*member) << "," << pub << "\n";
            } else {
                out << "| " << name << " | " << md_cell(s.*member) << " | " << (published ? md_cell((*published).*member) : "") << " |\n";
            }
        }
        if (outcome.monte_carlo) {
            const auto& mc = *outcome.monte_carlo;
            if (csv) {
                out << "std_error_b_t," << mc.std_error_b_t() << ",\nstd_error_b_r," << mc.std_error_b_r() << ",\n";
            } else {
                out << "\nMonte Carlo over " << mc.trials << " trials (seed " << mc.seed
                    << "): standard errors " << mc.std_error_b_t() << " (b_t), " << mc.std_error_b_r()
                    << " (b_r).\n";
            }
        }
        if (!csv) {
            for (const auto& n : notes) out << "\n> " << n << "\n";
        } else {
            for (const auto& n : notes) std::cerr << "note: " << n << "\n";
        }
    }
    emit(c, out.str());
    return report::kExitClean;
}

struct LsArgs {
    std::string field;
    std::string query;
    std::string mode = "ls";
    bool per_node = false;
};

int run_ls_sim(const Common& c, const LsArgs& a) {
    const EnergyModel em = c.energy();
    const auto doc = serialize::parse_field(read_file(a.field));
    const auto query = levelsector::parse_query(a.query);
    levelsector::ReplyMode mode = levelsector::LevelSector{};
    if (a.mode == "pure") {
        mode = levelsector::PureFlood{};
    } else if (a.mode != "ls") {
        const FloodMode parsed = parse_mode(a.mode);
        const auto* ctl = std::get_if<Controlled>(&parsed);
        if (!ctl) throw ParseError("unknown reply mode '" + a.mode + "'");
        mode = levelsector::ControlledFlood{ctl->p, c.seed};
    }
    const auto ledger = levelsector::run_query(doc.field, doc.nodes, em, query, mode);

    std::ostringstream out;
    switch (c.fmt(report::Format::Markdown)) {
        case report::Format::Json: {
            Json j{{"mode", levelsector::to_string(mode)}, {"query", a.query}, {"ledger", serialize::to_json(ledger)}};
            if (!a.per_node) j["ledger"].erase("per_node");
            out << j.dump(2) << "\n";
            break;
        }
        case report::Format::Csv:
            out << "mode,transmissions,receptions,energy_mj,delivered,undelivered\n"
                << levelsector::to_string(mode) << "," << ledger.transmissions << "," << ledger.receptions << ","
                << to_string(ledger.energy_mj) << "," << ledger.delivered_replies.size() << ","
                << ledger.undelivered_replies.size() << "\n";
            if (a.per_node) {
                out << "\nnode_id,transmissions,receptions,energy_mj\n";
                for (const auto& n : ledger.per_node) {
                    out << n.node_id << "," << n.transmissions << "," << n.receptions << ","
                        << to_string(n.energy_mj) << "\n";
                }
            }
            break;
        case report::Format::Markdown:
            out << "| mode | transmissions | receptions | energy (mJ) | delivered | undelivered |\n"
                << "|---|---|---|---|---|---|\n"
                << "| " << levelsector::to_string(mode) << " | " << ledger.transmissions << " | "
                << ledger.receptions << " | " << to_string(ledger.energy_mj) << " | "
                << ledger.delivered_replies.size() << " | " << ledger.undelivered_replies.size() << " |\n";
            if (a.per_node) {
                out << "\n| node | transmissions | receptions | energy (mJ) |\n|---|---|---|---|\n";
                for (const auto& n : ledger.per_node) {
                    out << "| " << n.node_id << " | " << n.transmissions << " | " << n.receptions << " | "
                        << to_string(n.energy_mj) << " |\n";
                }
            }
            break;
    }
    emit(c, out.str());
    return report::kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy wastage of flooding in tree-shaped sensor networks"};
    app.require_subcommand(1);
    Common common;
    int code = report::kExitClean;

    report::FormulaRequest formula;
    std::string formula_mode = "pure";
    auto* f = app.add_subcommand("formula", "evaluate a closed form");
    f->add_option("family", formula.family, "linear, binary, nested or qary")
        ->required()
        ->check(CLI::IsMember({"linear", "binary", "nested", "qary"}));
    f->add_option("--d", formula.d, "tree depth");
    f->add_option("--i", formula.i, "broadcasting depth");
    f->add_option("--s", formula.s, "depth of the binary region (nested)");
    f->add_option("--q", formula.q, "branching factor (qary)")->capture_default_str();
    f->add_option("--n", formula.n, "node count (linear)");
    f->add_option("--k", formula.k, "broadcasting node index (linear)");
    f->add_option("--mode", formula_mode, "pure or controlled:<p>")->capture_default_str();
    add_common(f, common);
    f->callback([&] {
        formula.mode = parse_mode(formula_mode);
        code = run_formula(common, formula);
    });

    int table = 0;
    bool emit_fixtures = false;
    auto* t = app.add_subcommand("tables", "reproduce the printed result tables");
    t->add_option("table", table, "1 or 2 (both when omitted)")->check(CLI::IsMember({1, 2}));
    t->add_flag("--emit-fixtures", emit_fixtures, "print the embedded fixture values instead");
    add_common(t, common);
    t->callback([&] { code = run_tables(common, table, emit_fixtures); });

    report::VerifyOptions verify;
    std::string p_grid;
    auto* v = app.add_subcommand("verify", "compare published formulas with the tree simulator");
    v->add_option("scope", verify.scope, "binary, nested, qary or all")
        ->check(CLI::IsMember({"binary", "nested", "qary", "all"}))
        ->capture_default_str();
    v->add_option("--d-max", verify.d_max, "largest depth")->capture_default_str();
    v->add_option("--p-grid", p_grid, "comma-separated probabilities (default 0,1/4,1/2,3/4,1)");
    v->add_option("--q", verify.q_values, "branching factors for qary")->delimiter(',');
    v->add_option("--max-nodes", verify.max_nodes, "skip trees larger than this")->capture_default_str();
    add_common(v, common);
    v->callback([&] { code = run_verify(common, verify, p_grid); });

    report::SeriesRequest series;
    std::string depths;
    std::string series_mode = "pure";
    auto* s = app.add_subcommand("series", "N and E for a list of depths");
    s->add_option("family", series.family, "linear, binary, nested or qary")
        ->required()
        ->check(CLI::IsMember({"linear", "binary", "nested", "qary"}));
    s->add_option("--i", series.i, "broadcasting depth (node index for linear)")->capture_default_str();
    s->add_option("--s", series.s, "depth of the binary region (nested)");
    s->add_option("--q", series.q, "branching factor (qary)")->capture_default_str();
    s->add_option("--d", depths, "depths, e.g. 5,10,15 or 4..20")->required();
    s->add_option("--mode", series_mode, "pure or controlled:<p>")->capture_default_str();
    s->add_flag("--ls", series.include_ls, "add the level/sector columns");
    add_common(s, common);
    s->callback([&] { code = run_series(common, series, depths, series_mode); });

    SimulateArgs sim;
    auto* m = app.add_subcommand("simulate", "flood a tree and count unnecessary involvement");
    auto* spec_opt = m->add_option("--spec", sim.spec, "binary:D, nested:S,D, qary:Q,D or linear:N");
    auto* graph_opt = m->add_option("--graph", sim.graph, "edge-list file; a BFS spanning tree is used");
    spec_opt->excludes(graph_opt);
    m->add_option("--root", sim.root, "root id for --graph")->capture_default_str();
    m->add_option("--i", sim.i, "broadcasting depth")->required();
    m->add_option("--mode", sim.mode, "pure or controlled:<p>")->capture_default_str();
    m->add_option("--trials", sim.trials, "Monte Carlo trials; exact expectation when omitted");
    m->add_option("--threads", sim.threads, "worker threads (0 = all cores)")->capture_default_str();
    m->add_flag("--nodes", sim.per_node, "include per-node values (JSON)");
    add_common(m, common);
    m->callback([&] { code = run_simulate(common, sim); });

    LsArgs ls;
    auto* l = app.add_subcommand("ls-sim", "route query replies over a placed field");
    l->add_option("--field", ls.field, "field JSON file")->required();
    l->add_option("--query", ls.query, "e.g. \"temp > 30\"")->required();
    l->add_option("--mode", ls.mode, "ls, pure or controlled:<p>")->capture_default_str();
    l->add_flag("--nodes", ls.per_node, "include the per-node breakdown");
    add_common(l, common);
    l->callback([&] { code = run_ls_sim(common, ls); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : report::kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code();
    } catch (const DisconnectedGraph& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitUsage;
    }
    return code;
}
