/// Command-line front end: dual-graph arithmetic, table regeneration,
/// enumeration searches, construction scripts, plane-curve checks, and the
/// full verification battery. Exit codes: 0 all checks pass, 1 at least
/// one check failed, 2 usage or input error.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "workbench/acceptance.hpp"
#include "workbench/diophantine.hpp"
#include "workbench/dualgraph.hpp"
#include "workbench/lattice.hpp"
#include "workbench/planecurve.hpp"
#include "workbench/rational.hpp"
#include "workbench/report.hpp"

#ifndef WORKBENCH_DATA_DIR
#define WORKBENCH_DATA_DIR "fixtures"
#endif

namespace {

using namespace workbench;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dir_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string base_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string rows_line(const std::vector<std::vector<long>>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += out.empty() ? "(" : " (";
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(r[i]);
        }
        out += ")";
    }
    return out.empty() ? "(none)" : out;
}

std::string join_rats(const std::vector<Rat>& v) {
    std::string out;
    for (const auto& r : v) {
        if (!out.empty()) out += ", ";
        out += rat_str(r);
    }
    return out;
}

// --- graph ------------------------------------------------------------

Report cmd_graph(const std::string& expr, const std::string& what) {
    const DynkinType t = parse_dynkin(expr);
    Report rep;
    rep.command = "graph " + expr + " " + what;
    const bool multi = t.components.size() > 1;
    const bool all = what == "all";
    auto suffix = [&](const DualGraph& g) { return multi || all ? "/" + serialize(g) : ""; };

    if (all)
        rep.add_eq("canonical-form", expr, serialize(t), serialize(t));
    Rat max_coeff, gap_total;
    Int det_product(1);
    bool first = true, klt_all = true;
    for (const auto& g : t.components) {
        const std::string label = serialize(g);
        if (what == "coeff" || all) {
            const Rat c = coefficient(g);
            rep.add_eq("coefficient" + suffix(g), label, rat_str(c), rat_str(c));
            max_coeff = first ? c : std::max(max_coeff, c);
        }
        if (what == "gap" || all) {
            const Rat gp = gap(g);
            rep.add_eq("gap" + suffix(g), label, rat_str(gp), rat_str(gp));
            rep.add_eq("gap-floor" + suffix(g), label, gap_floor(g).get_str(),
                       gap_floor(g).get_str());
            gap_total += gp;
        }
        if (what == "det" || all) {
            const Int d = determinant(g);
            rep.add_eq("determinant" + suffix(g), label, d.get_str(), d.get_str());
            det_product *= d;
        }
        if (what == "discrepancies" || all) {
            const DiscrepancyVector dv = discrepancies(g);
            rep.add_eq("discrepancies" + suffix(g), label, join_rats(dv.entries),
                       join_rats(dv.entries));
            klt_all = klt_all && dv.klt;
        }
        first = false;
    }
    if (multi) {
        if (what == "coeff" || all)
            rep.add_eq("coefficient/max", expr, rat_str(max_coeff), rat_str(max_coeff));
        if (what == "gap" || all)
            rep.add_eq("gap/total", expr, rat_str(gap_total), rat_str(gap_total));
        if (what == "det" || all)
            rep.add_eq("determinant/product", expr, det_product.get_str(),
                       det_product.get_str());
    }
    if (all) {
        const char* k = klt_all ? "true" : "false";
        rep.add_eq("klt", expr, k, k);
    }
    return rep;
}

// --- table ------------------------------------------------------------

Report cmd_table(const std::string& which, long g, const std::string& data_dir) {
    if (which == "e35") {
        Report rep = verify_table_e35(read_file(data_dir + "/expected/table_e35.txt"));
        rep.command = "table e35";
        return rep;
    }
    // which == "ksq": closed-form degree families evaluated at the given g.
    Report rep;
    rep.command = "table ksq --g " + std::to_string(g);
    struct Row {
        std::string family;
        long k;  // -1 when the family takes no k
    };
    std::vector<Row> rows;
    for (long k = 0; k <= 6; ++k) rows.push_back({"[3,2^k]", k});
    rows.push_back({"[4]", -1});
    for (long k = 0; k <= 6; ++k) rows.push_back({"[3,2^k,3]", k});
    rows.push_back({"[2,3,2]", -1});
    for (long k = 0; k <= 6; ++k) rows.push_back({"[2;[2],[2],[2^k,3]]", k});
    for (long k = 2; k <= 4; ++k) rows.push_back({"[2,3,2^k]", k});
    rows.push_back({"[2,4]", -1});

    // The bundled file freezes the g = 2 instantiation for diffing.
    std::vector<std::string> frozen;
    if (g == 2) {
        std::istringstream in(read_file(data_dir + "/expected/table_ksq_g2.txt"));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto last = line.find_last_of(' ');
            frozen.push_back(line.substr(last + 1));
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string id = r.k < 0 ? r.family : r.family + "/k=" + std::to_string(r.k);
        std::string inputs = "g=" + std::to_string(g);
        if (r.k >= 0) inputs += ", k=" + std::to_string(r.k);
        const std::string value = rat_str(ksq_formula(r.family, g, r.k < 0 ? 0 : r.k));
        const std::string expected = g == 2 && i < frozen.size() ? frozen[i] : value;
        rep.add_eq(id, inputs, expected, value);
    }
    if (g == 2)
        rep.add_eq("row-count", "bundled table", std::to_string(rows.size()),
                   std::to_string(frozen.size()));
    return rep;
}

// --- search -----------------------------------------------------------

Report cmd_search(const std::string& id, bool with_oracle, const std::string& data_dir) {
    const SolutionSet got = run_search(id);
    Report rep;
    rep.command = "search " + id;
    const SolutionSet want =
        parse_solution_text(id, read_file(data_dir + "/expected/search_" + id + ".txt"));
    rep.add_eq("row-count", id, std::to_string(want.rows.size()),
               std::to_string(got.rows.size()));
    rep.add_eq("solutions", id, rows_line(want.rows), rows_line(got.rows));
    if (with_oracle) {
        const SolutionSet oracle = run_search_oracle(id);
        rep.add_eq("nested-loop-oracle", id, "agrees",
                   got.same_solutions(oracle) ? "agrees" : "differs");
    }
    return rep;
}

// --- construct / curves / verify-all ------------------------------------

Report cmd_construct(const std::string& file) {
    const std::string text = read_file(file);
    const std::string dir = dir_of(file);
    return run_construction(text, base_of(file), [&](const std::string& ref) {
        return read_file(dir + "/" + ref);
    });
}

Report cmd_curves(long chr) { return verify_special_config(field_of_characteristic(chr)); }

int cmd_verify_all(const std::string& data_dir, bool json) {
    const std::vector<CriterionResult> results = run_acceptance(data_dir);
    if (json) {
        Report combined;
        combined.command = "verify-all";
        for (const auto& r : results)
            combined.absorb(r.report, "criterion-" + std::to_string(r.number) + "/");
        std::cout << combined.json();
    } else {
        std::cout << kVersion << " verification battery\n";
        std::cout << acceptance_text(results);
        for (const auto& r : results)
            for (const auto& c : r.report.checks)
                if (c.status == CheckStatus::fail)
                    std::cout << "FAILED " << r.number << " " << c.id << "  input=" << c.inputs
                              << "  expected=" << c.expected << "  actual=" << c.actual << "\n";
    }
    return all_pass(results) ? 0 : 1;
}

int emit(const Report& rep, bool json) {
    std::cout << (json ? rep.json() : rep.text());
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for dual graphs, lattices, and plane curves"};
    app.set_version_flag("--version", std::string(workbench::kVersion));
    app.require_subcommand(1);
    bool json = false;
    std::string data_dir = WORKBENCH_DATA_DIR;
    app.add_flag("--json", json, "emit the machine-readable report");
    app.add_option("--data-dir", data_dir, "directory with bundled fixtures and expected data")
        ->capture_default_str();

    auto* graph = app.add_subcommand("graph", "evaluate a weighted dual graph expression");
    std::string expr, what;
    graph->add_option("expr", expr, "bracket expression, e.g. \"[2,3,2^2]\"")->required();
    graph->add_option("what", what, "coeff | gap | det | discrepancies | all")->required();

    auto* table = app.add_subcommand("table", "regenerate a bundled reference table");
    std::string which;
    long table_g = 2;
    table->add_option("which", which, "e35 | ksq")->required();
    table->add_option("--g", table_g, "parameter g for the ksq table")->capture_default_str();

    auto* search = app.add_subcommand("search", "run an enumeration and diff the solution set");
    std::string search_id;
    bool with_oracle = false;
    search->add_option("id", search_id, "D1 | D2 | D3 | D4 | D5 | GEN-1 | GEN-2 | GEN-3")
        ->required();
    search->add_flag("--oracle", with_oracle, "also cross-check by the nested-loop oracle");

    auto* construct = app.add_subcommand("construct", "run a construction script");
    std::string script_file;
    construct->add_option("file", script_file, "script path (.cons)")->required();

    auto* curves = app.add_subcommand("curves", "plane-curve configuration checks");
    std::string action = "verify-config";
    long characteristic = 0;
    curves->add_option("action", action, "verify-config")->capture_default_str();
    curves->add_option("--char", characteristic, "field characteristic (0 or a prime)")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify-all", "run the full verification battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        using workbench::Report;
        if (graph->parsed()) {
            if (what != "coeff" && what != "gap" && what != "det" && what != "discrepancies" &&
                what != "all")
                throw std::invalid_argument("unknown graph action: " + what);
            return emit(cmd_graph(expr, what), json);
        }
        if (table->parsed()) {
            if (which != "e35" && which != "ksq")
                throw std::invalid_argument("unknown table: " + which);
            return emit(cmd_table(which, table_g, data_dir), json);
        }
        if (search->parsed()) return emit(cmd_search(search_id, with_oracle, data_dir), json);
        if (construct->parsed()) return emit(cmd_construct(script_file), json);
        if (curves->parsed()) {
            if (action != "verify-config")
                throw std::invalid_argument("unknown curves action: " + action);
            return emit(cmd_curves(characteristic), json);
        }
        if (verify->parsed()) return cmd_verify_all(data_dir, json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
