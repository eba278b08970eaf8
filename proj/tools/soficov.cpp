/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Command line front end. Reads .lg presentations (file path or "-" for
 * stdin), writes results to stdout. Exit codes: 0 success (or property
 * true / comparison positive), 1 property false or comparison negative,
 * 2 malformed input or usage, 3 resource cap exceeded.
 */

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "soficov/covers.hpp"
#include "soficov/gprime.hpp"
#include "soficov/graph.hpp"
#include "soficov/invariants.hpp"
#include "soficov/language.hpp"

namespace {

using namespace soficov;

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw UsageError("cannot open input '" + path + "'");
        ss << f.rdbuf();
    }
    return ss.str();
}

LabeledGraph load_graph(const std::string& path) {
    return parse_lg(read_input(path));
}

std::string format_graph(const LabeledGraph& g, const std::string& fmt) {
    if (fmt == "text") return serialize_lg(g);
    if (fmt == "dot") return serialize_dot(g);
    if (fmt == "json") return serialize_json(g);
    throw UsageError("unknown format '" + fmt + "'");
}

int report_bool(bool value, const std::vector<std::string>& diagnostics) {
    std::cout << (value ? "true" : "false") << "\n";
    for (const auto& d : diagnostics) std::cout << d << "\n";
    return value ? 0 : 1;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

int run_check(const LabeledGraph& g, const std::string& property,
              const std::string& word, int max_period) {
    if (property == "right-resolving") {
        std::vector<std::string> diags;
        for (int v = 0; v < g.vcount() && diags.empty(); ++v)
            for (int l = 0; l < g.lcount(); ++l)
                if (g.targets(v, l).size() > 1)
                    diags.push_back(
                        "vertex '" + g.vertex_names[static_cast<size_t>(v)] +
                        "' has " + std::to_string(g.targets(v, l).size()) +
                        " out-edges labeled '" +
                        g.label_names[static_cast<size_t>(l)] + "'");
        return report_bool(is_right_resolving(g), diags);
    }
    if (property == "trim") {
        bool t = is_trim(g);
        std::vector<std::string> diags;
        if (!t) {
            LabeledGraph tg = trim(g);
            std::vector<std::string> gone;
            for (const auto& n : g.vertex_names)
                if (tg.vertex(n) < 0) gone.push_back(n);
            diags.push_back("removed by trimming: " + join(gone, ", "));
        }
        return report_bool(t, diags);
    }
    if (property == "follower-separated") {
        if (!is_right_resolving(g))
            throw UsageError("follower separation needs a right-resolving "
                             "graph");
        FollowerPartition p = follower_partition(g);
        std::vector<std::string> diags;
        if (p.classes != g.vcount()) {
            std::map<int, std::vector<std::string>> by_class;
            for (int v = 0; v < g.vcount(); ++v)
                by_class[p.class_of[static_cast<size_t>(v)]].push_back(
                    g.vertex_names[static_cast<size_t>(v)]);
            for (const auto& [c, members] : by_class)
                if (members.size() > 1)
                    diags.push_back("equal followers: " + join(members, ", "));
        }
        return report_bool(p.classes == g.vcount(), diags);
    }
    if (property == "predecessor-separated")
        return report_bool(is_predecessor_separated(g), {});
    if (property == "regular") {
        std::vector<std::string> reg = regular_vertices(g);
        std::vector<std::string> diags;
        std::set<std::string> regset(reg.begin(), reg.end());
        std::vector<std::string> bad;
        for (const auto& n : g.vertex_names)
            if (!regset.count(n)) bad.push_back(n);
        if (!bad.empty()) diags.push_back("non-regular: " + join(bad, ", "));
        return report_bool(bad.empty(), diags);
    }
    if (property == "irreducible") return report_bool(is_irreducible(g), {});
    if (property == "synchronizing-word") {
        Word w = parse_word(g, word);
        return report_bool(is_synchronizing_word(g, w), {});
    }
    if (property == "canonicity") {
        CanonicityReport rep = canonicity_suite(g, max_period);
        std::cout << rep.to_text();
        return rep.all_pass ? 0 : 1;
    }
    throw UsageError("unknown property '" + property + "'");
}

int run_compare(const LabeledGraph& a, const LabeledGraph& b,
                const std::string& mode, int max_period) {
    if (mode == "language") {
        LanguageComparison c = language_equal(a, b);
        std::vector<std::string> diags;
        if (!c.equal)
            diags.push_back("witness '" + join(c.witness, ".") +
                            "' only in input " +
                            std::to_string(c.witness_in));
        return report_bool(c.equal, diags);
    }
    if (mode == "isomorphic") {
        auto iso = graphs_isomorphic(a, b);
        std::vector<std::string> diags;
        if (iso)
            for (const auto& [x, y] : iso->map)
                diags.push_back(x + " -> " + y);
        return report_bool(iso.has_value(), diags);
    }
    if (mode == "periodic-counts") {
        auto pa = periodic_counts(a, max_period);
        auto pb = periodic_counts(b, max_period);
        std::vector<std::string> diags;
        auto render = [](const std::vector<std::uint64_t>& v) {
            std::string s = "[";
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        diags.push_back("first: " + render(pa));
        diags.push_back("second: " + render(pb));
        return report_bool(pa == pb, diags);
    }
    throw UsageError("unknown mode '" + mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical covers of sofic shifts presented by labeled "
                 "graphs"};
    app.require_subcommand(1);

    std::string input, input2, format = "text";
    std::string route = "merge", property, word, mode = "language";
    std::string cover_kind = "krieger", relabel_spec;
    int max_period = 8, higher_block_n = 0;
    bool do_two_block = false;
    Bounds bounds;
    int left_bound = -1, mid_bound = -1, right_bound = -1;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "dot", "json"}));
    };
    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "input .lg file, or - for stdin")
            ->required();
    };

    CLI::App* parse = app.add_subcommand("parse", "parse and reserialize");
    add_input(parse);
    add_format(parse);

    CLI::App* krieger =
        app.add_subcommand("krieger", "the future cover of the shift");
    add_input(krieger);
    add_format(krieger);
    krieger->add_option("--route", route, "construction route")
        ->check(CLI::IsMember({"merge", "regular-part"}));

    CLI::App* fischer = app.add_subcommand(
        "fischer", "the minimal cover of an irreducible shift");
    add_input(fischer);
    add_format(fischer);

    CLI::App* gprime = app.add_subcommand(
        "gprime", "the strongly canonical cover from the double-subset graph");
    add_input(gprime);
    add_format(gprime);
    gprime->add_option("--left-bound", left_bound, "period bound for pasts");
    gprime->add_option("--mid-bound", mid_bound, "middle search depth");
    gprime->add_option("--right-bound", right_bound,
                       "period bound for futures");

    CLI::App* fg = app.add_subcommand("follower-graph",
                                      "the follower-set graph of the shift");
    add_input(fg);
    add_format(fg);

    CLI::App* underline = app.add_subcommand(
        "underline", "the graph of left-tail image sets");
    add_input(underline);
    add_format(underline);

    CLI::App* dsub = app.add_subcommand(
        "double-subset", "the double-subset graph of the presentation");
    add_input(dsub);
    add_format(dsub);

    CLI::App* check = app.add_subcommand("check", "decide a property");
    add_input(check);
    check->add_option("--property", property, "property to decide")
        ->required()
        ->check(CLI::IsMember({"right-resolving", "trim", "follower-separated",
                               "predecessor-separated", "regular",
                               "irreducible", "synchronizing-word",
                               "canonicity"}));
    check->add_option("--word", word, "word for synchronizing-word");
    check->add_option("--max-period", max_period,
                      "period bound for canonicity");

    CLI::App* invariants =
        app.add_subcommand("invariants", "conjugacy-invariant report");
    add_input(invariants);
    invariants->add_option("--cover", cover_kind, "cover to report on")
        ->check(CLI::IsMember({"none", "underline", "follower-graph",
                               "krieger", "fischer", "double-subset",
                               "gprime"}));
    invariants->add_option("--max-period", max_period, "period bound");
    invariants->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* compare = app.add_subcommand("compare", "compare two inputs");
    compare->add_option("first", input, "first input")->required();
    compare->add_option("second", input2, "second input")->required();
    compare->add_option("--mode", mode, "comparison mode")
        ->check(CLI::IsMember({"language", "isomorphic", "periodic-counts"}));
    compare->add_option("--max-period", max_period,
                        "period bound for periodic-counts");

    CLI::App* recode = app.add_subcommand("recode", "recode a presentation");
    add_input(recode);
    add_format(recode);
    recode->add_option("--higher-block", higher_block_n,
                       "higher-block presentation order");
    recode->add_flag("--two-block", do_two_block,
                     "conjugate 2-block presentation");
    recode->add_option("--relabel", relabel_spec,
                       "label bijection a=b,c=d,...");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (parse->parsed()) {
            std::cout << format_graph(load_graph(input), format);
            return 0;
        }
        if (krieger->parsed()) {
            std::cout << format_graph(
                krieger_cover(load_graph(input), route).graph, format);
            return 0;
        }
        if (fischer->parsed()) {
            std::cout << format_graph(fischer_cover(load_graph(input)).graph,
                                      format);
            return 0;
        }
        if (gprime->parsed()) {
            if (left_bound >= 0) bounds.left = left_bound;
            if (mid_bound >= 0) bounds.mid = mid_bound;
            if (right_bound >= 0) bounds.right = right_bound;
            GPrimeResult r = gprime_cover(load_graph(input), bounds);
            if (format == "json") {
                nlohmann::ordered_json j =
                    nlohmann::ordered_json::parse(serialize_json(r.cover.graph));
                j["selection"] =
                    nlohmann::ordered_json::parse(r.report.to_json());
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << format_graph(r.cover.graph, format);
            }
            return 0;
        }
        if (fg->parsed()) {
            std::cout << format_graph(follower_set_graph(load_graph(input)).graph,
                                      format);
            return 0;
        }
        if (underline->parsed()) {
            std::cout << format_graph(underline_graph(load_graph(input)).graph,
                                      format);
            return 0;
        }
        if (dsub->parsed()) {
            std::cout << format_graph(
                double_subset_graph(load_graph(input)).graph, format);
            return 0;
        }
        if (check->parsed()) {
            LabeledGraph g = load_graph(input);
            if (property == "synchronizing-word" &&
                check->count("--word") == 0)
                throw UsageError("--word is required for synchronizing-word");
            return run_check(g, property, word, max_period);
        }
        if (invariants->parsed()) {
            LabeledGraph g = load_graph(input);
            InvariantReport rep;
            if (cover_kind == "none") {
                rep = graph_report(g, max_period);
            } else if (cover_kind == "krieger") {
                rep = invariant_report(krieger_cover(g, "merge"), max_period);
            } else if (cover_kind == "fischer") {
                rep = invariant_report(fischer_cover(g), max_period);
            } else if (cover_kind == "underline") {
                rep = invariant_report(underline_graph(g), max_period);
            } else if (cover_kind == "follower-graph") {
                rep = invariant_report(follower_set_graph(g), max_period);
            } else if (cover_kind == "double-subset") {
                rep = invariant_report(double_subset_graph(g), max_period);
            } else {
                rep = invariant_report(gprime_cover(g).cover, max_period);
            }
            std::cout << (format == "json" ? rep.to_json() : rep.to_text());
            return 0;
        }
        if (compare->parsed()) {
            LabeledGraph a = load_graph(input);
            LabeledGraph b = load_graph(input2);
            return run_compare(a, b, mode, max_period);
        }
        if (recode->parsed()) {
            LabeledGraph g = load_graph(input);
            int chosen = (higher_block_n > 0 ? 1 : 0) + (do_two_block ? 1 : 0) +
                         (!relabel_spec.empty() ? 1 : 0);
            if (chosen != 1)
                throw UsageError("recode needs exactly one of --higher-block, "
                                 "--two-block, --relabel");
            LabeledGraph out;
            if (higher_block_n > 0) {
                out = higher_block(g, higher_block_n);
            } else if (do_two_block) {
                out = two_block_recode(g);
            } else {
                std::map<std::string, std::string> m;
                std::istringstream ss(relabel_spec);
                std::string pair;
                while (std::getline(ss, pair, ',')) {
                    auto eq = pair.find('=');
                    if (eq == std::string::npos || eq == 0 ||
                        eq + 1 >= pair.size())
                        throw UsageError("bad relabel pair '" + pair + "'");
                    m[pair.substr(0, eq)] = pair.substr(eq + 1);
                }
                out = relabel(g, m);
            }
            std::cout << format_graph(out, format);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
