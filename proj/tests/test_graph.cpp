/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Unit tests for the core graph module: formats, structure, recodings.
 */

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "oracles.hpp"
#include "soficov/graph.hpp"

using namespace soficov;

TEST_SUITE("graph") {

TEST_CASE("parse_lg strips comments and sorts") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    CHECK(g.vcount() == 2);
    CHECK(g.lcount() == 2);
    CHECK(g.ecount() == 3);
    CHECK(serialize_lg(g) == "a 0 b\na 1 a\nb 0 a\n");
}

TEST_CASE("serialization round-trips and is stable") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = tt::load_fixture(name);
        std::string once = serialize_lg(g);
        CHECK(serialize_lg(parse_lg(once)) == once);
    }
}

TEST_CASE("parse_lg sorts scrambled input and dedupes") {
    LabeledGraph g = tt::g("b 0 a\na 1 a\na 0 b\na 0 b\n");
    CHECK(g.ecount() == 3);
    CHECK(serialize_lg(g) == "a 0 b\na 1 a\nb 0 a\n");
    CHECK(g.vertex_names == std::vector<std::string>{"a", "b"});
    CHECK(g.label_names == std::vector<std::string>{"0", "1"});
}

TEST_CASE("parse_lg accepts blank lines, CRLF, and whitespace") {
    LabeledGraph g = tt::g("\r\n  a 0 b \r\n\n# note\nb 0 a\r\n");
    CHECK(g.ecount() == 2);
}

TEST_CASE("parse_lg rejects malformed lines with line numbers") {
    CHECK_THROWS_AS(tt::g("a 0\n"), ParseError);
    CHECK_THROWS_AS(tt::g("a $ b\n"), ParseError);
    CHECK_THROWS_AS(tt::g("a 0 b c\n"), ParseError);
    try {
        tt::g("a 0 b\nb 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(e.exit_code == 2);
    }
}

TEST_CASE("empty input gives the empty graph") {
    LabeledGraph g = tt::g("# nothing\n\n");
    CHECK(g.empty());
    CHECK(serialize_lg(g).empty());
}

TEST_CASE("lookups and adjacency") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    int a = g.vertex("a"), b = g.vertex("b");
    int l0 = g.label("0"), l1 = g.label("1");
    CHECK(a == 0);
    CHECK(b == 1);
    CHECK(g.vertex("zz") == -1);
    CHECK(g.label("zz") == -1);
    CHECK(g.targets(a, l0) == std::vector<int>{b});
    CHECK(g.targets(a, l1) == std::vector<int>{a});
    CHECK(g.targets(b, l1).empty());
    CHECK(g.has_out_edge(a));
    CHECK(g.has_in_edge(b));
}

TEST_CASE("right-resolving and trim predicates") {
    CHECK(is_right_resolving(tt::load_fixture("ev2.lg")));
    for (const auto& name : tt::fixture_names())
        CHECK(is_trim(tt::load_fixture(name)));
    LabeledGraph nrr = tt::g("a 0 a\na 0 b\nb 0 a\n");
    CHECK_FALSE(is_right_resolving(nrr));
    LabeledGraph sink = tt::g("a 0 a\na 1 b\n");
    CHECK_FALSE(is_trim(sink));
}

TEST_CASE("trim removes everything off bi-infinite paths") {
    CHECK(trim(tt::g("a x b\nb x c\n")).empty());
    LabeledGraph g = tt::g("a 0 a\na 1 b\nc 0 a\n");
    LabeledGraph t = trim(g);
    CHECK(t.vcount() == 1);
    CHECK(serialize_lg(t) == "a 0 a\n");
    // Trimming a trim graph changes nothing.
    LabeledGraph ev3 = tt::load_fixture("ev3.lg");
    CHECK(serialize_lg(trim(ev3)) == serialize_lg(ev3));
}

TEST_CASE("subset names and masks") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    CHECK(subset_name(g, 0b11) == "{a,b}");
    CHECK(subset_name(g, 0b01) == "{a}");
    CHECK(subset_names(g, 0b10) == std::vector<std::string>{"b"});
    CHECK(mask_of(g, {"b", "a"}) == 0b11);
    CHECK(full_mask(g) == 0b11);

    auto p = parse_subset_name("{a,b}");
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<std::string>{"a", "b"});
    CHECK(parse_subset_name("{a}").has_value());
    CHECK_FALSE(parse_subset_name("a").has_value());
    CHECK_FALSE(parse_subset_name("{}").has_value());
    CHECK_FALSE(parse_subset_name("{a,}").has_value());
    CHECK_FALSE(parse_subset_name("{a,{b}").has_value());

    // Members that are subset names themselves (covers built over covers)
    // split only at depth 0.
    auto nested = parse_subset_name("{{a,b},{a}}");
    REQUIRE(nested.has_value());
    CHECK(*nested == std::vector<std::string>{"{a,b}", "{a}"});
    CHECK(parse_subset_name("{a,{b}}") ==
          std::vector<std::string>{"a", "{b}"});
}

TEST_CASE("mask capacity is enforced") {
    std::vector<std::array<std::string, 3>> triples;
    for (int i = 0; i < 65; ++i) {
        std::string a = "v" + std::to_string(i);
        std::string b = "v" + std::to_string((i + 1) % 65);
        triples.push_back({a, "x", b});
    }
    LabeledGraph big = build_graph(triples);
    CHECK(big.vcount() == 65);
    CHECK_THROWS_AS(require_mask_capacity(big), CapError);
    try {
        require_mask_capacity(big);
        FAIL("expected CapError");
    } catch (const CapError& e) {
        CHECK(e.exit_code == 3);
    }
}

TEST_CASE("components, transients, and the dag") {
    LabeledGraph g = tt::g(
        "m x p\n"
        "p x q\nq x p\n"
        "q x r\n"
        "r x s\ns x r\n");
    ComponentDAG d = components(g);
    REQUIRE(d.components.size() == 2);
    CHECK(subset_names(g, 0) == std::vector<std::string>{});
    // Components are ordered by smallest vertex name: {p,q} then {r,s}.
    CHECK(g.vertex_names[static_cast<size_t>(d.components[0][0])] == "p");
    CHECK(g.vertex_names[static_cast<size_t>(d.components[1][0])] == "r");
    REQUIRE(d.transients.size() == 1);
    CHECK(g.vertex_names[static_cast<size_t>(d.transients[0])] == "m");
    CHECK(d.comp_of[static_cast<size_t>(g.vertex("m"))] == -1);
    CHECK(d.comp_of[static_cast<size_t>(g.vertex("p"))] == 0);
    CHECK(d.dag_edges == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(d.terminal == std::vector<bool>{false, true});
    CHECK(d.source == std::vector<bool>{true, false});
}

TEST_CASE("component multiplicities from subset names") {
    LabeledGraph g = tt::g("{a} x {b,c}\n{b,c} x {a}\n");
    ComponentDAG d = components(g);
    REQUIRE(d.components.size() == 1);
    CHECK(d.mixed_cardinality[0]);
    CHECK_FALSE(d.multiplicity[0].has_value());

    LabeledGraph h = tt::g("{a,b} x {c,d}\n{c,d} x {a,b}\n{e} y {e}\n");
    ComponentDAG dh = components(h);
    REQUIRE(dh.components.size() == 2);
    // "{a,b}" sorts before "{e}".
    CHECK(dh.multiplicity[0] == 2);
    CHECK(dh.multiplicity[1] == 1);
    CHECK_FALSE(dh.mixed_cardinality[0]);
}

TEST_CASE("hereditary closure and restriction") {
    LabeledGraph ev3 = tt::load_fixture("ev3.lg");
    CHECK(hereditary_closure(ev3, {"c"}) ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(hereditary_closure(ev3, {"a"}) == std::vector<std::string>{"a", "b"});
    LabeledGraph r = restrict_hereditary(ev3, {"a", "b"});
    CHECK(serialize_lg(r) == serialize_lg(tt::load_fixture("ev2.lg")));
}

TEST_CASE("higher_block") {
    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    CHECK(serialize_lg(higher_block(ev2, 1)) == serialize_lg(ev2));
    LabeledGraph h2 = higher_block(ev2, 2);
    CHECK(h2.vcount() == 3);  // one per edge of ev2
    CHECK(h2.ecount() == 5);  // one per length-2 path
    CHECK(h2.label_names == ev2.label_names);
    CHECK(is_right_resolving(h2));
    CHECK(is_trim(h2));
    LabeledGraph h3 = higher_block(ev2, 3);
    CHECK(h3.vcount() == 5);  // one per length-2 path
    CHECK_THROWS_AS(higher_block(ev2, 0), UsageError);
}

TEST_CASE("relabel") {
    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    LabeledGraph r = relabel(ev2, {{"0", "1"}, {"1", "0"}});
    CHECK(serialize_lg(r) == "a 0 a\na 1 b\nb 1 a\n");
    CHECK_THROWS_AS(relabel(ev2, {{"0", "x"}}), UsageError);
    CHECK_THROWS_AS(relabel(ev2, std::map<std::string, std::string>{
                                     {"0", "z"}, {"1", "z"}}),
                    UsageError);
}

TEST_CASE("reverse") {
    LabeledGraph ev3 = tt::load_fixture("ev3.lg");
    LabeledGraph r = reverse(ev3);
    CHECK(r.ecount() == ev3.ecount());
    CHECK(serialize_lg(reverse(r)) == serialize_lg(ev3));
    CHECK(r.targets(r.vertex("a"), r.label("0")) ==
          std::vector<int>{r.vertex("b")});
}

TEST_CASE("validate reports the basics") {
    ValidationReport v = validate(tt::load_fixture("ev2.lg"));
    CHECK(v.vertices == 2);
    CHECK(v.edges == 3);
    CHECK(v.labels == 2);
    CHECK(v.right_resolving);
    CHECK(v.trim);
    ValidationReport nv = validate(tt::g("a 0 a\na 0 b\n"));
    CHECK_FALSE(nv.right_resolving);
    CHECK_FALSE(nv.trim);
}

TEST_CASE("dot and json serializations") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    std::string dot = serialize_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"a\" -> \"b\" [label=\"0\"];") != std::string::npos);

    auto j = nlohmann::json::parse(serialize_json(g));
    CHECK(j["vertices"].size() == 2);
    CHECK(j["alphabet"].size() == 2);
    CHECK(j["edges"].size() == 3);
    CHECK(j["edges"][0] == nlohmann::json({"a", "0", "b"}));
}

TEST_CASE("build_graph keeps parallel labels, collapses duplicates") {
    LabeledGraph g = build_graph({{"a", "x", "b"},
                                  {"a", "y", "b"},
                                  {"a", "x", "b"},
                                  {"b", "x", "a"}});
    CHECK(g.ecount() == 3);
}

TEST_CASE("vertex maps") {
    VertexMap m;
    m.map = {{"a", "x"}, {"b", "x"}};
    CHECK_FALSE(m.injective());
    m.map["b"] = "y";
    CHECK(m.injective());
}

}  // TEST_SUITE
