/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Unit tests for the language engine: words, images, the subset automaton,
 * the relation monoid, tail sets, follower comparison, language equality.
 */

#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "soficov/language.hpp"

using namespace soficov;

namespace {

std::vector<Word> short_words(const LabeledGraph& g, int n) {
    std::vector<Word> out = {{}};
    std::vector<Word> level = {{}};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (int l = 0; l < g.lcount(); ++l) {
                Word e = w;
                e.push_back(l);
                next.push_back(e);
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

}  // namespace

TEST_SUITE("language") {

TEST_CASE("word parsing and rendering") {
    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    CHECK(parse_word(ev2, "011") == Word{0, 1, 1});
    CHECK(render_word(ev2, {0, 1, 1}) == "011");
    CHECK(parse_word(ev2, "").empty());
    CHECK_THROWS_AS(parse_word(ev2, "02"), ParseError);

    // Multi-character labels use dot separation.
    LabeledGraph m = tt::g("x ab y\ny cd x\n");
    CHECK(parse_word(m, "ab.cd") == Word{0, 1});
    CHECK(render_word(m, {0, 1}) == "ab.cd");
    CHECK_THROWS_AS(parse_word(m, "ab.zz"), ParseError);
}

TEST_CASE("images and preimages match the oracle") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = tt::load_fixture(name);
        require_mask_capacity(g);
        for (const auto& w : short_words(g, 3)) {
            for (int v = 0; v < g.vcount(); ++v) {
                Mask s = Mask(1) << v;
                CHECK(image_of(g, s, w) == oracle::image(g, s, w));
                CHECK(preimage_of(g, s, w) == oracle::preimage(g, s, w));
            }
            CHECK(image_of(g, full_mask(g), w) ==
                  oracle::image(g, full_mask(g), w));
        }
    }
}

TEST_CASE("subset automaton of the even shift") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    SubsetAutomaton a = subset_automaton(g);
    CHECK(a.initial == 0b11);
    CHECK(a.states == std::vector<Mask>{0b01, 0b10, 0b11});
    CHECK(a.initial_is_state());
    CHECK(std::is_sorted(a.states.begin(), a.states.end()));

    int sa = a.state_index(0b01), sb = a.state_index(0b10),
        sab = a.state_index(0b11);
    int l0 = g.label("0"), l1 = g.label("1");
    CHECK(a.transitions[static_cast<size_t>(sa)][static_cast<size_t>(l0)] == sb);
    CHECK(a.transitions[static_cast<size_t>(sa)][static_cast<size_t>(l1)] == sa);
    CHECK(a.transitions[static_cast<size_t>(sb)][static_cast<size_t>(l0)] == sa);
    CHECK(a.transitions[static_cast<size_t>(sb)][static_cast<size_t>(l1)] == -1);
    CHECK(a.transitions[static_cast<size_t>(sab)][static_cast<size_t>(l0)] == sab);
    CHECK(a.transitions[static_cast<size_t>(sab)][static_cast<size_t>(l1)] == sa);
    CHECK(a.initial_transitions[static_cast<size_t>(l0)] == sab);
    CHECK(a.state_index(0b100) == -1);
}

TEST_CASE("contains_word") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    CHECK(contains_word(g, "0110"));
    CHECK(contains_word(g, "011"));
    CHECK(contains_word(g, ""));
    CHECK(contains_word(g, "010"));
    CHECK_FALSE(contains_word(g, "101"));
    CHECK_FALSE(contains_word(g, Word{1, 0, 0, 0, 1}));
    // Membership agrees with path enumeration on every fixture.
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph f = tt::load_fixture(name);
        for (const auto& w : short_words(f, 4))
            CHECK(contains_word(f, w) == oracle::word_in(f, w));
    }
}

TEST_CASE("contains_word ignores transient-only paths") {
    // "xy" labels a path in the raw graph, but a has no in-edge, so the
    // path vanishes under trimming and the word is not in the language.
    LabeledGraph g = tt::g("a x b\nb y c\nc z c\n");
    CHECK_FALSE(contains_word(g, "xy"));
    CHECK_FALSE(contains_word(g, "x"));
    CHECK(contains_word(g, "zz"));
}

TEST_CASE("words_up_to") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    std::vector<Word> w1 = words_up_to(g, 1);
    REQUIRE(w1.size() == 3);
    CHECK(w1[0].empty());
    CHECK(w1[1] == Word{0});
    CHECK(w1[2] == Word{1});
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph f = tt::load_fixture(name);
        CHECK(words_up_to(f, 5) == oracle::words_up_to(f, 5));
    }
    CHECK_THROWS_AS(words_up_to(g, caps::kMaxWordLength + 1), CapError);
    CHECK(words_up_to(tt::g("")
                      , 3).empty());
}

TEST_CASE("relations of words") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    Relation r0 = relation_of_word(g, {0});
    CHECK(r0.rows == std::vector<Mask>{0b10, 0b01});
    Relation r1 = relation_of_word(g, {1});
    CHECK(r1.rows == std::vector<Mask>{0b01, 0});
    CHECK_FALSE(r1.zero());
    CHECK(r1.range() == 0b01);
    CHECK(r1.domain() == 0b01);
    CHECK(relation_of_word(g, {0, 1}) == compose(r0, r1));
    CHECK(relation_of_word(g, {1, 0, 1}).zero());

    Relation id = relation_of_word(g, {0, 0});
    CHECK(compose(id, id) == id);
}

TEST_CASE("relation monoid matches literal word enumeration") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = trim(tt::load_fixture(name));
        std::vector<Relation> monoid = relation_monoid(g);
        std::set<std::vector<Mask>> seen;
        for (const auto& r : monoid) {
            CHECK(seen.insert(r.rows).second);  // no duplicates
            // The witness reproduces the element and the idempotent flag is
            // literal.
            CHECK(relation_of_word(g, r.witness).rows == r.rows);
            CHECK(r.idempotent == (compose(r, r) == r));
        }
        // Closure under extension by letters.
        for (const auto& r : monoid)
            for (int l = 0; l < g.lcount(); ++l) {
                Word e = r.witness;
                e.push_back(l);
                CHECK(seen.count(relation_of_word(g, e).rows) == 1);
            }
        // Every oracle relation of words up to length 8 appears.
        for (const auto& rows : oracle::relations_up_to(g, 8))
            CHECK(seen.count(rows) == 1);
    }
}

TEST_CASE("monoid witnesses are shortest") {
    LabeledGraph g = tt::load_fixture("mx5.lg");
    std::map<std::vector<Mask>, size_t> best;
    for (const auto& w : short_words(g, 5)) {
        if (w.empty()) continue;
        auto rows = relation_of_word(g, w).rows;
        auto it = best.find(rows);
        if (it == best.end()) best[rows] = w.size();
    }
    for (const auto& r : relation_monoid(g)) {
        auto it = best.find(r.rows);
        if (it != best.end()) CHECK(r.witness.size() == it->second);
    }
}

TEST_CASE("idempotent powers") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = trim(tt::load_fixture(name));
        for (const auto& r : relation_monoid(g)) {
            Relation e = idempotent_power(g, r);
            CHECK(compose(e, e) == e);
            // e is some positive power of r.
            Relation p = r;
            bool found = false;
            for (int k = 0; k < 256 && !found; ++k) {
                if (p == e) found = true;
                p = compose(p, r);
            }
            CHECK(found);
            CHECK(relation_of_word(g, e.witness).rows == e.rows);
        }
    }
}

TEST_CASE("periodic tail and viability sets match the oracle") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = tt::load_fixture(name);
        for (const auto& u : short_words(g, 4)) {
            if (u.empty()) continue;
            CHECK(periodic_tail_set(g, u) == oracle::stable_image(g, u));
            CHECK(periodic_viability_set(g, u) == oracle::viability(g, u));
        }
    }
}

TEST_CASE("dee family: frozen values") {
    auto masks = [](const LabeledGraph& g,
                    const std::vector<std::vector<std::string>>& sets) {
        std::vector<Mask> out;
        for (const auto& s : sets) out.push_back(mask_of(g, s));
        std::sort(out.begin(), out.end());
        return out;
    };
    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    CHECK(dee_family(ev2) == masks(ev2, {{"a"}, {"b"}, {"a", "b"}}));
    LabeledGraph nr3 = tt::load_fixture("nr3.lg");
    CHECK(dee_family(nr3) == masks(nr3, {{"a", "b", "c"}, {"b"}, {"c"}}));
    LabeledGraph ev4 = tt::load_fixture("ev4.lg");
    CHECK(dee_family(ev4) ==
          masks(ev4, {{"a", "b", "c", "d"}, {"b", "c"}, {"a", "d"}}));
    LabeledGraph mx5 = tt::load_fixture("mx5.lg");
    CHECK(dee_family(mx5) == masks(mx5, {{"a", "b", "d"},
                                         {"a"},
                                         {"b"},
                                         {"c"},
                                         {"d"},
                                         {"e"}}));
}

TEST_CASE("dee family: oracle agreement and letter closure") {
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = trim(tt::load_fixture(name));
        std::vector<Mask> fam = dee_family(g);
        CHECK(std::is_sorted(fam.begin(), fam.end()));
        CHECK(fam == oracle::dee_by_tails(g, 6, 6));
        std::set<Mask> famset(fam.begin(), fam.end());
        for (Mask d : fam)
            for (int l = 0; l < g.lcount(); ++l) {
                Mask im = image_of(g, d, l);
                if (im) CHECK(famset.count(im) == 1);
            }
    }
}

TEST_CASE("follower partition") {
    LabeledGraph ev4 = tt::load_fixture("ev4.lg");
    FollowerPartition p = follower_partition(ev4);
    CHECK(p.classes == 2);
    CHECK(p.class_of[static_cast<size_t>(ev4.vertex("a"))] ==
          p.class_of[static_cast<size_t>(ev4.vertex("d"))]);
    CHECK(p.class_of[static_cast<size_t>(ev4.vertex("b"))] ==
          p.class_of[static_cast<size_t>(ev4.vertex("c"))]);
    CHECK(p.class_of[static_cast<size_t>(ev4.vertex("a"))] !=
          p.class_of[static_cast<size_t>(ev4.vertex("b"))]);

    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    CHECK(follower_partition(ev2).classes == 2);
    CHECK_THROWS_AS(follower_partition(tt::g("a 0 a\na 0 b\nb 0 a\n")),
                    UsageError);
}

TEST_CASE("merged graph quotients ev4 onto ev2's shape") {
    LabeledGraph ev4 = tt::load_fixture("ev4.lg");
    MergedGraph m = merged_graph(ev4);
    CHECK(serialize_lg(m.graph) == "a 0 b\nb 0 a\nb 1 b\n");
    CHECK(m.map.map.at("a") == "a");
    CHECK(m.map.map.at("d") == "a");
    CHECK(m.map.map.at("b") == "b");
    CHECK(m.map.map.at("c") == "b");
    CHECK(follower_partition(m.graph).classes == m.graph.vcount());
    CHECK(language_equal(m.graph, ev4).equal);
}

TEST_CASE("simulation preorder and follower inclusion") {
    LabeledGraph nr3 = tt::load_fixture("nr3.lg");
    CHECK(follower_includes(nr3, "b", nr3, "a"));
    CHECK(follower_includes(nr3, "b", nr3, "c"));
    CHECK_FALSE(follower_includes(nr3, "a", nr3, "b"));
    CHECK_FALSE(follower_includes(nr3, "a", nr3, "c"));
    CHECK_FALSE(follower_includes(nr3, "c", nr3, "a"));

    CHECK_THROWS_AS(simulation_preorder(tt::g("a 0 a\na 0 b\nb 0 a\n"),
                                        tt::g("a 0 a\n")),
                    UsageError);

    // Inclusion agrees with finite word-set inclusion on every fixture.
    for (const auto& name : tt::fixture_names()) {
        LabeledGraph g = tt::load_fixture(name);
        auto sim = simulation_preorder(g, g);
        for (int x = 0; x < g.vcount(); ++x) {
            auto wx = oracle::words_from_vertex(g, x, 8);
            for (int y = 0; y < g.vcount(); ++y) {
                auto wy = oracle::words_from_vertex(g, y, 8);
                bool incl = std::includes(wy.begin(), wy.end(), wx.begin(),
                                          wx.end());
                CHECK(sim[static_cast<size_t>(x)][static_cast<size_t>(y)] ==
                      incl);
            }
        }
    }
}

TEST_CASE("language equality") {
    LabeledGraph ev2 = tt::load_fixture("ev2.lg");
    CHECK(language_equal(ev2, tt::load_fixture("ev3.lg")).equal);
    CHECK(language_equal(ev2, tt::load_fixture("ev4.lg")).equal);

    // Even shift vs golden mean: shortest separating word is 11.
    LabeledGraph golden = tt::g("a 0 a\na 1 b\nb 0 a\n");
    LanguageComparison c = language_equal(ev2, golden);
    CHECK_FALSE(c.equal);
    CHECK(c.witness == std::vector<std::string>{"1", "1"});
    CHECK(c.witness_in == 1);

    // Disjoint alphabets: a letter of mx5 is the shortest witness.
    LanguageComparison d = language_equal(ev2, tt::load_fixture("mx5.lg"));
    CHECK_FALSE(d.equal);
    CHECK(d.witness == std::vector<std::string>{"2"});
    CHECK(d.witness_in == 2);

    // Empty vs nonempty: the empty word separates.
    LanguageComparison e = language_equal(tt::g(""), ev2);
    CHECK_FALSE(e.equal);
    CHECK(e.witness.empty());
    CHECK(e.witness_in == 2);
    CHECK(language_equal(tt::g(""), tt::g("a x b\n")).equal);
}

TEST_CASE("apply_relation") {
    LabeledGraph g = tt::load_fixture("ev2.lg");
    Relation r0 = relation_of_word(g, {0});
    CHECK(apply_relation(r0, 0b01) == 0b10);
    CHECK(apply_relation_backward(r0, 0b10) == 0b01);
    CHECK(apply_relation(r0, 0) == 0);
}

}  // TEST_SUITE
