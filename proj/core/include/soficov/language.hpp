/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Language engine: everything about the words and word-relations of a
 * presentation. Images of vertex subsets under words, the determinized
 * subset automaton, language membership and enumeration, the transition
 * relation monoid with shortest witnesses, the family of left-tail images
 * (the vertex sets reachable as "endpoints of left-infinite paths with a
 * given label past"), follower-set comparison by simulation, the quotient
 * by follower equality, and language equality of two presentations.
 *
 * Language semantics are those of the presented shift: operations that
 * answer questions about words of the shift work on the trimmed graph, so
 * a word counts only when it labels a path that extends bi-infinitely.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soficov/graph.hpp"

namespace soficov {

// A word is a sequence of label indices of a fixed graph.
using Word = std::vector<int>;

// Words from/to strings: one character per label when every alphabet token
// is a single character, dot-separated label tokens otherwise.
Word parse_word(const LabeledGraph& g, const std::string& s);
std::string render_word(const LabeledGraph& g, const Word& w);

// ---------------------------------------------------------------------------
// Images and the subset automaton
// ---------------------------------------------------------------------------

Mask image_of(const LabeledGraph& g, Mask s, int label);
Mask image_of(const LabeledGraph& g, Mask s, const Word& w);

// Sources of an edge labeled `label` into `s` (one-letter preimage).
Mask preimage_of(const LabeledGraph& g, Mask s, int label);
Mask preimage_of(const LabeledGraph& g, Mask s, const Word& w);

// Determinization of a trim presentation from the full vertex set. The
// states are the images of the full set under nonempty words; the full set
// itself is kept separately as the initial state (it is a state exactly
// when some nonempty word reproduces it).
struct SubsetAutomaton {
    Mask initial = 0;
    std::vector<Mask> states;                    // sorted ascending
    std::vector<std::vector<int>> transitions;   // [state][label] -> state or -1
    std::vector<int> initial_transitions;        // [label] -> state or -1

    int state_index(Mask m) const;
    bool initial_is_state() const { return state_index(initial) >= 0; }
};

SubsetAutomaton subset_automaton(const LabeledGraph& g);

// Membership and enumeration for the word language of the presented shift.
bool contains_word(const LabeledGraph& g, const Word& w);
bool contains_word(const LabeledGraph& g, const std::string& w);

// All words of length <= n (n <= caps::kMaxWordLength), sorted by length
// then lexicographically; includes the empty word when the shift is
// nonempty.
std::vector<Word> words_up_to(const LabeledGraph& g, int n);

// ---------------------------------------------------------------------------
// The transition relation monoid
// ---------------------------------------------------------------------------

// The relation of a word w holds (x, y) when some path labeled w runs from
// x to y. Relations compose by path concatenation; the monoid generated by
// the letter relations is finite and is explored breadth-first, so every
// element carries a shortest (then lexicographically least) witness word.
struct Relation {
    std::vector<Mask> rows;  // rows[v] = targets reachable from v
    Word witness;
    bool idempotent = false;  // r after r == r

    bool zero() const;
    Mask range() const;
    Mask domain() const;
    bool operator==(const Relation& o) const { return rows == o.rows; }
};

Relation relation_of_word(const LabeledGraph& g, const Word& w);
Relation compose(const Relation& a, const Relation& b);  // a then b

// The idempotent power of a relation: the unique idempotent among r, r^2, ...
Relation idempotent_power(const LabeledGraph& g, const Relation& r);

// Image/preimage of a subset under a relation.
Mask apply_relation(const Relation& r, Mask s);
Mask apply_relation_backward(const Relation& r, Mask s);

// All distinct nonempty-word relations (the zero relation included when it
// arises), capped at caps::monoid_elements().
std::vector<Relation> relation_monoid(const LabeledGraph& g);

// The left-tail image set of the periodic past ...u u u: the stable range
// of the powers of u's relation, i.e. the range of its idempotent power.
Mask periodic_tail_set(const LabeledGraph& g, const Word& u);

// The right-viability set of the periodic future v v v...: the vertices
// from which v can be read forever, i.e. the greatest fixed point of the
// preimage through v.
Mask periodic_viability_set(const LabeledGraph& g, const Word& v);

// The family of left-tail image sets: every set of the form "targets of
// left-infinite paths labeled by a fixed left-infinite word". Computed as
// the ranges of the monoid's idempotents closed under letter images; sorted.
std::vector<Mask> dee_family(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Follower comparison, quotient, language equality
// ---------------------------------------------------------------------------

// Partition of the vertices by equality of follower sets (the sets of
// right-infinite label sequences emitted from a vertex). Requires a
// right-resolving graph; computed by Moore-style refinement. Class ids are
// numbered by smallest member.
struct FollowerPartition {
    std::vector<int> class_of;  // per vertex
    int classes = 0;
};

FollowerPartition follower_partition(const LabeledGraph& g);

// sim[u][v] holds when every label sequence emitted from u (in g1) is also
// emitted from v (in g2), i.e. the follower set of u is contained in that
// of v. Both graphs must be right-resolving and trim.
std::vector<std::vector<bool>> simulation_preorder(const LabeledGraph& g1,
                                                   const LabeledGraph& g2);

bool follower_includes(const LabeledGraph& g1, const std::string& v1,
                       const LabeledGraph& g2, const std::string& v2);

// Quotient by follower equality. Each class is named after its first member
// (vertex order); the map sends every vertex to its class name. For a
// right-resolving input the quotient is right-resolving with pairwise
// distinct follower sets and presents the same shift.
struct MergedGraph {
    LabeledGraph graph;
    VertexMap map;
};

MergedGraph merged_graph(const LabeledGraph& g);

// Language equality of two presentations, with a shortest witness word
// (over label names) in exactly one of the languages when they differ.
struct LanguageComparison {
    bool equal = false;
    std::vector<std::string> witness;  // label names; empty when equal
    int witness_in = 0;                // 1 or 2: which language has the witness
};

LanguageComparison language_equal(const LabeledGraph& g1, const LabeledGraph& g2);

}  // namespace soficov
