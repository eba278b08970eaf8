/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Cover constructions. A cover of a shift is a right-resolving presentation
 * of it together with bookkeeping about where its vertices came from. This
 * module builds:
 *
 *  - the underline graph: vertices are the left-tail image sets of the
 *    presentation, edges are induced letter images;
 *  - the future cover: the quotient of the underline graph by follower
 *    equality (route "merge"), or equivalently the restriction of the
 *    follower-set graph to its regular vertices (route "regular-part");
 *  - the follower-set graph: the determinization of the presentation by
 *    nonempty-word images, quotiented by follower equality;
 *  - the minimal cover of an irreducible shift: the unique terminal
 *    communication component of the future cover.
 *
 * It also answers path/word questions tied to covers: synchronizing words,
 * focusing paths, followers of eventually periodic left tails, the lift of
 * an eventually periodic point into the future cover, regularity of
 * vertices and of individual bi-infinite paths, the embedding of a fully
 * regular presentation into its future cover, and predecessor separation.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soficov/graph.hpp"
#include "soficov/language.hpp"

namespace soficov {

// A cover: the graph plus provenance back to what each vertex stands for
// (subset names over the base presentation's vertices, or over the
// determinized states it was quotiented from).
struct Cover {
    LabeledGraph graph;
    std::string kind;   // "underline", "krieger", "fischer", "follower-graph",
                        // "double-subset", "gprime"
    std::string route;  // for kind "krieger": "merge" or "regular-part"
    std::map<std::string, std::vector<std::string>> provenance;
};

// A left-infinite label sequence ...u u u w (u nonempty), positions filled
// so that w ends just before position 0.
struct LeftTail {
    Word u;
    Word w;
};

// An eventually periodic bi-infinite label sequence ...u u u w v v v...
// (u, v nonempty); w occupies positions 0..|w|-1.
struct EPPoint {
    Word u;
    Word w;
    Word v;
};

// An eventually periodic bi-infinite path: a closed path repeated on the
// left, a transient middle, and a closed path repeated on the right.
// Consecutive edges chain; the cycles close up. `offset` anchors the path
// on the position axis: the first transient edge sits at position offset
// (the left cycle's last edge at offset-1, the right cycle starting right
// after the transient), so a path built for a point ...u u u w v v v...
// reads exactly that point's labels position by position.
struct EPPath {
    std::vector<Edge> left_cycle;
    std::vector<Edge> transient;
    std::vector<Edge> right_cycle;
    int offset = 0;
};

// Validate that p is a well-formed path in g (chaining, closed cycles,
// nonempty cycles). Throws UsageError when malformed.
void validate_path(const LabeledGraph& g, const EPPath& p);

// The label word read along one period: left cycle once, transient, right
// cycle once.
EPPoint path_labels(const LabeledGraph& g, const EPPath& p);

// ---------------------------------------------------------------------------
// Cover constructions
// ---------------------------------------------------------------------------

Cover underline_graph(const LabeledGraph& g);
Cover follower_set_graph(const LabeledGraph& g);

// Vertices whose follower set equals the follower set of some left-infinite
// path into them. Requires right-resolving; sorted by name.
std::vector<std::string> regular_vertices(const LabeledGraph& g);

// The future cover. Route "merge" quotients the underline graph by
// follower equality; route "regular-part" restricts the follower-set graph
// to its regular vertices. Both give the same cover up to graph
// isomorphism.
Cover krieger_cover(const LabeledGraph& g, const std::string& route = "merge");

bool is_irreducible(const LabeledGraph& g);

// The minimal right-resolving cover of an irreducible shift: the unique
// terminal component of the future cover. Throws UsageError when the
// presented shift is not irreducible.
Cover fischer_cover(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Words, tails, and paths
// ---------------------------------------------------------------------------

// Whether w is a synchronizing word of the presented shift: w in the
// language, and every u with uw in the language satisfies
// follower(uw) = follower(w). Throws UsageError when w is not in the
// language.
bool is_synchronizing_word(const LabeledGraph& g, const Word& w);

// A shortest word w, synchronizing for the presented shift, that labels a
// path ending at v; nullopt when no image of the full vertex set both
// contains v and certifies as synchronizing.
struct SyncPath {
    Word word;
    std::vector<std::string> final_state;  // image of the full set under word
};
std::optional<SyncPath> synchronizing_path_to(const LabeledGraph& g,
                                              const std::string& v);

// The left-tail image set D of ...u u u w (targets of paths labeled by the
// tail), and the future-cover vertex presenting its union follower
// language.
struct TailFollower {
    std::vector<std::string> dee;  // vertex names, sorted
    std::string cover_vertex;      // vertex of krieger_cover(g, "merge")
};
TailFollower follower_of_tail(const LabeledGraph& g, const LeftTail& t);

// The lift of an eventually periodic point y into the future cover: the
// unique bi-infinite path over the left-tail image sets. The cover must be
// krieger_cover(g, "merge"). Throws UsageError when y is not in the
// presented shift.
EPPath lift_point(const LabeledGraph& g, const Cover& krieger,
                  const EPPoint& y);

bool ep_point_in_shift(const LabeledGraph& g, const EPPoint& y);

// Whether an eventually periodic bi-infinite path x in g is regular: at
// every position, the follower set of the tail of its label sequence
// equals the follower set of the vertex it sits at.
bool is_regular_path(const LabeledGraph& g, const EPPath& x);

// The embedding of a right-resolving presentation with all vertices
// regular into its future cover: each vertex maps to the cover vertex with
// the same follower set. Injective exactly when g is follower-separated.
VertexMap embed_into_cover(const LabeledGraph& g, const Cover& krieger);

// Whether distinct vertices have distinct predecessor sets (label sequences
// of left-infinite paths into them). Decided on the determinization of the
// reversed graph.
bool is_predecessor_separated(const LabeledGraph& g);

}  // namespace soficov
