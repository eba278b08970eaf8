/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Cover constructions. See include/soficov/covers.hpp.
 */

#include "soficov/covers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace soficov {

namespace {

LabeledGraph trimmed_copy(const LabeledGraph& g) {
    if (is_trim(g)) return g;
    return trim(g);
}

// Words are label indices of a specific graph; trimming can drop labels, so
// words must be re-indexed by name when they cross graphs. nullopt when a
// letter does not exist on the target side.
std::optional<Word> remap_word(const LabeledGraph& from, const LabeledGraph& to,
                               const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int l : w) {
        if (l < 0 || l >= from.lcount())
            throw UsageError("word letter index out of range");
        int m = to.label(from.label_names[static_cast<size_t>(l)]);
        if (m < 0) return std::nullopt;
        out.push_back(m);
    }
    return out;
}

// Build the induced subgraph on a set of vertices.
LabeledGraph induced_subgraph(const LabeledGraph& g,
                              const std::set<std::string>& keep) {
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& e : g.edges) {
        const auto& s = g.vertex_names[static_cast<size_t>(e.src)];
        const auto& d = g.vertex_names[static_cast<size_t>(e.dst)];
        if (keep.count(s) && keep.count(d))
            triples.push_back({s, g.label_names[static_cast<size_t>(e.label)], d});
    }
    return build_graph(triples);
}

// The determinized graph over the nonempty-word states of a subset
// automaton, with subset names over t's vertices. When include_initial is
// set, the initial state is added as a vertex even if no nonempty word
// reaches it.
LabeledGraph automaton_graph(const LabeledGraph& t, const SubsetAutomaton& a,
                             bool include_initial) {
    std::vector<std::array<std::string, 3>> triples;
    auto name = [&](Mask m) { return subset_name(t, m); };
    for (size_t i = 0; i < a.states.size(); ++i) {
        for (int l = 0; l < t.lcount(); ++l) {
            int j = a.transitions[i][static_cast<size_t>(l)];
            if (j < 0) continue;
            triples.push_back({name(a.states[i]),
                               t.label_names[static_cast<size_t>(l)],
                               name(a.states[static_cast<size_t>(j)])});
        }
    }
    if (include_initial && !a.initial_is_state()) {
        for (int l = 0; l < t.lcount(); ++l) {
            int j = a.initial_transitions[static_cast<size_t>(l)];
            if (j < 0) continue;
            triples.push_back({name(a.initial),
                               t.label_names[static_cast<size_t>(l)],
                               name(a.states[static_cast<size_t>(j)])});
        }
    }
    return build_graph(triples);
}

}  // namespace

// ---------------------------------------------------------------------------
// Path plumbing
// ---------------------------------------------------------------------------

void validate_path(const LabeledGraph& g, const EPPath& p) {
    if (p.left_cycle.empty() || p.right_cycle.empty())
        throw UsageError("path cycles must be nonempty");

    auto check_edge = [&](const Edge& e) {
        if (e.src < 0 || e.src >= g.vcount() || e.dst < 0 ||
            e.dst >= g.vcount() || e.label < 0 || e.label >= g.lcount())
            throw UsageError("path edge out of range");
        const auto& ts = g.targets(e.src, e.label);
        if (!std::binary_search(ts.begin(), ts.end(), e.dst))
            throw UsageError("path edge not present in the graph");
    };
    auto check_chain = [&](const std::vector<Edge>& es) {
        for (size_t i = 0; i + 1 < es.size(); ++i)
            if (es[i].dst != es[i + 1].src)
                throw UsageError("path edges do not chain");
    };

    for (const auto& e : p.left_cycle) check_edge(e);
    for (const auto& e : p.transient) check_edge(e);
    for (const auto& e : p.right_cycle) check_edge(e);
    check_chain(p.left_cycle);
    check_chain(p.transient);
    check_chain(p.right_cycle);
    if (p.left_cycle.back().dst != p.left_cycle.front().src)
        throw UsageError("left cycle does not close");
    if (p.right_cycle.back().dst != p.right_cycle.front().src)
        throw UsageError("right cycle does not close");
    int after_left = p.left_cycle.back().dst;
    int before_right = p.right_cycle.front().src;
    if (!p.transient.empty()) {
        if (p.transient.front().src != after_left)
            throw UsageError("transient does not chain to the left cycle");
        if (p.transient.back().dst != before_right)
            throw UsageError("transient does not chain to the right cycle");
    } else if (after_left != before_right) {
        throw UsageError("left and right cycles do not chain");
    }
}

EPPoint path_labels(const LabeledGraph& g, const EPPath& p) {
    (void)g;
    EPPoint y;
    for (const auto& e : p.left_cycle) y.u.push_back(e.label);
    for (const auto& e : p.transient) y.w.push_back(e.label);
    for (const auto& e : p.right_cycle) y.v.push_back(e.label);
    return y;
}

// ---------------------------------------------------------------------------
// Cover constructions
// ---------------------------------------------------------------------------

Cover underline_graph(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    Cover c;
    c.kind = "underline";
    if (t.empty()) return c;

    std::vector<Mask> dee = dee_family(t);
    std::vector<std::array<std::string, 3>> triples;
    for (Mask d : dee) {
        for (int l = 0; l < t.lcount(); ++l) {
            Mask im = image_of(t, d, l);
            if (im == 0) continue;
            triples.push_back({subset_name(t, d),
                               t.label_names[static_cast<size_t>(l)],
                               subset_name(t, im)});
        }
    }
    c.graph = build_graph(triples);
    for (Mask d : dee) c.provenance[subset_name(t, d)] = subset_names(t, d);
    return c;
}

Cover follower_set_graph(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    Cover c;
    c.kind = "follower-graph";
    if (t.empty()) return c;

    SubsetAutomaton a = subset_automaton(t);
    LabeledGraph det = automaton_graph(t, a, /*include_initial=*/false);
    MergedGraph m = merged_graph(det);
    c.graph = m.graph;
    for (const auto& [state, repr] : m.map.map)
        c.provenance[repr].push_back(state);
    for (auto& [repr, members] : c.provenance)
        std::sort(members.begin(), members.end());
    return c;
}

std::vector<std::string> regular_vertices(const LabeledGraph& g) {
    if (!is_right_resolving(g))
        throw UsageError("regular_vertices requires a right-resolving graph");
    LabeledGraph t = trimmed_copy(g);
    std::vector<std::string> out;
    if (t.empty()) return out;

    // v is regular iff some left-tail image set containing v has all its
    // members' follower sets contained in that of v. Vertices outside the
    // trimmed part lie on no bi-infinite path and are never regular.
    std::vector<Mask> dee = dee_family(t);
    auto sim = simulation_preorder(t, t);
    for (int v = 0; v < t.vcount(); ++v) {
        bool regular = false;
        for (Mask d : dee) {
            if (!(d >> v & 1)) continue;
            bool all = true;
            for (int u = 0; u < t.vcount() && all; ++u)
                if ((d >> u & 1) &&
                    !sim[static_cast<size_t>(u)][static_cast<size_t>(v)])
                    all = false;
            if (all) {
                regular = true;
                break;
            }
        }
        if (regular) out.push_back(t.vertex_names[static_cast<size_t>(v)]);
    }
    return out;
}

Cover krieger_cover(const LabeledGraph& g, const std::string& route) {
    if (route != "merge" && route != "regular-part")
        throw UsageError("unknown route '" + route +
                         "' (expected 'merge' or 'regular-part')");

    Cover c;
    c.kind = "krieger";
    c.route = route;

    LabeledGraph t = trimmed_copy(g);
    if (t.empty()) return c;

    if (route == "merge") {
        Cover u = underline_graph(t);
        MergedGraph m = merged_graph(u.graph);
        c.graph = m.graph;
        for (const auto& [subset, repr] : m.map.map)
            c.provenance[repr].push_back(subset);
        for (auto& [repr, members] : c.provenance)
            std::sort(members.begin(), members.end());
        return c;
    }

    Cover fsg = follower_set_graph(t);
    std::vector<std::string> reg = regular_vertices(fsg.graph);
    std::set<std::string> keep(reg.begin(), reg.end());
    c.graph = induced_subgraph(fsg.graph, keep);
    for (const auto& v : reg) {
        auto it = fsg.provenance.find(v);
        if (it != fsg.provenance.end()) c.provenance[v] = it->second;
    }
    return c;
}

namespace {

// The unique terminal component of the future cover, when the cover is
// nonempty and has exactly one; its language must then equal the
// presented language for the shift to be irreducible.
struct TerminalPart {
    bool irreducible = false;
    LabeledGraph part;
    std::vector<std::string> part_vertices;
};

TerminalPart terminal_part(const LabeledGraph& g, const Cover& krieger) {
    TerminalPart out;
    if (krieger.graph.empty()) return out;

    ComponentDAG dag = components(krieger.graph);
    int terminal = -1;
    for (size_t c = 0; c < dag.components.size(); ++c) {
        if (!dag.terminal[c]) continue;
        if (terminal >= 0) return out;  // more than one terminal component
        terminal = static_cast<int>(c);
    }
    if (terminal < 0) return out;

    std::set<std::string> keep;
    for (int v : dag.components[static_cast<size_t>(terminal)])
        keep.insert(krieger.graph.vertex_names[static_cast<size_t>(v)]);
    out.part = induced_subgraph(krieger.graph, keep);
    out.part_vertices.assign(keep.begin(), keep.end());
    out.irreducible = language_equal(out.part, g).equal;
    return out;
}

}  // namespace

bool is_irreducible(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    if (t.empty()) return false;
    Cover k = krieger_cover(t, "merge");
    return terminal_part(t, k).irreducible;
}

Cover fischer_cover(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    Cover k = t.empty() ? Cover{} : krieger_cover(t, "merge");
    TerminalPart tp = t.empty() ? TerminalPart{} : terminal_part(t, k);
    if (!tp.irreducible)
        throw UsageError("the presented shift is not irreducible");

    Cover c;
    c.kind = "fischer";
    c.graph = tp.part;
    for (const auto& v : tp.part_vertices) {
        auto it = k.provenance.find(v);
        if (it != k.provenance.end()) c.provenance[v] = it->second;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Words, tails, and paths
// ---------------------------------------------------------------------------

bool is_synchronizing_word(const LabeledGraph& g, const Word& w) {
    LabeledGraph t = trimmed_copy(g);
    auto wt = t.empty() ? std::nullopt : remap_word(g, t, w);
    if (!wt || !contains_word(t, *wt))
        throw UsageError("the word is not in the language of the shift");

    // States reachable by any word (the empty word included); w is
    // synchronizing iff every state alive under w lands in the follower
    // class of the full set's image under w.
    SubsetAutomaton a = subset_automaton(t);
    LabeledGraph det = automaton_graph(t, a, /*include_initial=*/true);
    FollowerPartition fp = follower_partition(det);
    auto class_of = [&](Mask m) {
        int idx = det.vertex(subset_name(t, m));
        if (idx < 0) throw UsageError("internal: state missing from automaton");
        return fp.class_of[static_cast<size_t>(idx)];
    };

    // Every u with uw in the language has image(full, u) among the states
    // (or the initial set itself for the empty u, whose image under w is
    // the target's own class).
    Mask target = image_of(t, a.initial, *wt);
    int want = class_of(target);
    for (Mask s : a.states) {
        Mask im = image_of(t, s, *wt);
        if (im != 0 && class_of(im) != want) return false;
    }
    return true;
}

std::optional<SyncPath> synchronizing_path_to(const LabeledGraph& g,
                                              const std::string& v) {
    if (g.vertex(v) < 0) throw UsageError("unknown vertex '" + v + "'");
    LabeledGraph t = trimmed_copy(g);
    int tv = t.vertex(v);
    if (tv < 0) return std::nullopt;  // v lies on no bi-infinite path

    SubsetAutomaton a = subset_automaton(t);

    // Breadth-first over subset states from the full set, letters in
    // order: the first accepted word is shortest, then lexicographically
    // least. A state qualifies when it contains v and its word certifies
    // as synchronizing.
    std::set<Mask> seen = {a.initial};
    std::deque<std::pair<Mask, Word>> queue = {{a.initial, {}}};
    while (!queue.empty()) {
        auto [m, word] = queue.front();
        queue.pop_front();
        if ((m >> tv & 1)) {
            Word in_g;
            bool ok = true;
            for (int l : word) {
                int gl = g.label(t.label_names[static_cast<size_t>(l)]);
                if (gl < 0) ok = false;
                in_g.push_back(gl);
            }
            if (ok && is_synchronizing_word(t, word)) {
                SyncPath sp;
                sp.word = in_g;
                sp.final_state = subset_names(t, m);
                return sp;
            }
        }
        for (int l = 0; l < t.lcount(); ++l) {
            Mask im = image_of(t, m, l);
            if (im == 0 || !seen.insert(im).second) continue;
            Word w = word;
            w.push_back(l);
            queue.push_back({im, std::move(w)});
        }
    }
    return std::nullopt;
}

TailFollower follower_of_tail(const LabeledGraph& g, const LeftTail& tail) {
    LabeledGraph t = trimmed_copy(g);
    std::optional<Word> u, w;
    if (!t.empty()) {
        u = remap_word(g, t, tail.u);
        w = remap_word(g, t, tail.w);
    }
    Mask d = 0;
    if (u && w) d = image_of(t, periodic_tail_set(t, *u), *w);
    if (d == 0)
        throw UsageError("the left tail is not realizable in the presentation");

    TailFollower out;
    out.dee = subset_names(t, d);

    Cover k = krieger_cover(t, "merge");
    std::string name = subset_name(t, d);
    for (const auto& [repr, members] : k.provenance) {
        if (std::binary_search(members.begin(), members.end(), name)) {
            out.cover_vertex = repr;
            return out;
        }
    }
    throw UsageError("internal: tail image set missing from the cover");
}

bool ep_point_in_shift(const LabeledGraph& g, const EPPoint& y) {
    if (y.u.empty() || y.v.empty())
        throw UsageError("eventually periodic points need nonempty periods");
    LabeledGraph t = trimmed_copy(g);
    if (t.empty()) return false;
    auto u = remap_word(g, t, y.u);
    auto w = remap_word(g, t, y.w);
    auto v = remap_word(g, t, y.v);
    if (!u || !w || !v) return false;

    Mask d = periodic_tail_set(t, *u);
    if (d == 0) return false;
    for (int l : *w) {
        d = image_of(t, d, l);
        if (d == 0) return false;
    }
    // Push period blocks until the block-boundary set repeats; the point
    // is in the shift iff no boundary set (hence no intermediate set)
    // empties out before the repeat.
    std::vector<Mask> seen = {d};
    for (;;) {
        d = image_of(t, d, *v);
        if (d == 0) return false;
        if (std::find(seen.begin(), seen.end(), d) != seen.end()) return true;
        seen.push_back(d);
    }
}

EPPath lift_point(const LabeledGraph& g, const Cover& krieger,
                  const EPPoint& y) {
    if (krieger.kind != "krieger" || krieger.route != "merge")
        throw UsageError("lift_point needs the future cover built by the "
                         "merge route");
    if (y.u.empty() || y.v.empty())
        throw UsageError("eventually periodic points need nonempty periods");

    LabeledGraph t = trimmed_copy(g);
    auto u = t.empty() ? std::nullopt : remap_word(g, t, y.u);
    auto w = t.empty() ? std::nullopt : remap_word(g, t, y.w);
    auto v = t.empty() ? std::nullopt : remap_word(g, t, y.v);
    if (!u || !w || !v || !ep_point_in_shift(t, EPPoint{*u, *w, *v}))
        throw UsageError("the point is not in the presented shift");

    const LabeledGraph& K = krieger.graph;

    // Resolve a left-tail image set to its cover vertex index.
    std::map<std::string, int> to_cover;
    for (const auto& [repr, members] : krieger.provenance)
        for (const auto& m : members) to_cover[m] = K.vertex(repr);
    auto cover_vertex = [&](Mask m) {
        auto it = to_cover.find(subset_name(t, m));
        if (it == to_cover.end() || it->second < 0)
            throw UsageError("internal: tail image set missing from the cover");
        return it->second;
    };
    auto cover_label = [&](int l) {
        int kl = K.label(t.label_names[static_cast<size_t>(l)]);
        if (kl < 0) throw UsageError("internal: label missing from the cover");
        return kl;
    };

    EPPath path;
    // One period of the left cycle: positions -|u| .. -1.
    Mask d0 = periodic_tail_set(t, *u);
    Mask d = d0;
    for (int l : *u) {
        Mask next = image_of(t, d, l);
        path.left_cycle.push_back({cover_vertex(d), cover_label(l),
                                   cover_vertex(next)});
        d = next;
    }
    if (d != d0)
        throw UsageError("internal: left cycle of tail image sets is open");

    for (int l : *w) {
        Mask next = image_of(t, d, l);
        path.transient.push_back({cover_vertex(d), cover_label(l),
                                  cover_vertex(next)});
        d = next;
    }

    // Read period blocks on the right until the boundary set repeats; the
    // blocks before the repeat extend the transient.
    std::vector<Mask> boundaries = {d};
    std::vector<Edge> right_edges;
    for (;;) {
        for (int l : *v) {
            Mask next = image_of(t, d, l);
            right_edges.push_back({cover_vertex(d), cover_label(l),
                                   cover_vertex(next)});
            d = next;
        }
        auto it = std::find(boundaries.begin(), boundaries.end(), d);
        if (it != boundaries.end()) {
            size_t first = static_cast<size_t>(it - boundaries.begin());
            size_t skip = first * v->size();
            path.transient.insert(path.transient.end(), right_edges.begin(),
                                  right_edges.begin() + static_cast<long>(skip));
            path.right_cycle.assign(right_edges.begin() + static_cast<long>(skip),
                                    right_edges.end());
            break;
        }
        boundaries.push_back(d);
    }

    validate_path(K, path);
    return path;
}

bool is_regular_path(const LabeledGraph& g, const EPPath& x) {
    if (!is_right_resolving(g))
        throw UsageError("is_regular_path requires a right-resolving graph");
    if (!is_trim(g))
        throw UsageError("is_regular_path requires a trim graph");
    validate_path(g, x);

    auto sim = simulation_preorder(g, g);
    auto dominated = [&](Mask d, int v) {
        if (!(d >> v & 1))
            throw UsageError("internal: path vertex outside its tail image set");
        for (int uu = 0; uu < g.vcount(); ++uu)
            if ((d >> uu & 1) &&
                !sim[static_cast<size_t>(uu)][static_cast<size_t>(v)])
                return false;
        return true;
    };

    Word u, w, v;
    for (const auto& e : x.left_cycle) u.push_back(e.label);
    for (const auto& e : x.transient) w.push_back(e.label);
    for (const auto& e : x.right_cycle) v.push_back(e.label);

    // One left period: the tail image sets and the path vertices both
    // repeat with the left period.
    Mask d = periodic_tail_set(g, u);
    {
        Mask probe = d;
        for (size_t i = 0; i < x.left_cycle.size(); ++i) {
            if (!dominated(probe, x.left_cycle[i].src)) return false;
            probe = image_of(g, probe, u[i]);
        }
        if (probe != d)
            throw UsageError("internal: left cycle of tail image sets is open");
    }
    for (size_t i = 0; i < x.transient.size(); ++i) {
        if (!dominated(d, x.transient[i].src)) return false;
        d = image_of(g, d, w[i]);
    }
    // Right of the transient: block boundaries align with the right cycle,
    // so the pair (set, cycle phase) repeats once the boundary set does.
    std::vector<Mask> boundaries = {d};
    for (;;) {
        for (size_t i = 0; i < x.right_cycle.size(); ++i) {
            if (!dominated(d, x.right_cycle[i].src)) return false;
            d = image_of(g, d, v[i]);
        }
        if (std::find(boundaries.begin(), boundaries.end(), d) !=
            boundaries.end())
            return true;
        boundaries.push_back(d);
    }
}

VertexMap embed_into_cover(const LabeledGraph& g, const Cover& krieger) {
    if (krieger.kind != "krieger")
        throw UsageError("embed_into_cover needs a future cover");
    if (!is_right_resolving(g))
        throw UsageError("embed_into_cover requires a right-resolving graph");
    if (!is_trim(g))
        throw UsageError("embed_into_cover requires a trim graph");

    std::vector<std::string> reg = regular_vertices(g);
    if (static_cast<int>(reg.size()) != g.vcount()) {
        std::string missing;
        std::set<std::string> regset(reg.begin(), reg.end());
        for (const auto& n : g.vertex_names)
            if (!regset.count(n)) missing += (missing.empty() ? "" : ", ") + n;
        throw UsageError("not every vertex is regular (non-regular: " +
                         missing + ")");
    }

    const LabeledGraph& K = krieger.graph;
    auto fwd = simulation_preorder(g, K);
    auto bwd = simulation_preorder(K, g);

    VertexMap out;
    for (int v = 0; v < g.vcount(); ++v) {
        int match = -1;
        for (int k = 0; k < K.vcount(); ++k) {
            if (fwd[static_cast<size_t>(v)][static_cast<size_t>(k)] &&
                bwd[static_cast<size_t>(k)][static_cast<size_t>(v)]) {
                if (match >= 0)
                    throw UsageError("internal: cover is not follower-separated");
                match = k;
            }
        }
        if (match < 0)
            throw UsageError("internal: regular vertex '" +
                             g.vertex_names[static_cast<size_t>(v)] +
                             "' has no follower match in the cover");
        out.map[g.vertex_names[static_cast<size_t>(v)]] =
            K.vertex_names[static_cast<size_t>(match)];
    }
    return out;
}

bool is_predecessor_separated(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    if (t.vcount() <= 1) return true;
    require_mask_capacity(t);
    LabeledGraph r = reverse(t);

    // Determinize the reversed graph from every singleton; two vertices
    // have equal predecessor languages iff their singletons fall in the
    // same follower class of the determinization.
    std::set<Mask> seen;
    std::deque<Mask> queue;
    auto push = [&](Mask m) {
        if (m != 0 && seen.insert(m).second) queue.push_back(m);
    };
    for (int v = 0; v < r.vcount(); ++v) push(Mask{1} << v);
    while (!queue.empty()) {
        Mask m = queue.front();
        queue.pop_front();
        for (int l = 0; l < r.lcount(); ++l) push(image_of(r, m, l));
    }

    std::vector<std::array<std::string, 3>> triples;
    for (Mask m : seen) {
        for (int l = 0; l < r.lcount(); ++l) {
            Mask im = image_of(r, m, l);
            if (im == 0) continue;
            triples.push_back({subset_name(r, m),
                               r.label_names[static_cast<size_t>(l)],
                               subset_name(r, im)});
        }
    }
    LabeledGraph det = build_graph(triples);
    FollowerPartition fp = follower_partition(det);

    std::set<int> classes;
    for (int v = 0; v < r.vcount(); ++v) {
        int idx = det.vertex(subset_name(r, Mask{1} << v));
        // A vertex with no edges into it at all never shows up in the
        // determinization; its predecessor language is empty and unique
        // only if no other vertex shares that. Trim graphs always have
        // every singleton present.
        if (idx < 0) return false;
        if (!classes.insert(fp.class_of[static_cast<size_t>(idx)]).second)
            return false;
    }
    return true;
}

}  // namespace soficov
