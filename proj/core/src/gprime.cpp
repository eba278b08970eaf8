/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Double-subset graph, fiber paths, and the strongly canonical cover.
 * See include/soficov/gprime.hpp.
 */

#include "soficov/gprime.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

namespace soficov {

namespace {

LabeledGraph trimmed_copy(const LabeledGraph& g) {
    if (is_trim(g)) return g;
    return trim(g);
}

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

}  // namespace

Cover double_subset_graph(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    Cover c;
    c.kind = "double-subset";
    if (t.empty()) return c;
    if (t.vcount() > caps::kMaxSubsetBase)
        throw CapError("double-subset graph needs at most " +
                       std::to_string(caps::kMaxSubsetBase) +
                       " base vertices, got " + std::to_string(t.vcount()));
    require_mask_capacity(t);

    // A letter maps a subset exactly when every member can read it; the
    // target is the exact image. Only bi-essential subsets are kept.
    std::vector<Mask> sources(static_cast<size_t>(t.lcount()));
    for (int l = 0; l < t.lcount(); ++l)
        sources[static_cast<size_t>(l)] = preimage_of(t, full_mask(t), l);

    std::vector<std::array<std::string, 3>> triples;
    Mask all = full_mask(t);
    for (Mask s = 1; s <= all; ++s) {
        for (int l = 0; l < t.lcount(); ++l) {
            if ((s & ~sources[static_cast<size_t>(l)]) != 0) continue;
            Mask im = image_of(t, s, l);
            triples.push_back({subset_name(t, s),
                               t.label_names[static_cast<size_t>(l)],
                               subset_name(t, im)});
        }
    }
    c.graph = trim(build_graph(triples));
    for (const auto& name : c.graph.vertex_names) {
        auto members = parse_subset_name(name);
        if (!members)
            throw UsageError("internal: double-subset vertex has no subset name");
        c.provenance[name] = *members;
    }
    return c;
}

namespace {

// Shared context for fiber computations over a double-subset cover.
struct FiberContext {
    const LabeledGraph& t;
    const LabeledGraph& dg;

    int vertex(Mask fiber) const {
        int v = dg.vertex(subset_name(t, fiber));
        if (v < 0)
            throw UsageError("internal: fiber set " + subset_name(t, fiber) +
                             " is missing from the double-subset graph");
        return v;
    }
    int label(int l) const {
        int dl = dg.label(t.label_names[static_cast<size_t>(l)]);
        if (dl < 0)
            throw UsageError("internal: label missing from the double-subset "
                             "graph");
        return dl;
    }
    Edge edge(Mask f, int l, Mask f2) const {
        return Edge{vertex(f), label(l), vertex(f2)};
    }
};

// Backward fill of right-viability sets through one word: result[j] is the
// viability before reading w[j..), with result[|w|] = after.
std::vector<Mask> viability_through(const LabeledGraph& t, const Word& w,
                                    Mask after) {
    std::vector<Mask> out(w.size() + 1);
    out[w.size()] = after;
    for (size_t j = w.size(); j-- > 0;)
        out[j] = preimage_of(t, out[j + 1], w[j]);
    return out;
}

}  // namespace

EPPath fiber_path(const LabeledGraph& g, const Cover& dsub, const EPPoint& y) {
    if (dsub.kind != "double-subset")
        throw UsageError("fiber_path needs a double-subset cover");
    if (y.u.empty() || y.v.empty())
        throw UsageError("eventually periodic points need nonempty periods");

    LabeledGraph t = trimmed_copy(g);
    auto u = t.empty() ? std::nullopt : remap_word(g, t, y.u);
    auto w = t.empty() ? std::nullopt : remap_word(g, t, y.w);
    auto v = t.empty() ? std::nullopt : remap_word(g, t, y.v);
    if (!u || !w || !v || !ep_point_in_shift(t, EPPoint{*u, *w, *v}))
        throw UsageError("the point is not in the presented shift");

    FiberContext cx{t, dsub.graph};

    // Left-tail image sets: constant at u-block boundaries, pushed letter
    // by letter inside a block and through the rest of the point.
    Mask d0 = periodic_tail_set(t, *u);
    std::vector<Mask> d_left(u->size() + 1);
    d_left[0] = d0;
    for (size_t j = 0; j < u->size(); ++j)
        d_left[j + 1] = image_of(t, d_left[j], (*u)[j]);
    if (d_left.back() != d0)
        throw UsageError("internal: left tail image sets do not close");

    // Right-viability sets: the greatest fixed point at v-block
    // boundaries, filled backward through v, w, and u.
    Mask w_gfp = periodic_viability_set(t, *v);
    std::vector<Mask> w_right = viability_through(t, *v, w_gfp);
    if (w_right.front() != w_gfp)
        throw UsageError("internal: right viability sets do not close");
    std::vector<Mask> w_trans = viability_through(t, *w, w_gfp);

    // Left viability boundaries until they repeat: b[k] is the viability
    // at the start of the k-th u-block left of w.
    std::vector<Mask> b = {w_trans.front()};
    size_t k1 = 0, k2 = 0;
    for (;;) {
        Mask nb = preimage_of(t, b.back(), *u);
        auto it = std::find(b.begin(), b.end(), nb);
        if (it != b.end()) {
            k1 = static_cast<size_t>(it - b.begin());
            k2 = b.size();
            break;
        }
        b.push_back(nb);
    }

    EPPath path;
    // Blocks k2 down to k1+1 form one period of the left cycle; blocks k1
    // down to 1 belong to the transient, which therefore starts k1 blocks
    // left of w.
    path.offset = -static_cast<int>(k1 * u->size());
    for (size_t k = k2; k >= 1; --k) {
        std::vector<Mask> w_blk = viability_through(t, *u, b[k - 1]);
        for (size_t j = 0; j < u->size(); ++j) {
            Mask f = d_left[j] & w_blk[j];
            Mask f2 = d_left[j + 1] & w_blk[j + 1];
            Edge e = cx.edge(f, (*u)[j], f2);
            (k > k1 ? path.left_cycle : path.transient).push_back(e);
        }
    }

    Mask d = d0;
    for (size_t j = 0; j < w->size(); ++j) {
        Mask f = d & w_trans[j];
        Mask d2 = image_of(t, d, (*w)[j]);
        path.transient.push_back(cx.edge(f, (*w)[j], d2 & w_trans[j + 1]));
        d = d2;
    }

    // Push v-blocks until the boundary left-tail set repeats; earlier
    // blocks extend the transient, the repeat is the right cycle.
    std::vector<Mask> boundaries = {d};
    std::vector<Edge> right_edges;
    for (;;) {
        for (size_t j = 0; j < v->size(); ++j) {
            Mask f = d & w_right[j];
            Mask d2 = image_of(t, d, (*v)[j]);
            right_edges.push_back(cx.edge(f, (*v)[j], d2 & w_right[j + 1]));
            d = d2;
        }
        auto it = std::find(boundaries.begin(), boundaries.end(), d);
        if (it != boundaries.end()) {
            size_t skip =
                static_cast<size_t>(it - boundaries.begin()) * v->size();
            path.transient.insert(path.transient.end(), right_edges.begin(),
                                  right_edges.begin() + static_cast<long>(skip));
            path.right_cycle.assign(
                right_edges.begin() + static_cast<long>(skip),
                right_edges.end());
            break;
        }
        boundaries.push_back(d);
    }

    validate_path(dsub.graph, path);
    return path;
}

// ---------------------------------------------------------------------------
// Component selection
// ---------------------------------------------------------------------------

Selection asymptotic_components(const LabeledGraph& g, const Cover& dsub,
                                const Bounds& bounds) {
    if (dsub.kind != "double-subset")
        throw UsageError("asymptotic_components needs a double-subset cover");

    Selection sel;
    LabeledGraph t = trimmed_copy(g);
    if (t.empty() || dsub.graph.empty()) return sel;

    ComponentDAG dag = components(dsub.graph);

    // Period candidates: idempotent witness words and their rotations.
    // Every left tail factors through an idempotent block, and every
    // periodic future is conjugate to an idempotent witness power, so
    // these cover the eventually periodic points up to the echoed bounds.
    std::set<Word> candidate_set;
    for (const auto& r : relation_monoid(t)) {
        if (!r.idempotent || r.zero()) continue;
        const Word& wd = r.witness;
        for (size_t k = 0; k < wd.size(); ++k) {
            Word rot(wd.begin() + static_cast<long>(k), wd.end());
            rot.insert(rot.end(), wd.begin(), wd.begin() + static_cast<long>(k));
            candidate_set.insert(std::move(rot));
        }
    }
    std::vector<Word> candidates(candidate_set.begin(), candidate_set.end());
    std::sort(candidates.begin(), candidates.end(),
              [](const Word& a, const Word& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    int max_len = 0;
    for (const auto& c : candidates)
        max_len = std::max(max_len, static_cast<int>(c.size()));

    SelectionReport& rep = sel.report;
    rep.left_bound = bounds.left.value_or(max_len);
    rep.right_bound = bounds.right.value_or(max_len);
    rep.mid_bound = bounds.mid.value_or(dsub.graph.vcount());

    std::vector<Word> lefts, rights;
    for (const auto& c : candidates) {
        if (static_cast<int>(c.size()) <= rep.left_bound) lefts.push_back(c);
        if (static_cast<int>(c.size()) <= rep.right_bound) rights.push_back(c);
    }
    rep.left_candidates = static_cast<int>(lefts.size());
    rep.right_candidates = static_cast<int>(rights.size());

    // Breadth-first search over right-viability sets, seeded by the
    // periodic futures, expanding by one-letter preimages (prepending a
    // letter to the middle word).
    struct Info {
        Mask parent = 0;
        int letter = -1;
        int seed = -1;
    };
    std::map<Mask, Info> info;
    std::deque<std::pair<Mask, int>> queue;
    for (size_t i = 0; i < rights.size(); ++i) {
        Mask seed = periodic_viability_set(t, rights[i]);
        if (seed == 0) continue;
        if (info.emplace(seed, Info{0, -1, static_cast<int>(i)}).second)
            queue.push_back({seed, 0});
    }
    while (!queue.empty()) {
        auto [m, depth] = queue.front();
        queue.pop_front();
        for (int l = 0; l < t.lcount(); ++l) {
            Mask nm = preimage_of(t, m, l);
            if (nm == 0 || info.count(nm)) continue;
            if (depth >= rep.mid_bound) {
                rep.saturated = true;
                continue;
            }
            info.emplace(nm, Info{m, l, info.at(m).seed});
            queue.push_back({nm, depth + 1});
        }
    }
    rep.middle_sets = static_cast<int>(info.size());

    // For each candidate past and each reachable viability set, the fiber
    // cycle's component depends only on the pair; a nonempty fiber at the
    // middle position certifies the witness point is in the shift.
    std::map<int, SelectionReport::Pick> picks;
    for (const auto& u : lefts) {
        Mask d0 = periodic_tail_set(t, u);
        if (d0 == 0) continue;
        for (const auto& [w0, w0info] : info) {
            if ((d0 & w0) == 0) continue;

            std::vector<Mask> b = {w0};
            size_t k1 = 0;
            for (;;) {
                Mask nb = preimage_of(t, b.back(), u);
                auto it = std::find(b.begin(), b.end(), nb);
                if (it != b.end()) {
                    k1 = static_cast<size_t>(it - b.begin());
                    break;
                }
                b.push_back(nb);
            }
            Mask fstar = d0 & b[k1];
            if (fstar == 0)
                throw UsageError("internal: empty fiber on a realizable point");
            int cv = dsub.graph.vertex(subset_name(t, fstar));
            if (cv < 0)
                throw UsageError("internal: fiber set missing from the "
                                 "double-subset graph");
            int comp = dag.comp_of[static_cast<size_t>(cv)];
            if (comp < 0)
                throw UsageError("internal: fiber cycle vertex is transient");
            if (picks.count(comp)) continue;

            Word mid;
            Mask cur = w0;
            while (info.at(cur).letter >= 0) {
                mid.push_back(info.at(cur).letter);
                cur = info.at(cur).parent;
            }
            SelectionReport::Pick pick;
            pick.component = dsub.graph.vertex_names[static_cast<size_t>(
                dag.components[static_cast<size_t>(comp)][0])];
            pick.u = render_word(t, u);
            pick.w = render_word(t, mid);
            pick.v = render_word(t, rights[static_cast<size_t>(
                info.at(w0).seed)]);
            picks.emplace(comp, std::move(pick));
        }
    }

    for (const auto& [comp, pick] : picks) {
        sel.components.push_back(comp);
        rep.picks.push_back(pick);
    }
    return sel;
}

GPrimeResult gprime_cover(const LabeledGraph& g, const Bounds& bounds) {
    LabeledGraph t = trimmed_copy(g);
    Cover dsub = double_subset_graph(t);

    GPrimeResult out;
    out.cover.kind = "gprime";
    if (dsub.graph.empty()) return out;

    Selection sel = asymptotic_components(t, dsub, bounds);
    out.report = sel.report;

    ComponentDAG dag = components(dsub.graph);
    std::vector<std::string> seeds;
    for (int comp : sel.components)
        for (int v : dag.components[static_cast<size_t>(comp)])
            seeds.push_back(dsub.graph.vertex_names[static_cast<size_t>(v)]);

    out.cover.graph = restrict_hereditary(dsub.graph, seeds);
    for (const auto& name : out.cover.graph.vertex_names) {
        auto it = dsub.provenance.find(name);
        if (it != dsub.provenance.end()) out.cover.provenance[name] = it->second;
    }
    return out;
}

std::vector<int> component_multiplicities(const Cover& c) {
    ComponentDAG dag = components(c.graph);
    std::vector<int> out;
    for (size_t i = 0; i < dag.components.size(); ++i) {
        if (dag.mixed_cardinality[i])
            throw UsageError("component " + std::to_string(i) +
                             " mixes fiber cardinalities");
        if (!dag.multiplicity[i])
            throw UsageError("component " + std::to_string(i) +
                             " has vertices without subset names");
        out.push_back(*dag.multiplicity[i]);
    }
    return out;
}

std::string SelectionReport::to_json() const {
    nlohmann::ordered_json j;
    j["left_bound"] = left_bound;
    j["mid_bound"] = mid_bound;
    j["right_bound"] = right_bound;
    j["saturated"] = saturated;
    j["left_candidates"] = left_candidates;
    j["right_candidates"] = right_candidates;
    j["middle_sets"] = middle_sets;
    j["components"] = nlohmann::ordered_json::array();
    for (const auto& p : picks) {
        nlohmann::ordered_json pj;
        pj["component"] = p.component;
        pj["u"] = p.u;
        pj["w"] = p.w;
        pj["v"] = p.v;
        j["components"].push_back(pj);
    }
    return j.dump(2) + "\n";
}

}  // namespace soficov
