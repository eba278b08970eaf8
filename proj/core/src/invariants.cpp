/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Conjugacy-invariant reports and canonicity checks.
 * See include/soficov/invariants.hpp.
 */

#include "soficov/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "soficov/gprime.hpp"
#include "soficov/language.hpp"

namespace soficov {

// ---------------------------------------------------------------------------
// Periodic counts
// ---------------------------------------------------------------------------

namespace {

using Matrix = std::vector<std::vector<std::uint64_t>>;

Matrix adjacency_counts(const LabeledGraph& g) {
    size_t n = static_cast<size_t>(g.vcount());
    Matrix a(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& e : g.edges)
        a[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] += 1;
    return a;
}

Matrix checked_multiply(const Matrix& a, const Matrix& b) {
    size_t n = a.size();
    Matrix c(n, std::vector<std::uint64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                std::uint64_t prod, sum;
                if (__builtin_mul_overflow(a[i][k], b[k][j], &prod) ||
                    __builtin_add_overflow(c[i][j], prod, &sum))
                    throw CapError("periodic count overflows 64 bits");
                c[i][j] = sum;
            }
        }
    }
    return c;
}

}  // namespace

std::vector<std::uint64_t> periodic_counts(const LabeledGraph& g, int k) {
    if (k < 0 || k > caps::kMaxPeriod)
        throw CapError("period bound " + std::to_string(k) +
                       " exceeds the cap of " +
                       std::to_string(caps::kMaxPeriod));
    std::vector<std::uint64_t> out;
    if (g.vcount() == 0) {
        out.assign(static_cast<size_t>(k), 0);
        return out;
    }
    Matrix a = adjacency_counts(g);
    Matrix p = a;
    for (int n = 1; n <= k; ++n) {
        if (n > 1) p = checked_multiply(p, a);
        std::uint64_t trace = 0;
        for (size_t i = 0; i < p.size(); ++i) {
            std::uint64_t sum;
            if (__builtin_add_overflow(trace, p[i][i], &sum))
                throw CapError("periodic count overflows 64 bits");
            trace = sum;
        }
        out.push_back(trace);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Labeled-graph isomorphism
// ---------------------------------------------------------------------------

namespace {

// Labels correspond across graphs by name, and letters no edge carries are
// presentation metadata rather than structure, so isomorphism compares the
// used alphabets only.
std::map<std::string, int> used_label_counts(const LabeledGraph& g) {
    std::map<std::string, int> out;
    for (const Edge& e : g.edges)
        ++out[g.label_names[static_cast<size_t>(e.label)]];
    return out;
}

// Column index per label id in the shared used-name order, -1 if unused.
std::vector<int> label_columns(const LabeledGraph& g,
                               const std::map<std::string, int>& colof) {
    std::vector<int> col(static_cast<size_t>(g.lcount()), -1);
    for (int l = 0; l < g.lcount(); ++l) {
        auto it = colof.find(g.label_names[static_cast<size_t>(l)]);
        if (it != colof.end()) col[static_cast<size_t>(l)] = it->second;
    }
    return col;
}

// Signature of a vertex: out- and in-degrees per used label name.
std::vector<int> vertex_signature(const LabeledGraph& g, int v,
                                  const std::vector<int>& col, int ncols) {
    std::vector<int> sig(static_cast<size_t>(2 * ncols), 0);
    for (int l = 0; l < g.lcount(); ++l) {
        int c = col[static_cast<size_t>(l)];
        if (c >= 0)
            sig[static_cast<size_t>(c)] =
                static_cast<int>(g.targets(v, l).size());
    }
    for (const auto& e : g.edges)
        if (e.dst == v)
            sig[static_cast<size_t>(ncols +
                                    col[static_cast<size_t>(e.label)])] += 1;
    return sig;
}

bool verify_vertex_map(const LabeledGraph& g1, const LabeledGraph& g2,
                       const std::vector<int>& map) {
    std::set<std::tuple<int, int, int>> mapped;
    for (const auto& e : g1.edges)
        mapped.insert({map[static_cast<size_t>(e.src)], e.label,
                       map[static_cast<size_t>(e.dst)]});
    if (mapped.size() != g1.edges.size()) return false;
    for (const auto& e : g2.edges) {
        int l1 = g1.label(g2.label_names[static_cast<size_t>(e.label)]);
        if (l1 < 0 || !mapped.count({e.src, l1, e.dst})) return false;
    }
    return mapped.size() == g2.edges.size();
}

// Forced matching by follower classes: works whenever both graphs are
// right-resolving and follower-separated, which covers every canonical
// cover this library builds.
std::optional<VertexMap> follower_matching(const LabeledGraph& g1,
                                           const LabeledGraph& g2) {
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& e : g1.edges)
        triples.push_back({"1:" + g1.vertex_names[static_cast<size_t>(e.src)],
                           g1.label_names[static_cast<size_t>(e.label)],
                           "1:" + g1.vertex_names[static_cast<size_t>(e.dst)]});
    for (const auto& e : g2.edges)
        triples.push_back({"2:" + g2.vertex_names[static_cast<size_t>(e.src)],
                           g2.label_names[static_cast<size_t>(e.label)],
                           "2:" + g2.vertex_names[static_cast<size_t>(e.dst)]});
    LabeledGraph u = build_graph(triples);
    FollowerPartition fp = follower_partition(u);

    std::map<int, std::pair<std::string, std::string>> classes;
    for (int v = 0; v < u.vcount(); ++v) {
        const auto& name = u.vertex_names[static_cast<size_t>(v)];
        auto& slot = classes[fp.class_of[static_cast<size_t>(v)]];
        if (name[0] == '1') {
            if (!slot.first.empty()) return std::nullopt;
            slot.first = name.substr(2);
        } else {
            if (!slot.second.empty()) return std::nullopt;
            slot.second = name.substr(2);
        }
    }
    VertexMap out;
    for (const auto& [cls, pair] : classes) {
        if (pair.first.empty() || pair.second.empty()) return std::nullopt;
        out.map[pair.first] = pair.second;
    }
    std::vector<int> idx(static_cast<size_t>(g1.vcount()), -1);
    for (const auto& [a, b] : out.map)
        idx[static_cast<size_t>(g1.vertex(a))] = g2.vertex(b);
    if (!verify_vertex_map(g1, g2, idx)) return std::nullopt;
    return out;
}

bool follower_separated(const LabeledGraph& g) {
    return follower_partition(g).classes == g.vcount();
}

}  // namespace

std::optional<VertexMap> graphs_isomorphic(const LabeledGraph& g1,
                                           const LabeledGraph& g2) {
    if (g1.vcount() != g2.vcount() || g1.ecount() != g2.ecount())
        return std::nullopt;
    std::map<std::string, int> used_labels = used_label_counts(g1);
    if (used_labels != used_label_counts(g2)) return std::nullopt;
    if (g1.vcount() == 0) return VertexMap{};

    bool rr = is_right_resolving(g1) && is_right_resolving(g2);
    if (rr) {
        if (auto m = follower_matching(g1, g2)) return m;
        // Follower-separated graphs admit only the forced matching.
        if (follower_separated(g1) || follower_separated(g2))
            return std::nullopt;
    }

    if (g1.vcount() > caps::kMaxSubsetBase)
        throw CapError("isomorphism search needs at most " +
                       std::to_string(caps::kMaxSubsetBase) + " vertices");

    // Backtracking on vertex signatures.
    int n = g1.vcount();
    std::map<std::string, int> colof;
    for (const auto& [name, count] : used_labels)
        colof.emplace(name, static_cast<int>(colof.size()));
    int ncols = static_cast<int>(colof.size());
    std::vector<int> col1 = label_columns(g1, colof);
    std::vector<int> col2 = label_columns(g2, colof);
    std::vector<std::vector<int>> sig2(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        sig2[static_cast<size_t>(v)] = vertex_signature(g2, v, col2, ncols);
    std::vector<std::vector<int>> candidates(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto s = vertex_signature(g1, v, col1, ncols);
        for (int m = 0; m < n; ++m)
            if (s == sig2[static_cast<size_t>(m)])
                candidates[static_cast<size_t>(v)].push_back(m);
        if (candidates[static_cast<size_t>(v)].empty()) return std::nullopt;
    }
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return candidates[static_cast<size_t>(a)].size() <
               candidates[static_cast<size_t>(b)].size();
    });

    std::vector<int> map(static_cast<size_t>(n), -1);
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::function<bool(size_t)> assign = [&](size_t pos) {
        if (pos == order.size()) return verify_vertex_map(g1, g2, map);
        int v = order[pos];
        for (int m : candidates[static_cast<size_t>(v)]) {
            if (used[static_cast<size_t>(m)]) continue;
            bool ok = true;
            // Local consistency against already-assigned neighbors.
            for (int l = 0; l < g1.lcount() && ok; ++l) {
                int l2 = g2.label(g1.label_names[static_cast<size_t>(l)]);
                // A name absent from g2 is unused in g1 too (the used
                // alphabets matched), so there is nothing to check.
                if (l2 < 0) continue;
                for (int tgt : g1.targets(v, l)) {
                    int mt = map[static_cast<size_t>(tgt)];
                    if (mt < 0) continue;
                    const auto& ts = g2.targets(m, l2);
                    if (!std::binary_search(ts.begin(), ts.end(), mt)) ok = false;
                }
                if (!ok) break;
                for (int src = 0; src < g1.vcount(); ++src) {
                    int ms = map[static_cast<size_t>(src)];
                    if (ms < 0) continue;
                    const auto& ts1 = g1.targets(src, l);
                    if (!std::binary_search(ts1.begin(), ts1.end(), v)) continue;
                    const auto& ts2 = g2.targets(ms, l2);
                    if (!std::binary_search(ts2.begin(), ts2.end(), m)) ok = false;
                }
            }
            if (!ok) continue;
            map[static_cast<size_t>(v)] = m;
            used[static_cast<size_t>(m)] = true;
            if (assign(pos + 1)) return true;
            map[static_cast<size_t>(v)] = -1;
            used[static_cast<size_t>(m)] = false;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;

    VertexMap out;
    for (int v = 0; v < n; ++v)
        out.map[g1.vertex_names[static_cast<size_t>(v)]] =
            g2.vertex_names[static_cast<size_t>(map[static_cast<size_t>(v)])];
    return out;
}

// ---------------------------------------------------------------------------
// Invariant reports
// ---------------------------------------------------------------------------

namespace {

std::string counts_string(const std::vector<std::uint64_t>& c) {
    std::string out = "[";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    return out + "]";
}

InvariantReport build_report(const LabeledGraph& g, const std::string& kind,
                             int k, bool multiplicity_in_signature) {
    InvariantReport rep;
    rep.cover = kind;
    rep.vertices = g.vcount();
    rep.edges = g.ecount();
    rep.periodic = periodic_counts(g, k);

    ComponentDAG dag = components(g);
    size_t nc = dag.components.size();
    for (size_t c = 0; c < nc; ++c) {
        ComponentReport cr;
        cr.vertices = static_cast<int>(dag.components[c].size());
        std::set<int> members(dag.components[c].begin(), dag.components[c].end());
        std::vector<std::array<std::string, 3>> triples;
        for (const auto& e : g.edges)
            if (members.count(e.src) && members.count(e.dst))
                triples.push_back(
                    {g.vertex_names[static_cast<size_t>(e.src)],
                     g.label_names[static_cast<size_t>(e.label)],
                     g.vertex_names[static_cast<size_t>(e.dst)]});
        LabeledGraph sub = build_graph(triples);
        cr.edges = sub.ecount();
        cr.multiplicity = dag.multiplicity[c];
        cr.terminal = dag.terminal[c];
        cr.source = dag.source[c];
        cr.periodic = periodic_counts(sub, k);
        rep.components.push_back(std::move(cr));
    }

    // Presentation-level component order.
    {
        std::ostringstream os;
        os << "n=" << nc;
        os << ";e=";
        for (size_t i = 0; i < dag.dag_edges.size(); ++i) {
            if (i) os << ",";
            os << dag.dag_edges[i].first << ">" << dag.dag_edges[i].second;
        }
        os << ";t=";
        bool first = true;
        for (size_t c = 0; c < nc; ++c)
            if (dag.terminal[c]) {
                if (!first) os << ",";
                os << c;
                first = false;
            }
        os << ";s=";
        first = true;
        for (size_t c = 0; c < nc; ++c)
            if (dag.source[c]) {
                if (!first) os << ",";
                os << c;
                first = false;
            }
        rep.dag = os.str();
    }

    // Conjugacy-level signature: each component rendered with its periodic
    // counts (and fiber cardinality when meaningful), followed by the
    // sorted signatures of the components it reaches; the whole report is
    // the sorted list over all components.
    {
        std::vector<std::vector<int>> reach(nc);
        for (const auto& [a, b] : dag.dag_edges)
            reach[static_cast<size_t>(a)].push_back(b);
        std::vector<std::string> memo(nc);
        std::function<const std::string&(size_t)> sig = [&](size_t c)
            -> const std::string& {
            if (!memo[c].empty()) return memo[c];
            std::string s = "(pc=" + counts_string(rep.components[c].periodic);
            if (multiplicity_in_signature) {
                s += ";m=";
                s += rep.components[c].multiplicity
                         ? std::to_string(*rep.components[c].multiplicity)
                         : "?";
            }
            std::vector<std::string> kids;
            for (int b : reach[c]) kids.push_back(sig(static_cast<size_t>(b)));
            std::sort(kids.begin(), kids.end());
            for (const auto& kid : kids) s += ">" + kid;
            s += ")";
            memo[c] = std::move(s);
            return memo[c];
        };
        std::vector<std::string> all;
        for (size_t c = 0; c < nc; ++c) all.push_back(sig(c));
        std::sort(all.begin(), all.end());
        std::string s;
        for (size_t i = 0; i < all.size(); ++i) {
            if (i) s += "+";
            s += all[i];
        }
        rep.signature = s;
    }
    return rep;
}

}  // namespace

InvariantReport invariant_report(const Cover& c, int k) {
    bool mult = c.kind == "double-subset" || c.kind == "gprime";
    return build_report(c.graph, c.kind, k, mult);
}

InvariantReport graph_report(const LabeledGraph& g, int k) {
    return build_report(g, "none", k, false);
}

std::string InvariantReport::to_json() const {
    nlohmann::ordered_json j;
    j["cover"] = cover;
    j["vertices"] = vertices;
    j["edges"] = edges;
    j["periodic"] = periodic;
    j["components"] = nlohmann::ordered_json::array();
    for (const auto& c : components) {
        nlohmann::ordered_json cj;
        cj["vertices"] = c.vertices;
        cj["edges"] = c.edges;
        if (c.multiplicity)
            cj["multiplicity"] = *c.multiplicity;
        else
            cj["multiplicity"] = nullptr;
        cj["terminal"] = c.terminal;
        cj["source"] = c.source;
        cj["periodic"] = c.periodic;
        j["components"].push_back(cj);
    }
    j["dag"] = dag;
    j["signature"] = signature;
    return j.dump(2) + "\n";
}

std::string InvariantReport::to_text() const {
    std::ostringstream os;
    os << "cover: " << cover << "\n";
    os << "vertices: " << vertices << "\n";
    os << "edges: " << edges << "\n";
    os << "periodic: " << counts_string(periodic) << "\n";
    os << "components: " << components.size() << "\n";
    for (size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        os << "  [" << i << "] vertices=" << c.vertices << " edges=" << c.edges;
        if (c.multiplicity) os << " multiplicity=" << *c.multiplicity;
        if (c.terminal) os << " terminal";
        if (c.source) os << " source";
        os << " periodic=" << counts_string(c.periodic) << "\n";
    }
    os << "dag: " << dag << "\n";
    os << "signature: " << signature << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Recodings and the canonicity suite
// ---------------------------------------------------------------------------

LabeledGraph two_block_recode(const LabeledGraph& g) {
    auto ename = [&](const Edge& e) {
        return g.vertex_names[static_cast<size_t>(e.src)] + "." +
               g.label_names[static_cast<size_t>(e.label)] + "." +
               g.vertex_names[static_cast<size_t>(e.dst)];
    };
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& e : g.edges) {
        for (const auto& f : g.edges) {
            if (e.dst != f.src) continue;
            triples.push_back({ename(e),
                               g.label_names[static_cast<size_t>(e.label)] +
                                   "." +
                                   g.label_names[static_cast<size_t>(f.label)],
                               ename(f)});
        }
    }
    return build_graph(triples);
}

std::string CanonicityReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    os << (all_pass ? "canonicity: all checks passed"
                    : "canonicity: some checks FAILED")
       << "\n";
    return os.str();
}

std::string CanonicityReport::to_json() const {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        j["checks"].push_back(cj);
    }
    j["all_pass"] = all_pass;
    return j.dump(2) + "\n";
}

CanonicityReport canonicity_suite(const LabeledGraph& g, int k) {
    CanonicityReport rep;
    auto add = [&](const std::string& name, bool pass,
                   const std::string& detail) {
        rep.checks.push_back({name, pass, pass ? "" : detail});
        if (!pass) rep.all_pass = false;
    };

    Cover km = krieger_cover(g, "merge");
    Cover kr = krieger_cover(g, "regular-part");
    {
        auto iso = graphs_isomorphic(km.graph, kr.graph);
        add("krieger-route-agreement", iso.has_value(),
            "merge and regular-part covers are not isomorphic");
    }

    for (int n : {2, 3}) {
        LabeledGraph hb = higher_block(g, n);
        Cover khb = krieger_cover(hb, "merge");
        auto iso = graphs_isomorphic(khb.graph, km.graph);
        add("krieger-higher-block-" + std::to_string(n), iso.has_value(),
            "cover of the higher-block presentation differs");
    }

    {
        // Cyclic relabeling of the alphabet.
        std::map<std::string, std::string> perm;
        for (size_t i = 0; i < g.label_names.size(); ++i)
            perm[g.label_names[i]] =
                g.label_names[(i + 1) % g.label_names.size()];
        LabeledGraph rl = relabel(g, perm);
        Cover krl = krieger_cover(rl, "merge");
        LabeledGraph expected = relabel(km.graph, perm);
        auto iso = graphs_isomorphic(krl.graph, expected);
        add("krieger-relabel", iso.has_value(),
            "cover does not commute with relabeling");
    }

    LabeledGraph tb = two_block_recode(g);
    {
        Cover ktb = krieger_cover(tb, "merge");
        InvariantReport a = invariant_report(km, k);
        InvariantReport b = invariant_report(ktb, k);
        add("krieger-two-block-periodic", a.periodic == b.periodic,
            "periodic counts " + counts_string(a.periodic) + " vs " +
                counts_string(b.periodic));
        add("krieger-two-block-signature", a.signature == b.signature,
            a.signature + " vs " + b.signature);
    }
    {
        GPrimeResult gp = gprime_cover(g);
        GPrimeResult gptb = gprime_cover(tb);
        InvariantReport a = invariant_report(gp.cover, k);
        InvariantReport b = invariant_report(gptb.cover, k);
        add("gprime-two-block-periodic", a.periodic == b.periodic,
            "periodic counts " + counts_string(a.periodic) + " vs " +
                counts_string(b.periodic));
        add("gprime-two-block-signature", a.signature == b.signature,
            a.signature + " vs " + b.signature);

        for (int n : {2, 3}) {
            std::string tag = "gprime-higher-block-" + std::to_string(n);
            LabeledGraph hb = trim(higher_block(g, n));
            if (hb.vcount() > caps::kMaxSubsetBase) {
                // An honest skip beats a cap error: the recoded base is too
                // large for the double-subset construction.
                rep.checks.push_back(
                    {tag, true,
                     "skipped: " + std::to_string(hb.vcount()) +
                         " recoded vertices exceed the double-subset cap"});
                continue;
            }
            GPrimeResult gphb = gprime_cover(hb);
            InvariantReport c = invariant_report(gphb.cover, k);
            add(tag + "-periodic", a.periodic == c.periodic,
                "periodic counts " + counts_string(a.periodic) + " vs " +
                    counts_string(c.periodic));
            add(tag + "-signature", a.signature == c.signature,
                a.signature + " vs " + c.signature);
        }

        std::map<std::string, std::string> perm;
        for (size_t i = 0; i < g.label_names.size(); ++i)
            perm[g.label_names[i]] =
                g.label_names[(i + 1) % g.label_names.size()];
        GPrimeResult gprl = gprime_cover(relabel(g, perm));
        InvariantReport d = invariant_report(gprl.cover, k);
        add("gprime-relabel-periodic", a.periodic == d.periodic,
            "periodic counts " + counts_string(a.periodic) + " vs " +
                counts_string(d.periodic));
        add("gprime-relabel-signature", a.signature == d.signature,
            a.signature + " vs " + d.signature);
    }
    return rep;
}

}  // namespace soficov
