/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Graph module implementation: formats, trimming, components, recodings.
 */

#include "soficov/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace soficov {

namespace caps {

std::size_t monoid_elements() {
    static const std::size_t value = [] {
        if (const char* env = std::getenv("SOFICOV_CAP")) {
            char* end = nullptr;
            unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
        }
        return static_cast<std::size_t>(1'000'000);
    }();
    return value;
}

}  // namespace caps

// ---------------------------------------------------------------------------
// LabeledGraph basics
// ---------------------------------------------------------------------------

int LabeledGraph::vertex(const std::string& name) const {
    auto it = std::lower_bound(vertex_names.begin(), vertex_names.end(), name);
    if (it == vertex_names.end() || *it != name) return -1;
    return static_cast<int>(it - vertex_names.begin());
}

int LabeledGraph::label(const std::string& name) const {
    auto it = std::lower_bound(label_names.begin(), label_names.end(), name);
    if (it == label_names.end() || *it != name) return -1;
    return static_cast<int>(it - label_names.begin());
}

bool LabeledGraph::has_out_edge(int v) const {
    for (const auto& t : out[v])
        if (!t.empty()) return true;
    return false;
}

bool LabeledGraph::has_in_edge(int v) const {
    for (const auto& s : in[v])
        if (!s.empty()) return true;
    return false;
}

LabeledGraph build_graph(const std::vector<std::array<std::string, 3>>& triples) {
    LabeledGraph g;
    std::set<std::string> vset, lset;
    for (const auto& t : triples) {
        vset.insert(t[0]);
        vset.insert(t[2]);
        lset.insert(t[1]);
    }
    g.vertex_names.assign(vset.begin(), vset.end());
    g.label_names.assign(lset.begin(), lset.end());

    std::set<Edge> eset;
    for (const auto& t : triples)
        eset.insert(Edge{g.vertex(t[0]), g.label(t[1]), g.vertex(t[2])});
    g.edges.assign(eset.begin(), eset.end());

    g.out.assign(g.vcount(), std::vector<std::vector<int>>(g.lcount()));
    g.in.assign(g.vcount(), std::vector<std::vector<int>>(g.lcount()));
    for (const Edge& e : g.edges) {
        g.out[e.src][e.label].push_back(e.dst);
        g.in[e.dst][e.label].push_back(e.src);
    }
    return g;
}

bool is_right_resolving(const LabeledGraph& g) {
    for (int v = 0; v < g.vcount(); ++v)
        for (int l = 0; l < g.lcount(); ++l)
            if (g.out[v][l].size() > 1) return false;
    return true;
}

bool is_trim(const LabeledGraph& g) {
    for (int v = 0; v < g.vcount(); ++v)
        if (!g.has_out_edge(v) || !g.has_in_edge(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Vertex subsets
// ---------------------------------------------------------------------------

void require_mask_capacity(const LabeledGraph& g, const char* op) {
    if (g.vcount() > caps::kMaxMaskVertices)
        throw CapError(std::string(op) + ": graph has " + std::to_string(g.vcount()) +
                       " vertices, more than the supported " +
                       std::to_string(caps::kMaxMaskVertices));
}

Mask full_mask(const LabeledGraph& g) {
    require_mask_capacity(g, "full_mask");
    if (g.vcount() == 0) return 0;
    if (g.vcount() == caps::kMaxMaskVertices) return ~Mask{0};
    return (Mask{1} << g.vcount()) - 1;
}

std::string subset_name(const LabeledGraph& g, Mask m) {
    std::string s = "{";
    bool first = true;
    for (int v = 0; v < g.vcount(); ++v) {
        if (!(m >> v & 1)) continue;
        if (!first) s += ',';
        s += g.vertex_names[v];
        first = false;
    }
    s += '}';
    return s;
}

std::vector<std::string> subset_names(const LabeledGraph& g, Mask m) {
    std::vector<std::string> names;
    for (int v = 0; v < g.vcount(); ++v)
        if (m >> v & 1) names.push_back(g.vertex_names[v]);
    return names;
}

Mask mask_of(const LabeledGraph& g, const std::vector<std::string>& names) {
    require_mask_capacity(g, "mask_of");
    Mask m = 0;
    for (const auto& n : names) {
        int v = g.vertex(n);
        if (v < 0) throw UsageError("unknown vertex '" + n + "'");
        m |= Mask{1} << v;
    }
    return m;
}

namespace {

bool is_token_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '{' || c == '}' || c == ',' || c == '.' || c == '+' || c == '-';
}

bool is_plain_name_char(char c) {
    // Token characters that may appear in a subset member name: everything
    // except the braces and comma that structure the rendering itself.
    return is_token_char(c) && c != '{' && c != '}' && c != ',';
}

}  // namespace

std::optional<std::vector<std::string>> parse_subset_name(const std::string& name) {
    if (name.size() < 3 || name.front() != '{' || name.back() != '}') return std::nullopt;
    std::vector<std::string> members;
    std::string current;
    // Members may themselves be subset names (covers of covers), so split
    // on commas at brace depth 0 only.
    int depth = 0;
    for (std::size_t i = 1; i + 1 < name.size(); ++i) {
        char c = name[i];
        if (c == ',' && depth == 0) {
            if (current.empty()) return std::nullopt;
            members.push_back(current);
            current.clear();
        } else if (c == '{') {
            ++depth;
            current += c;
        } else if (c == '}') {
            if (depth == 0) return std::nullopt;
            --depth;
            current += c;
        } else if (c == ',' || is_plain_name_char(c)) {
            current += c;
        } else {
            return std::nullopt;
        }
    }
    if (depth != 0 || current.empty()) return std::nullopt;
    members.push_back(current);
    return members;
}

// ---------------------------------------------------------------------------
// Formats
// ---------------------------------------------------------------------------

LabeledGraph parse_lg(const std::string& text) {
    std::vector<std::array<std::string, 3>> triples;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        };
        skip_ws();
        if (i == line.size()) continue;        // blank
        if (line[i] == '#') continue;          // comment line

        std::array<std::string, 3> tok;
        for (int t = 0; t < 3; ++t) {
            skip_ws();
            std::size_t start = i;
            while (i < line.size() && is_token_char(line[i])) ++i;
            if (i == start)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected SRC LABEL DST, got '" + line + "'");
            tok[t] = line.substr(start, i - start);
        }
        skip_ws();
        if (i != line.size())
            throw ParseError("line " + std::to_string(lineno) +
                             ": trailing characters after edge: '" + line + "'");
        triples.push_back(tok);
    }
    return build_graph(triples);
}

std::string serialize_lg(const LabeledGraph& g) {
    std::string s;
    for (const Edge& e : g.edges) {
        s += g.vertex_names[e.src];
        s += ' ';
        s += g.label_names[e.label];
        s += ' ';
        s += g.vertex_names[e.dst];
        s += '\n';
    }
    return s;
}

std::string serialize_dot(const LabeledGraph& g) {
    std::string s = "digraph G {\n";
    for (const Edge& e : g.edges) {
        s += "  \"" + g.vertex_names[e.src] + "\" -> \"" + g.vertex_names[e.dst] +
             "\" [label=\"" + g.label_names[e.label] + "\"];\n";
    }
    s += "}\n";
    return s;
}

std::string serialize_json(const LabeledGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.vertex_names;
    j["alphabet"] = g.label_names;
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges)
        edges.push_back({g.vertex_names[e.src], g.label_names[e.label], g.vertex_names[e.dst]});
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

namespace {

LabeledGraph subgraph_by_vertices(const LabeledGraph& g, const std::vector<bool>& keep) {
    // Keep the full alphabet (and with it every label id): words over the
    // presentation's alphabet must stay meaningful after trimming even when
    // no surviving edge carries some letter.
    LabeledGraph s;
    s.label_names = g.label_names;
    std::vector<int> id(g.vcount(), -1);
    for (int v = 0; v < g.vcount(); ++v)
        if (keep[v]) {
            id[v] = static_cast<int>(s.vertex_names.size());
            s.vertex_names.push_back(g.vertex_names[v]);
        }
    // A monotone vertex renumbering keeps the edge list sorted.
    for (const Edge& e : g.edges)
        if (keep[e.src] && keep[e.dst])
            s.edges.push_back(Edge{id[e.src], e.label, id[e.dst]});
    s.out.assign(s.vcount(), std::vector<std::vector<int>>(s.lcount()));
    s.in.assign(s.vcount(), std::vector<std::vector<int>>(s.lcount()));
    for (const Edge& e : s.edges) {
        s.out[e.src][e.label].push_back(e.dst);
        s.in[e.dst][e.label].push_back(e.src);
    }
    return s;
}

}  // namespace

LabeledGraph trim(const LabeledGraph& g) {
    // Iteratively delete vertices missing an in- or out-edge; the remainder
    // is exactly the set of vertices lying on bi-infinite paths.
    std::vector<bool> keep(g.vcount(), true);
    std::vector<int> outdeg(g.vcount(), 0), indeg(g.vcount(), 0);
    for (const Edge& e : g.edges) {
        ++outdeg[e.src];
        ++indeg[e.dst];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.vcount(); ++v) {
            if (!keep[v] || (outdeg[v] > 0 && indeg[v] > 0)) continue;
            keep[v] = false;
            changed = true;
            for (const Edge& e : g.edges) {
                if (e.src == v && keep[e.dst]) --indeg[e.dst];
                if (e.dst == v && keep[e.src]) --outdeg[e.src];
            }
        }
    }
    return subgraph_by_vertices(g, keep);
}

ComponentDAG components(const LabeledGraph& g) {
    const int n = g.vcount();

    // Tarjan's algorithm, iterative to keep deep graphs safe.
    std::vector<int> index(n, -1), low(n, 0), scc_of(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, scc_count = 0;

    // Flat successor lists (ignoring labels and parallel edges).
    std::vector<std::vector<int>> succ(n);
    for (const Edge& e : g.edges) succ[e.src].push_back(e.dst);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    struct Frame {
        int v;
        std::size_t next_child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_child < succ[f.v].size()) {
                int w = succ[f.v][f.next_child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc_of[w] = scc_count;
                    } while (w != f.v);
                    ++scc_count;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // An SCC is recurrent when it contains an edge (a cycle through it).
    std::vector<bool> recurrent(scc_count, false);
    for (const Edge& e : g.edges)
        if (scc_of[e.src] == scc_of[e.dst]) recurrent[scc_of[e.src]] = true;

    std::vector<std::vector<int>> groups(scc_count);
    for (int v = 0; v < n; ++v) groups[scc_of[v]].push_back(v);

    ComponentDAG dag;
    dag.comp_of.assign(n, -1);
    std::vector<std::vector<int>> comps;
    for (int c = 0; c < scc_count; ++c) {
        if (recurrent[c])
            comps.push_back(groups[c]);
        else
            dag.transients.insert(dag.transients.end(), groups[c].begin(), groups[c].end());
    }
    std::sort(dag.transients.begin(), dag.transients.end());
    // Deterministic component order: by the name of the smallest member.
    std::sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) {
        return g.vertex_names[a.front()] < g.vertex_names[b.front()];
    });
    dag.components = std::move(comps);
    for (std::size_t c = 0; c < dag.components.size(); ++c)
        for (int v : dag.components[c]) dag.comp_of[v] = static_cast<int>(c);

    // Communication order: C -> C' when some member of C reaches some member
    // of C' (possibly through transient vertices). Reachability by DFS.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) {
        std::vector<int> todo = {v};
        while (!todo.empty()) {
            int x = todo.back();
            todo.pop_back();
            for (int w : succ[x])
                if (!reach[v][w]) {
                    reach[v][w] = true;
                    todo.push_back(w);
                }
        }
    }
    const int k = static_cast<int>(dag.components.size());
    std::vector<std::vector<bool>> comm(k, std::vector<bool>(k, false));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (reach[v][w] && dag.comp_of[v] >= 0 && dag.comp_of[w] >= 0 &&
                dag.comp_of[v] != dag.comp_of[w])
                comm[dag.comp_of[v]][dag.comp_of[w]] = true;
    dag.terminal.assign(k, true);
    dag.source.assign(k, true);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (comm[a][b]) {
                dag.dag_edges.emplace_back(a, b);
                dag.terminal[a] = false;
                dag.source[b] = false;
            }

    // Multiplicities: common cardinality of subset-named members.
    dag.multiplicity.assign(k, std::nullopt);
    dag.mixed_cardinality.assign(k, false);
    for (int c = 0; c < k; ++c) {
        std::optional<int> common;
        bool all_parse = true, mixed = false;
        for (int v : dag.components[c]) {
            auto members = parse_subset_name(g.vertex_names[v]);
            if (!members) {
                all_parse = false;
                break;
            }
            int card = static_cast<int>(members->size());
            if (!common)
                common = card;
            else if (*common != card)
                mixed = true;
        }
        if (all_parse && common && !mixed) dag.multiplicity[c] = common;
        dag.mixed_cardinality[c] = all_parse && mixed;
    }
    return dag;
}

std::vector<std::string> hereditary_closure(const LabeledGraph& g,
                                            const std::vector<std::string>& start) {
    std::vector<bool> seen(g.vcount(), false);
    std::vector<int> todo;
    for (const auto& name : start) {
        int v = g.vertex(name);
        if (v < 0) throw UsageError("unknown vertex '" + name + "'");
        if (!seen[v]) {
            seen[v] = true;
            todo.push_back(v);
        }
    }
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int l = 0; l < g.lcount(); ++l)
            for (int w : g.out[v][l])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
    }
    std::vector<std::string> result;
    for (int v = 0; v < g.vcount(); ++v)
        if (seen[v]) result.push_back(g.vertex_names[v]);
    return result;
}

LabeledGraph restrict_hereditary(const LabeledGraph& g,
                                 const std::vector<std::string>& subset) {
    // Close the set under out-edges, then keep exactly the edges leaving it.
    std::vector<std::string> closed = hereditary_closure(g, subset);
    std::vector<bool> keep(g.vcount(), false);
    for (const auto& name : closed) keep[g.vertex(name)] = true;
    std::vector<std::array<std::string, 3>> triples;
    for (const Edge& e : g.edges)
        if (keep[e.src])
            triples.push_back({g.vertex_names[e.src], g.label_names[e.label],
                               g.vertex_names[e.dst]});
    return build_graph(triples);
}

LabeledGraph higher_block(const LabeledGraph& g, int n) {
    if (n < 1) throw UsageError("higher_block: block length must be >= 1");
    if (n == 1) return build_graph([&] {
            std::vector<std::array<std::string, 3>> t;
            for (const Edge& e : g.edges)
                t.push_back({g.vertex_names[e.src], g.label_names[e.label],
                             g.vertex_names[e.dst]});
            return t;
        }());

    // Vertices are the length-(n-1) edge paths, rendered "v0.l0.v1.l1...vk";
    // edges extend a path by one edge and carry that new edge's label, so a
    // right-resolving presentation recodes to a right-resolving one.
    using Path = std::vector<int>;  // edge indices into g.edges
    std::vector<Path> paths;
    std::vector<std::vector<int>> out_edges_of(g.vcount());
    for (int e = 0; e < g.ecount(); ++e) out_edges_of[g.edges[e].src].push_back(e);

    std::function<void(Path&)> extend = [&](Path& p) {
        if (static_cast<int>(p.size()) == n - 1) {
            paths.push_back(p);
            return;
        }
        for (int e : out_edges_of[g.edges[p.back()].dst]) {
            p.push_back(e);
            extend(p);
            p.pop_back();
        }
        if (paths.size() > 200'000) throw CapError("higher_block: too many blocks");
    };
    for (int e = 0; e < g.ecount(); ++e) {
        Path p = {e};
        extend(p);
    }

    auto path_name = [&](const Path& p) {
        std::string s = g.vertex_names[g.edges[p.front()].src];
        for (int e : p) {
            s += '.';
            s += g.label_names[g.edges[e].label];
            s += '.';
            s += g.vertex_names[g.edges[e].dst];
        }
        return s;
    };

    // Index paths by their (n-2)-edge prefix/suffix to join consecutive ones.
    std::map<Path, std::string> name_of;
    for (const Path& p : paths) name_of[p] = path_name(p);

    std::vector<std::array<std::string, 3>> triples;
    for (const Path& p : paths) {
        // Successors: drop the first edge, append one more.
        Path suffix(p.begin() + 1, p.end());
        for (int e : out_edges_of[g.edges[p.back()].dst]) {
            Path q = suffix;
            q.push_back(e);
            auto it = name_of.find(q);
            if (it != name_of.end())
                triples.push_back({name_of[p], g.label_names[g.edges[e].label],
                                   it->second});
        }
    }
    return build_graph(triples);
}

LabeledGraph relabel(const LabeledGraph& g, const std::map<std::string, std::string>& m) {
    std::set<std::string> images;
    for (const auto& name : g.label_names) {
        auto it = m.find(name);
        if (it == m.end()) throw UsageError("relabel: label '" + name + "' unmapped");
        if (!images.insert(it->second).second)
            throw UsageError("relabel: map is not injective on the alphabet");
    }
    std::vector<std::array<std::string, 3>> triples;
    for (const Edge& e : g.edges)
        triples.push_back({g.vertex_names[e.src], m.at(g.label_names[e.label]),
                           g.vertex_names[e.dst]});
    return build_graph(triples);
}

LabeledGraph reverse(const LabeledGraph& g) {
    std::vector<std::array<std::string, 3>> triples;
    for (const Edge& e : g.edges)
        triples.push_back({g.vertex_names[e.dst], g.label_names[e.label],
                           g.vertex_names[e.src]});
    return build_graph(triples);
}

ValidationReport validate(const LabeledGraph& g) {
    ValidationReport r;
    r.vertices = g.vcount();
    r.edges = g.ecount();
    r.labels = g.lcount();
    r.right_resolving = is_right_resolving(g);
    r.trim = is_trim(g);
    if (!r.right_resolving)
        for (int v = 0; v < g.vcount(); ++v)
            for (int l = 0; l < g.lcount(); ++l)
                if (g.out[v][l].size() > 1)
                    r.notes.push_back("vertex '" + g.vertex_names[v] +
                                      "' emits two edges labeled '" + g.label_names[l] + "'");
    if (!r.trim)
        for (int v = 0; v < g.vcount(); ++v) {
            if (!g.has_out_edge(v))
                r.notes.push_back("vertex '" + g.vertex_names[v] + "' has no outgoing edge");
            if (!g.has_in_edge(v))
                r.notes.push_back("vertex '" + g.vertex_names[v] + "' has no incoming edge");
        }
    return r;
}

bool VertexMap::injective() const {
    std::set<std::string> seen;
    for (const auto& [k, v] : map)
        if (!seen.insert(v).second) return false;
    return true;
}

}  // namespace soficov
