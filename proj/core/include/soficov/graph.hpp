/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Core graph module: finite labeled directed multigraphs (presentations of
 * sofic shifts), the .lg / DOT / JSON formats, trimming, strongly connected
 * component analysis with the component DAG, hereditary subgraphs, and the
 * block/relabel/reverse recodings.
 *
 * Conventions used throughout the library:
 *   - vertex and label names are tokens over [A-Za-z0-9_{},.+-];
 *   - a graph stores vertices, labels and edges sorted by name, so every
 *     operation is deterministic and serialization is byte-stable;
 *   - an edge is a (source, label, target) triple; identical triples collapse,
 *     parallel edges with distinct labels are allowed;
 *   - "right-resolving" means no vertex carries two out-edges with the same
 *     label; "trim" means every vertex has at least one in- and one out-edge
 *     (the graph equals its bi-essential part);
 *   - a subset of vertices is rendered "{a,b}" with members in vertex order.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soficov {

// ---------------------------------------------------------------------------
// Errors and resource caps
// ---------------------------------------------------------------------------

// All library failures carry the process exit code the CLI maps them to:
// 2 for malformed input or violated preconditions, 3 for exceeded caps.
struct Error : std::runtime_error {
    int exit_code;
    Error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg, 2) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg, 2) {}
};

struct CapError : Error {
    explicit CapError(const std::string& msg) : Error(msg, 3) {}
};

namespace caps {
// Hard limits with diagnostics; the monoid cap can be raised or lowered via
// the SOFICOV_CAP environment variable (a plain integer).
constexpr int kMaxWordLength = 16;       // words_up_to
constexpr int kMaxPeriod = 12;           // periodic_counts
constexpr int kMaxMaskVertices = 64;     // any subset-of-vertices computation
constexpr int kMaxSubsetBase = 16;       // double-subset graph base size
std::size_t monoid_elements();           // default 1'000'000, env-adjustable
}  // namespace caps

// ---------------------------------------------------------------------------
// LabeledGraph
// ---------------------------------------------------------------------------

struct Edge {
    int src;
    int label;
    int dst;
    auto operator<=>(const Edge&) const = default;
};

struct LabeledGraph {
    std::vector<std::string> vertex_names;  // sorted, unique
    std::vector<std::string> label_names;   // sorted, unique
    std::vector<Edge> edges;                // sorted, unique triples

    // Derived adjacency, rebuilt whenever the graph is (re)built:
    // out[v][l] / in[v][l] are sorted target/source vertex lists.
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<std::vector<int>>> in;

    int vcount() const { return static_cast<int>(vertex_names.size()); }
    int lcount() const { return static_cast<int>(label_names.size()); }
    int ecount() const { return static_cast<int>(edges.size()); }
    bool empty() const { return vertex_names.empty(); }

    int vertex(const std::string& name) const;  // -1 when absent
    int label(const std::string& name) const;   // -1 when absent
    const std::vector<int>& targets(int v, int l) const { return out[v][l]; }

    bool has_out_edge(int v) const;
    bool has_in_edge(int v) const;
};

// Builds a graph from name triples (src, label, dst); sorts and dedupes.
LabeledGraph build_graph(const std::vector<std::array<std::string, 3>>& triples);

bool is_right_resolving(const LabeledGraph& g);
bool is_trim(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Vertex subsets
// ---------------------------------------------------------------------------

// Subsets of a graph's vertices are bitmasks over vertex indices. Every mask
// operation requires at most caps::kMaxMaskVertices vertices (diagnosed).
using Mask = std::uint64_t;

void require_mask_capacity(const LabeledGraph& g,
                           const char* op = "subset computation");
Mask full_mask(const LabeledGraph& g);

// "{a,b}" with members in vertex order.
std::string subset_name(const LabeledGraph& g, Mask m);
std::vector<std::string> subset_names(const LabeledGraph& g, Mask m);
Mask mask_of(const LabeledGraph& g, const std::vector<std::string>& names);

// Strict parse of a subset rendering; nullopt when `name` is not of the form
// "{tok}" / "{tok,tok,...}". Members may themselves be brace-balanced subset
// names (covers built over covers), so commas split at depth 0 only. Used to
// recover cardinalities of subset-named vertices (multiplicities of subset
// graphs).
std::optional<std::vector<std::string>> parse_subset_name(const std::string& name);

// ---------------------------------------------------------------------------
// Formats
// ---------------------------------------------------------------------------

// .lg: one edge per line, "SRC LABEL DST" whitespace-separated; blank lines
// and full lines starting with '#' are ignored. Errors carry line numbers.
LabeledGraph parse_lg(const std::string& text);

std::string serialize_lg(const LabeledGraph& g);    // sorted, LF, no comments
std::string serialize_dot(const LabeledGraph& g);   // quoted, sorted
std::string serialize_json(const LabeledGraph& g);  // {vertices,alphabet,edges}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

// Largest subgraph in which every vertex has an incoming and an outgoing
// edge; the shift presented by a graph only depends on this part.
LabeledGraph trim(const LabeledGraph& g);

// Strongly connected components restricted to recurrent vertices (those on a
// cycle), the remaining transient vertices, and the communication order
// between components (C -> C' when some vertex of C reaches C').
struct ComponentDAG {
    std::vector<std::vector<int>> components;  // sorted vertex ids, sorted by name
    std::vector<int> transients;               // sorted vertex ids
    std::vector<int> comp_of;                  // per vertex, -1 for transient
    std::vector<std::pair<int, int>> dag_edges;
    std::vector<bool> terminal;  // no outgoing dag edge
    std::vector<bool> source;    // no incoming dag edge
    // Common cardinality of subset-named vertices per component, when every
    // member name parses as a subset rendering and the sizes agree.
    std::vector<std::optional<int>> multiplicity;
    std::vector<bool> mixed_cardinality;
};

ComponentDAG components(const LabeledGraph& g);

// Vertices reachable from `start` along out-edges, including `start` itself.
// A set closed under out-edges is called hereditary; the subgraph it induces
// keeps exactly the edges leaving the set's vertices.
std::vector<std::string> hereditary_closure(const LabeledGraph& g,
                                            const std::vector<std::string>& start);
LabeledGraph restrict_hereditary(const LabeledGraph& g,
                                 const std::vector<std::string>& subset);

// Recodings. higher_block(g, n) has the length-(n-1) paths of g as vertices
// and the length-n paths as edges, labeled by the last edge's label; its
// edge shift is the same shift over the same alphabet, and right-resolving
// presentations stay right-resolving. relabel applies a bijection of label
// tokens. reverse flips every edge.
LabeledGraph higher_block(const LabeledGraph& g, int n);
LabeledGraph relabel(const LabeledGraph& g, const std::map<std::string, std::string>& m);
LabeledGraph reverse(const LabeledGraph& g);

// Structural diagnostics for a parsed graph.
struct ValidationReport {
    int vertices = 0;
    int edges = 0;
    int labels = 0;
    bool right_resolving = false;
    bool trim = false;
    std::vector<std::string> notes;
};

ValidationReport validate(const LabeledGraph& g);

// ---------------------------------------------------------------------------
// Vertex maps
// ---------------------------------------------------------------------------

// A map between the vertices of two graphs, used both for quotient maps and
// as an isomorphism certificate.
struct VertexMap {
    std::map<std::string, std::string> map;
    bool injective() const;
};

}  // namespace soficov
