/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Conjugacy-invariant reports and canonicity checks: periodic point
 * counts, labeled-graph isomorphism with certificates, per-component
 * invariant reports with a decorated component-order signature, block
 * recodings, and a suite that checks the covers behave canonically under
 * recodings of the presentation.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soficov/covers.hpp"
#include "soficov/graph.hpp"

namespace soficov {

// Closed-path counts of lengths 1..k, labels ignored (the periodic point
// counts of the edge shift). k <= caps::kMaxPeriod; counts are
// overflow-checked.
std::vector<std::uint64_t> periodic_counts(const LabeledGraph& g, int k);

// Labeled-graph isomorphism: a vertex bijection preserving every labeled
// edge, labels matching by name. Returns the bijection as a certificate,
// nullopt when the graphs are not isomorphic. Right-resolving
// follower-separated graphs are matched directly by follower classes;
// otherwise a backtracking search over at most caps::kMaxSubsetBase
// vertices runs.
std::optional<VertexMap> graphs_isomorphic(const LabeledGraph& g1,
                                           const LabeledGraph& g2);

struct ComponentReport {
    int vertices = 0;
    int edges = 0;  // internal edges
    std::optional<int> multiplicity;
    bool terminal = false;
    bool source = false;
    std::vector<std::uint64_t> periodic;
};

// Everything reported about a cover (or a bare graph, cover "none").
// `dag` is a presentation-level rendering of the component order;
// `signature` is the conjugacy-level one: components decorated with their
// periodic counts (and fiber cardinalities, for double-subset style
// covers), arranged by reachability, canonically serialized. Signatures of
// the future cover and of the strongly canonical cover agree across
// conjugate presentations of the same shift.
struct InvariantReport {
    std::string cover;
    int vertices = 0;
    int edges = 0;
    std::vector<std::uint64_t> periodic;
    std::vector<ComponentReport> components;
    std::string dag;
    std::string signature;

    std::string to_json() const;
    std::string to_text() const;
};

InvariantReport invariant_report(const Cover& c, int k);
InvariantReport graph_report(const LabeledGraph& g, int k);

// The standard conjugate 2-block presentation: vertices are the edges of
// g, consecutive edges are joined, labeled by the pair of labels read.
LabeledGraph two_block_recode(const LabeledGraph& g);

// Canonicity checks for one presentation: route agreement of the future
// cover, stability under higher-block and relabel recodings (up to graph
// isomorphism), and stability of the conjugacy-level invariants under
// 2-block recoding for both canonical covers.
struct CanonicityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CanonicityReport {
    std::vector<CanonicityCheck> checks;
    bool all_pass = true;

    std::string to_text() const;
    std::string to_json() const;
};

CanonicityReport canonicity_suite(const LabeledGraph& g, int k);

}  // namespace soficov
