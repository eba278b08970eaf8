/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * The double-subset graph and the strongly canonical cover built from it.
 *
 * The double-subset graph of a trim presentation has the bi-essential
 * nonempty vertex subsets as vertices; a letter maps a subset exactly when
 * every member can read it, and then maps it to its exact image. Every
 * bi-infinite point of the shift lifts to a unique fiber path: at each
 * position the fiber is the intersection of the left-tail image set (who
 * can carry the past) with the right-viability set (who can carry the
 * future). Fiber cardinality never increases along a path, and around a
 * communication component it is constant (the component's multiplicity).
 *
 * The cover keeps the communication components that some fiber path is
 * backward asymptotic to, with everything they reach. Components are
 * discovered by enumerating eventually periodic points assembled from
 * idempotent witness words of the transition relation monoid (left and
 * right periods) and a breadth-first search over right-viability sets (the
 * middle); the bounds used are echoed in a selection report.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soficov/covers.hpp"
#include "soficov/graph.hpp"
#include "soficov/language.hpp"

namespace soficov {

// Search bounds for the component selection. Unset fields default to: all
// idempotent witness words and their rotations (left and right), and a
// middle search depth of the double-subset graph's vertex count.
struct Bounds {
    std::optional<int> left;
    std::optional<int> mid;
    std::optional<int> right;
};

Cover double_subset_graph(const LabeledGraph& g);

// The fiber path of an eventually periodic point, as a path in the
// double-subset cover. Throws UsageError when the point is not in the
// presented shift.
EPPath fiber_path(const LabeledGraph& g, const Cover& dsub, const EPPoint& y);

// How the component selection went: the effective bounds, whether the
// middle search was cut off by its depth bound, and one witness point per
// selected component.
struct SelectionReport {
    int left_bound = 0;
    int mid_bound = 0;
    int right_bound = 0;
    bool saturated = false;
    int left_candidates = 0;
    int right_candidates = 0;
    int middle_sets = 0;

    struct Pick {
        std::string component;  // smallest vertex name in the component
        std::string u, w, v;    // witness point ...u u u w v v v...
    };
    std::vector<Pick> picks;

    std::string to_json() const;
};

// Indices (into components(dsub.graph)) of the components some fiber path
// is backward asymptotic to, with the report.
struct Selection {
    std::vector<int> components;
    SelectionReport report;
};

Selection asymptotic_components(const LabeledGraph& g, const Cover& dsub,
                                const Bounds& bounds = {});

struct GPrimeResult {
    Cover cover;  // kind "gprime"
    SelectionReport report;
};

GPrimeResult gprime_cover(const LabeledGraph& g, const Bounds& bounds = {});

// Per-component fiber cardinalities of a double-subset style cover; throws
// UsageError when some component mixes cardinalities.
std::vector<int> component_multiplicities(const Cover& c);

}  // namespace soficov
