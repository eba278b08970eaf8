/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Shared test helpers: fixture loading, inline graphs, and a deterministic
 * generator of random trim right-resolving presentations.
 */

#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "soficov/graph.hpp"

namespace tt {

inline std::string fixture_path(const std::string& name) {
    return std::string(SOFICOV_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline soficov::LabeledGraph load_fixture(const std::string& name) {
    return soficov::parse_lg(slurp(fixture_path(name)));
}

inline soficov::LabeledGraph g(const std::string& text) {
    return soficov::parse_lg(text);
}

// The presentations everything is exercised against.
inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {
        "ev2.lg",  "ev3.lg",  "ev4.lg",        "ex1.lg", "ex2.lg",
        "mx5.lg",  "nr3.lg",  "nr3-krieger.lg", "mx5-fsg.lg"};
    return names;
}

// Deterministic random trim right-resolving graphs: up to max_v vertices and
// max_l letters, at most one out-edge per (vertex, letter), trimmed, empty
// results skipped.
inline std::vector<soficov::LabeledGraph> random_graphs(int count,
                                                        unsigned seed,
                                                        int max_v = 6,
                                                        int max_l = 3) {
    std::mt19937 rng(seed);
    std::vector<soficov::LabeledGraph> out;
    while (static_cast<int>(out.size()) < count) {
        int nv = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_v));
        int nl = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_l));
        std::vector<std::array<std::string, 3>> triples;
        for (int v = 0; v < nv; ++v)
            for (int l = 0; l < nl; ++l) {
                if (rng() % 2) continue;
                int tgt = static_cast<int>(rng() % static_cast<unsigned>(nv));
                triples.push_back({"v" + std::to_string(v),
                                   std::string(1, static_cast<char>('a' + l)),
                                   "v" + std::to_string(tgt)});
            }
        soficov::LabeledGraph cand = soficov::trim(soficov::build_graph(triples));
        if (!cand.empty()) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace tt
