/*
 * soficov - labeled graphs, sofic shifts, and their canonical covers
 *
 * SPDX-License-Identifier: MIT
 *
 * Language engine implementation. See include/soficov/language.hpp.
 */

#include "soficov/language.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace soficov {

namespace {

// Operations with shift-language semantics run on the trimmed graph.
LabeledGraph trimmed_copy(const LabeledGraph& g) {
    if (is_trim(g)) return g;
    return trim(g);
}

std::vector<Mask> compose_rows(const std::vector<Mask>& a,
                               const std::vector<Mask>& b) {
    std::vector<Mask> rows(a.size());
    for (size_t v = 0; v < a.size(); ++v) {
        Mask mid = a[v];
        Mask out = 0;
        for (size_t u = 0; u < b.size(); ++u)
            if (mid >> u & 1) out |= b[u];
        rows[v] = out;
    }
    return rows;
}

}  // namespace

Word parse_word(const LabeledGraph& g, const std::string& s) {
    bool single_char = !g.label_names.empty();
    for (const auto& l : g.label_names)
        if (l.size() != 1) single_char = false;

    Word w;
    if (s.empty()) return w;
    if (single_char) {
        for (char c : s) {
            int l = g.label(std::string(1, c));
            if (l < 0)
                throw ParseError("word letter '" + std::string(1, c) +
                                 "' is not in the alphabet");
            w.push_back(l);
        }
        return w;
    }
    // Multi-character labels: try the whole string as one label, then a
    // dot-separated sequence of label tokens.
    if (int l = g.label(s); l >= 0) return {l};
    std::string token;
    std::string input = s + ".";
    for (char c : input) {
        if (c == '.') {
            int l = g.label(token);
            if (l < 0)
                throw ParseError("word token '" + token +
                                 "' is not in the alphabet");
            w.push_back(l);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    return w;
}

std::string render_word(const LabeledGraph& g, const Word& w) {
    bool single_char = true;
    for (const auto& l : g.label_names)
        if (l.size() != 1) single_char = false;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!single_char && i > 0) out += '.';
        out += g.label_names[static_cast<size_t>(w[i])];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Images and the subset automaton
// ---------------------------------------------------------------------------

Mask image_of(const LabeledGraph& g, Mask s, int label) {
    require_mask_capacity(g);
    Mask out = 0;
    for (int v = 0; v < g.vcount(); ++v) {
        if (!(s >> v & 1)) continue;
        for (int t : g.targets(v, label)) out |= Mask{1} << t;
    }
    return out;
}

Mask image_of(const LabeledGraph& g, Mask s, const Word& w) {
    for (int l : w) {
        if (s == 0) return 0;
        s = image_of(g, s, l);
    }
    return s;
}

Mask preimage_of(const LabeledGraph& g, Mask s, int label) {
    require_mask_capacity(g);
    Mask out = 0;
    for (int v = 0; v < g.vcount(); ++v) {
        for (int t : g.targets(v, label)) {
            if (s >> t & 1) {
                out |= Mask{1} << v;
                break;
            }
        }
    }
    return out;
}

Mask preimage_of(const LabeledGraph& g, Mask s, const Word& w) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (s == 0) return 0;
        s = preimage_of(g, s, *it);
    }
    return s;
}

int SubsetAutomaton::state_index(Mask m) const {
    auto it = std::lower_bound(states.begin(), states.end(), m);
    if (it == states.end() || *it != m) return -1;
    return static_cast<int>(it - states.begin());
}

SubsetAutomaton subset_automaton(const LabeledGraph& g) {
    LabeledGraph t = trimmed_copy(g);
    require_mask_capacity(t);

    SubsetAutomaton a;
    a.initial = full_mask(t);

    // Discover all nonempty images of the initial set under nonempty words.
    std::set<Mask> seen;
    std::deque<Mask> queue;
    auto push = [&](Mask m) {
        if (m != 0 && seen.insert(m).second) queue.push_back(m);
    };
    for (int l = 0; l < t.lcount(); ++l) push(image_of(t, a.initial, l));
    while (!queue.empty()) {
        Mask m = queue.front();
        queue.pop_front();
        for (int l = 0; l < t.lcount(); ++l) push(image_of(t, m, l));
    }

    a.states.assign(seen.begin(), seen.end());
    a.transitions.assign(a.states.size(),
                         std::vector<int>(static_cast<size_t>(t.lcount()), -1));
    for (size_t i = 0; i < a.states.size(); ++i) {
        for (int l = 0; l < t.lcount(); ++l) {
            Mask m = image_of(t, a.states[i], l);
            if (m != 0) a.transitions[i][static_cast<size_t>(l)] = a.state_index(m);
        }
    }
    a.initial_transitions.assign(static_cast<size_t>(t.lcount()), -1);
    for (int l = 0; l < t.lcount(); ++l) {
        Mask m = image_of(t, a.initial, l);
        if (m != 0) a.initial_transitions[static_cast<size_t>(l)] = a.state_index(m);
    }
    return a;
}

bool contains_word(const LabeledGraph& g, const Word& w) {
    LabeledGraph t = trimmed_copy(g);
    if (t.empty()) return false;
    require_mask_capacity(t);
    return image_of(t, full_mask(t), w) != 0;
}

bool contains_word(const LabeledGraph& g, const std::string& w) {
    return contains_word(g, parse_word(g, w));
}

std::vector<Word> words_up_to(const LabeledGraph& g, int n) {
    if (n < 0 || n > caps::kMaxWordLength)
        throw CapError("word length bound " + std::to_string(n) +
                       " exceeds the cap of " +
                       std::to_string(caps::kMaxWordLength));
    LabeledGraph t = trimmed_copy(g);
    std::vector<Word> out;
    if (t.empty()) return out;
    require_mask_capacity(t);

    const std::uint64_t cap = caps::monoid_elements();
    out.push_back({});  // the empty word
    // Breadth-first by length; letters ascend, so each level is
    // lexicographically sorted.
    std::vector<std::pair<Word, Mask>> level = {{Word{}, full_mask(t)}};
    for (int len = 1; len <= n && !level.empty(); ++len) {
        std::vector<std::pair<Word, Mask>> next;
        for (const auto& [w, m] : level) {
            for (int l = 0; l < t.lcount(); ++l) {
                Mask im = image_of(t, m, l);
                if (im == 0) continue;
                Word ext = w;
                ext.push_back(l);
                if (out.size() >= cap)
                    throw CapError("word enumeration exceeds the cap of " +
                                   std::to_string(cap) + " words");
                out.push_back(ext);
                next.emplace_back(std::move(ext), im);
            }
        }
        level = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The transition relation monoid
// ---------------------------------------------------------------------------

bool Relation::zero() const {
    for (Mask m : rows)
        if (m != 0) return false;
    return true;
}

Mask Relation::range() const {
    Mask out = 0;
    for (Mask m : rows) out |= m;
    return out;
}

Mask Relation::domain() const {
    Mask out = 0;
    for (size_t v = 0; v < rows.size(); ++v)
        if (rows[v] != 0) out |= Mask{1} << v;
    return out;
}

Relation relation_of_word(const LabeledGraph& g, const Word& w) {
    require_mask_capacity(g);
    Relation r;
    r.rows.resize(static_cast<size_t>(g.vcount()));
    for (int v = 0; v < g.vcount(); ++v)
        r.rows[static_cast<size_t>(v)] = image_of(g, Mask{1} << v, w);
    r.witness = w;
    r.idempotent = (compose(r, r).rows == r.rows);
    return r;
}

Relation compose(const Relation& a, const Relation& b) {
    Relation r;
    r.rows = compose_rows(a.rows, b.rows);
    r.witness = a.witness;
    r.witness.insert(r.witness.end(), b.witness.begin(), b.witness.end());
    r.idempotent = (compose_rows(r.rows, r.rows) == r.rows);
    return r;
}

Relation idempotent_power(const LabeledGraph& g, const Relation& r) {
    (void)g;
    // In a finite monoid some power of r is idempotent, and the idempotent
    // among the powers of r is unique. Walk r, r^2, r^3, ... until the
    // sequence cycles, then pick the idempotent in the cycle.
    std::vector<std::vector<Mask>> powers = {r.rows};  // powers[j] = r^{j+1}
    for (;;) {
        std::vector<Mask> next = compose_rows(powers.back(), r.rows);
        auto it = std::find(powers.begin(), powers.end(), next);
        if (it != powers.end()) {
            // r^{len+1} = r^{i+1}: exponents >= i+1 cycle with period p.
            size_t i = static_cast<size_t>(it - powers.begin());
            size_t p = powers.size() - i;
            // r^k idempotent iff k = 0 mod p with k >= i+1.
            size_t k = ((i + p) / p) * p;
            size_t idx = k - 1;  // exponent k lives at index k-1
            while (idx >= powers.size()) idx -= p;
            Relation e;
            e.rows = powers[idx];
            for (size_t j = 0; j < k; ++j)
                e.witness.insert(e.witness.end(), r.witness.begin(),
                                 r.witness.end());
            e.idempotent = true;
            return e;
        }
        powers.push_back(std::move(next));
        if (powers.size() > caps::monoid_elements())
            throw CapError("relation power sequence exceeds the monoid cap");
    }
}

Mask apply_relation(const Relation& r, Mask s) {
    Mask out = 0;
    for (size_t v = 0; v < r.rows.size(); ++v)
        if (s >> v & 1) out |= r.rows[v];
    return out;
}

Mask apply_relation_backward(const Relation& r, Mask s) {
    Mask out = 0;
    for (size_t v = 0; v < r.rows.size(); ++v)
        if (r.rows[v] & s) out |= Mask{1} << v;
    return out;
}

std::vector<Relation> relation_monoid(const LabeledGraph& g) {
    require_mask_capacity(g);
    const std::uint64_t cap = caps::monoid_elements();

    std::vector<Relation> out;
    std::map<std::vector<Mask>, size_t> index;
    std::deque<size_t> queue;

    std::vector<Relation> letters;
    for (int l = 0; l < g.lcount(); ++l)
        letters.push_back(relation_of_word(g, Word{l}));

    auto add = [&](Relation r) -> bool {
        auto it = index.find(r.rows);
        if (it != index.end()) return false;
        if (out.size() >= cap)
            throw CapError("relation monoid exceeds the cap of " +
                           std::to_string(cap) +
                           " elements (set SOFICOV_CAP to raise it)");
        index.emplace(r.rows, out.size());
        queue.push_back(out.size());
        out.push_back(std::move(r));
        return true;
    };

    // Breadth-first over words: letters in ascending order give each
    // element a shortest, then lexicographically least, witness.
    for (const auto& l : letters) add(l);
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (const auto& l : letters) {
            Relation r = compose(out[i], l);
            add(std::move(r));
        }
    }
    return out;
}

Mask periodic_tail_set(const LabeledGraph& g, const Word& u) {
    if (u.empty()) throw UsageError("the periodic part of a tail is empty");
    return idempotent_power(g, relation_of_word(g, u)).range();
}

Mask periodic_viability_set(const LabeledGraph& g, const Word& v) {
    if (v.empty()) throw UsageError("the periodic part of a future is empty");
    require_mask_capacity(g);
    Mask x = full_mask(g);
    for (;;) {
        Mask nx = preimage_of(g, x, v);
        if (nx == x) return x;
        x = nx;
    }
}

std::vector<Mask> dee_family(const LabeledGraph& g) {
    require_mask_capacity(g);
    std::vector<Relation> monoid = relation_monoid(g);

    // Seeds: ranges of the idempotents. Close under letter images; every
    // left-infinite label sequence factors as ...e e e w with e idempotent,
    // so the closure is exactly the family of left-tail image sets.
    std::set<Mask> family;
    std::deque<Mask> queue;
    auto push = [&](Mask m) {
        if (m != 0 && family.insert(m).second) queue.push_back(m);
    };
    for (const auto& r : monoid)
        if (r.idempotent) push(r.range());
    while (!queue.empty()) {
        Mask m = queue.front();
        queue.pop_front();
        for (int l = 0; l < g.lcount(); ++l) push(image_of(g, m, l));
    }
    return {family.begin(), family.end()};
}

// ---------------------------------------------------------------------------
// Follower comparison, quotient, language equality
// ---------------------------------------------------------------------------

namespace {

void require_right_resolving(const LabeledGraph& g, const char* who) {
    if (!is_right_resolving(g))
        throw UsageError(std::string(who) +
                         " requires a right-resolving graph");
}

}  // namespace

FollowerPartition follower_partition(const LabeledGraph& g) {
    require_right_resolving(g, "follower_partition");

    int n = g.vcount();
    FollowerPartition p;
    p.class_of.assign(static_cast<size_t>(n), 0);
    if (n == 0) return p;

    // Initial split by the set of outgoing labels, then refine on the
    // classes of the unique successors until stable.
    std::vector<int> cls(static_cast<size_t>(n));
    {
        std::map<std::vector<int>, int> sig_class;
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig;
            for (int l = 0; l < g.lcount(); ++l)
                if (!g.targets(v, l).empty()) sig.push_back(l);
            auto [it, _] = sig_class.emplace(sig, static_cast<int>(sig_class.size()));
            cls[static_cast<size_t>(v)] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> sig_class;
        std::vector<int> next(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig = {cls[static_cast<size_t>(v)]};
            for (int l = 0; l < g.lcount(); ++l) {
                const auto& ts = g.targets(v, l);
                sig.push_back(ts.empty() ? -1 : cls[static_cast<size_t>(ts[0])]);
            }
            auto [it, _] = sig_class.emplace(sig, static_cast<int>(sig_class.size()));
            next[static_cast<size_t>(v)] = it->second;
        }
        bool changed = false;
        for (int v = 0; v < n; ++v)
            if (next[static_cast<size_t>(v)] != cls[static_cast<size_t>(v)])
                changed = true;
        cls = std::move(next);
        if (!changed) break;
    }

    // Renumber classes by smallest member.
    std::map<int, int> renum;
    for (int v = 0; v < n; ++v) {
        auto [it, _] = renum.emplace(cls[static_cast<size_t>(v)],
                                     static_cast<int>(renum.size()));
        p.class_of[static_cast<size_t>(v)] = it->second;
    }
    p.classes = static_cast<int>(renum.size());
    return p;
}

std::vector<std::vector<bool>> simulation_preorder(const LabeledGraph& g1,
                                                   const LabeledGraph& g2) {
    require_right_resolving(g1, "simulation_preorder");
    require_right_resolving(g2, "simulation_preorder");
    if (!is_trim(g1) || !is_trim(g2))
        throw UsageError("simulation_preorder requires trim graphs");

    int n1 = g1.vcount(), n2 = g2.vcount();
    std::vector<std::vector<bool>> sim(
        static_cast<size_t>(n1), std::vector<bool>(static_cast<size_t>(n2), true));

    // Greatest fixed point: u <= v iff every letter out of u exists out of
    // v and the successors stay related. Right-resolving + trim makes this
    // equivalent to follower set inclusion.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n1; ++u) {
            for (int v = 0; v < n2; ++v) {
                if (!sim[static_cast<size_t>(u)][static_cast<size_t>(v)]) continue;
                bool ok = true;
                for (int l1 = 0; l1 < g1.lcount() && ok; ++l1) {
                    const auto& ts = g1.targets(u, l1);
                    if (ts.empty()) continue;
                    int l2 = g2.label(g1.label_names[static_cast<size_t>(l1)]);
                    if (l2 < 0) {
                        ok = false;
                        break;
                    }
                    const auto& us = g2.targets(v, l2);
                    if (us.empty() ||
                        !sim[static_cast<size_t>(ts[0])][static_cast<size_t>(us[0])])
                        ok = false;
                }
                if (!ok) {
                    sim[static_cast<size_t>(u)][static_cast<size_t>(v)] = false;
                    changed = true;
                }
            }
        }
    }
    return sim;
}

bool follower_includes(const LabeledGraph& g1, const std::string& v1,
                       const LabeledGraph& g2, const std::string& v2) {
    int i1 = g1.vertex(v1);
    int i2 = g2.vertex(v2);
    if (i1 < 0) throw UsageError("unknown vertex '" + v1 + "'");
    if (i2 < 0) throw UsageError("unknown vertex '" + v2 + "'");
    auto sim = simulation_preorder(g1, g2);
    return sim[static_cast<size_t>(i1)][static_cast<size_t>(i2)];
}

MergedGraph merged_graph(const LabeledGraph& g) {
    FollowerPartition p = follower_partition(g);

    // Class representative = first member in vertex order.
    std::vector<int> repr(static_cast<size_t>(p.classes), -1);
    for (int v = g.vcount() - 1; v >= 0; --v)
        repr[static_cast<size_t>(p.class_of[static_cast<size_t>(v)])] = v;

    std::vector<std::array<std::string, 3>> triples;
    for (int c = 0; c < p.classes; ++c) {
        int v = repr[static_cast<size_t>(c)];
        for (int l = 0; l < g.lcount(); ++l) {
            const auto& ts = g.targets(v, l);
            if (ts.empty()) continue;
            int tc = p.class_of[static_cast<size_t>(ts[0])];
            triples.push_back({g.vertex_names[static_cast<size_t>(v)],
                               g.label_names[static_cast<size_t>(l)],
                               g.vertex_names[static_cast<size_t>(
                                   repr[static_cast<size_t>(tc)])]});
        }
    }

    MergedGraph out;
    out.graph = build_graph(triples);
    for (int v = 0; v < g.vcount(); ++v)
        out.map.map[g.vertex_names[static_cast<size_t>(v)]] =
            g.vertex_names[static_cast<size_t>(
                repr[static_cast<size_t>(p.class_of[static_cast<size_t>(v)])])];
    return out;
}

LanguageComparison language_equal(const LabeledGraph& g1, const LabeledGraph& g2) {
    LabeledGraph t1 = trimmed_copy(g1);
    LabeledGraph t2 = trimmed_copy(g2);
    require_mask_capacity(t1);
    require_mask_capacity(t2);

    LanguageComparison out;

    // The empty word is in a language iff the trimmed graph is nonempty.
    if (t1.empty() != t2.empty()) {
        out.equal = false;
        out.witness = {};
        out.witness_in = t1.empty() ? 2 : 1;
        return out;
    }
    if (t1.empty()) {
        out.equal = true;
        return out;
    }

    // Product subset-automaton search over the union alphabet for a word
    // alive in exactly one graph. Breadth-first with letters in sorted
    // order, so the witness is shortest then lexicographically least.
    std::vector<std::string> alphabet;
    {
        std::set<std::string> s(t1.label_names.begin(), t1.label_names.end());
        s.insert(t2.label_names.begin(), t2.label_names.end());
        alphabet.assign(s.begin(), s.end());
    }

    struct Node {
        Mask m1, m2;
        auto operator<=>(const Node&) const = default;
    };
    std::set<Node> seen;
    std::deque<std::pair<Node, std::vector<std::string>>> queue;
    Node root{full_mask(t1), full_mask(t2)};
    seen.insert(root);
    queue.push_back({root, {}});
    while (!queue.empty()) {
        auto [node, word] = queue.front();
        queue.pop_front();
        for (const auto& l : alphabet) {
            int l1 = t1.label(l);
            int l2 = t2.label(l);
            Mask m1 = l1 >= 0 ? image_of(t1, node.m1, l1) : 0;
            Mask m2 = l2 >= 0 ? image_of(t2, node.m2, l2) : 0;
            if ((m1 != 0) != (m2 != 0)) {
                out.equal = false;
                out.witness = word;
                out.witness.push_back(l);
                out.witness_in = m1 != 0 ? 1 : 2;
                return out;
            }
            if (m1 == 0) continue;
            Node next{m1, m2};
            if (seen.insert(next).second) {
                auto w = word;
                w.push_back(l);
                queue.push_back({next, std::move(w)});
            }
        }
    }
    out.equal = true;
    return out;
}

}  // namespace soficov
