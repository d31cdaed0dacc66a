/*
 * Copyright 2026 the promptdelay authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdg/determinize.hpp"

#include <algorithm>
#include <map>

namespace pdg {

namespace {

// History tree node. Nodes are kept sorted by name; names encode seniority
// (parents and older siblings have smaller names), which the priority
// bookkeeping depends on. parent == 0 marks the root.
struct TNode {
    int name;
    int parent;
    uint64_t label;
    bool operator==(const TNode&) const = default;
};

using Tree = std::vector<TNode>;

std::vector<uint64_t> tree_key(const Tree& t) {
    std::vector<uint64_t> key;
    key.reserve(t.size() * 3);
    for (const auto& n : t) {
        key.push_back(static_cast<uint64_t>(n.name));
        key.push_back(static_cast<uint64_t>(n.parent));
        key.push_back(n.label);
    }
    return key;
}

struct Stepper {
    const Nba& A;
    uint64_t acc_mask = 0;
    std::vector<std::vector<uint64_t>> succ_mask; // [state][letter]
    int no_event_color;                           // odd, larger than any event color

    explicit Stepper(const Nba& a) : A(a) {
        if (A.states > 64) throw capacity_error("determinize (nba too large for tree labels)", 64);
        size_t L = A.alphabet.letter_count();
        succ_mask.assign(A.states, std::vector<uint64_t>(L, 0));
        for (size_t q = 0; q < A.states; ++q) {
            if (A.accepting[q]) acc_mask |= uint64_t{1} << q;
            for (size_t l = 0; l < L; ++l)
                for (int t : A.succ[q][l]) succ_mask[q][l] |= uint64_t{1} << t;
        }
        // Names stay within [1, 2n+1] thanks to compaction; events use
        // pre-compaction names, still bounded by 2 * (2n+1).
        int max_name = 2 * (2 * static_cast<int>(A.states) + 1);
        no_event_color = 2 * max_name + 1;
    }

    uint64_t image(uint64_t label, Letter a) const {
        uint64_t out = 0;
        for (uint64_t rest = label; rest;) {
            int q = __builtin_ctzll(rest);
            rest &= rest - 1;
            out |= succ_mask[q][a];
        }
        return out;
    }

    // One transition. Returns the successor tree and the min-parity event
    // color of this step.
    std::pair<Tree, int> step(const Tree& t0, Letter a) const {
        Tree t = t0;
        // 1. Move labels.
        for (auto& n : t) n.label = image(n.label, a);

        // 2. Spawn one youngest child per node with an accepting part. Fresh
        //    names exceed every live name and inherit the parent order.
        int max_name = 0;
        for (const auto& n : t) max_name = std::max(max_name, n.name);
        size_t old_count = t.size();
        for (size_t i = 0; i < old_count; ++i) {
            uint64_t hit = t[i].label & acc_mask;
            if (hit) t.push_back(TNode{max_name + t[i].name, t[i].name, hit});
        }
        std::sort(t.begin(), t.end(), [](const TNode& x, const TNode& y) { return x.name < y.name; });

        // 3. Horizontal merge: a state claimed by an older sibling subtree is
        //    removed from the younger sibling's whole subtree.
        if (!t.empty()) hmerge_children(t, t.front().name);

        // 4. Remove emptied nodes; the smallest removed name is the bad event.
        int bad = INT32_MAX;
        {
            Tree kept;
            kept.reserve(t.size());
            for (const auto& n : t) {
                if (n.label == 0)
                    bad = std::min(bad, n.name);
                else
                    kept.push_back(n);
            }
            // A node whose ancestor died is dead too (labels are nested, so
            // it must have been empty as well); nothing extra to do.
            t = std::move(kept);
        }

        // 5. Vertical merge: a node whose label equals the union of its
        //    children loses all descendants; smallest such name is the good
        //    event. Ancestors first (names ascend along paths).
        int good = INT32_MAX;
        for (size_t i = 0; i < t.size(); ++i) {
            uint64_t kids = 0;
            bool has_kid = false;
            for (const auto& m : t)
                if (m.parent == t[i].name) {
                    kids |= m.label;
                    has_kid = true;
                }
            if (has_kid && kids == t[i].label) {
                good = std::min(good, t[i].name);
                drop_descendants(t, t[i].name); // keeps positions <= i intact
            }
        }

        int color;
        if (bad == INT32_MAX && good == INT32_MAX)
            color = no_event_color;
        else if (bad < good)
            color = 2 * bad - 1;
        else
            color = 2 * good;

        // 6. Compaction: rename to 1..m preserving order. Survivor names only
        //    ever decrease, which keeps long-lived nodes at small names.
        std::map<int, int> rename;
        rename[0] = 0;
        for (const auto& n : t) rename[n.name] = 0;
        int next = 0;
        for (auto& [k, v] : rename) v = next++;
        for (auto& n : t) {
            n.name = rename[n.name];
            n.parent = rename[n.parent];
        }
        return {std::move(t), color};
    }

    // Dedups the children of `parent_name` (older sibling subtrees claim
    // states first), then recurses into each child.
    static void hmerge_children(Tree& t, int parent_name) {
        std::vector<int> kids;
        for (const auto& n : t)
            if (n.parent == parent_name) kids.push_back(n.name); // name order
        uint64_t claimed = 0;
        for (int c : kids) {
            remove_from_subtree(t, c, claimed);
            claimed |= node_label(t, c);
        }
        for (int c : kids) hmerge_children(t, c);
    }

    static uint64_t node_label(const Tree& t, int name) {
        for (const auto& n : t)
            if (n.name == name) return n.label;
        return 0;
    }

    static bool is_descendant(const Tree& t, int name, int anc) {
        int cur = name;
        while (cur != 0) {
            int par = 0;
            for (const auto& n : t)
                if (n.name == cur) {
                    par = n.parent;
                    break;
                }
            if (par == anc) return true;
            cur = par;
        }
        return false;
    }

    static void remove_from_subtree(Tree& t, int name, uint64_t bits) {
        if (!bits) return;
        for (auto& n : t)
            if (n.name == name || is_descendant(t, n.name, name)) n.label &= ~bits;
    }

    static void drop_descendants(Tree& t, int anc) {
        std::vector<char> drop(t.size(), 0);
        for (size_t i = 0; i < t.size(); ++i)
            if (is_descendant(t, t[i].name, anc)) drop[i] = 1;
        Tree kept;
        kept.reserve(t.size());
        for (size_t i = 0; i < t.size(); ++i)
            if (!drop[i]) kept.push_back(t[i]);
        t = std::move(kept);
    }
};

} // namespace

Dpa determinize(const Nba& A0, const Budget& budget) {
    Nba A = trim_reachable(A0);
    Stepper st(A);
    size_t L = A.alphabet.letter_count();

    // Moore-ification: a DPA state is a (tree, entry color) pair; the state
    // color is the max-parity conversion of the entry event.
    const int M = st.no_event_color + 1; // even; max-color = M - min-color
    Tree init_tree;
    if (A.states > 0) init_tree.push_back(TNode{1, 0, uint64_t{1} << A.initial});

    using Key = std::pair<std::vector<uint64_t>, int>;
    std::map<Key, int> ids;
    std::vector<std::pair<Tree, int>> states;
    auto intern = [&](const Tree& t, int entry_color) {
        Key k{tree_key(t), entry_color};
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(states.size());
        budget.check("determinize", states.size() + 1);
        ids.emplace(std::move(k), id);
        states.push_back({t, entry_color});
        return id;
    };

    intern(init_tree, st.no_event_color);
    std::vector<std::vector<int>> delta;
    for (size_t qi = 0; qi < states.size(); ++qi) {
        Tree tree = states[qi].first;
        if (delta.size() <= qi) delta.resize(qi + 1);
        delta[qi].assign(L, 0);
        for (Letter a = 0; a < L; ++a) {
            auto [nt, color] = st.step(tree, a);
            delta[qi][a] = intern(nt, color);
        }
    }

    Dpa D;
    D.alphabet = A.alphabet;
    D.states = states.size();
    D.initial = 0;
    D.color.resize(D.states);
    for (size_t i = 0; i < states.size(); ++i) D.color[i] = M - states[i].second;
    D.delta = std::move(delta);
    D.validate();
    return minimize_dpa(D);
}

} // namespace pdg
