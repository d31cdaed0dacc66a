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

#include "pdg/tracking.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "pdg/scc.hpp"

namespace pdg {

// ---------------------------------------------------------------------------
// TrackingAutomaton
// ---------------------------------------------------------------------------

TrackingAutomaton::TrackingAutomaton(Dpa base, SplitAlphabet split, const Budget& budget)
    : base_(std::move(base)), split_(std::move(split)) {
    if (!(base_.alphabet == split_.combined()))
        throw internal_error("tracking: base automaton alphabet does not match the split");
    base_.validate();

    // Initial state: (q_I, Omega(q_I), (t', 0)) with t' fixed to "no color".
    TrackingState init{base_.initial, base_.color[base_.initial], ColorFlag{false, false}};

    // Materialize the closure under steps and resets.
    auto intern = [&](const TrackingState& ts) {
        auto it = index_.find(ts);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(data_.size());
        budget.check("build_tracking", data_.size() + 1);
        index_.emplace(ts, id);
        data_.push_back(ts);
        return id;
    };
    initial_ = intern(init);
    size_t L = base_.alphabet.letter_count();
    for (size_t id = 0; id < data_.size(); ++id) {
        TrackingState cur = data_[id];
        // Reset companion.
        intern(TrackingState{cur.base, base_.color[cur.base], ColorFlag{cur.flag.last, false}});
        // Step successors.
        for (Letter a = 0; a < L; ++a) {
            int q2 = base_.step(cur.base, a);
            bool now = split_.has_color(split_.output_part(a));
            TrackingState nxt{q2, std::max(cur.maxcolor, base_.color[q2]), upd(cur.flag, now)};
            intern(nxt);
        }
    }
    // Freeze tables.
    delta_.assign(data_.size(), std::vector<int>(L, 0));
    reset_.assign(data_.size(), 0);
    for (size_t id = 0; id < data_.size(); ++id) {
        TrackingState cur = data_[id];
        reset_[id] =
            index_.at(TrackingState{cur.base, base_.color[cur.base], ColorFlag{cur.flag.last, false}});
        for (Letter a = 0; a < L; ++a) {
            int q2 = base_.step(cur.base, a);
            bool now = split_.has_color(split_.output_part(a));
            delta_[id][a] =
                index_.at(TrackingState{q2, std::max(cur.maxcolor, base_.color[q2]), upd(cur.flag, now)});
        }
    }
}

int TrackingAutomaton::find(const TrackingState& ts) const {
    auto it = index_.find(ts);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> TrackingAutomaton::project_step(const std::vector<int>& S, Letter input) const {
    std::set<int> out;
    size_t outs = split_.output_letters();
    for (int q : S)
        for (Letter b = 0; b < outs; ++b) out.insert(step(q, split_.combine(input, b)));
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Behavior (direct definition, independent of the DFA machinery)
// ---------------------------------------------------------------------------

Behavior behavior(const TrackingAutomaton& T, const std::vector<int>& domain,
                  const std::vector<Letter>& w) {
    if (domain.empty()) throw internal_error("behavior: empty domain");
    if (w.empty()) throw internal_error("behavior: empty witness word");
    Behavior r;
    r.domain = domain;
    for (int q : domain) {
        std::vector<int> S{T.reset(q)};
        for (Letter a : w) S = T.project_step(S, a);
        r.image.push_back(std::move(S));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Abstraction
// ---------------------------------------------------------------------------

int Abstraction::intern_set(std::vector<int> s) {
    auto it = set_ids_.find(s);
    if (it != set_ids_.end()) return it->second;
    int id = static_cast<int>(sets_.size());
    set_ids_.emplace(s, id);
    sets_.push_back(std::move(s));
    return id;
}

int Abstraction::intern_hint(const std::vector<int>& s) const {
    auto it = set_ids_.find(s);
    return it == set_ids_.end() ? -1 : it->second;
}

int Abstraction::domain_index(int set_id) const {
    auto it = domain_idx_.find(set_id);
    return it == domain_idx_.end() ? -1 : it->second;
}

Abstraction::BehaviorDfa Abstraction::build_dfa(int domain_set, const Budget& budget) {
    BehaviorDfa dfa;
    dfa.domain_set = domain_set;
    const std::vector<int>& dom = sets_[domain_set];

    // Distinct reset states: elements agreeing on (base, last color) evolve
    // identically after the reset.
    for (int q : dom) {
        int r = tr_.reset(q);
        if (std::find(dfa.keys.begin(), dfa.keys.end(), r) == dfa.keys.end())
            dfa.keys.push_back(r);
    }
    std::sort(dfa.keys.begin(), dfa.keys.end());
    for (int q : dom) {
        int r = tr_.reset(q);
        dfa.elem_key.push_back(static_cast<int>(
            std::find(dfa.keys.begin(), dfa.keys.end(), r) - dfa.keys.begin()));
    }

    // BFS over tuples of set ids.
    std::map<std::vector<int>, int> ids;
    std::vector<int> init_tuple;
    for (int k : dfa.keys) init_tuple.push_back(intern_set({k}));
    ids.emplace(init_tuple, 0);
    dfa.tuple.push_back(init_tuple);
    dfa.initial = 0;
    size_t in_letters = tr_.split().input_letters();
    for (size_t s = 0; s < dfa.tuple.size(); ++s) {
        dfa.next.emplace_back(in_letters, 0);
        for (Letter a = 0; a < in_letters; ++a) {
            std::vector<int> nt;
            for (int set_id : dfa.tuple[s]) nt.push_back(intern_set(tr_.project_step(sets_[set_id], a)));
            auto it = ids.find(nt);
            int target;
            if (it == ids.end()) {
                target = static_cast<int>(dfa.tuple.size());
                budget.check("reachable_abstraction (behavior dfa)", dfa.tuple.size() + 1);
                ids.emplace(nt, target);
                dfa.tuple.push_back(std::move(nt));
            } else {
                target = it->second;
            }
            dfa.next[s][a] = target;
        }
    }

    // Classification: infinite-witness states are those reachable from a
    // state that lies on a cycle. Every state here is reachable from the
    // initial tuple by construction.
    size_t n = dfa.tuple.size();
    std::vector<std::vector<int>> adj(n);
    for (size_t s = 0; s < n; ++s)
        for (Letter a = 0; a < in_letters; ++a) adj[s].push_back(dfa.next[s][a]);
    SccResult scc = tarjan_scc(adj);
    std::vector<char> cyc = cycle_vertices(adj, scc);
    dfa.infinite.assign(n, 0);
    std::deque<int> queue;
    for (size_t s = 0; s < n; ++s)
        if (cyc[s]) {
            dfa.infinite[s] = 1;
            queue.push_back(static_cast<int>(s));
        }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int t : adj[s])
            if (!dfa.infinite[t]) {
                dfa.infinite[t] = 1;
                queue.push_back(t);
            }
    }

    // States reachable by at least one letter are behaviors.
    dfa.behavior_state.assign(n, 0);
    for (Letter a = 0; a < in_letters; ++a) {
        int s1 = dfa.next[dfa.initial][a];
        if (!dfa.behavior_state[s1]) {
            dfa.behavior_state[s1] = 1;
            queue.push_back(s1);
        }
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int t : adj[s])
            if (!dfa.behavior_state[t]) {
                dfa.behavior_state[t] = 1;
                queue.push_back(t);
            }
    }
    dfa.behavior_id.assign(n, -1);
    return dfa;
}

Abstraction::Abstraction(TrackingAutomaton T, const Budget& budget) : tr_(std::move(T)) {
    int seed = intern_set({tr_.initial()});
    domains_.push_back(seed);
    domain_idx_[seed] = 0;

    for (size_t di = 0; di < domains_.size(); ++di) {
        budget.check("reachable_abstraction (domains)", domains_.size());
        BehaviorDfa dfa = build_dfa(domains_[di], budget);
        // Register infinite-witness behaviors and their image domains.
        for (size_t s = 0; s < dfa.tuple.size(); ++s) {
            if (!dfa.behavior_state[s] || !dfa.infinite[s]) continue;
            dfa.behavior_id[s] = static_cast<int>(behaviors_.size());
            behaviors_.push_back(BehaviorRef{static_cast<int>(di), static_cast<int>(s)});
            for (int img : dfa.tuple[s]) {
                if (domain_idx_.count(img)) continue;
                domain_idx_[img] = static_cast<int>(domains_.size());
                domains_.push_back(img);
            }
        }
        dfas_.push_back(std::move(dfa));
    }

    // Block length: longest word landing on a finite-witness state, plus one.
    size_t longest = 0;
    for (const auto& dfa : dfas_) {
        size_t n = dfa.tuple.size();
        // Longest-path DP over the acyclic finite-witness subgraph.
        std::vector<long> best(n, -1);
        best[dfa.initial] = 0;
        // The finite subgraph is a DAG; n sweeps certainly converge.
        bool changed = true;
        size_t sweeps = 0;
        while (changed && sweeps <= n + 1) {
            changed = false;
            ++sweeps;
            for (size_t s = 0; s < n; ++s) {
                if (best[s] < 0) continue;
                for (int t : dfa.next[s]) {
                    if (dfa.infinite[t]) continue;
                    if (best[t] < best[s] + 1) {
                        best[t] = best[s] + 1;
                        changed = true;
                    }
                }
            }
        }
        if (sweeps > n + 1) throw internal_error("finite-witness subgraph has a cycle");
        for (size_t s = 0; s < n; ++s)
            if (!dfa.infinite[s] && best[s] > 0) longest = std::max(longest, static_cast<size_t>(best[s]));
    }
    d_ = longest + 1;
    // d <= 2^(n^2); beyond 64-bit exponents the bound holds trivially here.
    size_t n = tr_.states();
    if (n * n < 63 && d_ > (uint64_t{1} << (n * n)))
        throw internal_error("block length exceeds the witness-length bound");
}

Dfa Abstraction::witness_dfa(size_t b) const {
    const BehaviorRef& ref = behaviors_.at(b);
    const BehaviorDfa& src = dfas_[ref.domain_idx];
    Dfa out;
    out.alphabet = Alphabet(tr_.split().inputs);
    out.states = src.tuple.size();
    out.initial = src.initial;
    out.accepting.assign(out.states, 0);
    out.accepting[ref.dfa_state] = 1;
    out.delta = src.next;
    // The empty word never witnesses a behavior: if the initial state is the
    // accepted one, split it so acceptance needs at least one letter.
    if (ref.dfa_state == src.initial) {
        out.delta.push_back(out.delta[out.initial]);
        out.accepting.push_back(0);
        out.initial = static_cast<int>(out.states);
        out.states += 1;
    }
    out.validate();
    return out;
}

Behavior Abstraction::materialize(size_t b) const {
    const BehaviorRef& ref = behaviors_.at(b);
    const BehaviorDfa& dfa = dfas_[ref.domain_idx];
    Behavior r;
    r.domain = sets_[dfa.domain_set];
    for (size_t i = 0; i < r.domain.size(); ++i)
        r.image.push_back(sets_[dfa.tuple[ref.dfa_state][dfa.elem_key[i]]]);
    return r;
}

int Abstraction::run_block(int domain_idx, const std::vector<Letter>& block) const {
    const BehaviorDfa& dfa = dfas_.at(domain_idx);
    int s = dfa.initial;
    for (Letter a : block) s = dfa.next[s][a];
    return s;
}

std::vector<Letter> Abstraction::shortest_witness(size_t b) const {
    const BehaviorRef& ref = behaviors_.at(b);
    const BehaviorDfa& dfa = dfas_[ref.domain_idx];
    size_t in_letters = tr_.split().input_letters();
    // BFS with >= 1 step; parent pointers reconstruct the word.
    std::vector<int> par(dfa.tuple.size(), -2);
    std::vector<Letter> via(dfa.tuple.size(), 0);
    std::deque<int> queue;
    for (Letter a = 0; a < in_letters; ++a) {
        int t = dfa.next[dfa.initial][a];
        if (par[t] == -2) {
            par[t] = -1; // reached in one step from the initial tuple
            via[t] = a;
            queue.push_back(t);
        }
        if (t == ref.dfa_state) {
            // Shortest possible: single letter (prefer the least a).
            std::vector<Letter> w{via[t]};
            return w;
        }
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < in_letters; ++a) {
            int t = dfa.next[s][a];
            if (par[t] != -2) continue;
            par[t] = s;
            via[t] = a;
            if (t == ref.dfa_state) {
                std::vector<Letter> w;
                int cur = t;
                while (cur != -1) {
                    w.push_back(via[cur]);
                    cur = par[cur];
                }
                std::reverse(w.begin(), w.end());
                return w;
            }
            queue.push_back(t);
        }
    }
    throw internal_error("behavior has no witness");
}

std::string format_abstraction(const Abstraction& abs) {
    std::ostringstream out;
    out << "tracking-states: " << abs.tracking().states() << "\n";
    out << "input-letters: " << abs.tracking().split().input_letters() << "\n";
    out << "domains: " << abs.domain_count() << "\n";
    out << "behaviors-total: " << abs.behavior_count() << "\n";
    out << "block-length: " << abs.block_length() << "\n";
    for (size_t i = 0; i < abs.domain_count(); ++i) {
        const auto& dfa = abs.dfa(i);
        size_t beh = 0, inf = 0, fin = 0;
        for (size_t s = 0; s < dfa.tuple.size(); ++s) {
            if (!dfa.behavior_state[s]) continue;
            ++beh;
            if (dfa.infinite[s])
                ++inf;
            else
                ++fin;
        }
        out << "domain " << i << " size=" << abs.set_of(dfa.domain_set).size()
            << " dfa-states=" << dfa.tuple.size() << " behaviors=" << beh << " infinite=" << inf
            << " finite=" << fin << "\n";
    }
    return out.str();
}

} // namespace pdg
