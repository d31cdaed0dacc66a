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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdg/automata.hpp"

namespace pdg {

/// Last color of the coloring proposition plus a sticky change bit.
struct ColorFlag {
    bool last = false;    ///< coloring prop held at the previous letter
    bool changed = false; ///< a change point occurred since the last reset

    auto operator<=>(const ColorFlag&) const = default;
};

/// upd((t, s), t'): new last color t', change bit stays 0 only if it was 0
/// and the color did not flip.
inline ColorFlag upd(ColorFlag f, bool now) {
    return ColorFlag{now, f.changed || f.last != now};
}

/// One state of the tracking automaton: base automaton state, maximal color
/// seen since the last reset, and the color flag.
struct TrackingState {
    int base = 0;
    int maxcolor = 0;
    ColorFlag flag;

    auto operator<=>(const TrackingState&) const = default;
};

/// The tracking automaton: the base DPA extended with the running maximal
/// color and the change-point flag. States are materialized for the closure
/// of the initial state under steps and resets.
class TrackingAutomaton {
public:
    TrackingAutomaton(Dpa base, SplitAlphabet split, const Budget& budget = {});

    const Dpa& base() const { return base_; }
    const SplitAlphabet& split() const { return split_; }

    size_t states() const { return data_.size(); }
    int initial() const { return initial_; }
    const TrackingState& state(int id) const { return data_[id]; }
    int color(int id) const { return data_[id].maxcolor; }

    /// delta_T on a combined letter.
    int step(int id, Letter combined) const { return delta_[id][combined]; }
    /// Reset of the tracking components: (q, m, (t, s)) -> (q, Omega(q), (t, 0)).
    int reset(int id) const { return reset_[id]; }

    /// delta_P(S, a): image of S under the input letter a and every output
    /// letter. S and the result are sorted id vectors.
    std::vector<int> project_step(const std::vector<int>& S, Letter input) const;

    /// Looks up a state id; -1 if it was never materialized.
    int find(const TrackingState& ts) const;

private:
    Dpa base_;
    SplitAlphabet split_;
    std::vector<TrackingState> data_;
    std::map<TrackingState, int> index_;
    std::vector<std::vector<int>> delta_;
    std::vector<int> reset_;
    int initial_ = 0;
};

/// A behavior: the state transformation a fixed input word induces on the
/// tracking automaton, with the tracking components reset per element.
struct Behavior {
    std::vector<int> domain;             ///< sorted tracking state ids, nonempty
    std::vector<std::vector<int>> image; ///< per domain element, sorted, nonempty
};

/// The unique behavior witnessed by w (|w| >= 1) on the nonempty domain D.
Behavior behavior(const TrackingAutomaton& T, const std::vector<int>& domain,
                  const std::vector<Letter>& w);

/// Reachable part of the behavior abstraction: for every domain reachable
/// from {q_I^T}, the deterministic behavior DFA over input letters, its
/// states classified by witness-language infiniteness, and the block length.
class Abstraction {
public:
    Abstraction(TrackingAutomaton T, const Budget& budget = {});

    const TrackingAutomaton& tracking() const { return tr_; }

    /// Interned tracking-state sets.
    const std::vector<int>& set_of(int set_id) const { return sets_[set_id]; }
    int intern_hint(const std::vector<int>& s) const; ///< -1 if unknown

    struct BehaviorDfa {
        int domain_set = -1;              ///< SetId of the domain
        std::vector<int> keys;            ///< distinct reset ids, sorted
        std::vector<int> elem_key;        ///< per domain element: index into keys
        std::vector<std::vector<int>> tuple; ///< per state: SetId per key
        std::vector<std::vector<int>> next;  ///< [state][input letter]
        std::vector<char> infinite;       ///< infinite witness language
        std::vector<char> behavior_state; ///< reachable via >= 1 letters
        std::vector<int> behavior_id;     ///< global behavior index or -1
        int initial = 0;
    };

    size_t domain_count() const { return domains_.size(); }
    int domain_set_id(size_t i) const { return domains_[i]; }
    const BehaviorDfa& dfa(size_t domain_idx) const { return dfas_[domain_idx]; }
    /// Index of a domain given its SetId; -1 if not a domain.
    int domain_index(int set_id) const;

    struct BehaviorRef {
        int domain_idx;
        int dfa_state;
    };
    size_t behavior_count() const { return behaviors_.size(); }
    const BehaviorRef& behavior_ref(size_t b) const { return behaviors_[b]; }
    /// Materializes the behavior function of a global behavior index.
    Behavior materialize(size_t b) const;

    /// Runs the domain's DFA on the block; returns the DFA state.
    int run_block(int domain_idx, const std::vector<Letter>& block) const;

    /// Minimal d >= 1 such that every input word of length >= d witnesses an
    /// infinite-witness behavior, for every reachable domain.
    size_t block_length() const { return d_; }

    /// A shortest witness of the given behavior (BFS, letters ascending).
    std::vector<Letter> shortest_witness(size_t b) const;

    /// The witness language W_r of a behavior as a complete DFA over the
    /// input letters.
    Dfa witness_dfa(size_t b) const;

private:
    TrackingAutomaton tr_;
    std::vector<std::vector<int>> sets_;
    std::map<std::vector<int>, int> set_ids_;
    std::vector<int> domains_; ///< SetIds in discovery order; [0] = {q_I^T}
    std::map<int, int> domain_idx_;
    std::vector<BehaviorDfa> dfas_;
    std::vector<BehaviorRef> behaviors_;
    size_t d_ = 1;

    int intern_set(std::vector<int> s);
    BehaviorDfa build_dfa(int domain_set, const Budget& budget);
};

/// Diagnostic dump with stable field names.
std::string format_abstraction(const Abstraction& abs);

} // namespace pdg
