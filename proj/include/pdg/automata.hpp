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

#include <cstdint>
#include <string>
#include <vector>

#include "pdg/common.hpp"
#include "pdg/lasso.hpp"

namespace pdg {

/// A letter over an ordered proposition list, encoded as a bitset:
/// bit i set iff aps[i] is present.
using Letter = uint32_t;

/// Ordered proposition list fixing the explicit letter alphabet 2^aps.
struct Alphabet {
    std::vector<std::string> aps;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    size_t letter_count() const { return size_t{1} << aps.size(); }
    int index_of(const std::string& name) const; ///< -1 if absent

    Letter encode(const PropSet& letter) const;  ///< throws on unknown props
    PropSet decode(Letter l) const;

    bool operator==(const Alphabet& o) const = default;
};

/// Nondeterministic Buchi automaton with explicit letters. Empty successor
/// sets are allowed (the run dies).
struct Nba {
    Alphabet alphabet;
    size_t states = 0;
    int initial = 0;
    std::vector<char> accepting;              ///< per state
    std::vector<std::vector<std::vector<int>>> succ; ///< [state][letter] -> sorted targets

    void validate() const;
};

/// Deterministic max-parity automaton; a run is accepting iff the maximal
/// color occurring infinitely often is even. Complete by invariant.
struct Dpa {
    Alphabet alphabet;
    size_t states = 0;
    int initial = 0;
    std::vector<int> color;               ///< per state
    std::vector<std::vector<int>> delta;  ///< [state][letter] -> state

    void validate() const;
    int step(int q, Letter a) const { return delta[q][a]; }
    int max_color() const;
};

/// Deterministic finite automaton over the same letter encoding; complete.
struct Dfa {
    Alphabet alphabet;
    size_t states = 0;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<std::vector<int>> delta;

    void validate() const;
};

/// True iff some run of A over w visits an accepting state infinitely often,
/// decided on the product of A with the folded lasso positions.
bool nba_accepts(const Nba& A, const LassoWord& w);

/// Runs w through D and reports whether the maximal color on the ultimate
/// cycle is even.
bool dpa_accepts(const Dpa& D, const LassoWord& w);

/// Keeps only states reachable from the initial state.
Nba trim_reachable(const Nba& A);
/// Drops states that cannot reach an accepting cycle, then quotients by
/// forward bisimulation. Language-preserving.
Nba reduce_nba(const Nba& A);

/// Quotient of a DPA by color-respecting bisimulation (partition refinement
/// on colors and successor classes). Language-preserving.
Dpa quotient_dpa(const Dpa& D);
/// Relabels colors to a dense range, preserving order and parity.
Dpa compress_colors(const Dpa& D);
/// Minimal recoloring preserving the parity of the maximal color on every
/// cycle (SCC peeling). States on no cycle get color 0.
Dpa reduce_priorities(const Dpa& D);
/// Iterates priority reduction and bisimulation quotienting to a fixpoint.
Dpa simplify_dpa(const Dpa& D);

/// Exact language equivalence of two complete DPAs over the same alphabet
/// (search for a reachable product cycle with mismatched parity).
bool equivalent_dpa(const Dpa& a, const Dpa& b);
/// Exact language equivalence of two states of one DPA.
bool equivalent_states(const Dpa& D, int q1, int q2);

/// Shrinks a DPA by merging residual-language-equivalent states; every merge
/// is re-checked with the exact equivalence decision and rolled back if it
/// does not preserve the language.
Dpa minimize_dpa(const Dpa& D);

/// Product-alphabet bookkeeping for delay games: inputs first, then outputs,
/// then (optionally) the coloring proposition as the last, output-side bit.
struct SplitAlphabet {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs; ///< including the coloring prop if present
    bool with_color = false;

    Alphabet combined() const;
    size_t input_bits() const { return inputs.size(); }
    size_t output_bits() const { return outputs.size(); }
    size_t input_letters() const { return size_t{1} << inputs.size(); }
    size_t output_letters() const { return size_t{1} << outputs.size(); }
    Letter combine(Letter in, Letter out) const {
        return in | (out << inputs.size());
    }
    Letter input_part(Letter combined_letter) const {
        return combined_letter & ((Letter{1} << inputs.size()) - 1);
    }
    Letter output_part(Letter combined_letter) const {
        return combined_letter >> inputs.size();
    }
    /// True iff the output part of the letter contains the coloring prop.
    bool has_color(Letter out) const {
        return with_color && (out >> (outputs.size() - 1)) & 1;
    }
};

} // namespace pdg
