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

#include <memory>
#include <optional>

#include "pdg/arena.hpp"
#include "pdg/logic.hpp"
#include "pdg/tracking.hpp"

namespace pdg {

/// Block coding: a block of `d` letters is a base-`letters` number, least
/// significant digit = first letter.
uint64_t encode_block(const std::vector<Letter>& block, size_t letters);
std::vector<Letter> decode_block(uint64_t code, size_t d, size_t letters);
/// letters^d, guarded against overflow via the budget.
uint64_t block_count(size_t letters, size_t d, const Budget& budget);

/// Finite-state delay strategy operating on input blocks of length d.
/// The first transition consumes a block without producing output; from then
/// on every consumed block emits one output block (lookahead 2d letters).
struct MealyStrategy {
    SplitAlphabet split;
    size_t d = 1;
    bool stripped = false; ///< coloring proposition removed from outputs

    struct State {
        int behavior; ///< game behavior index
        int track;    ///< chosen tracking state
        uint64_t buffered;
    };
    std::vector<State> states;
    std::vector<int> init;                                    ///< first block -> state
    std::vector<std::vector<std::pair<int, uint64_t>>> step;  ///< [state][block] -> (state, out block)

    size_t input_blocks() const;
    /// Runs the machine over input blocks; returns the emitted output blocks
    /// (one fewer than the inputs consumed).
    std::vector<uint64_t> run(const std::vector<uint64_t>& input_blocks) const;
};

/// Per-letter intersection of every output with the undecorated outputs;
/// the state machine is unchanged. Idempotent.
MealyStrategy strip(const MealyStrategy& m);

/// k = 2 (B + 1) d with B = number of reachable behaviors; checks the
/// bound k <= 2^(2 n^2 + 2) for n = |reachable tracking states|.
size_t compute_bound(const Abstraction& abs, size_t d);

/// Turns a positional winning strategy for Player O on the abstraction game
/// into a delay strategy with lookahead 2d: each consumed block advances the
/// simulated play and the emitted block steers the tracking automaton from
/// the previous reset state to the newly chosen state (lexicographically
/// least steering block).
MealyStrategy extract(const SolveResult& solved, const AbstractionGame& game,
                      const Abstraction& abs, const Budget& budget = {});

/// Exhaustive certification of an (unstripped) strategy against the
/// relativized automaton: on the strategy/automaton product with free input
/// blocks, (a) every reachable cycle has even maximal color, and (b) every
/// p-block along any reachable stem or cycle has length at most k/2.
struct VerificationReport {
    bool parity_ok = false;
    bool blocks_ok = false;     ///< p-block bound; true when skipped
    bool blocks_checked = false;///< false when the automaton has no coloring prop
    bool pumping_ok = false;    ///< no B+1 consecutive change-free blocks (after the first)
    size_t max_p_block = 0;     ///< largest p-run observed (capped at k/2+1)
    size_t max_changefree_streak = 0;
    size_t product_states = 0;
    std::optional<LassoWord> counterexample; ///< input lasso witnessing a failure

    bool ok() const { return parity_ok && blocks_ok; }
};

VerificationReport verify(const MealyStrategy& m, const Dpa& rel_dpa, size_t k,
                          const Budget& budget = {});

/// Everything the play mode and the test harness need beyond the verdict
/// scalars.
struct PipelineData {
    Dpa rel_dpa;
    SplitAlphabet split;
    std::shared_ptr<const Abstraction> abstraction;
    std::shared_ptr<const AbstractionGame> game;
    SolveResult solved;
    std::optional<MealyStrategy> mealy; ///< unstripped, present iff O wins
};

/// Decision result for one delay game.
struct Verdict {
    Player winner = Player::I;
    size_t f0 = 0;                 ///< 2 d
    std::optional<size_t> k;       ///< present iff winner = O and prompt condition
    size_t block_length = 0;       ///< d
    size_t tracking_states = 0;    ///< n
    size_t behaviors = 0;          ///< B
    std::optional<MealyStrategy> strategy; ///< unstripped, iff winner = O
    VerificationReport report;             ///< filled iff winner = O
    std::shared_ptr<PipelineData> pipeline;
};

/// Full pipeline: relativize, translate, determinize, track, abstract,
/// build and solve the game, then extract, bound and certify the strategy
/// when Player O wins.
Verdict decide(const Formula& phi, const Partition& part, const Budget& budget = {});

/// Same pipeline entered with an explicit deterministic parity automaton as
/// the (already relativized) winning condition. If its alphabet lacks the
/// coloring proposition, the game is treated as plain omega-regular: no k is
/// derived and the p-block certification is skipped.
Verdict decide_dpa(Dpa condition, SplitAlphabet split, bool prompt_condition,
                   const Budget& budget = {});

/// Verdict document with stable field names; the embedded strategy table is
/// the stripped (prompt-game) deliverable.
std::string write_verdict(const Verdict& v);

} // namespace pdg
