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

#include "pdg/arena.hpp"
#include "pdg/logic.hpp"
#include "pdg/strategy.hpp"

namespace pdg {

/// Ground-truth solver: the lookahead buffer is materialized explicitly in a
/// parity game. Round structure of the delay game with the constant delay
/// function f(0) = f0, f(i) = 1: Player I fills the queue letter by letter,
/// then the players alternate append/consume moves.
struct ExplicitResult {
    Player winner = Player::I;
    ParityGame game;        ///< the buffered game (for structure audits)
    SolveResult solved;
    int initial = 0;
    /// Vertex labels: automaton state, queue content code, queue length,
    /// whose move it is.
    struct Label {
        int state;
        uint64_t queue;
        size_t queue_len;
        Player turn;
    };
    std::vector<Label> labels;
};

/// Solves the delay game with winning condition L(D) and constant lookahead
/// f(0) = f0 >= 1 by explicit construction. D is over a split alphabet.
ExplicitResult solve_explicit(const Dpa& D, const SplitAlphabet& split, size_t f0,
                              const Budget& budget = {});

/// Prompt conditions with a fixed bound k: each prompt operator is expanded
/// into the (k+1)-fold disjunction, then the plain pipeline runs and the
/// buffered game is solved.
Player solve_prompt_explicit(const Formula& phi, const Partition& part, size_t k, size_t f0,
                             const Budget& budget = {});

} // namespace pdg
