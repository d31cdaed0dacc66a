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

#include <string>
#include <vector>

#include "pdg/common.hpp"
#include "pdg/tracking.hpp"

namespace pdg {

enum class Player { I, O };
inline Player opponent(Player p) { return p == Player::I ? Player::O : Player::I; }

/// Max-parity game without terminal vertices. Player O wins a play iff the
/// maximal priority occurring infinitely often is even.
struct ParityGame {
    std::vector<Player> owner;
    std::vector<int> priority;
    std::vector<std::vector<int>> edges;
    int initial = 0;

    size_t size() const { return owner.size(); }
    void validate() const;
};

/// Positional strategy: a chosen successor for every owned vertex inside the
/// owner's winning region, -1 elsewhere.
struct PositionalStrategy {
    Player player = Player::O;
    std::vector<int> choice;
};

struct SolveResult {
    std::vector<Player> winner; ///< per vertex
    PositionalStrategy strategy_i;
    PositionalStrategy strategy_o;

    const PositionalStrategy& strategy(Player p) const {
        return p == Player::I ? strategy_i : strategy_o;
    }
};

/// Zielonka's recursive attractor decomposition. Priorities are compressed
/// to a dense range first; both players' strategies are extracted.
SolveResult solve(const ParityGame& g);

/// Exhaustive soundness check: every cycle reachable from `from` in the
/// strategy-restricted graph is winning for `p` (even maximal priority for
/// Player O, odd for Player I). Vertices outside p's region are not entered.
bool strategy_wins_from(const ParityGame& g, const SolveResult& res, Player p, int from);

/// Game built from the behavior abstraction: the initial vertex, one vertex
/// per behavior (Player O), and one vertex per (behavior, tracking state)
/// pair (Player I, priority = the state's tracked maximal color).
struct AbstractionGame {
    ParityGame game;
    /// Vertex labels for diagnostics and strategy extraction.
    struct Label {
        enum Kind { Initial, BehaviorV, PairV } kind;
        int behavior = -1; ///< global behavior index
        int track = -1;    ///< tracking state id (PairV only)
    };
    std::vector<Label> labels;
    std::vector<int> behavior_vertex;            ///< behavior index -> vertex
    std::map<std::pair<int, int>, int> pair_vertex; ///< (behavior, track) -> vertex
};

AbstractionGame build_game(const Abstraction& abs, const Budget& budget = {});

/// Diagnostic dump with stable field names.
std::string format_game(const ParityGame& g);

} // namespace pdg
