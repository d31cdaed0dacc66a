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

#include "pdg/oracle.hpp"

#include <deque>
#include <map>

#include "pdg/determinize.hpp"
#include "pdg/ltl2nba.hpp"

namespace pdg {

namespace {
uint64_t pow_len(size_t base, size_t exp) {
    uint64_t r = 1;
    for (size_t i = 0; i < exp; ++i) r *= base;
    return r;
}
} // namespace

ExplicitResult solve_explicit(const Dpa& D, const SplitAlphabet& split, size_t f0,
                              const Budget& budget) {
    if (f0 == 0) throw internal_error("lookahead must be positive");
    D.validate();
    if (!(D.alphabet == split.combined()))
        throw internal_error("oracle: automaton alphabet does not match the split");
    size_t in_letters = split.input_letters();

    ExplicitResult res;
    ParityGame& g = res.game;

    // Vertex = (automaton state, queue of pending input letters, turn).
    // Player I appends one letter per move until the queue holds f0 letters
    // (round 0) or one more than after O's consume (later rounds); Player O
    // consumes the front letter together with her output choice.
    using Key = std::tuple<int, uint64_t, size_t, Player>;
    std::map<Key, int> idx;
    auto intern = [&](int state, uint64_t queue, size_t len, Player turn) {
        Key key{state, queue, len, turn};
        auto it = idx.find(key);
        if (it != idx.end()) return it->second;
        budget.check("oracle (buffered game)", g.size() + 1);
        int id = static_cast<int>(g.size());
        idx.emplace(key, id);
        g.owner.push_back(turn);
        g.priority.push_back(D.color[state]);
        g.edges.emplace_back();
        res.labels.push_back({state, queue, len, turn});
        return id;
    };

    int init = intern(D.initial, 0, 0, Player::I);
    res.initial = init;
    g.initial = init;
    std::deque<int> work{init};
    std::vector<char> expanded;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        if (expanded.size() < g.size()) expanded.resize(g.size(), 0);
        if (expanded[v]) continue;
        expanded[v] = 1;
        auto [state, queue, len, turn] = std::make_tuple(
            res.labels[v].state, res.labels[v].queue, res.labels[v].queue_len, res.labels[v].turn);
        std::vector<int> targets;
        if (turn == Player::I) {
            // Append one input letter; hand over once the queue is full.
            for (Letter a = 0; a < in_letters; ++a) {
                uint64_t nq = queue + static_cast<uint64_t>(a) * pow_len(in_letters, len);
                size_t nlen = len + 1;
                Player nturn = nlen >= f0 ? Player::O : Player::I;
                targets.push_back(intern(state, nq, nlen, nturn));
            }
        } else {
            // Consume the front letter with every output choice.
            Letter front = static_cast<Letter>(queue % in_letters);
            uint64_t rest = queue / in_letters;
            for (Letter b = 0; b < split.output_letters(); ++b) {
                int ns = D.step(state, split.combine(front, b));
                targets.push_back(intern(ns, rest, len - 1, Player::I));
            }
        }
        for (int t : targets) {
            g.edges[v].push_back(t);
            if (expanded.size() < g.size()) expanded.resize(g.size(), 0);
            if (!expanded[t]) work.push_back(t);
        }
    }
    res.solved = solve(g);
    res.winner = res.solved.winner[init];
    return res;
}

Player solve_prompt_explicit(const Formula& phi, const Partition& part, size_t k, size_t f0,
                             const Budget& budget) {
    Formula flat = expand_prompt(phi, k);
    SplitAlphabet split{part.inputs, part.outputs, false};
    Nba nba = ltl_to_nba(flat, split.combined(), budget);
    Dpa dpa = determinize(nba, budget);
    return solve_explicit(dpa, split, f0, budget).winner;
}

} // namespace pdg
