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

#include "pdg/play.hpp"

#include <iostream>
#include <sstream>

namespace pdg {

Letter parse_letter_text(const std::string& text, const Alphabet& sigma) {
    if (text == "-") return 0;
    Letter l = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string name = text.substr(start, comma == std::string::npos ? comma : comma - start);
        int idx = sigma.index_of(name);
        if (idx < 0) throw parse_error("unknown proposition '" + name + "'", 0);
        l |= Letter{1} << idx;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return l;
}

std::string format_letter(Letter l, const Alphabet& sigma) {
    std::string out;
    for (size_t i = 0; i < sigma.aps.size(); ++i)
        if ((l >> i) & 1) {
            if (!out.empty()) out += ',';
            out += sigma.aps[i];
        }
    return out.empty() ? "-" : out;
}

namespace {

// Reads one block of `len` letters over sigma; empty optional on quit/eof.
// Re-prompts on malformed input.
std::optional<std::vector<Letter>> read_block(std::istream& in, std::ostream& out,
                                              std::ostream* transcript, const Alphabet& sigma,
                                              size_t len, const std::string& prompt) {
    std::string line;
    while (true) {
        out << prompt << " (" << len << " letter" << (len == 1 ? "" : "s") << " over {";
        for (size_t i = 0; i < sigma.aps.size(); ++i) out << (i ? " " : "") << sigma.aps[i];
        out << "}, or 'quit'): " << std::flush;
        if (!std::getline(in, line)) return std::nullopt;
        std::istringstream toks(line);
        std::string tok;
        std::vector<Letter> block;
        bool ok = true;
        while (toks >> tok) {
            if (tok == "quit") return std::nullopt;
            try {
                block.push_back(parse_letter_text(tok, sigma));
            } catch (const parse_error& e) {
                out << "  ! " << e.raw << "\n";
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (block.size() != len) {
            out << "  ! expected " << len << " letters, got " << block.size() << "\n";
            continue;
        }
        if (transcript) *transcript << line << "\n";
        return block;
    }
}

std::string show_block(const std::vector<Letter>& block, const Alphabet& sigma) {
    std::string s;
    for (size_t i = 0; i < block.size(); ++i) {
        if (i) s += ' ';
        s += format_letter(block[i], sigma);
    }
    return s;
}

} // namespace

int play_machine_o(const Verdict& v, std::istream& in, std::ostream& out,
                   std::ostream* transcript) {
    if (v.winner != Player::O || !v.pipeline || !v.pipeline->mealy) {
        out << "no machine strategy for Player O in this verdict\n";
        return 2;
    }
    const MealyStrategy& m = *v.pipeline->mealy;
    Alphabet in_alpha{m.split.inputs};
    // Strip the coloring proposition from the displayed outputs.
    std::vector<std::string> out_named = m.split.outputs;
    if (m.split.with_color) out_named.pop_back();
    Alphabet out_alpha{out_named};
    Letter out_mask = (Letter{1} << out_named.size()) - 1;
    size_t d = m.d;

    out << "you play Player I; the machine answers as Player O after a lookahead of "
        << 2 * d << " letters (blocks of " << d << ")\n";
    int state = -1;
    size_t round = 0;
    while (true) {
        auto block = read_block(in, out, transcript, in_alpha, d,
                                "I block " + std::to_string(round) + ">");
        if (!block) {
            out << "session closed\n";
            return 0;
        }
        uint64_t code = encode_block(*block, m.split.input_letters());
        if (round == 0) {
            state = m.init[code];
            out << "  machine buffers the block (one more block of lookahead)\n";
        } else {
            auto [ns, emit] = m.step[state][code];
            state = ns;
            std::vector<Letter> ob = decode_block(emit, d, m.split.output_letters());
            for (auto& l : ob) l &= out_mask;
            out << "  O block " << round - 1 << ": " << show_block(ob, out_alpha) << "\n";
        }
        ++round;
    }
}

int play_machine_i(const Verdict& v, std::istream& in, std::ostream& out,
                   std::ostream* transcript) {
    if (v.winner != Player::I || !v.pipeline) {
        out << "no machine strategy for Player I in this verdict\n";
        return 2;
    }
    const Abstraction& abs = *v.pipeline->abstraction;
    const AbstractionGame& game = *v.pipeline->game;
    const SolveResult& solved = v.pipeline->solved;
    const TrackingAutomaton& T = abs.tracking();
    Alphabet in_alpha{T.split().inputs};
    Alphabet out_alpha{T.split().outputs};

    out << "you play Player O (outputs include the coloring proposition '" << kColorProp
        << "'); the machine reveals input blocks two rounds ahead\n";

    // sigma_I at the initial vertex and at pair vertices; fall back to any
    // edge outside Player I's winning region.
    auto choice_at = [&](int vertex) {
        int c = solved.strategy_i.choice[vertex];
        if (c < 0) c = game.game.edges[vertex][0];
        return c;
    };

    int r_prev_vertex = choice_at(game.game.initial);
    int behavior_prev = game.labels[r_prev_vertex].behavior;
    int track_prev = T.initial();
    std::vector<Letter> a_prev = abs.shortest_witness(behavior_prev);
    out << "  I block 0: " << show_block(a_prev, in_alpha) << "\n";

    int pair0 = game.pair_vertex.at({behavior_prev, track_prev});
    int r_cur_vertex = choice_at(pair0);
    int behavior_cur = game.labels[r_cur_vertex].behavior;
    std::vector<Letter> a_cur = abs.shortest_witness(behavior_cur);
    out << "  I block 1: " << show_block(a_cur, in_alpha) << "\n";

    size_t round = 0;
    while (true) {
        auto block = read_block(in, out, transcript, out_alpha, a_prev.size(),
                                "O block " + std::to_string(round) + ">");
        if (!block) {
            out << "session closed\n";
            return 0;
        }
        // Advance the tracking automaton from the reset of the previous
        // choice; this resolves Player O's abstract move.
        int q = T.reset(track_prev);
        for (size_t j = 0; j < a_prev.size(); ++j)
            q = T.step(q, T.split().combine(a_prev[j], (*block)[j]));
        int pair = game.pair_vertex.at({behavior_cur, q});
        int next_vertex = choice_at(pair);
        int behavior_next = game.labels[next_vertex].behavior;
        std::vector<Letter> a_next = abs.shortest_witness(behavior_next);
        out << "  tracking state " << q << " (max color " << T.color(q) << ")\n";
        out << "  I block " << round + 2 << ": " << show_block(a_next, in_alpha) << "\n";

        behavior_prev = behavior_cur;
        track_prev = q;
        a_prev = a_cur;
        behavior_cur = behavior_next;
        a_cur = a_next;
        ++round;
    }
}

} // namespace pdg
