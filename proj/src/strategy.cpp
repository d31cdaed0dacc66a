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

#include "pdg/strategy.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "pdg/determinize.hpp"
#include "pdg/ltl2nba.hpp"
#include "pdg/scc.hpp"

namespace pdg {

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

uint64_t encode_block(const std::vector<Letter>& block, size_t letters) {
    uint64_t code = 0;
    for (size_t i = block.size(); i-- > 0;) code = code * letters + block[i];
    return code;
}

std::vector<Letter> decode_block(uint64_t code, size_t d, size_t letters) {
    std::vector<Letter> out(d);
    for (size_t i = 0; i < d; ++i) {
        out[i] = static_cast<Letter>(code % letters);
        code /= letters;
    }
    return out;
}

uint64_t block_count(size_t letters, size_t d, const Budget& budget) {
    uint64_t n = 1;
    for (size_t i = 0; i < d; ++i) {
        if (n > budget.max_states) throw capacity_error("input blocks", budget.max_states);
        n *= letters;
    }
    budget.check("input blocks", n);
    return n;
}

size_t MealyStrategy::input_blocks() const {
    uint64_t n = 1;
    for (size_t i = 0; i < d; ++i) n *= split.input_letters();
    return n;
}

std::vector<uint64_t> MealyStrategy::run(const std::vector<uint64_t>& input) const {
    if (input.empty()) return {};
    std::vector<uint64_t> out;
    int s = init.at(input[0]);
    for (size_t i = 1; i < input.size(); ++i) {
        auto [ns, emit] = step[s][input[i]];
        out.push_back(emit);
        s = ns;
    }
    return out;
}

MealyStrategy strip(const MealyStrategy& m) {
    MealyStrategy out = m;
    if (!m.split.with_color) {
        out.stripped = true;
        return out;
    }
    Letter pbit = Letter{1} << (m.split.outputs.size() - 1);
    size_t letters = m.split.output_letters();
    for (auto& row : out.step)
        for (auto& [ns, emit] : row) {
            std::vector<Letter> block = decode_block(emit, m.d, letters);
            for (auto& b : block) b &= ~pbit;
            emit = encode_block(block, letters);
        }
    out.stripped = true;
    return out;
}

// ---------------------------------------------------------------------------
// Bound
// ---------------------------------------------------------------------------

size_t compute_bound(const Abstraction& abs, size_t d) {
    size_t B = abs.behavior_count();
    size_t k = 2 * (B + 1) * d;
    size_t n = abs.tracking().states();
    // k <= 2^(2 n^2 + 2); only decidable within 64 bits when the exponent is
    // small, otherwise it holds trivially at this scale.
    if (2 * n * n + 2 < 63) {
        uint64_t bound = uint64_t{1} << (2 * n * n + 2);
        if (k > bound) throw internal_error("prompt bound exceeds the pumping bound");
    }
    return k;
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

namespace {

// Lexicographically least output block steering the tracking automaton from
// `start` to `target` while reading the fixed input block.
std::vector<Letter> steer(const TrackingAutomaton& T, int start,
                          const std::vector<Letter>& input, int target) {
    size_t d = input.size();
    size_t outs = T.split().output_letters();
    // Forward sets from the start state.
    std::vector<std::vector<int>> fwd(d + 1);
    fwd[0] = {start};
    for (size_t j = 0; j < d; ++j) {
        std::set<int> nxt;
        for (int q : fwd[j])
            for (Letter b = 0; b < outs; ++b) nxt.insert(T.step(q, T.split().combine(input[j], b)));
        fwd[j + 1].assign(nxt.begin(), nxt.end());
    }
    // Backward filtering.
    std::vector<std::set<int>> can(d + 1);
    can[d].insert(target);
    for (size_t j = d; j-- > 0;) {
        for (int q : fwd[j])
            for (Letter b = 0; b < outs; ++b)
                if (can[j + 1].count(T.step(q, T.split().combine(input[j], b)))) {
                    can[j].insert(q);
                    break;
                }
    }
    if (!can[0].count(start)) throw internal_error("no steering block exists");
    // Greedy forward choice.
    std::vector<Letter> out(d);
    int cur = start;
    for (size_t j = 0; j < d; ++j) {
        bool found = false;
        for (Letter b = 0; b < outs && !found; ++b) {
            int nq = T.step(cur, T.split().combine(input[j], b));
            if (can[j + 1].count(nq)) {
                out[j] = b;
                cur = nq;
                found = true;
            }
        }
        if (!found) throw internal_error("steering dead end");
    }
    if (cur != target) throw internal_error("steering missed the target");
    return out;
}

} // namespace

MealyStrategy extract(const SolveResult& solved, const AbstractionGame& game,
                      const Abstraction& abs, const Budget& budget) {
    const TrackingAutomaton& T = abs.tracking();
    size_t d = abs.block_length();
    MealyStrategy m;
    m.split = T.split();
    m.d = d;
    size_t blocks = block_count(m.split.input_letters(), d, budget);

    if (solved.winner[game.game.initial] != Player::O)
        throw internal_error("extraction requires a winning initial vertex for Player O");

    // The sigma choice at a behavior vertex, as a tracking state.
    auto sigma_track = [&](int behavior) {
        int bv = game.behavior_vertex[behavior];
        int pv = solved.strategy_o.choice[bv];
        if (pv < 0) throw internal_error("strategy undefined on a reachable behavior vertex");
        return game.labels[pv].track;
    };
    // Behavior induced by a block on a domain; must be infinite-witness.
    auto block_behavior = [&](int domain_idx, const std::vector<Letter>& block) {
        int s = abs.run_block(domain_idx, block);
        int b = abs.dfa(domain_idx).behavior_id[s];
        if (b < 0)
            throw internal_error("a full-length block witnessed a finite-witness behavior");
        return b;
    };
    // Domain reached from (behavior, track).
    auto image_domain = [&](int behavior, int track) {
        const auto& ref = abs.behavior_ref(behavior);
        const auto& dfa = abs.dfa(ref.domain_idx);
        const auto& dom = abs.set_of(abs.domain_set_id(ref.domain_idx));
        size_t pos = std::lower_bound(dom.begin(), dom.end(), track) - dom.begin();
        int img = dfa.tuple[ref.dfa_state][dfa.elem_key[pos]];
        int idx = abs.domain_index(img);
        if (idx < 0) throw internal_error("image set is not a domain");
        return idx;
    };

    std::map<std::tuple<int, int, uint64_t>, int> index;
    auto intern = [&](int behavior, int track, uint64_t buffered) {
        auto key = std::make_tuple(behavior, track, buffered);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(m.states.size());
        budget.check("extract (strategy states)", m.states.size() + 1);
        index.emplace(key, id);
        m.states.push_back(MealyStrategy::State{behavior, track, buffered});
        return id;
    };

    // Bootstrap: consume the first block.
    m.init.assign(blocks, -1);
    std::deque<int> work;
    for (uint64_t code = 0; code < blocks; ++code) {
        std::vector<Letter> a0 = decode_block(code, d, m.split.input_letters());
        int b0 = block_behavior(0, a0);
        int q0 = sigma_track(b0);
        if (q0 != T.initial())
            throw internal_error("seed behavior chose a state other than the initial one");
        int s = intern(b0, q0, code);
        m.init[code] = s;
    }
    for (size_t s = 0; s < m.states.size(); ++s) work.push_back(static_cast<int>(s));

    m.step.resize(m.states.size());
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        if (m.step.size() < m.states.size()) m.step.resize(m.states.size());
        if (!m.step[s].empty()) continue;
        MealyStrategy::State st = m.states[s];
        m.step[s].assign(blocks, {-1, 0});
        std::vector<Letter> buffered = decode_block(st.buffered, d, m.split.input_letters());
        int dom_idx = image_domain(st.behavior, st.track);
        for (uint64_t code = 0; code < blocks; ++code) {
            std::vector<Letter> a1 = decode_block(code, d, m.split.input_letters());
            int b1 = block_behavior(dom_idx, a1);
            int q1 = sigma_track(b1);
            std::vector<Letter> out = steer(T, T.reset(st.track), buffered, q1);
            size_t before = m.states.size();
            int ns = intern(b1, q1, code);
            if (m.states.size() > before) {
                m.step.resize(m.states.size());
                work.push_back(ns);
            }
            budget.check("extract (strategy table)",
                         m.states.size() * static_cast<size_t>(blocks) / 4);
            m.step[s][code] = {ns, encode_block(out, m.split.output_letters())};
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

// Per-edge summary of the coloring-proposition bit sequence of one emitted
// block: enough to chain maximal-run analysis across blocks.
struct RunSummary {
    int first_bit = -1;
    int last_bit = -1;
    size_t head = 0;     ///< longest prefix of constant first_bit
    size_t tail = 0;     ///< longest suffix of constant last_bit
    size_t interior = 0; ///< longest run anywhere inside the block
    bool all_const = false;
};

RunSummary summarize_bits(const std::vector<int>& bits) {
    RunSummary s;
    size_t d = bits.size();
    s.first_bit = bits.front();
    s.last_bit = bits.back();
    s.head = 1;
    while (s.head < d && bits[s.head] == s.first_bit) ++s.head;
    s.tail = 1;
    while (s.tail < d && bits[d - 1 - s.tail] == s.last_bit) ++s.tail;
    size_t run = 1;
    s.interior = 1;
    for (size_t j = 1; j < d; ++j) {
        run = bits[j] == bits[j - 1] ? run + 1 : 1;
        s.interior = std::max(s.interior, run);
    }
    s.all_const = s.head == d;
    return s;
}

} // namespace

VerificationReport verify(const MealyStrategy& m, const Dpa& rel_dpa, size_t k,
                          const Budget& budget) {
    VerificationReport rep;
    // The change-free streak budget from the pumping argument: k = 2(B+1)d.
    size_t streak_budget = m.d > 0 ? k / (2 * m.d) : 0; // = B + 1
    size_t d = m.d;
    size_t in_letters = m.split.input_letters();
    size_t out_letters = m.split.output_letters();
    uint64_t blocks = block_count(in_letters, d, budget);
    bool has_p = m.split.with_color && !m.stripped;
    int pshift = has_p ? static_cast<int>(m.split.outputs.size()) - 1 : -1;

    // Product of the strategy with the automaton at block granularity.
    std::map<std::pair<int, int>, int> pidx;
    std::vector<std::pair<int, int>> pstates;
    auto pintern = [&](int ms, int dq) {
        auto key = std::make_pair(ms, dq);
        auto it = pidx.find(key);
        if (it != pidx.end()) return it->second;
        int id = static_cast<int>(pstates.size());
        budget.check("verify (product states)", pstates.size() + 1);
        pidx.emplace(key, id);
        pstates.push_back(key);
        return id;
    };

    struct Edge {
        int target;
        int maxcolor;
        uint64_t block;
        RunSummary runs;
    };
    std::vector<std::vector<Edge>> edges;

    std::set<int> roots;
    for (uint64_t a0 = 0; a0 < blocks; ++a0) roots.insert(pintern(m.init[a0], rel_dpa.initial));
    std::deque<int> work(roots.begin(), roots.end());
    std::vector<char> expanded;
    while (!work.empty()) {
        int p = work.front();
        work.pop_front();
        if (expanded.size() < pstates.size()) expanded.resize(pstates.size(), 0);
        if (expanded[p]) continue;
        expanded[p] = 1;
        if (edges.size() < pstates.size()) edges.resize(pstates.size());
        auto [ms, dq] = pstates[p];
        std::vector<Letter> a = decode_block(m.states[ms].buffered, d, in_letters);
        for (uint64_t code = 0; code < blocks; ++code) {
            auto [nms, emit] = m.step[ms][code];
            std::vector<Letter> b = decode_block(emit, d, out_letters);
            int cur = dq;
            int maxc = 0;
            std::vector<int> bits(d, -1);
            for (size_t j = 0; j < d; ++j) {
                cur = rel_dpa.step(cur, m.split.combine(a[j], b[j]));
                maxc = std::max(maxc, rel_dpa.color[cur]);
                if (has_p) bits[j] = static_cast<int>((b[j] >> pshift) & 1);
            }
            budget.check("verify (product edges)", pstates.size() + edges[p].size());
            int np = pintern(nms, cur);
            Edge e{np, maxc, code, has_p ? summarize_bits(bits) : RunSummary{}};
            edges[p].push_back(e);
            if (static_cast<size_t>(np) >= expanded.size() || !expanded[np]) work.push_back(np);
        }
    }
    if (edges.size() < pstates.size()) edges.resize(pstates.size());
    rep.product_states = pstates.size();

    // Counterexample assembly: the bootstrap block of the entry state plus
    // the blocks along a stem and a cycle of product edges.
    Alphabet in_alpha{m.split.inputs};
    auto blocks_to_letters = [&](const std::vector<uint64_t>& bs) {
        std::vector<PropSet> out;
        for (uint64_t code : bs)
            for (Letter l : decode_block(code, d, in_letters)) out.push_back(in_alpha.decode(l));
        return out;
    };
    auto stem_blocks_to = [&](int target, std::vector<uint64_t>& bs, int& entry) {
        // BFS from the roots to `target`, recording the edge blocks.
        std::vector<int> par(pstates.size(), -2);
        std::vector<uint64_t> via(pstates.size(), 0);
        std::deque<int> q;
        for (int r : roots) {
            par[r] = -1;
            q.push_back(r);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (v == target) break;
            for (const Edge& e : edges[v])
                if (par[e.target] == -2) {
                    par[e.target] = v;
                    via[e.target] = e.block;
                    q.push_back(e.target);
                }
        }
        std::vector<uint64_t> rev;
        int cur = target;
        while (par[cur] >= 0) {
            rev.push_back(via[cur]);
            cur = par[cur];
        }
        entry = cur;
        bs.assign(rev.rbegin(), rev.rend());
    };

    // (a) Parity: for every odd block-max color c, no cycle may use an edge
    // of color exactly c while staying within colors <= c.
    rep.parity_ok = true;
    std::set<int> colors;
    for (size_t p = 0; p < pstates.size(); ++p)
        for (const Edge& e : edges[p]) colors.insert(e.maxcolor);
    for (int c : colors) {
        if (c % 2 == 0 || !rep.parity_ok) continue;
        std::vector<std::vector<int>> adj(pstates.size());
        for (size_t p = 0; p < pstates.size(); ++p)
            for (const Edge& e : edges[p])
                if (e.maxcolor <= c) adj[p].push_back(e.target);
        SccResult scc = tarjan_scc(adj);
        for (size_t p = 0; p < pstates.size() && rep.parity_ok; ++p)
            for (const Edge& e : edges[p]) {
                if (e.maxcolor != c || scc.comp[p] != scc.comp[e.target]) continue;
                rep.parity_ok = false;
                // Cycle: the edge plus a path e.target -> p within the SCC.
                std::vector<uint64_t> cyc{e.block};
                if (e.target != static_cast<int>(p)) {
                    std::vector<int> par(pstates.size(), -2);
                    std::vector<uint64_t> via(pstates.size(), 0);
                    std::deque<int> q{e.target};
                    par[e.target] = -1;
                    while (!q.empty() && par[p] == -2) {
                        int v = q.front();
                        q.pop_front();
                        for (const Edge& e2 : edges[v])
                            if (e2.maxcolor <= c && scc.comp[e2.target] == scc.comp[p] &&
                                par[e2.target] == -2) {
                                par[e2.target] = v;
                                via[e2.target] = e2.block;
                                q.push_back(e2.target);
                            }
                    }
                    std::vector<uint64_t> rev;
                    int cur = static_cast<int>(p);
                    while (par[cur] >= 0) {
                        rev.push_back(via[cur]);
                        cur = par[cur];
                    }
                    cyc.insert(cyc.end(), rev.rbegin(), rev.rend());
                }
                std::vector<uint64_t> stem;
                int entry = -1;
                stem_blocks_to(static_cast<int>(p), stem, entry);
                std::vector<PropSet> u;
                {
                    uint64_t boot = m.states[pstates[entry].first].buffered;
                    for (Letter l : decode_block(boot, d, in_letters))
                        u.push_back(in_alpha.decode(l));
                }
                auto su = blocks_to_letters(stem);
                u.insert(u.end(), su.begin(), su.end());
                rep.counterexample = LassoWord(std::move(u), blocks_to_letters(cyc));
                break;
            }
    }

    // (b) p-run analysis: the longest run of a constant coloring bit over
    // all reachable paths must stay within k/2.
    if (!has_p) {
        rep.blocks_checked = false;
        rep.blocks_ok = true;
    } else {
        rep.blocks_checked = true;
        size_t cap = k / 2;
        // DP per node and trailing bit value: longest trailing run.
        std::vector<std::array<size_t, 2>> trail(pstates.size(), {0, 0});
        std::vector<std::array<std::pair<int, uint64_t>, 2>> pred(
            pstates.size(), {std::make_pair(-2, uint64_t{0}), std::make_pair(-2, uint64_t{0})});
        std::deque<std::pair<int, int>> q;
        auto push = [&](int node, int bit) { q.push_back({node, bit}); };
        // Entry: no previous letter.
        int violated_node = -1;
        size_t peak = 0;
        for (int r : roots)
            for (const Edge& e : edges[r]) {
                const RunSummary& s = e.runs;
                peak = std::max(peak, s.interior);
                size_t t = s.tail;
                if (t > trail[e.target][s.last_bit]) {
                    trail[e.target][s.last_bit] = t;
                    pred[e.target][s.last_bit] = {-1, e.block};
                    push(e.target, s.last_bit);
                }
            }
        while (!q.empty() && violated_node < 0 && peak <= cap) {
            auto [v, bit] = q.front();
            q.pop_front();
            size_t r = trail[v][bit];
            for (const Edge& e : edges[v]) {
                const RunSummary& s = e.runs;
                size_t crossing = s.first_bit == bit ? r + s.head : s.head;
                peak = std::max({peak, crossing, s.interior});
                size_t t = s.all_const && s.first_bit == bit ? r + d : s.tail;
                peak = std::max(peak, t);
                if (peak > cap) {
                    violated_node = v;
                    break;
                }
                if (t > trail[e.target][s.last_bit]) {
                    trail[e.target][s.last_bit] = t;
                    pred[e.target][s.last_bit] = {v, e.block};
                    push(e.target, s.last_bit);
                }
            }
        }
        rep.max_p_block = peak;
        rep.blocks_ok = peak <= cap;
        if (!rep.blocks_ok && !rep.counterexample && violated_node >= 0) {
            // Any extension of the violating prefix works; loop on block 0.
            std::vector<uint64_t> stem;
            int entry = -1;
            stem_blocks_to(violated_node, stem, entry);
            std::vector<PropSet> u;
            uint64_t boot = m.states[pstates[entry].first].buffered;
            for (Letter l : decode_block(boot, d, in_letters)) u.push_back(in_alpha.decode(l));
            auto su = blocks_to_letters(stem);
            u.insert(u.end(), su.begin(), su.end());
            rep.counterexample = LassoWord(std::move(u), {PropSet{}});
        }

        // Pumping-argument restatement: after the first output block, no
        // B+1 consecutive blocks are change-free. A block is change-free if
        // its bits are constant and continue the previous block's last bit.
        std::vector<std::array<size_t, 2>> streak(pstates.size(), {0, 0});
        std::vector<std::array<char, 2>> seen(pstates.size(), {0, 0});
        std::deque<std::pair<int, int>> sq;
        size_t worst = 0;
        for (int r : roots)
            for (const Edge& e : edges[r]) {
                // Block 0 seeds the streak at zero regardless of content.
                if (!seen[e.target][e.runs.last_bit]) {
                    seen[e.target][e.runs.last_bit] = 1;
                    sq.push_back({e.target, e.runs.last_bit});
                }
            }
        bool pumping_violated = false;
        while (!sq.empty() && !pumping_violated) {
            auto [v, bit] = sq.front();
            sq.pop_front();
            size_t cur = streak[v][bit];
            for (const Edge& e : edges[v]) {
                const RunSummary& s = e.runs;
                bool changefree = s.all_const && s.first_bit == bit;
                size_t next = changefree ? cur + 1 : 0;
                worst = std::max(worst, next);
                if (next >= streak_budget) {
                    pumping_violated = true;
                    break;
                }
                if (!seen[e.target][s.last_bit] || next > streak[e.target][s.last_bit]) {
                    streak[e.target][s.last_bit] = std::max(streak[e.target][s.last_bit], next);
                    seen[e.target][s.last_bit] = 1;
                    sq.push_back({e.target, s.last_bit});
                }
            }
        }
        rep.max_changefree_streak = worst;
        rep.pumping_ok = !pumping_violated;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

Verdict decide_dpa(Dpa condition, SplitAlphabet split, bool prompt_condition,
                   const Budget& budget) {
    auto data = std::make_shared<PipelineData>();
    data->rel_dpa = std::move(condition);
    data->split = split;
    auto abs = std::make_shared<Abstraction>(TrackingAutomaton(data->rel_dpa, split, budget), budget);
    auto game = std::make_shared<AbstractionGame>(build_game(*abs, budget));
    data->abstraction = abs;
    data->game = game;
    data->solved = solve(game->game);

    Verdict v;
    v.pipeline = data;
    v.block_length = abs->block_length();
    v.tracking_states = abs->tracking().states();
    v.behaviors = abs->behavior_count();
    v.f0 = 2 * v.block_length;
    v.winner = data->solved.winner[game->game.initial];
    if (v.winner == Player::O) {
        data->mealy = extract(data->solved, *game, *abs, budget);
        v.strategy = data->mealy;
        size_t k = compute_bound(*abs, v.block_length);
        if (prompt_condition) v.k = k;
        v.report = verify(*data->mealy, data->rel_dpa, k, budget);
    }
    return v;
}

Verdict decide(const Formula& phi, const Partition& part, const Budget& budget) {
    Formula rel = relativize(phi);
    SplitAlphabet split{part.inputs, part.outputs, true};
    split.outputs.push_back(kColorProp);
    Nba nba = ltl_to_nba(rel, split.combined(), budget);
    Dpa dpa = determinize(nba, budget);
    return decide_dpa(std::move(dpa), std::move(split), !phi.is_ltl(), budget);
}

std::string write_verdict(const Verdict& v) {
    std::ostringstream out;
    out << "winner: " << (v.winner == Player::O ? "O" : "I") << "\n";
    out << "f0: " << v.f0 << "\n";
    if (v.k) out << "k: " << *v.k << "\n";
    out << "block-length: " << v.block_length << "\n";
    out << "tracking-states: " << v.tracking_states << "\n";
    out << "behaviors: " << v.behaviors << "\n";
    if (v.winner == Player::O) {
        out << "verified: " << (v.report.ok() ? "pass" : "fail") << "\n";
        out << "p-block-check: " << (v.report.blocks_checked ? "checked" : "skipped") << "\n";
        out << "max-p-block: " << v.report.max_p_block << "\n";
    }
    if (v.strategy) {
        const MealyStrategy st = strip(*v.strategy);
        size_t in_letters = st.split.input_letters();
        size_t out_letters = st.split.output_letters();
        auto fmt = [&](uint64_t code, size_t base) {
            std::vector<Letter> b = decode_block(code, st.d, base);
            std::string s;
            for (size_t i = 0; i < b.size(); ++i) {
                if (i) s += '.';
                s += std::to_string(b[i]);
            }
            return s;
        };
        out << "strategy:\n";
        out << "inputs:";
        for (const auto& a : st.split.inputs) out << " " << a;
        out << "\n";
        out << "outputs:";
        for (size_t i = 0; i + (st.split.with_color ? 1 : 0) < st.split.outputs.size(); ++i)
            out << " " << st.split.outputs[i];
        out << "\n";
        out << "strategy-block-length: " << st.d << "\n";
        out << "strategy-states: " << st.states.size() << "\n";
        for (uint64_t code = 0; code < st.init.size(); ++code)
            out << "init " << fmt(code, in_letters) << " -> " << st.init[code] << "\n";
        for (size_t s = 0; s < st.states.size(); ++s)
            for (uint64_t code = 0; code < st.step[s].size(); ++code) {
                auto [ns, emit] = st.step[s][code];
                out << "step " << s << " " << fmt(code, in_letters) << " -> " << ns << " emit "
                    << fmt(emit, out_letters) << "\n";
            }
    }
    out << "end\n";
    return out.str();
}

} // namespace pdg
