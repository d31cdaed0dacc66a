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

#include "pdg/arena.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "pdg/scc.hpp"

namespace pdg {

void ParityGame::validate() const {
    if (owner.size() != priority.size() || owner.size() != edges.size())
        throw internal_error("parity game table sizes inconsistent");
    if (owner.empty()) throw internal_error("parity game has no vertices");
    if (initial < 0 || static_cast<size_t>(initial) >= owner.size())
        throw internal_error("parity game initial vertex out of range");
    for (const auto& out : edges) {
        if (out.empty()) throw internal_error("parity game has a terminal vertex");
        for (int t : out)
            if (t < 0 || static_cast<size_t>(t) >= owner.size())
                throw internal_error("parity game edge target out of range");
    }
    for (int p : priority)
        if (p < 0) throw internal_error("parity game priorities must be non-negative");
}

namespace {

// In-place Zielonka over a vertex mask. Strategies are written for vertices
// inside each player's winning region.
class Zielonka {
public:
    explicit Zielonka(const ParityGame& g)
        : winner_(g.size(), Player::I), strat_(g.size(), -1), g_(g) {
        // Reverse edges once.
        redges_.resize(g.size());
        for (size_t v = 0; v < g.size(); ++v)
            for (int t : g.edges[v]) redges_[t].push_back(static_cast<int>(v));
    }

    void run() {
        std::vector<char> alive(g_.size(), 1);
        solve(alive);
    }

    std::vector<Player> winner_;
    std::vector<int> strat_;

private:
    const ParityGame& g_;
    std::vector<std::vector<int>> redges_;

    // Attractor of `target` for player p within `alive`; removes nothing.
    // Writes the attractor strategy for p-owned vertices newly attracted.
    std::vector<char> attractor(const std::vector<char>& alive, std::vector<int> queue,
                                Player p, std::vector<int>& strat) {
        std::vector<char> in(g_.size(), 0);
        std::vector<int> degree(g_.size(), 0);
        for (size_t v = 0; v < g_.size(); ++v) {
            if (!alive[v]) continue;
            for (int t : g_.edges[v])
                if (alive[t]) degree[v]++;
        }
        for (int v : queue) in[v] = 1;
        std::deque<int> work(queue.begin(), queue.end());
        while (!work.empty()) {
            int v = work.front();
            work.pop_front();
            for (int u : redges_[v]) {
                if (!alive[u] || in[u]) continue;
                if (g_.owner[u] == p) {
                    in[u] = 1;
                    if (strat[u] < 0) strat[u] = v;
                    work.push_back(u);
                } else {
                    if (--degree[u] == 0) {
                        in[u] = 1;
                        work.push_back(u);
                    }
                }
            }
        }
        return in;
    }

    void solve(std::vector<char>& alive) {
        int top = -1;
        for (size_t v = 0; v < g_.size(); ++v)
            if (alive[v]) top = std::max(top, g_.priority[v]);
        if (top < 0) return; // empty subgame
        Player p = top % 2 == 0 ? Player::O : Player::I;

        std::vector<int> targets;
        for (size_t v = 0; v < g_.size(); ++v)
            if (alive[v] && g_.priority[v] == top) targets.push_back(static_cast<int>(v));

        std::vector<int> attr_strat(g_.size(), -1);
        std::vector<char> A = attractor(alive, targets, p, attr_strat);

        std::vector<char> rest = alive;
        for (size_t v = 0; v < g_.size(); ++v)
            if (A[v]) rest[v] = 0;
        solve(rest);

        bool opp_empty = true;
        for (size_t v = 0; v < g_.size(); ++v)
            if (alive[v] && !A[v] && winner_[v] == opponent(p)) opp_empty = false;

        if (opp_empty) {
            // p wins everywhere in `alive`. Inside A, follow the attractor
            // strategy; attractor seeds take any edge within the subgame.
            // Vertices outside A keep the recursive strategy.
            for (size_t v = 0; v < g_.size(); ++v) {
                if (!alive[v]) continue;
                winner_[v] = p;
                if (g_.owner[v] != p || !A[v]) continue;
                if (attr_strat[v] >= 0) {
                    strat_[v] = attr_strat[v];
                } else {
                    for (int t : g_.edges[v])
                        if (alive[t]) {
                            strat_[v] = t;
                            break;
                        }
                }
            }
            return;
        }

        // Opponent wins part of the subgame; their region extends by their
        // attractor to it.
        std::vector<int> opp_targets;
        for (size_t v = 0; v < g_.size(); ++v)
            if (alive[v] && !A[v] && winner_[v] == opponent(p)) opp_targets.push_back(static_cast<int>(v));
        std::vector<int> opp_strat(g_.size(), -1);
        std::vector<char> B = attractor(alive, opp_targets, opponent(p), opp_strat);
        for (size_t v = 0; v < g_.size(); ++v) {
            if (!alive[v] || !B[v]) continue;
            winner_[v] = opponent(p);
            if (g_.owner[v] == opponent(p) && opp_strat[v] >= 0 && strat_[v] < 0)
                strat_[v] = opp_strat[v];
        }
        // Keep strategies of the opponent's region from the first recursion;
        // reset and re-solve everything else.
        std::vector<char> remaining = alive;
        for (size_t v = 0; v < g_.size(); ++v) {
            if (B[v]) remaining[v] = 0;
            if (remaining[v] && alive[v]) strat_[v] = -1;
        }
        solve(remaining);
    }
};

} // namespace

SolveResult solve(const ParityGame& g0) {
    g0.validate();
    // Dense priority compression keeps the recursion shallow.
    ParityGame g = g0;
    {
        std::set<int> used(g.priority.begin(), g.priority.end());
        std::map<int, int> dense;
        int prev = -2;
        for (int c : used) {
            int d = dense.empty() ? c % 2 : prev + ((c % 2 == prev % 2) ? 2 : 1);
            dense[c] = d;
            prev = d;
        }
        for (auto& p : g.priority) p = dense[p];
    }
    Zielonka z(g);
    z.run();
    SolveResult res;
    res.winner = z.winner_;
    res.strategy_i.player = Player::I;
    res.strategy_o.player = Player::O;
    res.strategy_i.choice.assign(g.size(), -1);
    res.strategy_o.choice.assign(g.size(), -1);
    for (size_t v = 0; v < g.size(); ++v) {
        if (z.strat_[v] < 0) continue;
        if (g.owner[v] == Player::I && res.winner[v] == Player::I)
            res.strategy_i.choice[v] = z.strat_[v];
        if (g.owner[v] == Player::O && res.winner[v] == Player::O)
            res.strategy_o.choice[v] = z.strat_[v];
    }
    // Every owned vertex in the owner's region needs a choice; fill any gaps
    // with an arbitrary edge into the region (can only happen for top-level
    // target vertices).
    for (size_t v = 0; v < g.size(); ++v) {
        Player p = g.owner[v];
        auto& st = p == Player::I ? res.strategy_i.choice : res.strategy_o.choice;
        if (res.winner[v] != p || st[v] >= 0) continue;
        for (int t : g.edges[v])
            if (res.winner[t] == p) {
                st[v] = t;
                break;
            }
    }
    return res;
}

bool strategy_wins_from(const ParityGame& g, const SolveResult& res, Player p, int from) {
    if (res.winner[from] != p) return false;
    const auto& choice = res.strategy(p).choice;
    // Strategy-restricted reachable subgraph.
    std::vector<char> seen(g.size(), 0);
    std::deque<int> queue{from};
    seen[from] = 1;
    std::vector<int> order;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        if (res.winner[v] != p) return false; // strategy left its region
        std::vector<int> outs;
        if (g.owner[v] == p) {
            if (choice[v] < 0) return false;
            outs.push_back(choice[v]);
        } else {
            outs = g.edges[v];
        }
        for (int t : outs)
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
    }
    // Cycle analysis: every cycle's maximal priority has p's parity.
    std::vector<int> local(g.size(), -1);
    for (size_t i = 0; i < order.size(); ++i) local[order[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        if (g.owner[v] == p)
            adj[i].push_back(local[choice[v]]);
        else
            for (int t : g.edges[v]) adj[i].push_back(local[t]);
    }
    int want = p == Player::O ? 0 : 1;
    // For every priority c of the wrong parity: no cycle within {<= c} may
    // contain a vertex of priority exactly c.
    std::set<int> prios;
    for (int v : order) prios.insert(g.priority[v]);
    for (int c : prios) {
        if (c % 2 == want) continue;
        std::vector<int> sub;
        std::vector<int> loc2(order.size(), -1);
        for (size_t i = 0; i < order.size(); ++i)
            if (g.priority[order[i]] <= c) {
                loc2[i] = static_cast<int>(sub.size());
                sub.push_back(static_cast<int>(i));
            }
        std::vector<std::vector<int>> sadj(sub.size());
        for (size_t j = 0; j < sub.size(); ++j)
            for (int t : adj[sub[j]])
                if (loc2[t] >= 0) sadj[j].push_back(loc2[t]);
        SccResult scc = tarjan_scc(sadj);
        std::vector<char> cyc = cycle_vertices(sadj, scc);
        std::vector<char> has_c(scc.count, 0), cyclic(scc.count, 0);
        for (size_t j = 0; j < sub.size(); ++j) {
            if (g.priority[order[sub[j]]] == c) has_c[scc.comp[j]] = 1;
            if (cyc[j]) cyclic[scc.comp[j]] = 1;
        }
        for (int comp = 0; comp < scc.count; ++comp)
            if (has_c[comp] && cyclic[comp]) return false;
    }
    return true;
}

AbstractionGame build_game(const Abstraction& abs, const Budget& budget) {
    AbstractionGame out;
    ParityGame& g = out.game;

    auto add_vertex = [&](Player p, int prio, AbstractionGame::Label label) {
        budget.check("build_game", g.size() + 1);
        g.owner.push_back(p);
        g.priority.push_back(prio);
        g.edges.emplace_back();
        out.labels.push_back(label);
        return static_cast<int>(g.size()) - 1;
    };

    int v_init = add_vertex(Player::I, 0, {AbstractionGame::Label::Initial, -1, -1});
    g.initial = v_init;

    // Behavior vertices (Player O).
    out.behavior_vertex.assign(abs.behavior_count(), -1);
    for (size_t b = 0; b < abs.behavior_count(); ++b)
        out.behavior_vertex[b] =
            add_vertex(Player::O, 0, {AbstractionGame::Label::BehaviorV, static_cast<int>(b), -1});

    // Pair vertices (Player I) with priority = tracked maximal color.
    for (size_t b = 0; b < abs.behavior_count(); ++b) {
        const auto& ref = abs.behavior_ref(b);
        const auto& dom = abs.set_of(abs.domain_set_id(ref.domain_idx));
        for (int q : dom) {
            int v = add_vertex(Player::I, abs.tracking().color(q),
                               {AbstractionGame::Label::PairV, static_cast<int>(b), q});
            out.pair_vertex[{static_cast<int>(b), q}] = v;
            g.edges[out.behavior_vertex[b]].push_back(v);
        }
    }

    // Initial moves: behaviors over the seed domain {q_I^T}.
    for (size_t b = 0; b < abs.behavior_count(); ++b)
        if (abs.behavior_ref(b).domain_idx == 0)
            g.edges[v_init].push_back(out.behavior_vertex[b]);

    // Regular moves: (r, q) -> r' with dom(r') = r(q).
    for (auto& [key, v] : out.pair_vertex) {
        auto [b, q] = key;
        const auto& ref = abs.behavior_ref(b);
        const auto& dfa = abs.dfa(ref.domain_idx);
        const auto& dom = abs.set_of(abs.domain_set_id(ref.domain_idx));
        // Position of q within the domain.
        size_t pos = std::lower_bound(dom.begin(), dom.end(), q) - dom.begin();
        int img_set = dfa.tuple[ref.dfa_state][dfa.elem_key[pos]];
        int dom_idx = abs.domain_index(img_set);
        if (dom_idx < 0) throw internal_error("behavior image is not a registered domain");
        for (size_t b2 = 0; b2 < abs.behavior_count(); ++b2)
            if (abs.behavior_ref(b2).domain_idx == dom_idx)
                g.edges[v].push_back(out.behavior_vertex[b2]);
        if (g.edges[v].empty())
            throw internal_error("domain without infinite-witness behavior");
    }
    if (g.edges[v_init].empty()) throw internal_error("seed domain has no behaviors");
    g.validate();
    return out;
}

std::string format_game(const ParityGame& g) {
    std::ostringstream out;
    out << "vertices: " << g.size() << "\n";
    out << "initial: " << g.initial << "\n";
    for (size_t v = 0; v < g.size(); ++v) {
        out << "vertex " << v << " owner=" << (g.owner[v] == Player::I ? "I" : "O")
            << " priority=" << g.priority[v] << " ->";
        for (int t : g.edges[v]) out << " " << t;
        out << "\n";
    }
    return out.str();
}

} // namespace pdg
