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

#include "pdg/automata.hpp"

#include "pdg/scc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace pdg {

Alphabet::Alphabet(std::vector<std::string> names) : aps(std::move(names)) {
    if (aps.size() > 20) throw internal_error("alphabet too wide for explicit letters");
    std::set<std::string> seen(aps.begin(), aps.end());
    if (seen.size() != aps.size()) throw internal_error("duplicate proposition in alphabet");
}

int Alphabet::index_of(const std::string& name) const {
    for (size_t i = 0; i < aps.size(); ++i)
        if (aps[i] == name) return static_cast<int>(i);
    return -1;
}

Letter Alphabet::encode(const PropSet& letter) const {
    Letter l = 0;
    for (const auto& name : letter) {
        int i = index_of(name);
        if (i < 0) throw internal_error("proposition '" + name + "' outside alphabet");
        l |= Letter{1} << i;
    }
    return l;
}

PropSet Alphabet::decode(Letter l) const {
    PropSet out;
    for (size_t i = 0; i < aps.size(); ++i)
        if ((l >> i) & 1) out.insert(aps[i]);
    return out;
}

void Nba::validate() const {
    if (initial < 0 || static_cast<size_t>(initial) >= states)
        throw internal_error("nba initial state out of range");
    if (accepting.size() != states || succ.size() != states)
        throw internal_error("nba table sizes inconsistent");
    for (const auto& row : succ) {
        if (row.size() != alphabet.letter_count())
            throw internal_error("nba transition row incomplete");
        for (const auto& ts : row)
            for (int t : ts)
                if (t < 0 || static_cast<size_t>(t) >= states)
                    throw internal_error("nba transition target out of range");
    }
}

void Dpa::validate() const {
    if (initial < 0 || static_cast<size_t>(initial) >= states)
        throw internal_error("dpa initial state out of range");
    if (color.size() != states || delta.size() != states)
        throw internal_error("dpa table sizes inconsistent");
    for (const auto& row : delta) {
        if (row.size() != alphabet.letter_count())
            throw internal_error("dpa transition function not total");
        for (int t : row)
            if (t < 0 || static_cast<size_t>(t) >= states)
                throw internal_error("dpa transition target out of range");
    }
    for (int c : color)
        if (c < 0) throw internal_error("dpa colors must be non-negative");
}

int Dpa::max_color() const {
    int m = 0;
    for (int c : color) m = std::max(m, c);
    return m;
}

void Dfa::validate() const {
    if (initial < 0 || static_cast<size_t>(initial) >= states)
        throw internal_error("dfa initial state out of range");
    if (accepting.size() != states || delta.size() != states)
        throw internal_error("dfa table sizes inconsistent");
    for (const auto& row : delta)
        if (row.size() != alphabet.letter_count())
            throw internal_error("dfa transition function not total");
}

// ---------------------------------------------------------------------------
// Lasso acceptance
// ---------------------------------------------------------------------------

bool nba_accepts(const Nba& A, const LassoWord& w) {
    size_t N = w.span();
    size_t u = w.prefix_len();
    std::vector<Letter> letters(N);
    for (size_t p = 0; p < N; ++p) letters[p] = A.alphabet.encode(w.at(p));
    auto next_pos = [&](size_t p) { return p + 1 < N ? p + 1 : u; };

    // Product nodes (q, p) reachable from (initial, 0).
    auto id = [&](int q, size_t p) { return static_cast<size_t>(q) * N + p; };
    std::vector<char> reach(A.states * N, 0);
    std::deque<std::pair<int, size_t>> queue;
    reach[id(A.initial, 0)] = 1;
    queue.push_back({A.initial, 0});
    while (!queue.empty()) {
        auto [q, p] = queue.front();
        queue.pop_front();
        for (int t : A.succ[q][letters[p]]) {
            size_t np = next_pos(p);
            if (!reach[id(t, np)]) {
                reach[id(t, np)] = 1;
                queue.push_back({t, np});
            }
        }
    }

    // An accepting lasso exists iff some reachable product node with an
    // accepting state lies on a cycle (necessarily in the loop part).
    std::vector<std::vector<int>> adj(A.states * N);
    for (int q = 0; q < static_cast<int>(A.states); ++q)
        for (size_t p = 0; p < N; ++p) {
            if (!reach[id(q, p)]) continue;
            size_t np = next_pos(p);
            for (int t : A.succ[q][letters[p]])
                if (reach[id(t, np)]) adj[id(q, p)].push_back(static_cast<int>(id(t, np)));
        }
    SccResult scc = tarjan_scc(adj);
    std::vector<char> cyc = cycle_vertices(adj, scc);
    for (int q = 0; q < static_cast<int>(A.states); ++q) {
        if (!A.accepting[q]) continue;
        for (size_t p = u; p < N; ++p)
            if (reach[id(q, p)] && cyc[id(q, p)]) return true;
    }
    return false;
}

bool dpa_accepts(const Dpa& D, const LassoWord& w) {
    size_t N = w.span();
    size_t u = w.prefix_len();
    std::vector<Letter> letters(N);
    for (size_t p = 0; p < N; ++p) letters[p] = D.alphabet.encode(w.at(p));

    // Deterministic run until a (state, position) pair in the loop repeats.
    std::map<std::pair<int, size_t>, size_t> seen_at;
    std::vector<int> colors;
    int q = D.initial;
    size_t p = 0;
    size_t step = 0;
    while (true) {
        if (p >= u) {
            auto key = std::make_pair(q, p);
            auto it = seen_at.find(key);
            if (it != seen_at.end()) {
                int m = 0;
                for (size_t j = it->second; j < step; ++j) m = std::max(m, colors[j]);
                return m % 2 == 0;
            }
            seen_at.emplace(key, step);
        }
        q = D.step(q, letters[p]);
        colors.push_back(D.color[q]);
        p = p + 1 < N ? p + 1 : u;
        ++step;
    }
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

Nba trim_reachable(const Nba& A) {
    std::vector<int> remap(A.states, -1);
    std::vector<int> order;
    std::deque<int> queue{A.initial};
    remap[A.initial] = 0;
    order.push_back(A.initial);
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (const auto& ts : A.succ[q])
            for (int t : ts)
                if (remap[t] < 0) {
                    remap[t] = static_cast<int>(order.size());
                    order.push_back(t);
                    queue.push_back(t);
                }
    }
    Nba out;
    out.alphabet = A.alphabet;
    out.states = order.size();
    out.initial = 0;
    out.accepting.resize(out.states);
    out.succ.assign(out.states, {});
    for (size_t i = 0; i < order.size(); ++i) {
        int q = order[i];
        out.accepting[i] = A.accepting[q];
        out.succ[i].resize(A.alphabet.letter_count());
        for (size_t l = 0; l < A.alphabet.letter_count(); ++l) {
            for (int t : A.succ[q][l]) out.succ[i][l].push_back(remap[t]);
            std::sort(out.succ[i][l].begin(), out.succ[i][l].end());
            out.succ[i][l].erase(std::unique(out.succ[i][l].begin(), out.succ[i][l].end()),
                                 out.succ[i][l].end());
        }
    }
    return out;
}

namespace {

// States that can reach an accepting cycle (live states).
std::vector<char> live_states(const Nba& A) {
    size_t L = A.alphabet.letter_count();
    std::vector<std::vector<int>> adj(A.states);
    for (size_t q = 0; q < A.states; ++q) {
        std::set<int> ts;
        for (size_t l = 0; l < L; ++l) ts.insert(A.succ[q][l].begin(), A.succ[q][l].end());
        adj[q].assign(ts.begin(), ts.end());
    }
    SccResult scc = tarjan_scc(adj);
    std::vector<char> cyc = cycle_vertices(adj, scc);
    // Backward closure: states that reach an accepting state on a cycle.
    std::vector<std::vector<int>> radj(A.states);
    for (size_t q = 0; q < A.states; ++q)
        for (int t : adj[q]) radj[t].push_back(static_cast<int>(q));
    std::vector<char> live(A.states, 0);
    std::deque<int> queue;
    for (size_t q = 0; q < A.states; ++q)
        if (A.accepting[q] && cyc[q]) {
            live[q] = 1;
            queue.push_back(static_cast<int>(q));
        }
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (int s : radj[q])
            if (!live[s]) {
                live[s] = 1;
                queue.push_back(s);
            }
    }
    return live;
}

} // namespace

Nba reduce_nba(const Nba& A0) {
    Nba A = trim_reachable(A0);
    if (A.states == 0) return A;
    std::vector<char> live = live_states(A);
    size_t L = A.alphabet.letter_count();

    // Drop transitions into dead states (runs there can never accept).
    for (size_t q = 0; q < A.states; ++q)
        for (size_t l = 0; l < L; ++l) {
            auto& ts = A.succ[q][l];
            ts.erase(std::remove_if(ts.begin(), ts.end(), [&](int t) { return !live[t]; }),
                     ts.end());
        }

    // Forward bisimulation quotient: refine classes on (accepting,
    // per-letter successor class sets).
    std::vector<int> cls(A.states);
    for (size_t q = 0; q < A.states; ++q) cls[q] = A.accepting[q] ? 1 : 0;
    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> ncls(A.states);
        for (size_t q = 0; q < A.states; ++q) {
            std::vector<int> sig{cls[q]};
            for (size_t l = 0; l < L; ++l) {
                std::set<int> cs;
                for (int t : A.succ[q][l]) cs.insert(cls[t]);
                sig.push_back(-1);
                sig.insert(sig.end(), cs.begin(), cs.end());
            }
            auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
            ncls[q] = it->second;
        }
        if (ncls == cls) break;
        cls = ncls;
    }
    int nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
    Nba out;
    out.alphabet = A.alphabet;
    out.states = nclasses;
    out.initial = cls[A.initial];
    out.accepting.assign(nclasses, 0);
    out.succ.assign(nclasses, std::vector<std::vector<int>>(L));
    for (size_t q = 0; q < A.states; ++q) {
        out.accepting[cls[q]] = A.accepting[q];
        for (size_t l = 0; l < L; ++l)
            for (int t : A.succ[q][l]) out.succ[cls[q]][l].push_back(cls[t]);
    }
    for (auto& row : out.succ)
        for (auto& ts : row) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        }
    return trim_reachable(out);
}

Dpa quotient_dpa(const Dpa& D) {
    size_t L = D.alphabet.letter_count();
    std::vector<int> cls(D.states);
    std::map<int, int> color_cls;
    for (size_t q = 0; q < D.states; ++q) {
        auto [it, fresh] = color_cls.emplace(D.color[q], static_cast<int>(color_cls.size()));
        cls[q] = it->second;
    }
    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> ncls(D.states);
        for (size_t q = 0; q < D.states; ++q) {
            std::vector<int> sig{cls[q]};
            for (size_t l = 0; l < L; ++l) sig.push_back(cls[D.delta[q][l]]);
            auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
            ncls[q] = it->second;
        }
        if (ncls == cls) break;
        cls = ncls;
    }
    int nclasses = 0;
    for (size_t q = 0; q < D.states; ++q) nclasses = std::max(nclasses, cls[q] + 1);
    Dpa out;
    out.alphabet = D.alphabet;
    out.states = nclasses;
    out.initial = cls[D.initial];
    out.color.assign(nclasses, 0);
    out.delta.assign(nclasses, std::vector<int>(L, 0));
    for (size_t q = 0; q < D.states; ++q) {
        out.color[cls[q]] = D.color[q];
        for (size_t l = 0; l < L; ++l) out.delta[cls[q]][l] = cls[D.delta[q][l]];
    }
    // Trim to reachable classes.
    std::vector<int> remap(out.states, -1);
    std::vector<int> order;
    std::deque<int> queue{out.initial};
    remap[out.initial] = 0;
    order.push_back(out.initial);
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (size_t l = 0; l < L; ++l) {
            int t = out.delta[q][l];
            if (remap[t] < 0) {
                remap[t] = static_cast<int>(order.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }
    Dpa res;
    res.alphabet = out.alphabet;
    res.states = order.size();
    res.initial = 0;
    res.color.resize(res.states);
    res.delta.assign(res.states, std::vector<int>(L, 0));
    for (size_t i = 0; i < order.size(); ++i) {
        res.color[i] = out.color[order[i]];
        for (size_t l = 0; l < L; ++l) res.delta[i][l] = remap[out.delta[order[i]][l]];
    }
    return res;
}

Dpa compress_colors(const Dpa& D) {
    std::set<int> used(D.color.begin(), D.color.end());
    std::map<int, int> dense;
    int prev = -2;
    for (int c : used) {
        int d;
        if (dense.empty())
            d = c % 2;
        else
            d = prev + ((c % 2) == (prev % 2) ? 2 : 1);
        dense[c] = d;
        prev = d;
    }
    Dpa out = D;
    for (auto& c : out.color) c = dense[c];
    return out;
}

namespace {

// Recursive peeling for priority reduction: within one strongly connected
// subgraph, states carrying the maximal original color get the top new
// color; everything below is recolored recursively.
void peel(const std::vector<std::vector<int>>& adj, const std::vector<int>& omega,
          std::vector<int>& kappa, std::vector<int> members) {
    if (members.empty()) return;
    // Decompose the induced subgraph into SCCs.
    std::vector<int> local(adj.size(), -1);
    for (size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> sub(members.size());
    for (size_t i = 0; i < members.size(); ++i)
        for (int t : adj[members[i]])
            if (local[t] >= 0) sub[i].push_back(local[t]);
    SccResult scc = tarjan_scc(sub);
    std::vector<char> cyc = cycle_vertices(sub, scc);
    std::vector<std::vector<int>> comps(scc.count);
    for (size_t i = 0; i < members.size(); ++i) comps[scc.comp[i]].push_back(members[i]);

    for (auto& comp : comps) {
        bool cyclic = false;
        for (int v : comp)
            if (cyc[local[v]]) cyclic = true;
        if (!cyclic) {
            for (int v : comp) kappa[v] = 0; // never on a cycle
            continue;
        }
        int m = 0;
        for (int v : comp) m = std::max(m, omega[v]);
        std::vector<int> top, rest;
        for (int v : comp)
            (omega[v] == m ? top : rest).push_back(v);
        peel(adj, omega, kappa, rest);
        int below = -1;
        for (int v : rest) below = std::max(below, kappa[v]);
        int parity = m % 2;
        int k;
        if (below < 0)
            k = parity;
        else if (below % 2 == parity)
            k = below;
        else
            k = below + 1;
        for (int v : top) kappa[v] = k;
    }
}

} // namespace

Dpa reduce_priorities(const Dpa& D) {
    size_t L = D.alphabet.letter_count();
    std::vector<std::vector<int>> adj(D.states);
    for (size_t q = 0; q < D.states; ++q) {
        std::set<int> ts(D.delta[q].begin(), D.delta[q].end());
        adj[q].assign(ts.begin(), ts.end());
    }
    (void)L;
    std::vector<int> members(D.states);
    for (size_t q = 0; q < D.states; ++q) members[q] = static_cast<int>(q);
    std::vector<int> kappa(D.states, 0);
    peel(adj, D.color, kappa, members);
    Dpa out = D;
    out.color = kappa;
    return out;
}

Dpa simplify_dpa(const Dpa& D0) {
    Dpa cur = reduce_priorities(D0);
    while (true) {
        Dpa next = reduce_priorities(quotient_dpa(cur));
        if (next.states == cur.states && next.color == cur.color && next.delta == cur.delta) break;
        cur = std::move(next);
    }
    return compress_colors(cur);
}

namespace {

// Does some lasso from (s1, s2) get accepted by exactly one side? Decided by
// searching for a reachable product cycle whose maximal colors have opposite
// parity.
bool distinguishable(const Dpa& a, const Dpa& b, int s1, int s2) {
    size_t L = a.alphabet.letter_count();
    size_t nb = b.states;
    auto id = [&](int x, int y) { return static_cast<size_t>(x) * nb + y; };
    // Reachable product nodes.
    std::vector<char> reach(a.states * nb, 0);
    std::vector<std::pair<int, int>> order{{s1, s2}};
    reach[id(s1, s2)] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        auto [x, y] = order[i];
        for (Letter l = 0; l < L; ++l) {
            int nx = a.delta[x][l], ny = b.delta[y][l];
            if (!reach[id(nx, ny)]) {
                reach[id(nx, ny)] = 1;
                order.push_back({nx, ny});
            }
        }
    }
    std::set<int> colors_a, colors_b;
    for (auto [x, y] : order) {
        colors_a.insert(a.color[x]);
        colors_b.insert(b.color[y]);
    }
    // For every color pair of opposite parity: a single cycle realizes both
    // maxima iff some SCC of the (<= c1, <= c2)-restricted product contains
    // both colors and a cycle.
    for (int c1 : colors_a)
        for (int c2 : colors_b) {
            if (c1 % 2 == c2 % 2) continue;
            std::vector<int> nodes;
            std::vector<int> local(a.states * nb, -1);
            for (auto [x, y] : order)
                if (a.color[x] <= c1 && b.color[y] <= c2) {
                    local[id(x, y)] = static_cast<int>(nodes.size());
                    nodes.push_back(static_cast<int>(id(x, y)));
                }
            std::vector<std::vector<int>> adj(nodes.size());
            for (size_t i = 0; i < nodes.size(); ++i) {
                int x = nodes[i] / static_cast<int>(nb), y = nodes[i] % static_cast<int>(nb);
                for (Letter l = 0; l < L; ++l) {
                    int nx = a.delta[x][l], ny = b.delta[y][l];
                    if (local[id(nx, ny)] >= 0) adj[i].push_back(local[id(nx, ny)]);
                }
            }
            SccResult scc = tarjan_scc(adj);
            std::vector<char> cyc = cycle_vertices(adj, scc);
            std::vector<char> has1(scc.count, 0), has2(scc.count, 0), cyclic(scc.count, 0);
            for (size_t i = 0; i < nodes.size(); ++i) {
                int x = nodes[i] / static_cast<int>(nb), y = nodes[i] % static_cast<int>(nb);
                if (a.color[x] == c1) has1[scc.comp[i]] = 1;
                if (b.color[y] == c2) has2[scc.comp[i]] = 1;
                if (cyc[i]) cyclic[scc.comp[i]] = 1;
            }
            for (int c = 0; c < scc.count; ++c)
                if (cyclic[c] && has1[c] && has2[c]) return true;
        }
    return false;
}

} // namespace

bool equivalent_dpa(const Dpa& a, const Dpa& b) {
    if (!(a.alphabet == b.alphabet)) return false;
    return !distinguishable(a, b, a.initial, b.initial);
}

bool equivalent_states(const Dpa& D, int q1, int q2) { return !distinguishable(D, D, q1, q2); }

namespace {

Dpa merge_classes(const Dpa& D, const std::vector<int>& cls) {
    // Representative = least state index of the class; trim afterwards.
    std::vector<int> rep(D.states, -1);
    for (size_t q = 0; q < D.states; ++q)
        if (rep[cls[q]] < 0) rep[cls[q]] = static_cast<int>(q);
    size_t L = D.alphabet.letter_count();
    Dpa out;
    out.alphabet = D.alphabet;
    out.states = D.states;
    out.initial = rep[cls[D.initial]];
    out.color = D.color;
    out.delta.assign(D.states, std::vector<int>(L, 0));
    for (size_t q = 0; q < D.states; ++q)
        for (Letter l = 0; l < L; ++l) out.delta[q][l] = rep[cls[D.delta[q][l]]];
    return quotient_dpa(out); // drops the now-unreachable states
}

} // namespace

Dpa minimize_dpa(const Dpa& D0) {
    // Residual-class quotients are unsound for parity automata in general
    // (colors carry memory), so merge one language-equivalent pair at a time
    // and keep a merge only when the exact equivalence check passes. Both
    // surviving colors are tried; the merged state inherits the one that
    // verifies.
    Dpa cur = simplify_dpa(D0);
    bool progress = true;
    while (progress) {
        progress = false;
        size_t n = cur.states;
        for (size_t q = 0; q < n && !progress; ++q)
            for (size_t r = q + 1; r < n && !progress; ++r) {
                if (!equivalent_states(cur, static_cast<int>(q), static_cast<int>(r))) continue;
                std::vector<int> cl2(n);
                for (size_t x = 0; x < n; ++x) cl2[x] = static_cast<int>(x >= r ? x - 1 : x);
                cl2[r] = static_cast<int>(q);
                for (int keep : {cur.color[q], cur.color[r]}) {
                    Dpa base = cur;
                    base.color[q] = keep;
                    Dpa attempt = simplify_dpa(merge_classes(base, cl2));
                    if (attempt.states < cur.states && equivalent_dpa(attempt, cur)) {
                        cur = std::move(attempt);
                        progress = true;
                        break;
                    }
                }
            }
    }
    return cur;
}

Alphabet SplitAlphabet::combined() const {
    std::vector<std::string> aps = inputs;
    aps.insert(aps.end(), outputs.begin(), outputs.end());
    return Alphabet(std::move(aps));
}

} // namespace pdg
