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

#include "pdg/ltl2nba.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pdg {

namespace {

// One way of discharging an obligation set on the current letter: literal
// constraints, postponed obligations, and the until-type obligations whose
// goal was chosen now.
struct Branch {
    Letter must_true = 0;
    Letter must_false = 0;
    std::set<int> next;
    std::set<int> sat;

    bool compatible(Letter a) const {
        return (a & must_true) == must_true && (a & must_false) == 0;
    }
};

class Expander {
public:
    Expander(const FormulaTable& tab, const Alphabet& sigma) : tab_(tab), sigma_(sigma) {
        bit_.resize(tab.size(), 0);
        for (size_t i = 0; i < tab.size(); ++i) {
            const auto& e = tab[i];
            if (e.op == Op::Atom || e.op == Op::NegAtom) {
                int idx = sigma.index_of(e.atom);
                if (idx < 0)
                    throw internal_error("formula atom '" + e.atom + "' outside automaton alphabet");
                bit_[i] = Letter{1} << idx;
            }
        }
        // Sound syntactic implication between subformulas, used to drop
        // redundant conjuncts from obligation sets.
        size_t n = tab.size();
        implies_.assign(n * n, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t f = 0; f < n; ++f)
                for (size_t g = 0; g < n; ++g) {
                    if (implies_[f * n + g]) continue;
                    if (derive_implies(static_cast<int>(f), static_cast<int>(g))) {
                        implies_[f * n + g] = 1;
                        changed = true;
                    }
                }
        }
    }

    bool implies(int f, int g) const { return implies_[f * tab_.size() + g] != 0; }

    // Drops obligations implied by another member of the set; mutual
    // implications keep the smaller id.
    std::set<int> reduce(const std::set<int>& s) const {
        std::set<int> out;
        for (int g : s) {
            bool drop = false;
            for (int f : s) {
                if (f == g || !implies(f, g)) continue;
                if (implies(g, f) && g < f) continue;
                drop = true;
                break;
            }
            if (!drop) out.insert(g);
        }
        return out;
    }

    // All branches discharging the obligation set S.
    std::vector<Branch> expand(const std::vector<int>& S) {
        std::vector<Branch> out;
        std::set<int> done;
        step(S, {}, done, out);
        // Dedup identical branches.
        std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) {
            return std::tie(a.must_true, a.must_false, a.next, a.sat) <
                   std::tie(b.must_true, b.must_false, b.next, b.sat);
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](const Branch& a, const Branch& b) {
                                  return a.must_true == b.must_true &&
                                         a.must_false == b.must_false && a.next == b.next &&
                                         a.sat == b.sat;
                              }),
                  out.end());
        return out;
    }

private:
    const FormulaTable& tab_;
    const Alphabet& sigma_;
    std::vector<Letter> bit_;
    std::vector<char> implies_;

    // One derivation round of f |= g from already-established facts.
    bool derive_implies(int f, int g) {
        if (f == g) return true;
        const auto& ef = tab_[f];
        const auto& eg = tab_[g];
        size_t n = tab_.size();
        auto holds = [&](int x, int y) { return x == y || implies_[x * n + y]; };
        // f = x & y: either conjunct suffices.
        if (ef.op == Op::And && (holds(ef.lhs, g) || holds(ef.rhs, g))) return true;
        // f = x | y: both branches must imply g.
        if (ef.op == Op::Or && holds(ef.lhs, g) && holds(ef.rhs, g)) return true;
        // f = G x: x holds now; also G x |= G y from x |= y.
        if (ef.op == Op::Globally && holds(ef.lhs, g)) return true;
        // f = x U y: both the goal-now and hold-now cases must imply g.
        if (ef.op == Op::Until && holds(ef.lhs, g) && holds(ef.rhs, g)) return true;
        // g = x | y: either disjunct below f suffices.
        if (eg.op == Op::Or && (holds(f, eg.lhs) || holds(f, eg.rhs))) return true;
        // g = x & y.
        if (eg.op == Op::And && holds(f, eg.lhs) && holds(f, eg.rhs)) return true;
        // g = F y: anything implying y now, F x with x |= y, or an until
        // whose goal implies y.
        if (eg.op == Op::Finally) {
            if (holds(f, eg.lhs)) return true;
            if (ef.op == Op::Finally && holds(ef.lhs, eg.lhs)) return true;
            if (ef.op == Op::Until && holds(ef.rhs, eg.lhs)) return true;
        }
        // g = x U y: the goal now.
        if (eg.op == Op::Until && holds(f, eg.rhs)) return true;
        if (eg.op == Op::Until && ef.op == Op::Until && holds(ef.lhs, eg.lhs) &&
            holds(ef.rhs, eg.rhs))
            return true;
        // g = G y from G x with x |= y.
        if (eg.op == Op::Globally && ef.op == Op::Globally && holds(ef.lhs, eg.lhs)) return true;
        // g = x R y from G y' with y' |= y (G y is x R y for any x).
        if (eg.op == Op::Release && ef.op == Op::Globally && holds(ef.lhs, eg.rhs)) return true;
        if (eg.op == Op::Release && ef.op == Op::Release && holds(ef.lhs, eg.lhs) &&
            holds(ef.rhs, eg.rhs))
            return true;
        // g = X y from f = X x with x |= y.
        if (eg.op == Op::Next && ef.op == Op::Next && holds(ef.lhs, eg.lhs)) return true;
        return false;
    }

    void step(std::vector<int> todo, Branch cur, std::set<int> done, std::vector<Branch>& out) {
        while (!todo.empty()) {
            int id = todo.back();
            todo.pop_back();
            if (done.count(id)) continue;
            done.insert(id);
            const auto& e = tab_[id];
            switch (e.op) {
                case Op::Atom:
                    cur.must_true |= bit_[id];
                    if (cur.must_true & cur.must_false) return; // contradictory
                    break;
                case Op::NegAtom:
                    cur.must_false |= bit_[id];
                    if (cur.must_true & cur.must_false) return;
                    break;
                case Op::And:
                    todo.push_back(e.lhs);
                    todo.push_back(e.rhs);
                    break;
                case Op::Or: {
                    auto left = todo;
                    left.push_back(e.lhs);
                    step(std::move(left), cur, done, out);
                    todo.push_back(e.rhs);
                    break;
                }
                case Op::Next:
                    cur.next.insert(e.lhs);
                    break;
                case Op::Until: {
                    // goal now (mark satisfied) | hold now and postpone
                    auto now = todo;
                    now.push_back(e.rhs);
                    Branch bnow = cur;
                    bnow.sat.insert(id);
                    step(std::move(now), std::move(bnow), done, out);
                    todo.push_back(e.lhs);
                    cur.next.insert(id);
                    break;
                }
                case Op::Finally: {
                    auto now = todo;
                    now.push_back(e.lhs);
                    Branch bnow = cur;
                    bnow.sat.insert(id);
                    step(std::move(now), std::move(bnow), done, out);
                    cur.next.insert(id);
                    break;
                }
                case Op::Release: {
                    // both now | keep now and postpone
                    auto both = todo;
                    both.push_back(e.lhs);
                    both.push_back(e.rhs);
                    step(std::move(both), cur, done, out);
                    todo.push_back(e.rhs);
                    cur.next.insert(id);
                    break;
                }
                case Op::Globally:
                    todo.push_back(e.lhs);
                    cur.next.insert(id);
                    break;
                case Op::PromptFinally:
                    throw internal_error("prompt operator reached the LTL translation");
            }
        }
        out.push_back(std::move(cur));
    }
};

} // namespace

Nba ltl_to_nba(const Formula& phi, const Alphabet& alphabet, const Budget& budget) {
    if (!phi.is_ltl())
        throw parse_error("formula contains the prompt operator; relativize or expand it first", 0);
    FormulaTable tab(phi);
    Expander exp(tab, alphabet);

    // Until-type subformulas that need their goal to be met eventually.
    std::vector<int> untils;
    for (size_t i = 0; i < tab.size(); ++i)
        if (tab[i].op == Op::Until || tab[i].op == Op::Finally)
            untils.push_back(static_cast<int>(i));
    size_t u = untils.size();

    // NBA state: (obligation set, counter in [0, u]); accepting iff counter == u.
    using Key = std::pair<std::vector<int>, size_t>;
    std::map<Key, int> ids;
    std::vector<Key> states;
    auto intern = [&](Key k) {
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(states.size());
        budget.check("ltl_to_nba", states.size() + 1);
        ids.emplace(k, id);
        states.push_back(std::move(k));
        return id;
    };

    size_t L = alphabet.letter_count();
    Key init{{tab.root()}, u == 0 ? u : 0};
    // Start the counter at u when there are no untils so every state accepts.
    intern(init);

    std::vector<std::vector<std::vector<int>>> succ;
    std::map<std::vector<int>, std::vector<Branch>> branch_cache;
    for (size_t qi = 0; qi < states.size(); ++qi) {
        Key state = states[qi];
        auto bit = branch_cache.find(state.first);
        if (bit == branch_cache.end())
            bit = branch_cache.emplace(state.first, exp.expand(state.first)).first;
        const auto& branches = bit->second;

        if (succ.size() <= qi) succ.resize(qi + 1);
        succ[qi].assign(L, {});
        size_t cstart = state.second == u && u > 0 ? 0 : state.second;
        for (const auto& br : branches) {
            // Advance the degeneralization counter over fulfilled untils
            // (on the unreduced obligations: a postponed until counts as
            // unfulfilled even if a stronger obligation subsumes it).
            size_t c = cstart;
            while (c < u) {
                int theta = untils[c];
                bool fulfilled = br.sat.count(theta) || !br.next.count(theta);
                if (!fulfilled) break;
                ++c;
            }
            std::set<int> reduced = exp.reduce(br.next);
            std::vector<int> nset(reduced.begin(), reduced.end());
            int target = intern(Key{std::move(nset), c});
            for (Letter a = 0; a < L; ++a)
                if (br.compatible(a)) succ[qi][a].push_back(target);
        }
    }

    Nba A;
    A.alphabet = alphabet;
    A.states = states.size();
    A.initial = 0;
    A.accepting.resize(A.states, 0);
    for (size_t i = 0; i < states.size(); ++i) A.accepting[i] = states[i].second == u;
    A.succ = std::move(succ);
    if (A.succ.size() < A.states) A.succ.resize(A.states, std::vector<std::vector<int>>(L));
    for (auto& row : A.succ) {
        if (row.size() != L) row.assign(L, {});
        for (auto& ts : row) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        }
    }
    A.validate();
    return reduce_nba(A);
}

} // namespace pdg
