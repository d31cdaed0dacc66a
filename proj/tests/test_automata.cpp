#include "doctest.h"

#include "gen.hpp"
#include "pdg/autoio.hpp"
#include "pdg/automata.hpp"
#include "pdg/determinize.hpp"
#include "pdg/logic.hpp"
#include "pdg/ltl2nba.hpp"

using namespace pdg;

namespace {

const Partition kPQ{{"q"}, {"r"}};

PropSet L(std::initializer_list<const char*> names) {
    PropSet s;
    for (auto n : names) s.insert(n);
    return s;
}

// Independent oracle for nba_accepts: bounded unrolling. From every
// reachable anchor (q, pos) in the loop part, walk up to 2|Q||v| steps and
// look for a return to the anchor at the same loop offset through an
// accepting state.
bool nba_accepts_unrolled(const Nba& A, const LassoWord& w) {
    size_t N = w.span(), u = w.prefix_len(), v = w.loop_len();
    std::vector<Letter> letters(N);
    for (size_t p = 0; p < N; ++p) letters[p] = A.alphabet.encode(w.at(p));
    auto next_pos = [&](size_t p) { return p + 1 < N ? p + 1 : u; };

    // Reachable (state, pos) pairs.
    std::vector<std::pair<int, size_t>> reach{{A.initial, 0}};
    std::vector<char> seen(A.states * N, 0);
    seen[A.initial * N] = 1;
    for (size_t i = 0; i < reach.size(); ++i) {
        auto [q, p] = reach[i];
        for (int t : A.succ[q][letters[p]]) {
            size_t np = next_pos(p);
            if (!seen[t * N + np]) {
                seen[t * N + np] = 1;
                reach.push_back({t, np});
            }
        }
    }
    size_t H = 2 * A.states * v + 1;
    for (auto [q0, p0] : reach) {
        if (p0 < u) continue;
        // Layered sets of (state, visited-accepting) from the anchor.
        std::vector<char> layer(A.states * 2, 0);
        layer[q0 * 2 + (A.accepting[q0] ? 1 : 0)] = 1;
        size_t pos = p0;
        for (size_t step = 1; step <= H; ++step) {
            std::vector<char> nxt(A.states * 2, 0);
            for (size_t q = 0; q < A.states; ++q)
                for (int f = 0; f < 2; ++f) {
                    if (!layer[q * 2 + f]) continue;
                    for (int t : A.succ[q][letters[pos]]) {
                        int nf = f || A.accepting[t];
                        nxt[t * 2 + nf] = 1;
                    }
                }
            pos = next_pos(pos);
            layer = std::move(nxt);
            if (pos == p0 && layer[q0 * 2 + 1]) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("ltl_to_nba examples") {
    Alphabet sigma({"q", "r"});

    // G r accepts exactly words where r always holds; the reduced
    // automaton collapses to a single state.
    Nba gr = ltl_to_nba(parse_formula("G r", kPQ), sigma);
    CHECK(gr.states == 1);
    CHECK(nba_accepts(gr, LassoWord({}, {L({"r"})})));
    CHECK(nba_accepts(gr, LassoWord({}, {L({"q", "r"})})));
    CHECK_FALSE(nba_accepts(gr, LassoWord({L({"r"})}, {L({})})));

    // Tautology accepts everything.
    Nba taut = ltl_to_nba(parse_formula("q | !q", kPQ), sigma);
    testgen::Rng rng(3);
    for (int i = 0; i < 50; ++i)
        CHECK(nba_accepts(taut, testgen::random_lasso(rng, {"q", "r"}, 3, 3)));

    // F r: spec's accept/reject pair.
    Nba fr = ltl_to_nba(parse_formula("F r", kPQ), sigma);
    CHECK(nba_accepts(fr, LassoWord({L({})}, {L({"r"})})));
    CHECK_FALSE(nba_accepts(fr, LassoWord({}, {L({})})));

    CHECK_THROWS_AS(ltl_to_nba(parse_formula("FP r", kPQ), sigma), parse_error);
}

TEST_CASE("ltl_to_nba agrees with eval on random formulas and lassos") {
    Alphabet sigma({"q", "r"});
    testgen::Rng rng(41);
    for (int i = 0; i < 250; ++i) {
        Formula f = testgen::random_formula(rng, {"q", "r"}, testgen::pick(rng, 1, 7), false);
        Nba A = ltl_to_nba(f, sigma);
        for (int j = 0; j < 8; ++j) {
            LassoWord w = testgen::random_lasso(rng, {"q", "r"}, 3, 3);
            CHECK(nba_accepts(A, w) == eval(w, 0, 0, f));
        }
    }
}

TEST_CASE("nba_accepts against the unrolled-run oracle") {
    Alphabet sigma({"a", "b"});
    testgen::Rng rng(43);
    for (int i = 0; i < 400; ++i) {
        Nba A = testgen::random_nba(rng, sigma, testgen::pick(rng, 1, 4));
        for (int j = 0; j < 6; ++j) {
            LassoWord w = testgen::random_lasso(rng, {"a", "b"}, 3, 3);
            CHECK(nba_accepts(A, w) == nba_accepts_unrolled(A, w));
        }
    }
    // Trivial cases from the spec.
    Nba one;
    one.alphabet = sigma;
    one.states = 1;
    one.initial = 0;
    one.accepting = {1};
    one.succ = {std::vector<std::vector<int>>(4, {0})};
    testgen::Rng rng2(5);
    for (int i = 0; i < 30; ++i)
        CHECK(nba_accepts(one, testgen::random_lasso(rng2, {"a", "b"}, 3, 3)));
}

TEST_CASE("dpa_accepts color conventions") {
    Alphabet sigma({"a"});
    Dpa all0;
    all0.alphabet = sigma;
    all0.states = 1;
    all0.initial = 0;
    all0.color = {0};
    all0.delta = {{0, 0}};
    CHECK(dpa_accepts(all0, LassoWord({}, {L({})})));

    Dpa all1 = all0;
    all1.color = {1};
    CHECK_FALSE(dpa_accepts(all1, LassoWord({}, {L({})})));

    // Two states toggling colors 1 and 2: max on the cycle is 2, accepted.
    Dpa toggle;
    toggle.alphabet = sigma;
    toggle.states = 2;
    toggle.initial = 0;
    toggle.color = {1, 2};
    toggle.delta = {{1, 1}, {0, 0}};
    CHECK(dpa_accepts(toggle, LassoWord({}, {L({})})));
}

TEST_CASE("determinize: deterministic all-accepting input stays equivalent") {
    Alphabet sigma({"a"});
    Nba A;
    A.alphabet = sigma;
    A.states = 2;
    A.initial = 0;
    A.accepting = {1, 1};
    A.succ = {{{1}, {0}}, {{0}, {1}}};
    Dpa D = determinize(A);
    D.validate();
    testgen::Rng rng(47);
    for (int i = 0; i < 60; ++i) {
        LassoWord w = testgen::random_lasso(rng, {"a"}, 4, 4);
        CHECK(dpa_accepts(D, w) == nba_accepts(A, w));
    }
}

TEST_CASE("determinize F r cross-checked on all small lassos") {
    Alphabet sigma({"r"});
    Nba A = ltl_to_nba(parse_formula("F r", Partition({}, {"r"})), sigma);
    Dpa D = determinize(A);
    for (const auto& [u, v] : testgen::all_lasso_codes(sigma, 3, 3)) {
        LassoWord w = testgen::decode_lasso(sigma, u, v);
        bool expect = false; // F r: some position carries r
        for (size_t p = 0; p < w.span(); ++p)
            if (w.at(p).count("r")) expect = true;
        CHECK(dpa_accepts(D, w) == expect);
        CHECK(nba_accepts(A, w) == expect);
    }
}

TEST_CASE("determinize equivalence on random NBAs (sample)") {
    Alphabet sigma({"a", "b"});
    testgen::Rng rng(53);
    for (int i = 0; i < 60; ++i) {
        Nba A = testgen::random_nba(rng, sigma, testgen::pick(rng, 1, 4));
        Dpa D = determinize(A);
        D.validate();
        for (int j = 0; j < 40; ++j) {
            LassoWord w = testgen::random_lasso(rng, {"a", "b"}, 4, 4);
            CHECK(dpa_accepts(D, w) == nba_accepts(A, w));
        }
    }
}

TEST_CASE("quotient and color compression preserve acceptance") {
    Alphabet sigma({"a", "b"});
    testgen::Rng rng(59);
    for (int i = 0; i < 40; ++i) {
        Nba A = testgen::random_nba(rng, sigma, testgen::pick(rng, 1, 4));
        Dpa D = determinize(A);
        Dpa Q = compress_colors(quotient_dpa(D));
        CHECK(Q.states <= D.states);
        for (int j = 0; j < 25; ++j) {
            LassoWord w = testgen::random_lasso(rng, {"a", "b"}, 3, 3);
            CHECK(dpa_accepts(D, w) == dpa_accepts(Q, w));
        }
    }
}

TEST_CASE("automaton io round trips") {
    // Hand-written one-state DPA file.
    std::string text =
        "type: dpa\n"
        "aps: a\n"
        "states: 1\n"
        "initial: 0\n"
        "colors: 0\n"
        "transitions:\n"
        "0 0 -> 0\n"
        "0 1 -> 0\n"
        "end\n";
    Automaton a = read_automaton(text);
    REQUIRE(std::holds_alternative<Dpa>(a));
    const Dpa& D = std::get<Dpa>(a);
    CHECK(D.states == 1);
    CHECK(D.color == std::vector<int>{0});

    // write . read . write is the identity on the written form.
    std::string w1 = write_automaton(a);
    std::string w2 = write_automaton(read_automaton(w1));
    CHECK(w1 == w2);

    // NBA round trip over generated automata.
    testgen::Rng rng(61);
    Alphabet sigma({"a", "b"});
    for (int i = 0; i < 30; ++i) {
        Nba A = testgen::random_nba(rng, sigma, testgen::pick(rng, 1, 4));
        std::string s = write_automaton(A);
        Automaton back = read_automaton(s);
        REQUIRE(std::holds_alternative<Nba>(back));
        const Nba& B = std::get<Nba>(back);
        CHECK(B.states == A.states);
        CHECK(B.initial == A.initial);
        CHECK(B.accepting == A.accepting);
        CHECK(B.succ == A.succ);
        CHECK(write_automaton(back) == s);
    }
}

TEST_CASE("automaton io rejects malformed input") {
    CHECK_THROWS_AS(read_automaton("type: foo\n"), parse_error);
    CHECK_THROWS_AS(read_automaton("type: dpa\naps: a\nstates: 0\n"), parse_error);
    // Missing dpa transition.
    CHECK_THROWS_AS(read_automaton("type: dpa\naps: a\nstates: 1\ninitial: 0\ncolors: 0\n"
                                   "transitions:\n0 0 -> 0\nend\n"),
                    parse_error);
    // Letter out of range.
    CHECK_THROWS_AS(read_automaton("type: nba\naps: a\nstates: 1\ninitial: 0\naccepting:\n"
                                   "transitions:\n0 7 -> 0\nend\n"),
                    parse_error);
}
