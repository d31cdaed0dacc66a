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

#include "pdg/lowerbounds.hpp"

#include <string>

namespace pdg {

std::vector<int> w_sequence(size_t m, const Budget& budget) {
    std::vector<int> w{0};
    for (size_t j = 1; j <= m; ++j) {
        budget.check("w_sequence", 2 * w.size() + 1);
        std::vector<int> next = w;
        next.push_back(static_cast<int>(j));
        next.insert(next.end(), w.begin(), w.end());
        w = std::move(next);
    }
    return w;
}

std::optional<BadPair> find_bad_pair(const std::vector<int>& s) {
    for (size_t i2 = 1; i2 < s.size(); ++i2) {
        // Walk left while the values stay strictly below s[i2]; the nearest
        // position at or above decides.
        for (size_t i = i2; i-- > 0;) {
            if (s[i] > s[i2]) break;
            if (s[i] == s[i2]) return BadPair{i, i2, s[i2]};
        }
    }
    return std::nullopt;
}

namespace {

using F = Formula;

std::string bit_name(size_t j) { return "b" + std::to_string(j); }

F conj_all(const std::vector<F>& fs) { return F::conj(fs); }

} // namespace

AddressingFormulas addressing_formulas(size_t n) {
    if (n == 0) throw internal_error("addressing needs at least one bit");
    // Shared chains: C_j = b0 & ... & b(j-1), NC_j = !b0 | ... | !b(j-1).
    std::vector<F> C(n), NC(n);
    for (size_t j = 1; j < n; ++j) {
        F bj = F::atom(bit_name(j - 1));
        F nbj = F::natom(bit_name(j - 1));
        C[j] = j == 1 ? bj : F::and_(C[j - 1], bj);
        NC[j] = j == 1 ? nbj : F::or_(NC[j - 1], nbj);
    }
    std::vector<F> terms;
    for (size_t j = 0; j < n; ++j) {
        F b = F::atom(bit_name(j));
        F nb = F::natom(bit_name(j));
        F flip = F::or_(F::and_(b, F::next(nb)), F::and_(nb, F::next(b)));
        F same = F::or_(F::and_(b, F::next(b)), F::and_(nb, F::next(nb)));
        if (j == 0) {
            terms.push_back(flip);
        } else {
            terms.push_back(F::and_(F::or_(NC[j], flip), F::or_(C[j], same)));
        }
    }
    AddressingFormulas out{conj_all(terms), F{}};
    std::vector<F> zeros;
    for (size_t j = 0; j < n; ++j) zeros.push_back(F::natom(bit_name(j)));
    out.zero_start = F::and_(conj_all(zeros), F::globally(out.inc));
    return out;
}

namespace {

struct Family {
    size_t n;
    F zero, nzero, ones, nones;
    F eq_all;   ///< bi and bo agree from here through the next block end
    F lt_block; ///< block starting here encodes bi-number < bo-number

    explicit Family(size_t n_) : n(n_) {
        std::vector<F> zs, nzs, os, nos;
        for (size_t j = 0; j < n; ++j) {
            zs.push_back(F::natom(bit_name(j)));
            nzs.push_back(F::atom(bit_name(j)));
            os.push_back(F::atom(bit_name(j)));
            nos.push_back(F::natom(bit_name(j)));
        }
        zero = conj_all(zs);
        nzero = F::disj(nzs);
        ones = conj_all(os);
        nones = F::disj(nos);

        F eqb = F::or_(F::and_(F::atom("bi"), F::atom("bo")),
                       F::and_(F::natom("bi"), F::natom("bo")));
        eq_all = F::until(eqb, F::and_(ones, eqb));
        // Little-endian: a difference at the highest address decides, so we
        // look for a position favouring bo whose later positions all agree.
        F ltb = F::and_(F::natom("bi"), F::atom("bo"));
        F witness = F::and_(ltb, F::or_(ones, F::next(eq_all)));
        lt_block = F::until(nones, witness);
    }

    F exactly_once(const std::string& name) const {
        return F::and_(F::finally(F::atom(name)),
                       F::globally(F::or_(F::natom(name),
                                          F::next(F::globally(F::natom(name))))));
    }

    F psi1() const {
        // sharp holds at most once.
        return F::globally(
            F::or_(F::natom("sharp"), F::next(F::globally(F::natom("sharp")))));
    }

    F psi2() const {
        // left_mark exactly once, at a block start, with equal block numbers.
        return F::and_(exactly_once("left_mark"),
                       F::globally(F::or_(F::natom("left_mark"), F::and_(zero, eq_all))));
    }

    F psi3() const {
        // right_mark exactly once, at a block start with equal numbers,
        // strictly after left_mark.
        F strictly_after =
            F::until(F::natom("right_mark"), F::and_(F::atom("left_mark"), F::natom("right_mark")));
        return F::and_(
            F::and_(exactly_once("right_mark"),
                    F::globally(F::or_(F::natom("right_mark"), F::and_(zero, eq_all)))),
            strictly_after);
    }

    F psi4() const {
        // Every block strictly between the marks: bi-number < bo-number.
        F guard = F::or_(F::or_(nzero, F::atom("right_mark")), lt_block);
        return F::globally(
            F::or_(F::natom("left_mark"), F::next(F::until(guard, F::atom("right_mark")))));
    }

    F psi5() const {
        // No two positions with the sharp position's address disagree on bo;
        // positions are compared bitwise against the (future) sharp.
        std::vector<F> match;
        for (size_t j = 0; j < n; ++j) {
            F b = F::atom(bit_name(j));
            F nb = F::natom(bit_name(j));
            match.push_back(F::or_(F::and_(b, F::finally(F::and_(F::atom("sharp"), b))),
                                   F::and_(nb, F::finally(F::and_(F::atom("sharp"), nb)))));
        }
        F M = conj_all(match);
        F bad = F::finally(F::and_(
            M, F::or_(F::and_(F::atom("bo"), F::next(F::finally(F::and_(M, F::natom("bo"))))),
                      F::and_(F::natom("bo"), F::next(F::finally(F::and_(M, F::atom("bo"))))))));
        return F::negated(bad);
    }
};

GeneratedGame generate(size_t n, bool with_prompt, const Budget& budget) {
    if (n == 0) throw parse_error("family parameter n must be positive", 0);
    budget.check("gen (formula size)", n * n * 64);
    std::vector<std::string> ins;
    for (size_t j = 0; j < n; ++j) ins.push_back(bit_name(j));
    ins.push_back("bi");
    ins.push_back("sharp");
    Partition part(ins, {"bo", "left_mark", "right_mark"});

    AddressingFormulas addr = addressing_formulas(n);
    Family fam(n);
    F antecedent = F::and_(addr.zero_start, fam.psi1());
    F consequent =
        F::and_(F::and_(F::and_(fam.psi2(), fam.psi3()), fam.psi4()), fam.psi5());
    if (with_prompt)
        consequent = F::and_(consequent, F::prompt_finally(F::atom("right_mark")));
    return GeneratedGame{F::implies(antecedent, consequent), part};
}

} // namespace

GeneratedGame gen_theorem2(size_t n, const Budget& budget) { return generate(n, false, budget); }

GeneratedGame gen_theorem3(size_t n, const Budget& budget) { return generate(n, true, budget); }

} // namespace pdg
