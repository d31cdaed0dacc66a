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

#include "pdg/logic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "pdg/common.hpp"

namespace pdg {

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

Partition::Partition(std::vector<std::string> ins, std::vector<std::string> outs)
    : inputs(std::move(ins)), outputs(std::move(outs)) {
    static const std::set<std::string> keywords = {"X", "F", "G", "FP", "U", "R"};
    std::set<std::string> seen;
    for (const auto& lists : {&inputs, &outputs})
        for (const auto& name : *lists) {
            if (name.empty()) throw parse_error("empty proposition name", 0);
            if (name == kColorProp)
                throw parse_error("proposition '" + kColorProp + "' is reserved for the coloring", 0);
            if (keywords.count(name))
                throw parse_error("proposition '" + name + "' clashes with an operator keyword", 0);
            if (!seen.insert(name).second)
                throw parse_error("proposition '" + name + "' declared twice", 0);
        }
}

bool Partition::declares(const std::string& name) const {
    auto in = [&](const std::vector<std::string>& xs) {
        return std::find(xs.begin(), xs.end(), name) != xs.end();
    };
    return in(inputs) || in(outputs);
}

std::vector<std::string> Partition::all() const {
    std::vector<std::string> out = inputs;
    out.insert(out.end(), outputs.begin(), outputs.end());
    return out;
}

// ---------------------------------------------------------------------------
// Formula nodes
// ---------------------------------------------------------------------------

struct Formula::Node {
    Op op;
    std::string atom;
    Formula lhs;
    Formula rhs;
};

Op Formula::op() const { return node_->op; }
const std::string& Formula::atom_name() const { return node_->atom; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }

Formula Formula::atom(const std::string& name) { return make(Op::Atom, name, {}, {}); }
Formula Formula::natom(const std::string& name) { return make(Op::NegAtom, name, {}, {}); }
Formula Formula::and_(Formula a, Formula b) { return make(Op::And, {}, std::move(a), std::move(b)); }
Formula Formula::or_(Formula a, Formula b) { return make(Op::Or, {}, std::move(a), std::move(b)); }
Formula Formula::next(Formula a) { return make(Op::Next, {}, std::move(a), {}); }
Formula Formula::finally(Formula a) { return make(Op::Finally, {}, std::move(a), {}); }
Formula Formula::globally(Formula a) { return make(Op::Globally, {}, std::move(a), {}); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {}, std::move(a), std::move(b)); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, {}, std::move(a), std::move(b)); }
Formula Formula::prompt_finally(Formula a) { return make(Op::PromptFinally, {}, std::move(a), {}); }

Formula Formula::make(Op op, std::string atom, Formula l, Formula r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->atom = std::move(atom);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return Formula(std::move(n));
}

Formula Formula::negated(const Formula& a) {
    switch (a.op()) {
        case Op::Atom: return natom(a.atom_name());
        case Op::NegAtom: return atom(a.atom_name());
        case Op::And: return or_(negated(a.lhs()), negated(a.rhs()));
        case Op::Or: return and_(negated(a.lhs()), negated(a.rhs()));
        case Op::Next: return next(negated(a.lhs()));
        case Op::Finally: return globally(negated(a.lhs()));
        case Op::Globally: return finally(negated(a.lhs()));
        case Op::Until: return release(negated(a.lhs()), negated(a.rhs()));
        case Op::Release: return until(negated(a.lhs()), negated(a.rhs()));
        case Op::PromptFinally:
            throw parse_error("negation over the prompt operator is not allowed", 0);
    }
    throw internal_error("bad op");
}

Formula Formula::implies(Formula a, Formula b) {
    if (!a.is_ltl())
        throw parse_error("the antecedent of '->' must not contain the prompt operator", 0);
    return or_(negated(a), std::move(b));
}

Formula Formula::conj(const std::vector<Formula>& parts) {
    if (parts.empty()) throw internal_error("empty conjunction");
    Formula acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = and_(acc, parts[i]);
    return acc;
}

Formula Formula::disj(const std::vector<Formula>& parts) {
    if (parts.empty()) throw internal_error("empty disjunction");
    Formula acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = or_(acc, parts[i]);
    return acc;
}

bool Formula::is_ltl() const {
    if (op() == Op::PromptFinally) return false;
    if (node_->lhs.valid() && !node_->lhs.is_ltl()) return false;
    if (node_->rhs.valid() && !node_->rhs.is_ltl()) return false;
    return true;
}

bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    if (op() != o.op() || atom_name() != o.atom_name()) return false;
    if (node_->lhs.valid() != o.node_->lhs.valid()) return false;
    if (node_->rhs.valid() != o.node_->rhs.valid()) return false;
    if (node_->lhs.valid() && !(node_->lhs == o.node_->lhs)) return false;
    if (node_->rhs.valid() && !(node_->rhs == o.node_->rhs)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FormulaTable: structural dedup, children before parents
// ---------------------------------------------------------------------------

FormulaTable::FormulaTable(const Formula& root) { root_ = intern(root); }

int FormulaTable::intern(const Formula& f) {
    // Pointer cache first (shared nodes), then structural dedup.
    const void* key = static_cast<const void*>(f.node_.get());
    for (auto& [k, v] : seen_)
        if (k == key) return v;
    Entry e;
    e.op = f.op();
    e.atom = f.atom_name();
    if (f.node_->lhs.valid()) e.lhs = intern(f.node_->lhs);
    if (f.node_->rhs.valid()) e.rhs = intern(f.node_->rhs);
    int id = -1;
    for (size_t i = 0; i < entries_.size(); ++i) {
        const Entry& o = entries_[i];
        if (o.op == e.op && o.atom == e.atom && o.lhs == e.lhs && o.rhs == e.rhs) {
            id = static_cast<int>(i);
            break;
        }
    }
    if (id < 0) {
        entries_.push_back(e);
        id = static_cast<int>(entries_.size()) - 1;
    }
    seen_.emplace_back(key, id);
    return id;
}

size_t Formula::size() const { return FormulaTable(*this).size(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels, loosest first: | < & < U/R < unary < primary.
int prec(Op op) {
    switch (op) {
        case Op::Or: return 1;
        case Op::And: return 2;
        case Op::Until:
        case Op::Release: return 3;
        case Op::Next:
        case Op::Finally:
        case Op::Globally:
        case Op::PromptFinally: return 4;
        case Op::Atom:
        case Op::NegAtom: return 5;
    }
    return 5;
}

void print(const Formula& f, int parent_prec, std::string& out) {
    int p = prec(f.op());
    bool paren = p < parent_prec;
    if (paren) out += '(';
    switch (f.op()) {
        case Op::Atom: out += f.atom_name(); break;
        case Op::NegAtom:
            out += '!';
            out += f.atom_name();
            break;
        case Op::Next:
        case Op::Finally:
        case Op::Globally:
        case Op::PromptFinally: {
            out += f.op() == Op::Next      ? "X "
                   : f.op() == Op::Finally ? "F "
                   : f.op() == Op::Globally ? "G "
                                             : "FP ";
            print(f.lhs(), p, out);
            break;
        }
        case Op::Until:
        case Op::Release:
            // Right-associative: the left child needs strictly higher level.
            print(f.lhs(), p + 1, out);
            out += f.op() == Op::Until ? " U " : " R ";
            print(f.rhs(), p, out);
            break;
        case Op::And:
        case Op::Or:
            // Left-associative.
            print(f.lhs(), p, out);
            out += f.op() == Op::And ? " & " : " | ";
            print(f.rhs(), p + 1, out);
            break;
    }
    if (paren) out += ')';
}

} // namespace

std::string Formula::to_string() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, Bang, LPar, RPar, AndT, OrT, Arrow, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        switch (c) {
            case '!': out.push_back({Token::Bang, "!", i}); break;
            case '(': out.push_back({Token::LPar, "(", i}); break;
            case ')': out.push_back({Token::RPar, ")", i}); break;
            case '&': out.push_back({Token::AndT, "&", i}); break;
            case '|': out.push_back({Token::OrT, "|", i}); break;
            case '-':
                if (i + 1 < s.size() && s[i + 1] == '>') {
                    out.push_back({Token::Arrow, "->", i});
                    ++i;
                    break;
                }
                [[fallthrough]];
            default: throw parse_error(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const std::vector<std::string>& declared)
        : toks_(std::move(toks)), declared_(declared) {}

    Formula parse() {
        Formula f = implies_level();
        expect(Token::End, "end of input");
        return f;
    }

private:
    std::vector<Token> toks_;
    const std::vector<std::string>& declared_;
    size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }
    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k) throw parse_error("expected " + what, peek().pos);
        ++at_;
    }

    Formula implies_level() {
        Formula lhs = or_level();
        if (peek().kind == Token::Arrow) {
            size_t pos = take().pos;
            Formula rhs = implies_level(); // right-assoc
            try {
                return Formula::implies(std::move(lhs), std::move(rhs));
            } catch (const parse_error& e) {
                throw parse_error(e.raw, pos);
            }
        }
        return lhs;
    }

    Formula or_level() {
        Formula f = and_level();
        while (peek().kind == Token::OrT) {
            take();
            f = Formula::or_(std::move(f), and_level());
        }
        return f;
    }

    Formula and_level() {
        Formula f = until_level();
        while (peek().kind == Token::AndT) {
            take();
            f = Formula::and_(std::move(f), until_level());
        }
        return f;
    }

    Formula until_level() {
        Formula lhs = unary_level();
        if (peek().kind == Token::Ident && (peek().text == "U" || peek().text == "R")) {
            bool is_u = take().text == "U";
            Formula rhs = until_level(); // right-assoc
            return is_u ? Formula::until(std::move(lhs), std::move(rhs))
                        : Formula::release(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula unary_level() {
        const Token& t = peek();
        if (t.kind == Token::Bang) {
            size_t pos = take().pos;
            Formula inner = unary_level();
            try {
                return Formula::negated(inner);
            } catch (const parse_error& e) {
                throw parse_error(e.raw, pos);
            }
        }
        if (t.kind == Token::Ident) {
            if (t.text == "X") {
                take();
                return Formula::next(unary_level());
            }
            if (t.text == "F") {
                take();
                return Formula::finally(unary_level());
            }
            if (t.text == "G") {
                take();
                return Formula::globally(unary_level());
            }
            if (t.text == "FP") {
                take();
                return Formula::prompt_finally(unary_level());
            }
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        if (t.kind == Token::LPar) {
            take();
            Formula f = implies_level();
            expect(Token::RPar, "')'");
            return f;
        }
        if (t.kind == Token::Ident) {
            if (t.text == "U" || t.text == "R")
                throw parse_error("'" + t.text + "' is an operator, not an atom", t.pos);
            if (std::find(declared_.begin(), declared_.end(), t.text) == declared_.end())
                throw parse_error("undeclared atom '" + t.text + "'", t.pos);
            return Formula::atom(take().text);
        }
        throw parse_error("expected a formula", t.pos);
    }
};

} // namespace

Formula parse_formula(const std::string& text, const std::vector<std::string>& declared) {
    return Parser(lex(text), declared).parse();
}

Formula parse_formula(const std::string& text, const Partition& part) {
    return parse_formula(text, part.all());
}

// ---------------------------------------------------------------------------
// Evaluation on lassos
// ---------------------------------------------------------------------------

bool eval(const LassoWord& w, size_t i, size_t k, const Formula& phi) {
    FormulaTable tab(phi);
    size_t N = w.span();
    size_t u = w.prefix_len();
    auto next = [&](size_t p) { return p + 1 < N ? p + 1 : u; };

    std::vector<std::vector<char>> val(tab.size(), std::vector<char>(N, 0));
    for (size_t id = 0; id < tab.size(); ++id) {
        const auto& e = tab[id];
        auto& row = val[id];
        switch (e.op) {
            case Op::Atom:
                for (size_t p = 0; p < N; ++p) row[p] = w.at(p).count(e.atom) > 0;
                break;
            case Op::NegAtom:
                for (size_t p = 0; p < N; ++p) row[p] = w.at(p).count(e.atom) == 0;
                break;
            case Op::And:
                for (size_t p = 0; p < N; ++p) row[p] = val[e.lhs][p] && val[e.rhs][p];
                break;
            case Op::Or:
                for (size_t p = 0; p < N; ++p) row[p] = val[e.lhs][p] || val[e.rhs][p];
                break;
            case Op::Next:
                for (size_t p = 0; p < N; ++p) row[p] = val[e.lhs][next(p)];
                break;
            case Op::Finally:
            case Op::Until: {
                // Least fixpoint of row[p] = goal[p] || (hold[p] && row[next(p)]).
                const auto& goal = val[e.op == Op::Finally ? e.lhs : e.rhs];
                const std::vector<char>* hold = e.op == Op::Until ? &val[e.lhs] : nullptr;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (size_t q = N; q-- > 0;) {
                        char nv = goal[q] || ((!hold || (*hold)[q]) && row[next(q)]);
                        if (nv && !row[q]) {
                            row[q] = 1;
                            changed = true;
                        }
                    }
                }
                break;
            }
            case Op::Globally:
            case Op::Release: {
                // Greatest fixpoint of row[p] = keep[p] && (rel[p] || row[next(p)]).
                const auto& keep = val[e.op == Op::Globally ? e.lhs : e.rhs];
                const std::vector<char>* rel = e.op == Op::Release ? &val[e.lhs] : nullptr;
                for (size_t p = 0; p < N; ++p) row[p] = 1;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (size_t q = N; q-- > 0;) {
                        char nv = keep[q] && ((rel && (*rel)[q]) || row[next(q)]);
                        if (!nv && row[q]) {
                            row[q] = 0;
                            changed = true;
                        }
                    }
                }
                break;
            }
            case Op::PromptFinally: {
                // Walk up to min(k, N) concrete steps through the loop.
                size_t steps = std::min(k, N);
                for (size_t p = 0; p < N; ++p) {
                    size_t q = p;
                    char hit = 0;
                    for (size_t j = 0; j <= steps; ++j) {
                        if (val[e.lhs][q]) {
                            hit = 1;
                            break;
                        }
                        q = next(q);
                    }
                    row[p] = hit;
                }
                break;
            }
        }
    }
    return val[tab.root()][w.canonical(i)] != 0;
}

// ---------------------------------------------------------------------------
// Relativization and prompt expansion
// ---------------------------------------------------------------------------

namespace {

Formula rel_prime(const Formula& f) {
    Formula p = Formula::atom(kColorProp);
    Formula np = Formula::natom(kColorProp);
    switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom: return f;
        case Op::And: return Formula::and_(rel_prime(f.lhs()), rel_prime(f.rhs()));
        case Op::Or: return Formula::or_(rel_prime(f.lhs()), rel_prime(f.rhs()));
        case Op::Next: return Formula::next(rel_prime(f.lhs()));
        case Op::Finally: return Formula::finally(rel_prime(f.lhs()));
        case Op::Globally: return Formula::globally(rel_prime(f.lhs()));
        case Op::Until: return Formula::until(rel_prime(f.lhs()), rel_prime(f.rhs()));
        case Op::Release: return Formula::release(rel_prime(f.lhs()), rel_prime(f.rhs()));
        case Op::PromptFinally: {
            Formula body = rel_prime(f.lhs());
            Formula left = Formula::or_(np, Formula::until(p, Formula::until(np, body)));
            Formula right = Formula::or_(p, Formula::until(np, Formula::until(p, body)));
            return Formula::and_(left, right);
        }
    }
    throw internal_error("bad op");
}

} // namespace

Formula relativize(const Formula& phi) {
    Formula p = Formula::atom(kColorProp);
    Formula np = Formula::natom(kColorProp);
    Formula gfp = Formula::globally(Formula::finally(p));
    Formula gfnp = Formula::globally(Formula::finally(np));
    return Formula::and_(Formula::and_(rel_prime(phi), gfp), gfnp);
}

Formula expand_prompt(const Formula& f, size_t k) {
    switch (f.op()) {
        case Op::Atom:
        case Op::NegAtom: return f;
        case Op::And: return Formula::and_(expand_prompt(f.lhs(), k), expand_prompt(f.rhs(), k));
        case Op::Or: return Formula::or_(expand_prompt(f.lhs(), k), expand_prompt(f.rhs(), k));
        case Op::Next: return Formula::next(expand_prompt(f.lhs(), k));
        case Op::Finally: return Formula::finally(expand_prompt(f.lhs(), k));
        case Op::Globally: return Formula::globally(expand_prompt(f.lhs(), k));
        case Op::Until:
            return Formula::until(expand_prompt(f.lhs(), k), expand_prompt(f.rhs(), k));
        case Op::Release:
            return Formula::release(expand_prompt(f.lhs(), k), expand_prompt(f.rhs(), k));
        case Op::PromptFinally: {
            Formula body = expand_prompt(f.lhs(), k);
            // body | X (body | X (... )) with k nested nexts.
            Formula acc = body;
            for (size_t j = 0; j < k; ++j) acc = Formula::or_(body, Formula::next(acc));
            return acc;
        }
    }
    throw internal_error("bad op");
}

} // namespace pdg
