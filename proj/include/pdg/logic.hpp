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

#include <memory>
#include <string>
#include <vector>

#include "pdg/lasso.hpp"

namespace pdg {

/// Input/output split of the atomic propositions. Inputs are under
/// Player I's control, outputs under Player O's. The coloring proposition
/// is reserved and may not be declared on either side.
struct Partition {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    Partition() = default;
    Partition(std::vector<std::string> ins, std::vector<std::string> outs);

    bool declares(const std::string& name) const;
    /// All declared propositions, inputs before outputs.
    std::vector<std::string> all() const;
};

enum class Op {
    Atom,
    NegAtom,
    And,
    Or,
    Next,
    Finally,
    Globally,
    Until,
    Release,
    PromptFinally,
};

/// Prompt-LTL formula in negation normal form: negation occurs only on
/// atoms. Nodes are immutable and shared.
class Formula {
public:
    Formula() = default;

    static Formula atom(const std::string& name);
    static Formula natom(const std::string& name);
    static Formula and_(Formula a, Formula b);
    static Formula or_(Formula a, Formula b);
    static Formula next(Formula a);
    static Formula finally(Formula a);
    static Formula globally(Formula a);
    static Formula until(Formula a, Formula b);
    static Formula release(Formula a, Formula b);
    static Formula prompt_finally(Formula a);
    /// a -> b as !a | b; requires a to be free of the prompt operator.
    static Formula implies(Formula a, Formula b);
    /// Negation pushed to the atoms; throws on a prompt operator inside.
    static Formula negated(const Formula& a);
    /// Left-associative chain over `parts` (ff/tt-free: parts nonempty).
    static Formula conj(const std::vector<Formula>& parts);
    static Formula disj(const std::vector<Formula>& parts);

    Op op() const;
    const std::string& atom_name() const;
    const Formula& lhs() const;
    const Formula& rhs() const;

    bool is_ltl() const;      ///< no prompt operator anywhere
    size_t size() const;      ///< number of distinct subformulas
    bool valid() const { return node_ != nullptr; }

    /// Structural equality.
    bool operator==(const Formula& o) const;

    std::string to_string() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Op op, std::string atom, Formula l, Formula r);
    std::shared_ptr<const Node> node_;
    friend class FormulaTable;
};

/// Indexes the distinct subformulas of one formula; children come before
/// parents. Shared by eval, size measurement and the translations.
class FormulaTable {
public:
    explicit FormulaTable(const Formula& root);

    struct Entry {
        Op op;
        std::string atom;
        int lhs = -1;
        int rhs = -1;
    };
    size_t size() const { return entries_.size(); }
    const Entry& operator[](size_t i) const { return entries_[i]; }
    int root() const { return root_; }

private:
    std::vector<Entry> entries_;
    int root_ = -1;
    int intern(const Formula& f);
    std::vector<std::pair<const void*, int>> seen_;
};

/// Parses the fixed grammar: atoms [a-zA-Z][a-zA-Z0-9_]*; prefix ! X F G FP;
/// U R right-associative, then &, then |, then ->. Every atom must be
/// declared in `part`. The result is in negation normal form.
Formula parse_formula(const std::string& text, const Partition& part);

/// Parse against an explicit declaration list (used internally where the
/// coloring proposition is a legitimate atom).
Formula parse_formula(const std::string& text, const std::vector<std::string>& declared);

/// (w, i, k) |= phi. Total; positions beyond the lasso span are folded.
bool eval(const LassoWord& w, size_t i, size_t k, const Formula& phi);

/// The alternating-color relativization: every FP psi is replaced by
/// (p -> (p U (!p U psi'))) & (!p -> (!p U (p U psi'))) and the result is
/// conjoined with G F p & G F !p. The result is an LTL formula.
Formula relativize(const Formula& phi);

/// Replaces FP psi by the (k+1)-fold disjunction psi | X psi | ... | X^k psi.
/// Exact for the fixed bound k; the result is an LTL formula.
Formula expand_prompt(const Formula& phi, size_t k);

/// Documented bound on the relativization growth: |rel(phi)| <= c * |phi|.
inline constexpr size_t kRelativizeGrowthBound = 10;

} // namespace pdg
