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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdg/autoio.hpp"
#include "pdg/determinize.hpp"
#include "pdg/lowerbounds.hpp"
#include "pdg/ltl2nba.hpp"
#include "pdg/oracle.hpp"
#include "pdg/play.hpp"
#include "pdg/strategy.hpp"

namespace {

constexpr int kExitOWins = 0;
constexpr int kExitIWins = 10;
constexpr int kExitError = 2;

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw pdg::parse_error("cannot open '" + out_path + "' for writing", 0);
    f << text;
}

struct CommonOpts {
    std::string formula;
    std::string inputs;
    std::string outputs;
    std::string dpa_path;
    std::string out_path;
    size_t budget = 500000;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_dpa) {
    cmd->add_option("--formula", o.formula, "winning condition (Prompt-LTL text)");
    cmd->add_option("--inputs", o.inputs, "input propositions, comma separated");
    cmd->add_option("--outputs", o.outputs, "output propositions, comma separated");
    if (with_dpa)
        cmd->add_option("--dpa", o.dpa_path,
                        "deterministic parity automaton file used instead of a formula");
    cmd->add_option("--out", o.out_path, "write the result document here (default stdout)");
    cmd->add_option("--budget-states", o.budget, "state cap per construction stage");
}

pdg::Partition make_partition(const CommonOpts& o) {
    return pdg::Partition(split_names(o.inputs), split_names(o.outputs));
}

// Formula-or-automaton front end shared by solve and play.
pdg::Verdict run_pipeline(const CommonOpts& o, bool& prompt_condition) {
    pdg::Budget budget{o.budget};
    if (!o.dpa_path.empty()) {
        pdg::Automaton a = pdg::read_automaton_file(o.dpa_path);
        if (!std::holds_alternative<pdg::Dpa>(a))
            throw pdg::parse_error("--dpa expects a dpa-type automaton file", 0);
        pdg::Dpa d = std::get<pdg::Dpa>(std::move(a));
        std::vector<std::string> ins = split_names(o.inputs);
        // The automaton's propositions minus the inputs are the outputs; the
        // coloring proposition, when present, stays on the output side.
        pdg::SplitAlphabet split;
        split.inputs = ins;
        bool saw_color = false;
        for (const auto& ap : d.alphabet.aps) {
            if (std::find(ins.begin(), ins.end(), ap) != ins.end()) continue;
            if (ap == pdg::kColorProp) {
                saw_color = true;
                continue;
            }
            split.outputs.push_back(ap);
        }
        for (const auto& in : ins)
            if (d.alphabet.index_of(in) < 0)
                throw pdg::parse_error("input proposition '" + in + "' not in the automaton", 0);
        if (saw_color) {
            split.outputs.push_back(pdg::kColorProp);
            split.with_color = true;
        }
        // Reorder letters to the canonical inputs-then-outputs layout.
        pdg::Alphabet target = split.combined();
        pdg::Dpa reordered;
        reordered.alphabet = target;
        reordered.states = d.states;
        reordered.initial = d.initial;
        reordered.color = d.color;
        reordered.delta.assign(d.states, std::vector<int>(target.letter_count(), 0));
        for (size_t q = 0; q < d.states; ++q)
            for (pdg::Letter l = 0; l < target.letter_count(); ++l)
                reordered.delta[q][l] = d.delta[q][d.alphabet.encode(target.decode(l))];
        prompt_condition = false;
        return pdg::decide_dpa(std::move(reordered), split, false, budget);
    }
    pdg::Partition part = make_partition(o);
    pdg::Formula phi = pdg::parse_formula(o.formula, part);
    prompt_condition = !phi.is_ltl();
    return pdg::decide(phi, part, budget);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delay games with LTL / Prompt-LTL winning conditions"};
    app.require_subcommand(1);

    CommonOpts solve_o, oracle_o, play_o, gen_o, rel_o, trans_o, check_o;

    auto* solve = app.add_subcommand("solve", "decide the delay game and extract a strategy");
    add_common(solve, solve_o, true);
    std::string dump_abs, dump_game;
    solve->add_option("--dump-abstraction", dump_abs, "write the abstraction summary here");
    solve->add_option("--dump-game", dump_game, "write the parity game dump here");

    auto* oracle = app.add_subcommand("oracle", "explicit-lookahead ground-truth solver");
    add_common(oracle, oracle_o, false);
    size_t oracle_f0 = 1, oracle_k = 0;
    oracle->add_option("--f0", oracle_f0, "initial lookahead (letters)")->required();
    oracle->add_option("--k", oracle_k, "prompt bound (default 0)");

    auto* play = app.add_subcommand("play", "interactive delay-game session");
    add_common(play, play_o, true);
    std::string side, transcript_path;
    play->add_option("--side", side, "which side the human plays: i or o (default: loser)");
    play->add_option("--transcript", transcript_path, "record human moves to this file");

    auto* gen = app.add_subcommand("gen", "generate a lower-bound formula family instance");
    std::string family = "thm2";
    size_t gen_n = 1;
    gen->add_option("--family", family, "thm2 (lookahead) or thm3 (prompt bound)");
    gen->add_option("--n", gen_n, "family parameter")->required();
    gen->add_option("--out", gen_o.out_path, "write the document here");
    gen->add_option("--budget-states", gen_o.budget, "generation budget");

    auto* rel = app.add_subcommand("relativize", "alternating-color relativization of a formula");
    add_common(rel, rel_o, false);

    auto* trans = app.add_subcommand("translate", "LTL to automaton translation");
    add_common(trans, trans_o, false);
    std::string to = "dpa";
    trans->add_option("--to", to, "nba or dpa (default dpa)");

    auto* check = app.add_subcommand("check", "evaluate a formula on a lasso trace");
    add_common(check, check_o, false);
    std::string trace;
    size_t check_k = 0;
    check->add_option("--trace", trace, "lasso: letters, '|', loop letters")->required();
    check->add_option("--k", check_k, "prompt bound (default 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const CommonOpts* o : {&solve_o, &oracle_o, &play_o, &gen_o, &rel_o, &trans_o, &check_o})
            if (o->budget == 0) throw pdg::parse_error("--budget-states must be positive", 0);
        if (*solve) {
            bool prompt = false;
            pdg::Verdict v = run_pipeline(solve_o, prompt);
            emit(pdg::write_verdict(v), solve_o.out_path);
            if (!dump_abs.empty()) emit(pdg::format_abstraction(*v.pipeline->abstraction), dump_abs);
            if (!dump_game.empty()) emit(pdg::format_game(v.pipeline->game->game), dump_game);
            if (v.winner == pdg::Player::O) {
                std::cerr << "Player O wins: f0=" << v.f0;
                if (v.k) std::cerr << " k=" << *v.k;
                std::cerr << (v.report.ok() ? " (strategy verified)" : " (VERIFICATION FAILED)")
                          << "\n";
                if (!v.report.ok()) return kExitError;
                return kExitOWins;
            }
            std::cerr << "Player I wins (for every lookahead)\n";
            return kExitIWins;
        }
        if (*oracle) {
            pdg::Partition part = make_partition(oracle_o);
            pdg::Formula phi = pdg::parse_formula(oracle_o.formula, part);
            pdg::Player w = pdg::solve_prompt_explicit(phi, part, oracle_k, oracle_f0,
                                                       pdg::Budget{oracle_o.budget});
            std::ostringstream doc;
            doc << "winner: " << (w == pdg::Player::O ? "O" : "I") << "\n";
            doc << "f0: " << oracle_f0 << "\n";
            doc << "k: " << oracle_k << "\n";
            emit(doc.str(), oracle_o.out_path);
            return w == pdg::Player::O ? kExitOWins : kExitIWins;
        }
        if (*play) {
            bool prompt = false;
            pdg::Verdict v = run_pipeline(play_o, prompt);
            std::ofstream transcript;
            if (!transcript_path.empty()) {
                transcript.open(transcript_path);
                if (!transcript)
                    throw pdg::parse_error("cannot open transcript '" + transcript_path + "'", 0);
            }
            std::ostream* tr = transcript_path.empty() ? nullptr : &transcript;
            std::string human = side.empty() ? (v.winner == pdg::Player::O ? "i" : "o") : side;
            if (human == "i") {
                if (v.winner != pdg::Player::O) {
                    std::cerr << "machine has no Player O strategy here (winner is I)\n";
                    return kExitError;
                }
                return pdg::play_machine_o(v, std::cin, std::cout, tr);
            }
            if (human == "o") {
                if (v.winner != pdg::Player::I) {
                    std::cerr << "machine has no Player I strategy here (winner is O)\n";
                    return kExitError;
                }
                return pdg::play_machine_i(v, std::cin, std::cout, tr);
            }
            std::cerr << "--side must be 'i' or 'o'\n";
            return kExitError;
        }
        if (*gen) {
            pdg::Budget budget{gen_o.budget};
            pdg::GeneratedGame g = family == "thm3"   ? pdg::gen_theorem3(gen_n, budget)
                                   : family == "thm2" ? pdg::gen_theorem2(gen_n, budget)
                                                      : throw pdg::parse_error(
                                                            "--family must be thm2 or thm3", 0);
            std::ostringstream doc;
            doc << "family: " << family << "\n";
            doc << "n: " << gen_n << "\n";
            doc << "inputs:";
            for (const auto& p : g.part.inputs) doc << " " << p;
            doc << "\noutputs:";
            for (const auto& p : g.part.outputs) doc << " " << p;
            doc << "\nformula: " << g.formula.to_string() << "\n";
            emit(doc.str(), gen_o.out_path);
            return 0;
        }
        if (*rel) {
            pdg::Partition part = make_partition(rel_o);
            pdg::Formula phi = pdg::parse_formula(rel_o.formula, part);
            pdg::Formula relf = pdg::relativize(phi);
            std::ostringstream doc;
            doc << "inputs:";
            for (const auto& p : part.inputs) doc << " " << p;
            doc << "\noutputs:";
            for (const auto& p : part.outputs) doc << " " << p;
            doc << " " << pdg::kColorProp;
            doc << "\nformula: " << relf.to_string() << "\n";
            emit(doc.str(), rel_o.out_path);
            return 0;
        }
        if (*trans) {
            pdg::Partition part = make_partition(trans_o);
            pdg::Formula phi = pdg::parse_formula(trans_o.formula, part);
            pdg::Budget budget{trans_o.budget};
            pdg::SplitAlphabet split{part.inputs, part.outputs, false};
            pdg::Nba nba = pdg::ltl_to_nba(phi, split.combined(), budget);
            if (to == "nba") {
                emit(pdg::write_automaton(nba), trans_o.out_path);
            } else if (to == "dpa") {
                emit(pdg::write_automaton(pdg::determinize(nba, budget)), trans_o.out_path);
            } else {
                throw pdg::parse_error("--to must be nba or dpa", 0);
            }
            return 0;
        }
        if (*check) {
            pdg::Partition part = make_partition(check_o);
            pdg::Formula phi = pdg::parse_formula(check_o.formula, part);
            pdg::LassoWord w = pdg::parse_lasso(trace);
            // Undeclared propositions in the trace are an input error.
            pdg::Alphabet sigma{part.all()};
            for (size_t i = 0; i < w.span(); ++i) sigma.encode(w.at(i));
            bool result = pdg::eval(w, 0, check_k, phi);
            std::ostringstream doc;
            doc << "result: " << (result ? "true" : "false") << "\n";
            emit(doc.str(), check_o.out_path);
            return result ? kExitOWins : kExitIWins;
        }
    } catch (const pdg::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
