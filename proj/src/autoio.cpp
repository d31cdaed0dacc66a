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

#include "pdg/autoio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pdg {

namespace {

struct LineError {
    [[noreturn]] static void raise(size_t line, const std::string& msg) {
        throw parse_error("automaton file, line " + std::to_string(line) + ": " + msg, line);
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

long to_int(const std::string& s, size_t line) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        LineError::raise(line, "expected a number, got '" + s + "'");
    }
}

} // namespace

std::string write_automaton(const Automaton& a) {
    std::ostringstream out;
    bool is_nba = std::holds_alternative<Nba>(a);
    const Alphabet& sigma = is_nba ? std::get<Nba>(a).alphabet : std::get<Dpa>(a).alphabet;
    out << "type: " << (is_nba ? "nba" : "dpa") << "\n";
    out << "aps:";
    for (const auto& p : sigma.aps) out << " " << p;
    out << "\n";
    if (is_nba) {
        const Nba& A = std::get<Nba>(a);
        out << "states: " << A.states << "\n";
        out << "initial: " << A.initial << "\n";
        out << "accepting:";
        for (size_t q = 0; q < A.states; ++q)
            if (A.accepting[q]) out << " " << q;
        out << "\n";
        out << "transitions:\n";
        for (size_t q = 0; q < A.states; ++q)
            for (size_t l = 0; l < sigma.letter_count(); ++l) {
                if (A.succ[q][l].empty()) continue;
                out << q << " " << l << " ->";
                for (int t : A.succ[q][l]) out << " " << t;
                out << "\n";
            }
    } else {
        const Dpa& D = std::get<Dpa>(a);
        out << "states: " << D.states << "\n";
        out << "initial: " << D.initial << "\n";
        out << "colors:";
        for (size_t q = 0; q < D.states; ++q) out << " " << D.color[q];
        out << "\n";
        out << "transitions:\n";
        for (size_t q = 0; q < D.states; ++q)
            for (size_t l = 0; l < sigma.letter_count(); ++l)
                out << q << " " << l << " -> " << D.delta[q][l] << "\n";
    }
    out << "end\n";
    return out.str();
}

Automaton read_automaton(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t lno = 0;
    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++lno;
            size_t h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            if (!split_ws(line).empty()) return true;
        }
        if (required) LineError::raise(lno, "unexpected end of file");
        return false;
    };
    auto field = [&](const std::string& name) -> std::vector<std::string> {
        next_line(true);
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] != name + ":")
            LineError::raise(lno, "expected field '" + name + ":'");
        toks.erase(toks.begin());
        return toks;
    };

    auto type_toks = field("type");
    if (type_toks.size() != 1 || (type_toks[0] != "nba" && type_toks[0] != "dpa"))
        LineError::raise(lno, "type must be 'nba' or 'dpa'");
    bool is_nba = type_toks[0] == "nba";

    Alphabet sigma(field("aps"));
    auto states_toks = field("states");
    if (states_toks.size() != 1) LineError::raise(lno, "states needs one number");
    long nstates = to_int(states_toks[0], lno);
    if (nstates <= 0) LineError::raise(lno, "state count must be positive");
    auto init_toks = field("initial");
    if (init_toks.size() != 1) LineError::raise(lno, "initial needs one state");
    long initial = to_int(init_toks[0], lno);
    if (initial < 0 || initial >= nstates) LineError::raise(lno, "initial state out of range");

    Nba A;
    Dpa D;
    if (is_nba) {
        A.alphabet = sigma;
        A.states = static_cast<size_t>(nstates);
        A.initial = static_cast<int>(initial);
        A.accepting.assign(A.states, 0);
        for (const auto& t : field("accepting")) {
            long q = to_int(t, lno);
            if (q < 0 || q >= nstates) LineError::raise(lno, "accepting state out of range");
            A.accepting[q] = 1;
        }
        A.succ.assign(A.states, std::vector<std::vector<int>>(sigma.letter_count()));
    } else {
        D.alphabet = sigma;
        D.states = static_cast<size_t>(nstates);
        D.initial = static_cast<int>(initial);
        auto ctoks = field("colors");
        if (ctoks.size() != D.states) LineError::raise(lno, "colors needs one entry per state");
        for (const auto& t : ctoks) {
            long c = to_int(t, lno);
            if (c < 0) LineError::raise(lno, "colors must be non-negative");
            D.color.push_back(static_cast<int>(c));
        }
        D.delta.assign(D.states, std::vector<int>(sigma.letter_count(), -1));
    }

    auto tr = field("transitions");
    if (!tr.empty()) LineError::raise(lno, "'transitions:' takes no inline entries");
    while (true) {
        next_line(true);
        auto toks = split_ws(line);
        if (toks.size() == 1 && toks[0] == "end") break;
        if (toks.size() < 4 || toks[2] != "->")
            LineError::raise(lno, "expected '<src> <letter> -> <targets>'");
        long src = to_int(toks[0], lno);
        long letter = to_int(toks[1], lno);
        if (src < 0 || src >= nstates) LineError::raise(lno, "source state out of range");
        if (letter < 0 || static_cast<size_t>(letter) >= sigma.letter_count())
            LineError::raise(lno, "letter out of range for the declared aps");
        if (is_nba) {
            for (size_t i = 3; i < toks.size(); ++i) {
                long t = to_int(toks[i], lno);
                if (t < 0 || t >= nstates) LineError::raise(lno, "target state out of range");
                A.succ[src][letter].push_back(static_cast<int>(t));
            }
        } else {
            if (toks.size() != 4) LineError::raise(lno, "dpa transitions have exactly one target");
            long t = to_int(toks[3], lno);
            if (t < 0 || t >= nstates) LineError::raise(lno, "target state out of range");
            if (D.delta[src][letter] != -1)
                LineError::raise(lno, "duplicate dpa transition for this state and letter");
            D.delta[src][letter] = static_cast<int>(t);
        }
    }

    if (is_nba) {
        for (auto& row : A.succ)
            for (auto& ts : row) {
                std::sort(ts.begin(), ts.end());
                ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            }
        A.validate();
        return A;
    }
    for (size_t q = 0; q < D.states; ++q)
        for (size_t l = 0; l < sigma.letter_count(); ++l)
            if (D.delta[q][l] < 0)
                throw parse_error("automaton file: dpa transition missing for state " +
                                      std::to_string(q) + ", letter " + std::to_string(l),
                                  0);
    D.validate();
    return D;
}

Automaton read_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open automaton file '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_automaton(buf.str());
}

void write_automaton_file(const Automaton& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open '" + path + "' for writing", 0);
    out << write_automaton(a);
}

} // namespace pdg
