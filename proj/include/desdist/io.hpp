/*
 * Copyright 2026 The desdist Authors
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

#ifndef DESDIST_IO_HPP
#define DESDIST_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generator.hpp"
#include "partition.hpp"

namespace desdist {

// Automaton file (canonical form: LF endings, single spaces, fixed section order):
//
//   automaton NAME
//   states N
//   marked i j ...
//   events
//   LABEL c|u
//   trans
//   SRC LABEL DST
//   end
//
// Blank lines and lines starting with '#' are ignored by the parser.

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    // next significant line split into tokens; false at end of input
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            auto toks = split_ws(line);
            if (toks.empty() || toks.front().front() == '#')
                continue;
            tokens = std::move(toks);
            return true;
        }
        return false;
    }
};

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
        throw ParseError(ErrorKind::SyntaxError, line, "expected a state index, got '" + tok + "'");
    return std::stoul(tok);
}

} // namespace detail

inline Generator parse_automaton(const std::string& text) {
    detail::LineReader r(text);
    std::vector<std::string> t;
    auto expect = [&](const char* keyword, std::size_t arity) {
        if (!r.next(t))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, std::string("unexpected end of input, expected '") +
                                                                    keyword + "'");
        if (t[0] != keyword || (arity != std::size_t(-1) && t.size() != arity + 1))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, std::string("expected '") + keyword + "' line");
    };

    expect("automaton", 1);
    std::string name = t[1];
    if (!is_valid_label(name))
        throw ParseError(ErrorKind::SyntaxError, r.line_no, "invalid automaton name '" + name + "'");
    expect("states", 1);
    std::size_t n = detail::parse_index(t[1], r.line_no);
    if (n == 0)
        throw ParseError(ErrorKind::SemanticError, r.line_no, "an automaton needs at least one state");
    expect("marked", std::size_t(-1));
    std::vector<std::size_t> marked;
    const auto marked_line = r.line_no;
    for (std::size_t i = 1; i < t.size(); ++i)
        marked.push_back(detail::parse_index(t[i], marked_line));
    expect("events", 0);

    Alphabet alphabet;
    while (true) {
        if (!r.next(t))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "unexpected end of input in 'events'");
        if (t[0] == "trans" && t.size() == 1)
            break;
        if (t.size() != 2 || (t[1] != "c" && t[1] != "u"))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "expected 'LABEL c|u'");
        if (!is_valid_label(t[0]))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "invalid event label '" + t[0] + "'");
        if (alphabet.contains(t[0]))
            throw ParseError(ErrorKind::SemanticError, r.line_no, "duplicate event label '" + t[0] + "'");
        alphabet.add(t[0], t[1] == "c");
    }

    Generator g(name, alphabet, n);
    for (auto m : marked) {
        if (m >= n)
            throw ParseError(ErrorKind::SemanticError, marked_line,
                             "marked state " + std::to_string(m) + " out of range");
        g.set_marked(static_cast<StateId>(m));
    }
    while (true) {
        if (!r.next(t))
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "missing 'end'");
        if (t[0] == "end" && t.size() == 1)
            break;
        if (t.size() != 3)
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "expected 'SRC LABEL DST'");
        auto src = detail::parse_index(t[0], r.line_no);
        auto dst = detail::parse_index(t[2], r.line_no);
        if (src >= n || dst >= n)
            throw ParseError(ErrorKind::SemanticError, r.line_no, "state index out of range");
        auto e = alphabet.find(t[1]);
        if (!e)
            throw ParseError(ErrorKind::SemanticError, r.line_no, "undeclared event '" + t[1] + "'");
        if (g.defined(static_cast<StateId>(src), *e) && g.next(static_cast<StateId>(src), *e) != dst)
            throw ParseError(ErrorKind::SemanticError, r.line_no, "nondeterministic transition on '" + t[1] + "'");
        g.add_transition(static_cast<StateId>(src), *e, static_cast<StateId>(dst));
    }
    if (r.next(t))
        throw ParseError(ErrorKind::SyntaxError, r.line_no, "content after 'end'");
    return g;
}

/// Canonical text: the generator is renumbered breadth-first first, so
/// unreachable states are not written.
inline std::string serialize_automaton(const Generator& input) {
    Generator g = canonical(input);
    std::ostringstream out;
    out << "automaton " << g.name() << '\n';
    out << "states " << g.state_count() << '\n';
    out << "marked";
    for (StateId s : g.marked_states())
        out << ' ' << s;
    out << '\n' << "events\n";
    for (const auto& e : g.alphabet())
        out << e.label << ' ' << (e.controllable ? 'c' : 'u') << '\n';
    out << "trans\n";
    for (StateId s = 0; s < g.state_count(); ++s)
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState)
                out << s << ' ' << g.alphabet()[e].label << ' ' << t << '\n';
    out << "end\n";
    return out.str();
}

// Partition file:
//
//   partition NAME
//   block: l1 l2 ...
//   ...

inline ControlPartition parse_partition(const std::string& text) {
    detail::LineReader r(text);
    std::vector<std::string> t;
    if (!r.next(t) || t[0] != "partition" || t.size() != 2)
        throw ParseError(ErrorKind::SyntaxError, r.line_no, "expected 'partition NAME'");
    std::string name = t[1];
    if (!is_valid_label(name))
        throw ParseError(ErrorKind::SyntaxError, r.line_no, "invalid partition name '" + name + "'");
    std::vector<std::vector<std::string>> blocks;
    std::set<std::string> seen;
    while (r.next(t)) {
        if (t[0] != "block:")
            throw ParseError(ErrorKind::SyntaxError, r.line_no, "expected 'block: LABEL ...'");
        if (t.size() < 2)
            throw ParseError(ErrorKind::SemanticError, r.line_no, "empty block");
        std::vector<std::string> block(t.begin() + 1, t.end());
        for (const auto& l : block) {
            if (!is_valid_label(l))
                throw ParseError(ErrorKind::SyntaxError, r.line_no, "invalid event label '" + l + "'");
            if (!seen.insert(l).second)
                throw ParseError(ErrorKind::SemanticError, r.line_no, "event '" + l + "' is in more than one block");
        }
        blocks.push_back(std::move(block));
    }
    if (blocks.empty())
        throw ParseError(ErrorKind::SemanticError, r.line_no, "partition has no blocks");
    return ControlPartition(name, std::move(blocks));
}

inline std::string serialize_partition(const ControlPartition& p) {
    std::ostringstream out;
    out << "partition " << p.name() << '\n';
    for (const auto& block : p.blocks()) {
        out << "block:";
        for (const auto& l : block)
            out << ' ' << l;
        out << '\n';
    }
    return out.str();
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes via a temporary sibling file and rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::IoError, "cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush())
            throw Error(ErrorKind::IoError, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error(ErrorKind::IoError, "cannot rename '" + tmp.string() + "': " + ec.message());
}

inline Generator load_automaton(const std::filesystem::path& path) { return parse_automaton(read_file(path)); }
inline ControlPartition load_partition(const std::filesystem::path& path) { return parse_partition(read_file(path)); }

/// Graphviz rendering; no format guarantees.
inline std::string to_dot(const Generator& g) {
    std::ostringstream out;
    out << "digraph " << g.name() << " {\n  rankdir=LR;\n  init [shape=point];\n";
    for (StateId s = 0; s < g.state_count(); ++s)
        out << "  " << s << " [shape=" << (g.is_marked(s) ? "doublecircle" : "circle") << "];\n";
    out << "  init -> " << g.initial() << ";\n";
    for (StateId s = 0; s < g.state_count(); ++s)
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState)
                out << "  " << s << " -> " << t << " [label=\"" << g.alphabet()[e].label << '"'
                    << (g.alphabet().controllable(e) ? "" : ", style=dashed") << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace desdist

#endif
