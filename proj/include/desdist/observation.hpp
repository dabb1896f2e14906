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

#ifndef DESDIST_OBSERVATION_HPP
#define DESDIST_OBSERVATION_HPP

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "synthesis.hpp"

namespace desdist {

/// Observable event set Sigma_0 of a natural projection P.
struct ProjectionSpec {
    std::set<std::string> observable;

    bool observes(std::string_view label) const { return observable.count(std::string(label)) > 0; }

    void validate(const Alphabet& alphabet) const {
        for (const auto& l : observable)
            if (!alphabet.contains(l))
                throw Error(ErrorKind::AlphabetMismatch, "observable event '" + l + "' is not in the alphabet");
    }

    static ProjectionSpec all(const Alphabet& alphabet) {
        ProjectionSpec p;
        for (const auto& e : alphabet)
            p.observable.insert(e.label);
        return p;
    }

    /// Sigma_0 restricted to `alphabet`, in the alphabet's order.
    Alphabet observed_alphabet(const Alphabet& alphabet) const {
        Alphabet out;
        for (const auto& e : alphabet)
            if (observes(e.label))
                out.add(e.label, e.controllable);
        return out;
    }

    friend bool operator==(const ProjectionSpec&, const ProjectionSpec&) = default;
};

/// Uncertainty set: sorted source states, closed under unobservable moves.
using Cell = std::vector<StateId>;

struct Projection {
    Generator generator;       ///< over Sigma_0
    std::vector<Cell> cells;   ///< cells[y] = uncertainty set of state y
};

/// Subset construction for P(L(A)) and P(Lm(A)). Cells are discovered
/// breadth-first over Sigma_0 in alphabet order; a cell is marked iff it
/// contains a marked source state.
inline Projection project_with_cells(const Generator& a, const ProjectionSpec& p) {
    p.validate(a.alphabet());
    Alphabet observed = p.observed_alphabet(a.alphabet());
    std::vector<EventId> obs_events, hidden_events;
    for (EventId e = 0; e < a.event_count(); ++e)
        (p.observes(a.alphabet()[e].label) ? obs_events : hidden_events).push_back(e);

    auto close = [&](std::vector<StateId> seed) {
        std::vector<bool> in(a.state_count(), false);
        std::vector<StateId> stack;
        for (StateId s : seed)
            if (!in[s]) {
                in[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (EventId e : hidden_events)
                if (StateId t = a.next(s, e); t != kNoState && !in[t]) {
                    in[t] = true;
                    stack.push_back(t);
                }
        }
        Cell cell;
        for (StateId s = 0; s < a.state_count(); ++s)
            if (in[s])
                cell.push_back(s);
        return cell;
    };

    Projection out;
    std::map<Cell, StateId> index;
    out.cells.push_back(close({a.initial()}));
    index.emplace(out.cells[0], 0);
    std::vector<std::vector<StateId>> rows;
    for (std::size_t head = 0; head < out.cells.size(); ++head) {
        std::vector<StateId> row(obs_events.size(), kNoState);
        for (std::size_t k = 0; k < obs_events.size(); ++k) {
            std::vector<StateId> succ;
            for (StateId s : out.cells[head])
                if (StateId t = a.next(s, obs_events[k]); t != kNoState)
                    succ.push_back(t);
            if (succ.empty())
                continue;
            Cell cell = close(std::move(succ));
            auto [it, fresh] = index.emplace(cell, static_cast<StateId>(out.cells.size()));
            if (fresh)
                out.cells.push_back(std::move(cell));
            row[k] = it->second;
        }
        rows.push_back(std::move(row));
    }
    out.generator = Generator(a.name() + "_proj", observed, out.cells.size());
    for (StateId y = 0; y < out.cells.size(); ++y) {
        out.generator.set_marked(
            y, std::any_of(out.cells[y].begin(), out.cells[y].end(), [&](StateId x) { return a.is_marked(x); }));
        for (std::size_t k = 0; k < obs_events.size(); ++k)
            if (rows[y][k] != kNoState)
                out.generator.add_transition(y, static_cast<EventId>(k), rows[y][k]);
    }
    return out;
}

/// Deterministic recognizer over Sigma_0 of P(L(A)) and P(Lm(A)).
inline Generator project(const Generator& a, const ProjectionSpec& p) { return project_with_cells(a, p).generator; }

/// P^-1 lift of B (over Sigma_0) to `target` (over Sigma containing Sigma_0):
/// self-loops every missing event, result expressed in target's event order.
inline Generator inverse_project(const Generator& b, const Alphabet& target) {
    if (!b.alphabet().subset_of(target))
        throw Error(ErrorKind::AlphabetMismatch, "alphabet of '" + b.name() + "' is not contained in the target alphabet");
    std::vector<EventDecl> missing;
    for (const auto& e : target)
        if (!b.alphabet().contains(e.label))
            missing.push_back(e);
    return reorder(selfloop(b, missing), target);
}

namespace detail {

inline EventSet unobservable_events(const Alphabet& alphabet, const ProjectionSpec& p) {
    EventSet out(alphabet.size());
    for (EventId e = 0; e < alphabet.size(); ++e)
        if (!p.observes(alphabet[e].label))
            out.insert(e);
    return out;
}

} // namespace detail

/// P^-1 P(L(K)) n L(G) = L(K). Marking is ignored.
inline bool is_normal(const Generator& k, const Generator& g, const ProjectionSpec& p) {
    detail::require_same_events(k, g);
    p.validate(k.alphabet());
    if (!compare_languages(k, g).closed)
        throw Error(ErrorKind::NotContained, "L(" + k.name() + ") is not contained in L(" + g.name() + ")");
    Generator lifted = inverse_project(project(k, p), k.alphabet());
    return closed_language_equal(meet(lifted, g), k);
}

/// L(K)(Sigma - Sigma_0) n L(G) within L(K).
inline bool is_paranormal(const Generator& k, const Generator& g, const ProjectionSpec& p) {
    detail::require_same_events(k, g);
    p.validate(k.alphabet());
    return closed_under(k, g, detail::unobservable_events(k.alphabet(), p));
}

/// Relative observability of K w.r.t. (C-bar, G, P): for all s, s' with
/// P(s) = P(s'),
///   (i)  s sigma in K-bar, s' in C-bar, s' sigma in L(G)  =>  s' sigma in K-bar
///   (ii) s in K, s' in C-bar n Lm(G)                      =>  s' in K.
/// K-bar and C-bar are the closed languages of the generators; K is Lm(K).
///
/// Decided on a twin machine whose states are (K-state of s, K-state of s' or
/// none, C-state of s', G-state of s'). Observable events move both strings;
/// unobservable events move one of them.
inline bool is_relative_observable(const Generator& k, const Generator& c, const Generator& g,
                                   const ProjectionSpec& p) {
    detail::require_same_events(k, g);
    detail::require_same_events(c, g);
    p.validate(g.alphabet());
    if (!compare_languages(k, c).marked || !compare_languages(c, g).marked)
        throw Error(ErrorKind::ContainmentViolated, "expected Lm(" + k.name() + ") within Lm(" + c.name() +
                                                        ") within Lm(" + g.name() + ")");
    const auto k_to_c = event_map(k.alphabet(), c.alphabet());
    const auto k_to_g = event_map(k.alphabet(), g.alphabet());
    const auto hidden = detail::unobservable_events(k.alphabet(), p);
    const auto n = k.event_count();

    using Twin = std::array<StateId, 4>;  // k1, k2 (kNoState = outside K-bar), c2, g2
    struct TwinHash {
        std::size_t operator()(const Twin& t) const noexcept {
            std::uint64_t h = 1469598103934665603ULL;
            for (StateId v : t)
                h = (h ^ v) * 1099511628211ULL;
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_set<Twin, TwinHash> seen;
    std::vector<Twin> stack{{k.initial(), k.initial(), c.initial(), g.initial()}};
    seen.insert(stack[0]);
    auto push = [&](const Twin& t) {
        if (seen.insert(t).second)
            stack.push_back(t);
    };

    while (!stack.empty()) {
        Twin t = stack.back();
        stack.pop_back();
        auto [k1, k2, c2, g2] = t;
        for (EventId e = 0; e < n; ++e)
            if (k.defined(k1, e) && g.defined(g2, k_to_g[e]) && (k2 == kNoState || !k.defined(k2, e)))
                return false;  // (i)
        if (k.is_marked(k1) && g.is_marked(g2) && (k2 == kNoState || !k.is_marked(k2)))
            return false;  // (ii)

        for (EventId e = 0; e < n; ++e) {
            StateId nk1 = k.next(k1, e);
            StateId nc2 = c.next(c2, k_to_c[e]);
            StateId ng2 = g.next(g2, k_to_g[e]);
            StateId nk2 = k2 == kNoState ? kNoState : k.next(k2, e);
            if (hidden.contains(e)) {
                if (nk1 != kNoState)
                    push({nk1, k2, c2, g2});
                if (nc2 != kNoState && ng2 != kNoState)
                    push({k1, nk2, nc2, ng2});
            } else if (nk1 != kNoState && nc2 != kNoState && ng2 != kNoState) {
                push({nk1, nk2, nc2, ng2});
            }
        }
    }
    return true;
}

/// Observability is relative observability with C = K.
inline bool is_observable(const Generator& k, const Generator& g, const ProjectionSpec& p) {
    return is_relative_observable(k, k, g, p);
}

struct FeasibleSupervisor {
    Generator supervisor;        ///< SUP_f over the full alphabet
    std::vector<Cell> cells;     ///< uncertainty set behind each SUP_f state
    bool closed_loop_nonblocking = true;
};

/// Feasible supervisor from the projected supervisor PS:
///   F(y, s) = 0 if some x in y disables s;
///   F(y, s) = 1 if s is unobservable, enabled at some x in y, and either
///               uncontrollable or disabled at no x in y.
/// Observable transitions with F = 0 are deleted, F = 1 adds a self-loop.
inline FeasibleSupervisor build_feasible_supervisor(const Generator& sup, const Generator& g, const ProjectionSpec& p) {
    detail::require_same_events(sup, g);
    p.validate(sup.alphabet());
    if (!is_controllable(sup, g))
        throw Error(ErrorKind::NotControllable, "'" + sup.name() + "' is not controllable w.r.t. '" + g.name() + "'");
    const DisabledMap disabled = disabled_events(sup, g);
    const Alphabet& sigma = sup.alphabet();
    auto ps = project_with_cells(sup, p);

    std::vector<EventId> obs_to_sigma;
    for (const auto& e : ps.generator.alphabet())
        obs_to_sigma.push_back(sigma.index_of(e.label));

    Generator f("SUPf", sigma, ps.cells.size());
    for (StateId y = 0; y < ps.cells.size(); ++y) {
        const Cell& cell = ps.cells[y];
        f.set_marked(y, ps.generator.is_marked(y));
        EventSet cut(sigma.size()), somewhere_enabled(sigma.size());
        for (StateId x : cell) {
            for (EventId e : disabled[x])
                if (sigma.controllable(e))
                    cut.insert(e);
            somewhere_enabled |= sup.enabled(x);
        }
        for (EventId k = 0; k < obs_to_sigma.size(); ++k) {
            EventId e = obs_to_sigma[k];
            if (StateId t = ps.generator.next(y, k); t != kNoState && !cut.contains(e))
                f.add_transition(y, e, t);
        }
        for (EventId e = 0; e < sigma.size(); ++e) {
            if (p.observes(sigma[e].label) || !somewhere_enabled.contains(e) || cut.contains(e))
                continue;
            f.add_transition(y, e, y);
        }
    }

    FeasibleSupervisor out;
    std::vector<StateId> renumbering;
    out.supervisor = canonical(f, &renumbering);
    out.cells.resize(out.supervisor.state_count());
    for (StateId y = 0; y < renumbering.size(); ++y)
        if (renumbering[y] != kNoState)
            out.cells[renumbering[y]] = ps.cells[y];
    out.closed_loop_nonblocking = is_nonblocking(meet(out.supervisor, g));
    return out;
}

} // namespace desdist

#endif
