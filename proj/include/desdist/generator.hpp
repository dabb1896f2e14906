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

#ifndef DESDIST_GENERATOR_HPP
#define DESDIST_GENERATOR_HPP

#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "alphabet.hpp"
#include "error.hpp"

namespace desdist {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Deterministic finite generator G = (Q, Sigma, delta, q0, Qm) over an
/// attributed alphabet. Transitions are stored densely, one row per state.
///
/// Plants, specifications, supervisors and local controllers all share this
/// representation. Library operations never modify their inputs; they return
/// fresh generators in canonical numbering (see canonical()).
class Generator {
public:
    Generator() : Generator("EMPTY", Alphabet{}, 1) {}

    Generator(std::string name, Alphabet alphabet, std::size_t states = 1)
        : name_(std::move(name)), alphabet_(std::move(alphabet)) {
        if (states == 0)
            throw Error(ErrorKind::InvalidState, "a generator needs at least one state");
        marked_.assign(states, false);
        delta_.assign(states * alphabet_.size(), kNoState);
    }

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return marked_.size(); }
    std::size_t event_count() const { return alphabet_.size(); }

    StateId initial() const { return initial_; }
    void set_initial(StateId s) {
        check_state(s);
        initial_ = s;
    }

    bool is_marked(StateId s) const { return marked_[s]; }
    void set_marked(StateId s, bool marked = true) {
        check_state(s);
        marked_[s] = marked;
    }
    std::vector<StateId> marked_states() const {
        std::vector<StateId> out;
        for (StateId s = 0; s < state_count(); ++s)
            if (marked_[s])
                out.push_back(s);
        return out;
    }

    StateId add_state(bool marked = false) {
        auto id = static_cast<StateId>(state_count());
        marked_.push_back(marked);
        delta_.resize(delta_.size() + alphabet_.size(), kNoState);
        return id;
    }

    StateId next(StateId s, EventId e) const { return delta_[static_cast<std::size_t>(s) * alphabet_.size() + e]; }
    bool defined(StateId s, EventId e) const { return next(s, e) != kNoState; }

    void add_transition(StateId from, EventId e, StateId to) {
        check_state(from);
        check_state(to);
        if (e >= alphabet_.size())
            throw Error(ErrorKind::UnknownLabel, "event index out of range");
        auto& slot = delta_[static_cast<std::size_t>(from) * alphabet_.size() + e];
        if (slot != kNoState && slot != to)
            throw Error(ErrorKind::Nondeterminism, "state " + std::to_string(from) + " already has a transition on '" +
                                                       alphabet_[e].label + "'");
        slot = to;
    }
    void add_transition(StateId from, std::string_view label, StateId to) {
        add_transition(from, alphabet_.index_of(label), to);
    }
    void remove_transition(StateId from, EventId e) {
        check_state(from);
        delta_[static_cast<std::size_t>(from) * alphabet_.size() + e] = kNoState;
    }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (auto t : delta_)
            n += t != kNoState;
        return n;
    }

    /// Events defined at state s.
    EventSet enabled(StateId s) const {
        EventSet out(alphabet_.size());
        for (EventId e = 0; e < alphabet_.size(); ++e)
            if (defined(s, e))
                out.insert(e);
        return out;
    }

    /// Structural equality (names are ignored).
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.alphabet_ == b.alphabet_ && a.initial_ == b.initial_ && a.marked_ == b.marked_ && a.delta_ == b.delta_;
    }

private:
    void check_state(StateId s) const {
        if (s >= state_count())
            throw Error(ErrorKind::InvalidState, "state " + std::to_string(s) + " out of range (" +
                                                     std::to_string(state_count()) + " states)");
    }

    std::string name_;
    Alphabet alphabet_;
    StateId initial_ = 0;
    std::vector<bool> marked_;
    std::vector<StateId> delta_;
};

/// The canonical EMPTY generator: one unmarked state, no transitions.
inline Generator empty_generator(std::string name, Alphabet alphabet) {
    return Generator(std::move(name), std::move(alphabet), 1);
}

inline bool is_empty(const Generator& g) {
    return g.state_count() == 1 && !g.is_marked(0) && g.transition_count() == 0;
}

/// One marked state with a self-loop on every event: L = Lm = Sigma*.
inline Generator universal_generator(std::string name, Alphabet alphabet) {
    Generator g(std::move(name), std::move(alphabet), 1);
    g.set_marked(0);
    for (EventId e = 0; e < g.event_count(); ++e)
        g.add_transition(0, e, 0);
    return g;
}

/// Breadth-first renumbering from the initial state, expanding events in
/// alphabet order; unreachable states are dropped. The mapping old -> new
/// (kNoState for dropped states) is written to `renumbering` when supplied.
inline Generator canonical(const Generator& g, std::vector<StateId>* renumbering = nullptr) {
    std::vector<StateId> order;
    std::vector<StateId> fresh(g.state_count(), kNoState);
    fresh[g.initial()] = 0;
    order.push_back(g.initial());
    for (std::size_t head = 0; head < order.size(); ++head) {
        StateId s = order[head];
        for (EventId e = 0; e < g.event_count(); ++e) {
            StateId t = g.next(s, e);
            if (t != kNoState && fresh[t] == kNoState) {
                fresh[t] = static_cast<StateId>(order.size());
                order.push_back(t);
            }
        }
    }
    Generator out(g.name(), g.alphabet(), order.size());
    for (StateId s = 0; s < order.size(); ++s) {
        out.set_marked(s, g.is_marked(order[s]));
        for (EventId e = 0; e < g.event_count(); ++e) {
            StateId t = g.next(order[s], e);
            if (t != kNoState)
                out.add_transition(s, e, fresh[t]);
        }
    }
    if (renumbering)
        *renumbering = std::move(fresh);
    return out;
}

inline bool is_canonical(const Generator& g) { return canonical(g) == g; }

/// States reachable from the initial state.
inline std::vector<bool> reachable_states(const Generator& g) {
    std::vector<bool> seen(g.state_count(), false);
    std::vector<StateId> stack{g.initial()};
    seen[g.initial()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (EventId e = 0; e < g.event_count(); ++e) {
            StateId t = g.next(s, e);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

/// States from which some marked state is reachable.
inline std::vector<bool> coreachable_states(const Generator& g) {
    std::vector<std::vector<StateId>> preds(g.state_count());
    for (StateId s = 0; s < g.state_count(); ++s)
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState)
                preds[t].push_back(s);
    std::vector<bool> seen(g.state_count(), false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < g.state_count(); ++s)
        if (g.is_marked(s)) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId p : preds[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

/// Sub-generator on the states flagged in `keep` (transitions into dropped
/// states are removed), canonicalized. Returns EMPTY if the initial state is dropped.
inline Generator restrict_to(const Generator& g, const std::vector<bool>& keep) {
    if (!keep[g.initial()])
        return empty_generator(g.name(), g.alphabet());
    Generator out(g.name(), g.alphabet(), g.state_count());
    out.set_initial(g.initial());
    for (StateId s = 0; s < g.state_count(); ++s) {
        if (!keep[s])
            continue;
        out.set_marked(s, g.is_marked(s));
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState && keep[t])
                out.add_transition(s, e, t);
    }
    return canonical(out);
}

} // namespace desdist

#endif
