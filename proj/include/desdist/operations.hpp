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

#ifndef DESDIST_OPERATIONS_HPP
#define DESDIST_OPERATIONS_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "generator.hpp"

namespace desdist {

namespace detail {

inline std::uint64_t pack(StateId a, StateId b) { return (std::uint64_t{a} << 32) | b; }

/// Reachable synchronous product. `origin` receives the component pair of
/// every product state. States are discovered breadth-first over the result
/// alphabet, so the output is already canonical.
inline Generator product(const Generator& a, const Generator& b, Alphabet alphabet, const std::vector<EventId>& in_a,
                         const std::vector<EventId>& in_b, std::vector<std::pair<StateId, StateId>>* origin,
                         std::string name) {
    std::vector<std::pair<StateId, StateId>> pairs{{a.initial(), b.initial()}};
    std::unordered_map<std::uint64_t, StateId> index{{pack(a.initial(), b.initial()), 0}};
    std::vector<std::vector<StateId>> rows;
    const auto n_events = alphabet.size();
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        auto [sa, sb] = pairs[head];
        std::vector<StateId> row(n_events, kNoState);
        for (EventId e = 0; e < n_events; ++e) {
            StateId ta = in_a[e] == kNoState ? sa : a.next(sa, in_a[e]);
            StateId tb = in_b[e] == kNoState ? sb : b.next(sb, in_b[e]);
            if (ta == kNoState || tb == kNoState)
                continue;
            auto [it, fresh] = index.emplace(pack(ta, tb), static_cast<StateId>(pairs.size()));
            if (fresh)
                pairs.emplace_back(ta, tb);
            row[e] = it->second;
        }
        rows.push_back(std::move(row));
    }
    Generator out(std::move(name), std::move(alphabet), pairs.size());
    for (StateId s = 0; s < pairs.size(); ++s) {
        out.set_marked(s, a.is_marked(pairs[s].first) && b.is_marked(pairs[s].second));
        for (EventId e = 0; e < n_events; ++e)
            if (rows[s][e] != kNoState)
                out.add_transition(s, e, rows[s][e]);
    }
    if (origin)
        *origin = std::move(pairs);
    return out;
}

inline void require_same_events(const Generator& a, const Generator& b) {
    if (!a.alphabet().same_events(b.alphabet()))
        throw Error(ErrorKind::AlphabetMismatch,
                    "'" + a.name() + "' and '" + b.name() + "' are defined over different alphabets");
}

} // namespace detail

/// Synchronous product A || B: shared events synchronize, private events
/// interleave. The result alphabet lists A's events first, then B's new ones.
inline Generator sync_product(const Generator& a, const Generator& b,
                              std::vector<std::pair<StateId, StateId>>* origin = nullptr) {
    Alphabet joint = a.alphabet();
    for (const auto& ev : b.alphabet()) {
        if (auto id = joint.find(ev.label)) {
            if (joint[*id].controllable != ev.controllable)
                throw Error(ErrorKind::ControllabilityMismatch,
                            "event '" + ev.label + "' has conflicting controllable flags");
        } else {
            joint.add(ev.label, ev.controllable);
        }
    }
    std::vector<EventId> in_a(joint.size(), kNoState), in_b(joint.size(), kNoState);
    for (EventId e = 0; e < joint.size(); ++e) {
        if (auto id = a.alphabet().find(joint[e].label))
            in_a[e] = *id;
        if (auto id = b.alphabet().find(joint[e].label))
            in_b[e] = *id;
    }
    return detail::product(a, b, std::move(joint), in_a, in_b, origin, a.name() + "_" + b.name());
}

/// Language intersection over a common alphabet (result uses A's event order).
inline Generator meet(const Generator& a, const Generator& b,
                      std::vector<std::pair<StateId, StateId>>* origin = nullptr) {
    detail::require_same_events(a, b);
    std::vector<EventId> in_a(a.event_count()), in_b = event_map(a.alphabet(), b.alphabet());
    for (EventId e = 0; e < a.event_count(); ++e)
        in_a[e] = e;
    return detail::product(a, b, a.alphabet(), in_a, in_b, origin, a.name() + "_" + b.name());
}

/// Reachable and coreachable part. Lm is preserved and L becomes the prefix
/// closure of Lm; an empty result is the canonical EMPTY generator.
inline Generator trim(const Generator& g) {
    auto keep = reachable_states(g);
    auto co = coreachable_states(g);
    for (std::size_t s = 0; s < keep.size(); ++s)
        keep[s] = keep[s] && co[s];
    return restrict_to(g, keep);
}

/// Every reachable state can reach a marked state.
inline bool is_nonblocking(const Generator& g) {
    auto reach = reachable_states(g);
    auto co = coreachable_states(g);
    for (std::size_t s = 0; s < reach.size(); ++s)
        if (reach[s] && !co[s])
            return false;
    return true;
}

struct LanguageInclusion {
    bool closed = true;  ///< L(A) subset of L(B)
    bool marked = true;  ///< Lm(A) subset of Lm(B)
};

/// Decides both inclusions exactly by walking A against the sink-completed B.
inline LanguageInclusion compare_languages(const Generator& a, const Generator& b) {
    detail::require_same_events(a, b);
    const auto map = event_map(a.alphabet(), b.alphabet());
    // b-side kNoState stands for the completion sink
    std::unordered_map<std::uint64_t, bool> seen;
    std::vector<std::pair<StateId, StateId>> stack{{a.initial(), b.initial()}};
    seen.emplace(detail::pack(a.initial(), b.initial()), true);
    LanguageInclusion result;
    while (!stack.empty()) {
        auto [sa, sb] = stack.back();
        stack.pop_back();
        if (sb == kNoState)
            result.closed = false;
        if (a.is_marked(sa) && (sb == kNoState || !b.is_marked(sb)))
            result.marked = false;
        if (!result.closed && !result.marked)
            break;
        for (EventId e = 0; e < a.event_count(); ++e) {
            StateId ta = a.next(sa, e);
            if (ta == kNoState)
                continue;
            StateId tb = sb == kNoState ? kNoState : b.next(sb, map[e]);
            if (seen.emplace(detail::pack(ta, tb), true).second)
                stack.emplace_back(ta, tb);
        }
    }
    return result;
}

/// Lm(A) within Lm(B) and L(A) within L(B).
inline bool language_subset(const Generator& a, const Generator& b) {
    auto r = compare_languages(a, b);
    return r.closed && r.marked;
}

inline bool language_equal(const Generator& a, const Generator& b) {
    return language_subset(a, b) && language_subset(b, a);
}

inline bool closed_language_equal(const Generator& a, const Generator& b) {
    return compare_languages(a, b).closed && compare_languages(b, a).closed;
}

inline bool marked_language_equal(const Generator& a, const Generator& b) {
    return compare_languages(a, b).marked && compare_languages(b, a).marked;
}

/// Adds new events to the alphabet and self-loops them at every state.
inline Generator selfloop(const Generator& g, const std::vector<EventDecl>& events) {
    Alphabet widened = g.alphabet();
    for (const auto& ev : events) {
        if (widened.contains(ev.label))
            throw Error(ErrorKind::LabelCollision, "event '" + ev.label + "' already belongs to '" + g.name() + "'");
        widened.add(ev.label, ev.controllable);
    }
    Generator out(g.name(), widened, g.state_count());
    out.set_initial(g.initial());
    for (StateId s = 0; s < g.state_count(); ++s) {
        out.set_marked(s, g.is_marked(s));
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState)
                out.add_transition(s, e, t);
        for (EventId e = static_cast<EventId>(g.event_count()); e < widened.size(); ++e)
            out.add_transition(s, e, s);
    }
    return out;
}

/// Same generator re-expressed over `order` (which must declare the same
/// events), then canonicalized.
inline Generator reorder(const Generator& g, const Alphabet& order) {
    const auto map = event_map(g.alphabet(), order);
    Generator out(g.name(), order, g.state_count());
    out.set_initial(g.initial());
    for (StateId s = 0; s < g.state_count(); ++s) {
        out.set_marked(s, g.is_marked(s));
        for (EventId e = 0; e < g.event_count(); ++e)
            if (StateId t = g.next(s, e); t != kNoState)
                out.add_transition(s, map[e], t);
    }
    return canonical(out);
}

/// L = L(A) u L(B) and Lm = Lm(A) u Lm(B), via the product of the
/// sink-completed operands.
inline Generator language_union(const Generator& a, const Generator& b) {
    detail::require_same_events(a, b);
    const auto map = event_map(a.alphabet(), b.alphabet());
    std::vector<std::pair<StateId, StateId>> pairs{{a.initial(), b.initial()}};
    std::unordered_map<std::uint64_t, StateId> index{{detail::pack(a.initial(), b.initial()), 0}};
    std::vector<std::vector<StateId>> rows;
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        auto [sa, sb] = pairs[head];
        std::vector<StateId> row(a.event_count(), kNoState);
        for (EventId e = 0; e < a.event_count(); ++e) {
            StateId ta = sa == kNoState ? kNoState : a.next(sa, e);
            StateId tb = sb == kNoState ? kNoState : b.next(sb, map[e]);
            if (ta == kNoState && tb == kNoState)
                continue;
            auto [it, fresh] = index.emplace(detail::pack(ta, tb), static_cast<StateId>(pairs.size()));
            if (fresh)
                pairs.emplace_back(ta, tb);
            row[e] = it->second;
        }
        rows.push_back(std::move(row));
    }
    Generator out(a.name() + "_or_" + b.name(), a.alphabet(), pairs.size());
    for (StateId s = 0; s < pairs.size(); ++s) {
        auto [sa, sb] = pairs[s];
        out.set_marked(s, (sa != kNoState && a.is_marked(sa)) || (sb != kNoState && b.is_marked(sb)));
        for (EventId e = 0; e < a.event_count(); ++e)
            if (rows[s][e] != kNoState)
                out.add_transition(s, e, rows[s][e]);
    }
    return out;
}

} // namespace desdist

#endif
