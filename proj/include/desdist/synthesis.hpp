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

#ifndef DESDIST_SYNTHESIS_HPP
#define DESDIST_SYNTHESIS_HPP

#include <string>
#include <vector>

#include "closed_loop.hpp"

namespace desdist {

/// Per supervisor state, the events it cuts (event indices in the
/// supervisor's alphabet, ascending).
using DisabledMap = std::vector<std::vector<EventId>>;

struct SynthesisResult {
    Generator supervisor;             ///< trim recognizer of sup C(E)
    DisabledMap disabled;             ///< D(x) per supervisor state
    std::vector<std::string> warnings;
};

/// K-bar Sigma_u n L(G) within K-bar, checked on jointly reachable pairs.
inline bool is_controllable(const Generator& k, const Generator& g) {
    detail::require_same_events(k, g);
    return closed_under(k, g, uncontrollable_events(k.alphabet()));
}

/// D(x): events undefined at x that the plant can execute after some string
/// reaching x. Requires L(sup) within L(G).
inline DisabledMap disabled_events(const Generator& sup, const Generator& g) {
    detail::require_same_events(sup, g);
    auto jr = joint_reach(sup, g);
    if (!jr.contained)
        throw Error(ErrorKind::NotContained, "L(" + sup.name() + ") is not contained in L(" + g.name() + ")");
    DisabledMap out(sup.state_count());
    for (StateId x = 0; x < sup.state_count(); ++x) {
        for (EventId e = 0; e < sup.event_count(); ++e) {
            if (sup.defined(x, e))
                continue;
            for (StateId q : jr.partners[x])
                if (g.defined(q, jr.to_plant[e])) {
                    out[x].push_back(e);
                    break;
                }
        }
    }
    return out;
}

/// Supremal controllable sublanguage of Lm(E) n Lm(G) w.r.t. L(G).
///
/// Works on the reachable product E x G: repeatedly delete states at which
/// the plant can execute an uncontrollable event the product cannot follow,
/// then trim, until nothing changes.
inline SynthesisResult supremal_controllable(const Generator& spec, const Generator& plant) {
    detail::require_same_events(spec, plant);
    SynthesisResult result;
    if (!is_nonblocking(plant))
        result.warnings.push_back("plant '" + plant.name() + "' is blocking");

    std::vector<std::pair<StateId, StateId>> origin;
    Generator prod = meet(spec, plant, &origin);
    const auto to_plant = event_map(prod.alphabet(), plant.alphabet());
    const auto uncontrollable = uncontrollable_events(prod.alphabet()).members();
    const auto n = prod.state_count();

    std::vector<bool> alive(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId p = 0; p < n; ++p) {
            if (!alive[p])
                continue;
            StateId q = origin[p].second;
            for (EventId e : uncontrollable) {
                if (!plant.defined(q, to_plant[e]))
                    continue;
                StateId t = prod.next(p, e);
                if (t == kNoState || !alive[t]) {
                    alive[p] = false;
                    changed = true;
                    break;
                }
            }
        }
        // trim among surviving states
        Generator live = prod;
        for (StateId p = 0; p < n; ++p)
            for (EventId e = 0; e < prod.event_count(); ++e)
                if (StateId t = prod.next(p, e); t != kNoState && (!alive[p] || !alive[t]))
                    live.remove_transition(p, e);
        for (StateId p = 0; p < n; ++p)
            if (!alive[p])
                live.set_marked(p, false);
        auto reach = reachable_states(live);
        auto co = coreachable_states(live);
        for (StateId p = 0; p < n; ++p) {
            if (alive[p] && !(reach[p] && co[p])) {
                alive[p] = false;
                changed = true;
            }
        }
    }

    result.supervisor = restrict_to(prod, alive);
    result.supervisor.set_name("SUP");
    result.disabled = disabled_events(result.supervisor, plant);
    return result;
}

} // namespace desdist

#endif
