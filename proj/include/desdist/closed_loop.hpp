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

#ifndef DESDIST_CLOSED_LOOP_HPP
#define DESDIST_CLOSED_LOOP_HPP

#include <algorithm>
#include <unordered_set>
#include <utility>
#include <vector>

#include "operations.hpp"

namespace desdist {

/// Annotation of a controller against a plant: for every controller state,
/// the plant states reached jointly with it by some string of L(K) n L(G).
/// Existential quantifiers over strings ("some s reaching x with
/// delta(q0, s sigma) defined") become non-emptiness tests over `partners`.
struct JointReach {
    std::vector<std::vector<StateId>> partners;       ///< sorted, per controller state
    std::vector<std::pair<StateId, StateId>> pairs;   ///< every reachable (controller, plant) pair
    std::vector<EventId> to_plant;                    ///< controller event index -> plant event index
    bool contained = true;                            ///< L(K) n L(G) never leaves L(G), i.e. L(K) within L(G)
};

inline JointReach joint_reach(const Generator& controller, const Generator& plant) {
    JointReach jr;
    jr.to_plant = event_map(controller.alphabet(), plant.alphabet());
    jr.partners.resize(controller.state_count());
    std::unordered_set<std::uint64_t> seen{detail::pack(controller.initial(), plant.initial())};
    jr.pairs.emplace_back(controller.initial(), plant.initial());
    for (std::size_t head = 0; head < jr.pairs.size(); ++head) {
        auto [x, q] = jr.pairs[head];
        jr.partners[x].push_back(q);
        for (EventId e = 0; e < controller.event_count(); ++e) {
            StateId tx = controller.next(x, e);
            if (tx == kNoState)
                continue;
            StateId tq = plant.next(q, jr.to_plant[e]);
            if (tq == kNoState) {
                jr.contained = false;
                continue;
            }
            if (seen.insert(detail::pack(tx, tq)).second)
                jr.pairs.emplace_back(tx, tq);
        }
    }
    for (auto& p : jr.partners)
        std::sort(p.begin(), p.end());
    return jr;
}

/// True iff for every jointly reachable (x, q) and every event in `events`
/// (controller indices) that the plant can execute at q, the controller also
/// defines it at x: K-bar * events n L(G) within K-bar.
inline bool closed_under(const Generator& controller, const Generator& plant, const EventSet& events) {
    auto jr = joint_reach(controller, plant);
    for (auto [x, q] : jr.pairs)
        for (EventId e : events.members())
            if (!controller.defined(x, e) && plant.defined(q, jr.to_plant[e]))
                return false;
    return true;
}

inline EventSet uncontrollable_events(const Alphabet& alphabet) {
    EventSet out(alphabet.size());
    for (EventId e = 0; e < alphabet.size(); ++e)
        if (!alphabet.controllable(e))
            out.insert(e);
    return out;
}

inline EventSet controllable_events(const Alphabet& alphabet) {
    EventSet out(alphabet.size());
    for (EventId e = 0; e < alphabet.size(); ++e)
        if (alphabet.controllable(e))
            out.insert(e);
    return out;
}

} // namespace desdist

#endif
