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

#ifndef DESDIST_LOCALIZATION_HPP
#define DESDIST_LOCALIZATION_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "reduction.hpp"
#include "synthesis.hpp"

namespace desdist {

struct LocalControllerSet {
    ControlPartition partition;
    std::vector<Generator> locals;   ///< S_i, one per block, over the full alphabet
    std::vector<Generator> reduced;  ///< block-mode reduction of each S_i
};

namespace detail {

inline void check_block(const ControlPartition& partition, std::size_t i) {
    if (i >= partition.size())
        throw Error(ErrorKind::BadBlockIndex, "block " + std::to_string(i + 1) + " out of range (" +
                                                  std::to_string(partition.size()) + " blocks)");
}

} // namespace detail

/// S_i: the supervisor with every controllable event outside block i
/// self-looped wherever the supervisor disables it, i.e. wherever it is
/// undefined but the plant can execute it after some string reaching the state.
inline Generator build_selflooped(const Generator& sup, const Generator& g, const ControlPartition& partition,
                                  std::size_t i) {
    detail::require_same_events(sup, g);
    partition.validate(sup.alphabet());
    detail::check_block(partition, i);
    const DisabledMap disabled = disabled_events(sup, g);
    const EventSet own = partition.block_events(sup.alphabet(), i);
    Generator s = sup;
    s.set_name(sup.name() + "_S" + std::to_string(i + 1));
    for (StateId x = 0; x < sup.state_count(); ++x)
        for (EventId e : disabled[x])
            if (sup.alphabet().controllable(e) && !own.contains(e))
                s.add_transition(x, e, x);
    return s;
}

/// Generalized localization: one self-looped S_i per block, each reduced
/// with the block-relaxed consistency relation.
inline LocalControllerSet localize(const Generator& sup, const Generator& g, const ControlPartition& partition) {
    detail::require_same_events(sup, g);
    partition.validate(sup.alphabet());
    LocalControllerSet out;
    out.partition = partition;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        out.locals.push_back(build_selflooped(sup, g, partition, i));
        auto red = reduce_supervisor(out.locals.back(), g, partition, i);
        red.set_name("LOC" + std::to_string(i + 1));
        out.reduced.push_back(std::move(red));
    }
    return out;
}

/// LOC disables only events of `block`: whenever s is in L(G) n L(LOC) and
/// s sigma is in L(G) but not in L(LOC), sigma belongs to `block`.
///
/// With `within`, s additionally ranges only over L(within), i.e. the check
/// is made along the closed-loop behavior of a monolithic supervisor.
inline bool is_local_controller(const Generator& loc, const Generator& g, const std::vector<std::string>& block,
                                const std::optional<Generator>& within = std::nullopt) {
    detail::require_same_events(loc, g);
    for (const auto& l : block)
        if (!loc.alphabet().contains(l))
            throw Error(ErrorKind::AlphabetMismatch, "block event '" + l + "' is not in the alphabet");
    // context tracks s over L(G) (n L(within)); plant_of recovers the plant state
    Generator context = g;
    std::vector<StateId> plant_of(g.state_count());
    for (StateId q = 0; q < g.state_count(); ++q)
        plant_of[q] = q;
    if (within) {
        detail::require_same_events(*within, g);
        std::vector<std::pair<StateId, StateId>> origin;
        context = meet(g, *within, &origin);
        plant_of.clear();
        for (auto [q, w] : origin)
            plant_of.push_back(q);
    }
    auto jr = joint_reach(loc, context);
    for (auto [z, c] : jr.pairs)
        for (EventId e = 0; e < loc.event_count(); ++e) {
            if (loc.defined(z, e) || !g.defined(plant_of[c], g.alphabet().index_of(loc.alphabet()[e].label)))
                continue;
            if (std::find(block.begin(), block.end(), loc.alphabet()[e].label) == block.end())
                return false;
        }
    return true;
}

/// K_s = n_i K_i and K_s-bar = n_i K_i-bar, with K_i = Lm(S_i) n Lm(G) and
/// K_i-bar = L(S_i) n L(G); compared against SUP met with G.
inline bool verify_proposition1(const Generator& g, const Generator& sup, const std::vector<Generator>& locals) {
    detail::require_same_events(g, sup);
    Generator joint = g;
    for (const auto& s : locals)
        joint = meet(joint, s);
    return language_equal(joint, meet(sup, g));
}

} // namespace desdist

#endif
