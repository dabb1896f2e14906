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

#ifndef DESDIST_REDUCTION_HPP
#define DESDIST_REDUCTION_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "closed_loop.hpp"
#include "partition.hpp"

namespace desdist {

/// Per-state tables used by supervisor reduction and localization.
struct ReductionProfile {
    std::vector<EventSet> enabled;                  ///< E(x)
    std::vector<EventSet> disabled;                 ///< D(x)
    std::vector<std::vector<EventSet>> disabled_by_block;  ///< D^k(x), empty without a partition
    std::vector<bool> marked_in_sup;                ///< M(x)
    std::vector<bool> marked_in_plant;              ///< T(x)

    std::size_t state_count() const { return enabled.size(); }
};

/// E, D, M, T (and D^k when a partition is given) read off the joint
/// reachability of `sup` with the plant.
inline ReductionProfile compute_profile(const Generator& sup, const Generator& g,
                                        const std::optional<ControlPartition>& partition = std::nullopt) {
    auto jr = joint_reach(sup, g);
    const auto n = sup.state_count();
    const auto m = sup.event_count();
    ReductionProfile prof;
    prof.enabled.reserve(n);
    prof.disabled.assign(n, EventSet(m));
    prof.marked_in_sup.resize(n);
    prof.marked_in_plant.assign(n, false);
    for (StateId x = 0; x < n; ++x) {
        prof.enabled.push_back(sup.enabled(x));
        prof.marked_in_sup[x] = sup.is_marked(x);
        for (StateId q : jr.partners[x]) {
            if (g.is_marked(q))
                prof.marked_in_plant[x] = true;
            for (EventId e = 0; e < m; ++e)
                if (!sup.defined(x, e) && g.defined(q, jr.to_plant[e]))
                    prof.disabled[x].insert(e);
        }
    }
    if (partition) {
        partition->validate(sup.alphabet());
        std::vector<EventSet> blocks;
        for (std::size_t k = 0; k < partition->size(); ++k)
            blocks.push_back(partition->block_events(sup.alphabet(), k));
        prof.disabled_by_block.assign(n, {});
        for (StateId x = 0; x < n; ++x)
            for (const auto& block : blocks) {
                EventSet dk(m);
                for (EventId e : prof.disabled[x].members())
                    if (block.contains(e))
                        dk.insert(e);
                prof.disabled_by_block[x].push_back(std::move(dk));
            }
    }
    return prof;
}

/// Control consistency of x and x': E(x) n D(x') = E(x') n D(x) = {} and
/// T(x) = T(x') => M(x) = M(x'). In block mode D is replaced by D^k.
inline bool control_consistent(const ReductionProfile& prof, StateId x, StateId y,
                               std::optional<std::size_t> block = std::nullopt) {
    if (block && prof.disabled_by_block.empty())
        throw Error(ErrorKind::BadBlockIndex, "profile was computed without a partition");
    if (block && *block >= prof.disabled_by_block.front().size())
        throw Error(ErrorKind::BadBlockIndex, "block " + std::to_string(*block) + " out of range");
    const EventSet& dx = block ? prof.disabled_by_block[x][*block] : prof.disabled[x];
    const EventSet& dy = block ? prof.disabled_by_block[y][*block] : prof.disabled[y];
    if (prof.enabled[x].intersects(dy) || prof.enabled[y].intersects(dx))
        return false;
    if (prof.marked_in_plant[x] == prof.marked_in_plant[y] && prof.marked_in_sup[x] != prof.marked_in_sup[y])
        return false;
    return true;
}

/// Control congruence: disjoint cells listed in order of their smallest member.
struct ControlCover {
    std::vector<std::vector<StateId>> cells;

    std::vector<std::size_t> cell_index(std::size_t state_count) const {
        std::vector<std::size_t> idx(state_count, cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (StateId x : cells[i])
                idx[x] = i;
        return idx;
    }
};

namespace detail {

/// Tentative partition used while growing cells.
struct CellPartition {
    std::vector<std::size_t> owner;                 // state -> cell id
    std::vector<std::vector<StateId>> members;      // cell id -> states (empty when absorbed)

    explicit CellPartition(std::size_t n) : owner(n), members(n) {
        for (StateId x = 0; x < n; ++x) {
            owner[x] = x;
            members[x] = {x};
        }
    }
};

/// Merges the cells of `a` and `b` and then every pair of cells that the
/// successor condition forces together. Fails without side effects if any
/// forced merge joins inconsistent states.
inline bool try_merge(const Generator& sup, const ReductionProfile& prof, std::optional<std::size_t> block,
                      CellPartition& part, StateId a, StateId b) {
    CellPartition work = part;
    std::vector<std::pair<StateId, StateId>> pending{{a, b}};
    while (!pending.empty()) {
        auto [x0, y0] = pending.back();
        pending.pop_back();
        std::size_t c1 = work.owner[x0], c2 = work.owner[y0];
        if (c1 == c2)
            continue;
        for (StateId x : work.members[c1])
            for (StateId y : work.members[c2])
                if (!control_consistent(prof, x, y, block))
                    return false;
        if (c2 < c1)
            std::swap(c1, c2);
        for (StateId y : work.members[c2]) {
            work.owner[y] = c1;
            work.members[c1].push_back(y);
        }
        work.members[c2].clear();
        std::sort(work.members[c1].begin(), work.members[c1].end());
        for (EventId e = 0; e < sup.event_count(); ++e) {
            StateId first = kNoState;
            for (StateId x : work.members[c1]) {
                StateId t = sup.next(x, e);
                if (t == kNoState)
                    continue;
                if (first == kNoState)
                    first = t;
                else if (work.owner[t] != work.owner[first])
                    pending.emplace_back(first, t);
            }
        }
    }
    part = std::move(work);
    return true;
}

} // namespace detail

/// Greedy control congruence. States are scanned in canonical order and each
/// is placed into the first earlier cell whose merge (closed under the
/// successor condition) stays control consistent.
inline ControlCover compute_congruence(const Generator& sup, const ReductionProfile& prof,
                                       std::optional<std::size_t> block = std::nullopt) {
    const auto n = sup.state_count();
    detail::CellPartition part(n);
    for (StateId x = 1; x < n; ++x) {
        if (part.owner[x] != x)
            continue;  // already absorbed by an earlier forced merge
        for (std::size_t c = 0; c < x; ++c) {
            if (part.members[c].empty() || part.owner[x] == c)
                continue;
            if (detail::try_merge(sup, prof, block, part, part.members[c].front(), x))
                break;
        }
    }
    ControlCover cover;
    for (const auto& m : part.members)
        if (!m.empty())
            cover.cells.push_back(m);
    std::sort(cover.cells.begin(), cover.cells.end());
    return cover;
}

/// Checks the cover invariants: partition of the states, pairwise
/// consistency inside cells, and a common successor cell per (cell, event).
inline void verify_cover(const Generator& sup, const ReductionProfile& prof, const ControlCover& cover,
                         std::optional<std::size_t> block = std::nullopt) {
    const auto idx = cover.cell_index(sup.state_count());
    std::size_t total = 0;
    for (const auto& cell : cover.cells)
        total += cell.size();
    if (total != sup.state_count() ||
        std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == cover.cells.size(); }))
        throw Error(ErrorKind::CoverViolation, "cells do not partition the supervisor states");
    for (const auto& cell : cover.cells) {
        if (cell.empty())
            throw Error(ErrorKind::CoverViolation, "empty cell");
        for (StateId x : cell)
            for (StateId y : cell)
                if (!control_consistent(prof, x, y, block))
                    throw Error(ErrorKind::CoverViolation, "inconsistent states share a cell");
        for (EventId e = 0; e < sup.event_count(); ++e) {
            std::optional<std::size_t> target;
            for (StateId x : cell) {
                StateId t = sup.next(x, e);
                if (t == kNoState)
                    continue;
                if (target && *target != idx[t])
                    throw Error(ErrorKind::CoverViolation, "successors of one cell split across cells");
                target = idx[t];
            }
        }
    }
}

/// Induced generator J: one state per cell, initial = cell of x0, marked
/// cells meet Xm, kappa(i, s) = the common successor cell.
inline Generator induced_generator(const Generator& sup, const ControlCover& cover) {
    const auto idx = cover.cell_index(sup.state_count());
    Generator j(sup.name() + "_red", sup.alphabet(), cover.cells.size());
    j.set_initial(static_cast<StateId>(idx[sup.initial()]));
    for (std::size_t i = 0; i < cover.cells.size(); ++i)
        for (StateId x : cover.cells[i]) {
            if (sup.is_marked(x))
                j.set_marked(static_cast<StateId>(i));
            for (EventId e = 0; e < sup.event_count(); ++e)
                if (StateId t = sup.next(x, e); t != kNoState)
                    j.add_transition(static_cast<StateId>(i), e, static_cast<StateId>(idx[t]));
        }
    return j;
}

/// Supervisor reduction by control congruence. Without a block the full
/// disabling map D is respected and L(sup) must lie within L(G); with a block
/// index only D^k constrains merging (localization of a self-looped S_k,
/// which in general leaves L(G)).
inline Generator reduce_supervisor(const Generator& sup, const Generator& g,
                                   const std::optional<ControlPartition>& partition = std::nullopt,
                                   std::optional<std::size_t> block = std::nullopt) {
    detail::require_same_events(sup, g);
    if (block && !partition)
        throw Error(ErrorKind::BadBlockIndex, "a block index needs a partition");
    if (block && *block >= partition->size())
        throw Error(ErrorKind::BadBlockIndex, "block " + std::to_string(*block + 1) + " out of range (" +
                                                  std::to_string(partition->size()) + " blocks)");
    if (!block && !compare_languages(sup, g).closed)
        throw Error(ErrorKind::NotContained, "L(" + sup.name() + ") is not contained in L(" + g.name() + ")");
    auto prof = compute_profile(sup, g, partition);
    auto cover = compute_congruence(sup, prof, block);
    verify_cover(sup, prof, cover, block);
    auto reduced = trim(canonical(induced_generator(sup, cover)));
    reduced.set_name(sup.name() + "_red");
    return reduced;
}

/// The three conditions under which a reduced generator is "normal" w.r.t. the
/// supervisor it came from.
struct ReductionNormality {
    bool states_witnessed = true;       ///< (i) every state reached by a string of L(SUP)
    bool transitions_witnessed = true;  ///< (ii) every transition taken by a string of L(SUP)
    bool marks_witnessed = true;        ///< (iii) every marked state reached by a string of Lm(SUP)

    bool all() const { return states_witnessed && transitions_witnessed && marks_witnessed; }
};

inline ReductionNormality check_reduction_normality(const Generator& reduced, const Generator& sup) {
    detail::require_same_events(reduced, sup);
    auto jr = joint_reach(sup, reduced);
    ReductionNormality out;
    std::vector<bool> reached(reduced.state_count(), false), marked_hit(reduced.state_count(), false);
    std::vector<EventSet> used(reduced.state_count(), EventSet(reduced.event_count()));
    for (auto [x, z] : jr.pairs) {
        reached[z] = true;
        if (sup.is_marked(x))
            marked_hit[z] = true;
        for (EventId e = 0; e < sup.event_count(); ++e)
            if (sup.defined(x, e))
                used[z].insert(jr.to_plant[e]);
    }
    for (StateId z = 0; z < reduced.state_count(); ++z) {
        if (!reached[z])
            out.states_witnessed = false;
        for (EventId e = 0; e < reduced.event_count(); ++e)
            if (reduced.defined(z, e) && !used[z].contains(e))
                out.transitions_witnessed = false;
        if (reduced.is_marked(z) && !marked_hit[z])
            out.marks_witnessed = false;
    }
    return out;
}

/// Lm(G) n Lm(controllers) = Lm(SUP) and L(G) n L(controllers) = L(SUP).
inline bool is_control_equivalent(const Generator& g, const Generator& sup, const std::vector<Generator>& controllers) {
    detail::require_same_events(g, sup);
    Generator loop = g;
    for (const auto& c : controllers)
        loop = meet(loop, c);
    return language_equal(loop, sup);
}

} // namespace desdist

#endif
