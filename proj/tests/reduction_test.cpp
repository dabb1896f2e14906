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

#include <gtest/gtest.h>

#include "support/build.hpp"
#include "support/oracles.hpp"
#include "support/random_automata.hpp"

using namespace desdist;
using namespace desdist::testing;

namespace {

struct Instance {
    Generator plant;
    Generator sup;
};

/// Random plant and nonempty supervisor; plants up to `max_states` states.
Instance random_instance(Rng& rng, std::size_t max_states, std::size_t max_events) {
    for (;;) {
        auto alpha = random_alphabet(rng, pick(rng, 1, max_events));
        auto g = random_plant(rng, alpha, {pick(rng, 1, max_states), 0.4, 0.4, false});
        auto e = random_generator(rng, alpha, {pick(rng, 1, 4), 0.6, 0.5, false}, "E");
        auto sup = supremal_controllable(e, g).supervisor;
        if (!is_empty(sup))
            return {g, sup};
    }
}

Generator au_plant() { return make("G", {{"a", true}, {"u", false}}, 3, {2}, {{0, "a", 1}, {1, "u", 2}}); }

} // namespace

// profile ----------------------------------------------------------------------

TEST(Profile, SupervisorEqualToPlant) {
    auto g = make("G", {{"a", true}, {"b", false}}, 3, {0, 2}, {{0, "a", 1}, {1, "b", 2}, {2, "a", 0}});
    auto prof = compute_profile(g, g);
    ASSERT_EQ(prof.state_count(), 3U);
    for (StateId x = 0; x < 3; ++x) {
        EXPECT_TRUE(prof.disabled[x].empty());
        EXPECT_EQ(prof.enabled[x].members(), g.enabled(x).members());
        EXPECT_EQ(prof.marked_in_sup[x], prof.marked_in_plant[x]);
    }
    EXPECT_TRUE(prof.disabled_by_block.empty());
}

TEST(Profile, AuPlantTables) {
    auto g = au_plant();
    auto sup = supremal_controllable(g, g).supervisor;  // marked {au}
    auto prof = compute_profile(sup, g);
    const auto a = sup.alphabet().index_of("a"), u = sup.alphabet().index_of("u");
    EXPECT_EQ(prof.enabled[0].members(), (std::vector<EventId>{a}));
    EXPECT_EQ(prof.enabled[1].members(), (std::vector<EventId>{u}));
    EXPECT_TRUE(prof.enabled[2].empty());
    for (StateId x = 0; x < 3; ++x)
        EXPECT_TRUE(prof.disabled[x].empty());
    EXPECT_EQ(prof.marked_in_plant, (std::vector<bool>{false, false, true}));
    EXPECT_EQ(prof.marked_in_sup, (std::vector<bool>{false, false, true}));
}

TEST(Profile, GuidewayBlockTablesSplitD) {
    auto m = gen_guideway();
    auto sup = supremal_controllable(m.spec, m.plant).supervisor;
    const auto& part = m.partitions.at("per_event");
    auto prof = compute_profile(sup, m.plant, part);
    std::size_t nonempty = 0;
    for (StateId x = 0; x < sup.state_count(); ++x) {
        EXPECT_FALSE(prof.enabled[x].intersects(prof.disabled[x]));
        EventSet joined(sup.event_count());
        for (const auto& dk : prof.disabled_by_block[x])
            joined |= dk;
        EXPECT_EQ(joined, prof.disabled[x]);
        for (EventId e : prof.disabled[x].members())
            EXPECT_TRUE(sup.alphabet().controllable(e));
        nonempty += !prof.disabled[x].empty();
    }
    EXPECT_EQ(nonempty, 8U);
}

// consistency --------------------------------------------------------------------------

TEST(ControlConsistency, Examples) {
    auto g = au_plant();
    // supervisor cutting a at the initial state: the two states of G-prefix clash
    auto g2 = make("G", {{"a", true}, {"b", true}}, 3, {1, 2}, {{0, "a", 1}, {1, "a", 2}});
    auto sup = make("S", {{"a", true}, {"b", true}}, 2, {1}, {{0, "a", 1}});
    auto prof = compute_profile(sup, g2);
    EXPECT_TRUE(control_consistent(prof, 0, 0));
    EXPECT_TRUE(control_consistent(prof, 1, 1));
    EXPECT_FALSE(control_consistent(prof, 0, 1));  // a in E(0), a in D(1)
    EXPECT_FALSE(control_consistent(prof, 1, 0));
    (void)g;
}

TEST(ControlConsistency, MarkingConditionAlone) {
    // plant 0 -a-> 1, both marked; supervisor keeps the transition but marks only 0
    auto g = make("G", {{"a", true}}, 2, {0, 1}, {{0, "a", 1}});
    auto sup = make("S", {{"a", true}}, 2, {0}, {{0, "a", 1}});
    auto prof = compute_profile(sup, g);
    EXPECT_TRUE(prof.disabled[0].empty() && prof.disabled[1].empty());
    EXPECT_TRUE(prof.marked_in_plant[0] && prof.marked_in_plant[1]);
    EXPECT_FALSE(control_consistent(prof, 0, 1));
    // if the plant does not mark state 1 the marking difference is harmless
    auto g2 = make("G", {{"a", true}}, 2, {0}, {{0, "a", 1}});
    EXPECT_TRUE(control_consistent(compute_profile(sup, g2), 0, 1));
}

TEST(ControlConsistency, BlockModeIgnoresOtherBlocks) {
    auto g = make("G", {{"a", true}, {"b", true}}, 3, {0, 1, 2}, {{0, "a", 1}, {1, "a", 2}, {0, "b", 0}});
    auto sup = make("S", {{"a", true}, {"b", true}}, 2, {0, 1}, {{0, "a", 1}, {0, "b", 0}});
    ControlPartition part("p", {{"a"}, {"b"}});
    auto prof = compute_profile(sup, g, part);
    EXPECT_FALSE(control_consistent(prof, 0, 1));
    EXPECT_FALSE(control_consistent(prof, 0, 1, 0));
    EXPECT_TRUE(control_consistent(prof, 0, 1, 1));
    EXPECT_THROW(control_consistent(prof, 0, 1, 2), Error);
    EXPECT_THROW(control_consistent(compute_profile(sup, g), 0, 1, 0), Error);
}

// reduction -------------------------------------------------------------------------

TEST(Reduce, OneStateSupervisorIsFixed) {
    auto g = make("G", {{"a", true}}, 1, {0}, {{0, "a", 0}});
    auto r = reduce_supervisor(g, g);
    EXPECT_EQ(r.state_count(), 1U);
    EXPECT_TRUE(language_equal(r, g));
    EXPECT_EQ(r.name(), "G_red");
}

TEST(Reduce, FullyConsistentSupervisorCollapses) {
    auto g = make("G", {{"a", true}, {"u", false}}, 3, {0, 1, 2}, {{0, "a", 1}, {1, "u", 2}, {2, "a", 0}});
    auto r = reduce_supervisor(g, g);
    EXPECT_EQ(r.state_count(), 1U);
    EXPECT_EQ(r.transition_count(), 2U);
    EXPECT_TRUE(r.is_marked(0));
    EXPECT_TRUE(is_control_equivalent(g, g, {r}));
}

TEST(Reduce, GuidewayMonolithic) {
    auto m = gen_guideway();
    auto sup = supremal_controllable(m.spec, m.plant).supervisor;
    auto r = reduce_supervisor(sup, m.plant);
    EXPECT_LE(r.state_count(), sup.state_count());
    EXPECT_EQ(r.state_count(), 3U);
    EXPECT_TRUE(is_control_equivalent(m.plant, sup, {r}));
    EXPECT_TRUE(check_reduction_normality(r, sup).all());
}

TEST(Reduce, Errors) {
    auto g = au_plant();
    auto outside = make("K", {{"a", true}, {"u", false}}, 2, {1}, {{0, "u", 1}});
    try {
        reduce_supervisor(outside, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotContained);
    }
    ControlPartition part("p", {{"a"}});
    try {
        reduce_supervisor(g, g, part, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadBlockIndex);
    }
    EXPECT_THROW(reduce_supervisor(g, g, std::nullopt, 0), Error);
    EXPECT_THROW(reduce_supervisor(g, make("H", {{"a", true}}, 1, {0}, {})), Error);
}

TEST(Cover, VerifyRejectsInconsistentCell) {
    auto g = make("G", {{"a", true}, {"b", true}}, 3, {1, 2}, {{0, "a", 1}, {1, "a", 2}});
    auto sup = make("S", {{"a", true}, {"b", true}}, 2, {1}, {{0, "a", 1}});
    auto prof = compute_profile(sup, g);
    try {
        verify_cover(sup, prof, ControlCover{{{0, 1}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CoverViolation);
    }
    EXPECT_THROW(verify_cover(sup, prof, ControlCover{{{0}}}), Error);  // state 1 uncovered
    EXPECT_NO_THROW(verify_cover(sup, prof, ControlCover{{{0}, {1}}}));
}

TEST(Cover, VerifyRejectsSplitSuccessors) {
    // 0 -a-> 2, 1 -a-> 3; merging {0,1} while separating 2 and 3 violates the successor rule
    auto g = make("G", {{"a", true}, {"b", true}}, 4, {2, 3}, {{0, "a", 2}, {0, "b", 1}, {1, "a", 3}});
    auto prof = compute_profile(g, g);
    EXPECT_THROW(verify_cover(g, prof, ControlCover{{{0, 1}, {2}, {3}}}), Error);
    EXPECT_NO_THROW(verify_cover(g, prof, ControlCover{{{0, 1}, {2, 3}}}));
}

TEST(Cover, InducedGeneratorFollowsCells) {
    auto g = make("G", {{"a", true}, {"b", true}}, 4, {2, 3}, {{0, "a", 2}, {0, "b", 1}, {1, "a", 3}});
    auto j = induced_generator(g, ControlCover{{{0, 1}, {2, 3}}});
    EXPECT_EQ(j.state_count(), 2U);
    EXPECT_EQ(j.next(0, 0), 1U);
    EXPECT_EQ(j.next(0, 1), 0U);
    EXPECT_TRUE(j.is_marked(1));
    EXPECT_FALSE(j.is_marked(0));
}

TEST(ReductionNormalityCheck, DetectsUnwitnessedStructure) {
    auto g = make("G", {{"a", true}, {"b", true}}, 2, {1}, {{0, "a", 1}});
    auto extra_state = make("R", {{"a", true}, {"b", true}}, 3, {1}, {{0, "a", 1}, {2, "a", 1}});
    auto rn = check_reduction_normality(extra_state, g);
    EXPECT_FALSE(rn.states_witnessed);
    auto extra_edge = make("R", {{"a", true}, {"b", true}}, 2, {1}, {{0, "a", 1}, {1, "b", 1}});
    rn = check_reduction_normality(extra_edge, g);
    EXPECT_TRUE(rn.states_witnessed);
    EXPECT_FALSE(rn.transitions_witnessed);
    auto extra_mark = make("R", {{"a", true}, {"b", true}}, 2, {0, 1}, {{0, "a", 1}});
    rn = check_reduction_normality(extra_mark, g);
    EXPECT_FALSE(rn.marks_witnessed);
    EXPECT_FALSE(rn.all());
    EXPECT_TRUE(check_reduction_normality(g, g).all());
}

// control equivalence ---------------------------------------------------------------------

TEST(ControlEquivalence, Examples) {
    auto g = make("G", {{"a", true}, {"b", true}}, 3, {1}, {{0, "a", 1}, {0, "b", 2}});
    auto sup = make("S", {{"a", true}, {"b", true}}, 2, {1}, {{0, "a", 1}});
    EXPECT_TRUE(is_control_equivalent(g, sup, {sup}));
    auto univ = universal_generator("U", g.alphabet());
    // G blocks after b, so the closed behaviours differ
    EXPECT_FALSE(is_control_equivalent(g, trim(g), {univ}));
    auto nb = make("N", {{"a", true}, {"b", true}}, 3, {1, 2}, {{0, "a", 1}, {0, "b", 2}});
    EXPECT_TRUE(is_control_equivalent(nb, trim(nb), {univ}));
    EXPECT_FALSE(is_control_equivalent(g, g, {univ, sup}));
    EXPECT_TRUE(is_control_equivalent(g, sup, {univ, sup}));
}

// random invariants ----------------------------------------------------------------------

TEST(ReductionProperties, SoundOnRandomInstances) {
    Rng rng(41);
    for (int it = 0; it < 150; ++it) {
        auto [g, sup] = random_instance(rng, 8, 6);
        auto r = reduce_supervisor(sup, g);
        EXPECT_LE(r.state_count(), sup.state_count());
        EXPECT_TRUE(check_reduction_normality(r, sup).all()) << it;
        EXPECT_TRUE(is_control_equivalent(g, sup, {r})) << it;
    }
}

TEST(ReductionProperties, ReducingAgainKeepsSize) {
    Rng rng(42);
    for (int it = 0; it < 100; ++it) {
        auto [g, sup] = random_instance(rng, 8, 5);
        auto r = reduce_supervisor(sup, g);
        // r generally leaves L(G); close the loop first
        auto loop = meet(g, r);
        auto rr = reduce_supervisor(trim(loop), g);
        EXPECT_EQ(rr.state_count(), r.state_count()) << it;
    }
}

TEST(ReductionProperties, TrivialPartitionEqualsPlainReduction) {
    Rng rng(43);
    for (int it = 0; it < 100; ++it) {
        auto [g, sup] = random_instance(rng, 8, 5);
        auto part = ControlPartition::trivial(sup.alphabet());
        if (part.size() == 0)
            continue;
        EXPECT_EQ(reduce_supervisor(sup, g, part, 0), reduce_supervisor(sup, g)) << it;
    }
}
