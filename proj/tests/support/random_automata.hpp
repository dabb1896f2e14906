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

// Seeded random instances for the property and acceptance suites.

#ifndef DESDIST_TESTS_RANDOM_AUTOMATA_HPP
#define DESDIST_TESTS_RANDOM_AUTOMATA_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <desdist/desdist.hpp>

namespace desdist::testing {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Events e0..e{n-1}; at least `min_controllable` of them controllable.
inline Alphabet random_alphabet(Rng& rng, std::size_t n, std::size_t min_controllable = 1) {
    std::vector<bool> flags(n);
    for (auto&& f : flags)
        f = coin(rng, 0.5);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < std::min(min_controllable, n); ++i)
        flags[order[i]] = true;
    Alphabet a;
    for (std::size_t i = 0; i < n; ++i)
        a.add("e" + std::to_string(i), flags[i]);
    return a;
}

struct Shape {
    std::size_t states = 4;
    double density = 0.4;   ///< probability that a (state, event) has a transition
    double marked = 0.4;
    bool acyclic = false;   ///< transitions only to strictly larger indices
};

inline Generator random_generator(Rng& rng, const Alphabet& alphabet, const Shape& shape, std::string name = "R") {
    Generator g(std::move(name), alphabet, shape.states);
    for (StateId s = 0; s < shape.states; ++s) {
        if (coin(rng, shape.marked))
            g.set_marked(s);
        for (EventId e = 0; e < alphabet.size(); ++e) {
            if (!coin(rng, shape.density))
                continue;
            if (shape.acyclic) {
                if (s + 1 < shape.states)
                    g.add_transition(s, e, static_cast<StateId>(pick(rng, s + 1, shape.states - 1)));
            } else {
                g.add_transition(s, e, static_cast<StateId>(pick(rng, 0, shape.states - 1)));
            }
        }
    }
    return canonical(g);
}

/// Random nonblocking plant (retries until trim leaves it unchanged in language).
inline Generator random_plant(Rng& rng, const Alphabet& alphabet, const Shape& shape) {
    for (;;) {
        auto g = random_generator(rng, alphabet, shape, "G");
        if (is_nonblocking(g) && !g.marked_states().empty())
            return g;
    }
}

/// Random partition of the controllable events into 1..max_blocks blocks.
inline ControlPartition random_partition(Rng& rng, const Alphabet& alphabet, std::size_t max_blocks) {
    std::vector<std::string> ctrl;
    for (const auto& e : alphabet)
        if (e.controllable)
            ctrl.push_back(e.label);
    std::shuffle(ctrl.begin(), ctrl.end(), rng);
    std::size_t blocks = pick(rng, 1, std::max<std::size_t>(1, std::min(max_blocks, ctrl.size())));
    std::vector<std::vector<std::string>> out(blocks);
    for (std::size_t i = 0; i < ctrl.size(); ++i)
        out[i < blocks ? i : pick(rng, 0, blocks - 1)].push_back(ctrl[i]);
    for (auto& b : out)
        std::sort(b.begin(), b.end());
    return ControlPartition("random", std::move(out));
}

inline ProjectionSpec random_projection(Rng& rng, const Alphabet& alphabet, double p_observable = 0.5) {
    ProjectionSpec spec;
    for (const auto& e : alphabet)
        if (coin(rng, p_observable))
            spec.observable.insert(e.label);
    return spec;
}

/// A plant and supervisor meeting the hypotheses of the two-block
/// decomposition theorem: blocks {a, c} and {b}, a and b never observed,
/// SUP observable (relative observability with C = SUP).
struct DecompositionInstance {
    Generator plant;
    Generator sup;
    ProjectionSpec observed;
    ControlPartition partition;
};

inline DecompositionInstance decomposition_instance(Rng& rng) {
    const Alphabet alpha{{"a", true}, {"b", true}, {"c", true}, {"u", false}, {"v", false}};
    for (;;) {
        auto g = random_plant(rng, alpha, {pick(rng, 2, 5), 0.35, 0.4, false});
        auto e = random_generator(rng, alpha, {pick(rng, 1, 3), 0.6, 0.5, false}, "E");
        auto sup = supremal_controllable(e, g).supervisor;
        if (is_empty(sup))
            continue;
        ProjectionSpec p;
        p.observable = {"u", "v"};
        if (coin(rng, 0.5))
            p.observable.insert("c");
        if (!is_observable(sup, g, p))
            continue;
        return {g, sup, p, ControlPartition("theorem", {{"a", "c"}, {"b"}})};
    }
}

} // namespace desdist::testing

#endif
