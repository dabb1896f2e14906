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

#ifndef DESDIST_DISTRIBUTION_HPP
#define DESDIST_DISTRIBUTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "localization.hpp"
#include "observation.hpp"

namespace desdist {

/// One observation channel Sigma^k per block of a control partition.
struct ProjectionFamily {
    std::vector<ProjectionSpec> specs;

    std::size_t size() const { return specs.size(); }
};

/// Sigma^i = Sigma - U_{j != i} (Sigma_c^j n (Sigma - Sigma_0)). Without an
/// observation spec every event counts as unobservable, giving
/// Sigma^i = Sigma - U_{j != i} Sigma_c^j.
inline ProjectionFamily family_for_partition(const Alphabet& sigma, const ControlPartition& partition,
                                             const std::optional<ProjectionSpec>& observed = std::nullopt) {
    partition.validate(sigma);
    ProjectionFamily fam;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        ProjectionSpec spec;
        for (const auto& e : sigma) {
            auto owner = partition.block_of(e.label);
            bool hidden = owner && *owner != i && !(observed && observed->observes(e.label));
            if (!hidden)
                spec.observable.insert(e.label);
        }
        fam.specs.push_back(std::move(spec));
    }
    return fam;
}

/// S_i^f: SUP_f with every controllable event outside block i that is
/// undefined at a state turned into a self-loop there (at every such state,
/// whether or not the plant could execute it).
inline Generator build_feasible_local(const Generator& supf, const Generator& g, const ControlPartition& partition,
                                      std::size_t i) {
    detail::require_same_events(supf, g);
    partition.validate(supf.alphabet());
    detail::check_block(partition, i);
    const EventSet own = partition.block_events(supf.alphabet(), i);
    Generator s = supf;
    s.set_name(supf.name() + "_S" + std::to_string(i + 1));
    for (StateId y = 0; y < supf.state_count(); ++y)
        for (EventId e = 0; e < supf.event_count(); ++e)
            if (supf.alphabet().controllable(e) && !own.contains(e) && !supf.defined(y, e))
                s.add_transition(y, e, y);
    return s;
}

/// Coparanormality witnessed by `locals`: each local is paranormal w.r.t. G
/// and its channel Sigma^k, and the locals met with G mark exactly Lm(K).
inline bool is_coparanormal(const Generator& k, const Generator& g, const ProjectionFamily& family,
                            const std::vector<Generator>& locals) {
    detail::require_same_events(k, g);
    if (locals.size() != family.size())
        throw Error(ErrorKind::ArityMismatch, std::to_string(locals.size()) + " locals for " +
                                                  std::to_string(family.size()) + " projections");
    for (std::size_t i = 0; i < locals.size(); ++i)
        if (!is_paranormal(locals[i], g, family.specs[i]))
            return false;
    Generator joint = g;
    for (const auto& l : locals)
        joint = meet(joint, l);
    return marked_language_equal(joint, k);
}

namespace detail {

inline void require_marked_in_plant(const Generator& k, const Generator& g) {
    detail::require_same_events(k, g);
    if (!compare_languages(k, g).marked)
        throw Error(ErrorKind::NotContained, "Lm(" + k.name() + ") is not contained in Lm(" + g.name() + ")");
}

inline Generator lifted_projection(const Generator& k, const ProjectionSpec& spec) {
    return inverse_project(project(k, spec), k.alphabet());
}

} // namespace detail

/// Lm(K) = n_k P_k^-1 P_k(Lm(K)) n Lm(G).
inline bool is_decomposable(const Generator& k, const Generator& g, const ProjectionFamily& family) {
    detail::require_marked_in_plant(k, g);
    Generator rhs = g;
    for (const auto& spec : family.specs)
        rhs = meet(rhs, detail::lifted_projection(k, spec));
    return marked_language_equal(rhs, k);
}

/// Lm(K) = (U_k P_k^-1 P_k(Lm(K))) n Lm(G).
inline bool is_conormal(const Generator& k, const Generator& g, const ProjectionFamily& family) {
    detail::require_marked_in_plant(k, g);
    if (family.specs.empty())
        throw Error(ErrorKind::ArityMismatch, "empty projection family");
    Generator united = detail::lifted_projection(k, family.specs.front());
    for (std::size_t i = 1; i < family.size(); ++i)
        united = language_union(united, detail::lifted_projection(k, family.specs[i]));
    return marked_language_equal(meet(g, united), k);
}

/// Structural scan: every unobservable controllable event of block i is a
/// self-loop at every state of every S_j^f, j != i.
inline bool check_lemma1(const Generator& sup, const Generator& g, const ProjectionSpec& observed,
                         const ControlPartition& partition) {
    partition.validate(sup.alphabet());
    auto supf = build_feasible_supervisor(sup, g, observed).supervisor;
    for (std::size_t j = 0; j < partition.size(); ++j) {
        Generator sj = build_feasible_local(supf, g, partition, j);
        for (std::size_t i = 0; i < partition.size(); ++i) {
            if (i == j)
                continue;
            for (const auto& l : partition.block(i)) {
                if (observed.observes(l))
                    continue;
                EventId e = sj.alphabet().index_of(l);
                for (StateId y = 0; y < sj.state_count(); ++y)
                    if (sj.next(y, e) != y)
                        return false;
            }
        }
    }
    return true;
}

struct DecompositionOptions {
    std::optional<Generator> ambient;  ///< C; defaults to SUP itself (plain observability)
    bool generalized = false;          ///< Sigma^i = Sigma - U_{j != i}(Sigma_c^j n (Sigma - Sigma_0)), any block count
};

struct Decomposition {
    ProjectionFamily family;
    std::vector<std::string> witnesses;   ///< chosen unobservable controllable event per block
    std::vector<Generator> feasible_locals;  ///< S_i^f
    std::vector<Generator> locals;        ///< P_i^-1 P_i(S_i^f), over the full alphabet
    bool decomposable = false;            ///< is_decomposable(SUP, G, family)
};

/// Decomposition of a relatively observable supervisor over a two-block
/// partition in which each block owns an unobservable controllable event
/// sigma (block 1) and sigma' (block 2): Sigma^1 = Sigma - {sigma'},
/// Sigma^2 = Sigma - {sigma}. Throws HypothesisUnmet naming the failed hypothesis.
inline Decomposition decompose_by_theorem1(const Generator& sup, const Generator& g, const ProjectionSpec& observed,
                                           const ControlPartition& partition, const DecompositionOptions& opts = {}) {
    detail::require_same_events(sup, g);
    observed.validate(sup.alphabet());
    partition.validate(sup.alphabet());
    if (!opts.generalized && partition.size() != 2)
        throw Error(ErrorKind::HypothesisUnmet, "partition must have exactly 2 blocks (has " +
                                                    std::to_string(partition.size()) + ")");
    if (opts.generalized && partition.size() < 2)
        throw Error(ErrorKind::HypothesisUnmet, "partition must have at least 2 blocks");

    Decomposition out;
    const Alphabet& sigma = sup.alphabet();
    for (std::size_t i = 0; i < partition.size(); ++i) {
        std::optional<std::string> witness;
        for (const auto& e : sigma)  // alphabet order
            if (partition.block_of(e.label) == i && !observed.observes(e.label)) {
                witness = e.label;
                break;
            }
        if (!witness)
            throw Error(ErrorKind::HypothesisUnmet,
                        "no unobservable controllable witness in block " + std::to_string(i + 1));
        out.witnesses.push_back(*witness);
    }
    const Generator& ambient = opts.ambient ? *opts.ambient : sup;
    if (!is_relative_observable(sup, ambient, g, observed))
        throw Error(ErrorKind::HypothesisUnmet, "relative observability: '" + sup.name() +
                                                    "' is not relatively observable w.r.t. '" + ambient.name() + "'");

    if (opts.generalized) {
        out.family = family_for_partition(sigma, partition, observed);
    } else {
        for (std::size_t i = 0; i < 2; ++i) {
            ProjectionSpec spec = ProjectionSpec::all(sigma);
            spec.observable.erase(out.witnesses[1 - i]);
            out.family.specs.push_back(std::move(spec));
        }
    }

    auto supf = build_feasible_supervisor(sup, g, observed).supervisor;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        out.feasible_locals.push_back(build_feasible_local(supf, g, partition, i));
        Generator lifted = detail::lifted_projection(out.feasible_locals.back(), out.family.specs[i]);
        lifted.set_name("DLOC" + std::to_string(i + 1));
        out.locals.push_back(std::move(lifted));
    }
    out.decomposable = is_decomposable(sup, g, out.family);
    return out;
}

} // namespace desdist

#endif
