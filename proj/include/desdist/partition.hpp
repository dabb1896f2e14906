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

#ifndef DESDIST_PARTITION_HPP
#define DESDIST_PARTITION_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alphabet.hpp"

namespace desdist {

/// Pairwise-disjoint blocks of controllable events whose union is the whole
/// controllable event set.
class ControlPartition {
public:
    ControlPartition() = default;
    ControlPartition(std::string name, std::vector<std::vector<std::string>> blocks)
        : name_(std::move(name)), blocks_(std::move(blocks)) {}

    const std::string& name() const { return name_; }
    const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<std::string>& block(std::size_t i) const { return blocks_.at(i); }

    std::optional<std::size_t> block_of(std::string_view label) const {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            for (const auto& l : blocks_[i])
                if (l == label)
                    return i;
        return std::nullopt;
    }

    /// Checks structure alone: non-empty blocks, valid and pairwise-disjoint labels.
    void validate_structure() const {
        std::set<std::string> seen;
        if (blocks_.empty())
            throw Error(ErrorKind::InvalidPartition, "partition '" + name_ + "' has no blocks");
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (blocks_[i].empty())
                throw Error(ErrorKind::InvalidPartition, "block " + std::to_string(i + 1) + " is empty");
            for (const auto& l : blocks_[i]) {
                if (!is_valid_label(l))
                    throw Error(ErrorKind::InvalidPartition, "invalid event label '" + l + "'");
                if (!seen.insert(l).second)
                    throw Error(ErrorKind::InvalidPartition, "event '" + l + "' appears in more than one block");
            }
        }
    }

    /// Full check against an alphabet: every label controllable and every
    /// controllable event covered.
    void validate(const Alphabet& alphabet) const {
        validate_structure();
        for (const auto& block : blocks_)
            for (const auto& l : block) {
                auto id = alphabet.find(l);
                if (!id)
                    throw Error(ErrorKind::InvalidPartition, "event '" + l + "' is not in the alphabet");
                if (!alphabet.controllable(*id))
                    throw Error(ErrorKind::InvalidPartition, "event '" + l + "' is not controllable");
            }
        for (const auto& e : alphabet)
            if (e.controllable && !block_of(e.label))
                throw Error(ErrorKind::InvalidPartition, "controllable event '" + e.label + "' is in no block");
    }

    /// Block membership as an event set over `alphabet`.
    EventSet block_events(const Alphabet& alphabet, std::size_t i) const {
        EventSet out(alphabet.size());
        for (const auto& l : blocks_.at(i))
            if (auto id = alphabet.find(l))
                out.insert(*id);
        return out;
    }

    /// The one-block partition of all controllable events.
    static ControlPartition trivial(const Alphabet& alphabet) {
        std::vector<std::string> all;
        for (const auto& e : alphabet)
            if (e.controllable)
                all.push_back(e.label);
        return ControlPartition("trivial", {all});
    }

    friend bool operator==(const ControlPartition&, const ControlPartition&) = default;

private:
    std::string name_;
    std::vector<std::vector<std::string>> blocks_;
};

} // namespace desdist

#endif
