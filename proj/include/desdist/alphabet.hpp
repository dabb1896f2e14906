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

#ifndef DESDIST_ALPHABET_HPP
#define DESDIST_ALPHABET_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace desdist {

using EventId = std::uint32_t;

struct EventDecl {
    std::string label;
    bool controllable = false;

    friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

/// Labels are non-empty tokens over [A-Za-z0-9_].
inline bool is_valid_label(std::string_view label) {
    if (label.empty())
        return false;
    return std::all_of(label.begin(), label.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

/// Ordered set of event declarations. Iteration order is declaration order and
/// is the canonical order used everywhere (BFS expansion, serialization).
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(std::initializer_list<EventDecl> events) {
        for (const auto& e : events)
            add(e.label, e.controllable);
    }

    EventId add(std::string label, bool controllable) {
        if (!is_valid_label(label))
            throw Error(ErrorKind::InvalidLabel, "invalid event label '" + label + "'");
        if (index_.count(label))
            throw Error(ErrorKind::DuplicateLabel, "duplicate event label '" + label + "'");
        auto id = static_cast<EventId>(events_.size());
        index_.emplace(label, id);
        events_.push_back({std::move(label), controllable});
        return id;
    }

    std::optional<EventId> find(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    EventId index_of(std::string_view label) const {
        if (auto id = find(label))
            return *id;
        throw Error(ErrorKind::UnknownLabel, "event '" + std::string(label) + "' is not in the alphabet");
    }

    bool contains(std::string_view label) const { return find(label).has_value(); }

    const EventDecl& operator[](EventId id) const { return events_[id]; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    auto begin() const { return events_.begin(); }
    auto end() const { return events_.end(); }

    bool controllable(EventId id) const { return events_[id].controllable; }

    /// Same declarations regardless of order.
    bool same_events(const Alphabet& other) const {
        if (other.size() != size())
            return false;
        for (const auto& e : events_) {
            auto id = other.find(e.label);
            if (!id || other[*id].controllable != e.controllable)
                return false;
        }
        return true;
    }

    /// Every declaration of this alphabet also appears (with the same flag) in `other`.
    bool subset_of(const Alphabet& other) const {
        return std::all_of(events_.begin(), events_.end(), [&](const EventDecl& e) {
            auto id = other.find(e.label);
            return id && other[*id].controllable == e.controllable;
        });
    }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(events_.size());
        for (const auto& e : events_)
            out.push_back(e.label);
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.events_ == b.events_; }

private:
    std::vector<EventDecl> events_;
    std::unordered_map<std::string, EventId> index_;
};

/// Maps every event of `from` to its index in `to`. Both alphabets must declare
/// the same events; throws AlphabetMismatch otherwise.
inline std::vector<EventId> event_map(const Alphabet& from, const Alphabet& to) {
    if (!from.same_events(to))
        throw Error(ErrorKind::AlphabetMismatch, "generators are defined over different alphabets");
    std::vector<EventId> map(from.size());
    for (EventId e = 0; e < from.size(); ++e)
        map[e] = *to.find(from[e].label);
    return map;
}

/// Dense bit set over event indices of one alphabet.
class EventSet {
public:
    EventSet() = default;
    explicit EventSet(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

    void insert(EventId e) { bits_[e / 64] |= std::uint64_t{1} << (e % 64); }
    void erase(EventId e) { bits_[e / 64] &= ~(std::uint64_t{1} << (e % 64)); }
    bool contains(EventId e) const { return (bits_[e / 64] >> (e % 64)) & 1U; }

    bool intersects(const EventSet& other) const {
        for (std::size_t i = 0; i < bits_.size() && i < other.bits_.size(); ++i)
            if (bits_[i] & other.bits_[i])
                return true;
        return false;
    }

    bool empty() const {
        return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
    }

    std::size_t universe() const { return universe_; }

    std::vector<EventId> members() const {
        std::vector<EventId> out;
        for (EventId e = 0; e < universe_; ++e)
            if (contains(e))
                out.push_back(e);
        return out;
    }

    EventSet& operator|=(const EventSet& other) {
        for (std::size_t i = 0; i < bits_.size() && i < other.bits_.size(); ++i)
            bits_[i] |= other.bits_[i];
        return *this;
    }

    friend bool operator==(const EventSet&, const EventSet&) = default;

private:
    std::vector<std::uint64_t> bits_;
    std::size_t universe_ = 0;
};

} // namespace desdist

#endif
