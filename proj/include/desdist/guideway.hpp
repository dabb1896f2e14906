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

#ifndef DESDIST_GUIDEWAY_HPP
#define DESDIST_GUIDEWAY_HPP

#include <map>
#include <string>
#include <vector>

#include "operations.hpp"
#include "partition.hpp"

namespace desdist {

/// Two vehicles sharing a one-way, four-section guideway from station A to
/// station B. Vehicle i moves 0 -i1-> 1 -i0-> 2 -i3-> 3 -i2-> 4 -i5-> 5,
/// where state j in 1..4 means "in section j", 0 is A and 5 (marked) is B.
/// Odd-suffixed events are controllable (stoplights), even ones are not.
struct GuidewayModel {
    Generator v1, v2;
    Generator plant;  ///< V1 || V2
    Generator spec;   ///< no section occupied by both vehicles at once
    std::map<std::string, ControlPartition> partitions;
};

inline Generator guideway_vehicle(int i) {
    const std::string p = std::to_string(i);
    Alphabet a{{p + "1", true}, {p + "0", false}, {p + "3", true}, {p + "2", false}, {p + "5", true}};
    Generator v("V" + p, a, 6);
    v.add_transition(0, p + "1", 1);
    v.add_transition(1, p + "0", 2);
    v.add_transition(2, p + "3", 3);
    v.add_transition(3, p + "2", 4);
    v.add_transition(4, p + "5", 5);
    v.set_marked(5);
    return v;
}

inline GuidewayModel gen_guideway() {
    GuidewayModel m;
    m.v1 = guideway_vehicle(1);
    m.v2 = guideway_vehicle(2);
    m.plant = sync_product(m.v1, m.v2);
    m.plant.set_name("GUIDEWAY");

    // enter / leave events of each section for vehicle i
    const char* enter[] = {"1", "0", "3", "2"};
    const char* leave[] = {"0", "3", "2", "5"};
    Generator spec;
    for (int j = 0; j < 4; ++j) {
        Alphabet a;
        for (int i = 1; i <= 2; ++i) {
            for (const char* suffix : {enter[j], leave[j]}) {
                std::string l = std::to_string(i) + suffix;
                a.add(l, m.plant.alphabet().controllable(m.plant.alphabet().index_of(l)));
            }
        }
        Generator section("SEC" + std::to_string(j + 1), a, 2);
        section.set_marked(0);
        section.set_marked(1);
        for (int i = 1; i <= 2; ++i) {
            section.add_transition(0, std::to_string(i) + enter[j], 1);
            section.add_transition(1, std::to_string(i) + leave[j], 0);
        }
        spec = j == 0 ? section : sync_product(spec, section);
    }
    m.spec = reorder(spec, m.plant.alphabet());
    m.spec.set_name("EXCL");

    m.partitions.emplace("per_component", ControlPartition("per_component", {{"11", "13", "15"}, {"21", "23", "25"}}));
    m.partitions.emplace("per_event",
                         ControlPartition("per_event", {{"11"}, {"13"}, {"21"}, {"23"}, {"15", "25"}}));
    return m;
}

} // namespace desdist

#endif
