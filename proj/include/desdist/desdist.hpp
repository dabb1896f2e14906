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

#ifndef DESDIST_DESDIST_HPP
#define DESDIST_DESDIST_HPP

#include "alphabet.hpp"
#include "closed_loop.hpp"
#include "distribution.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "guideway.hpp"
#include "io.hpp"
#include "localization.hpp"
#include "observation.hpp"
#include "operations.hpp"
#include "partition.hpp"
#include "reduction.hpp"
#include "synthesis.hpp"

#endif
