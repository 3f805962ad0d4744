// uwasr/base/rng.h

// Copyright 2026  The uwasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef UWASR_BASE_RNG_H_
#define UWASR_BASE_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace uwasr {

using Rng = std::mt19937_64;

// Per-item seed: hash of (master seed, item id). Items seeded this way can be
// generated in any order or in parallel.
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view id);

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace uwasr

#endif  // UWASR_BASE_RNG_H_
