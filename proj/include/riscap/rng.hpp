// SPDX-License-Identifier: Apache-2.0
//
// riscap: capacity and outage analysis for RIS-aided downlink systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace riscap {

// Finalizer of the splitmix64 generator. Used as a mixing function to derive
// independent substream seeds from a (master seed, stream index) pair.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Generator for substream `stream` of master seed `seed`. Streams are keyed
// by index alone, not by evaluation order, so Monte Carlo trials reproduce
// bit-exactly no matter how work is split across threads.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = splitmix64(seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    return std::mt19937_64(b);
}

// Uniform double in (0, 1], from the top 53 bits of one 64-bit draw.
inline double uniform_unit(std::mt19937_64& gen) {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

// One draw of CN(0,1): real and imaginary parts i.i.d. N(0, 1/2). Box-Muller
// maps one uniform pair onto one complex sample, so every draw consumes
// exactly two generator words; the stream layout is part of the seeding
// contract and must not change.
inline std::complex<double> complex_gaussian(std::mt19937_64& gen) {
    const double r = std::sqrt(-std::log(uniform_unit(gen)));
    const double phi = 2.0 * std::numbers::pi * uniform_unit(gen);
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace riscap
