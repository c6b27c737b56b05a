// Copyright 2026 The qpovm developers.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Counter-based random streams with deterministic splitting.
 *
 * Splitting rule: a stream is identified by a 64-bit key derived from
 * (seed, label, index) through the splitmix64 finalizer; its n-th draw is
 * mix64(key + n * gamma).  Every draw is therefore a pure function of the
 * tuple (seed, labels along the derivation path, indices, draw counter).
 * Sibling streams never share state, so independent consumers can run in
 * any order (or in parallel) without changing each other's output.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace qpovm {

/// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// FNV-1a hash of a label, used to key purpose-specific streams.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::string_view label = "root",
                          std::uint64_t index = 0) noexcept
        : key_(mix64(mix64(mix64(seed + kGamma) ^ fnv1a64(label)) ^ index)) {}

    /// Child stream for an independent purpose.  Reordering sibling streams
    /// cannot change any stream's draws.
    RandomStream derive(std::string_view label, std::uint64_t index = 0) const noexcept {
        RandomStream child;
        child.key_ = mix64(mix64(key_ ^ fnv1a64(label)) ^ index);
        return child;
    }

    std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached, so draws consume one uniform pair per two gaussians.
    double gaussian() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // (0,1] so the logarithm is finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Both components independent standard normals (not unit-variance
    /// complex gaussian; callers normalize where the scale matters).
    std::complex<double> complex_gaussian() noexcept {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

  private:
    RandomStream() noexcept = default;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qpovm
