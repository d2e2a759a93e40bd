// Copyright 2026 The qfhe-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qfhe {

/// Deterministic bit stream for every random choice in a run.
///
/// All randomness flows from one master seed through a single stream, in a
/// fixed draw order: key bits first (x(1)..x(n), then z(1)..z(n)), then one
/// (r, r') pair per R gate in execution order (r before r'). One mt19937_64
/// word is consumed per bit so the stream is identical on every platform.
class RandomBitSource {
  public:
    explicit RandomBitSource(std::uint64_t seed) : engine_(seed) {}

    std::uint8_t next_bit() {
        ++bits_consumed_;
        return static_cast<std::uint8_t>(engine_() & 1u);
    }

    std::uint64_t bits_consumed() const { return bits_consumed_; }

  private:
    std::mt19937_64 engine_;
    std::uint64_t bits_consumed_ = 0;
};

}  // namespace qfhe
