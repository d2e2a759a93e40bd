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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfhe {

using cdouble = std::complex<double>;

/// A classical bitstring; every element is 0 or 1.
using Bits = std::vector<std::uint8_t>;

enum class ErrorKind : std::uint8_t {
    invalid_dimensions,
    index_out_of_range,
    degenerate_cnot,
    dimension_mismatch,
    rpair_count_mismatch,
    weight_sum,
    too_large,
    parse_error,
    unsupported_program,
    custody_violation,
    protocol_desync,
    encoding_mismatch,
    io_error,
};

const char* error_kind_name(ErrorKind kind);

/// Single exception type for the library. The kind carries the contract
/// violation category so callers (and the CLI exit-code map) can branch
/// without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

/// Parses a string of '0'/'1' characters.
Bits bits_from_string(std::string_view text);

std::string bits_to_string(const Bits& bits);

/// Value of a bitstring read with bit 1 as the most significant digit.
std::uint64_t bits_to_index(const Bits& bits);

/// Inverse of bits_to_index for a fixed width.
Bits index_to_bits(std::uint64_t value, std::size_t width);

/// 64-bit FNV-1a. Used for circuit and plan digests; not cryptographic.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace qfhe
