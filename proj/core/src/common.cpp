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

#include "qfhe/common.hpp"

namespace qfhe {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_dimensions: return "invalid-dimensions";
        case ErrorKind::index_out_of_range: return "index-out-of-range";
        case ErrorKind::degenerate_cnot: return "degenerate-cnot";
        case ErrorKind::dimension_mismatch: return "dimension-mismatch";
        case ErrorKind::rpair_count_mismatch: return "r-pair-count-mismatch";
        case ErrorKind::weight_sum: return "weight-sum";
        case ErrorKind::too_large: return "too-large";
        case ErrorKind::parse_error: return "parse-error";
        case ErrorKind::unsupported_program: return "unsupported-program";
        case ErrorKind::custody_violation: return "custody-violation";
        case ErrorKind::protocol_desync: return "protocol-desync";
        case ErrorKind::encoding_mismatch: return "encoding-register-mismatch";
        case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

Bits bits_from_string(std::string_view text) {
    Bits bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::parse_error,
                        "bitstring may contain only '0'/'1', found '" + std::string(1, c) +
                            "' at position " + std::to_string(i));
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

std::string bits_to_string(const Bits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) out.push_back(b ? '1' : '0');
    return out;
}

std::uint64_t bits_to_index(const Bits& bits) {
    std::uint64_t value = 0;
    for (auto b : bits) value = (value << 1) | (b & 1u);
    return value;
}

Bits index_to_bits(std::uint64_t value, std::size_t width) {
    Bits bits(width, 0);
    for (std::size_t i = 0; i < width; ++i) {
        bits[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
    }
    return bits;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

}  // namespace qfhe
