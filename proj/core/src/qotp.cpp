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

#include "qfhe/qotp.hpp"

#include <numeric>

namespace qfhe {

StateVector qotp_apply(const StateVector& state, const Bits& x, const Bits& z,
                       const std::vector<std::size_t>& targets) {
    if (x.size() != targets.size() || z.size() != targets.size()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "mask bit count does not match the target list");
    }
    StateVector out = state;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto w = static_cast<std::uint16_t>(targets[i]);
        if (z[i] & 1u) out = apply_gate(out, Gate::single(GateKind::Z, w));
        if (x[i] & 1u) out = apply_gate(out, Gate::single(GateKind::X, w));
    }
    return out;
}

StateVector qotp_apply_prefix(const StateVector& state, const PauliKey& key, std::size_t count) {
    if (count > state.num_qubits() || count > key.width()) {
        throw Error(ErrorKind::index_out_of_range, "mask prefix exceeds the register");
    }
    std::vector<std::size_t> targets(count);
    std::iota(targets.begin(), targets.end(), std::size_t{1});
    return qotp_apply(state, key.x_prefix(count), key.z_prefix(count), targets);
}

}  // namespace qfhe
