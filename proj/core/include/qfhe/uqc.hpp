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

/**
 * @file
 * Universal-quantum-circuit structure: a circuit over n data + m encoding
 * qubits together with the family of (unitary, encoding) pairs it claims to
 * realize, a validator for that claim, and builders for small provable
 * instances.
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfhe/circuit.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {

/// One family member: an explicit 2^n x 2^n unitary and the classical
/// encoding string (length m) claimed to select it.
struct UqcFamilyEntry {
    Eigen::MatrixXcd unitary;
    Bits encoding;
};

struct UqcSpec {
    Circuit circuit;
    std::vector<UqcFamilyEntry> family;

    /// Checks dimensions and that every family matrix is unitary within tol.
    void validate(double tol = 1e-10) const;
};

/// Applies the circuit's gates in order to an (n+m)-qubit input.
StateVector run_circuit(const Circuit& circuit, const StateVector& input);

struct UqcCaseResult {
    std::size_t family_index = 0;
    Bits data;
    double overlap = 0.0;
    bool pass = false;
};

struct UqcValidationReport {
    bool pass = false;
    std::size_t cases_checked = 0;
    std::vector<UqcCaseResult> failures;

    /// Plain-text table, one row per failing (U, d) pair.
    std::string to_table() const;
};

/// Checks, for every family entry (U, e) and every basis data string d, that
/// the circuit maps |d>|e> to (U|d>)|e> up to global phase within tol.
UqcValidationReport validate_uqc(const UqcSpec& spec, double tol);

/// A menu program: a list of X/Z gates on data qubits (1..n), applied in
/// order. Entry 0 of a menu must be realized by the all-identity program.
using GateProgram = std::vector<Gate>;

/// Builds a selector UQC: menu[e] is applied to the data block when the
/// encoding register holds e (encoding bit 1 is the most significant digit
/// of the menu index). The menu length must be a power of two and each
/// program may use only X and Z on data qubits; the selection is compiled to
/// one CNOT per selected X and H-CNOT-H per selected Z, controlled on single
/// encoding qubits, so the menu must be bitwise-separable:
/// menu[e] == product of menu[2^j] over the set bits j of e (up to phase).
///
/// With `r_frame` set, every data qubit is additionally wrapped in an R gate
/// before and after the selector block and the family matrices absorb the
/// two R layers; this yields valid UQC instances containing R gates.
UqcSpec build_gate_selector_uqc(std::size_t n_data, const std::vector<GateProgram>& menu,
                                bool r_frame = false);

}  // namespace qfhe
