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

#include "qfhe/uqc.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace qfhe {

namespace {

Eigen::Matrix2cd matrix2_of(GateKind kind) {
    const auto u = gate_matrix(kind);
    Eigen::Matrix2cd out;
    out << u[0], u[1], u[2], u[3];
    return out;
}

/// u acting on qubit w of an n-qubit register, qubit 1 most significant.
Eigen::MatrixXcd embed_single(const Eigen::Matrix2cd& u, std::size_t w, std::size_t n) {
    const auto left = static_cast<Eigen::Index>(std::size_t{1} << (w - 1));
    const auto right = static_cast<Eigen::Index>(std::size_t{1} << (n - w));
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(left * 2 * right, left * 2 * right);
    for (Eigen::Index a = 0; a < left; ++a) {
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                for (Eigen::Index b = 0; b < right; ++b) {
                    out((a * 2 + r) * right + b, (a * 2 + c) * right + b) = u(r, c);
                }
            }
        }
    }
    return out;
}

Eigen::MatrixXcd program_matrix(const GateProgram& program, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& g : program) {
        acc = embed_single(matrix2_of(g.kind), g.target, n) * acc;
    }
    return acc;
}

/// Largest |entry| of (a - phase*b) after aligning b's phase to a at b's
/// largest entry. Infinity when b is (numerically) zero.
double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    const double mag = b.cwiseAbs().maxCoeff(&r, &c);
    if (mag < 1e-14) return std::numeric_limits<double>::infinity();
    const cdouble phase = (a(r, c) / b(r, c));
    const double pm = std::abs(phase);
    if (pm < 1e-14) return std::numeric_limits<double>::infinity();
    return (a - (phase / pm) * b).cwiseAbs().maxCoeff();
}

}  // namespace

void UqcSpec::validate(double tol) const {
    circuit.validate();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << circuit.n);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const UqcFamilyEntry& entry = family[i];
        if (entry.unitary.rows() != dim || entry.unitary.cols() != dim) {
            throw Error(ErrorKind::dimension_mismatch,
                        "family entry " + std::to_string(i) + " is not 2^n x 2^n");
        }
        if (entry.encoding.size() != circuit.m) {
            throw Error(ErrorKind::dimension_mismatch,
                        "family entry " + std::to_string(i) + " encoding length != m");
        }
        for (auto b : entry.encoding) {
            if (b > 1) {
                throw Error(ErrorKind::parse_error, "encodings are classical bitstrings");
            }
        }
        const double err =
            (entry.unitary.adjoint() * entry.unitary - Eigen::MatrixXcd::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff();
        if (err > tol) {
            throw Error(ErrorKind::dimension_mismatch,
                        "family entry " + std::to_string(i) + " is not unitary (defect " +
                            std::to_string(err) + ")");
        }
    }
}

StateVector run_circuit(const Circuit& circuit, const StateVector& input) {
    circuit.validate();
    if (input.num_qubits() != circuit.width()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "input register has " + std::to_string(input.num_qubits()) +
                        " qubits, circuit needs " + std::to_string(circuit.width()));
    }
    StateVector state = input;
    for (const Gate& g : circuit.gates) state = apply_gate(state, g);
    return state;
}

std::string UqcValidationReport::to_table() const {
    std::ostringstream out;
    out << (pass ? "PASS" : "FAIL") << ": cases checked: " << cases_checked
        << ", failing: " << failures.size() << '\n';
    if (!failures.empty()) {
        out << "family  data  overlap\n";
        for (const UqcCaseResult& f : failures) {
            out << std::setw(6) << f.family_index << "  " << bits_to_string(f.data) << "  "
                << std::fixed << std::setprecision(12) << f.overlap << '\n';
        }
    }
    return out.str();
}

UqcValidationReport validate_uqc(const UqcSpec& spec, double tol) {
    spec.validate(tol);
    UqcValidationReport report;
    const std::size_t n = spec.circuit.n;
    const std::size_t data_dim = std::size_t{1} << n;
    for (std::size_t fi = 0; fi < spec.family.size(); ++fi) {
        const UqcFamilyEntry& entry = spec.family[fi];
        const StateVector enc = StateVector::basis(entry.encoding);
        for (std::size_t d = 0; d < data_dim; ++d) {
            const Bits data_bits = index_to_bits(d, n);
            const StateVector in = tensor(StateVector::basis(data_bits), enc);
            const StateVector actual = run_circuit(spec.circuit, in);

            std::vector<cdouble> mapped(data_dim);
            for (std::size_t r = 0; r < data_dim; ++r) {
                mapped[r] = entry.unitary(static_cast<Eigen::Index>(r),
                                          static_cast<Eigen::Index>(d));
            }
            const StateVector expected =
                tensor(StateVector::from_amplitudes(std::move(mapped)), enc);

            UqcCaseResult result;
            result.family_index = fi;
            result.data = data_bits;
            result.overlap = std::abs(inner_product(expected, actual));
            result.pass = result.overlap >= 1.0 - tol;
            ++report.cases_checked;
            if (!result.pass) report.failures.push_back(std::move(result));
        }
    }
    report.pass = report.failures.empty();
    return report;
}

UqcSpec build_gate_selector_uqc(std::size_t n_data, const std::vector<GateProgram>& menu,
                                bool r_frame) {
    if (n_data == 0) {
        throw Error(ErrorKind::invalid_dimensions, "selector needs at least one data qubit");
    }
    if (menu.empty() || (menu.size() & (menu.size() - 1)) != 0) {
        throw Error(ErrorKind::invalid_dimensions, "menu length must be a power of two");
    }
    std::size_t m = 0;
    while ((std::size_t{1} << m) < menu.size()) ++m;

    for (std::size_t e = 0; e < menu.size(); ++e) {
        for (const Gate& g : menu[e]) {
            if (g.kind != GateKind::X && g.kind != GateKind::Z) {
                throw Error(ErrorKind::unsupported_program,
                            "menu programs may use only X and Z (entry " + std::to_string(e) +
                                " has " + std::string(gate_name(g.kind)) + ")");
            }
            if (g.target < 1 || g.target > n_data) {
                throw Error(ErrorKind::index_out_of_range,
                            "menu entry " + std::to_string(e) + " targets qubit " +
                                std::to_string(g.target));
            }
        }
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_data);
    if (distance_up_to_phase(program_matrix(menu[0], n_data),
                             Eigen::MatrixXcd::Identity(dim, dim)) > 1e-12) {
        throw Error(ErrorKind::unsupported_program, "menu entry 0 must act as the identity");
    }

    // The circuit applies the bit-j program whenever encoding qubit n+j is
    // set, j = 1..m in order, so a general entry must factor through its set
    // bits (up to phase, which Pauli reorderings change globally).
    for (std::size_t e = 1; e < menu.size(); ++e) {
        Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(dim, dim);
        for (std::size_t j = 1; j <= m; ++j) {
            if ((e >> (m - j)) & 1u) {
                product = program_matrix(menu[std::size_t{1} << (m - j)], n_data) * product;
            }
        }
        if (distance_up_to_phase(program_matrix(menu[e], n_data), product) > 1e-12) {
            throw Error(ErrorKind::unsupported_program,
                        "menu entry " + std::to_string(e) +
                            " does not factor through its bit programs");
        }
    }

    UqcSpec spec;
    spec.circuit.n = n_data;
    spec.circuit.m = m;
    auto push_r_layer = [&spec, n_data]() {
        for (std::size_t w = 1; w <= n_data; ++w) {
            spec.circuit.gates.push_back(Gate::single(GateKind::R, static_cast<std::uint16_t>(w)));
        }
    };
    if (r_frame) push_r_layer();
    for (std::size_t j = 1; j <= m; ++j) {
        const auto control = static_cast<std::uint16_t>(n_data + j);
        for (const Gate& g : menu[std::size_t{1} << (m - j)]) {
            if (g.kind == GateKind::X) {
                spec.circuit.gates.push_back(Gate::cnot(control, g.target));
            } else {  // Z as H (CNOT) H on the data side.
                spec.circuit.gates.push_back(Gate::single(GateKind::H, g.target));
                spec.circuit.gates.push_back(Gate::cnot(control, g.target));
                spec.circuit.gates.push_back(Gate::single(GateKind::H, g.target));
            }
        }
    }
    if (r_frame) push_r_layer();

    Eigen::MatrixXcd r_layer = Eigen::MatrixXcd::Identity(dim, dim);
    if (r_frame) {
        for (std::size_t w = 1; w <= n_data; ++w) {
            r_layer = embed_single(matrix2_of(GateKind::R), w, n_data) * r_layer;
        }
    }
    for (std::size_t e = 0; e < menu.size(); ++e) {
        UqcFamilyEntry entry;
        entry.encoding = index_to_bits(e, m);
        entry.unitary = program_matrix(menu[e], n_data);
        if (r_frame) entry.unitary = r_layer * entry.unitary * r_layer;
        spec.family.push_back(std::move(entry));
    }
    return spec;
}

}  // namespace qfhe
