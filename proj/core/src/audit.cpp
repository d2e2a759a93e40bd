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

#include "qfhe/audit.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qfhe/protocol.hpp"
#include "qfhe/qotp.hpp"
#include "qfhe/rng.hpp"

namespace qfhe {
namespace audit {

namespace {

Eigen::Matrix2cd matrix2_of(GateKind kind) {
    const auto u = gate_matrix(kind);
    Eigen::Matrix2cd out;
    out << u[0], u[1], u[2], u[3];
    return out;
}

/// Per-qubit mask operator X^x Z^z (Z acts first, as in qotp_apply).
Eigen::Matrix2cd mask2(std::uint8_t x, std::uint8_t z) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
    if (z & 1u) out = matrix2_of(GateKind::Z) * out;
    if (x & 1u) out = matrix2_of(GateKind::X) * out;
    return out;
}

Eigen::Matrix4cd cnot4() {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    out(0, 0) = 1.0;
    out(1, 1) = 1.0;
    out(2, 3) = 1.0;
    out(3, 2) = 1.0;
    return out;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    const double mag = b.cwiseAbs().maxCoeff(&r, &c);
    if (mag < 1e-14) return std::numeric_limits<double>::infinity();
    const cdouble ratio = a(r, c) / b(r, c);
    const double rm = std::abs(ratio);
    if (rm < 1e-14) return std::numeric_limits<double>::infinity();
    return (a - (ratio / rm) * b).cwiseAbs().maxCoeff();
}

ConjugationCase make_case(std::string group, std::string label, const Eigen::MatrixXcd& got,
                          const Eigen::MatrixXcd& want) {
    ConjugationCase c;
    c.group = std::move(group);
    c.label = std::move(label);
    c.error = distance_up_to_phase(got, want);
    c.pass = c.error < 1e-12;
    return c;
}

}  // namespace

double qotp_mixing_check(std::size_t n, const StateVector& plain) {
    if (plain.num_qubits() != n) {
        throw Error(ErrorKind::dimension_mismatch, "state width does not match n");
    }
    if (n > 3) {
        throw Error(ErrorKind::too_large,
                    "exhaustive mixing enumerates 4^n keys; use the sampled variant for n > 3");
    }
    std::vector<std::size_t> targets(n);
    std::iota(targets.begin(), targets.end(), std::size_t{1});

    const auto dim = static_cast<Eigen::Index>(plain.dim());
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
    const std::size_t key_count = std::size_t{1} << (2 * n);
    for (std::size_t key = 0; key < key_count; ++key) {
        const Bits x = index_to_bits(key >> n, n);
        const Bits z = index_to_bits(key & ((std::size_t{1} << n) - 1), n);
        const StateVector cipher = qotp_apply(plain, x, z, targets);
        Eigen::VectorXcd psi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            psi(i) = cipher.amplitude(static_cast<std::size_t>(i));
        }
        avg += psi * psi.adjoint();
    }
    avg /= static_cast<double>(key_count);
    return (avg - maximally_mixed(n)).cwiseAbs().maxCoeff();
}

SampledMixingResult qotp_mixing_check_sampled(std::size_t n, const StateVector& plain,
                                              std::size_t samples, std::uint64_t seed) {
    if (plain.num_qubits() != n) {
        throw Error(ErrorKind::dimension_mismatch, "state width does not match n");
    }
    if (samples == 0) {
        throw Error(ErrorKind::invalid_dimensions, "sampled mixing needs at least one sample");
    }
    std::vector<std::size_t> targets(n);
    std::iota(targets.begin(), targets.end(), std::size_t{1});

    RandomBitSource rng(seed);
    const auto dim = static_cast<Eigen::Index>(plain.dim());
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t s = 0; s < samples; ++s) {
        Bits x(n);
        Bits z(n);
        for (auto& b : x) b = rng.next_bit();
        for (auto& b : z) b = rng.next_bit();
        const StateVector cipher = qotp_apply(plain, x, z, targets);
        Eigen::VectorXcd psi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            psi(i) = cipher.amplitude(static_cast<std::size_t>(i));
        }
        avg += psi * psi.adjoint();
    }
    avg /= static_cast<double>(samples);

    SampledMixingResult result;
    result.samples = samples;
    result.max_deviation = (avg - maximally_mixed(n)).cwiseAbs().maxCoeff();
    result.stderr_bound = 3.0 / std::sqrt(static_cast<double>(samples));
    return result;
}

ConjugationReport conjugation_suite() {
    ConjugationReport report;

    // Single-qubit rules: G (X^x Z^z) == (X^x' Z^z') G up to phase, with
    // (x', z') produced by update_clifford.
    const GateKind singles[] = {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::P};
    for (GateKind kind : singles) {
        for (std::uint8_t x = 0; x <= 1; ++x) {
            for (std::uint8_t z = 0; z <= 1; ++z) {
                const PauliKey key(1, 0, {x}, {z});
                const PauliKey updated = update_clifford(key, Gate::single(kind, 1));
                const Eigen::Matrix2cd g = matrix2_of(kind);
                std::ostringstream label;
                label << gate_name(kind) << " x=" << int(x) << " z=" << int(z);
                report.cases.push_back(make_case(
                    "single_qubit", label.str(), g * mask2(x, z),
                    mask2(updated.x(1), updated.z(1)) * g));
            }
        }
    }

    // CNOT over both qubits' key bits; qubit 1 is the control.
    for (std::size_t bits = 0; bits < 16; ++bits) {
        const std::uint8_t x1 = (bits >> 3) & 1u;
        const std::uint8_t z1 = (bits >> 2) & 1u;
        const std::uint8_t x2 = (bits >> 1) & 1u;
        const std::uint8_t z2 = bits & 1u;
        const PauliKey key(2, 0, {x1, x2}, {z1, z2});
        const PauliKey updated = update_clifford(key, Gate::cnot(1, 2));
        const Eigen::Matrix4cd g = cnot4();
        std::ostringstream label;
        label << "CNOT x=(" << int(x1) << "," << int(x2) << ") z=(" << int(z1) << "," << int(z2)
              << ")";
        report.cases.push_back(make_case(
            "cnot", label.str(), g * kron2(mask2(x1, z1), mask2(x2, z2)),
            kron2(mask2(updated.x(1), updated.z(1)), mask2(updated.x(2), updated.z(2))) * g));
    }

    // R interaction: X^r Z^r' P^x R (X^x Z^z) == (X^x' Z^z') R up to phase,
    // with (x', z') from update_r.
    for (std::uint8_t x = 0; x <= 1; ++x) {
        for (std::uint8_t z = 0; z <= 1; ++z) {
            for (std::uint8_t r = 0; r <= 1; ++r) {
                for (std::uint8_t rp = 0; rp <= 1; ++rp) {
                    const PauliKey key(1, 0, {x}, {z});
                    const PauliKey updated = update_r(key, 1, RandomBitPair{r, rp});
                    Eigen::Matrix2cd correction = Eigen::Matrix2cd::Identity();
                    if (x & 1u) correction = matrix2_of(GateKind::P) * correction;
                    if (rp & 1u) correction = matrix2_of(GateKind::Z) * correction;
                    if (r & 1u) correction = matrix2_of(GateKind::X) * correction;
                    const Eigen::Matrix2cd g = matrix2_of(GateKind::R);
                    std::ostringstream label;
                    label << "R x=" << int(x) << " z=" << int(z) << " r=" << int(r)
                          << " r'=" << int(rp);
                    report.cases.push_back(make_case(
                        "r_gate", label.str(), correction * g * mask2(x, z),
                        mask2(updated.x(1), updated.z(1)) * g));
                }
            }
        }
    }

    // The mask is an involution up to phase; decryption reuses encryption.
    for (std::uint8_t x = 0; x <= 1; ++x) {
        for (std::uint8_t z = 0; z <= 1; ++z) {
            std::ostringstream label;
            label << "mask x=" << int(x) << " z=" << int(z);
            report.cases.push_back(make_case("mask_involution", label.str(),
                                             mask2(x, z) * mask2(x, z),
                                             Eigen::Matrix2cd::Identity()));
        }
    }

    report.max_error = 0.0;
    report.all_pass = true;
    for (const ConjugationCase& c : report.cases) {
        if (c.error > report.max_error) report.max_error = c.error;
        if (!c.pass) report.all_pass = false;
    }
    return report;
}

std::string ConjugationReport::to_text() const {
    std::ostringstream out;
    out << "conjugation suite: " << cases.size() << " cases, max error " << std::scientific
        << std::setprecision(3) << max_error << ", " << (all_pass ? "all pass" : "FAILURES")
        << '\n';
    for (const ConjugationCase& c : cases) {
        out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.group << ": " << c.label
            << " (error " << std::scientific << std::setprecision(3) << c.error << ")\n";
    }
    return out.str();
}

std::string ConjugationReport::to_json() const {
    nlohmann::json root;
    root["all_pass"] = all_pass;
    root["case_count"] = cases.size();
    root["max_error"] = max_error;
    nlohmann::json list = nlohmann::json::array();
    for (const ConjugationCase& c : cases) {
        nlohmann::json entry;
        entry["error"] = c.error;
        entry["group"] = c.group;
        entry["label"] = c.label;
        entry["pass"] = c.pass;
        list.push_back(std::move(entry));
    }
    root["cases"] = std::move(list);
    return root.dump();
}

DensityMatrix interaction_averaged_state(std::uint8_t x_bit, const StateVector& incoming,
                                         std::size_t w) {
    std::vector<std::pair<double, DensityMatrix>> terms;
    for (std::uint8_t r = 0; r <= 1; ++r) {
        for (std::uint8_t rp = 0; rp <= 1; ++rp) {
            const StateVector corrected =
                apply_r_correction(incoming, w, x_bit, RandomBitPair{r, rp});
            terms.emplace_back(0.25, partial_trace(density_of(corrected), {w}));
        }
    }
    return mix(terms);
}

double interaction_privacy_check(std::uint8_t x_bit, const StateVector& incoming, std::size_t w) {
    return interaction_averaged_state(x_bit, incoming, w).max_entry_distance(maximally_mixed(1));
}

namespace {

ComplexitySummary summarize(const Transcript& transcript) {
    ComplexitySummary s;
    s.enc_mask_ops = transcript.counters.enc_mask_ops;
    s.expected_enc_mask_ops = transcript.shape.n;
    s.gates_executed = transcript.counters.gates_executed;
    s.expected_gates =
        static_cast<std::uint64_t>(transcript.shape.circuit_gates) * transcript.shape.repetitions;
    s.messages = transcript.counters.qubit_transfer_messages;
    s.expected_messages =
        2 * static_cast<std::uint64_t>(transcript.shape.r_gates) * transcript.shape.repetitions;
    s.max_xors_per_step = transcript.counters.max_key_update_xors;
    s.pass = s.enc_mask_ops == s.expected_enc_mask_ops && s.gates_executed == s.expected_gates &&
             s.messages == s.expected_messages && s.max_xors_per_step <= 3;
    return s;
}

}  // namespace

ComplexitySummary complexity_counters(const Transcript& transcript) {
    return summarize(transcript);
}

ComplexitySummary complexity_counters(const Transcript& transcript, const KeySchedule& schedule) {
    ComplexitySummary s = summarize(transcript);
    for (std::uint8_t step : schedule.xor_per_step) {
        if (step > s.max_xors_per_step) s.max_xors_per_step = step;
        if (step > 3) s.pass = false;
    }
    return s;
}

std::string ComplexitySummary::to_text() const {
    std::ostringstream out;
    out << "complexity counters: " << (pass ? "pass" : "FAIL") << '\n'
        << "  encryption mask ops: " << enc_mask_ops << " (expected " << expected_enc_mask_ops
        << ")\n"
        << "  gates executed: " << gates_executed << " (expected " << expected_gates << ")\n"
        << "  qubit-transfer messages: " << messages << " (expected " << expected_messages << ")\n"
        << "  max key-update XORs per step: " << max_xors_per_step << " (bound 3)\n";
    return out.str();
}

std::string ComplexitySummary::to_json() const {
    nlohmann::json root;
    root["enc_mask_ops"] = enc_mask_ops;
    root["expected_enc_mask_ops"] = expected_enc_mask_ops;
    root["expected_gates"] = expected_gates;
    root["expected_messages"] = expected_messages;
    root["gates_executed"] = gates_executed;
    root["max_xors_per_step"] = max_xors_per_step;
    root["messages"] = messages;
    root["pass"] = pass;
    return root.dump();
}

}  // namespace audit
}  // namespace qfhe
