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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracle.hpp"
#include "qfhe/density_matrix.hpp"
#include "qfhe/qotp.hpp"
#include "qfhe/state_vector.hpp"

using namespace qfhe;

namespace {

double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::Index ri = 0;
    Eigen::Index ci = 0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            if (std::abs(b(r, c)) > best) {
                best = std::abs(b(r, c));
                ri = r;
                ci = c;
            }
        }
    }
    cdouble phase = 1.0;
    if (best > 1e-14 && std::abs(a(ri, ci)) > 1e-14) {
        phase = b(ri, ci) / a(ri, ci);
        phase /= std::abs(phase);
    }
    return (phase * a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("StateVector constructors and invariants") {
    const StateVector zero(2);
    CHECK(zero.num_qubits() == 2);
    CHECK(zero.dim() == 4);
    CHECK(zero.amplitude(0) == cdouble(1, 0));

    const StateVector basis = StateVector::basis({1, 0});
    CHECK(basis.amplitude(2) == cdouble(1, 0));

    const StateVector scalar(0);
    CHECK(scalar.dim() == 1);

    CHECK_THROWS_AS(StateVector::from_amplitudes({{0.5, 0}, {0.5, 0}}), Error);  // norm
    CHECK_THROWS_AS(StateVector::from_amplitudes({{1, 0}, {0, 0}, {0, 0}}), Error);  // not 2^q
}

TEST_CASE("the register cap rejects 13 qubits unless overridden") {
    try {
        StateVector big(13);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::too_large);
    }
    const StateVector big(13, 13);
    CHECK(big.dim() == 8192);
}

TEST_CASE("apply_gate pinned examples") {
    const double s = 1.0 / std::sqrt(2.0);

    const StateVector plus = apply_gate(StateVector(1), Gate::single(GateKind::H, 1));
    CHECK(std::abs(plus.amplitude(0) - cdouble(s, 0)) < 1e-12);
    CHECK(std::abs(plus.amplitude(1) - cdouble(s, 0)) < 1e-12);

    const StateVector one = StateVector::basis({1});
    const StateVector r_one = apply_gate(one, Gate::single(GateKind::R, 1));
    CHECK(std::abs(r_one.amplitude(1) - cdouble(s, s)) < 1e-12);
    CHECK(std::abs(r_one.amplitude(0)) < 1e-12);

    const StateVector ten = StateVector::basis({1, 0});
    const StateVector flipped = apply_gate(ten, Gate::cnot(1, 2));
    CHECK(std::abs(flipped.amplitude(3) - cdouble(1, 0)) < 1e-12);
}

TEST_CASE("apply_gate matches the hard-coded matrix oracle") {
    std::mt19937_64 gen(1234);
    for (std::size_t q = 1; q <= 4; ++q) {
        for (int trial = 0; trial < 8; ++trial) {
            const StateVector state = oracle::random_state(q, gen);
            for (std::size_t w = 1; w <= q; ++w) {
                for (GateKind kind : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H,
                                      GateKind::P, GateKind::R}) {
                    const Gate gate = Gate::single(kind, w);
                    const Eigen::VectorXcd expected =
                        oracle::embed_single(oracle::mat_single(kind), w, q) *
                        oracle::to_vector(state);
                    const Eigen::VectorXcd got = oracle::to_vector(apply_gate(state, gate));
                    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
                }
            }
            for (std::size_t c = 1; c <= q; ++c) {
                for (std::size_t t = 1; t <= q; ++t) {
                    if (c == t) continue;
                    const Eigen::VectorXcd expected =
                        oracle::embed_cnot(c, t, q) * oracle::to_vector(state);
                    const Eigen::VectorXcd got =
                        oracle::to_vector(apply_gate(state, Gate::cnot(c, t)));
                    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("apply_gate preserves the norm to machine precision") {
    std::mt19937_64 gen(5150);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector state = oracle::random_state(3, gen);
        for (GateKind kind : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::P,
                              GateKind::R}) {
            CHECK(std::abs(apply_gate(state, Gate::single(kind, 2)).norm() - 1.0) < 1e-12);
        }
        CHECK(std::abs(apply_gate(state, Gate::cnot(3, 1)).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("apply_gate rejects out-of-range indices") {
    const StateVector state(2);
    CHECK_THROWS_AS(static_cast<void>(apply_gate(state, Gate::single(GateKind::H, 3))), Error);
    CHECK_THROWS_AS(static_cast<void>(apply_gate(state, Gate::single(GateKind::H, 0))), Error);
    CHECK_THROWS_AS(static_cast<void>(apply_gate(state, Gate::cnot(1, 1))), Error);
}

TEST_CASE("gate algebra: R*R == P, P*P == Z, H*H == I up to phase") {
    CHECK(phase_aligned_distance(oracle::mat_r() * oracle::mat_r(), oracle::mat_p()) < 1e-12);
    CHECK(phase_aligned_distance(oracle::mat_p() * oracle::mat_p(), oracle::mat_z()) < 1e-12);
    CHECK(phase_aligned_distance(oracle::mat_h() * oracle::mat_h(),
                                 Eigen::Matrix2cd::Identity()) < 1e-12);

    // The same identities through the simulator on a random state.
    std::mt19937_64 gen(21);
    const StateVector psi = oracle::random_state(1, gen);
    const StateVector rr =
        apply_gate(apply_gate(psi, Gate::single(GateKind::R, 1)), Gate::single(GateKind::R, 1));
    CHECK(equal_up_to_phase(rr, apply_gate(psi, Gate::single(GateKind::P, 1)), 1e-12));
}

TEST_CASE("gates on disjoint qubits commute") {
    std::mt19937_64 gen(33);
    const StateVector psi = oracle::random_state(3, gen);
    const Gate a = Gate::single(GateKind::H, 1);
    const Gate b = Gate::single(GateKind::R, 3);
    const StateVector ab = apply_gate(apply_gate(psi, a), b);
    const StateVector ba = apply_gate(apply_gate(psi, b), a);
    for (std::size_t i = 0; i < ab.dim(); ++i) {
        CHECK(std::abs(ab.amplitude(i) - ba.amplitude(i)) < 1e-12);
    }
}

TEST_CASE("equal_up_to_phase semantics") {
    std::mt19937_64 gen(9);
    const StateVector psi = oracle::random_state(2, gen);
    std::vector<cdouble> rotated(psi.amplitudes());
    const cdouble phase = std::polar(1.0, 0.7);
    for (auto& a : rotated) a *= phase;
    CHECK(equal_up_to_phase(psi, StateVector::from_amplitudes(std::move(rotated)), 1e-9));

    CHECK_FALSE(equal_up_to_phase(StateVector::basis({0}), StateVector::basis({1}), 1e-9));

    const StateVector hx =
        apply_gate(apply_gate(StateVector(1), Gate::single(GateKind::X, 1)),
                   Gate::single(GateKind::H, 1));
    const StateVector zh =
        apply_gate(apply_gate(StateVector(1), Gate::single(GateKind::H, 1)),
                   Gate::single(GateKind::Z, 1));
    CHECK(equal_up_to_phase(hx, zh, 1e-9));

    CHECK_THROWS_AS(equal_up_to_phase(StateVector(1), StateVector(2), 1e-9), Error);
}

TEST_CASE("qotp_apply pinned examples") {
    const StateVector one = qotp_apply(StateVector(1), {1}, {0}, {1});
    CHECK(std::abs(one.amplitude(1) - cdouble(1, 0)) < 1e-12);

    std::mt19937_64 gen(17);
    const StateVector psi = oracle::random_state(2, gen);
    const StateVector same = qotp_apply(psi, {0, 0}, {0, 0}, {1, 2});
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        CHECK(std::abs(same.amplitude(i) - psi.amplitude(i)) < 1e-12);
    }

    // |+> masked with x=1, z=1: X(Z|+>) = X(|0>-|1>)/sqrt2 = (|1>-|0>)/sqrt2.
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector plus = apply_gate(StateVector(1), Gate::single(GateKind::H, 1));
    const StateVector masked = qotp_apply(plus, {1}, {1}, {1});
    CHECK(std::abs(masked.amplitude(0) - cdouble(-s, 0)) < 1e-12);
    CHECK(std::abs(masked.amplitude(1) - cdouble(s, 0)) < 1e-12);
}

TEST_CASE("the mask is an involution up to global phase") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = oracle::random_state(3, gen);
        Bits x(3);
        Bits z(3);
        for (auto& b : x) b = static_cast<std::uint8_t>(gen() & 1u);
        for (auto& b : z) b = static_cast<std::uint8_t>(gen() & 1u);
        const StateVector twice = qotp_apply(qotp_apply(psi, x, z, {1, 2, 3}), x, z, {1, 2, 3});
        CHECK(equal_up_to_phase(twice, psi, 1e-12));
    }
}

TEST_CASE("qotp_apply matches the mask-unitary oracle") {
    std::mt19937_64 gen(1111);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = oracle::random_state(3, gen);
        Bits x(3);
        Bits z(3);
        for (auto& b : x) b = static_cast<std::uint8_t>(gen() & 1u);
        for (auto& b : z) b = static_cast<std::uint8_t>(gen() & 1u);
        const Eigen::VectorXcd expected = oracle::mask_unitary(x, z) * oracle::to_vector(psi);
        const Eigen::VectorXcd got = oracle::to_vector(qotp_apply(psi, x, z, {1, 2, 3}));
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("qotp_apply validates its arguments") {
    const StateVector psi(2);
    CHECK_THROWS_AS(qotp_apply(psi, {1}, {0, 0}, {1, 2}), Error);   // length mismatch
    CHECK_THROWS_AS(qotp_apply(psi, {1}, {0}, {3}), Error);         // bad target
}

TEST_CASE("density_of pinned examples") {
    const DensityMatrix zero = density_of(StateVector(1));
    CHECK(std::abs(zero.entries()(0, 0) - cdouble(1, 0)) < 1e-12);
    CHECK(std::abs(zero.entries()(1, 1)) < 1e-12);

    const StateVector plus = apply_gate(StateVector(1), Gate::single(GateKind::H, 1));
    const DensityMatrix half = density_of(plus);
    for (Eigen::Index r = 0; r < 2; ++r) {
        for (Eigen::Index c = 0; c < 2; ++c) {
            CHECK(std::abs(half.entries()(r, c) - cdouble(0.5, 0)) < 1e-12);
        }
    }

    std::mt19937_64 gen(3);
    const DensityMatrix rho = density_of(oracle::random_state(2, gen));
    CHECK(std::abs(rho.entries().trace() - cdouble(1, 0)) < 1e-12);
    // Rank 1: purity tr(rho^2) == 1.
    CHECK(std::abs((rho.entries() * rho.entries()).trace() - cdouble(1, 0)) < 1e-10);
    CHECK(rho.is_positive_semidefinite());
}

TEST_CASE("DensityMatrix construction validates its invariants") {
    Eigen::MatrixXcd not_hermitian(2, 2);
    not_hermitian << 1.0, cdouble(0, 0.5), cdouble(0, 0.5), 0.0;
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, Error);

    Eigen::MatrixXcd wrong_trace = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix{wrong_trace}, Error);

    Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(2, 3);
    CHECK_THROWS_AS(DensityMatrix{rect}, Error);
}

TEST_CASE("partial_trace pinned examples") {
    const DensityMatrix prod = density_of(StateVector(2));
    const DensityMatrix first = partial_trace(prod, {1});
    CHECK(std::abs(first.entries()(0, 0) - cdouble(1, 0)) < 1e-12);

    // Bell state via H then CNOT.
    const StateVector bell =
        apply_gate(apply_gate(StateVector(2), Gate::single(GateKind::H, 1)), Gate::cnot(1, 2));
    const DensityMatrix reduced = partial_trace(density_of(bell), {1});
    CHECK(reduced.max_entry_distance(maximally_mixed(1)) < 1e-12);
}

TEST_CASE("partial_trace matches the index-summation oracle") {
    std::mt19937_64 gen(71);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector psi = oracle::random_state(3, gen);
        const DensityMatrix reduced = partial_trace(density_of(psi), {1, 2});
        const Eigen::MatrixXcd expected = oracle::reduced_density(psi, {1, 2});
        CHECK(reduced.max_entry_distance(expected) < 1e-10);

        // Also in a permuted keep order.
        const DensityMatrix swapped = partial_trace(density_of(psi), {3, 1});
        CHECK(swapped.max_entry_distance(oracle::reduced_density(psi, {3, 1})) < 1e-10);
    }
}

TEST_CASE("tracing out everything leaves the scalar 1") {
    std::mt19937_64 gen(2);
    const DensityMatrix all = partial_trace(density_of(oracle::random_state(3, gen)), {});
    CHECK(all.dim() == 1);
    CHECK(std::abs(all.entries()(0, 0) - cdouble(1, 0)) < 1e-10);
}

TEST_CASE("partial_trace rejects bad keep lists") {
    const DensityMatrix rho = density_of(StateVector(2));
    CHECK_THROWS_AS(partial_trace(rho, {3}), Error);
    CHECK_THROWS_AS(partial_trace(rho, {1, 1}), Error);
}

TEST_CASE("mix pinned examples") {
    std::mt19937_64 gen(123);
    const DensityMatrix rho = density_of(oracle::random_state(1, gen));
    CHECK(mix({{1.0, rho}}).max_entry_distance(rho.entries()) < 1e-12);

    // All four 1-qubit masks of |0><0| average to I/2.
    std::vector<std::pair<double, DensityMatrix>> terms;
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            const StateVector masked =
                qotp_apply(StateVector(1), {static_cast<std::uint8_t>(x)},
                           {static_cast<std::uint8_t>(z)}, {1});
            terms.emplace_back(0.25, density_of(masked));
        }
    }
    CHECK(mix(terms).max_entry_distance(maximally_mixed(1)) < 1e-12);
}

TEST_CASE("sixteen equal-weight masks of a random 2-qubit state give I/4") {
    std::mt19937_64 gen(321);
    const StateVector psi = oracle::random_state(2, gen);

    std::vector<std::pair<double, DensityMatrix>> terms;
    Eigen::MatrixXcd explicit_sum = Eigen::MatrixXcd::Zero(4, 4);
    for (std::size_t key = 0; key < 16; ++key) {
        const Bits x = index_to_bits(key >> 2, 2);
        const Bits z = index_to_bits(key & 3u, 2);
        const Eigen::VectorXcd masked = oracle::mask_unitary(x, z) * oracle::to_vector(psi);
        explicit_sum += 0.0625 * (masked * masked.adjoint());
        terms.emplace_back(0.0625, density_of(qotp_apply(psi, x, z, {1, 2})));
    }
    const DensityMatrix mixed = mix(terms);
    CHECK(mixed.max_entry_distance(explicit_sum) < 1e-12);
    CHECK(mixed.max_entry_distance(maximally_mixed(2)) < 1e-10);
}

TEST_CASE("mix validates its weights") {
    const DensityMatrix rho = density_of(StateVector(1));
    try {
        mix({{0.5, rho}, {0.6, rho}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::weight_sum);
    }
    CHECK_THROWS_AS(mix({{-0.1, rho}, {1.1, rho}}), Error);
    CHECK_THROWS_AS(mix({}), Error);
}

TEST_CASE("tensor places the first factor on the high qubits") {
    const StateVector joint = tensor(StateVector::basis({0}), StateVector::basis({1}));
    CHECK(joint.num_qubits() == 2);
    CHECK(std::abs(joint.amplitude(1) - cdouble(1, 0)) < 1e-12);
}
