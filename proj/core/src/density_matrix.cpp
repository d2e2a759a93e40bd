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

#include "qfhe/density_matrix.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qfhe {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, double hermitian_tol, double trace_tol)
    : entries_(std::move(entries)) {
    const auto rows = static_cast<std::size_t>(entries_.rows());
    if (entries_.rows() != entries_.cols() || rows == 0 || (rows & (rows - 1)) != 0) {
        throw Error(ErrorKind::dimension_mismatch,
                    "density matrix must be square with power-of-two dimension");
    }
    while ((std::size_t{1} << num_qubits_) < rows) ++num_qubits_;

    const double herm_err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > hermitian_tol) {
        throw Error(ErrorKind::dimension_mismatch,
                    "matrix is not Hermitian (max asymmetry " + std::to_string(herm_err) + ")");
    }
    const double trace_err = std::abs(entries_.trace() - cdouble{1.0, 0.0});
    if (trace_err > trace_tol) {
        throw Error(ErrorKind::dimension_mismatch,
                    "matrix trace differs from 1 by " + std::to_string(trace_err));
    }
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::max_entry_distance(const Eigen::MatrixXcd& other) const {
    if (other.rows() != entries_.rows() || other.cols() != entries_.cols()) {
        throw Error(ErrorKind::dimension_mismatch, "comparing density matrices of unequal size");
    }
    return (entries_ - other).cwiseAbs().maxCoeff();
}

DensityMatrix density_of(const StateVector& state) {
    const auto dim = static_cast<Eigen::Index>(state.dim());
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = state.amplitude(static_cast<std::size_t>(i));
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<std::size_t>& keep) {
    const std::size_t q = dm.num_qubits();
    std::vector<bool> seen(q + 1, false);
    for (std::size_t w : keep) {
        if (w < 1 || w > q) {
            throw Error(ErrorKind::index_out_of_range,
                        "kept qubit " + std::to_string(w) + " outside 1.." + std::to_string(q));
        }
        if (seen[w]) {
            throw Error(ErrorKind::index_out_of_range,
                        "kept qubit " + std::to_string(w) + " listed twice");
        }
        seen[w] = true;
    }

    std::vector<std::size_t> traced;
    for (std::size_t w = 1; w <= q; ++w) {
        if (!seen[w]) traced.push_back(w);
    }

    // Assemble a full index from the kept sub-index, the traced sub-index
    // and the qubit numbering (qubit 1 = MSB of the full index).
    auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            const std::size_t bit = (kept_bits >> (keep.size() - 1 - i)) & 1u;
            idx |= bit << (q - keep[i]);
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            const std::size_t bit = (traced_bits >> (traced.size() - 1 - i)) & 1u;
            idx |= bit << (q - traced[i]);
        }
        return idx;
    };

    const std::size_t kept_dim = std::size_t{1} << keep.size();
    const std::size_t traced_dim = std::size_t{1} << traced.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_dim),
                                                  static_cast<Eigen::Index>(kept_dim));
    for (std::size_t r = 0; r < kept_dim; ++r) {
        for (std::size_t c = 0; c < kept_dim; ++c) {
            cdouble sum{0.0, 0.0};
            for (std::size_t t = 0; t < traced_dim; ++t) {
                sum += dm.entries()(static_cast<Eigen::Index>(full_index(r, t)),
                                    static_cast<Eigen::Index>(full_index(c, t)));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms) {
    if (terms.empty()) {
        throw Error(ErrorKind::weight_sum, "mixture must have at least one term");
    }
    double total = 0.0;
    for (const auto& [w, dm] : terms) {
        if (w < 0.0) {
            throw Error(ErrorKind::weight_sum, "negative mixture weight " + std::to_string(w));
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::weight_sum,
                    "mixture weights sum to " + std::to_string(total) + ", expected 1");
    }
    Eigen::MatrixXcd sum =
        Eigen::MatrixXcd::Zero(terms.front().second.entries().rows(),
                               terms.front().second.entries().cols());
    for (const auto& [w, dm] : terms) {
        if (dm.entries().rows() != sum.rows()) {
            throw Error(ErrorKind::dimension_mismatch, "mixture terms of unequal size");
        }
        sum += w * dm.entries();
    }
    return DensityMatrix(std::move(sum));
}

Eigen::MatrixXcd maximally_mixed(std::size_t num_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    return Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
}

}  // namespace qfhe
