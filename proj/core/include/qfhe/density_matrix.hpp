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

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qfhe/common.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {

/// Hermitian trace-1 operator over a small register. Construction checks
/// Hermiticity and trace; positive semidefiniteness is exposed separately
/// because it needs an eigendecomposition.
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd entries, double hermitian_tol = 1e-10,
                           double trace_tol = 1e-10);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    /// Smallest eigenvalue; >= -1e-8 for a valid state.
    double min_eigenvalue() const;

    bool is_positive_semidefinite(double tol = 1e-8) const { return min_eigenvalue() >= -tol; }

    /// Largest |entry| of (*this - other).
    double max_entry_distance(const Eigen::MatrixXcd& other) const;

  private:
    Eigen::MatrixXcd entries_;
    std::size_t num_qubits_ = 0;
};

DensityMatrix density_of(const StateVector& state);

/// Reduced state on `keep` (1-based, distinct). The kept qubits appear in the
/// result in the order listed, qubit keep[0] most significant.
DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<std::size_t>& keep);

/// Convex combination. Weights must be nonnegative and sum to 1 within 1e-12.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms);

/// I / 2^q.
Eigen::MatrixXcd maximally_mixed(std::size_t num_qubits);

}  // namespace qfhe
