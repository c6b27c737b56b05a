// Copyright 2026 The qpovm developers.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Projective-measurement verification: a device with certain (0/1) outcomes
 * on an observable's eigenstates must be the projector onto the matching
 * eigenspace.  The argument is checked stepwise -- diagonal dichotomy,
 * trace and Frobenius invariants, off-diagonal mass, eigenvalue bounds --
 * so a failing device pinpoints which identity breaks.  Degenerate
 * eigenspaces are handled by projector sums, never by individual
 * eigenvector identity, so every verdict is rotation-invariant within an
 * eigenspace.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpovm/qmodel.hpp"

namespace qpovm::bornrule {

using linalg::ComplexMatrix;
using linalg::cplx;
using qmodel::HermitianOperator;
using qmodel::PovmElement;
using qmodel::PureState;

class Observable {
  public:
    explicit Observable(ComplexMatrix m) : op_(std::move(m)) {
        spectrum_ = linalg::hermitian_eigendecomposition(op_.matrix());
        const double radius =
            std::max(std::abs(spectrum_.eigenvalues.front()),
                     std::abs(spectrum_.eigenvalues.back()));
        grouping_tolerance_ = 1e-8 * std::max(1.0, radius);
        // Eigenvalues are ascending; chain indices whose gaps stay within
        // the grouping tolerance into one eigenspace.
        groups_.push_back({0});
        for (std::size_t i = 1; i < spectrum_.eigenvalues.size(); ++i) {
            if (spectrum_.eigenvalues[i] - spectrum_.eigenvalues[i - 1] <=
                grouping_tolerance_) {
                groups_.back().push_back(i);
            } else {
                groups_.push_back({i});
            }
        }
    }

    const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
    std::size_t dimension() const noexcept { return op_.dimension(); }
    const linalg::Spectrum& spectrum() const noexcept { return spectrum_; }
    double grouping_tolerance() const noexcept { return grouping_tolerance_; }

    /// Eigenvector index groups, one per eigenspace, ascending eigenvalue.
    const std::vector<std::vector<std::size_t>>& eigenspace_groups() const noexcept {
        return groups_;
    }

    /// One representative eigenvalue per eigenspace (group mean).
    std::vector<double> distinct_eigenvalues() const {
        std::vector<double> out;
        out.reserve(groups_.size());
        for (const auto& g : groups_) {
            double mean = 0.0;
            for (std::size_t i : g) {
                mean += spectrum_.eigenvalues[i];
            }
            out.push_back(mean / static_cast<double>(g.size()));
        }
        return out;
    }

    /// Index of the eigenspace matching lambda, or an unknown-eigenvalue
    /// error listing the available eigenvalues.
    std::size_t group_of(double lambda) const {
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            for (std::size_t i : groups_[g]) {
                if (std::abs(spectrum_.eigenvalues[i] - lambda) <= grouping_tolerance_) {
                    return g;
                }
            }
        }
        std::ostringstream msg;
        msg << "no eigenspace matches lambda = " << lambda << "; available eigenvalues:";
        for (double v : distinct_eigenvalues()) {
            msg << ' ' << v;
        }
        fail(errc::unknown_eigenvalue, msg.str());
    }

  private:
    HermitianOperator op_;
    linalg::Spectrum spectrum_;
    std::vector<std::vector<std::size_t>> groups_;
    double grouping_tolerance_ = 1e-8;
};

/// P = sum |phi_n><phi_n| over the eigenspace matching lambda.
inline HermitianOperator projector_onto_eigenspace(const Observable& o, double lambda) {
    const std::size_t g = o.group_of(lambda);
    const std::size_t n = o.dimension();
    ComplexMatrix p(n, n);
    for (std::size_t idx : o.eigenspace_groups()[g]) {
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = o.spectrum().eigenvectors(i, idx);
            for (std::size_t j = 0; j < n; ++j) {
                p(i, j) += vi * std::conj(o.spectrum().eigenvectors(j, idx));
            }
        }
    }
    return HermitianOperator(std::move(p));
}

/// Stepwise verdict on whether a candidate device equals the eigenspace
/// projector.  Thresholds: diagonal dichotomy and off-diagonal mass at
/// 1e-8, device eigenvalue bounds at [-1e-8, 1+1e-8].
struct ProjectiveVerdict {
    bool diagonal_ok;              ///< every A_nn within 1e-8 of its 0/1 target
    double diagonal_residual;      ///< max |A_nn - target_n|
    double trace_lhs;              ///< sum_n A_nn in the eigenbasis
    double trace_rhs;              ///< sum_k a_k over the device spectrum
    double frobenius_lhs;          ///< sum_{m,n} |A_mn|^2
    double frobenius_rhs;          ///< sum_k a_k^2
    double offdiag_mass;           ///< sum_{m != n} |A_mn|^2
    bool eigenvalue_bounds_ok;     ///< device spectrum within [-1e-8, 1+1e-8]
    bool is_projector;             ///< all of the above hold
    double distance_to_projector;  ///< ||A - P_lambda||_F
};

inline ProjectiveVerdict verify_projective_device(const HermitianOperator& device,
                                                  const Observable& o, double lambda) {
    require(device.dimension() == o.dimension(), errc::shape_mismatch,
            "device dimension does not match the observable");
    const std::size_t g = o.group_of(lambda);
    const std::size_t n = o.dimension();

    // Device matrix in the observable's eigenbasis: B = V^dagger A V.
    const ComplexMatrix& v = o.spectrum().eigenvectors;
    const ComplexMatrix b = linalg::adjoint(v) * device.matrix() * v;

    ProjectiveVerdict verdict{};
    const auto& group = o.eigenspace_groups()[g];
    double diag_residual = 0.0;
    double trace_lhs = 0.0;
    double frobenius_lhs = 0.0;
    double offdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_group = std::find(group.begin(), group.end(), i) != group.end();
        const double target = in_group ? 1.0 : 0.0;
        diag_residual = std::max(diag_residual, std::abs(b(i, i) - cplx{target, 0.0}));
        trace_lhs += b(i, i).real();
        for (std::size_t j = 0; j < n; ++j) {
            const double mag2 = std::norm(b(i, j));
            frobenius_lhs += mag2;
            if (i != j) {
                offdiag += mag2;
            }
        }
    }

    const linalg::Spectrum device_spectrum =
        linalg::hermitian_eigendecomposition(device.matrix());
    double trace_rhs = 0.0;
    double frobenius_rhs = 0.0;
    for (double a : device_spectrum.eigenvalues) {
        trace_rhs += a;
        frobenius_rhs += a * a;
    }

    verdict.diagonal_residual = diag_residual;
    verdict.diagonal_ok = diag_residual <= 1e-8;
    verdict.trace_lhs = trace_lhs;
    verdict.trace_rhs = trace_rhs;
    verdict.frobenius_lhs = frobenius_lhs;
    verdict.frobenius_rhs = frobenius_rhs;
    verdict.offdiag_mass = offdiag;
    verdict.eigenvalue_bounds_ok = device_spectrum.eigenvalues.front() >= -1e-8 &&
                                   device_spectrum.eigenvalues.back() <= 1.0 + 1e-8;
    verdict.is_projector =
        verdict.diagonal_ok && verdict.eigenvalue_bounds_ok && verdict.offdiag_mass <= 1e-8;

    const HermitianOperator projector = projector_onto_eigenspace(o, lambda);
    verdict.distance_to_projector =
        linalg::frobenius_norm(device.matrix() - projector.matrix());
    return verdict;
}

/// p_lambda(psi) = <psi|P_lambda|psi>; for a nondegenerate lambda this is
/// |<phi_lambda|psi>|^2.
inline double born_probability(const Observable& o, double lambda, const PureState& psi) {
    require(psi.dimension() == o.dimension(), errc::shape_mismatch,
            "state dimension does not match the observable");
    const HermitianOperator p = projector_onto_eigenspace(o, lambda);
    return qmodel::device_probability(PovmElement(p.matrix()), psi);
}

}  // namespace qpovm::bornrule
