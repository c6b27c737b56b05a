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
 * Operator reconstruction from probability oracles.  Any device whose flash
 * probability is a Hermitian quadratic form is pinned down by N^2 oracle
 * calls on a fixed polarization family; companion checks verify the
 * quadratic-form conclusion on random states and the frame-function
 * premises (nonnegativity, basis-sum constancy) on random bases.  The
 * two-dimensional case is handled by embedding the device into a
 * two-particle four-dimensional problem and extracting the relevant block.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qpovm/qmodel.hpp"

namespace qpovm::gleason {

using linalg::ComplexMatrix;
using linalg::cplx;
using qmodel::HermitianOperator;
using qmodel::PovmElement;
using qmodel::PureState;

/// A black-box probability assignment on pure states.  Evaluators must be
/// reentrant (no internal mutable state); every returned value is checked
/// against [-1e-10, 1 + 1e-10].
class ProbabilityOracle {
  public:
    using Evaluator = std::function<double(const PureState&)>;

    ProbabilityOracle(std::size_t dimension, Evaluator evaluate)
        : dimension_(dimension), evaluate_(std::move(evaluate)) {
        require(dimension_ >= 1, errc::invalid_dimension, "oracle dimension must be positive");
        require(static_cast<bool>(evaluate_), errc::invalid_config, "oracle needs an evaluator");
    }

    /// The quadratic-form oracle of a known device.
    static ProbabilityOracle from_device(const PovmElement& device) {
        return ProbabilityOracle(device.dimension(), [device](const PureState& psi) {
            return qmodel::device_probability(device, psi);
        });
    }

    std::size_t dimension() const noexcept { return dimension_; }

    double operator()(const PureState& psi) const {
        require(psi.dimension() == dimension_, errc::shape_mismatch,
                "oracle queried with a state of the wrong dimension");
        const double p = evaluate_(psi);
        require(std::isfinite(p) && p >= -1e-10 && p <= 1.0 + 1e-10, errc::invalid_oracle,
                "oracle returned " + std::to_string(p) + ", outside [0,1]");
        return p;
    }

  private:
    std::size_t dimension_;
    Evaluator evaluate_;
};

namespace detail {

/// (|m> + |n>)/sqrt(2) for 0-based m < n.
inline PureState plus_superposition(std::size_t dim, std::size_t m, std::size_t n) {
    std::vector<cplx> amps(dim, cplx{0.0, 0.0});
    const double h = 1.0 / std::sqrt(2.0);
    amps[m] = h;
    amps[n] = h;
    return PureState::normalized(std::move(amps));
}

/// (|m> + i|n>)/sqrt(2) for 0-based m < n.
inline PureState phase_superposition(std::size_t dim, std::size_t m, std::size_t n) {
    std::vector<cplx> amps(dim, cplx{0.0, 0.0});
    const double h = 1.0 / std::sqrt(2.0);
    amps[m] = h;
    amps[n] = cplx{0.0, h};
    return PureState::normalized(std::move(amps));
}

}  // namespace detail

/**
 * Reconstructs the Hermitian operator behind an oracle using exactly N^2
 * calls: the diagonal from basis states, the off-diagonal real and
 * imaginary parts from the polarization states (|m>+|n>)/sqrt(2) and
 * (|m>+i|n>)/sqrt(2).
 */
inline HermitianOperator reconstruct_operator(const ProbabilityOracle& oracle) {
    const std::size_t n = oracle.dimension();
    require(n >= 2, errc::invalid_dimension, "reconstruction needs dimension >= 2");

    ComplexMatrix a(n, n);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = oracle(PureState::basis(n, i + 1));
        a(i, i) = diag[i];
    }
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = m + 1; k < n; ++k) {
            const double mean = 0.5 * (diag[m] + diag[k]);
            const double re = oracle(detail::plus_superposition(n, m, k)) - mean;
            const double im = mean - oracle(detail::phase_superposition(n, m, k));
            a(m, k) = cplx{re, im};
            a(k, m) = cplx{re, -im};
        }
    }
    return HermitianOperator(std::move(a));
}

/// Max deviation |oracle(psi) - <psi|A|psi>| over Haar-random pure states.
inline double verify_quadratic_form(const ProbabilityOracle& oracle,
                                    const HermitianOperator& a, std::size_t samples,
                                    RandomStream& rng) {
    require(a.dimension() == oracle.dimension(), errc::shape_mismatch,
            "operator dimension does not match the oracle");
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const PureState psi = qmodel::haar_random_state(oracle.dimension(), rng);
        const double form = linalg::quadratic_form(a.matrix(), psi.amplitudes()).real();
        worst = std::max(worst, std::abs(oracle(psi) - form));
    }
    return worst;
}

struct PremiseReport {
    bool nonnegative;                ///< every sampled value >= -1e-10
    double min_value;                ///< smallest oracle value observed
    std::vector<double> sums;        ///< basis sums, one per sampled basis
    double max_spread;               ///< max(sums) - min(sums)
    bool within_theorem_hypothesis;  ///< dimension >= 3
};

/**
 * Samples Haar-random orthonormal bases and evaluates the basis sum
 * sum_n p(|e_n>); a constant sum (zero spread) over all bases is the frame
 * function premise.  Dimension 2 is allowed for diagnostics but flagged as
 * outside the theorem's hypothesis.
 */
inline PremiseReport verify_gleason_premises(const ProbabilityOracle& oracle,
                                             std::size_t bases, RandomStream& rng) {
    const std::size_t n = oracle.dimension();
    require(n >= 2, errc::invalid_dimension, "premise check needs dimension >= 2");
    PremiseReport report;
    report.within_theorem_hypothesis = n >= 3;
    report.min_value = 1.0;
    report.sums.reserve(bases);
    for (std::size_t b = 0; b < bases; ++b) {
        const ComplexMatrix u = linalg::haar_random_unitary(n, rng);
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<cplx> col(n);
            for (std::size_t i = 0; i < n; ++i) {
                col[i] = u(i, j);
            }
            const double p = oracle(PureState::normalized(std::move(col)));
            report.min_value = std::min(report.min_value, p);
            sum += p;
        }
        report.sums.push_back(sum);
    }
    report.nonnegative = report.min_value >= -1e-10;
    const auto [lo, hi] = std::minmax_element(report.sums.begin(), report.sums.end());
    report.max_spread = report.sums.empty() ? 0.0 : *hi - *lo;
    return report;
}

/**
 * Two-dimensional reduction: a dimension-2 device oracle is lifted to the
 * four-dimensional joint oracle of a two-particle system with the second
 * particle inert, reconstructed there (inside the theorem's hypothesis),
 * and the 2x2 block with row/column indices of |11> and |21> is returned.
 *
 * The lift uses only oracle calls: a device acting on the upper factor
 * alone is block-diagonal in the lower index, so the joint probability is
 * the weighted mixture sum_l ||v_l||^2 p(v_l / ||v_l||) over the lower-index
 * slices v_l of the joint state.
 */
inline HermitianOperator reduce_two_dim(const ProbabilityOracle& oracle2) {
    require(oracle2.dimension() == 2, errc::shape_mismatch,
            "two-dimensional reduction needs a dimension-2 oracle");

    const ProbabilityOracle joint(4, [&oracle2](const PureState& joint_state) {
        double total = 0.0;
        for (std::size_t l = 0; l < 2; ++l) {
            std::vector<cplx> slice = {joint_state.amplitudes()[0 * 2 + l],
                                       joint_state.amplitudes()[1 * 2 + l]};
            const double weight = linalg::norm2(slice);
            if (weight > 0.0) {
                total += weight * oracle2(PureState::normalized(std::move(slice)));
            }
        }
        return total;
    });

    const HermitianOperator a4 = reconstruct_operator(joint);
    // Flat indices of |11> and |21>: (k-1)*2 + (l-1) with l = 1.
    const std::size_t idx[2] = {0, 2};
    ComplexMatrix block(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            block(i, j) = a4.matrix()(idx[i], idx[j]);
        }
    }
    return HermitianOperator(std::move(block));
}

}  // namespace qpovm::gleason
