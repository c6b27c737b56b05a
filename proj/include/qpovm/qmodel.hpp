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
 * Quantum object model: pure and bipartite states, unitary gates, Hermitian
 * operators and POVM elements, ideal basis meters with collapse, and
 * black-box two-outcome devices.
 *
 * Basis labels are 1-based at the API surface (basis(), outcome labels);
 * amplitude storage is 0-based.  All values are immutable after
 * construction; sampling operations take an explicit RandomStream.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpovm/errors.hpp"
#include "qpovm/linalg.hpp"
#include "qpovm/rng.hpp"

namespace qpovm::qmodel {

using linalg::ComplexMatrix;
using linalg::cplx;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kStructureTolerance = 1e-10;

class PureState {
  public:
    PureState(std::size_t dimension, std::vector<cplx> amplitudes)
        : amplitudes_(std::move(amplitudes)) {
        require(dimension >= 1, errc::invalid_dimension, "state dimension must be positive");
        require(amplitudes_.size() == dimension, errc::shape_mismatch,
                "amplitude count does not match dimension");
        for (const cplx& a : amplitudes_) {
            require(std::isfinite(a.real()) && std::isfinite(a.imag()), errc::invalid_state,
                    "non-finite amplitude");
        }
        require(std::abs(linalg::norm2(amplitudes_) - 1.0) <= kNormTolerance,
                errc::invalid_state, "state is not normalized");
    }

    /// Basis ket |label> with a 1-based label.
    static PureState basis(std::size_t dimension, std::size_t label) {
        require(label >= 1 && label <= dimension, errc::invalid_dimension,
                "basis label out of range 1..N");
        std::vector<cplx> amps(dimension, cplx{0.0, 0.0});
        amps[label - 1] = 1.0;
        return PureState(dimension, std::move(amps));
    }

    /// Rescales to unit norm; rejects the zero vector.
    static PureState normalized(std::vector<cplx> amplitudes) {
        const double n2 = linalg::norm2(amplitudes);
        require(n2 > 0.0 && std::isfinite(n2), errc::invalid_state,
                "cannot normalize a zero or non-finite vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& a : amplitudes) {
            a *= inv;
        }
        const std::size_t dim = amplitudes.size();
        return PureState(dim, std::move(amplitudes));
    }

    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }

  private:
    std::vector<cplx> amplitudes_;
};

enum class Side { upper, lower };

inline const char* side_name(Side s) noexcept { return s == Side::upper ? "upper" : "lower"; }

/// Two-particle state on a tensor-product space with explicit factor
/// dimensions.  Flattening: |k>|l> sits at (k-1)*N_lower + (l-1).
class BipartiteState {
  public:
    BipartiteState(std::size_t upper_dim, std::size_t lower_dim, std::vector<cplx> amplitudes)
        : upper_dim_(upper_dim), lower_dim_(lower_dim), amplitudes_(std::move(amplitudes)) {
        require(upper_dim_ >= 1 && lower_dim_ >= 1, errc::invalid_dimension,
                "factor dimensions must be positive");
        require(amplitudes_.size() == upper_dim_ * lower_dim_, errc::shape_mismatch,
                "amplitude count does not match factor dimensions");
        for (const cplx& a : amplitudes_) {
            require(std::isfinite(a.real()) && std::isfinite(a.imag()), errc::invalid_state,
                    "non-finite amplitude");
        }
        require(std::abs(linalg::norm2(amplitudes_) - 1.0) <= kNormTolerance,
                errc::invalid_state, "joint state is not normalized");
    }

    std::size_t upper_dimension() const noexcept { return upper_dim_; }
    std::size_t lower_dimension() const noexcept { return lower_dim_; }
    std::size_t dimension(Side s) const noexcept {
        return s == Side::upper ? upper_dim_ : lower_dim_;
    }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }

    /// 0-based factor indices.
    const cplx& amplitude(std::size_t k, std::size_t l) const noexcept {
        return amplitudes_[k * lower_dim_ + l];
    }

  private:
    std::size_t upper_dim_ = 0;
    std::size_t lower_dim_ = 0;
    std::vector<cplx> amplitudes_;
};

class UnitaryGate {
  public:
    explicit UnitaryGate(ComplexMatrix m, double tolerance = kStructureTolerance)
        : matrix_(std::move(m)) {
        require(matrix_.square(), errc::shape_mismatch, "gate matrix must be square");
        require(matrix_.all_finite(), errc::invalid_state, "gate matrix has non-finite entries");
        const double residual = linalg::unitarity_residual(matrix_);
        require(residual <= tolerance, errc::not_unitary,
                "gate is not unitary (max-entry residual " + std::to_string(residual) + ")");
    }

    static UnitaryGate identity(std::size_t n) { return UnitaryGate(ComplexMatrix::identity(n)); }

    static UnitaryGate pauli_x() {
        return UnitaryGate(ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    }

    static UnitaryGate hadamard() {
        const double h = 1.0 / std::sqrt(2.0);
        return UnitaryGate(ComplexMatrix::from_rows({{h, h}, {h, -h}}));
    }

    /// Discrete Fourier transform matrix, any dimension.
    static UnitaryGate fourier(std::size_t n) {
        require(n >= 1, errc::invalid_dimension, "fourier gate needs n >= 1");
        ComplexMatrix f(n, n);
        const double inv = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = 0; l < n; ++l) {
                const double angle = 2.0 * 3.14159265358979323846 *
                                     static_cast<double>(k * l % n) / static_cast<double>(n);
                f(k, l) = cplx{inv * std::cos(angle), inv * std::sin(angle)};
            }
        }
        return UnitaryGate(std::move(f));
    }

    static UnitaryGate haar_random(std::size_t n, RandomStream& rng) {
        return UnitaryGate(linalg::haar_random_unitary(n, rng));
    }

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dimension() const noexcept { return matrix_.rows(); }

  private:
    ComplexMatrix matrix_;
};

/// Hermitian matrix; inputs within the hermiticity tolerance are
/// symmetrized to (A + A^dagger)/2, anything worse is rejected.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m, double tolerance = kStructureTolerance) {
        require(m.square(), errc::shape_mismatch, "operator matrix must be square");
        require(m.all_finite(), errc::invalid_state, "operator matrix has non-finite entries");
        const double scale = std::max(1.0, linalg::max_abs(m));
        const double residual = linalg::hermiticity_residual(m);
        require(residual <= tolerance * scale, errc::not_hermitian,
                "operator is not Hermitian (max-entry residual " + std::to_string(residual) +
                    ")");
        matrix_ = 0.5 * (m + linalg::adjoint(m));
    }

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dimension() const noexcept { return matrix_.rows(); }

  private:
    ComplexMatrix matrix_;
};

/// Hermitian operator with spectrum in [0,1]; the quadratic form
/// <psi|A|psi> is the flash probability of the black-box device.  The
/// two-outcome POVM {A, I-A} is implied.
class PovmElement {
  public:
    explicit PovmElement(ComplexMatrix m, double tolerance = kStructureTolerance)
        : op_(std::move(m), tolerance) {
        const linalg::Spectrum s = linalg::hermitian_eigendecomposition(op_.matrix());
        eigenvalues_ = s.eigenvalues;
        require(eigenvalues_.front() >= -kStructureTolerance &&
                    eigenvalues_.back() <= 1.0 + kStructureTolerance,
                errc::spectrum_out_of_range,
                "device spectrum extends outside [0,1]: [" +
                    std::to_string(eigenvalues_.front()) + ", " +
                    std::to_string(eigenvalues_.back()) + "]");
    }

    static PovmElement identity(std::size_t n) {
        return PovmElement(ComplexMatrix::identity(n));
    }

    /// Rank-one projector |phi><phi|.
    static PovmElement projector(const PureState& phi) {
        const std::size_t n = phi.dimension();
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = phi.amplitudes()[i] * std::conj(phi.amplitudes()[j]);
            }
        }
        return PovmElement(std::move(m));
    }

    const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
    std::size_t dimension() const noexcept { return op_.dimension(); }
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    const HermitianOperator& as_hermitian() const noexcept { return op_; }

  private:
    HermitianOperator op_;
    std::vector<double> eigenvalues_;
};

/// A complete measurement: elements summing to the identity, one result
/// label per element.
class Povm {
  public:
    Povm(std::vector<PovmElement> elements, std::vector<int> labels)
        : elements_(std::move(elements)), labels_(std::move(labels)) {
        require(!elements_.empty(), errc::invalid_config, "POVM needs at least one element");
        require(labels_.size() == elements_.size(), errc::invalid_config,
                "one result label per POVM element required");
        const std::size_t n = elements_.front().dimension();
        ComplexMatrix sum(n, n);
        for (const PovmElement& e : elements_) {
            require(e.dimension() == n, errc::shape_mismatch,
                    "POVM elements must share one dimension");
            sum = sum + e.matrix();
        }
        const double residual = linalg::max_abs(sum - ComplexMatrix::identity(n));
        require(residual <= kStructureTolerance, errc::povm_incomplete,
                "POVM elements do not sum to the identity (max-entry residual " +
                    std::to_string(residual) + ")");
    }

    const std::vector<PovmElement>& elements() const noexcept { return elements_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    std::size_t dimension() const noexcept { return elements_.front().dimension(); }

  private:
    std::vector<PovmElement> elements_;
    std::vector<int> labels_;
};

struct MeasurementRecord {
    std::size_t outcome;  ///< 1-based basis label
    PureState remote;     ///< state prepared on the unmeasured particle
};

/// |Psi_N> = sum_k |k>|k> / sqrt(N).
inline BipartiteState max_entangled_state(std::size_t n) {
    require(n >= 2, errc::invalid_dimension, "maximally entangled state needs n >= 2");
    std::vector<cplx> amps(n * n, cplx{0.0, 0.0});
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        amps[k * n + k] = a;
    }
    return BipartiteState(n, n, std::move(amps));
}

inline BipartiteState product_state(const PureState& upper, const PureState& lower) {
    std::vector<cplx> amps(upper.dimension() * lower.dimension());
    for (std::size_t k = 0; k < upper.dimension(); ++k) {
        for (std::size_t l = 0; l < lower.dimension(); ++l) {
            amps[k * lower.dimension() + l] = upper.amplitudes()[k] * lower.amplitudes()[l];
        }
    }
    return BipartiteState(upper.dimension(), lower.dimension(), std::move(amps));
}

inline PureState apply_gate(const PureState& psi, const UnitaryGate& gate) {
    require(gate.dimension() == psi.dimension(), errc::shape_mismatch,
            "gate dimension does not match state dimension");
    return PureState(psi.dimension(), linalg::matvec(gate.matrix(), psi.amplitudes()));
}

/// One-sided action (U x I) or (I x U) without forming the full product
/// matrix.
inline BipartiteState apply_gate(const BipartiteState& state, const UnitaryGate& gate,
                                 Side side) {
    require(gate.dimension() == state.dimension(side), errc::shape_mismatch,
            std::string("gate dimension does not match the ") + side_name(side) + " factor");
    const std::size_t nu = state.upper_dimension();
    const std::size_t nl = state.lower_dimension();
    const ComplexMatrix& u = gate.matrix();
    std::vector<cplx> out(nu * nl, cplx{0.0, 0.0});
    if (side == Side::upper) {
        for (std::size_t k = 0; k < nu; ++k) {
            for (std::size_t m = 0; m < nu; ++m) {
                const cplx ukm = u(k, m);
                if (ukm == cplx{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t l = 0; l < nl; ++l) {
                    out[k * nl + l] += ukm * state.amplitude(m, l);
                }
            }
        }
    } else {
        for (std::size_t k = 0; k < nu; ++k) {
            for (std::size_t l = 0; l < nl; ++l) {
                cplx s{0.0, 0.0};
                for (std::size_t m = 0; m < nl; ++m) {
                    s += u(l, m) * state.amplitude(k, m);
                }
                out[k * nl + l] = s;
            }
        }
    }
    return BipartiteState(nu, nl, std::move(out));
}

namespace detail {

inline double clamp_probability(const cplx& q, const std::string& what) {
    require(std::abs(q.imag()) <= 1e-12, errc::numeric_failure,
            what + ": quadratic form has imaginary residue");
    require(q.real() >= -kStructureTolerance && q.real() <= 1.0 + kStructureTolerance,
            errc::numeric_failure, what + ": probability outside [0,1] beyond tolerance");
    return std::min(1.0, std::max(0.0, q.real()));
}

}  // namespace detail

/// p(psi) = <psi|A|psi>, clamped to [0,1] for reporting.
inline double device_probability(const PovmElement& a, const PureState& psi) {
    require(a.dimension() == psi.dimension(), errc::shape_mismatch,
            "device dimension does not match state dimension");
    return detail::clamp_probability(linalg::quadratic_form(a.matrix(), psi.amplitudes()),
                                     "device_probability");
}

/// <Psi|(A x I)|Psi> or <Psi|(I x A)|Psi> for a one-particle device on the
/// chosen factor.  Computed factor-slice by factor-slice; the device matrix
/// is never tensored up.
inline double joint_device_probability(const PovmElement& a, const BipartiteState& state,
                                       Side side) {
    require(a.dimension() == state.dimension(side), errc::shape_mismatch,
            std::string("device dimension does not match the ") + side_name(side) + " factor");
    const std::size_t nu = state.upper_dimension();
    const std::size_t nl = state.lower_dimension();
    const ComplexMatrix& m = a.matrix();
    cplx total{0.0, 0.0};
    if (side == Side::upper) {
        for (std::size_t l = 0; l < nl; ++l) {
            for (std::size_t k = 0; k < nu; ++k) {
                cplx row{0.0, 0.0};
                for (std::size_t kp = 0; kp < nu; ++kp) {
                    row += m(k, kp) * state.amplitude(kp, l);
                }
                total += std::conj(state.amplitude(k, l)) * row;
            }
        }
    } else {
        for (std::size_t k = 0; k < nu; ++k) {
            for (std::size_t l = 0; l < nl; ++l) {
                cplx row{0.0, 0.0};
                for (std::size_t lp = 0; lp < nl; ++lp) {
                    row += m(l, lp) * state.amplitude(k, lp);
                }
                total += std::conj(state.amplitude(k, l)) * row;
            }
        }
    }
    return detail::clamp_probability(total, "joint_device_probability");
}

/// Computational-basis outcome distribution of the chosen factor.
inline std::vector<double> branch_distribution(const BipartiteState& state, Side side) {
    const std::size_t nu = state.upper_dimension();
    const std::size_t nl = state.lower_dimension();
    std::vector<double> p(state.dimension(side), 0.0);
    for (std::size_t k = 0; k < nu; ++k) {
        for (std::size_t l = 0; l < nl; ++l) {
            p[side == Side::upper ? k : l] += std::norm(state.amplitude(k, l));
        }
    }
    return p;
}

/**
 * Ideal basis meter on one factor.  The outcome is sampled by inverse-CDF
 * over cumulative branch probabilities in basis order with a single uniform
 * draw; a zero-probability branch can never be selected.  The record holds
 * the 1-based outcome label and the renormalized state prepared on the
 * other particle.
 */
inline MeasurementRecord meter_measure(const BipartiteState& state, Side side,
                                       RandomStream& rng) {
    const std::vector<double> p = branch_distribution(state, side);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    const double u = rng.uniform() * total;
    std::size_t outcome = 0;
    bool found = false;
    double cum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        cum += p[i];
        if (p[i] > 0.0 && u < cum) {
            outcome = i;
            found = true;
            break;
        }
    }
    if (!found) {
        // Rounding pushed u past the last cumulative step; take the last
        // branch with nonzero probability.
        for (std::size_t i = p.size(); i-- > 0;) {
            if (p[i] > 0.0) {
                outcome = i;
                found = true;
                break;
            }
        }
    }
    require(found, errc::numeric_failure, "meter found no branch with positive probability");

    const std::size_t remote_dim =
        side == Side::upper ? state.lower_dimension() : state.upper_dimension();
    std::vector<cplx> remote(remote_dim);
    for (std::size_t i = 0; i < remote_dim; ++i) {
        remote[i] = side == Side::upper ? state.amplitude(outcome, i)
                                        : state.amplitude(i, outcome);
    }
    return MeasurementRecord{outcome + 1, PureState::normalized(std::move(remote))};
}

/// One black-box trial: the lamp flashes with probability <psi|A|psi>.
inline bool sample_device(const PovmElement& a, const PureState& psi, RandomStream& rng) {
    return rng.uniform() < device_probability(a, psi);
}

/// Haar-random pure state (normalized vector of standard complex gaussians).
inline PureState haar_random_state(std::size_t n, RandomStream& rng) {
    require(n >= 1, errc::invalid_dimension, "haar_random_state needs n >= 1");
    std::vector<cplx> amps(n);
    for (cplx& a : amps) {
        a = rng.complex_gaussian();
    }
    return PureState::normalized(std::move(amps));
}

}  // namespace qpovm::qmodel
