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
 * The three thought experiments: a black-box device fed one particle of
 * |Psi_N> directly (a), after the envariant gate pair (b), or after a basis
 * meter on the other particle followed by the gate U (c).  Exact
 * evaluation, event-by-event Monte-Carlo simulation, and the basis-sum and
 * permutation-sum identities that feed the frame-function argument.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpovm/envariance.hpp"
#include "qpovm/qmodel.hpp"

namespace qpovm::experiments {

using qmodel::BipartiteState;
using qmodel::PovmElement;
using qmodel::PureState;
using qmodel::Side;
using qmodel::UnitaryGate;

enum class Variant { a, b, c };

inline char variant_name(Variant v) noexcept {
    switch (v) {
        case Variant::a: return 'a';
        case Variant::b: return 'b';
        case Variant::c: return 'c';
    }
    return '?';
}

struct ExperimentConfig {
    std::size_t dimension;
    PovmElement device;
    UnitaryGate gate;
    Variant variant;
    std::uint64_t trials = 0;  ///< Monte-Carlo only
};

struct MonteCarloEstimate {
    double estimate;
    double std_error;  ///< sqrt(p(1-p)/trials) from the sample frequency
    std::uint64_t trials;
    std::uint64_t flashes;
};

struct ExperimentResult {
    double exact_probability = 0.0;
    std::vector<double> branch_weights;        ///< a_n (variant c)
    std::vector<double> branch_probabilities;  ///< joint P_n = a_n p(U|n>) (variant c)
    std::optional<MonteCarloEstimate> monte_carlo;
};

namespace detail {

inline void validate(const ExperimentConfig& config) {
    require(config.dimension >= 2, errc::invalid_dimension,
            "experiment dimension must be at least 2");
    require(config.device.dimension() == config.dimension, errc::shape_mismatch,
            "device dimension does not match the experiment dimension");
    require(config.gate.dimension() == config.dimension, errc::shape_mismatch,
            "gate dimension does not match the experiment dimension");
}

/// Lower-branch weights and per-branch joint probabilities of variant c.
/// The weights come from the simulated meter (uniform for |Psi_N>), not
/// from an assumption.
inline void variant_c_branches(const ExperimentConfig& config, ExperimentResult& result) {
    const BipartiteState psi = qmodel::max_entangled_state(config.dimension);
    result.branch_weights = qmodel::branch_distribution(psi, Side::lower);
    result.branch_probabilities.resize(config.dimension);
    for (std::size_t n = 0; n < config.dimension; ++n) {
        const PureState prepared = PureState::basis(config.dimension, n + 1);
        const PureState transformed = qmodel::apply_gate(prepared, config.gate);
        result.branch_probabilities[n] =
            result.branch_weights[n] * qmodel::device_probability(config.device, transformed);
    }
}

}  // namespace detail

/**
 * Exact flash probability of the configured experiment.
 *  - variant a: <Psi_N|(A x I)|Psi_N>
 *  - variant b: the same form on (U x U*)|Psi_N>
 *  - variant c: sum_n a_n p(U|n>) with per-branch terms reported
 */
inline ExperimentResult exact_probability(const ExperimentConfig& config) {
    detail::validate(config);
    ExperimentResult result;
    switch (config.variant) {
        case Variant::a: {
            const BipartiteState psi = qmodel::max_entangled_state(config.dimension);
            result.exact_probability =
                qmodel::joint_device_probability(config.device, psi, Side::upper);
            break;
        }
        case Variant::b: {
            const BipartiteState transformed =
                envariance::apply_envariant_pair(config.dimension, config.gate);
            result.exact_probability =
                qmodel::joint_device_probability(config.device, transformed, Side::upper);
            break;
        }
        case Variant::c: {
            detail::variant_c_branches(config, result);
            result.exact_probability =
                std::accumulate(result.branch_probabilities.begin(),
                                result.branch_probabilities.end(), 0.0);
            break;
        }
    }
    return result;
}

/**
 * Event-by-event Monte-Carlo simulation.  Variant c samples the lower
 * meter, prepares the remote particle, applies the gate, and samples the
 * device; variants a and b sample the two-outcome joint POVM {A x I,
 * I - A x I} directly.  Trial i draws from rng.derive("trial", i), so the
 * estimate is reproducible bit-for-bit for a given stream and trials may
 * be evaluated in any order.
 */
inline ExperimentResult monte_carlo_probability(const ExperimentConfig& config,
                                                RandomStream& rng) {
    detail::validate(config);
    require(config.trials >= 1, errc::invalid_config, "Monte-Carlo needs at least one trial");

    ExperimentResult result = exact_probability(config);

    std::uint64_t flashes = 0;
    if (config.variant == Variant::c) {
        const BipartiteState psi = qmodel::max_entangled_state(config.dimension);
        for (std::uint64_t i = 0; i < config.trials; ++i) {
            RandomStream trial = rng.derive("trial", i);
            const qmodel::MeasurementRecord record =
                qmodel::meter_measure(psi, Side::lower, trial);
            const PureState transformed = qmodel::apply_gate(record.remote, config.gate);
            if (qmodel::sample_device(config.device, transformed, trial)) {
                ++flashes;
            }
        }
    } else {
        // The black box is a closed device: only its flash statistics on the
        // joint state are modeled.
        const double p = result.exact_probability;
        for (std::uint64_t i = 0; i < config.trials; ++i) {
            RandomStream trial = rng.derive("trial", i);
            if (trial.uniform() < p) {
                ++flashes;
            }
        }
    }

    const double estimate =
        static_cast<double>(flashes) / static_cast<double>(config.trials);
    const double std_error =
        std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(config.trials));
    result.monte_carlo = MonteCarloEstimate{estimate, std_error, config.trials, flashes};
    return result;
}

/**
 * sum_n p(|e_n>) over a caller-supplied orthonormal basis.  Inputs are
 * validated (pairwise overlap at most 1e-10 in magnitude) but never
 * re-orthonormalized; the offending pair is named on failure.  The caller
 * compares the sum against N * P and tr(A).
 */
inline double basis_sum_check(const PovmElement& device, std::span<const PureState> basis) {
    require(basis.size() == device.dimension(), errc::shape_mismatch,
            "basis size does not match the device dimension");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        require(basis[i].dimension() == device.dimension(), errc::shape_mismatch,
                "basis vector " + std::to_string(i + 1) + " has the wrong dimension");
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const double overlap =
                std::abs(linalg::inner(basis[i].amplitudes(), basis[j].amplitudes()));
            require(overlap <= 1e-10, errc::non_orthonormal_basis,
                    "basis vectors " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " are not orthogonal (overlap " +
                        std::to_string(overlap) + ")");
        }
    }
    double sum = 0.0;
    for (const PureState& e : basis) {
        sum += qmodel::device_probability(device, e);
    }
    return sum;
}

struct PermutationReport {
    double lhs;  ///< brute-force sum over all N! permutations
    double rhs;  ///< (N-1)! * (sum a) * (sum p)
    bool equal;  ///< within 1e-10 * max(1, |rhs|)
};

/**
 * Brute-force check of the permutation-sum identity: summing
 * sum_m a_m p_{pi(m)} over every permutation pi equals
 * (N-1)! (sum a)(sum p).  The left side is enumerated explicitly, which is
 * the point; N > 8 is refused.
 */
inline PermutationReport verify_permutation_identity(std::span<const double> weights,
                                                     std::span<const double> values) {
    require(weights.size() == values.size(), errc::shape_mismatch,
            "weights and values must have equal length");
    const std::size_t n = weights.size();
    require(n >= 1, errc::invalid_dimension, "empty weight vector");
    require(n <= 8, errc::permutation_size_guard,
            "permutation enumeration refused for N > 8");
    const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    require(std::abs(weight_sum - 1.0) <= 1e-12, errc::invalid_config,
            "weights must sum to 1");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double lhs = 0.0;
    double factorial_n_minus_1 = 1.0;
    for (std::size_t k = 2; k < n; ++k) {
        factorial_n_minus_1 *= static_cast<double>(k);
    }
    do {
        double term = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            term += weights[m] * values[perm[m]];
        }
        lhs += term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double value_sum = std::accumulate(values.begin(), values.end(), 0.0);
    const double rhs = factorial_n_minus_1 * weight_sum * value_sum;
    const bool equal = std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs));
    return PermutationReport{lhs, rhs, equal};
}

}  // namespace qpovm::experiments
