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
 * Envariance of the equal-coefficient entangled state: a gate U on the
 * upper particle is undone by U* on the lower one, so (U x U*) |Psi_N>
 * equals |Psi_N> exactly.  The pair action is computed by explicit gate
 * application, never by assuming the cancellation.
 */

#pragma once

#include <cmath>
#include <cstddef>

#include "qpovm/qmodel.hpp"

namespace qpovm::envariance {

using qmodel::BipartiteState;
using qmodel::Side;
using qmodel::UnitaryGate;

/// (U x U*) |Psi_n>.
inline BipartiteState apply_envariant_pair(std::size_t n, const UnitaryGate& u) {
    require(u.dimension() == n, errc::shape_mismatch,
            "gate dimension does not match the requested state dimension");
    BipartiteState state = qmodel::max_entangled_state(n);
    state = qmodel::apply_gate(state, u, Side::upper);
    const UnitaryGate conj_u(linalg::conjugate(u.matrix()));
    return qmodel::apply_gate(state, conj_u, Side::lower);
}

struct EnvarianceReport {
    double fidelity_pair;        ///< |<Psi_n|(U x U*)|Psi_n>|, equals 1
    double fidelity_upper_only;  ///< |<Psi_n|(U x I)|Psi_n>| = |tr U|/n
    double fidelity_lower_only;  ///< |<Psi_n|(I x U*)|Psi_n>| = |tr U|/n
};

/// Fidelities of the paired and the one-sided gate actions against
/// |Psi_n>; the one-sided rows are diagnostics showing a single gate does
/// disturb the joint state.
inline EnvarianceReport envariance_report(std::size_t n, const UnitaryGate& u) {
    require(u.dimension() == n, errc::shape_mismatch,
            "gate dimension does not match the requested state dimension");
    const BipartiteState psi = qmodel::max_entangled_state(n);
    const UnitaryGate conj_u(linalg::conjugate(u.matrix()));

    const BipartiteState pair = apply_envariant_pair(n, u);
    const BipartiteState upper_only = qmodel::apply_gate(psi, u, Side::upper);
    const BipartiteState lower_only = qmodel::apply_gate(psi, conj_u, Side::lower);

    return EnvarianceReport{
        std::abs(linalg::inner(psi.amplitudes(), pair.amplitudes())),
        std::abs(linalg::inner(psi.amplitudes(), upper_only.amplitudes())),
        std::abs(linalg::inner(psi.amplitudes(), lower_only.amplitudes())),
    };
}

}  // namespace qpovm::envariance
