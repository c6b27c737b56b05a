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

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "qpovm/qmodel.hpp"

using namespace qpovm;
using namespace qpovm::qmodel;
using linalg::ComplexMatrix;
using linalg::cplx;
using qpovm::testing::ErrorCodeIs;
using qpovm::testing::random_povm_element;
using Catch::Matchers::WithinAbs;

namespace {

PureState plus_state() {
    const double h = 1.0 / std::sqrt(2.0);
    return PureState(2, {cplx{h, 0.0}, cplx{h, 0.0}});
}

}  // namespace

TEST_CASE("pure state validation") {
    CHECK_NOTHROW(PureState::basis(3, 1));
    CHECK_NOTHROW(PureState::basis(3, 3));
    REQUIRE_THROWS_MATCHES(PureState::basis(3, 0), Error, ErrorCodeIs(errc::invalid_dimension));
    REQUIRE_THROWS_MATCHES(PureState::basis(3, 4), Error, ErrorCodeIs(errc::invalid_dimension));
    REQUIRE_THROWS_MATCHES(PureState(2, {cplx{1.0, 0.0}, cplx{1.0, 0.0}}), Error,
                           ErrorCodeIs(errc::invalid_state));
    REQUIRE_THROWS_MATCHES(PureState(3, {cplx{1.0, 0.0}}), Error,
                           ErrorCodeIs(errc::shape_mismatch));
}

TEST_CASE("maximally entangled state amplitudes at n = 2") {
    const BipartiteState psi = max_entangled_state(2);
    const double h = 1.0 / std::sqrt(2.0);
    REQUIRE(psi.amplitudes().size() == 4);
    CHECK_THAT(psi.amplitudes()[0].real(), WithinAbs(h, 1e-15));
    CHECK_THAT(std::abs(psi.amplitudes()[1]), WithinAbs(0.0, 0.0));
    CHECK_THAT(std::abs(psi.amplitudes()[2]), WithinAbs(0.0, 0.0));
    CHECK_THAT(psi.amplitudes()[3].real(), WithinAbs(h, 1e-15));
}

TEST_CASE("maximally entangled state is normalized") {
    const BipartiteState psi = max_entangled_state(3);
    CHECK(std::abs(linalg::norm2(psi.amplitudes()) - 1.0) <= 1e-15);
}

TEST_CASE("maximally entangled state has maximally mixed marginal") {
    // Oracle: trace out the lower factor by direct summation.
    const BipartiteState psi = max_entangled_state(4);
    ComplexMatrix rho(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t kp = 0; kp < 4; ++kp) {
            for (std::size_t l = 0; l < 4; ++l) {
                rho(k, kp) += psi.amplitude(k, l) * std::conj(psi.amplitude(kp, l));
            }
        }
    }
    CHECK(linalg::max_abs(rho - cplx{0.25, 0.0} * ComplexMatrix::identity(4)) <= 1e-12);
}

TEST_CASE("maximally entangled state rejects n < 2") {
    REQUIRE_THROWS_MATCHES(max_entangled_state(1), Error, ErrorCodeIs(errc::invalid_dimension));
}

TEST_CASE("identity gate leaves a joint state unchanged exactly") {
    const BipartiteState psi = max_entangled_state(3);
    const UnitaryGate id = UnitaryGate::identity(3);
    for (Side side : {Side::upper, Side::lower}) {
        const BipartiteState out = apply_gate(psi, id, side);
        CHECK(testing::max_entry_diff(out.amplitudes(), psi.amplitudes()) == 0.0);
    }
}

TEST_CASE("one-sided gate actions on different factors commute") {
    RandomStream rng(21, "commute");
    const BipartiteState psi = max_entangled_state(3);
    const UnitaryGate u = UnitaryGate::haar_random(3, rng);
    const UnitaryGate w = UnitaryGate::haar_random(3, rng);
    const BipartiteState ul = apply_gate(apply_gate(psi, u, Side::upper), w, Side::lower);
    const BipartiteState lu = apply_gate(apply_gate(psi, w, Side::lower), u, Side::upper);
    CHECK(testing::max_entry_diff(ul.amplitudes(), lu.amplitudes()) <= 1e-14);
}

TEST_CASE("pauli-x on the upper particle permutes the basis kets") {
    const BipartiteState psi = max_entangled_state(2);
    const BipartiteState out = apply_gate(psi, UnitaryGate::pauli_x(), Side::upper);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK_THAT(std::abs(out.amplitudes()[0]), WithinAbs(0.0, 1e-15));
    CHECK_THAT(out.amplitudes()[1].real(), WithinAbs(h, 1e-15));
    CHECK_THAT(out.amplitudes()[2].real(), WithinAbs(h, 1e-15));
    CHECK_THAT(std::abs(out.amplitudes()[3]), WithinAbs(0.0, 1e-15));
}

TEST_CASE("gate application preserves the norm") {
    RandomStream rng(22, "norm-preserve");
    for (std::size_t n : {2, 3, 5}) {
        const BipartiteState psi = max_entangled_state(n);
        const UnitaryGate u = UnitaryGate::haar_random(n, rng);
        const BipartiteState out = apply_gate(psi, u, Side::upper);
        CHECK(std::abs(linalg::norm2(out.amplitudes()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("gate dimension mismatch is rejected") {
    const BipartiteState psi = max_entangled_state(3);
    REQUIRE_THROWS_MATCHES(apply_gate(psi, UnitaryGate::identity(2), Side::upper), Error,
                           ErrorCodeIs(errc::shape_mismatch));
}

TEST_CASE("device probability basics") {
    CHECK_THAT(device_probability(PovmElement::identity(3), PureState::basis(3, 2)),
               WithinAbs(1.0, 1e-15));
    const PovmElement rank1 = PovmElement::projector(PureState::basis(2, 1));
    CHECK_THAT(device_probability(rank1, PureState::basis(2, 2)), WithinAbs(0.0, 1e-15));
    const PovmElement diag10(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
    CHECK_THAT(device_probability(diag10, plus_state()), WithinAbs(0.5, 1e-15));
    REQUIRE_THROWS_MATCHES(device_probability(diag10, PureState::basis(3, 1)), Error,
                           ErrorCodeIs(errc::shape_mismatch));
}

TEST_CASE("joint device probability of the identity is one") {
    const BipartiteState psi = max_entangled_state(3);
    CHECK_THAT(joint_device_probability(PovmElement::identity(3), psi, Side::upper),
               WithinAbs(1.0, 1e-14));
}

TEST_CASE("joint device probability on a product state reduces to the local one") {
    RandomStream rng(23, "eq28");
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const PovmElement a = random_povm_element(n, rng);
        const PureState psi = haar_random_state(n, rng);
        const BipartiteState joint = product_state(psi, PureState::basis(n, 1));
        const double p_joint = joint_device_probability(a, joint, Side::upper);
        const double p_local = device_probability(a, psi);
        CHECK(std::abs(p_joint - p_local) <= 1e-12);
    }
}

TEST_CASE("joint device probability of a rank-one diagonal device on the entangled state") {
    for (std::size_t n : {2, 3, 5}) {
        ComplexMatrix m(n, n);
        m(0, 0) = 1.0;
        const PovmElement a(std::move(m));
        const BipartiteState psi = max_entangled_state(n);
        // <Psi_N|(A x I)|Psi_N> = tr(A)/N by direct expansion.
        CHECK_THAT(joint_device_probability(a, psi, Side::upper),
                   WithinAbs(1.0 / static_cast<double>(n), 1e-14));
    }
}

TEST_CASE("meter on a product basis state is certain") {
    RandomStream rng(24, "meter-certain");
    const BipartiteState kk = product_state(PureState::basis(3, 2), PureState::basis(3, 2));
    for (int rep = 0; rep < 50; ++rep) {
        const MeasurementRecord record = meter_measure(kk, Side::lower, rng);
        REQUIRE(record.outcome == 2);
        CHECK(testing::max_entry_diff(record.remote.amplitudes(),
                                      PureState::basis(3, 2).amplitudes()) == 0.0);
    }
}

TEST_CASE("measuring one particle prepares the other in the outcome state") {
    RandomStream rng(25, "meter-prepare");
    const BipartiteState psi = max_entangled_state(5);
    for (int rep = 0; rep < 200; ++rep) {
        const MeasurementRecord record = meter_measure(psi, Side::lower, rng);
        REQUIRE(record.outcome >= 1);
        REQUIRE(record.outcome <= 5);
        const PureState expected = PureState::basis(5, record.outcome);
        CHECK(testing::max_entry_diff(record.remote.amplitudes(), expected.amplitudes()) <=
              1e-15);
    }
}

TEST_CASE("meters on both particles of the entangled state coincide") {
    RandomStream rng(26, "meter-coincide");
    const BipartiteState psi = max_entangled_state(4);
    for (int rep = 0; rep < 200; ++rep) {
        const MeasurementRecord lower = meter_measure(psi, Side::lower, rng);
        // Joint state after the lower measurement: remote (x) |outcome>.
        const BipartiteState collapsed =
            product_state(lower.remote, PureState::basis(4, lower.outcome));
        const MeasurementRecord upper = meter_measure(collapsed, Side::upper, rng);
        CHECK(upper.outcome == lower.outcome);
    }
}

TEST_CASE("meter outcomes on the entangled state are uniform") {
    // Chi-square goodness of fit at 10^5 trials; the 0.001 critical value
    // for 3 degrees of freedom is 16.266.
    RandomStream rng(27, "meter-uniform");
    const BipartiteState psi = max_entangled_state(4);
    std::array<std::uint64_t, 4> counts{};
    constexpr int kTrials = 100000;
    for (int t = 0; t < kTrials; ++t) {
        ++counts[meter_measure(psi, Side::lower, rng).outcome - 1];
    }
    const double expected = kTrials / 4.0;
    double chi2 = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 16.266);
}

TEST_CASE("zero-probability branches are never sampled") {
    RandomStream rng(28, "meter-zero-branch");
    // Lower-branch distribution (1/2, 0, 1/2).
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amps(9, cplx{0.0, 0.0});
    amps[0 * 3 + 0] = h;
    amps[1 * 3 + 2] = h;
    const BipartiteState state(3, 3, std::move(amps));
    for (int rep = 0; rep < 500; ++rep) {
        const MeasurementRecord record = meter_measure(state, Side::lower, rng);
        CHECK(record.outcome != 2);
    }
}

TEST_CASE("device sampling follows the quadratic form") {
    RandomStream rng(29, "device-sample");
    const PovmElement identity = PovmElement::identity(2);
    const PovmElement zero(ComplexMatrix(2, 2));
    for (int rep = 0; rep < 100; ++rep) {
        CHECK(sample_device(identity, plus_state(), rng));
        CHECK_FALSE(sample_device(zero, plus_state(), rng));
    }

    // Binomial oracle: flash frequency within 3 standard deviations of 1/2.
    const PovmElement diag10(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
    constexpr int kTrials = 100000;
    int flashes = 0;
    for (int t = 0; t < kTrials; ++t) {
        flashes += sample_device(diag10, plus_state(), rng) ? 1 : 0;
    }
    const double freq = static_cast<double>(flashes) / kTrials;
    const double sigma = std::sqrt(0.5 * 0.5 / kTrials);
    CHECK(std::abs(freq - 0.5) <= 3.0 * sigma);
}

TEST_CASE("povm element validation") {
    // Rounding-level asymmetry is symmetrized away.
    ComplexMatrix nearly = ComplexMatrix::from_rows({{0.5, 0.25}, {0.25, 0.5}});
    nearly(0, 1) += cplx{0.0, 5e-12};
    CHECK_NOTHROW(PovmElement(nearly));

    const ComplexMatrix skew = ComplexMatrix::from_rows({{0.5, 1.0}, {-1.0, 0.5}});
    REQUIRE_THROWS_MATCHES(PovmElement(skew), Error, ErrorCodeIs(errc::not_hermitian));

    const ComplexMatrix hot = ComplexMatrix::from_rows({{1.5, 0.0}, {0.0, 0.5}});
    REQUIRE_THROWS_MATCHES(PovmElement(hot), Error, ErrorCodeIs(errc::spectrum_out_of_range));
    const ComplexMatrix cold = ComplexMatrix::from_rows({{-0.1, 0.0}, {0.0, 0.5}});
    REQUIRE_THROWS_MATCHES(PovmElement(cold), Error, ErrorCodeIs(errc::spectrum_out_of_range));
}

TEST_CASE("two-outcome povm of a device is complete") {
    RandomStream rng(30, "povm-complete");
    for (std::size_t n : {2, 4}) {
        const PovmElement a = random_povm_element(n, rng);
        const PovmElement complement(ComplexMatrix::identity(n) - a.matrix());
        CHECK_NOTHROW(Povm({a, complement}, {1, 0}));
    }
    const PovmElement half(ComplexMatrix::from_rows({{0.5, 0.0}, {0.0, 0.5}}));
    REQUIRE_THROWS_MATCHES(Povm({half, half, half}, {1, 2, 3}), Error,
                           ErrorCodeIs(errc::povm_incomplete));
}

TEST_CASE("unitary gate validation and named gates") {
    REQUIRE_THROWS_MATCHES(UnitaryGate(ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}})),
                           Error, ErrorCodeIs(errc::not_unitary));
    CHECK(linalg::unitarity_residual(UnitaryGate::hadamard().matrix()) <= 1e-15);
    CHECK(linalg::unitarity_residual(UnitaryGate::pauli_x().matrix()) == 0.0);
    for (std::size_t n : {2, 3, 7}) {
        CHECK(linalg::unitarity_residual(UnitaryGate::fourier(n).matrix()) <= 1e-14);
    }
}
