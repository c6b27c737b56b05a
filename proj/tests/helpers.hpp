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
//
// Shared generators and matchers for the test suites.

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "qpovm/linalg.hpp"
#include "qpovm/qmodel.hpp"
#include "qpovm/rng.hpp"

namespace qpovm::testing {

class ErrorCodeIs : public Catch::Matchers::MatcherGenericBase {
  public:
    explicit ErrorCodeIs(errc expected) : expected_(expected) {}

    bool match(const Error& e) const { return e.code() == expected_; }

    std::string describe() const override {
        return "has error code " + std::string(errc_name(expected_));
    }

  private:
    errc expected_;
};

/// Random Hermitian matrix with entries of order `scale`.
inline linalg::ComplexMatrix random_hermitian(std::size_t n, RandomStream& rng,
                                              double scale = 1.0) {
    linalg::ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = scale * rng.complex_gaussian();
        }
    }
    return 0.5 * (g + linalg::adjoint(g));
}

/// Random device V diag(u) V^dagger with Haar V and uniform u_i in [0,1].
inline qmodel::PovmElement random_povm_element(std::size_t n, RandomStream& rng) {
    const linalg::ComplexMatrix v = linalg::haar_random_unitary(n, rng);
    linalg::ComplexMatrix a(n, n);
    std::vector<double> u(n);
    for (double& x : u) {
        x = rng.uniform();
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) += u[k] * v(i, k) * std::conj(v(j, k));
            }
        }
    }
    return qmodel::PovmElement(std::move(a));
}

inline double max_entry_diff(const linalg::ComplexMatrix& a, const linalg::ComplexMatrix& b) {
    return linalg::max_abs(a - b);
}

inline double max_entry_diff(std::span<const linalg::cplx> x,
                             std::span<const linalg::cplx> y) {
    REQUIRE(x.size() == y.size());
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

}  // namespace qpovm::testing
