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
 * Error codes and the exception type shared by every qpovm module.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpovm {

/// Machine-readable failure categories.  The CLI maps these onto exit codes,
/// tests assert on them, and report entries carry their names.
enum class errc {
    invalid_dimension,       ///< dimension outside the operation's domain
    shape_mismatch,          ///< incompatible matrix/vector/state dimensions
    not_hermitian,           ///< matrix fails the hermiticity tolerance
    not_unitary,             ///< matrix fails the unitarity tolerance
    spectrum_out_of_range,   ///< device eigenvalues outside [0,1]
    povm_incomplete,         ///< POVM elements do not sum to the identity
    invalid_state,           ///< state vector not normalized or not finite
    non_orthonormal_basis,   ///< basis vectors fail pairwise orthogonality
    unknown_eigenvalue,      ///< requested eigenvalue matches no eigenspace
    invalid_oracle,          ///< oracle returned a value outside [0,1]
    permutation_size_guard,  ///< refused: factorial enumeration too large
    invalid_config,          ///< inconsistent or empty run configuration
    spec_syntax,             ///< spec file is not well-formed
    spec_unknown_field,      ///< spec file contains an unrecognized field
    spec_unknown_name,       ///< unknown or incompatible named gate/device
    spec_bad_value,          ///< spec field holds an out-of-range value
    numeric_failure,         ///< internal numerical routine did not converge
};

constexpr std::string_view errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_dimension: return "invalid-dimension";
        case errc::shape_mismatch: return "shape-mismatch";
        case errc::not_hermitian: return "not-hermitian";
        case errc::not_unitary: return "not-unitary";
        case errc::spectrum_out_of_range: return "spectrum-out-of-range";
        case errc::povm_incomplete: return "povm-incomplete";
        case errc::invalid_state: return "invalid-state";
        case errc::non_orthonormal_basis: return "non-orthonormal-basis";
        case errc::unknown_eigenvalue: return "unknown-eigenvalue";
        case errc::invalid_oracle: return "invalid-oracle";
        case errc::permutation_size_guard: return "permutation-size-guard";
        case errc::invalid_config: return "invalid-config";
        case errc::spec_syntax: return "spec-syntax";
        case errc::spec_unknown_field: return "spec-unknown-field";
        case errc::spec_unknown_name: return "spec-unknown-name";
        case errc::spec_bad_value: return "spec-bad-value";
        case errc::numeric_failure: return "numeric-failure";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) {
        fail(code, message);
    }
}

}  // namespace qpovm
