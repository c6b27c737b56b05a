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
 * Self-contained dense complex linear algebra: matrices, tensor products,
 * Hermitian eigendecomposition (cyclic complex Jacobi), and Haar-random
 * unitary sampling.  Dense storage only; intended for dimensions <= 64.
 *
 * Index conventions: storage is row-major and 0-based.  Joint (two-factor)
 * bases flatten as |k>|l> -> (k-1)*N_second + (l-1) for 1-based labels,
 * i.e. k0*N_second + l0 internally.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qpovm/errors.hpp"
#include "qpovm/rng.hpp"

namespace qpovm::linalg {

using cplx = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        require(entries_.size() == rows_ * cols_, errc::shape_mismatch,
                "entry count does not match rows*cols");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    /// Row-major construction from nested braces, mostly for tests.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        ComplexMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            require(row.size() == c, errc::shape_mismatch, "ragged row in matrix literal");
            std::size_t j = 0;
            for (const cplx& v : row) {
                m(i, j++) = v;
            }
            ++i;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * cols_ + j];
    }

    std::span<const cplx> entries() const noexcept { return entries_; }

    bool all_finite() const noexcept {
        for (const cplx& v : entries_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                return false;
            }
        }
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), errc::shape_mismatch,
            "matrix addition with mismatched shapes");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) + b(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), errc::shape_mismatch,
            "matrix subtraction with mismatched shapes");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) - b(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = s * a(i, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), errc::shape_mismatch,
            "matrix product with mismatched inner dimensions");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

/// Entrywise complex conjugate; no transpose.
inline ComplexMatrix conjugate(const ComplexMatrix& u) {
    ComplexMatrix out(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            out(i, j) = std::conj(u(i, j));
        }
    }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline cplx trace(const ComplexMatrix& a) {
    require(a.square(), errc::shape_mismatch, "trace of a non-square matrix");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& v : a.entries()) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& v : a.entries()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

inline double hermiticity_residual(const ComplexMatrix& a) {
    return max_abs(a - adjoint(a));
}

inline double unitarity_residual(const ComplexMatrix& u) {
    return max_abs(adjoint(u) * u - ComplexMatrix::identity(u.cols()));
}

/// Kronecker product: entry ((i*b.rows+j), (k*b.cols+l)) = a(i,k)*b(j,l).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.rows(); ++j) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + j, k * b.cols() + l) = aik * b(j, l);
                }
            }
        }
    }
    return out;
}

inline std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> x) {
    require(a.cols() == x.size(), errc::shape_mismatch, "matrix-vector dimension mismatch");
    std::vector<cplx> y(a.rows(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

/// <x|y> with the physics convention (conjugate-linear in the first slot).
inline cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    require(x.size() == y.size(), errc::shape_mismatch, "inner product dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

inline double norm2(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& v : x) {
        s += std::norm(v);
    }
    return s;
}

/// <x|M|x>.
inline cplx quadratic_form(const ComplexMatrix& m, std::span<const cplx> x) {
    require(m.square() && m.rows() == x.size(), errc::shape_mismatch,
            "quadratic form dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row += m(i, j) * x[j];
        }
        s += std::conj(x[i]) * row;
    }
    return s;
}

struct Spectrum {
    std::vector<double> eigenvalues;  ///< ascending
    ComplexMatrix eigenvectors;       ///< unitary; i-th column pairs with eigenvalues[i]
};

namespace detail {

/// Sum of squared magnitudes of the off-diagonal entries.
inline double offdiagonal_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return s;
}

}  // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.  The input is symmetrized to (a + a^dagger)/2 before solving;
 * inputs whose hermiticity residual exceeds 1e-10 * max(1, max-entry) are
 * rejected.  Sweeps run until the off-diagonal Frobenius mass drops below
 * 1e-14 * ||a||_F, capped at 100 sweeps.
 */
inline Spectrum hermitian_eigendecomposition(const ComplexMatrix& a) {
    require(a.square(), errc::shape_mismatch, "eigendecomposition of a non-square matrix");
    require(a.all_finite(), errc::invalid_state, "eigendecomposition of a non-finite matrix");
    const double scale = std::max(1.0, max_abs(a));
    require(hermiticity_residual(a) <= 1e-10 * scale, errc::not_hermitian,
            "matrix is not Hermitian within tolerance");

    const std::size_t n = a.rows();
    ComplexMatrix w = 0.5 * (a + adjoint(a));
    ComplexMatrix v = ComplexMatrix::identity(n);

    // Frobenius norm is invariant under the rotations, so the stopping
    // threshold is fixed up front.
    const double threshold = 1e-14 * frobenius_norm(w);

    constexpr int kMaxSweeps = 100;
    bool converged = n < 2;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (std::sqrt(detail::offdiagonal_mass(w)) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(w(p, q));
                if (r == 0.0) {
                    continue;
                }
                // Factor out the phase so the (p,q) block becomes real
                // symmetric, then apply the classical Jacobi rotation.
                const cplx phase = w(p, q) / r;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                               : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary G differs from the identity only in rows/cols p,q:
                //   G(p,p) = c*phase, G(p,q) = s*phase, G(q,p) = -s, G(q,q) = c.
                const cplx gpp = c * phase;
                const cplx gpq = s * phase;

                // w <- G^dagger w G, applied as column then row updates.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx wip = w(i, p);
                    const cplx wiq = w(i, q);
                    w(i, p) = wip * gpp + wiq * (-s);
                    w(i, q) = wip * gpq + wiq * c;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx wpj = w(p, j);
                    const cplx wqj = w(q, j);
                    w(p, j) = std::conj(gpp) * wpj - s * wqj;
                    w(q, j) = std::conj(gpq) * wpj + c * wqj;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = vip * gpp + viq * (-s);
                    v(i, q) = vip * gpq + viq * c;
                }
            }
        }
    }
    if (!converged && std::sqrt(detail::offdiagonal_mass(w)) > threshold) {
        fail(errc::numeric_failure, "Jacobi eigensolver did not converge in 100 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = w(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, j) = v(i, order[j]);
        }
    }
    return out;
}

/// V diag(lambda) V^dagger.
inline ComplexMatrix reconstruct_from_spectrum(const Spectrum& s) {
    const std::size_t n = s.eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = s.eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += s.eigenvalues[k] * vik * std::conj(s.eigenvectors(j, k));
            }
        }
    }
    return out;
}

/**
 * Haar-distributed random unitary: fill n x n with independent standard
 * complex gaussians and orthonormalize the columns by modified Gram-Schmidt
 * (one reorthogonalization pass).  Gram-Schmidt leaves the triangular
 * factor's diagonal positive real, which is exactly the phase convention
 * that makes the result Haar.
 */
inline ComplexMatrix haar_random_unitary(std::size_t n, RandomStream& rng) {
    require(n >= 1, errc::invalid_dimension, "haar_random_unitary needs n >= 1");
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = rng.complex_gaussian();
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) {
                    proj += std::conj(u(i, k)) * u(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    u(i, j) -= proj * u(i, k);
                }
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nrm += std::norm(u(i, j));
        }
        nrm = std::sqrt(nrm);
        if (!(nrm > 1e-200)) {
            fail(errc::numeric_failure, "degenerate gaussian sample in Haar generation");
        }
        for (std::size_t i = 0; i < n; ++i) {
            u(i, j) /= nrm;
        }
    }
    return u;
}

}  // namespace qpovm::linalg
