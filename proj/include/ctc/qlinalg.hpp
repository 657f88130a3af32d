// Copyright 2026 The ctcsim Authors
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

/**
 * @file qlinalg.hpp
 * @brief Dense complex linear algebra for small quantum systems.
 *
 * Matrices are Eigen dense complex matrices. Composite-system indices are
 * big-endian: for a product space A (x) B the basis vector |a b> sits at
 * index a * dim(B) + b, so the first tensor factor is the most significant.
 * All tolerances are max-entry (infinity) norms unless stated otherwise.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, invalid states, bad schema.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Well-formed input for which the computation cannot deliver its contract
/// (non-unique fixed point, misclassification, numerical failure).
class DomainError : public Error {
  public:
    using Error::Error;
};

inline constexpr double kPureNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-10;

inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix &m) { return m.allFinite(); }

inline bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

/// True iff max |m^dagger m - I| <= tol.
inline bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return max_abs(m.adjoint() * m - id) <= tol;
}

/// Kronecker product a (x) b.
inline Matrix tensor(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

inline Vector tensor(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

enum class Subsystem { first, second };

/**
 * Partial trace over one factor of a bipartite operator on A (x) B.
 * `keep` names the factor that survives.
 */
inline Matrix partial_trace(const Matrix &m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep) {
    const auto da = static_cast<Eigen::Index>(dim_a);
    const auto db = static_cast<Eigen::Index>(dim_b);
    if (m.rows() != da * db || m.cols() != da * db) {
        throw InputError("partial_trace: matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(da * db) + " square");
    }
    if (keep == Subsystem::first) {
        Matrix out = Matrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                Complex s{0.0, 0.0};
                for (Eigen::Index b = 0; b < db; ++b) {
                    s += m(i * db + b, j * db + b);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) {
        out += m.block(a * db, a * db, db, db);
    }
    return out;
}

struct EigenDecomposition {
    RealVector values; // ascending
    Matrix vectors;    // columns are eigenvectors
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized
/// before solving; it must be Hermitian within `herm_tol`.
inline EigenDecomposition eig_hermitian(const Matrix &m,
                                        double herm_tol = kHermitianTol) {
    if (m.rows() != m.cols()) {
        throw InputError("eig_hermitian: matrix is not square");
    }
    const double dev = max_abs(m - m.adjoint());
    if (dev > herm_tol) {
        throw InputError("eig_hermitian: matrix deviates from Hermitian by " +
                         std::to_string(dev));
    }
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw DomainError("eig_hermitian: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Trace norm distance 0.5 * ||a - b||_1 between Hermitian matrices.
inline double trace_distance(const Matrix &a, const Matrix &b) {
    const Matrix diff = a - b;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 *
                                                 (diff + diff.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

/// Row-major vectorization: vec(m)[i * cols + j] = m(i, j).
inline Vector vec(const Matrix &m) {
    Vector out(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(i * m.cols() + j) = m(i, j);
        }
    }
    return out;
}

inline Matrix unvec(const Vector &v, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d) {
        throw InputError("unvec: vector length does not match dimension");
    }
    Matrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out(i, j) = v(i * d + j);
        }
    }
    return out;
}

/// A normalized state vector.
class PureState {
  public:
    explicit PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() == 0) {
            throw InputError("PureState: empty amplitude vector");
        }
        if (!amps_.allFinite()) {
            throw InputError("PureState: non-finite amplitude");
        }
        const double norm = amps_.norm();
        if (std::abs(norm - 1.0) > kPureNormTol) {
            throw InputError("PureState: norm " + std::to_string(norm) +
                             " is not 1");
        }
    }

    /// Normalizes `raw`; throws on a zero vector.
    static PureState normalized(const Vector &raw) {
        const double norm = raw.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw InputError("PureState: cannot normalize a zero vector");
        }
        return PureState(raw / norm);
    }

    /// Computational basis vector |index>.
    static PureState basis(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw InputError("PureState::basis: index out of range");
        }
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const Vector &amplitudes() const { return amps_; }
    [[nodiscard]] Matrix projector() const { return amps_ * amps_.adjoint(); }

    /// |a> (x) |b>
    [[nodiscard]] PureState tensor(const PureState &other) const {
        return PureState(ctc::tensor(amps_, other.amps_));
    }

  private:
    Vector amps_;
};

/// |<a|b>|
inline double overlap_magnitude(const PureState &a, const PureState &b) {
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

/// Hermitian, positive semi-definite, unit-trace matrix.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() == 0 || m_.rows() != m_.cols()) {
            throw InputError("DensityMatrix: matrix must be square and "
                             "non-empty");
        }
        if (!m_.allFinite()) {
            throw InputError("DensityMatrix: non-finite entry");
        }
        const double herm = max_abs(m_ - m_.adjoint());
        if (herm > kHermitianTol) {
            throw InputError("DensityMatrix: not Hermitian (deviation " +
                             std::to_string(herm) + ")");
        }
        const Complex tr = m_.trace();
        if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
            throw InputError("DensityMatrix: trace " +
                             std::to_string(tr.real()) + " is not 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(
            0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kPsdTol) {
            throw InputError("DensityMatrix: negative eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()));
        }
    }

    static DensityMatrix pure(const PureState &psi) {
        return DensityMatrix(psi.projector());
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        const auto d = static_cast<Eigen::Index>(dim);
        return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
    }

    /// Convex combination sum_i weights[i] * states[i].
    static DensityMatrix mixture(std::span<const double> weights,
                                 std::span<const DensityMatrix> states) {
        if (weights.size() != states.size() || states.empty()) {
            throw InputError("DensityMatrix::mixture: size mismatch");
        }
        Matrix acc = Matrix::Zero(states[0].matrix().rows(),
                                  states[0].matrix().cols());
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (weights[i] < 0.0) {
                throw InputError("DensityMatrix::mixture: negative weight");
            }
            if (states[i].dim() != states[0].dim()) {
                throw InputError("DensityMatrix::mixture: dimension mismatch");
            }
            acc += weights[i] * states[i].matrix();
        }
        return DensityMatrix(std::move(acc));
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const Matrix &matrix() const { return m_; }

  private:
    Matrix m_;
};

namespace gates {

inline Matrix identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Matrix::Identity(d, d);
}

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

inline Matrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << s, s, s, -s;
    return m;
}

/// Exchange of two d-dimensional factors: |a b> -> |b a>.
inline Matrix swap(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            m(b * d + a, a * d + b) = 1.0;
        }
    }
    return m;
}

} // namespace gates

namespace states {

inline PureState zero() { return PureState::basis(2, 0); }
inline PureState one() { return PureState::basis(2, 1); }

inline PureState plus() {
    Vector v(2);
    v << 1.0, 1.0;
    return PureState::normalized(v);
}

inline PureState minus() {
    Vector v(2);
    v << 1.0, -1.0;
    return PureState::normalized(v);
}

} // namespace states

} // namespace ctc
