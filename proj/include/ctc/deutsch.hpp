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
 * @file deutsch.hpp
 * @brief Deutsch-model CTC engine.
 *
 * A chronology-respecting system (first factor) interacts with a CTC system
 * (second factor) through a unitary V. For a fixed input state rho_in the CTC
 * state must reproduce itself,
 *
 *     rho_ctc = Tr_sys[ V (rho_in (x) rho_ctc) V^dagger ],
 *
 * and the chronology-respecting output is the complementary partial trace
 * over the CTC factor. The right-hand side is a CPTP map M on CTC operators;
 * its fixed points are computed as the exact null space of (S - I), where S
 * is the d_ctc^2 x d_ctc^2 matrix of M acting on row-major vectorized
 * operators.
 */

#include "ctc/qlinalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctc {

inline constexpr double kDefaultFpTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kSelfConsistencyTol = 1e-8;

/// Unitary on system (x) CTC, system factor first.
class DeutschInteraction {
  public:
    DeutschInteraction(std::size_t d_sys, std::size_t d_ctc, Matrix v)
        : d_sys_(d_sys), d_ctc_(d_ctc), v_(std::move(v)) {
        const auto n = static_cast<Eigen::Index>(d_sys * d_ctc);
        if (d_sys == 0 || d_ctc == 0) {
            throw InputError("DeutschInteraction: zero dimension");
        }
        if (v_.rows() != n || v_.cols() != n) {
            throw InputError("DeutschInteraction: V is " +
                             std::to_string(v_.rows()) + "x" +
                             std::to_string(v_.cols()) + ", expected " +
                             std::to_string(n) + " square");
        }
        if (!v_.allFinite() || !is_unitary(v_, kUnitaryTol)) {
            throw InputError("DeutschInteraction: V is not unitary");
        }
    }

    [[nodiscard]] std::size_t d_sys() const { return d_sys_; }
    [[nodiscard]] std::size_t d_ctc() const { return d_ctc_; }
    [[nodiscard]] const Matrix &unitary() const { return v_; }

  private:
    std::size_t d_sys_;
    std::size_t d_ctc_;
    Matrix v_;
};

struct FixedPointResult {
    std::size_t fixed_space_dim = 0;
    std::optional<DensityMatrix> representative;
    std::vector<Matrix> basis;
    bool unique = false;
    double residual = 0.0;
    double spectrum_gap = 0.0;
};

/// Raised by evolve() when the CTC state is not determined uniquely. The
/// full diagnostics stay available through result().
class NonUniqueFixedPoint : public DomainError {
  public:
    explicit NonUniqueFixedPoint(FixedPointResult result)
        : DomainError("fixed point is not unique (fixed space dimension " +
                      std::to_string(result.fixed_space_dim) + ")"),
          result_(std::move(result)) {}

    [[nodiscard]] const FixedPointResult &result() const { return result_; }

  private:
    FixedPointResult result_;
};

/// sum_k |k><k| (x) U_k
inline Matrix controlled_family(std::size_t dim, std::span<const Matrix> family) {
    if (family.size() != dim) {
        throw InputError("controlled_family: expected " + std::to_string(dim) +
                         " unitaries, got " + std::to_string(family.size()));
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix out = Matrix::Zero(d * d, d * d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const Matrix &u = family[static_cast<std::size_t>(k)];
        if (u.rows() != d || u.cols() != d) {
            throw InputError("controlled_family: member " + std::to_string(k) +
                             " has wrong shape");
        }
        if (!is_unitary(u, kUnitaryTol)) {
            throw InputError("controlled_family: member " + std::to_string(k) +
                             " is not unitary");
        }
        out.block(k * d, k * d, d, d) = u;
    }
    return out;
}

/// Swap the input into the CTC, then apply the controlled family from the
/// system to the CTC.
inline DeutschInteraction swap_then_control(std::size_t dim,
                                            std::span<const Matrix> family) {
    return {dim, dim, controlled_family(dim, family) * gates::swap(dim)};
}

namespace detail {

inline void check_input(const DeutschInteraction &ix,
                        const DensityMatrix &input) {
    if (input.dim() != ix.d_sys()) {
        throw InputError("input state has dimension " +
                         std::to_string(input.dim()) +
                         ", interaction expects " + std::to_string(ix.d_sys()));
    }
}

} // namespace detail

/**
 * Kraus operators of the induced CTC map, K_{i,s} = sqrt(p_i) (<s| (x) I) V
 * (|e_i> (x) I), where p_i, |e_i> is the spectral decomposition of the
 * input. M(rho) = sum K rho K^dagger.
 */
inline std::vector<Matrix> kraus_operators(const DeutschInteraction &ix,
                                           const DensityMatrix &input) {
    detail::check_input(ix, input);
    const auto ds = static_cast<Eigen::Index>(ix.d_sys());
    const auto dc = static_cast<Eigen::Index>(ix.d_ctc());
    const auto eig = eig_hermitian(input.matrix());

    std::vector<Matrix> kraus;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double p = eig.values(i);
        if (p <= 1e-15) {
            continue;
        }
        // V (|e_i> (x) I): columns indexed by the CTC basis.
        const Matrix embed =
            tensor(Matrix(eig.vectors.col(i)), gates::identity(ix.d_ctc()));
        const Matrix applied = std::sqrt(p) * (ix.unitary() * embed);
        for (Eigen::Index s = 0; s < ds; ++s) {
            kraus.emplace_back(applied.block(s * dc, 0, dc, dc));
        }
    }
    return kraus;
}

/**
 * Matrix S of the induced map on row-major vectorized CTC operators:
 * vec(M(rho)) = S vec(rho). Column a*d+b is vec(M(|a><b|)).
 */
inline Matrix induced_map(const DeutschInteraction &ix,
                          const DensityMatrix &input) {
    const auto dc = static_cast<Eigen::Index>(ix.d_ctc());
    const auto kraus = kraus_operators(ix, input);
    Matrix s = Matrix::Zero(dc * dc, dc * dc);
    Matrix image(dc, dc);
    for (Eigen::Index a = 0; a < dc; ++a) {
        for (Eigen::Index b = 0; b < dc; ++b) {
            image.setZero();
            for (const auto &k : kraus) {
                image.noalias() += k.col(a) * k.col(b).adjoint();
            }
            s.col(a * dc + b) = vec(image);
        }
    }
    return s;
}

inline Matrix apply_superoperator(const Matrix &s, const Matrix &rho) {
    return unvec(s * vec(rho), static_cast<std::size_t>(rho.rows()));
}

namespace detail {

/// Hermitian-symmetrize, clip eigenvalues in [-kPsdTol, 0) to zero and
/// renormalize. Fails when a larger negative eigenvalue shows up.
inline std::optional<DensityMatrix> project_to_state(const Matrix &candidate) {
    Matrix h = 0.5 * (candidate + candidate.adjoint());
    const double tr = h.trace().real();
    if (!(std::abs(tr) > 1e-12)) {
        return std::nullopt;
    }
    h /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    RealVector values = solver.eigenvalues();
    if (values.minCoeff() < -kPsdTol) {
        return std::nullopt;
    }
    values = values.cwiseMax(0.0);
    Matrix rebuilt = solver.eigenvectors() * values.asDiagonal() *
                     solver.eigenvectors().adjoint();
    rebuilt /= rebuilt.trace().real();
    rebuilt = 0.5 * (rebuilt + rebuilt.adjoint());
    return DensityMatrix(std::move(rebuilt));
}

inline double spectrum_gap(const Matrix &s) {
    if (s.rows() < 2) {
        return 1.0;
    }
    Eigen::ComplexEigenSolver<Matrix> solver(s, false);
    if (solver.info() != Eigen::Success) {
        return 0.0;
    }
    std::vector<double> moduli;
    moduli.reserve(static_cast<std::size_t>(s.rows()));
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        moduli.push_back(std::abs(solver.eigenvalues()(i)));
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    return 1.0 - moduli[1];
}

} // namespace detail

/**
 * Self-consistent CTC states for a fixed interaction and input.
 *
 * The null space of S - I comes from a full SVD; singular values at or
 * below fp_tol * sigma_max count as zero. The representative is the image
 * of the maximally mixed state under the spectral projector onto that null
 * space, R (L^dagger R)^{-1} L^dagger, with R and L the right and left null
 * vectors. For a CPTP map the eigenvalue 1 is semisimple, so this projector
 * maps states to states.
 */
inline FixedPointResult fixed_points(const DeutschInteraction &ix,
                                     const DensityMatrix &input,
                                     double fp_tol = kDefaultFpTol) {
    if (!(fp_tol > 0.0)) {
        throw InputError("fixed_points: fp_tol must be positive");
    }
    detail::check_input(ix, input);
    const std::size_t dc = ix.d_ctc();
    const Matrix s = induced_map(ix, input);
    const auto n = s.rows();
    const Matrix shifted = s - Matrix::Identity(n, n);

    Eigen::BDCSVD<Matrix> svd(shifted, Eigen::ComputeFullU |
                                           Eigen::ComputeFullV);
    const RealVector &sv = svd.singularValues();
    // If S - I vanishes up to rounding (S = identity map) a purely relative
    // cutoff would promote that noise to full rank; everything is fixed.
    const double sigma_max = sv(0);
    const double noise_floor =
        64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; sigma_max > noise_floor && i < sv.size(); ++i) {
        if (sv(i) > fp_tol * sigma_max) {
            ++rank;
        }
    }
    const Eigen::Index nullity = n - rank;

    FixedPointResult result;
    result.fixed_space_dim = static_cast<std::size_t>(nullity);
    result.unique = nullity == 1;
    if (nullity == 0) {
        throw DomainError("fixed_points: no fixed point found (null space of "
                          "S - I is empty)");
    }

    const Matrix right = svd.matrixV().rightCols(nullity);
    const Matrix left = svd.matrixU().rightCols(nullity);
    for (Eigen::Index c = 0; c < nullity; ++c) {
        result.basis.push_back(unvec(right.col(c), dc));
    }

    const Matrix seed = Matrix::Identity(static_cast<Eigen::Index>(dc),
                                         static_cast<Eigen::Index>(dc)) /
                        static_cast<double>(dc);
    const Matrix gram = left.adjoint() * right;
    const Vector coeffs =
        gram.completeOrthogonalDecomposition().solve(left.adjoint() * vec(seed));
    const Matrix candidate = unvec(right * coeffs, dc);

    auto rep = detail::project_to_state(candidate);
    if (!rep) {
        throw DomainError("fixed_points: no density-matrix fixed point found "
                          "in the null space");
    }
    result.residual =
        max_abs(apply_superoperator(s, rep->matrix()) - rep->matrix());
    if (result.residual > fp_tol) {
        throw DomainError("fixed_points: representative residual " +
                          std::to_string(result.residual) +
                          " exceeds fp_tol");
    }
    result.representative = std::move(rep);
    result.spectrum_gap = detail::spectrum_gap(s);
    return result;
}

/// Chronology-respecting output Tr_CTC[V (input (x) rho_ctc) V^dagger].
/// rho_ctc must be self-consistent within 1e-8.
inline DensityMatrix output_state(const DeutschInteraction &ix,
                                  const DensityMatrix &input,
                                  const DensityMatrix &rho_ctc) {
    detail::check_input(ix, input);
    if (rho_ctc.dim() != ix.d_ctc()) {
        throw InputError("output_state: CTC state has wrong dimension");
    }
    const Matrix joint = ix.unitary() *
                         tensor(input.matrix(), rho_ctc.matrix()) *
                         ix.unitary().adjoint();
    const Matrix ctc_after =
        partial_trace(joint, ix.d_sys(), ix.d_ctc(), Subsystem::second);
    const double residual = max_abs(ctc_after - rho_ctc.matrix());
    if (residual > kSelfConsistencyTol) {
        throw InputError("output_state: CTC state is not self-consistent "
                         "(residual " +
                         std::to_string(residual) + ")");
    }
    Matrix out = partial_trace(joint, ix.d_sys(), ix.d_ctc(), Subsystem::first);
    return DensityMatrix(0.5 * (out + out.adjoint()));
}

struct EvolveResult {
    DensityMatrix output;
    FixedPointResult fp;
};

/// Fixed point followed by the output map. Throws NonUniqueFixedPoint
/// rather than pick among several self-consistent CTC states.
inline EvolveResult evolve(const DeutschInteraction &ix,
                           const DensityMatrix &input,
                           double fp_tol = kDefaultFpTol) {
    FixedPointResult fp = fixed_points(ix, input, fp_tol);
    if (!fp.unique) {
        throw NonUniqueFixedPoint(std::move(fp));
    }
    DensityMatrix out = output_state(ix, input, *fp.representative);
    return {std::move(out), std::move(fp)};
}

/**
 * Cesaro average (1/T) sum_{t=1..T} M^t(I/d_ctc), with M applied through its
 * Kraus operators. Independent of induced_map() and of the SVD route.
 */
inline DensityMatrix cesaro_iterate(const DeutschInteraction &ix,
                                    const DensityMatrix &input,
                                    std::size_t iters) {
    if (iters == 0) {
        throw InputError("cesaro_iterate: iters must be at least 1");
    }
    const auto dc = static_cast<Eigen::Index>(ix.d_ctc());
    const auto kraus = kraus_operators(ix, input);
    Matrix x = Matrix::Identity(dc, dc) / static_cast<double>(dc);
    Matrix next(dc, dc);
    Matrix tmp(dc, dc);
    Matrix acc = Matrix::Zero(dc, dc);
    for (std::size_t t = 0; t < iters; ++t) {
        next.setZero();
        for (const auto &k : kraus) {
            tmp.noalias() = k * x;
            next.noalias() += tmp * k.adjoint();
        }
        x.swap(next);
        acc += x;
    }
    acc /= static_cast<double>(iters);
    acc = 0.5 * (acc + acc.adjoint());
    acc /= acc.trace().real();
    return DensityMatrix(std::move(acc));
}

/**
 * Trace distance between the evolved mixture lambda*rho_a + (1-lambda)*rho_b
 * and the same mixture of the individually evolved outputs. Zero for any
 * linear map.
 */
inline double nonlinearity_gap(const DeutschInteraction &ix,
                               const DensityMatrix &rho_a,
                               const DensityMatrix &rho_b, double lambda,
                               double fp_tol = kDefaultFpTol) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InputError("nonlinearity_gap: lambda must lie in [0, 1]");
    }
    const double weights[] = {lambda, 1.0 - lambda};
    const DensityMatrix parts[] = {rho_a, rho_b};
    const DensityMatrix mixed = DensityMatrix::mixture(weights, parts);

    const auto out_a = evolve(ix, rho_a, fp_tol).output;
    const auto out_b = evolve(ix, rho_b, fp_tol).output;
    const auto out_mixed = evolve(ix, mixed, fp_tol).output;
    const Matrix linear =
        lambda * out_a.matrix() + (1.0 - lambda) * out_b.matrix();
    return trace_distance(out_mixed.matrix(), linear);
}

} // namespace ctc
