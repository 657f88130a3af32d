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

#include "ctc/qlinalg.hpp"
#include "ctc/random.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace ctc {
namespace {

using testing::MatrixNear;

TEST(Tensor, IdentityTimesIdentity) {
    EXPECT_TRUE(MatrixNear(tensor(gates::identity(2), gates::identity(2)),
                           gates::identity(4), 0.0));
}

TEST(Tensor, BasisProjectorProduct) {
    const Matrix m = tensor(states::zero().projector(),
                            states::one().projector());
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    EXPECT_TRUE(MatrixNear(m, expected, 0.0));
}

TEST(Tensor, XXFlipsBothQubits) {
    const Matrix xx = tensor(gates::pauli_x(), gates::pauli_x());
    const Vector in = tensor(states::one().amplitudes(),
                             states::zero().amplitudes()); // |10>
    const Vector out = xx * in;
    const Vector expected = tensor(states::zero().amplitudes(),
                                   states::one().amplitudes()); // |01>
    EXPECT_TRUE(MatrixNear(out, expected, 0.0));
}

TEST(Tensor, AssociativeOnIntegerEntries) {
    Rng rng(11);
    auto random_int = [&](Eigen::Index r, Eigen::Index c) {
        Matrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < c; ++j) {
                m(i, j) = Complex{std::floor(rng.uniform() * 7.0) - 3.0,
                                  std::floor(rng.uniform() * 7.0) - 3.0};
            }
        }
        return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_int(2, 3);
        const Matrix b = random_int(3, 2);
        const Matrix c = random_int(2, 2);
        EXPECT_EQ(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));
    }
}

TEST(PartialTrace, ProductStateKeepsFirst) {
    const Matrix m = tensor(states::zero().projector(),
                            states::zero().projector());
    EXPECT_TRUE(MatrixNear(partial_trace(m, 2, 2, Subsystem::first),
                           states::zero().projector(), 0.0));
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const Matrix m = phi * phi.adjoint();
    EXPECT_TRUE(MatrixNear(partial_trace(m, 2, 2, Subsystem::first),
                           gates::identity(2) / 2.0, 1e-15));
    EXPECT_TRUE(MatrixNear(partial_trace(m, 2, 2, Subsystem::second),
                           gates::identity(2) / 2.0, 1e-15));
}

TEST(PartialTrace, DimensionMismatchThrows) {
    EXPECT_THROW(partial_trace(gates::identity(4), 2, 3, Subsystem::first),
                 InputError);
}

TEST(PartialTrace, FactorizesAndPreservesTraceProperty) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t da = 2 + trial % 3;
        const std::size_t db = 2 + (trial / 3) % 3;
        const Matrix rho = random_density_matrix(da, rng).matrix();
        const Matrix sigma = 0.7 * random_density_matrix(db, rng).matrix();
        const Matrix joint = tensor(rho, sigma);
        EXPECT_TRUE(MatrixNear(partial_trace(joint, da, db, Subsystem::first),
                               rho * sigma.trace(), 1e-12));
        EXPECT_TRUE(MatrixNear(partial_trace(joint, da, db, Subsystem::second),
                               sigma * rho.trace(), 1e-12));

        Matrix g(static_cast<Eigen::Index>(da * db),
                 static_cast<Eigen::Index>(da * db));
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g(i) = Complex{rng.gaussian(), rng.gaussian()};
        }
        for (const auto keep : {Subsystem::first, Subsystem::second}) {
            EXPECT_LE(std::abs(partial_trace(g, da, db, keep).trace() -
                               g.trace()),
                      1e-12);
        }
    }
}

TEST(EigHermitian, MaximallyMixedQubit) {
    const auto e = eig_hermitian(gates::identity(2) / 2.0);
    EXPECT_NEAR(e.values(0), 0.5, 1e-15);
    EXPECT_NEAR(e.values(1), 0.5, 1e-15);
}

TEST(EigHermitian, PlusProjector) {
    const auto e = eig_hermitian(states::plus().projector());
    EXPECT_NEAR(e.values(0), 0.0, 1e-15);
    EXPECT_NEAR(e.values(1), 1.0, 1e-15);
}

TEST(EigHermitian, MixtureOfZeroAndPlusMatchesClosedForm) {
    const Matrix m =
        0.5 * (states::zero().projector() + states::plus().projector());
    // Oracle: eigenvalues of a real symmetric [[a, b], [b, c]].
    const double a = m(0, 0).real();
    const double b = m(0, 1).real();
    const double c = m(1, 1).real();
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    EXPECT_NEAR(mid - rad, (1.0 - 1.0 / std::sqrt(2.0)) / 2.0, 1e-15);

    const auto e = eig_hermitian(m);
    EXPECT_NEAR(e.values(0), mid - rad, 1e-14);
    EXPECT_NEAR(e.values(1), mid + rad, 1e-14);
}

TEST(EigHermitian, RejectsNonHermitian) {
    Matrix m = gates::identity(2);
    m(0, 1) = 1.0;
    EXPECT_THROW(eig_hermitian(m), InputError);
}

TEST(EigHermitian, RandomReconstructionProperty) {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = static_cast<Eigen::Index>(2 + trial % 15);
        Matrix g(d, d);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g(i) = Complex{rng.gaussian(), rng.gaussian()};
        }
        const Matrix h = g + g.adjoint();
        const auto e = eig_hermitian(h);
        for (Eigen::Index i = 1; i < d; ++i) {
            EXPECT_LE(e.values(i - 1), e.values(i));
        }
        const Matrix w = e.vectors;
        EXPECT_TRUE(MatrixNear(w.adjoint() * w, Matrix::Identity(d, d), 1e-10));
        const Matrix rebuilt =
            w * e.values.cast<Complex>().asDiagonal() * w.adjoint();
        EXPECT_TRUE(MatrixNear(rebuilt, h, 1e-9));
    }
}

TEST(IsUnitary, Examples) {
    EXPECT_TRUE(is_unitary(gates::hadamard(), 1e-12));
    EXPECT_FALSE(is_unitary(2.0 * gates::identity(2), 1e-12));
    EXPECT_TRUE(is_unitary(gates::swap(2), 0.0));
    EXPECT_TRUE(is_unitary(gates::swap(3), 0.0));
    EXPECT_FALSE(is_unitary(Matrix::Zero(2, 3), 1.0));
}

TEST(Swap, ExchangesFactors) {
    const Vector ab = tensor(PureState::basis(3, 1).amplitudes(),
                             PureState::basis(3, 2).amplitudes());
    const Vector ba = tensor(PureState::basis(3, 2).amplitudes(),
                             PureState::basis(3, 1).amplitudes());
    EXPECT_TRUE(MatrixNear(gates::swap(3) * ab, ba, 0.0));
}

TEST(PureState, ValidatesNorm) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, InputError);
    EXPECT_NO_THROW(PureState::normalized(v));
    EXPECT_THROW(PureState::normalized(Vector::Zero(2)), InputError);
    EXPECT_THROW(PureState::basis(2, 2), InputError);
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
    EXPECT_THROW(DensityMatrix(gates::identity(2)), InputError); // trace 2
    Matrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityMatrix{neg}, InputError);
    Matrix nonherm(2, 2);
    nonherm << 0.5, 0.1, 0.0, 0.5;
    EXPECT_THROW(DensityMatrix{nonherm}, InputError);
}

TEST(TraceDistance, OrthogonalPureStatesAreOneApart) {
    EXPECT_NEAR(trace_distance(states::zero().projector(),
                               states::one().projector()),
                1.0, 1e-15);
    EXPECT_NEAR(trace_distance(states::zero().projector(),
                               states::plus().projector()),
                1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Vectorization, RowMajorRoundTrip) {
    Matrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const Vector v = vec(m);
    EXPECT_EQ(v(1), Complex(2.0));
    EXPECT_EQ(unvec(v, 2), m);
}

} // namespace
} // namespace ctc
