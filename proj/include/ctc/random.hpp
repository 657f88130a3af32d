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

#include "ctc/qlinalg.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ctc {

/// Seeded generator. Draws are derived from raw mt19937_64 output so that
/// sequences do not depend on the standard library's distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    bool bit() { return (engine_() >> 63) != 0; }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Index drawn from a discrete distribution given by `probs`.
    template <typename Probs> std::size_t sample(const Probs &probs) {
        const double u = uniform();
        double acc = 0.0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(probs.size());
             ++i) {
            if (probs[i] <= 0.0) {
                continue;
            }
            last = i;
            acc += probs[i];
            if (u < acc) {
                return i;
            }
        }
        return last;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-random pure state: normalized complex Gaussian vector.
inline PureState haar_state(std::size_t dim, Rng &rng) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = Complex{rng.gaussian(), rng.gaussian()};
    }
    return PureState::normalized(v);
}

/// Haar-random unitary: QR of a Ginibre matrix with the phase of R's
/// diagonal folded back into Q.
inline Matrix haar_unitary(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            g(i, j) = Complex{rng.gaussian(), rng.gaussian()};
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

/// Random mixed state of full rank: W W^dagger / tr with W Ginibre.
inline DensityMatrix random_density_matrix(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix w(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            w(i, j) = Complex{rng.gaussian(), rng.gaussian()};
        }
    }
    Matrix rho = w * w.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

} // namespace ctc
