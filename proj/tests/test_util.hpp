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

#include <gtest/gtest.h>

namespace ctc::testing {

inline ::testing::AssertionResult MatrixNear(const Matrix &actual,
                                             const Matrix &expected,
                                             double tol) {
    if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
        return ::testing::AssertionFailure()
               << "shape " << actual.rows() << "x" << actual.cols() << " vs "
               << expected.rows() << "x" << expected.cols();
    }
    const double dev = max_abs(actual - expected);
    if (dev <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure()
           << "max deviation " << dev << " > " << tol << "\nactual:\n"
           << actual << "\nexpected:\n"
           << expected;
}

/// Brute-force M(rho) = Tr_sys[V (in (x) rho) V^dagger] straight from the
/// definition, used as an oracle for the superoperator route.
inline Matrix apply_map_dense(const Matrix &v, const Matrix &input,
                              const Matrix &rho) {
    const Matrix joint = v * tensor(input, rho) * v.adjoint();
    return partial_trace(joint, static_cast<std::size_t>(input.rows()),
                         static_cast<std::size_t>(rho.rows()),
                         Subsystem::second);
}

} // namespace ctc::testing
