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
 * @file distinguisher.hpp
 * @brief Perfect discrimination of N distinct states in dimension N with an
 * N-dimensional CTC.
 *
 * The interaction swaps the input into the CTC and then applies
 * sum_k |k><k| (x) U_k. For input |psi_j> the induced CTC map is
 *
 *     M(rho) = sum_k rho_kk U_k |psi_j><psi_j| U_k^dagger,
 *
 * whose only fixed point is |j><j| provided
 *   (1) U_k |psi_k> = |k>            for all k, and
 *   (2) <j| U_k |psi_j> != 0         for all j, k.
 *
 * Each U_k is assembled as sum_m |c_m><b_m| from two orthonormal bases. The
 * b basis is Gram-Schmidt over the states, starting at |psi_k>; states that
 * fall into the span built so far are grouped, and the matching c vector is
 * the uniform superposition of the group's computational basis indices.
 */

#include "ctc/deutsch.hpp"
#include "ctc/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctc {

inline constexpr double kDefaultSpanTol = 1e-8;
inline constexpr double kDefaultDistinctTol = 1e-6;
inline constexpr double kCondition1Tol = 1e-9;
inline constexpr double kFloorMin = 1e-9;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kProjectorTol = 1e-8;

/// N pure states in dimension N, pairwise distinct up to global phase.
class StateSet {
  public:
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<PureState> &states() const {
        return states_;
    }
    [[nodiscard]] const PureState &operator[](std::size_t j) const {
        return states_[j];
    }

  private:
    friend StateSet validate_state_set(std::vector<PureState> raw,
                                       double distinct_tol);
    StateSet(std::size_t dim, std::vector<PureState> states)
        : dim_(dim), states_(std::move(states)) {}

    std::size_t dim_;
    std::vector<PureState> states_;
};

inline StateSet validate_state_set(std::vector<PureState> raw,
                                   double distinct_tol = kDefaultDistinctTol) {
    if (raw.empty()) {
        throw InputError("validate_state_set: empty state list");
    }
    if (!(distinct_tol > 0.0 && distinct_tol < 1.0)) {
        throw InputError("validate_state_set: distinct_tol must lie in (0, 1)");
    }
    const std::size_t dim = raw.front().dim();
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[j].dim() != dim) {
            throw InputError("validate_state_set: state " + std::to_string(j) +
                             " has dimension " + std::to_string(raw[j].dim()) +
                             ", expected " + std::to_string(dim));
        }
    }
    if (raw.size() != dim) {
        throw InputError("validate_state_set: " + std::to_string(raw.size()) +
                         " states in dimension " + std::to_string(dim) +
                         "; the count must equal the dimension (pad first)");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            const double ov = overlap_magnitude(raw[i], raw[j]);
            if (ov > 1.0 - distinct_tol) {
                throw InputError("validate_state_set: duplicate states " +
                                 std::to_string(i) + " and " +
                                 std::to_string(j) + " (overlap " +
                                 std::to_string(ov) + ")");
            }
        }
    }
    return {dim, std::move(raw)};
}

/// Appends |0...0> of dimension target_dim / d to every state, then
/// validates the padded list.
inline StateSet pad_with_ancilla(const std::vector<PureState> &states,
                                 std::size_t target_dim,
                                 double distinct_tol = kDefaultDistinctTol) {
    if (states.empty()) {
        throw InputError("pad_with_ancilla: empty state list");
    }
    const std::size_t d = states.front().dim();
    if (target_dim == 0 || target_dim % d != 0) {
        throw InputError("pad_with_ancilla: target dimension " +
                         std::to_string(target_dim) +
                         " is not a multiple of " + std::to_string(d));
    }
    const PureState ancilla = PureState::basis(target_dim / d, 0);
    std::vector<PureState> padded;
    padded.reserve(states.size());
    for (const auto &s : states) {
        if (s.dim() != d) {
            throw InputError("pad_with_ancilla: mixed state dimensions");
        }
        padded.push_back(s.tensor(ancilla));
    }
    return validate_state_set(std::move(padded), distinct_tol);
}

struct StateGroup {
    std::size_t step = 0; // t, 1-based
    std::vector<std::size_t> members; // j_{t,n}
    std::size_t size = 0; // m_t
};

struct ConstructionTrace {
    std::vector<PureState> b_basis;
    std::vector<PureState> c_basis;
    std::vector<StateGroup> groups;
};

struct UnitaryFamily {
    std::size_t dim = 0;
    std::vector<Matrix> unitaries;
    std::vector<ConstructionTrace> traces; // empty for hand-built families
};

struct FamilyReport {
    double floor_margin = 0.0;   // min_{j,k} |<j|U_k|psi_j>|
    double cond1_residual = 0.0; // max_k ||U_k|psi_k> - |k>||
};

inline FamilyReport verify_family(const StateSet &s, const UnitaryFamily &fam) {
    const std::size_t n = s.dim();
    if (fam.dim != n || fam.unitaries.size() != n) {
        throw InputError("verify_family: family does not match the state set");
    }
    FamilyReport report;
    report.floor_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix &u = fam.unitaries[k];
        const Vector mapped = u * s[k].amplitudes();
        const Vector target = PureState::basis(n, k).amplitudes();
        report.cond1_residual =
            std::max(report.cond1_residual, (mapped - target).norm());
        for (std::size_t j = 0; j < n; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            const double amp = std::abs((u * s[j].amplitudes())(jj));
            report.floor_margin = std::min(report.floor_margin, amp);
        }
    }
    return report;
}

namespace detail {

/// Residual of v after projection onto span(basis), basis orthonormal.
inline Vector orthogonal_residual(const Vector &v,
                                  const std::vector<Vector> &basis) {
    Vector r = v;
    for (const auto &b : basis) {
        r -= b * b.dot(r);
    }
    // Second pass keeps the residual orthogonal to working precision.
    for (const auto &b : basis) {
        r -= b * b.dot(r);
    }
    return r;
}

/// Extends an orthonormal list to a full basis of C^dim with computational
/// basis vectors, taking the largest residual at each step.
inline void complete_basis(std::vector<Vector> &basis, std::size_t dim) {
    while (basis.size() < dim) {
        Vector best;
        double best_norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const Vector r = orthogonal_residual(
                PureState::basis(dim, i).amplitudes(), basis);
            const double nr = r.norm();
            if (nr > best_norm) {
                best_norm = nr;
                best = r;
            }
        }
        if (best_norm < 1e-6) {
            throw DomainError("complete_basis: could not extend basis");
        }
        basis.push_back(best / best_norm);
    }
}

inline bool orthonormal(const std::vector<Vector> &basis, double tol) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            if (std::abs(basis[i].dot(basis[j]) - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

inline std::vector<std::size_t>
resolve_order(std::optional<std::vector<std::size_t>> order, std::size_t n) {
    if (!order) {
        std::vector<std::size_t> identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            identity[i] = i;
        }
        return identity;
    }
    if (order->size() != n) {
        throw InputError("construct_family: order must list every index once");
    }
    std::vector<bool> seen(n, false);
    for (const auto idx : *order) {
        if (idx >= n || seen[idx]) {
            throw InputError("construct_family: order is not a permutation");
        }
        seen[idx] = true;
    }
    return *order;
}

inline std::pair<Matrix, ConstructionTrace>
construct_unitary(const StateSet &s, std::size_t k,
                  const std::vector<std::size_t> &order, double span_tol) {
    const std::size_t n = s.dim();
    std::vector<Vector> b;
    std::vector<Vector> c;
    std::vector<bool> used(n, false);
    ConstructionTrace trace;

    b.push_back(s[k].amplitudes());
    c.push_back(PureState::basis(n, k).amplitudes());
    used[k] = true;
    trace.groups.push_back({1, {k}, 1});

    for (const std::size_t pick : order) {
        if (used[pick]) {
            continue;
        }
        const Vector r = orthogonal_residual(s[pick].amplitudes(), b);
        const double nr = r.norm();
        if (nr <= span_tol) {
            throw DomainError("construct_family: state " +
                              std::to_string(pick) +
                              " lies in an earlier span but was not grouped");
        }
        b.push_back(r / nr);

        StateGroup group;
        group.step = b.size();
        for (const std::size_t j : order) {
            if (used[j]) {
                continue;
            }
            if (orthogonal_residual(s[j].amplitudes(), b).norm() <= span_tol) {
                group.members.push_back(j);
                used[j] = true;
            }
        }
        if (!used[pick]) {
            // The freshly orthogonalized state always lies in the new span.
            group.members.insert(group.members.begin(), pick);
            used[pick] = true;
        }
        group.size = group.members.size();

        Vector cv = Vector::Zero(static_cast<Eigen::Index>(n));
        const double w = 1.0 / std::sqrt(static_cast<double>(group.size));
        for (const std::size_t j : group.members) {
            cv(static_cast<Eigen::Index>(j)) = w;
        }
        c.push_back(std::move(cv));
        trace.groups.push_back(std::move(group));
    }

    complete_basis(b, n);
    complete_basis(c, n);
    if (!orthonormal(b, kOrthonormalTol) || !orthonormal(c, kOrthonormalTol)) {
        throw DomainError("construct_family: basis lost orthonormality");
    }

    const auto dim = static_cast<Eigen::Index>(n);
    Matrix u = Matrix::Zero(dim, dim);
    for (std::size_t m = 0; m < n; ++m) {
        u.noalias() += c[m] * b[m].adjoint();
    }
    for (std::size_t m = 0; m < n; ++m) {
        trace.b_basis.emplace_back(PureState::normalized(b[m]));
        trace.c_basis.emplace_back(PureState::normalized(c[m]));
    }
    return {std::move(u), std::move(trace)};
}

} // namespace detail

/**
 * Builds U_0..U_{N-1} satisfying both conditions. `order` fixes the sequence
 * in which unused states are picked; nullopt means index order.
 */
inline UnitaryFamily
construct_family(const StateSet &s,
                 std::optional<std::vector<std::size_t>> order = std::nullopt,
                 double span_tol = kDefaultSpanTol) {
    if (!(span_tol > 0.0)) {
        throw InputError("construct_family: span_tol must be positive");
    }
    const std::size_t n = s.dim();
    const auto seq = detail::resolve_order(std::move(order), n);

    UnitaryFamily fam;
    fam.dim = n;
    for (std::size_t k = 0; k < n; ++k) {
        auto [u, trace] = detail::construct_unitary(s, k, seq, span_tol);
        fam.unitaries.push_back(std::move(u));
        fam.traces.push_back(std::move(trace));
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (!is_unitary(fam.unitaries[k], kUnitaryTol)) {
            throw DomainError("construct_family: U_" + std::to_string(k) +
                              " is not unitary");
        }
    }
    const auto report = verify_family(s, fam);
    if (report.cond1_residual > kCondition1Tol) {
        throw DomainError("construct_family: U_k|psi_k> = |k> violated "
                          "(residual " +
                          std::to_string(report.cond1_residual) + ")");
    }
    if (!(report.floor_margin > kFloorMin)) {
        throw DomainError("construct_family: floor margin " +
                          std::to_string(report.floor_margin) +
                          " too small; span_tol likely misgrouped states");
    }
    return fam;
}

inline DeutschInteraction build_distinguisher(const StateSet &s,
                                              const UnitaryFamily &fam) {
    const auto report = verify_family(s, fam);
    if (report.cond1_residual > kCondition1Tol) {
        throw InputError("build_distinguisher: family fails U_k|psi_k> = |k> "
                         "(residual " +
                         std::to_string(report.cond1_residual) + ")");
    }
    return swap_then_control(s.dim(), fam.unitaries);
}

struct Classification {
    std::size_t label = 0;
    double success_prob = 0.0;
    FixedPointResult fp;
    DensityMatrix output;
};

/// Evolves an arbitrary input through a distinguisher and reads the output
/// in the computational basis. The output must be a basis projector.
inline Classification read_out(const DeutschInteraction &ix,
                               const DensityMatrix &input,
                               double fp_tol = kDefaultFpTol) {
    auto [out, fp] = evolve(ix, input, fp_tol);
    const Matrix &m = out.matrix();
    Eigen::Index label = 0;
    m.diagonal().real().maxCoeff(&label);
    const double prob = m(label, label).real();
    const Matrix target =
        PureState::basis(out.dim(), static_cast<std::size_t>(label))
            .projector();
    if (max_abs(m - target) > kProjectorTol) {
        throw DomainError("classify: output is not a computational basis "
                          "projector (deviation " +
                          std::to_string(max_abs(m - target)) + ")");
    }
    return {static_cast<std::size_t>(label), prob, std::move(fp),
            std::move(out)};
}

/// Runs |psi_j> through the interaction.
inline Classification classify(const DeutschInteraction &ix, const StateSet &s,
                               std::size_t j, double fp_tol = kDefaultFpTol) {
    if (j >= s.size()) {
        throw InputError("classify: index out of range");
    }
    return read_out(ix, DensityMatrix::pure(s[j]), fp_tol);
}

/// Tolerances threaded through the distinguisher pipeline.
struct Tolerances {
    double fp_tol = kDefaultFpTol;
    double span_tol = kDefaultSpanTol;
    double distinct_tol = kDefaultDistinctTol;
};

} // namespace ctc
