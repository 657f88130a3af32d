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

/// @file infotheory.hpp
/// @brief Entropies in bits, the Holevo quantity, and the information a
/// CTC-assisted receiver extracts from one signal.

#include "ctc/distinguisher.hpp"
#include "ctc/qlinalg.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctc {

inline constexpr double kEntropyCutoff = 1e-14;

class Ensemble {
  public:
    Ensemble(std::vector<double> priors, std::vector<DensityMatrix> states)
        : priors_(std::move(priors)), states_(std::move(states)) {
        if (priors_.size() != states_.size() || states_.empty()) {
            throw InputError("Ensemble: priors and states must have the same "
                             "non-zero length");
        }
        double total = 0.0;
        for (const double p : priors_) {
            if (!(p >= 0.0)) {
                throw InputError("Ensemble: negative prior");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw InputError("Ensemble: priors sum to " + std::to_string(total));
        }
        for (const auto &s : states_) {
            if (s.dim() != states_.front().dim()) {
                throw InputError("Ensemble: states have different dimensions");
            }
        }
    }

    static Ensemble uniform(const std::vector<PureState> &states) {
        std::vector<double> priors(states.size(),
                                   1.0 / static_cast<double>(states.size()));
        std::vector<DensityMatrix> rhos;
        rhos.reserve(states.size());
        for (const auto &s : states) {
            rhos.push_back(DensityMatrix::pure(s));
        }
        return {std::move(priors), std::move(rhos)};
    }

    [[nodiscard]] const std::vector<double> &priors() const { return priors_; }
    [[nodiscard]] const std::vector<DensityMatrix> &states() const {
        return states_;
    }
    [[nodiscard]] std::size_t dim() const { return states_.front().dim(); }

    [[nodiscard]] DensityMatrix average() const {
        return DensityMatrix::mixture(priors_, states_);
    }

  private:
    std::vector<double> priors_;
    std::vector<DensityMatrix> states_;
};

/// -sum p log2 p over a probability list, 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (const double p : probs) {
        if (p > kEntropyCutoff) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

inline double von_neumann_entropy(const DensityMatrix &rho) {
    const auto eig = eig_hermitian(rho.matrix());
    const std::vector<double> values(eig.values.data(),
                                     eig.values.data() + eig.values.size());
    return shannon_entropy(values);
}

/// chi = S(sum p_i rho_i) - sum p_i S(rho_i)
inline double holevo_chi(const Ensemble &e) {
    double chi = von_neumann_entropy(e.average());
    for (std::size_t i = 0; i < e.states().size(); ++i) {
        chi -= e.priors()[i] * von_neumann_entropy(e.states()[i]);
    }
    return chi;
}

/// I(X;Y) in bits from a joint distribution joint[x][y].
inline double mutual_information(const std::vector<std::vector<double>> &joint) {
    std::vector<double> px(joint.size(), 0.0);
    std::vector<double> py(joint.empty() ? 0 : joint.front().size(), 0.0);
    std::vector<double> flat;
    for (std::size_t x = 0; x < joint.size(); ++x) {
        for (std::size_t y = 0; y < joint[x].size(); ++y) {
            px[x] += joint[x][y];
            py[y] += joint[x][y];
            flat.push_back(joint[x][y]);
        }
    }
    return shannon_entropy(px) + shannon_entropy(py) - shannon_entropy(flat);
}

struct AccessibleInfo {
    double accessible_bits = 0.0;
    std::size_t n_states = 0;
    std::size_t qubit_dim = 0;  // dimension of the transmitted system
    std::size_t padded_dim = 0; // dimension seen by the distinguisher
    std::vector<std::size_t> labels;
    FamilyReport family;
};

/**
 * Mutual information between the sender's index and the distinguisher's
 * output. The states are padded to `padded_dim`, a family is constructed
 * and each state is run through the CTC; the joint distribution is
 * p(j, l) = (1/N) <l|rho_out(j)|l>.
 */
inline AccessibleInfo ctc_accessible_info(const std::vector<PureState> &states,
                                          std::size_t padded_dim,
                                          const Tolerances &tol = {}) {
    if (states.empty()) {
        throw InputError("ctc_accessible_info: empty ensemble");
    }
    const StateSet set = pad_with_ancilla(states, padded_dim, tol.distinct_tol);
    const UnitaryFamily fam = construct_family(set, std::nullopt, tol.span_tol);
    const DeutschInteraction ix = build_distinguisher(set, fam);

    const std::size_t n = set.size();
    AccessibleInfo info;
    info.n_states = n;
    info.qubit_dim = states.front().dim();
    info.padded_dim = padded_dim;
    info.family = verify_family(set, fam);

    std::vector<std::vector<double>> joint(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const auto c = classify(ix, set, j, tol.fp_tol);
        info.labels.push_back(c.label);
        for (std::size_t l = 0; l < n; ++l) {
            const auto ll = static_cast<Eigen::Index>(l);
            joint[j][l] = std::max(0.0, c.output.matrix()(ll, ll).real()) /
                          static_cast<double>(n);
        }
    }
    info.accessible_bits = mutual_information(joint);
    return info;
}

/// Overload that checks the priors are uniform before delegating.
inline AccessibleInfo ctc_accessible_info(const Ensemble &e,
                                          const std::vector<PureState> &states,
                                          std::size_t padded_dim,
                                          const Tolerances &tol = {}) {
    const double expected = 1.0 / static_cast<double>(e.priors().size());
    for (const double p : e.priors()) {
        if (std::abs(p - expected) > 1e-12) {
            throw InputError("ctc_accessible_info: priors must be uniform");
        }
    }
    return ctc_accessible_info(states, padded_dim, tol);
}

} // namespace ctc
