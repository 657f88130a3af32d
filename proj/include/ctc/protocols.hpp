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
 * @file protocols.hpp
 * @brief The B92 and BB84 distinguishing circuits and a prepare-and-measure
 * QKD session simulator with pluggable eavesdroppers.
 */

#include "ctc/deutsch.hpp"
#include "ctc/distinguisher.hpp"
#include "ctc/qlinalg.hpp"
#include "ctc/random.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctc {

enum class Protocol { b92, bb84 };
enum class EveStrategy { none, ctc, intercept_resend_z };

inline std::string_view to_string(Protocol p) {
    return p == Protocol::b92 ? "b92" : "bb84";
}

inline std::string_view to_string(EveStrategy e) {
    switch (e) {
    case EveStrategy::none:
        return "none";
    case EveStrategy::ctc:
        return "ctc";
    case EveStrategy::intercept_resend_z:
        return "intercept_resend_z";
    }
    return "none";
}

inline Protocol parse_protocol(std::string_view name) {
    if (name == "b92") {
        return Protocol::b92;
    }
    if (name == "bb84") {
        return Protocol::bb84;
    }
    throw InputError("unknown protocol '" + std::string(name) + "'");
}

inline EveStrategy parse_strategy(std::string_view name) {
    if (name == "none") {
        return EveStrategy::none;
    }
    if (name == "ctc") {
        return EveStrategy::ctc;
    }
    if (name == "intercept_resend_z") {
        return EveStrategy::intercept_resend_z;
    }
    throw InputError("unknown eavesdropper strategy '" + std::string(name) +
                     "'");
}

/// A distinguishing circuit: the signal states as the interaction sees
/// them (padded if needed), the family, and the interaction itself.
struct DistinguisherSetup {
    StateSet states;
    UnitaryFamily family;
    DeutschInteraction interaction;
};

/// B92 circuit: SWAP, then controlled-Hadamard. Separates |0> and |->.
inline DistinguisherSetup b92_setup() {
    auto set = validate_state_set({states::zero(), states::minus()});
    UnitaryFamily fam{2, {gates::identity(2), gates::hadamard()}, {}};
    auto ix = swap_then_control(2, fam.unitaries);
    return {std::move(set), std::move(fam), std::move(ix)};
}

/// The four BB84 states with an ancilla |0> appended, in index order
/// 00, 01, 10, 11 = |0>, |1>, |+>, |-> (basis bit first, value bit second).
inline std::vector<PureState> bb84_signal_states() {
    return {states::zero(), states::one(), states::plus(), states::minus()};
}

/// U_00 = SWAP, U_01 = X(x)X, U_10 = (X(x)I)(H(x)I), U_11 = (X(x)H) SWAP,
/// paired with the padded BB84 set.
inline DistinguisherSetup bb84_family() {
    const Matrix id = gates::identity(2);
    const Matrix x = gates::pauli_x();
    const Matrix h = gates::hadamard();
    const Matrix sw = gates::swap(2);
    UnitaryFamily fam;
    fam.dim = 4;
    fam.unitaries = {sw, tensor(x, x), tensor(x, id) * tensor(h, id),
                     tensor(x, h) * sw};
    auto set = pad_with_ancilla(bb84_signal_states(), 4);
    auto ix = build_distinguisher(set, fam);
    return {std::move(set), std::move(fam), std::move(ix)};
}

struct DemoCase {
    std::string input;
    std::size_t expected_label = 0;
    Classification result;
    std::string decoded; // e.g. "Z,+1"; empty for B92
};

struct DemoReport {
    std::string name;
    std::vector<DemoCase> cases;
    std::vector<std::string> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

inline constexpr double kDemoSuccessTol = 1e-9;
inline constexpr double kDemoResidualTol = 1e-10;

namespace detail {

inline void check_demo_case(const DemoCase &c,
                            std::vector<std::string> &failures) {
    const auto &r = c.result;
    if (r.label != c.expected_label) {
        failures.push_back(c.input + ": label " + std::to_string(r.label) +
                           ", expected " + std::to_string(c.expected_label));
    }
    if (r.success_prob < 1.0 - kDemoSuccessTol) {
        failures.push_back(c.input + ": success probability " +
                           std::to_string(r.success_prob));
    }
    if (r.fp.fixed_space_dim != 1) {
        failures.push_back(c.input + ": fixed space dimension " +
                           std::to_string(r.fp.fixed_space_dim));
    }
    if (r.fp.residual > kDemoResidualTol) {
        failures.push_back(c.input + ": fixed point residual " +
                           std::to_string(r.fp.residual));
    }
}

} // namespace detail

/// Classifies |0> and |-> through the B92 circuit. Solver errors
/// propagate.
inline DemoReport b92_demo(double fp_tol = kDefaultFpTol) {
    const auto setup = b92_setup();
    DemoReport report{"b92", {}, {}};
    const char *names[] = {"|0>", "|->"};
    for (std::size_t j = 0; j < 2; ++j) {
        DemoCase c{names[j], j, classify(setup.interaction, setup.states, j,
                                         fp_tol),
                   ""};
        detail::check_demo_case(c, report.failures);
        report.cases.push_back(std::move(c));
    }
    return report;
}

/// Decodes a BB84 label ab: a = 0 means a Z eigenstate, a = 1 an X
/// eigenstate, with eigenvalue (-1)^b.
inline std::string decode_bb84(std::size_t label) {
    const bool x_basis = (label >> 1) & 1U;
    const bool negative = label & 1U;
    return std::string(x_basis ? "X" : "Z") + (negative ? ",-1" : ",+1");
}

inline DemoReport bb84_demo(double fp_tol = kDefaultFpTol) {
    const auto setup = bb84_family();
    DemoReport report{"bb84", {}, {}};
    const char *names[] = {"|00>", "|10>", "|+0>", "|-0>"};
    const char *expected_decode[] = {"Z,+1", "Z,-1", "X,+1", "X,-1"};
    for (std::size_t j = 0; j < 4; ++j) {
        DemoCase c{names[j], j,
                   classify(setup.interaction, setup.states, j, fp_tol), ""};
        c.decoded = decode_bb84(c.result.label);
        detail::check_demo_case(c, report.failures);
        if (c.decoded != expected_decode[j]) {
            report.failures.push_back(std::string(names[j]) + ": decoded " +
                                      c.decoded + ", expected " +
                                      expected_decode[j]);
        }
        report.cases.push_back(std::move(c));
    }
    return report;
}

struct SessionStats {
    std::size_t signals_sent = 0;
    std::size_t sifted = 0;
    std::size_t errors = 0;
    double qber = 0.0;
    bool qber_defined = false; // false when nothing was sifted
    double eve_info = 0.0;     // fraction of sifted bits Eve guessed right
    std::uint64_t seed = 0;
};

struct TranscriptRecord {
    std::size_t index = 0;
    int alice_bit = 0;
    std::optional<int> alice_basis; // BB84 only; 0 = Z, 1 = X
    std::optional<std::size_t> eve_label;
    int bob_basis = 0;
    int bob_outcome = 0;
    bool sifted = false;
    bool error = false;
};

struct Session {
    SessionStats stats;
    std::vector<TranscriptRecord> transcript;
};

namespace detail {

/// Born-rule measurement of a qubit in Z (basis 0) or X (basis 1).
inline int measure_qubit(const DensityMatrix &rho, int basis, Rng &rng) {
    const PureState e0 = basis == 0 ? states::zero() : states::plus();
    const double p0 = std::clamp(
        (e0.amplitudes().adjoint() * rho.matrix() * e0.amplitudes())(0, 0)
            .real(),
        0.0, 1.0);
    const std::array<double, 2> probs{p0, 1.0 - p0};
    return static_cast<int>(rng.sample(probs));
}

} // namespace detail

/**
 * Simulates one prepare-and-measure session over a noiseless channel.
 *
 * BB84: Alice picks (basis, bit), Bob measures in a random basis and the
 * position is sifted when the bases agree. B92: Alice sends |0> for bit 0
 * and |-> for bit 1; Bob measures Z or X and keeps only conclusive
 * outcomes (|1> means bit 1, |+> means bit 0).
 *
 * Eve either passes the signal through, identifies it with the CTC
 * distinguisher and re-sends the identified state, or measures Z and
 * re-sends the eigenstate.
 */
inline Session run_qkd(Protocol protocol, std::size_t n_signals,
                       EveStrategy eve, std::uint64_t seed,
                       double fp_tol = kDefaultFpTol) {
    if (n_signals == 0) {
        throw InputError("run_qkd: need at least one signal");
    }
    const bool bb84 = protocol == Protocol::bb84;
    const std::vector<PureState> signals =
        bb84 ? bb84_signal_states()
             : std::vector<PureState>{states::zero(), states::minus()};
    std::optional<DistinguisherSetup> setup;
    if (eve == EveStrategy::ctc) {
        setup.emplace(bb84 ? bb84_family() : b92_setup());
    }
    const PureState ancilla = PureState::basis(2, 0);

    Rng rng(seed);
    Session session;
    session.stats.seed = seed;
    session.stats.signals_sent = n_signals;
    session.transcript.reserve(n_signals);
    std::size_t eve_correct = 0;

    for (std::size_t i = 0; i < n_signals; ++i) {
        TranscriptRecord rec;
        rec.index = i;
        rec.alice_bit = rng.bit() ? 1 : 0;
        std::size_t sent = static_cast<std::size_t>(rec.alice_bit);
        if (bb84) {
            rec.alice_basis = rng.bit() ? 1 : 0;
            sent = 2 * static_cast<std::size_t>(*rec.alice_basis) +
                   static_cast<std::size_t>(rec.alice_bit);
        }
        DensityMatrix channel = DensityMatrix::pure(signals[sent]);

        std::optional<int> eve_bit;
        switch (eve) {
        case EveStrategy::none:
            break;
        case EveStrategy::ctc: {
            const DensityMatrix probe =
                bb84 ? DensityMatrix(tensor(channel.matrix(),
                                            ancilla.projector()))
                     : channel;
            const auto c = read_out(setup->interaction, probe, fp_tol);
            rec.eve_label = c.label;
            eve_bit = static_cast<int>(bb84 ? (c.label & 1U) : c.label);
            channel = DensityMatrix::pure(signals[c.label]);
            break;
        }
        case EveStrategy::intercept_resend_z: {
            const int outcome = detail::measure_qubit(channel, 0, rng);
            rec.eve_label = static_cast<std::size_t>(outcome);
            eve_bit = outcome;
            channel = DensityMatrix::pure(
                PureState::basis(2, static_cast<std::size_t>(outcome)));
            break;
        }
        }

        rec.bob_basis = rng.bit() ? 1 : 0;
        rec.bob_outcome = detail::measure_qubit(channel, rec.bob_basis, rng);

        int key_bit = 0;
        if (bb84) {
            rec.sifted = rec.bob_basis == *rec.alice_basis;
            key_bit = rec.bob_outcome;
        } else if (rec.bob_basis == 0 && rec.bob_outcome == 1) {
            rec.sifted = true;
            key_bit = 1;
        } else if (rec.bob_basis == 1 && rec.bob_outcome == 0) {
            rec.sifted = true;
            key_bit = 0;
        }
        if (rec.sifted) {
            ++session.stats.sifted;
            rec.error = key_bit != rec.alice_bit;
            if (rec.error) {
                ++session.stats.errors;
            }
            if (eve_bit && *eve_bit == rec.alice_bit) {
                ++eve_correct;
            }
        }
        session.transcript.push_back(rec);
    }

    auto &st = session.stats;
    st.qber_defined = st.sifted > 0;
    if (st.qber_defined) {
        st.qber = static_cast<double>(st.errors) / static_cast<double>(st.sifted);
        st.eve_info =
            static_cast<double>(eve_correct) / static_cast<double>(st.sifted);
    }
    return session;
}

} // namespace ctc
