// Copyright 2026 The cointoss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cointoss/qstate.hpp"

namespace cointoss {

/// Which of the two shared pairs Bob selects for the coin toss.
enum class Choice : std::uint8_t { First = 1, Second = 2 };

constexpr int choice_number(Choice c) {
    return static_cast<int>(c);
}
constexpr Choice other(Choice c) {
    return c == Choice::First ? Choice::Second : Choice::First;
}
/// Alice's half of pair `c`.
constexpr SubsystemLabel alice_half(Choice c) {
    return c == Choice::First ? kA1 : kA2;
}
/// Bob's half of pair `c`.
constexpr SubsystemLabel bob_half(Choice c) {
    return c == Choice::First ? kB1 : kB2;
}

/// A unitary on a set of labels. No targets means identity.
struct LocalOperation {
    std::vector<SubsystemLabel> targets;
    Eigen::MatrixXcd unitary;

    static LocalOperation identity() {
        return {{}, identity_operator(0)};
    }
    bool is_identity() const {
        return targets.empty();
    }
    StateVector apply(const StateVector &state) const {
        return is_identity() ? state : apply_local(state, targets, unitary);
    }
};

/// Coefficients of Alice's general cheating state, sum_ij a_ij |phi_ij> |ij>_{B1 B2}.
struct AliceCoefficients {
    double a00 = 0;
    double a01 = 0;
    double a10 = 0;
    double a11 = 0;

    std::array<double, 4> as_array() const {
        return {a00, a01, a10, a11};
    }
    double squared_norm() const {
        return a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11;
    }
    bool is_normalized(double tolerance = 1e-10) const {
        return std::abs(squared_norm() - 1) <= tolerance;
    }
    void require_normalized() const {
        if (!is_normalized()) {
            throw NotNormalized("coefficients square-sum to " + std::to_string(squared_norm()));
        }
        for (double a : as_array()) {
            if (a < 0) {
                throw NotNormalized("coefficients must be nonnegative");
            }
        }
    }

    static AliceCoefficients honest() {
        return {0.5, 0.5, 0.5, 0.5};
    }
    /// The maximizer sqrt(2/3), 1/sqrt(6), 1/sqrt(6), 0.
    static AliceCoefficients optimal() {
        return {std::sqrt(2.0 / 3.0), 1 / std::sqrt(6.0), 1 / std::sqrt(6.0), 0};
    }
};

/// How the conditional states |phi_ij> of Alice's register are chosen.
enum class PhiMode {
    /// A1 and A2 copy B1 and B2 coherently; no ancilla.
    Aligned,
    /// A1 and A2 copy B1 and B2, and a two-qubit ancilla A also records ij,
    /// so the four branches are orthogonal on Alice's side.
    Orthogonal,
};

struct AliceResponse {
    LocalOperation operation;
    SubsystemLabel send;
};

struct AliceCheatStrategy {
    std::string id;
    /// Over {A#i..., A1, B1, A2, B2}.
    StateVector initial_state;
    /// Indexed by choice_number(c) - 1.
    std::array<AliceResponse, 2> responses;

    const AliceResponse &response(Choice c) const {
        return responses[choice_number(c) - 1];
    }
};

/// Bob applies `operation` to his qubits, measures `measured` in the
/// computational basis and announces announce_rule[outcome bits], first
/// measured label most significant. His verdict is always a pass.
struct BobCheatStrategy {
    std::string id;
    std::uint8_t ancilla_qubits = 0;
    LocalOperation operation;
    std::vector<SubsystemLabel> measured;
    std::vector<Choice> announce_rule;
};

inline bool is_bob_label(SubsystemLabel label, std::uint8_t ancilla_qubits) {
    return label == kB1 || label == kB2 || (label.site == Site::AncillaB && label.index < ancilla_qubits);
}

inline void validate(const AliceCheatStrategy &strategy) {
    const auto &labels = strategy.initial_state.labels();
    for (auto required : {kA1, kB1, kA2, kB2}) {
        if (!strategy.initial_state.contains(required)) {
            throw StrategyRegisterMismatch("initial state lacks " + to_string(required));
        }
    }
    for (auto label : labels) {
        if (label.site == Site::AncillaB) {
            throw StrategyRegisterMismatch("Alice's state may not hold Bob's ancilla " + to_string(label));
        }
    }
    for (const auto &response : strategy.responses) {
        if (!held_by_alice(response.send) || !strategy.initial_state.contains(response.send)) {
            throw StrategyRegisterMismatch("Alice cannot send " + to_string(response.send));
        }
        for (auto target : response.operation.targets) {
            if (!held_by_alice(target) || !strategy.initial_state.contains(target)) {
                throw StrategyRegisterMismatch("Alice's operation touches " + to_string(target));
            }
        }
    }
}

inline void validate(const BobCheatStrategy &strategy) {
    for (auto target : strategy.operation.targets) {
        if (!is_bob_label(target, strategy.ancilla_qubits)) {
            throw StrategyRegisterMismatch("Bob's operation touches " + to_string(target));
        }
    }
    for (auto label : strategy.measured) {
        if (!is_bob_label(label, strategy.ancilla_qubits)) {
            throw StrategyRegisterMismatch("Bob cannot measure " + to_string(label));
        }
    }
    if (strategy.measured.size() > 8 || strategy.announce_rule.size() != (std::size_t{1} << strategy.measured.size())) {
        throw StrategyRegisterMismatch("announce rule needs one entry per measurement outcome");
    }
}

/// Announcement for the measured bits, first measured label most significant.
inline Choice announce(const BobCheatStrategy &strategy, std::span<const Bit> bits) {
    std::size_t index = 0;
    for (Bit b : bits) {
        index = (index << 1) | b;
    }
    return strategy.announce_rule.at(index);
}

/// Builds sum_ij a_ij e^{i phase_ij} |phi_ij> |ij>_{B1 B2}. Alice answers
/// choice 1 by sending A2 and choice 2 by sending A1, without any local
/// operation. Target 1 flips every qubit of the state.
inline AliceCheatStrategy coefficient_strategy(const AliceCoefficients &c, PhiMode mode, Bit target = 0,
                                               std::array<double, 4> phases = {}) {
    c.require_normalized();
    auto coefficient = c.as_array();
    std::vector<SubsystemLabel> labels;
    if (mode == PhiMode::Orthogonal) {
        labels = {alice_ancilla(0), alice_ancilla(1)};
    }
    labels.insert(labels.end(), {kA1, kB1, kA2, kB2});
    std::vector<Amplitude> amplitudes(std::size_t{1} << labels.size());
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            std::size_t ij = 2 * i + j;
            // |i i j j> over A1 B1 A2 B2.
            std::size_t index = (i << 3) | (i << 2) | (j << 1) | j;
            if (mode == PhiMode::Orthogonal) {
                index |= ij << 4;
            }
            amplitudes[index] = std::polar(coefficient[ij], phases[ij]);
        }
    }
    auto state = StateVector::normalized(std::move(labels), std::move(amplitudes));
    if (target == 1) {
        state = flip_all(state);
    }
    std::string id = "coefficients:";
    for (std::size_t k = 0; k < 4; k++) {
        id += (k ? "," : "") + std::to_string(coefficient[k]);
    }
    if (mode == PhiMode::Orthogonal) {
        id += ":orthogonal";
    }
    return {std::move(id),
            std::move(state),
            {AliceResponse{LocalOperation::identity(), kA2}, AliceResponse{LocalOperation::identity(), kA1}}};
}

/// Alice's honest preparation, two Bell pairs, phrased as a strategy.
inline AliceCheatStrategy honest_alice() {
    auto strategy = coefficient_strategy(AliceCoefficients::honest(), PhiMode::Aligned);
    strategy.id = "honest";
    return strategy;
}

/// sqrt(2/3)|0000> + (|0011> + |1100>)/sqrt(6) over A1 B1 A2 B2, bit-flipped
/// for target 1. The qubit sent for verification is the partner of Bob's
/// unchosen half: A2 on choice 1, A1 on choice 2.
inline AliceCheatStrategy optimal_alice(Bit target) {
    auto strategy = coefficient_strategy(AliceCoefficients::optimal(), PhiMode::Aligned, target);
    strategy.id = "optimal-alice";
    return strategy;
}

/// Bob who measures both received qubits and announces a pair whose outcome
/// equals `target`, preferring pair 1 (also when neither matches).
inline BobCheatStrategy measure_and_pick_bob(Bit target) {
    BobCheatStrategy strategy{"measure-and-pick", 0, LocalOperation::identity(), {kB1, kB2}, {}};
    for (Bit b1 = 0; b1 < 2; b1++) {
        for (Bit b2 = 0; b2 < 2; b2++) {
            bool second = b1 != target && b2 == target;
            strategy.announce_rule.push_back(second ? Choice::Second : Choice::First);
        }
    }
    return strategy;
}

/// Bob who leaves the qubits alone and always announces pair 1.
inline BobCheatStrategy honest_bob() {
    return {"honest", 0, LocalOperation::identity(), {}, {Choice::First}};
}

/// Haar-random unitary on B1, B2 and up to one ancilla qubit, followed by a
/// computational measurement of a random nonempty subset of those qubits
/// (always including the ancilla when present) and a random announce rule.
inline BobCheatStrategy random_bob_strategy(Rng &rng) {
    BobCheatStrategy strategy;
    strategy.id = "random-bob:" + std::to_string(rng.seed());
    strategy.ancilla_qubits = static_cast<std::uint8_t>(rng.below(2));
    strategy.operation.targets = {kB1, kB2};
    if (strategy.ancilla_qubits) {
        strategy.operation.targets.push_back(kAncillaB);
    }
    strategy.operation.unitary = haar_unitary(strategy.operation.targets.size(), rng);
    const auto &candidates = strategy.operation.targets;
    std::size_t subset = 0;
    while (subset == 0 || (strategy.ancilla_qubits && !(subset & 4))) {
        subset = rng.below(std::size_t{1} << candidates.size());
    }
    for (std::size_t i = 0; i < candidates.size(); i++) {
        if (subset & (std::size_t{1} << i)) {
            strategy.measured.push_back(candidates[i]);
        }
    }
    for (std::size_t k = 0; k < (std::size_t{1} << strategy.measured.size()); k++) {
        strategy.announce_rule.push_back(rng.bernoulli(0.5) ? Choice::Second : Choice::First);
    }
    return strategy;
}

}  // namespace cointoss
