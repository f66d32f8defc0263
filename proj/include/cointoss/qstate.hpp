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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cointoss/errors.hpp"
#include "cointoss/rng.hpp"

namespace cointoss {

using Amplitude = std::complex<double>;
using Bit = std::uint8_t;

/// Physical site a qubit belongs to. A and AncillaB are ancilla sites that may
/// hold several qubits, distinguished by SubsystemLabel::index.
enum class Site : std::uint8_t { A, A1, B1, A2, B2, AncillaB };

struct SubsystemLabel {
    Site site = Site::A1;
    std::uint8_t index = 0;

    auto operator<=>(const SubsystemLabel &) const = default;
};

inline constexpr SubsystemLabel kA{Site::A, 0};
inline constexpr SubsystemLabel kA1{Site::A1, 0};
inline constexpr SubsystemLabel kB1{Site::B1, 0};
inline constexpr SubsystemLabel kA2{Site::A2, 0};
inline constexpr SubsystemLabel kB2{Site::B2, 0};
inline constexpr SubsystemLabel kAncillaB{Site::AncillaB, 0};

constexpr SubsystemLabel alice_ancilla(std::uint8_t i) {
    return {Site::A, i};
}
constexpr SubsystemLabel bob_ancilla(std::uint8_t i) {
    return {Site::AncillaB, i};
}

constexpr bool held_by_alice(SubsystemLabel label) {
    return label.site == Site::A || label.site == Site::A1 || label.site == Site::A2;
}

inline std::string to_string(SubsystemLabel label) {
    std::string name;
    switch (label.site) {
        case Site::A: name = "A"; break;
        case Site::A1: name = "A1"; break;
        case Site::B1: name = "B1"; break;
        case Site::A2: name = "A2"; break;
        case Site::B2: name = "B2"; break;
        case Site::AncillaB: name = "AncillaB"; break;
    }
    if (label.index != 0) {
        name += "#" + std::to_string(label.index);
    }
    return name;
}

inline std::optional<SubsystemLabel> parse_label(std::string_view text) {
    std::uint8_t index = 0;
    if (auto hash = text.find('#'); hash != std::string_view::npos) {
        int value = 0;
        for (char c : text.substr(hash + 1)) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            value = value * 10 + (c - '0');
            if (value > 255) {
                return std::nullopt;
            }
        }
        if (hash + 1 == text.size()) {
            return std::nullopt;
        }
        index = static_cast<std::uint8_t>(value);
        text = text.substr(0, hash);
    }
    static constexpr std::array<std::pair<std::string_view, Site>, 6> names{{
        {"A", Site::A},
        {"A1", Site::A1},
        {"B1", Site::B1},
        {"A2", Site::A2},
        {"B2", Site::B2},
        {"AncillaB", Site::AncillaB},
    }};
    for (const auto &[name, site] : names) {
        if (name == text) {
            return SubsystemLabel{site, index};
        }
    }
    return std::nullopt;
}

/// Normalized pure state over an ordered register of labeled qubits.
///
/// Position 0 in the register is the most significant bit of a basis index, so
/// amplitude k of a register (q0, q1, ..., q(n-1)) belongs to |q0 q1 ... q(n-1)>
/// read as a binary number. Values are immutable: every operation below
/// returns a new state.
class StateVector {
   public:
    /// Builds a state whose amplitudes have any nonzero norm, rescaling by the
    /// exactly computed norm. Callers that need the strict input checks use
    /// make_state().
    static StateVector normalized(std::vector<SubsystemLabel> labels, std::vector<Amplitude> amplitudes) {
        check_register(labels, amplitudes.size());
        double norm = std::sqrt(squared_norm(amplitudes));
        if (norm < 1e-12) {
            throw ZeroNorm("all amplitudes vanish");
        }
        // Already unit up to rounding: keep the amplitudes bit-exact.
        if (std::abs(norm - 1) > 4 * std::numeric_limits<double>::epsilon()) {
            for (auto &a : amplitudes) {
                a /= norm;
            }
        }
        return StateVector(std::move(labels), std::move(amplitudes));
    }

    std::size_t num_qubits() const noexcept {
        return labels_.size();
    }
    std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    const std::vector<SubsystemLabel> &labels() const noexcept {
        return labels_;
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }
    Amplitude amplitude(std::size_t basis_index) const {
        return amplitudes_.at(basis_index);
    }

    bool contains(SubsystemLabel label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    std::size_t position(SubsystemLabel label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw UnknownLabel(to_string(label) + " is not in the register");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    /// Bit mask selecting `label` inside a basis index.
    std::size_t mask(SubsystemLabel label) const {
        return std::size_t{1} << (num_qubits() - 1 - position(label));
    }

    double norm() const {
        return std::sqrt(squared_norm(amplitudes_));
    }

    static double squared_norm(std::span<const Amplitude> amplitudes) {
        double total = 0;
        for (const auto &a : amplitudes) {
            total += std::norm(a);
        }
        return total;
    }

    /// Throws DimensionMismatch or LabelCollision for an invalid register.
    static void check_register(const std::vector<SubsystemLabel> &labels, std::size_t size) {
        if (labels.size() > 24 || size != (std::size_t{1} << labels.size())) {
            throw DimensionMismatch(std::to_string(size) + " amplitudes for " + std::to_string(labels.size()) +
                                    " qubits");
        }
        for (std::size_t i = 0; i < labels.size(); i++) {
            for (std::size_t j = i + 1; j < labels.size(); j++) {
                if (labels[i] == labels[j]) {
                    throw LabelCollision("label " + to_string(labels[i]) + " repeated");
                }
            }
        }
    }

   private:
    StateVector(std::vector<SubsystemLabel> labels, std::vector<Amplitude> amplitudes)
        : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
    }

    std::vector<SubsystemLabel> labels_;
    std::vector<Amplitude> amplitudes_;
};

/// Validated construction: the amplitude norm must be within 1e-8 of one and
/// is then rescaled exactly.
inline StateVector make_state(std::vector<SubsystemLabel> labels, std::vector<Amplitude> amplitudes) {
    StateVector::check_register(labels, amplitudes.size());
    bool all_tiny = std::all_of(amplitudes.begin(), amplitudes.end(), [](Amplitude a) { return std::abs(a) < 1e-12; });
    if (all_tiny) {
        throw ZeroNorm("all amplitudes below 1e-12");
    }
    double norm = std::sqrt(StateVector::squared_norm(amplitudes));
    if (std::abs(norm - 1) > 1e-8) {
        throw NotNormalized("state norm " + std::to_string(norm));
    }
    return StateVector::normalized(std::move(labels), std::move(amplitudes));
}

inline StateVector basis_state(std::vector<SubsystemLabel> labels, std::size_t basis_index) {
    std::vector<Amplitude> amplitudes(std::size_t{1} << labels.size());
    amplitudes.at(basis_index) = 1;
    return make_state(std::move(labels), std::move(amplitudes));
}

/// (|00> + |11>)/sqrt(2) on the given pair.
inline StateVector bell_state(SubsystemLabel first, SubsystemLabel second) {
    const double h = 1 / std::sqrt(2.0);
    return make_state({first, second}, {h, 0, 0, h});
}

inline StateVector tensor(const StateVector &left, const StateVector &right) {
    std::vector<SubsystemLabel> labels = left.labels();
    for (auto label : right.labels()) {
        if (left.contains(label)) {
            throw LabelCollision("label " + to_string(label) + " present on both sides");
        }
        labels.push_back(label);
    }
    std::vector<Amplitude> amplitudes;
    amplitudes.reserve(left.dimension() * right.dimension());
    for (auto l : left.amplitudes()) {
        for (auto r : right.amplitudes()) {
            amplitudes.push_back(l * r);
        }
    }
    return StateVector::normalized(std::move(labels), std::move(amplitudes));
}

/// Applies X to every qubit: |k> -> |~k>.
inline StateVector flip_all(const StateVector &state) {
    std::vector<Amplitude> amplitudes(state.dimension());
    std::size_t all = state.dimension() - 1;
    for (std::size_t k = 0; k < state.dimension(); k++) {
        amplitudes[k ^ all] = state.amplitude(k);
    }
    return StateVector::normalized(state.labels(), std::move(amplitudes));
}

struct BranchProbabilities {
    double p0;
    double p1;
};

inline BranchProbabilities branch_probabilities(const StateVector &state, SubsystemLabel label) {
    std::size_t m = state.mask(label);
    double p1 = 0;
    double p0 = 0;
    for (std::size_t k = 0; k < state.dimension(); k++) {
        ((k & m) ? p1 : p0) += std::norm(state.amplitude(k));
    }
    // Both sums come from a normalized vector; rescale away rounding.
    double total = p0 + p1;
    return {p0 / total, p1 / total};
}

/// One branch of a computational-basis measurement.
struct Branch {
    double probability;
    /// Empty when the branch has probability below 1e-12.
    std::optional<StateVector> posterior;
};

inline Branch collapse(const StateVector &state, SubsystemLabel label, Bit outcome) {
    std::size_t m = state.mask(label);
    std::vector<Amplitude> amplitudes(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t k = 0; k < amplitudes.size(); k++) {
        if (static_cast<Bit>((k & m) != 0) != outcome) {
            amplitudes[k] = 0;
        }
    }
    double p = StateVector::squared_norm(amplitudes);
    if (p < 1e-12) {
        return {p, std::nullopt};
    }
    return {p, StateVector::normalized(state.labels(), std::move(amplitudes))};
}

struct MeasurementRecord {
    SubsystemLabel label;
    Bit outcome;
    double probability;
    StateVector posterior;
};

inline MeasurementRecord measure(const StateVector &state, SubsystemLabel label, Rng &rng) {
    auto [p0, p1] = branch_probabilities(state, label);
    Bit outcome = rng.uniform() < p0 ? 0 : 1;
    auto branch = collapse(state, label, outcome);
    // A sampled branch always carries weight, so the posterior exists.
    return {label, outcome, outcome == 0 ? p0 : p1, std::move(*branch.posterior)};
}

struct BellProjection {
    double pass_probability;
    /// Empty when pass_probability < 1e-12: the projected state is undefined.
    std::optional<StateVector> posterior;
};

/// Projects `pair` onto (|00>+|11>)/sqrt(2), identity on every other qubit.
inline BellProjection project_bell(const StateVector &state, std::pair<SubsystemLabel, SubsystemLabel> pair) {
    std::size_t m1 = state.mask(pair.first);
    std::size_t m2 = state.mask(pair.second);
    if (m1 == m2) {
        throw InvalidOperation("Bell projection needs two distinct qubits");
    }
    std::vector<Amplitude> amplitudes(state.dimension());
    for (std::size_t k = 0; k < state.dimension(); k++) {
        if (k & (m1 | m2)) {
            continue;
        }
        // Overlap <psi|pair> for this assignment of the remaining qubits.
        Amplitude overlap = (state.amplitude(k) + state.amplitude(k | m1 | m2)) / std::sqrt(2.0);
        amplitudes[k] = overlap / std::sqrt(2.0);
        amplitudes[k | m1 | m2] = overlap / std::sqrt(2.0);
    }
    double p = StateVector::squared_norm(amplitudes);
    if (p < 1e-12) {
        return {p, std::nullopt};
    }
    return {p, StateVector::normalized(state.labels(), std::move(amplitudes))};
}

/// Applies a unitary to the listed qubits. Row/column index bits of `unitary`
/// follow the order of `targets`, first target most significant.
inline StateVector apply_local(const StateVector &state, std::span<const SubsystemLabel> targets,
                               const Eigen::MatrixXcd &unitary) {
    const std::size_t k = targets.size();
    const std::size_t d = std::size_t{1} << k;
    if (static_cast<std::size_t>(unitary.rows()) != d || static_cast<std::size_t>(unitary.cols()) != d) {
        throw DimensionMismatch("operator of size " + std::to_string(unitary.rows()) + " on " + std::to_string(k) +
                                " qubits");
    }
    std::vector<std::size_t> masks;
    std::size_t all = 0;
    for (auto t : targets) {
        std::size_t m = state.mask(t);
        if (all & m) {
            throw LabelCollision("operator target " + to_string(t) + " repeated");
        }
        masks.push_back(m);
        all |= m;
    }
    auto spread = [&](std::size_t local) {
        std::size_t offset = 0;
        for (std::size_t i = 0; i < k; i++) {
            if (local & (std::size_t{1} << (k - 1 - i))) {
                offset |= masks[i];
            }
        }
        return offset;
    };
    std::vector<std::size_t> offsets(d);
    for (std::size_t local = 0; local < d; local++) {
        offsets[local] = spread(local);
    }
    std::vector<Amplitude> out(state.dimension());
    Eigen::VectorXcd in_block(d);
    for (std::size_t base = 0; base < state.dimension(); base++) {
        if (base & all) {
            continue;
        }
        for (std::size_t local = 0; local < d; local++) {
            in_block[local] = state.amplitude(base | offsets[local]);
        }
        Eigen::VectorXcd out_block = unitary * in_block;
        for (std::size_t local = 0; local < d; local++) {
            out[base | offsets[local]] = out_block[local];
        }
    }
    return StateVector::normalized(state.labels(), std::move(out));
}

/// Schmidt coefficients across the cut (`side`, rest of register), descending.
/// The list has min(dim side, dim rest) entries.
inline std::vector<double> schmidt_coefficients(const StateVector &state, std::span<const SubsystemLabel> side) {
    if (side.empty() || side.size() >= state.num_qubits()) {
        throw InvalidCut("cut must be a nonempty proper subset of the register");
    }
    std::size_t side_mask = 0;
    std::vector<std::size_t> side_masks;
    for (auto label : side) {
        std::size_t m = state.mask(label);
        if (side_mask & m) {
            throw InvalidCut("label " + to_string(label) + " repeated in cut");
        }
        side_mask |= m;
        side_masks.push_back(m);
    }
    std::vector<std::size_t> rest_masks;
    for (auto label : state.labels()) {
        if (!(side_mask & state.mask(label))) {
            rest_masks.push_back(state.mask(label));
        }
    }
    auto compress = [](std::size_t k, const std::vector<std::size_t> &masks) {
        std::size_t index = 0;
        for (auto m : masks) {
            index = (index << 1) | ((k & m) ? 1 : 0);
        }
        return static_cast<Eigen::Index>(index);
    };
    Eigen::MatrixXcd coefficients(Eigen::Index{1} << side_masks.size(), Eigen::Index{1} << rest_masks.size());
    for (std::size_t k = 0; k < state.dimension(); k++) {
        coefficients(compress(k, side_masks), compress(k, rest_masks)) = state.amplitude(k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coefficients);
    const auto &values = svd.singularValues();
    std::vector<double> result(values.data(), values.data() + values.size());
    std::sort(result.begin(), result.end(), std::greater<>());
    return result;
}

inline Eigen::MatrixXcd identity_operator(std::size_t qubits) {
    auto d = Eigen::Index{1} << qubits;
    return Eigen::MatrixXcd::Identity(d, d);
}

/// Haar-distributed unitary on `qubits` qubits (QR of a complex Ginibre matrix
/// with the phases of R's diagonal divided out).
inline Eigen::MatrixXcd haar_unitary(std::size_t qubits, Rng &rng) {
    auto d = Eigen::Index{1} << qubits;
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = Amplitude(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < d; c++) {
        Amplitude diag = r(c, c);
        double magnitude = std::abs(diag);
        if (magnitude > 0) {
            q.col(c) *= diag / magnitude;
        }
    }
    return q;
}

}  // namespace cointoss
