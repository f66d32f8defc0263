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
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "cointoss/protocol.hpp"
#include "cointoss/strategies.hpp"

namespace cointoss {

/// Largest win probability either cheater can reach: 1/2 + 1/4.
inline constexpr double kCheatingBound = 0.75;
/// Lower bound on the bias of any strong coin tossing protocol, 1/sqrt(2) - 1/2.
/// Display only.
inline const double kKitaevReference = 1 / std::numbers::sqrt2 - 0.5;

struct BiasReport {
    Party party = Party::Alice;
    Bit target = 0;
    std::string strategy_id;
    double p_win_exact = 0;
    double p_lose_exact = 0;
    double p_abort_exact = 0;
    double analytic_bound = kCheatingBound;
    /// p_win_exact - 1/2.
    double epsilon = 0;
    double kitaev_reference = kKitaevReference;
};

/// Upper bound on the probability that Alice passes verification once Bob has
/// seen 0 on his coin qubit: (a00 + a01)^2 / (2 (a00^2 + a01^2)).
inline double alice_fidelity_bound(double a00, double a01) {
    if (std::abs(a00) < 1e-12 && std::abs(a01) < 1e-12) {
        throw DegenerateBranch("Bob's coin outcome 0 has zero weight");
    }
    return (a00 + a01) * (a00 + a01) / (2 * (a00 * a00 + a01 * a01));
}

/// Upper bound on Alice's probability of convincing Bob of outcome 0:
/// (2 a00^2 + 2 a00 a01 + 2 a00 a10 + a01^2 + a10^2) / 4.
inline double alice_objective(const AliceCoefficients &c) {
    c.require_normalized();
    return (2 * c.a00 * c.a00 + 2 * c.a00 * c.a01 + 2 * c.a00 * c.a10 + c.a01 * c.a01 + c.a10 * c.a10) / 4;
}

namespace detail {

inline double objective_unchecked(const AliceCoefficients &c) {
    return (2 * c.a00 * c.a00 + 2 * c.a00 * c.a01 + 2 * c.a00 * c.a10 + c.a01 * c.a01 + c.a10 * c.a10) / 4;
}

/// Point of the nonnegative octant of the unit 3-sphere.
inline AliceCoefficients from_angles(const std::array<double, 3> &t) {
    double s0 = std::sin(t[0]);
    double s1 = std::sin(t[1]);
    return {std::cos(t[0]), s0 * std::cos(t[1]), s0 * s1 * std::cos(t[2]), s0 * s1 * std::sin(t[2])};
}

inline BiasReport finish(BiasReport report) {
    report.epsilon = report.p_win_exact - 0.5;
    return report;
}

}  // namespace detail

/// Enumerates Bob's choice, his coin outcome and the verification test with
/// exact probabilities.
inline BiasReport exact_win_probability(const AliceCheatStrategy &strategy, Bit target) {
    validate(strategy);
    BiasReport report{Party::Alice, target, strategy.id};
    for (Choice choice : {Choice::First, Choice::Second}) {
        const auto &response = strategy.response(choice);
        for (Bit b = 0; b < 2; b++) {
            auto branch = collapse(strategy.initial_state, bob_half(choice), b);
            if (!branch.posterior) {
                continue;
            }
            auto state = response.operation.apply(*branch.posterior);
            double pass = project_bell(state, {response.send, bob_half(other(choice))}).pass_probability;
            double weight = 0.5 * branch.probability;
            (b == target ? report.p_win_exact : report.p_lose_exact) += weight * pass;
            report.p_abort_exact += weight * (1 - pass);
        }
    }
    return detail::finish(report);
}

/// Enumerates Bob's measurement outcomes and Alice's coin outcome. Bob is never
/// caught, so p_abort_exact is zero.
inline BiasReport exact_win_probability(const BobCheatStrategy &strategy, Bit target) {
    validate(strategy);
    BiasReport report{Party::Bob, target, strategy.id};
    std::vector<Bit> bits;
    std::function<void(const StateVector &, double)> walk = [&](const StateVector &state, double weight) {
        if (bits.size() == strategy.measured.size()) {
            auto [p0, p1] = branch_probabilities(state, alice_half(announce(strategy, bits)));
            report.p_win_exact += weight * (target == 0 ? p0 : p1);
            report.p_lose_exact += weight * (target == 0 ? p1 : p0);
            return;
        }
        for (Bit b = 0; b < 2; b++) {
            auto branch = collapse(state, strategy.measured[bits.size()], b);
            if (!branch.posterior) {
                continue;
            }
            bits.push_back(b);
            walk(*branch.posterior, weight * branch.probability);
            bits.pop_back();
        }
    };
    walk(strategy.operation.apply(honest_state_with_bob_ancilla(strategy.ancilla_qubits)), 1);
    return detail::finish(report);
}

struct HonestDistribution {
    double p_heads = 0;
    double p_tails = 0;
    double p_abort = 0;
    /// Probability that Alice's and Bob's coin bits differ.
    double p_disagree = 0;
};

inline HonestDistribution exact_honest_distribution() {
    HonestDistribution d;
    auto state = tensor(bell_state(kA1, kB1), bell_state(kA2, kB2));
    for (Choice choice : {Choice::First, Choice::Second}) {
        for (Bit a = 0; a < 2; a++) {
            auto alice = collapse(state, alice_half(choice), a);
            if (!alice.posterior) {
                continue;
            }
            for (Bit b = 0; b < 2; b++) {
                auto bob = collapse(*alice.posterior, bob_half(choice), b);
                if (!bob.posterior) {
                    continue;
                }
                double weight = 0.5 * alice.probability * bob.probability;
                double pass =
                    project_bell(*bob.posterior, {alice_half(other(choice)), bob_half(other(choice))}).pass_probability;
                (b == 0 ? d.p_heads : d.p_tails) += weight * pass;
                d.p_abort += weight * (1 - pass);
                if (a != b) {
                    d.p_disagree += weight;
                }
            }
        }
    }
    return d;
}

struct OptimizationResult {
    AliceCoefficients argmax;
    double value = 0;
    /// Best value on the grid, before refinement.
    double grid_value = 0;
    int grid_resolution = 0;
    double refinement_tolerance = 0;
};

/// Maximizes alice_objective over the nonnegative unit 3-sphere.
///
/// The octant is parameterized by three angles in [0, pi/2]:
///   a00 = cos t0, a01 = sin t0 cos t1, a10 = sin t0 sin t1 cos t2,
///   a11 = sin t0 sin t1 sin t2.
/// A grid of `grid_resolution` points per angle (endpoints included) is
/// searched exhaustively, then the best point is refined by compass search on
/// the angles: each sweep tries +-step on every angle, and the step halves
/// whenever a sweep improves the value by less than `refinement_tolerance`.
/// The argmax is reported with a01 >= a10.
inline OptimizationResult optimize_alice(int grid_resolution, double refinement_tolerance) {
    if (grid_resolution < 20) {
        throw InvalidOperation("grid resolution must be at least 20");
    }
    if (!(refinement_tolerance > 0)) {
        throw InvalidOperation("refinement tolerance must be positive");
    }
    constexpr double kQuarter = std::numbers::pi / 2;
    const double spacing = kQuarter / (grid_resolution - 1);

    std::array<double, 3> best_angles{};
    double best = -1;
    for (int i = 0; i < grid_resolution; i++) {
        for (int j = 0; j < grid_resolution; j++) {
            for (int k = 0; k < grid_resolution; k++) {
                std::array<double, 3> t{i * spacing, j * spacing, k * spacing};
                double value = detail::objective_unchecked(detail::from_angles(t));
                if (value > best) {
                    best = value;
                    best_angles = t;
                }
            }
        }
    }
    const double grid_best = best;

    double step = spacing;
    while (step > refinement_tolerance * 1e-3) {
        double sweep_start = best;
        for (std::size_t axis = 0; axis < 3; axis++) {
            for (double direction : {1.0, -1.0}) {
                auto trial = best_angles;
                trial[axis] = std::clamp(trial[axis] + direction * step, 0.0, kQuarter);
                double value = detail::objective_unchecked(detail::from_angles(trial));
                if (value > best) {
                    best = value;
                    best_angles = trial;
                }
            }
        }
        if (best - sweep_start < refinement_tolerance) {
            step /= 2;
        }
    }

    auto argmax = detail::from_angles(best_angles);
    if (argmax.a10 > argmax.a01) {
        std::swap(argmax.a01, argmax.a10);
    }
    return {argmax, detail::objective_unchecked(argmax), grid_best, grid_resolution, refinement_tolerance};
}

struct PhaseSweepResult {
    double maximum = 0;
    double zero_phase_value = 0;
    int samples = 0;
};

/// Exact win probability of aligned coefficient strategies whose a01, a10 and
/// a11 terms carry uniformly random phases. The zero-phase point is always
/// evaluated first.
inline PhaseSweepResult phase_sweep(const AliceCoefficients &c, int samples, Rng &rng, Bit target = 0) {
    if (samples < 100) {
        throw InvalidOperation("phase sweep needs at least 100 samples");
    }
    PhaseSweepResult result{0, 0, samples};
    result.zero_phase_value = exact_win_probability(coefficient_strategy(c, PhiMode::Aligned, target), target).p_win_exact;
    result.maximum = result.zero_phase_value;
    for (int s = 0; s < samples; s++) {
        std::array<double, 4> phases{0, 0, 0, 0};
        for (std::size_t k = 1; k < 4; k++) {
            phases[k] = 2 * std::numbers::pi * rng.uniform();
        }
        double value =
            exact_win_probability(coefficient_strategy(c, PhiMode::Aligned, target, phases), target).p_win_exact;
        result.maximum = std::max(result.maximum, value);
    }
    return result;
}

struct SensitivityPoint {
    double t = 0;
    AliceCoefficients coefficients;
    std::string strategy_id;
    double p_win = 0;
    double p_lose = 0;
    /// Probability that Bob's verification aborts the run.
    double p_detect = 0;
};

/// Walks the renormalized straight line from `from` to `to` in `steps` evenly
/// spaced points (both endpoints included) and evaluates the aligned
/// coefficient strategy at each one.
inline std::vector<SensitivityPoint> sensitivity_scan(int steps, const AliceCoefficients &from = AliceCoefficients::honest(),
                                                      const AliceCoefficients &to = AliceCoefficients::optimal()) {
    if (steps < 2) {
        throw InvalidOperation("a scan needs at least 2 steps");
    }
    std::vector<SensitivityPoint> points;
    auto a = from.as_array();
    auto b = to.as_array();
    for (int i = 0; i < steps; i++) {
        double t = static_cast<double>(i) / (steps - 1);
        std::array<double, 4> mixed;
        double norm = 0;
        for (std::size_t k = 0; k < 4; k++) {
            mixed[k] = (1 - t) * a[k] + t * b[k];
            norm += mixed[k] * mixed[k];
        }
        norm = std::sqrt(norm);
        AliceCoefficients c{mixed[0] / norm, mixed[1] / norm, mixed[2] / norm, mixed[3] / norm};
        auto strategy = coefficient_strategy(c, PhiMode::Aligned);
        auto report = exact_win_probability(strategy, 0);
        points.push_back({t, c, strategy.id, report.p_win_exact, report.p_lose_exact, report.p_abort_exact});
    }
    return points;
}

/// Honest runs, or one cheating party's strategy.
using Subject = std::variant<std::monostate, AliceCheatStrategy, BobCheatStrategy>;

inline RunKind run_kind(const Subject &subject) {
    return static_cast<RunKind>(subject.index());
}

inline std::string subject_id(const Subject &subject) {
    if (auto alice = std::get_if<AliceCheatStrategy>(&subject)) {
        return alice->id;
    }
    if (auto bob = std::get_if<BobCheatStrategy>(&subject)) {
        return bob->id;
    }
    return "honest";
}

inline RunResult run_once(const Subject &subject, Bit target, Rng &rng) {
    if (auto alice = std::get_if<AliceCheatStrategy>(&subject)) {
        return run_cheating_alice(*alice, target, rng);
    }
    if (auto bob = std::get_if<BobCheatStrategy>(&subject)) {
        return run_cheating_bob(*bob, target, rng);
    }
    return run_honest(rng);
}

struct MonteCarloReport {
    RunKind run = RunKind::Honest;
    std::string strategy_id;
    Bit target = 0;
    std::uint64_t trials = 0;
    std::uint64_t root_seed = 0;
    std::uint64_t heads = 0;
    std::uint64_t tails = 0;
    std::uint64_t aborts = 0;

    std::uint64_t wins() const {
        return target == 0 ? heads : tails;
    }
    std::uint64_t losses() const {
        return target == 0 ? tails : heads;
    }
    double frequency(std::uint64_t count) const {
        return static_cast<double>(count) / static_cast<double>(trials);
    }
    /// Binomial standard error of frequency(count).
    double standard_error(std::uint64_t count) const {
        double p = frequency(count);
        return std::sqrt(p * (1 - p) / static_cast<double>(trials));
    }
};

/// Runs `trials` independent protocol executions. Trial i uses
/// Rng(root_seed).split(i), so the counts do not depend on `workers`.
inline MonteCarloReport monte_carlo(const Subject &subject, Bit target, std::uint64_t trials, std::uint64_t root_seed,
                                    unsigned workers = 0) {
    if (trials < 1) {
        throw InvalidOperation("monte carlo needs at least one trial");
    }
    std::visit(
        [](const auto &strategy) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(strategy)>, std::monostate>) {
                validate(strategy);
            }
        },
        subject);
    if (workers == 0) {
        workers = std::clamp(std::thread::hardware_concurrency(), 1u, 16u);
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    const Rng root(root_seed);
    std::vector<std::array<std::uint64_t, 3>> counts(workers, {0, 0, 0});
    auto work = [&](unsigned w) {
        std::uint64_t begin = trials * w / workers;
        std::uint64_t end = trials * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; i++) {
            Rng rng = root.split(i);
            counts[w][static_cast<std::size_t>(run_once(subject, target, rng).outcome)]++;
        }
    };
    std::vector<std::jthread> threads;
    for (unsigned w = 1; w < workers; w++) {
        threads.emplace_back(work, w);
    }
    work(0);
    threads.clear();

    MonteCarloReport report{run_kind(subject), subject_id(subject), target, trials, root_seed};
    for (const auto &c : counts) {
        report.heads += c[0];
        report.tails += c[1];
        report.aborts += c[2];
    }
    return report;
}

}  // namespace cointoss
