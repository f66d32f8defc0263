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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include "cointoss/registry.hpp"
#include "cointoss/report.hpp"

namespace cointoss {

enum class Command { Honest, CheatAlice, CheatBob, Bias, Optimize, Scan, MonteCarlo };

inline std::string to_string(Command c) {
    switch (c) {
        case Command::Honest: return "honest";
        case Command::CheatAlice: return "cheat-alice";
        case Command::CheatBob: return "cheat-bob";
        case Command::Bias: return "bias";
        case Command::Optimize: return "optimize";
        case Command::Scan: return "scan";
        case Command::MonteCarlo: return "montecarlo";
    }
    return "?";
}

struct RunConfig {
    Command command = Command::Bias;
    std::string strategy_id = "honest";
    Bit target = 0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    int grid_resolution = 100;
    double refinement_tolerance = 1e-10;
    int steps = 50;
    OutputFormat format = OutputFormat::Structured;
    std::optional<std::string> output_path;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;
inline constexpr int kUnknownStrategy = 3;
inline constexpr int kInternal = 4;
}  // namespace exit_code

inline constexpr std::uint64_t kMinMonteCarloTrials = 1000;

struct DispatchResult {
    int exit_code = exit_code::kOk;
    /// Rendered report; empty on failure.
    std::string report;
    std::string diagnostic;
};

namespace detail {

inline void check_config(const RunConfig &config) {
    if (config.target > 1) {
        throw ParseError("target must be 0 or 1");
    }
    if (config.trials < 1) {
        throw ParseError("trials must be at least 1");
    }
    if (config.command == Command::MonteCarlo && config.trials < kMinMonteCarloTrials) {
        throw ParseError("montecarlo needs at least " + std::to_string(kMinMonteCarloTrials) + " trials");
    }
    if (config.command == Command::Optimize && config.grid_resolution < 20) {
        throw ParseError("grid resolution must be at least 20");
    }
    if (config.command == Command::Optimize && !(config.refinement_tolerance > 0)) {
        throw ParseError("refinement tolerance must be positive");
    }
    if (config.command == Command::Scan && config.steps < 2) {
        throw ParseError("scan needs at least 2 steps");
    }
}

inline std::optional<RunKind> party_of(Command c) {
    switch (c) {
        case Command::Honest: return RunKind::Honest;
        case Command::CheatAlice: return RunKind::CheatAlice;
        case Command::CheatBob: return RunKind::CheatBob;
        default: return std::nullopt;
    }
}

inline void check_bias(const BiasReport &bias) {
    double total = bias.p_win_exact + bias.p_lose_exact + bias.p_abort_exact;
    if (std::abs(total - 1) > 1e-9 || bias.p_win_exact < -1e-12 || bias.p_win_exact > bias.analytic_bound + 1e-9) {
        throw InvariantViolation("branch probabilities inconsistent for " + bias.strategy_id);
    }
}

inline void check_monte_carlo(const MonteCarloReport &mc) {
    if (mc.heads + mc.tails + mc.aborts != mc.trials) {
        throw InvariantViolation("monte carlo counts do not sum to the trial count");
    }
}

inline BiasReport exact_for(const Subject &subject, Bit target) {
    if (auto alice = std::get_if<AliceCheatStrategy>(&subject)) {
        return exact_win_probability(*alice, target);
    }
    if (auto bob = std::get_if<BobCheatStrategy>(&subject)) {
        return exact_win_probability(*bob, target);
    }
    auto d = exact_honest_distribution();
    BiasReport report{Party::Alice, target, "honest"};
    report.p_win_exact = target == 0 ? d.p_heads : d.p_tails;
    report.p_lose_exact = target == 0 ? d.p_tails : d.p_heads;
    report.p_abort_exact = d.p_abort;
    report.epsilon = report.p_win_exact - 0.5;
    return report;
}

inline void add_exact(Report &report, const Subject &subject, Bit target) {
    if (std::holds_alternative<std::monostate>(subject)) {
        add_honest(report, exact_honest_distribution());
        add_reference_constants(report);
        return;
    }
    auto bias = exact_for(subject, target);
    check_bias(bias);
    add_bias(report, bias);
}

inline void add_protocol_runs(Report &report, const RunConfig &config, const Subject &subject) {
    if (config.trials == 1) {
        Rng rng(config.seed);
        auto run = run_once(subject, config.target, rng);
        report.add("outcome", to_string(run.outcome));
        report.add("alice_coin", run.alice_coin ? std::to_string(*run.alice_coin) : "-");
        report.add("bob_coin", run.bob_coin ? std::to_string(*run.bob_coin) : "-");
        report.add("win", run.outcome == outcome_for_bit(config.target) ? "1" : "0");
        add_exact(report, subject, config.target);
        add_transcript_table(report, run.transcript);
        return;
    }
    auto mc = monte_carlo(subject, config.target, config.trials, config.seed);
    check_monte_carlo(mc);
    add_monte_carlo(report, mc);
    add_exact(report, subject, config.target);
}

}  // namespace detail

/// Builds the report for `config`. Throws on invalid input.
inline Report build_report(const RunConfig &config) {
    detail::check_config(config);

    Report report;
    report.add_integer("schema_version", kReportSchemaVersion);
    report.add("command", to_string(config.command));
    report.add("strategy", config.strategy_id);
    report.add_integer("target", config.target);
    report.add_integer("trials", config.trials);
    report.add_integer("seed", config.seed);
    report.add_integer("grid_resolution", static_cast<std::uint64_t>(config.grid_resolution));
    report.add_integer("steps", static_cast<std::uint64_t>(config.steps));
    report.add("format", to_string(config.format));

    switch (config.command) {
        case Command::Honest: {
            detail::add_protocol_runs(report, config, std::monostate{});
            break;
        }
        case Command::CheatAlice:
        case Command::CheatBob: {
            auto resolved = resolve_strategy(config.strategy_id, config.target, detail::party_of(config.command));
            detail::add_protocol_runs(report, config, resolved.subject);
            break;
        }
        case Command::Bias: {
            auto resolved = resolve_strategy(config.strategy_id, config.target);
            detail::add_exact(report, resolved.subject, config.target);
            break;
        }
        case Command::Optimize: {
            auto result = optimize_alice(config.grid_resolution, config.refinement_tolerance);
            report.add_probability("value", result.value);
            report.add_probability("grid_value", result.grid_value);
            report.add_probability("a00", result.argmax.a00);
            report.add_probability("a01", result.argmax.a01);
            report.add_probability("a10", result.argmax.a10);
            report.add_probability("a11", result.argmax.a11);
            report.add_probability("refinement_tolerance", result.refinement_tolerance);
            add_reference_constants(report);
            report.table_name = "optimum";
            report.columns = {"grid_resolution", "value", "grid_value", "a00", "a01", "a10", "a11"};
            report.rows.push_back({std::to_string(result.grid_resolution), format_probability(result.value),
                                   format_probability(result.grid_value), format_probability(result.argmax.a00),
                                   format_probability(result.argmax.a01), format_probability(result.argmax.a10),
                                   format_probability(result.argmax.a11)});
            break;
        }
        case Command::Scan: {
            add_reference_constants(report);
            add_scan_table(report, sensitivity_scan(config.steps));
            break;
        }
        case Command::MonteCarlo: {
            auto resolved = resolve_strategy(config.strategy_id, config.target);
            auto mc = monte_carlo(resolved.subject, config.target, config.trials, config.seed);
            detail::check_monte_carlo(mc);
            add_monte_carlo(report, mc);
            detail::add_exact(report, resolved.subject, config.target);
            auto exact = detail::exact_for(resolved.subject, config.target).p_win_exact;
            double se = mc.standard_error(mc.wins());
            double deviation = mc.frequency(mc.wins()) - exact;
            report.add_probability("mc_win_z", se > 0 ? deviation / se : 0.0);
            break;
        }
    }
    return report;
}

/// Runs `config`, writes the report to config.output_path when set, and maps
/// failures to exit codes: 2 invalid input, 3 unknown strategy, 4 internal
/// invariant violation or any other failure.
inline DispatchResult dispatch(const RunConfig &config) {
    DispatchResult result;
    try {
        result.report = build_report(config).render(config.format);
        if (config.output_path) {
            std::ofstream out(*config.output_path, std::ios::binary);
            out << result.report;
            if (!out) {
                throw InvariantViolation("cannot write " + *config.output_path);
            }
        }
    } catch (const ParseError &e) {
        return {exit_code::kParse, "", e.what()};
    } catch (const UnknownStrategy &e) {
        return {exit_code::kUnknownStrategy, "", e.what()};
    } catch (const std::exception &e) {
        return {exit_code::kInternal, "", e.what()};
    }
    return result;
}

}  // namespace cointoss
