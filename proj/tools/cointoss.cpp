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

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cointoss/cli.hpp"

using namespace cointoss;

int main(int argc, char **argv) {
    CLI::App app{"Strong coin tossing with two shared Bell pairs: protocol runs, exact cheating probabilities, "
                 "optimization and Monte Carlo checks."};
    app.footer(
        "Strategies: honest, optimal-alice, coefficients:<a00,a01,a10,a11>[:orthogonal], measure-and-pick, "
        "random-bob:<seed>\n"
        "Environment: COINTOSS_SEED sets the default seed (an explicit --seed wins).\n"
        "Exit codes: 0 ok, 2 invalid arguments, 3 unknown strategy, 4 internal invariant violation.");
    app.require_subcommand(1);

    RunConfig config;
    int target = 0;
    std::string format = "structured";
    std::string out_path;

    const std::map<std::string, Command> commands{
        {"honest", Command::Honest},
        {"cheat-alice", Command::CheatAlice},
        {"cheat-bob", Command::CheatBob},
        {"bias", Command::Bias},
        {"optimize", Command::Optimize},
        {"scan", Command::Scan},
        {"montecarlo", Command::MonteCarlo},
    };
    const std::map<std::string, std::string> descriptions{
        {"honest", "Run the protocol with both parties honest (one transcript when --trials 1)"},
        {"cheat-alice", "Run with a cheating Alice and an honest Bob"},
        {"cheat-bob", "Run with a cheating Bob and an honest Alice"},
        {"bias", "Exact win, lose and abort probabilities of a strategy"},
        {"optimize", "Maximize Alice's success bound over her coefficients"},
        {"scan", "Win and detection probabilities along the honest-to-optimal path"},
        {"montecarlo", "Sampled frequencies checked against the exact values"},
    };

    std::map<CLI::App *, Command> by_app;
    for (const auto &[name, command] : commands) {
        auto *sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--strategy", config.strategy_id, "Strategy identifier")->capture_default_str();
        sub->add_option("--target", target, "Outcome the cheater wants")
            ->check(CLI::IsMember({0, 1}))
            ->capture_default_str();
        sub->add_option("--trials", config.trials, "Number of protocol runs")->capture_default_str();
        sub->add_option("--seed", config.seed, "Root seed")->capture_default_str();
        sub->add_option("--grid-resolution", config.grid_resolution, "Grid points per angle")->capture_default_str();
        sub->add_option("--tolerance", config.refinement_tolerance, "Refinement stopping threshold")
            ->capture_default_str();
        sub->add_option("--steps", config.steps, "Points along the scan path")->capture_default_str();
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"structured", "tabular"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "Write the report here instead of standard output");
        by_app[sub] = command;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_code::kParse;
    }

    bool seed_given = false;
    for (const auto &[sub, command] : by_app) {
        if (sub->parsed()) {
            config.command = command;
            seed_given = sub->count("--seed") > 0;
        }
    }
    if (!seed_given) {
        if (const char *env = std::getenv("COINTOSS_SEED")) {
            try {
                config.seed = detail::parse_u64(env);
            } catch (const ParseError &e) {
                std::cerr << "COINTOSS_SEED: " << e.what() << "\n";
                return exit_code::kParse;
            }
        }
    }
    config.target = static_cast<Bit>(target);
    config.format = format == "tabular" ? OutputFormat::Tabular : OutputFormat::Structured;
    if (!out_path.empty()) {
        config.output_path = out_path;
    }

    auto result = dispatch(config);
    if (result.exit_code != exit_code::kOk) {
        std::cerr << "error: " << result.diagnostic << "\n";
        return result.exit_code;
    }
    if (!config.output_path) {
        std::cout << result.report;
    }
    return exit_code::kOk;
}
