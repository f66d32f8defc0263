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

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cointoss/analysis.hpp"

namespace cointoss {

struct ResolvedStrategy {
    Subject subject;
    std::string id;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char separator) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto end = text.find(separator, start);
        parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return parts;
        }
        start = end + 1;
    }
}

inline double parse_double(std::string_view text) {
    std::string owned(text);
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(owned, &used);
    } catch (const std::logic_error &) {
        throw ParseError("not a number: '" + owned + "'");
    }
    if (used != owned.size() || !std::isfinite(value)) {
        throw ParseError("not a number: '" + owned + "'");
    }
    return value;
}

inline std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ParseError("not an unsigned integer: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace detail

/// Resolves a strategy identifier:
///
///   honest                       both parties honest (or the honest behavior
///                                of the party named by `party`)
///   optimal-alice                optimal_alice(target)
///   coefficients:a00,a01,a10,a11 aligned coefficient strategy toward target;
///                                append ":orthogonal" for the ancilla variant
///   measure-and-pick             measure_and_pick_bob(target)
///   random-bob:<seed>            random_bob_strategy(Rng(seed))
///
/// `party` restricts the result to strategies of one cheating party. A
/// malformed parameter list is a ParseError; anything else unrecognized, or a
/// strategy of the wrong party, is an UnknownStrategy.
inline ResolvedStrategy resolve_strategy(std::string_view id, Bit target, std::optional<RunKind> party = std::nullopt) {
    auto require = [&](RunKind kind) {
        if (party && *party != kind && *party != RunKind::Honest) {
            throw UnknownStrategy("'" + std::string(id) + "' is not a " + to_string(*party) + " strategy");
        }
    };
    if (id == "honest") {
        if (party == RunKind::CheatAlice) {
            return {honest_alice(), "honest"};
        }
        if (party == RunKind::CheatBob) {
            return {honest_bob(), "honest"};
        }
        return {std::monostate{}, "honest"};
    }
    if (id == "optimal-alice") {
        require(RunKind::CheatAlice);
        return {optimal_alice(target), std::string(id)};
    }
    if (id == "measure-and-pick") {
        require(RunKind::CheatBob);
        return {measure_and_pick_bob(target), std::string(id)};
    }
    auto parts = detail::split(id, ':');
    if (parts.size() >= 2 && parts[0] == "coefficients") {
        require(RunKind::CheatAlice);
        PhiMode mode = PhiMode::Aligned;
        if (parts.size() == 3 && parts[2] == "orthogonal") {
            mode = PhiMode::Orthogonal;
        } else if (parts.size() != 2) {
            throw ParseError("expected coefficients:a00,a01,a10,a11[:orthogonal]");
        }
        auto values = detail::split(parts[1], ',');
        if (values.size() != 4) {
            throw ParseError("coefficients need exactly four values");
        }
        AliceCoefficients c{detail::parse_double(values[0]), detail::parse_double(values[1]),
                            detail::parse_double(values[2]), detail::parse_double(values[3])};
        try {
            c.require_normalized();
        } catch (const NotNormalized &e) {
            throw ParseError(e.what());
        }
        auto strategy = coefficient_strategy(c, mode, target);
        strategy.id = std::string(id);
        return {std::move(strategy), std::string(id)};
    }
    if (parts.size() == 2 && parts[0] == "random-bob") {
        require(RunKind::CheatBob);
        Rng rng(detail::parse_u64(parts[1]));
        auto strategy = random_bob_strategy(rng);
        return {std::move(strategy), std::string(id)};
    }
    throw UnknownStrategy("unknown strategy '" + std::string(id) + "'");
}

}  // namespace cointoss
