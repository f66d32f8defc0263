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

#include <cstdint>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cointoss/strategies.hpp"

namespace cointoss {

enum class Party : std::uint8_t { Alice, Bob };
enum class Outcome : std::uint8_t { Heads, Tails, Abort };

constexpr Outcome outcome_for_bit(Bit b) {
    return b == 0 ? Outcome::Heads : Outcome::Tails;
}

enum class EventKind : std::uint8_t {
    StateTransfer,
    ChoiceAnnouncement,
    Measurement,
    /// A measurement a cheating party performs privately on its own qubits.
    LocalMeasurement,
    QubitTransfer,
    VerdictPass,
    VerdictAbort,
};

enum class RunKind : std::uint8_t { Honest, CheatAlice, CheatBob };

inline std::string to_string(Party p) {
    return p == Party::Alice ? "alice" : "bob";
}

inline std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Heads: return "heads";
        case Outcome::Tails: return "tails";
        case Outcome::Abort: return "abort";
    }
    return "?";
}

inline std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::StateTransfer: return "state_transfer";
        case EventKind::ChoiceAnnouncement: return "choice";
        case EventKind::Measurement: return "measurement";
        case EventKind::LocalMeasurement: return "local_measurement";
        case EventKind::QubitTransfer: return "qubit_transfer";
        case EventKind::VerdictPass: return "verdict_pass";
        case EventKind::VerdictAbort: return "verdict_abort";
    }
    return "?";
}

inline std::string to_string(RunKind k) {
    switch (k) {
        case RunKind::Honest: return "honest";
        case RunKind::CheatAlice: return "cheat-alice";
        case RunKind::CheatBob: return "cheat-bob";
    }
    return "?";
}

/// A message between the parties, or a measurement record summary.
///
/// payload is the sent labels ("B1,B2"), the announced pair ("1" or "2"), the
/// measurement result ("A1=0"), or empty for verdicts. probability is the
/// probability of this event given everything before it.
struct Event {
    Party sender;
    EventKind kind;
    std::string payload;
    double probability = 1;

    bool operator==(const Event &) const = default;
};

struct Transcript {
    std::uint64_t seed = 0;
    RunKind run = RunKind::Honest;
    std::string strategy_id;
    Bit target = 0;
    std::vector<Event> events;
    Outcome outcome = Outcome::Abort;

    bool operator==(const Transcript &) const = default;
};

struct RunResult {
    Outcome outcome;
    Transcript transcript;
    /// Coin bits seen by each party, when that party measured one.
    std::optional<Bit> alice_coin;
    std::optional<Bit> bob_coin;
};

namespace detail {

inline Event measurement_event(Party who, EventKind kind, const MeasurementRecord &record) {
    return {who, kind, to_string(record.label) + "=" + std::to_string(record.outcome), record.probability};
}

inline Choice draw_choice(Rng &rng) {
    return rng.bernoulli(0.5) ? Choice::Second : Choice::First;
}

/// Step 4 as performed by an honest Bob: project the received qubit and his
/// half of the unchosen pair onto the Bell state and accept with the
/// projection probability.
inline bool bell_test(const StateVector &state, SubsystemLabel received, Choice choice, Rng &rng,
                      std::vector<Event> &events) {
    auto projection = project_bell(state, {received, bob_half(other(choice))});
    bool pass = rng.uniform() < projection.pass_probability && projection.posterior.has_value();
    if (pass) {
        events.push_back({Party::Bob, EventKind::VerdictPass, "", projection.pass_probability});
    } else {
        events.push_back({Party::Bob, EventKind::VerdictAbort, "", 1 - projection.pass_probability});
    }
    return pass;
}

}  // namespace detail

/// Both parties follow the four protocol steps.
inline RunResult run_honest(Rng &rng) {
    RunResult result{Outcome::Abort, {rng.seed(), RunKind::Honest, "honest", 0, {}, Outcome::Abort}, {}, {}};
    auto &events = result.transcript.events;

    auto state = tensor(bell_state(kA1, kB1), bell_state(kA2, kB2));
    events.push_back({Party::Alice, EventKind::StateTransfer, "B1,B2", 1});

    Choice choice = detail::draw_choice(rng);
    events.push_back({Party::Bob, EventKind::ChoiceAnnouncement, std::to_string(choice_number(choice)), 0.5});

    auto alice = measure(state, alice_half(choice), rng);
    events.push_back(detail::measurement_event(Party::Alice, EventKind::Measurement, alice));
    auto bob = measure(alice.posterior, bob_half(choice), rng);
    events.push_back(detail::measurement_event(Party::Bob, EventKind::Measurement, bob));
    result.alice_coin = alice.outcome;
    result.bob_coin = bob.outcome;

    SubsystemLabel sent = alice_half(other(choice));
    events.push_back({Party::Alice, EventKind::QubitTransfer, to_string(sent), 1});
    bool pass = detail::bell_test(bob.posterior, sent, choice, rng, events);

    result.outcome = pass ? outcome_for_bit(bob.outcome) : Outcome::Abort;
    result.transcript.outcome = result.outcome;
    return result;
}

/// Alice prepares the strategy's state and answers Bob's choice with its
/// response; Bob is honest. The outcome is Bob's coin bit unless his test fails.
inline RunResult run_cheating_alice(const AliceCheatStrategy &strategy, Bit target, Rng &rng) {
    validate(strategy);
    RunResult result{Outcome::Abort, {rng.seed(), RunKind::CheatAlice, strategy.id, target, {}, Outcome::Abort}, {}, {}};
    auto &events = result.transcript.events;

    events.push_back({Party::Alice, EventKind::StateTransfer, "B1,B2", 1});

    Choice choice = detail::draw_choice(rng);
    events.push_back({Party::Bob, EventKind::ChoiceAnnouncement, std::to_string(choice_number(choice)), 0.5});

    auto bob = measure(strategy.initial_state, bob_half(choice), rng);
    events.push_back(detail::measurement_event(Party::Bob, EventKind::Measurement, bob));
    result.bob_coin = bob.outcome;

    const auto &response = strategy.response(choice);
    auto state = response.operation.apply(bob.posterior);
    events.push_back({Party::Alice, EventKind::QubitTransfer, to_string(response.send), 1});
    bool pass = detail::bell_test(state, response.send, choice, rng, events);

    result.outcome = pass ? outcome_for_bit(bob.outcome) : Outcome::Abort;
    result.transcript.outcome = result.outcome;
    return result;
}

/// Alice's honest two-pair state with Bob's ancilla qubits appended in |0>.
inline StateVector honest_state_with_bob_ancilla(std::uint8_t ancilla_qubits) {
    auto state = tensor(bell_state(kA1, kB1), bell_state(kA2, kB2));
    for (std::uint8_t i = 0; i < ancilla_qubits; i++) {
        state = tensor(state, basis_state({bob_ancilla(i)}, 0));
    }
    return state;
}

/// Alice is honest; Bob applies the strategy and picks the coin pair. The
/// outcome is Alice's coin bit. Bob always passes the step-4 test.
inline RunResult run_cheating_bob(const BobCheatStrategy &strategy, Bit target, Rng &rng) {
    validate(strategy);
    RunResult result{Outcome::Abort, {rng.seed(), RunKind::CheatBob, strategy.id, target, {}, Outcome::Abort}, {}, {}};
    auto &events = result.transcript.events;

    auto state = honest_state_with_bob_ancilla(strategy.ancilla_qubits);
    events.push_back({Party::Alice, EventKind::StateTransfer, "B1,B2", 1});

    state = strategy.operation.apply(state);
    std::vector<Bit> bits;
    for (auto label : strategy.measured) {
        auto record = measure(state, label, rng);
        events.push_back(detail::measurement_event(Party::Bob, EventKind::LocalMeasurement, record));
        bits.push_back(record.outcome);
        state = std::move(record.posterior);
    }
    Choice choice = announce(strategy, bits);
    events.push_back({Party::Bob, EventKind::ChoiceAnnouncement, std::to_string(choice_number(choice)), 1});

    auto alice = measure(state, alice_half(choice), rng);
    events.push_back(detail::measurement_event(Party::Alice, EventKind::Measurement, alice));
    result.alice_coin = alice.outcome;

    events.push_back({Party::Alice, EventKind::QubitTransfer, to_string(alice_half(other(choice))), 1});
    events.push_back({Party::Bob, EventKind::VerdictPass, "", 1});

    result.outcome = outcome_for_bit(alice.outcome);
    result.transcript.outcome = result.outcome;
    return result;
}

/// Formats a probability with 12 significant digits.
inline std::string format_probability(double p) {
    std::ostringstream out;
    out << std::setprecision(12) << p;
    return out.str();
}

inline constexpr int kTranscriptSchemaVersion = 1;

/// Writes one line per record, each a space-separated list of key=value
/// fields. Values never contain spaces.
///
///   record=header schema_version=1 seed=<u64> run=<kind> strategy=<id> target=<0|1>
///   record=event index=<n> sender=<alice|bob> kind=<kind> payload=<text|-> probability=<p>
///   record=outcome outcome=<heads|tails|abort>
inline void write_transcript(std::ostream &out, const Transcript &transcript) {
    out << "record=header schema_version=" << kTranscriptSchemaVersion << " seed=" << transcript.seed
        << " run=" << to_string(transcript.run) << " strategy=" << transcript.strategy_id
        << " target=" << int(transcript.target) << "\n";
    for (std::size_t i = 0; i < transcript.events.size(); i++) {
        const auto &e = transcript.events[i];
        out << "record=event index=" << i << " sender=" << to_string(e.sender) << " kind=" << to_string(e.kind)
            << " payload=" << (e.payload.empty() ? "-" : e.payload)
            << " probability=" << format_probability(e.probability) << "\n";
    }
    out << "record=outcome outcome=" << to_string(transcript.outcome) << "\n";
}

inline std::string transcript_text(const Transcript &transcript) {
    std::ostringstream out;
    write_transcript(out, transcript);
    return out.str();
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> split_fields(const std::string &line) {
    std::vector<std::pair<std::string, std::string>> fields;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw ParseError("transcript field without '=': " + token);
        }
        fields.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    return fields;
}

inline const std::string &field(const std::vector<std::pair<std::string, std::string>> &fields,
                                const std::string &key) {
    for (const auto &[k, v] : fields) {
        if (k == key) {
            return v;
        }
    }
    throw ParseError("transcript record lacks " + key);
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string &text, const Enum (&values)[N]) {
    for (auto v : values) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw ParseError("unrecognized transcript value " + text);
}

}  // namespace detail

/// Inverse of write_transcript. Probabilities come back rounded to the 12
/// significant digits they were written with.
inline Transcript read_transcript(std::istream &in) {
    static constexpr Party parties[] = {Party::Alice, Party::Bob};
    static constexpr EventKind kinds[] = {EventKind::StateTransfer, EventKind::ChoiceAnnouncement,
                                          EventKind::Measurement,   EventKind::LocalMeasurement,
                                          EventKind::QubitTransfer, EventKind::VerdictPass,
                                          EventKind::VerdictAbort};
    static constexpr Outcome outcomes[] = {Outcome::Heads, Outcome::Tails, Outcome::Abort};
    static constexpr RunKind runs[] = {RunKind::Honest, RunKind::CheatAlice, RunKind::CheatBob};

    Transcript transcript;
    bool header = false;
    bool footer = false;
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            auto fields = detail::split_fields(line);
            const auto &record = detail::field(fields, "record");
            if (record == "header") {
                if (std::stoi(detail::field(fields, "schema_version")) != kTranscriptSchemaVersion) {
                    throw ParseError("unsupported transcript schema");
                }
                transcript.seed = std::stoull(detail::field(fields, "seed"));
                transcript.run = detail::parse_enum(detail::field(fields, "run"), runs);
                transcript.strategy_id = detail::field(fields, "strategy");
                transcript.target = static_cast<Bit>(std::stoi(detail::field(fields, "target")));
                header = true;
            } else if (record == "event") {
                Event e;
                e.sender = detail::parse_enum(detail::field(fields, "sender"), parties);
                e.kind = detail::parse_enum(detail::field(fields, "kind"), kinds);
                e.payload = detail::field(fields, "payload");
                if (e.payload == "-") {
                    e.payload.clear();
                }
                e.probability = std::stod(detail::field(fields, "probability"));
                transcript.events.push_back(std::move(e));
            } else if (record == "outcome") {
                transcript.outcome = detail::parse_enum(detail::field(fields, "outcome"), outcomes);
                footer = true;
            } else {
                throw ParseError("unknown transcript record " + record);
            }
        }
    } catch (const std::logic_error &e) {
        throw ParseError(std::string("malformed transcript number: ") + e.what());
    }
    if (!header || !footer) {
        throw ParseError("transcript missing header or outcome record");
    }
    return transcript;
}

}  // namespace cointoss
