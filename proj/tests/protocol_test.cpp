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

#include "cointoss/protocol.hpp"

#include <sstream>

#include "cointoss/analysis.hpp"
#include "gtest/gtest.h"

using namespace cointoss;

namespace {

std::vector<EventKind> message_kinds(const Transcript &t) {
    std::vector<EventKind> kinds;
    for (const auto &e : t.events) {
        if (e.kind != EventKind::Measurement && e.kind != EventKind::LocalMeasurement) {
            kinds.push_back(e.kind == EventKind::VerdictAbort ? EventKind::VerdictPass : e.kind);
        }
    }
    return kinds;
}

const std::vector<EventKind> kProtocolOrder{EventKind::StateTransfer, EventKind::ChoiceAnnouncement,
                                            EventKind::QubitTransfer, EventKind::VerdictPass};

}  // namespace

TEST(run_honest, coins_agree_and_never_abort) {
    for (std::uint64_t seed = 0; seed < 2000; seed++) {
        Rng rng(seed);
        auto run = run_honest(rng);
        ASSERT_TRUE(run.alice_coin && run.bob_coin);
        EXPECT_EQ(*run.alice_coin, *run.bob_coin);
        EXPECT_NE(run.outcome, Outcome::Abort);
        EXPECT_EQ(run.outcome, outcome_for_bit(*run.bob_coin));
        EXPECT_EQ(run.transcript.events.back().kind, EventKind::VerdictPass);
        EXPECT_NEAR(run.transcript.events.back().probability, 1, 1e-12);
        EXPECT_EQ(message_kinds(run.transcript), kProtocolOrder);
    }
}

TEST(run_honest, heads_frequency) {
    auto mc = monte_carlo(std::monostate{}, 0, 100000, 42);
    EXPECT_NEAR(mc.frequency(mc.heads), 0.5, 0.01);
    EXPECT_EQ(mc.aborts, 0u);
}

TEST(run_honest, transcript_layout) {
    Rng rng(5);
    auto t = run_honest(rng).transcript;
    ASSERT_EQ(t.events.size(), 6u);
    EXPECT_EQ(t.seed, 5u);
    EXPECT_EQ(t.events[0].payload, "B1,B2");
    EXPECT_EQ(t.events[2].sender, Party::Alice);
    EXPECT_EQ(t.events[2].kind, EventKind::Measurement);
    EXPECT_EQ(t.events[3].sender, Party::Bob);
    bool first = t.events[1].payload == "1";
    EXPECT_EQ(t.events[4].payload, first ? "A2" : "A1");
}

TEST(run_cheating_alice, honest_preparation) {
    auto mc = monte_carlo(honest_alice(), 0, 100000, 1);
    EXPECT_NEAR(mc.frequency(mc.wins()), 0.5, 0.01);
    EXPECT_EQ(mc.aborts, 0u);
}

TEST(run_cheating_alice, optimal_strategy_frequencies) {
    auto mc = monte_carlo(optimal_alice(0), 0, 200000, 2);
    EXPECT_LT(std::abs(mc.frequency(mc.wins()) - 0.75), 5 * mc.standard_error(mc.wins()));
    EXPECT_LT(std::abs(mc.frequency(mc.aborts) - 1.0 / 6.0), 5 * mc.standard_error(mc.aborts));
}

TEST(run_cheating_alice, aborts_only_on_failed_test) {
    auto strategy = optimal_alice(0);
    for (std::uint64_t seed = 0; seed < 3000; seed++) {
        Rng rng(seed);
        auto run = run_cheating_alice(strategy, 0, rng);
        const auto &last = run.transcript.events.back();
        EXPECT_EQ(run.outcome == Outcome::Abort, last.kind == EventKind::VerdictAbort);
        EXPECT_EQ(message_kinds(run.transcript), kProtocolOrder);
        // Step 3 completes before the qubit for step 4 is sent.
        EXPECT_EQ(run.transcript.events[2].kind, EventKind::Measurement);
        EXPECT_EQ(run.transcript.events[3].kind, EventKind::QubitTransfer);
        if (run.outcome != Outcome::Abort) {
            EXPECT_EQ(run.outcome, outcome_for_bit(*run.bob_coin));
        }
    }
}

TEST(run_cheating_alice, register_mismatch) {
    auto bad = honest_alice();
    bad.responses[0].send = kB1;
    Rng rng(0);
    EXPECT_THROW(run_cheating_alice(bad, 0, rng), StrategyRegisterMismatch);
}

TEST(run_cheating_bob, honest_choice) {
    auto mc = monte_carlo(honest_bob(), 0, 100000, 3);
    EXPECT_NEAR(mc.frequency(mc.wins()), 0.5, 0.01);
    EXPECT_EQ(mc.aborts, 0u);
}

TEST(run_cheating_bob, measure_and_pick_never_aborts) {
    auto strategy = measure_and_pick_bob(0);
    int wins = 0;
    const int trials = 20000;
    for (int seed = 0; seed < trials; seed++) {
        Rng rng(static_cast<std::uint64_t>(seed));
        auto run = run_cheating_bob(strategy, 0, rng);
        ASSERT_NE(run.outcome, Outcome::Abort);
        EXPECT_EQ(run.outcome, outcome_for_bit(*run.alice_coin));
        EXPECT_EQ(message_kinds(run.transcript), kProtocolOrder);
        wins += run.outcome == Outcome::Heads;
    }
    EXPECT_NEAR(static_cast<double>(wins) / trials, 0.75, 0.015);
}

TEST(run_cheating_bob, register_mismatch) {
    BobCheatStrategy bad{"bad", 0, {{kA2}, identity_operator(1)}, {}, {Choice::First}};
    Rng rng(0);
    EXPECT_THROW(run_cheating_bob(bad, 0, rng), StrategyRegisterMismatch);
}

TEST(transcript, deterministic_for_same_seed) {
    auto alice = optimal_alice(1);
    Rng strategy_rng(77);
    auto bob = random_bob_strategy(strategy_rng);
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        Rng a(seed), b(seed);
        EXPECT_EQ(run_honest(a).transcript, run_honest(b).transcript);
        Rng c(seed), d(seed);
        EXPECT_EQ(run_cheating_alice(alice, 1, c).transcript, run_cheating_alice(alice, 1, d).transcript);
        Rng e(seed), f(seed);
        EXPECT_EQ(transcript_text(run_cheating_bob(bob, 0, e).transcript),
                  transcript_text(run_cheating_bob(bob, 0, f).transcript));
    }
}

TEST(transcript, text_round_trip) {
    Rng strategy_rng(4);
    auto bob = random_bob_strategy(strategy_rng);
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        Rng r1(seed), r2(seed), r3(seed);
        for (const auto &t : {run_honest(r1).transcript, run_cheating_alice(optimal_alice(0), 0, r2).transcript,
                              run_cheating_bob(bob, 1, r3).transcript}) {
            std::istringstream in(transcript_text(t));
            auto back = read_transcript(in);
            EXPECT_EQ(transcript_text(back), transcript_text(t));
            EXPECT_EQ(back.events.size(), t.events.size());
            EXPECT_EQ(back.outcome, t.outcome);
            EXPECT_EQ(back.seed, t.seed);
        }
    }
}

TEST(transcript, text_format) {
    Transcript t{9, RunKind::CheatAlice, "optimal-alice", 0,
                 {{Party::Alice, EventKind::StateTransfer, "B1,B2", 1},
                  {Party::Bob, EventKind::ChoiceAnnouncement, "2", 0.5},
                  {Party::Bob, EventKind::Measurement, "B2=0", 5.0 / 6.0},
                  {Party::Alice, EventKind::QubitTransfer, "A1", 1},
                  {Party::Bob, EventKind::VerdictAbort, "", 0.1}},
                 Outcome::Abort};
    EXPECT_EQ(transcript_text(t),
              "record=header schema_version=1 seed=9 run=cheat-alice strategy=optimal-alice target=0\n"
              "record=event index=0 sender=alice kind=state_transfer payload=B1,B2 probability=1\n"
              "record=event index=1 sender=bob kind=choice payload=2 probability=0.5\n"
              "record=event index=2 sender=bob kind=measurement payload=B2=0 probability=0.833333333333\n"
              "record=event index=3 sender=alice kind=qubit_transfer payload=A1 probability=1\n"
              "record=event index=4 sender=bob kind=verdict_abort payload=- probability=0.1\n"
              "record=outcome outcome=abort\n");
}

TEST(transcript, malformed_input) {
    std::istringstream missing_footer("record=header schema_version=1 seed=1 run=honest strategy=honest target=0\n");
    EXPECT_THROW(read_transcript(missing_footer), ParseError);
    std::istringstream bad_kind(
        "record=header schema_version=1 seed=1 run=honest strategy=honest target=0\n"
        "record=event index=0 sender=alice kind=teleport payload=- probability=1\n"
        "record=outcome outcome=heads\n");
    EXPECT_THROW(read_transcript(bad_kind), ParseError);
    std::istringstream bad_version("record=header schema_version=7 seed=1 run=honest strategy=honest target=0\n");
    EXPECT_THROW(read_transcript(bad_version), ParseError);
}
