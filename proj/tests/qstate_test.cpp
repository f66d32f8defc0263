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

#include "cointoss/qstate.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace cointoss;

namespace {

constexpr double kTol = 1e-12;

StateVector eq3_state() {
    std::vector<Amplitude> amplitudes(16);
    amplitudes[0b0000] = std::sqrt(2.0 / 3.0);
    amplitudes[0b0011] = 1 / std::sqrt(6.0);
    amplitudes[0b1100] = 1 / std::sqrt(6.0);
    return make_state({kA1, kB1, kA2, kB2}, amplitudes);
}

StateVector partially_entangled() {
    return make_state({kA1, kB1}, {std::sqrt(0.8), 0, 0, std::sqrt(0.2)});
}

StateVector random_state(std::vector<SubsystemLabel> labels, Rng &rng) {
    std::vector<Amplitude> amplitudes(std::size_t{1} << labels.size());
    for (auto &a : amplitudes) {
        a = {rng.normal(), rng.normal()};
    }
    return StateVector::normalized(std::move(labels), std::move(amplitudes));
}

}  // namespace

TEST(make_state, bell_pair) {
    const double h = 1 / std::numbers::sqrt2;
    auto s = make_state({kB1, kB2}, {h, 0, 0, h});
    auto bell = bell_state(kB1, kB2);
    for (std::size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(std::abs(s.amplitude(k) - bell.amplitude(k)), 0, kTol);
    }
    EXPECT_EQ(bell.amplitude(0), Amplitude(h));
    EXPECT_EQ(bell.amplitude(3), Amplitude(h));
}

TEST(make_state, basis_qubit) {
    auto s = make_state({kA1}, {1, 0});
    EXPECT_EQ(s.num_qubits(), 1u);
    EXPECT_EQ(s.amplitude(0), Amplitude(1));
}

TEST(make_state, errors) {
    EXPECT_THROW(make_state({kA1}, {0.7071067, 0, 0, 0.7071068}), DimensionMismatch);
    EXPECT_THROW(make_state({kA1}, {1e-13, 0}), ZeroNorm);
    EXPECT_THROW(make_state({kA1}, {1, 1}), NotNormalized);
    EXPECT_THROW(make_state({kA1, kA1}, {1, 0, 0, 0}), LabelCollision);
}

TEST(make_state, renormalizes_small_error) {
    auto s = make_state({kA1}, {1 + 5e-9, 0});
    EXPECT_NEAR(s.norm(), 1, 1e-15);
}

TEST(tensor, two_bell_pairs) {
    auto s = tensor(bell_state(kA1, kB1), bell_state(kA2, kB2));
    ASSERT_EQ(s.labels(), (std::vector<SubsystemLabel>{kA1, kB1, kA2, kB2}));
    for (std::size_t k = 0; k < 16; k++) {
        bool expected = k == 0b0000 || k == 0b0011 || k == 0b1100 || k == 0b1111;
        EXPECT_NEAR(s.amplitude(k).real(), expected ? 0.5 : 0.0, kTol) << k;
        EXPECT_NEAR(s.amplitude(k).imag(), 0, kTol);
    }
}

TEST(tensor, basis_product) {
    auto s = tensor(basis_state({kA}, 0), basis_state({kA1}, 0));
    EXPECT_EQ(s.amplitude(0), Amplitude(1));
    EXPECT_EQ(s.labels(), (std::vector<SubsystemLabel>{kA, kA1}));
}

TEST(tensor, label_collision) {
    EXPECT_THROW(tensor(bell_state(kA1, kB1), bell_state(kA1, kB2)), LabelCollision);
}

TEST(branch_probabilities, examples) {
    auto bell = branch_probabilities(bell_state(kA1, kB1), kB1);
    EXPECT_NEAR(bell.p0, 0.5, kTol);
    EXPECT_NEAR(bell.p1, 0.5, kTol);

    auto eq3 = branch_probabilities(eq3_state(), kB1);
    EXPECT_NEAR(eq3.p0, 5.0 / 6.0, kTol);
    EXPECT_NEAR(eq3.p1, 1.0 / 6.0, kTol);

    auto basis = branch_probabilities(basis_state({kA1}, 0), kA1);
    EXPECT_EQ(basis.p0, 1.0);
    EXPECT_EQ(basis.p1, 0.0);

    EXPECT_THROW(branch_probabilities(bell_state(kA1, kB1), kB2), UnknownLabel);
}

TEST(branch_probabilities, invariant_under_disjoint_local_unitaries) {
    Rng rng(7);
    for (int trial = 0; trial < 50; trial++) {
        auto s = random_state({kA, kA1, kB1, kA2, kB2}, rng);
        auto before = branch_probabilities(s, kB1);
        std::vector<SubsystemLabel> others{kA, kA2, kB2};
        auto after = branch_probabilities(apply_local(s, others, haar_unitary(3, rng)), kB1);
        EXPECT_NEAR(before.p0, after.p0, 1e-12);
        EXPECT_NEAR(before.p0 + before.p1, 1, 1e-12);
    }
}

TEST(measure, bell_pair_correlates) {
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        Rng rng(seed);
        auto record = measure(bell_state(kA1, kB1), kB1, rng);
        EXPECT_NEAR(record.probability, 0.5, kTol);
        std::size_t both = record.outcome ? 0b11 : 0b00;
        EXPECT_NEAR(std::norm(record.posterior.amplitude(both)), 1, kTol);
        EXPECT_NEAR(record.posterior.norm(), 1, 1e-10);
    }
}

TEST(measure, fair_marginal_frequency) {
    Rng rng(2024);
    auto bell = bell_state(kA1, kB1);
    int zeros = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; i++) {
        zeros += measure(bell, kB1, rng).outcome == 0;
    }
    EXPECT_NEAR(static_cast<double>(zeros) / trials, 0.5, 0.01);
}

TEST(measure, eq3_records_branch_probability) {
    Rng rng(3);
    for (int i = 0; i < 200; i++) {
        auto record = measure(eq3_state(), kB1, rng);
        EXPECT_NEAR(record.probability, record.outcome == 0 ? 5.0 / 6.0 : 1.0 / 6.0, kTol);
    }
}

TEST(measure, same_seed_same_result) {
    auto s = eq3_state();
    for (std::uint64_t seed = 0; seed < 50; seed++) {
        Rng a(seed);
        Rng b(seed);
        auto ra = measure(s, kB2, a);
        auto rb = measure(s, kB2, b);
        EXPECT_EQ(ra.outcome, rb.outcome);
        for (std::size_t k = 0; k < 16; k++) {
            EXPECT_EQ(ra.posterior.amplitude(k), rb.posterior.amplitude(k));
        }
    }
}

TEST(measure, unknown_label) {
    Rng rng(0);
    EXPECT_THROW(measure(bell_state(kA1, kB1), kA2, rng), UnknownLabel);
}

TEST(project_bell, examples) {
    auto self = project_bell(bell_state(kA1, kB1), {kA1, kB1});
    EXPECT_NEAR(self.pass_probability, 1, kTol);
    ASSERT_TRUE(self.posterior);
    EXPECT_NEAR(self.posterior->amplitude(0).real(), 1 / std::numbers::sqrt2, kTol);

    auto product = project_bell(basis_state({kA1, kB1}, 0), {kA1, kB1});
    EXPECT_NEAR(product.pass_probability, 0.5, kTol);
    EXPECT_NEAR(product.posterior->amplitude(3).real(), 1 / std::numbers::sqrt2, kTol);

    auto partial = project_bell(partially_entangled(), {kA1, kB1});
    EXPECT_NEAR(partial.pass_probability, 0.9, kTol);
    EXPECT_NEAR(partial.posterior->amplitude(0).real(), 1 / std::numbers::sqrt2, kTol);
}

TEST(project_bell, orthogonal_state_has_no_posterior) {
    auto singlet = make_state({kA1, kB1}, {0, 1 / std::numbers::sqrt2, -1 / std::numbers::sqrt2, 0});
    auto result = project_bell(singlet, {kA1, kB1});
    EXPECT_LT(result.pass_probability, 1e-12);
    EXPECT_FALSE(result.posterior.has_value());
    EXPECT_THROW(project_bell(singlet, {kA1, kB2}), UnknownLabel);
}

TEST(project_bell, matches_dense_projector) {
    Rng rng(11);
    for (int trial = 0; trial < 30; trial++) {
        auto s = random_state({kA1, kB1, kA2, kB2}, rng);
        auto v = oracle::vec({s.amplitudes().begin(), s.amplitudes().end()});
        double expected = oracle::expectation(v, oracle::embed(oracle::bell_projector(), {2, 1}, 4));
        auto got = project_bell(s, {kA2, kB1});
        EXPECT_NEAR(got.pass_probability, expected, 1e-12);
        EXPECT_NEAR(got.posterior->norm(), 1, 1e-10);
        // The posterior lies inside the projector's range.
        auto pv = oracle::vec({got.posterior->amplitudes().begin(), got.posterior->amplitudes().end()});
        EXPECT_NEAR(oracle::expectation(pv, oracle::embed(oracle::bell_projector(), {2, 1}, 4)), 1, 1e-10);
    }
}

TEST(project_bell, bounded_by_schmidt_fidelity) {
    Rng rng(5);
    for (int trial = 0; trial < 200; trial++) {
        auto s = random_state({kA1, kB1}, rng);
        std::vector<SubsystemLabel> cut{kA1};
        auto lambda = schmidt_coefficients(s, cut);
        double bound = (lambda[0] + lambda[1]) * (lambda[0] + lambda[1]) / 2;
        EXPECT_LE(project_bell(s, {kA1, kB1}).pass_probability, bound + 1e-12);
    }
}

TEST(schmidt_coefficients, examples) {
    std::vector<SubsystemLabel> first{kA1};
    auto bell = schmidt_coefficients(bell_state(kA1, kB1), first);
    ASSERT_EQ(bell.size(), 2u);
    EXPECT_NEAR(bell[0], 1 / std::numbers::sqrt2, kTol);
    EXPECT_NEAR(bell[1], 1 / std::numbers::sqrt2, kTol);

    auto product = schmidt_coefficients(basis_state({kA1, kB1}, 0), first);
    EXPECT_NEAR(product[0], 1, kTol);
    EXPECT_NEAR(product[1], 0, kTol);

    auto partial = schmidt_coefficients(partially_entangled(), first);
    EXPECT_NEAR(partial[0], std::sqrt(0.8), kTol);
    EXPECT_NEAR(partial[1], std::sqrt(0.2), kTol);
}

TEST(schmidt_coefficients, invalid_cuts) {
    auto s = bell_state(kA1, kB1);
    std::vector<SubsystemLabel> none;
    std::vector<SubsystemLabel> all{kA1, kB1};
    std::vector<SubsystemLabel> missing{kA2};
    EXPECT_THROW(schmidt_coefficients(s, none), InvalidCut);
    EXPECT_THROW(schmidt_coefficients(s, all), InvalidCut);
    EXPECT_THROW(schmidt_coefficients(s, missing), UnknownLabel);
}

TEST(schmidt_coefficients, normalized_and_descending) {
    Rng rng(9);
    for (int trial = 0; trial < 30; trial++) {
        auto s = random_state({kA, kA1, kB1, kB2}, rng);
        std::vector<SubsystemLabel> cut{kB1, kA};
        auto lambda = schmidt_coefficients(s, cut);
        double total = 0;
        for (std::size_t i = 0; i < lambda.size(); i++) {
            total += lambda[i] * lambda[i];
            if (i) {
                EXPECT_GE(lambda[i - 1], lambda[i]);
            }
        }
        EXPECT_NEAR(total, 1, 1e-10);
    }
}

TEST(apply_local, matches_dense_embedding) {
    Rng rng(13);
    for (int trial = 0; trial < 20; trial++) {
        auto s = random_state({kA, kA1, kB1, kA2}, rng);
        auto u = haar_unitary(2, rng);
        std::vector<SubsystemLabel> targets{kA2, kA};
        auto got = apply_local(s, targets, u);
        auto v = oracle::vec({s.amplitudes().begin(), s.amplitudes().end()});
        oracle::Vec expected = oracle::embed(u, {3, 0}, 4) * v;
        for (std::size_t k = 0; k < 16; k++) {
            EXPECT_NEAR(std::abs(got.amplitude(k) - expected(static_cast<Eigen::Index>(k))), 0, 1e-12);
        }
    }
}

TEST(haar_unitary, is_unitary) {
    Rng rng(1);
    auto u = haar_unitary(3, rng);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).norm(), 1e-12);
}

TEST(collapse, posterior_normalized_and_projected) {
    Rng rng(21);
    for (int trial = 0; trial < 30; trial++) {
        auto s = random_state({kA1, kB1, kA2}, rng);
        for (Bit b = 0; b < 2; b++) {
            auto branch = collapse(s, kB1, b);
            ASSERT_TRUE(branch.posterior);
            EXPECT_NEAR(branch.posterior->norm(), 1, 1e-10);
            auto p = branch_probabilities(*branch.posterior, kB1);
            EXPECT_NEAR(b == 0 ? p.p0 : p.p1, 1, 1e-12);
        }
    }
}

TEST(labels, round_trip_names) {
    for (auto label : {kA, kA1, kB1, kA2, kB2, kAncillaB, alice_ancilla(1), bob_ancilla(3)}) {
        auto parsed = parse_label(to_string(label));
        ASSERT_TRUE(parsed) << to_string(label);
        EXPECT_EQ(*parsed, label);
    }
    EXPECT_FALSE(parse_label("C3"));
    EXPECT_FALSE(parse_label("A#"));
}
