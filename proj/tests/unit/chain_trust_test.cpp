#include "trustrecon/chain_trust.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "trustrecon/errors.hpp"

using namespace trustrecon;

namespace {

// Monte-Carlo mean of stage_trust for a fixed device.
double mc_stage_mean(const DeviceRecord& device, std::size_t k, int draws) {
    Rng rng(5, "stage-mc", {k});
    double total = 0.0;
    for (int i = 0; i < draws; ++i) total += stage_trust(device, k, 0.1, 64, rng);
    return total / draws;
}

DeviceRecord unit_device() {
    DeviceRecord d;
    d.baseline.assign(128, 1.0);  // first 64 coordinates have squared norm 64
    return d;
}

}  // namespace

TEST(StageConfigTest, ThresholdsAreOneBased) {
    StageConfig cfg;
    EXPECT_DOUBLE_EQ(cfg.threshold(1), 0.6);
    EXPECT_DOUBLE_EQ(cfg.threshold(2), 0.7);
    EXPECT_DOUBLE_EQ(cfg.threshold(3), 0.8);
    EXPECT_NO_THROW(cfg.validate(128));
}

TEST(StageConfigTest, RejectsInvalid) {
    StageConfig cfg;
    EXPECT_THROW(cfg.validate(32), ConfigError);  // stage_dims 64 > 32
    cfg.stage_count = 5;                          // θ_5 = 1.0 leaves (0,1)
    EXPECT_THROW(cfg.validate(128), ConfigError);
    cfg = StageConfig{};
    cfg.mix_weight = -0.1;
    EXPECT_THROW(cfg.validate(128), ConfigError);
}

TEST(StageTrustTest, VanishingNoiseGivesOne) {
    auto device = unit_device();
    Rng rng(1, "t");
    EXPECT_DOUBLE_EQ(stage_trust(device, 1, 1e-30, 64, rng), 1.0);
}

TEST(StageTrustTest, DefaultExpectationMatchesAnalytic) {
    const double analytic = 0.5 * (1.0 + std::sqrt(64.0 / (64.0 + 64.0 * 0.01 * 2.0)));
    EXPECT_NEAR(mc_stage_mean(unit_device(), 1, 20000), analytic, 2e-4);
}

TEST(StageTrustTest, LaterStagesAreNoisier) {
    const auto device = unit_device();
    EXPECT_LT(mc_stage_mean(device, 3, 20000), mc_stage_mean(device, 1, 20000));
}

TEST(StageTrustTest, TooManyDimsIsConfigError) {
    DeviceRecord d;
    d.baseline.assign(10, 1.0);
    Rng rng(1, "t");
    EXPECT_THROW(stage_trust(d, 1, 0.1, 64, rng), ConfigError);
}

TEST(CombineTrustTest, ConvexCombination) {
    EXPECT_NEAR(combine_trust(0.9, 0.7, 0.5), 0.8, 1e-15);
    EXPECT_DOUBLE_EQ(combine_trust(0.42, 0.42, 0.3), 0.42);
    EXPECT_DOUBLE_EQ(combine_trust(0.9, 0.7, 1.0), 0.9);
    EXPECT_THROW(combine_trust(1.2, 0.7, 0.5), DomainError);
    EXPECT_THROW(combine_trust(0.9, 0.7, 2.0), DomainError);
}

TEST(CombineTrustTest, BoundedByInputs) {
    Rng rng(2, "convex");
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(), b = rng.uniform(), alpha = rng.uniform();
        const double c = combine_trust(a, b, alpha);
        EXPECT_GE(c, std::min(a, b));
        EXPECT_LE(c, std::max(a, b));
    }
}

TEST(ChainOfTrustTest, DefaultsPruneNothing) {
    SimConfig cfg;
    StageConfig stages;
    const auto population = generate_population(cfg);
    const auto log = run_continuous_evaluation(cfg, population, kAgentOne);
    const auto outcomes = run_chain_of_trust(cfg, stages, population, log);
    ASSERT_EQ(outcomes.size(), 3u);
    for (const auto& o : outcomes) {
        EXPECT_EQ(o.surviving.size(), 20u);
        EXPECT_EQ(o.cumulative_overhead, 20u * o.stage_index);
        for (const auto& [_, score] : o.stage_scores) EXPECT_GT(score, 0.99);
    }
}

TEST(ChainOfTrustTest, ImpossibleThresholdPrunesAllAtStageOne) {
    SimConfig cfg;
    StageConfig stages;
    stages.threshold_override = 1.01;
    const auto population = generate_population(cfg);
    const auto log = run_continuous_evaluation(cfg, population, kAgentOne);
    const auto outcomes = run_chain_of_trust(cfg, stages, population, log);
    EXPECT_TRUE(outcomes[0].surviving.empty());
    EXPECT_EQ(outcomes[0].cumulative_overhead, 20u);
    EXPECT_EQ(outcomes[1].cumulative_overhead, 20u);  // nothing left to evaluate
    EXPECT_TRUE(outcomes[2].stage_scores.empty());
}

TEST(ChainOfTrustTest, SurvivorsShrinkMonotonically) {
    SimConfig cfg;
    cfg.noise_std = 3.0;  // heavy noise so that pruning actually happens
    cfg.embedding_dim = 8;
    StageConfig stages;
    stages.stage_dims = 4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        const auto population = generate_population(cfg);
        const auto log = run_continuous_evaluation(cfg, population, kAgentOne);
        const auto outcomes = run_chain_of_trust(cfg, stages, population, log);
        std::size_t previous = population.size();
        std::size_t overhead = 0;
        std::set<DeviceId> before;
        for (const auto& d : population) before.insert(d.device_id);
        for (const auto& o : outcomes) {
            EXPECT_TRUE(std::includes(before.begin(), before.end(), o.surviving.begin(), o.surviving.end()));
            overhead += previous;
            EXPECT_EQ(o.cumulative_overhead, overhead);
            previous = o.surviving.size();
            before = o.surviving;
        }
    }
}

TEST(ClassificationAccuracyTest, CountsAgreement) {
    std::map<DeviceId, double> scores;
    std::map<DeviceId, int> labels;
    for (DeviceId d = 0; d < 20; ++d) {
        scores[d] = 0.99;
        labels[d] = d < 12 ? 1 : 0;
    }
    EXPECT_DOUBLE_EQ(classification_accuracy(scores, labels, 0.5), 0.6);

    for (auto& [_, l] : labels) l = 1;
    EXPECT_DOUBLE_EQ(classification_accuracy(scores, labels, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(classification_accuracy(scores, labels, 1.1), 0.0);
}

TEST(ClassificationAccuracyTest, MismatchedKeysIsDataError) {
    std::map<DeviceId, double> scores = {{0, 0.9}, {1, 0.9}};
    std::map<DeviceId, int> labels = {{0, 1}, {2, 1}};
    EXPECT_THROW(classification_accuracy(scores, labels, 0.5), DataError);
    labels.erase(2);
    EXPECT_THROW(classification_accuracy(scores, labels, 0.5), DataError);
}

TEST(OverheadTableTest, FiveRowsWithCumulativeOverhead) {
    SimConfig cfg;
    StageConfig stages;
    const auto population = generate_population(cfg);
    const auto log = run_continuous_evaluation(cfg, population, kAgentOne);
    const auto rows = overhead_accuracy_table(cfg, stages, population, log);
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].stage, i + 1);
        EXPECT_EQ(rows[i].overhead, 20u * (i + 1));
        EXPECT_DOUBLE_EQ(rows[i].accuracy, rows[0].accuracy);
    }
}

TEST(OverheadTableTest, AccuracyEqualsTrustworthyFractionOverSeeds) {
    SimConfig cfg;
    StageConfig stages;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        cfg.seed = seed;
        const auto population = generate_population(cfg);
        const auto log = run_continuous_evaluation(cfg, population, kAgentOne);
        const auto rows = overhead_accuracy_table(cfg, stages, population, log);
        std::size_t trustworthy = 0;
        for (const auto& d : population) trustworthy += static_cast<std::size_t>(d.label);
        const double fraction = static_cast<double>(trustworthy) / 20.0;
        for (const auto& row : rows) ASSERT_DOUBLE_EQ(row.accuracy, fraction) << "seed " << seed;
    }
}
