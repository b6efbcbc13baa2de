#include "trustrecon/matching.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <set>

#include "trustrecon/errors.hpp"

using namespace trustrecon;

namespace {

// Exhaustive oracle: best-trust feasible pair, if any.
std::optional<std::pair<DeviceId, DeviceId>> brute_force_pair(const ResourceProfile& need,
                                                               const std::map<DeviceId, ResourceProfile>& res,
                                                               const std::map<DeviceId, double>& trust) {
    std::optional<std::pair<DeviceId, DeviceId>> best;
    double best_trust = -1.0;
    for (const auto& [i, ri] : res) {
        for (const auto& [j, rj] : res) {
            if (j <= i) continue;
            if (!(ri + rj).covers(need)) continue;
            const double t = trust.at(i) + trust.at(j);
            if (t > best_trust) {
                best_trust = t;
                best = std::make_pair(i, j);
            }
        }
    }
    return best;
}

}  // namespace

TEST(SampleTaskTest, UniformComponents) {
    Rng rng(4, "tasks");
    double total = 0.0;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
        const auto task = sample_task(static_cast<std::size_t>(i), rng);
        EXPECT_NO_THROW(task.required.validate());
        total += task.required.cpu + task.required.mem + task.required.bw;
    }
    EXPECT_NEAR(total / (3.0 * kDraws), 0.5, 0.01);
}

TEST(SampleTaskTest, DeterministicPerSeedAndTask) {
    Rng a(9, "task", {3});
    Rng b(9, "task", {3});
    Rng c(9, "task", {4});
    const auto ta = sample_task(3, a);
    const auto tb = sample_task(3, b);
    const auto tc = sample_task(4, c);
    EXPECT_EQ(ta.required.cpu, tb.required.cpu);
    EXPECT_EQ(ta.required.bw, tb.required.bw);
    EXPECT_NE(ta.required.cpu, tc.required.cpu);
}

TEST(SelectCollaboratorsTest, VacuousRequirementTakesTopDevice) {
    TaskRequirement task{0, {0, 0, 0}};
    std::map<DeviceId, ResourceProfile> res = {{0, {0.1, 0.1, 0.1}}, {1, {0.2, 0.2, 0.2}}, {2, {0.3, 0.3, 0.3}}};
    std::map<DeviceId, double> trust = {{0, 0.5}, {1, 0.9}, {2, 0.7}};
    const auto rec = select_collaborators(task, res, trust);
    EXPECT_EQ(rec.selected, (std::vector<DeviceId>{1}));
    EXPECT_TRUE(rec.satisfied);
}

TEST(SelectCollaboratorsTest, PairJointlySatisfies) {
    TaskRequirement task{1, {0.6, 0.6, 0.6}};
    std::map<DeviceId, ResourceProfile> res = {{0, {0.4, 0.4, 0.4}}, {1, {0.3, 0.3, 0.3}}};
    std::map<DeviceId, double> trust = {{0, 0.95}, {1, 0.9}};
    const auto rec = select_collaborators(task, res, trust);
    EXPECT_EQ(rec.selected, (std::vector<DeviceId>{0, 1}));
    EXPECT_TRUE(rec.satisfied);
    const auto oracle = brute_force_pair(task.required, res, trust);
    ASSERT_TRUE(oracle.has_value());
    EXPECT_EQ(oracle->first, 0u);
    EXPECT_EQ(oracle->second, 1u);
}

TEST(SelectCollaboratorsTest, InfeasibleRecordsTopTwo) {
    TaskRequirement task{2, {0.5, 0.5, 0.5}};
    std::map<DeviceId, ResourceProfile> res;
    std::map<DeviceId, double> trust;
    for (DeviceId d = 0; d < 5; ++d) {
        res[d] = {0, 0, 0};
        trust[d] = 0.1 * d;
    }
    const auto rec = select_collaborators(task, res, trust);
    EXPECT_EQ(rec.selected, (std::vector<DeviceId>{4, 3}));
    EXPECT_FALSE(rec.satisfied);
}

TEST(SelectCollaboratorsTest, TiesBreakByLowerId) {
    TaskRequirement task{0, {0.9, 0.9, 0.9}};
    std::map<DeviceId, ResourceProfile> res = {{5, {0.1, 0.1, 0.1}}, {2, {0.1, 0.1, 0.1}}, {7, {0.1, 0.1, 0.1}}};
    std::map<DeviceId, double> trust = {{5, 0.8}, {2, 0.8}, {7, 0.8}};
    EXPECT_EQ(select_collaborators(task, res, trust).selected, (std::vector<DeviceId>{2, 5}));
}

TEST(SelectCollaboratorsTest, NeedsTwoDevices) {
    TaskRequirement task{0, {0.1, 0.1, 0.1}};
    EXPECT_THROW(select_collaborators(task, {{0, {1, 1, 1}}}, {{0, 0.9}}), InputError);
}

TEST(SelectCollaboratorsTest, PropertiesUnderRandomInputs) {
    Rng rng(21, "select-props");
    for (int trial = 0; trial < 500; ++trial) {
        std::map<DeviceId, ResourceProfile> res;
        std::map<DeviceId, double> trust, rescaled;
        const auto n = 2 + static_cast<DeviceId>(rng.uniform() * 10);
        for (DeviceId d = 0; d < n; ++d) {
            res[d] = sample_resources(rng);
            trust[d] = rng.uniform();
            rescaled[d] = std::pow(trust[d], 3.0) * 0.5 + 0.1;  // positive monotone map
        }
        const auto task = sample_task(static_cast<std::size_t>(trial), rng);
        const auto rec = select_collaborators(task, res, trust);
        ASSERT_GE(rec.selected.size(), 1u);
        ASSERT_LE(rec.selected.size(), 2u);
        if (rec.selected.size() == 2) EXPECT_NE(rec.selected[0], rec.selected[1]);
        EXPECT_EQ(select_collaborators(task, res, rescaled).selected, rec.selected);

        ResourceProfile pooled;
        for (auto d : rec.selected) pooled = pooled + res.at(d);
        EXPECT_EQ(rec.satisfied, pooled.covers(task.required));
    }
}

TEST(HypergraphTest, AverageOfLatestTrust) {
    std::map<DeviceId, double> latest = {{1, 0.8}, {2, 0.6}, {3, 0.6}};
    auto state = update_hypergraph_weights({}, latest, {make_pair(2, 1)});
    EXPECT_NEAR(state.weight(1, 2), 0.7, 1e-15);
    EXPECT_NEAR(state.weight(2, 1), 0.7, 1e-15);

    state = update_hypergraph_weights(state, latest, {make_pair(2, 3)});
    EXPECT_DOUBLE_EQ(state.weight(3, 2), 0.6);
    EXPECT_NEAR(state.weight(1, 2), 0.7, 1e-15);  // untouched
}

TEST(HypergraphTest, RepeatedUpdateIsIdempotent) {
    std::map<DeviceId, double> latest = {{0, 0.91}, {1, 0.73}, {2, 0.88}};
    const std::set<DevicePair> pairs = {make_pair(0, 1), make_pair(1, 2)};
    const auto once = update_hypergraph_weights({}, latest, pairs);
    EXPECT_EQ(update_hypergraph_weights(once, latest, pairs), once);
    for (const auto& [pair, w] : once.weights) {
        EXPECT_LT(pair.lo, pair.hi);
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1.0);
    }
}

TEST(HypergraphTest, SelfPairRejected) {
    EXPECT_THROW(make_pair(3, 3), InputError);
    std::map<DeviceId, double> latest = {{3, 0.5}};
    EXPECT_THROW(update_hypergraph_weights({}, latest, {DevicePair{3, 3}}), InputError);
    EXPECT_THROW(update_hypergraph_weights({}, latest, {DevicePair{3, 4}}), InputError);
}
